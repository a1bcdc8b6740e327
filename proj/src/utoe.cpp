#include "toelab/utoe.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "toelab/coding.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toe {

namespace {

// Diagonal d covers cells with row + col - 1 == d and starts at index
// d(d-1)/2 + 1.
std::uint64_t diagonal_base(std::uint64_t d) { return d * (d - 1) / 2; }

std::uint64_t diagonal_of(std::uint64_t i) {
  auto d = static_cast<std::uint64_t>(
      (1.0 + std::sqrt(8.0 * static_cast<double>(i) - 7.0)) / 2.0);
  while (diagonal_base(d) >= i) --d;
  while (diagonal_base(d + 1) < i) ++d;
  return d;
}

}  // namespace

std::uint64_t cell_index(const Cell& cell) {
  if (cell.k < 1) throw std::invalid_argument("cell column must be >= 1");
  std::uint64_t r = ordinal_of(cell.q);
  std::uint64_t d = r + cell.k - 1;
  return diagonal_base(d) + (d % 2 == 1 ? r : cell.k);
}

Cell index_cell(std::uint64_t i) {
  if (i < 1) throw std::invalid_argument("cell index must be >= 1");
  std::uint64_t d = diagonal_of(i);
  std::uint64_t offset = i - diagonal_base(d);  // 1..d
  std::uint64_t r = d % 2 == 1 ? offset : d - offset + 1;
  std::uint64_t k = d - r + 1;
  return Cell{program_from_ordinal(r), k};
}

char tribit_char(TriBit t) {
  switch (t) {
    case TriBit::Zero: return '0';
    case TriBit::One: return '1';
    default: return '#';
  }
}

std::vector<TriBit> extract_universe(const Program& q, std::uint64_t n,
                                     const RunBudget& budget) {
  RunBudget b = budget;
  b.max_output_bits = std::min<std::uint64_t>(b.max_output_bits, n);
  GeneratorRun run = run_generator(q, b);
  std::vector<TriBit> out(n, TriBit::Undef);
  for (std::size_t i = 0; i < run.output.size() && i < n; ++i)
    out[i] = run.output[i] ? TriBit::One : TriBit::Zero;
  return out;
}

std::vector<TriBit> utoe_stream(std::uint64_t n, const RunBudget& budget,
                                Exec exec) {
  if (n < 1) throw std::invalid_argument("cell count must be >= 1");
  std::uint64_t d_max = diagonal_of(n);
  // Row r only appears with columns up to d_max - r + 1.
  std::vector<std::vector<TriBit>> rows(d_max + 1);
  auto fill_row = [&](std::uint64_t r) {
    rows[r] = extract_universe(program_from_ordinal(r), d_max - r + 1, budget);
  };
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::int64_t r = 1; r <= static_cast<std::int64_t>(d_max); ++r)
      fill_row(static_cast<std::uint64_t>(r));
  } else {
    for (std::uint64_t r = 1; r <= d_max; ++r) fill_row(r);
  }
  std::vector<TriBit> cells(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::uint64_t d = diagonal_of(i);
    std::uint64_t offset = i - diagonal_base(d);
    std::uint64_t r = d % 2 == 1 ? offset : d - offset + 1;
    cells[i - 1] = rows[r][d - r];
  }
  return cells;
}

const Bits kExtractorTag = bits_from_string("10100101");

Bits WrappedObserver::serialized() const {
  Bits out = extractor_tag;
  out.insert(out.end(), embedded_q.begin(), embedded_q.end());
  out.insert(out.end(), embedded_s.begin(), embedded_s.end());
  return out;
}

Program WrappedObserver::generator() const {
  std::size_t pos = 0;
  std::uint64_t len_plus_1 = elias_gamma_decode(embedded_q, pos);
  if (embedded_q.size() - pos != len_plus_1 - 1)
    throw std::invalid_argument("embedded generator length mismatch");
  return Program(embedded_q.begin() + static_cast<std::ptrdiff_t>(pos),
                 embedded_q.end());
}

WrappedObserver wrap_observer(const Program& q, const Program& s) {
  WrappedObserver w;
  w.extractor_tag = kExtractorTag;
  w.embedded_q = elias_gamma(q.size() + 1);
  w.embedded_q.insert(w.embedded_q.end(), q.begin(), q.end());
  w.embedded_s = s;
  w.declared_length = kExtractorTagBits + w.embedded_q.size() + s.size();
  return w;
}

ObserverRun run_wrapped(const WrappedObserver& wrapped,
                        const RunBudget& budget) {
  if (wrapped.extractor_tag != kExtractorTag)
    throw std::invalid_argument("unknown extractor tag");
  // The native extractor reads row q of the multiverse matrix, which is by
  // construction the lazily evaluated output of q; the embedded observer then
  // consumes it as its universe.
  return run_interleaved(wrapped.generator(), wrapped.embedded_s, budget)
      .second;
}

namespace {

std::uint64_t checked_u64(unsigned __int128 v, const char* what) {
  if (v > static_cast<unsigned __int128>(UINT64_MAX))
    throw std::overflow_error(what);
  return static_cast<std::uint64_t>(v);
}

// Calkin-Wilf tree position of a reduced positive fraction; the root 1/1 is
// node 1, node n has children 2n = p/(p+q) and 2n+1 = (p+q)/q.
std::uint64_t calkin_wilf_index(std::uint64_t p, std::uint64_t q) {
  std::vector<std::pair<std::uint8_t, std::uint64_t>> path;  // (bit, count)
  while (p != q) {
    if (p > q) {
      std::uint64_t k = (p - 1) / q;
      path.emplace_back(1, k);
      p -= k * q;
    } else {
      std::uint64_t k = (q - 1) / p;
      path.emplace_back(0, k);
      q -= k * p;
    }
  }
  unsigned __int128 n = 1;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    for (std::uint64_t i = 0; i < it->second; ++i) {
      n = n * 2 + it->first;
      if (n > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("rational index overflow");
    }
  }
  return static_cast<std::uint64_t>(n);
}

std::pair<std::uint64_t, std::uint64_t> calkin_wilf_value(std::uint64_t n) {
  int top = 63;
  while (top > 0 && !((n >> top) & 1)) --top;
  std::uint64_t p = 1, q = 1;
  for (int i = top - 1; i >= 0; --i) {
    if ((n >> i) & 1)
      p += q;
    else
      q += p;
  }
  return {p, q};
}

// Rationals onto N (0-based): 0 -> 0, x > 0 -> 2 cw(x) - 1, x < 0 -> 2 cw(-x).
std::uint64_t rational_to_nat(const Rational4& r) {
  if (r.den == 0) throw std::invalid_argument("denominator must be positive");
  if (r.num == 0) {
    if (r.den != 1) throw std::invalid_argument("0 must be given as 0/1");
    return 0;
  }
  std::uint64_t mag =
      r.num > 0 ? static_cast<std::uint64_t>(r.num)
                : static_cast<std::uint64_t>(-(r.num + 1)) + 1;
  if (std::gcd(mag, r.den) != 1)
    throw std::invalid_argument("fraction is not in lowest terms");
  std::uint64_t cw = calkin_wilf_index(mag, r.den);
  return checked_u64(static_cast<unsigned __int128>(cw) * 2 - (r.num > 0),
                     "rational index overflow");
}

Rational4 nat_to_rational(std::uint64_t n) {
  if (n == 0) return Rational4{0, 1};
  bool positive = n % 2 == 1;
  auto [p, q] = calkin_wilf_value(positive ? (n + 1) / 2 : n / 2);
  Rational4 r;
  r.num = positive ? static_cast<std::int64_t>(p)
                   : -static_cast<std::int64_t>(p);
  r.den = q;
  return r;
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  return checked_u64(s * (s + 1) / 2 + b, "rational index overflow");
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  auto w = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w > 0 && w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  std::uint64_t b = z - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace

std::uint64_t rational_index(const std::array<Rational4, 4>& point) {
  std::uint64_t a = rational_to_nat(point[0]);
  std::uint64_t b = rational_to_nat(point[1]);
  std::uint64_t c = rational_to_nat(point[2]);
  std::uint64_t d = rational_to_nat(point[3]);
  return checked_u64(
      static_cast<unsigned __int128>(cantor_pair(cantor_pair(a, b),
                                                 cantor_pair(c, d))) +
          1,
      "rational index overflow");
}

std::array<Rational4, 4> index_rational(std::uint64_t i) {
  if (i < 1) throw std::invalid_argument("index must be >= 1");
  auto [ab, cd] = cantor_unpair(i - 1);
  auto [a, b] = cantor_unpair(ab);
  auto [c, d] = cantor_unpair(cd);
  return {nat_to_rational(a), nat_to_rational(b), nat_to_rational(c),
          nat_to_rational(d)};
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  char buf[8];
  in.read(buf, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i]))
         << (8 * i);
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const std::vector<TriBit>& cells,
                    const RunBudget& budget) {
  out.write("UTOE", 4);
  out.put(1);  // format version
  out.put(static_cast<char>(kMachineVersion.size()));
  out.write(kMachineVersion.data(),
            static_cast<std::streamsize>(kMachineVersion.size()));
  put_u64(out, budget.max_steps);
  put_u64(out, budget.max_output_bits);
  put_u64(out, cells.size());
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    byte |= static_cast<std::uint8_t>(static_cast<unsigned>(cells[i])
                                      << (2 * (i % 4)));
    if (i % 4 == 3) {
      out.put(static_cast<char>(byte));
      byte = 0;
    }
  }
  if (cells.size() % 4 != 0) out.put(static_cast<char>(byte));
}

Snapshot read_snapshot(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "UTOE", 4) != 0)
    throw std::invalid_argument("not a UTOE snapshot");
  if (in.get() != 1) throw std::invalid_argument("unknown snapshot version");
  int tag_len = in.get();
  std::string tag(static_cast<std::size_t>(tag_len), '\0');
  in.read(tag.data(), tag_len);
  Snapshot snap;
  snap.machine_version = tag;
  snap.budget.max_steps = get_u64(in);
  snap.budget.max_output_bits = get_u64(in);
  std::uint64_t n = get_u64(in);
  snap.cells.resize(n);
  std::uint8_t byte = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (i % 4 == 0) byte = static_cast<std::uint8_t>(in.get());
    unsigned v = (byte >> (2 * (i % 4))) & 3u;
    if (v > 2) throw std::invalid_argument("corrupt snapshot cell");
    snap.cells[i] = static_cast<TriBit>(v);
  }
  if (!in) throw std::invalid_argument("truncated snapshot");
  return snap;
}

}  // namespace toe
