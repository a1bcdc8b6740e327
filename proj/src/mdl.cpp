#include "toelab/mdl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace toe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void append_tag(Bits& out, unsigned tag) {
  out.push_back((tag >> 2) & 1);
  out.push_back((tag >> 1) & 1);
  out.push_back(tag & 1);
}

unsigned read_tag(const Bits& in, std::size_t& pos) {
  if (pos + 3 > in.size()) throw std::invalid_argument("truncated model tag");
  unsigned tag = (in[pos] << 2) | (in[pos + 1] << 1) | in[pos + 2];
  pos += 3;
  return tag;
}

void append_program(Bits& out, const Program& p) {
  elias_gamma_append(out, p.size() + 1);
  out.insert(out.end(), p.begin(), p.end());
}

Program read_program(const Bits& in, std::size_t& pos) {
  std::uint64_t len = elias_gamma_decode(in, pos) - 1;
  if (pos + len > in.size()) throw std::invalid_argument("truncated program field");
  Program p(in.begin() + pos, in.begin() + pos + len);
  pos += len;
  return p;
}

double finish_decode(std::size_t pos, const Bits& in) {
  if (pos != in.size()) throw std::invalid_argument("trailing bits after model");
  return 0;
}

}  // namespace

Bits serialize_model(const ModelExpr& m) {
  Bits out;
  if (std::holds_alternative<CoinModel>(m)) {
    append_tag(out, 0b000);
  } else if (const auto* b = std::get_if<BernoulliModel>(&m)) {
    if (b->num == 0 || b->num >= b->den)
      throw std::invalid_argument("Bernoulli requires 0 < num < den");
    append_tag(out, 0b001);
    elias_gamma_append(out, b->num);
    elias_gamma_append(out, b->den);
  } else if (const auto* mk = std::get_if<MarkovModel>(&m)) {
    if (mk->order == 0 || mk->order > 16 ||
        mk->p_one.size() != (std::size_t{1} << mk->order))
      throw std::invalid_argument("Markov table must have 2^order rows");
    append_tag(out, 0b010);
    elias_gamma_append(out, mk->order + 1);
    for (const auto& row : mk->p_one) {
      if (row.den == 0 || row.num > row.den)
        throw std::invalid_argument("Markov row is not a probability");
      elias_gamma_append(out, row.num + 1);
      elias_gamma_append(out, row.den);
    }
  } else {
    const auto& ds = std::get<DetStreamModel>(m);
    switch (ds.source) {
      case StreamSource::M1:
        append_tag(out, 0b011);
        append_program(out, ds.program);
        break;
      case StreamSource::Pi:
        append_tag(out, 0b100);
        break;
      case StreamSource::Champernowne:
        append_tag(out, 0b101);
        break;
    }
  }
  return out;
}

Bits serialize_observer(const ObservationModel& m) {
  Bits out;
  if (std::holds_alternative<IdentityObserver>(m)) {
    append_tag(out, 0b110);
  } else {
    append_tag(out, 0b111);
    append_program(out, std::get<M1ObserverModel>(m).s);
  }
  return out;
}

ModelExpr decode_model(const Bits& bits) {
  std::size_t pos = 0;
  unsigned tag = read_tag(bits, pos);
  switch (tag) {
    case 0b000:
      finish_decode(pos, bits);
      return CoinModel{};
    case 0b001: {
      BernoulliModel b;
      b.num = elias_gamma_decode(bits, pos);
      b.den = elias_gamma_decode(bits, pos);
      if (b.num == 0 || b.num >= b.den)
        throw std::invalid_argument("decoded Bernoulli is not a probability");
      finish_decode(pos, bits);
      return b;
    }
    case 0b010: {
      MarkovModel mk;
      std::uint64_t order = elias_gamma_decode(bits, pos) - 1;
      if (order == 0 || order > 16)
        throw std::invalid_argument("decoded Markov order out of range");
      mk.order = static_cast<unsigned>(order);
      mk.p_one.resize(std::size_t{1} << mk.order);
      for (auto& row : mk.p_one) {
        row.num = elias_gamma_decode(bits, pos) - 1;
        row.den = elias_gamma_decode(bits, pos);
        if (row.num > row.den)
          throw std::invalid_argument("decoded Markov row is not a probability");
      }
      finish_decode(pos, bits);
      return mk;
    }
    case 0b011: {
      DetStreamModel ds{StreamSource::M1, read_program(bits, pos)};
      finish_decode(pos, bits);
      return ds;
    }
    case 0b100:
      finish_decode(pos, bits);
      return DetStreamModel{StreamSource::Pi, {}};
    case 0b101:
      finish_decode(pos, bits);
      return DetStreamModel{StreamSource::Champernowne, {}};
    default:
      throw std::invalid_argument("observer tag where a model was expected");
  }
}

ObservationModel decode_observer(const Bits& bits) {
  std::size_t pos = 0;
  unsigned tag = read_tag(bits, pos);
  if (tag == 0b110) {
    finish_decode(pos, bits);
    return IdentityObserver{};
  }
  if (tag == 0b111) {
    M1ObserverModel m{read_program(bits, pos)};
    finish_decode(pos, bits);
    return m;
  }
  throw std::invalid_argument("model tag where an observer was expected");
}

std::uint64_t model_code_length(const ModelExpr& m) {
  return serialize_model(m).size();
}

std::uint64_t model_code_length(const ObservationModel& m) {
  return serialize_observer(m).size();
}

Bits champernowne_bits(std::size_t n) {
  Bits out;
  out.reserve(n);
  for (std::uint64_t v = 1; out.size() < n; ++v) {
    unsigned w = 0;
    while (v >> (w + 1)) ++w;
    for (unsigned i = 0; i <= w && out.size() < n; ++i)
      out.push_back(static_cast<std::uint8_t>((v >> (w - i)) & 1));
  }
  return out;
}

Bits stream_bits(const DetStreamModel& m, std::size_t n, const RunBudget& budget) {
  switch (m.source) {
    case StreamSource::Pi:
      return pi_bits(n);
    case StreamSource::Champernowne:
      return champernowne_bits(n);
    case StreamSource::M1:
      return run_generator(m.program, {budget.max_steps, n}).output;
  }
  throw std::logic_error("unreachable");
}

double nll_bits(const ModelExpr& m, const Bits& obs, const RunBudget& budget) {
  if (std::holds_alternative<CoinModel>(m))
    return static_cast<double>(obs.size());
  if (const auto* b = std::get_if<BernoulliModel>(&m)) {
    std::size_t ones = static_cast<std::size_t>(
        std::count(obs.begin(), obs.end(), std::uint8_t{1}));
    std::size_t zeros = obs.size() - ones;
    if ((ones && b->num == 0) || (zeros && b->num == b->den)) return kInf;
    long double nll = 0;
    if (ones)
      nll += ones * (std::log2l(static_cast<long double>(b->den)) -
                     std::log2l(static_cast<long double>(b->num)));
    if (zeros)
      nll += zeros * (std::log2l(static_cast<long double>(b->den)) -
                      std::log2l(static_cast<long double>(b->den - b->num)));
    return static_cast<double>(nll);
  }
  if (const auto* mk = std::get_if<MarkovModel>(&m)) {
    // History before the first bit counts as zeros.
    std::uint64_t ctx = 0;
    std::uint64_t mask = (std::uint64_t{1} << mk->order) - 1;
    long double nll = 0;
    for (std::uint8_t bit : obs) {
      const auto& row = mk->p_one[static_cast<std::size_t>(ctx)];
      std::uint64_t num = bit ? row.num : row.den - row.num;
      if (num == 0) return kInf;
      nll += std::log2l(static_cast<long double>(row.den)) -
             std::log2l(static_cast<long double>(num));
      ctx = ((ctx << 1) | bit) & mask;
    }
    return static_cast<double>(nll);
  }
  const auto& ds = std::get<DetStreamModel>(m);
  Bits stream = stream_bits(ds, obs.size(), budget);
  return stream.size() >= obs.size() && is_prefix_of(obs, stream) ? 0.0 : kInf;
}

CodeLengthReport prob_score(const ModelExpr& q, const ObservationModel& s,
                            const Bits& obs, const RunBudget& budget) {
  CodeLengthReport r;
  r.model_bits = static_cast<double>(model_code_length(q));
  r.observer_bits = static_cast<double>(model_code_length(s));
  if (std::holds_alternative<IdentityObserver>(s)) {
    r.noise_bits = nll_bits(q, obs, budget);
  } else {
    const auto* ds = std::get_if<DetStreamModel>(&q);
    if (!ds)
      throw std::invalid_argument(
          "M1 observers are supported for deterministic streams only");
    const Program& observer = std::get<M1ObserverModel>(s).s;
    // Every IN costs a step, so the observer can consume at most max_steps
    // universe bits; a small slack over |obs| keeps the prefix check cheap.
    std::size_t universe_len = static_cast<std::size_t>(
        std::min<std::uint64_t>(budget.max_steps, obs.size() + 512));
    if (ds->source == StreamSource::Pi)
      universe_len = std::min<std::size_t>(universe_len, 4096);
    Bits universe = stream_bits(*ds, universe_len, budget);
    ObserverRun run = run_observer(observer, universe, budget);
    r.noise_bits =
        run.observation.size() >= obs.size() && is_prefix_of(obs, run.observation)
            ? 0.0
            : kInf;
  }
  r.total = r.model_bits + r.observer_bits + r.noise_bits;
  return r;
}

std::optional<std::size_t> select_prob_model(
    const std::vector<std::pair<ModelExpr, ObservationModel>>& candidates,
    const Bits& obs, const RunBudget& budget) {
  std::optional<std::size_t> best;
  double best_total = kInf;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CodeLengthReport r =
        prob_score(candidates[i].first, candidates[i].second, obs, budget);
    if (r.total < best_total) {
      best_total = r.total;
      best = i;
    }
  }
  return best;
}

std::optional<std::uint64_t> ctoe_score(const Program& q, const Program& s,
                                        const Bits& o_true,
                                        const RunBudget& budget) {
  auto [gen, obs] = run_interleaved(q, s, budget);
  if (obs.observation.size() < o_true.size() ||
      !is_prefix_of(o_true, obs.observation))
    return std::nullopt;
  return q.size() + s.size();
}

namespace {
// Length-lexicographic order on bit strings.
bool llex_less(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}
}  // namespace

std::optional<CtoeSelection> select_ctoe(
    const std::vector<std::pair<Program, Program>>& candidates,
    const Bits& o_true, const RunBudget& budget) {
  std::optional<CtoeSelection> best;
  Bits best_concat;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto score = ctoe_score(candidates[i].first, candidates[i].second, o_true,
                            budget);
    if (!score) continue;
    Bits joined = concat(candidates[i].first, candidates[i].second);
    if (!best || *score < best->score ||
        (*score == best->score && llex_less(joined, best_concat))) {
      best = CtoeSelection{i, *score};
      best_concat = std::move(joined);
    }
  }
  return best;
}

PartialScore partial_score(const Program& q, const Program& s,
                           const Bits& o_true, const RunBudget& budget) {
  PartialScore ps;
  Bits obs = run_interleaved(q, s, budget).second.observation;
  for (std::uint64_t i = 1; i <= o_true.size(); ++i)
    if (i > obs.size() || obs[i - 1] != o_true[i - 1])
      ps.error_positions.push_back(i);
  elias_gamma_append(ps.table, ps.error_positions.size() + 1);
  std::uint64_t prev = 0;
  for (std::uint64_t p : ps.error_positions) {
    elias_gamma_append(ps.table, p - prev);
    prev = p;
  }
  for (std::uint64_t p : ps.error_positions)
    if (p > obs.size()) ps.table.push_back(o_true[p - 1]);
  ps.report.model_bits = static_cast<double>(q.size());
  ps.report.observer_bits = static_cast<double>(s.size());
  ps.report.error_table_bits = static_cast<double>(ps.table.size());
  ps.report.total =
      ps.report.model_bits + ps.report.observer_bits + ps.report.error_table_bits;
  return ps;
}

Bits reconstruct_partial(const Program& q, const Program& s, const Bits& table,
                         std::size_t t, const RunBudget& budget) {
  Bits obs = run_interleaved(q, s, budget).second.observation;
  std::size_t pos = 0;
  std::uint64_t m = elias_gamma_decode(table, pos) - 1;
  std::vector<std::uint64_t> positions(m);
  std::uint64_t prev = 0;
  for (auto& p : positions) {
    prev += elias_gamma_decode(table, pos);
    p = prev;
  }
  Bits out(t, 0);
  for (std::size_t i = 0; i < t && i < obs.size(); ++i) out[i] = obs[i];
  for (std::uint64_t p : positions) {
    if (p == 0 || p > t) throw std::invalid_argument("error position out of range");
    if (p > obs.size()) {
      if (pos >= table.size())
        throw std::invalid_argument("missing literal bit for undefined position");
      out[p - 1] = table[pos++];
    } else {
      out[p - 1] ^= 1;
    }
  }
  if (pos != table.size())
    throw std::invalid_argument("trailing bits after error table");
  return out;
}

namespace {

// Nearest interior dyadic point i/den to k/n, exact arithmetic; den >= 2.
std::uint64_t nearest_grid_level(std::size_t k, std::size_t n,
                                 std::uint64_t den) {
  std::uint64_t best_i = 1;
  unsigned __int128 best_dist = ~static_cast<unsigned __int128>(0);
  for (std::uint64_t i = 1; i <= den - 1; ++i) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(n) * i;
    unsigned __int128 rhs = static_cast<unsigned __int128>(den) * k;
    unsigned __int128 dist = lhs > rhs ? lhs - rhs : rhs - lhs;
    if (dist < best_dist) {
      best_dist = dist;
      best_i = i;
    }
  }
  return best_i;
}

}  // namespace

double bernoulli_grid_total(const Bits& obs, std::uint64_t den,
                            unsigned param_bits) {
  if (obs.empty() || den < 2)
    throw std::invalid_argument("grid total needs n >= 1 and den >= 2");
  std::size_t k = static_cast<std::size_t>(
      std::count(obs.begin(), obs.end(), std::uint8_t{1}));
  std::uint64_t i = nearest_grid_level(k, obs.size(), den);
  return 3.0 + param_bits + nll_bits(BernoulliModel{i, den}, obs);
}

ParametricScore parametric_score_bernoulli(const Bits& obs) {
  std::size_t n = obs.size();
  if (n == 0) throw std::invalid_argument("parametric score needs n >= 1");
  unsigned b = 0;
  while ((std::uint64_t{1} << (2 * b)) < n) ++b;  // b = ceil(lb n / 2)

  ParametricScore ps;
  ps.param_bits = b;
  ps.grid_den = std::uint64_t{1} << std::max(b, 1u);
  ps.levels = ps.grid_den - 1;
  std::size_t k = static_cast<std::size_t>(
      std::count(obs.begin(), obs.end(), std::uint8_t{1}));
  ps.grid_num = b == 0 ? 1 : nearest_grid_level(k, n, ps.grid_den);
  ps.report.model_bits = 3.0 + b;
  ps.report.noise_bits = nll_bits(BernoulliModel{ps.grid_num, ps.grid_den}, obs);
  ps.report.total = ps.report.model_bits + ps.report.noise_bits;
  return ps;
}

unsigned localization_bits(unsigned __int128 n) {
  if (n == 0) throw std::invalid_argument("localization needs N >= 1");
  unsigned bits = 0;
  for (unsigned __int128 v = n - 1; v; v >>= 1) ++bits;  // ceil(lb n)
  return bits;
}

unsigned localization_bits_dec(std::string_view n) {
  std::size_t i = 0;
  auto digits = [&](unsigned __int128& out) {
    if (i >= n.size() || n[i] < '0' || n[i] > '9')
      throw std::invalid_argument("expected a decimal count: " + std::string(n));
    out = 0;
    constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
    while (i < n.size() && n[i] >= '0' && n[i] <= '9') {
      unsigned d = static_cast<unsigned>(n[i] - '0');
      if (out > (kMax - d) / 10)
        throw std::out_of_range("count does not fit in 128 bits");
      out = out * 10 + d;
      ++i;
    }
  };
  unsigned __int128 mantissa;
  digits(mantissa);
  if (i < n.size() && (n[i] == 'e' || n[i] == 'E')) {
    ++i;
    unsigned __int128 exp;
    digits(exp);
    for (; exp; --exp) {
      constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
      if (mantissa > kMax / 10)
        throw std::out_of_range("count does not fit in 128 bits");
      mantissa *= 10;
    }
  }
  if (i != n.size())
    throw std::invalid_argument("malformed count: " + std::string(n));
  return localization_bits(mantissa);
}

}  // namespace toe
