#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "toelab/enumerate.hpp"
#include "toelab/machine.hpp"

namespace toe {

// The multiverse matrix: row q (in length-lexicographic order), column k >= 1
// holds bit k of the universe generated by q. The matrix is linearized along
// anti-diagonals in a serpentine: odd diagonals run from (row 1, col d) down
// to (row d, col 1), even diagonals the other way.

struct Cell {
  Program q;
  std::uint64_t k = 1;  // 1-based column
  bool operator==(const Cell&) const = default;
};

std::uint64_t cell_index(const Cell& cell);
Cell index_cell(std::uint64_t i);

enum class TriBit : std::uint8_t { Zero = 0, One = 1, Undef = 2 };

char tribit_char(TriBit t);

// First n cells of the dovetailed multiverse stream; a cell is Undef when its
// row's run emits too few bits within the budget.
std::vector<TriBit> utoe_stream(std::uint64_t n, const RunBudget& budget,
                                Exec exec = Exec::Parallel);

// Row q of the matrix: the first n output bits of q, padded with Undef.
std::vector<TriBit> extract_universe(const Program& q, std::uint64_t n,
                                     const RunBudget& budget);

// Observer against the multiverse stream: a fixed extractor marker, the
// embedded generator with a gamma-coded length delimiter, and the original
// observer. The extractor itself is native, so the wrapper's cost is the
// declared constant plus the delimiter.
inline constexpr unsigned kExtractorTagBits = 8;  // c_r
extern const Bits kExtractorTag;

struct WrappedObserver {
  Bits extractor_tag;
  Bits embedded_q;  // gamma(|q|+1) followed by the bits of q
  Program embedded_s;
  std::uint64_t declared_length = 0;

  Bits serialized() const;
  Program generator() const;  // recovers q from embedded_q
};

WrappedObserver wrap_observer(const Program& q, const Program& s);

// Runs a wrapped observer against the multiverse stream (reading row q of the
// matrix lazily) and returns the observation record.
ObserverRun run_wrapped(const WrappedObserver& wrapped, const RunBudget& budget);

// Rationals in lowest terms, denominator positive. The 4-tuple bijection is
// Calkin-Wilf on each coordinate composed with Cantor pairing; (0,0,0,0)
// maps to 1.
struct Rational4 {
  std::int64_t num = 0;
  std::uint64_t den = 1;
  bool operator==(const Rational4&) const = default;
};

std::uint64_t rational_index(const std::array<Rational4, 4>& point);
std::array<Rational4, 4> index_rational(std::uint64_t i);

// Stream snapshot: "UTOE" magic, format version, machine tag, budget, cell
// count, then cells packed 2 bits each (00=0, 01=1, 10=#), little-endian,
// 4 cells per byte starting at the low bits. See docs/formats.md.
void write_snapshot(std::ostream& out, const std::vector<TriBit>& cells,
                    const RunBudget& budget);
struct Snapshot {
  std::string machine_version;
  RunBudget budget;
  std::vector<TriBit> cells;
};
Snapshot read_snapshot(std::istream& in);

}  // namespace toe
