#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "toelab/machine.hpp"

namespace toe {

// Programs are enumerated in length-lexicographic order: eps, 0, 1, 00, 01,
// 10, 11, 000, ... Ordinal j >= 1 maps to the binary expansion of j with the
// leading 1 removed; there are 2^(L+1)-1 programs of length <= L.

std::uint64_t program_count_upto(unsigned max_len);
Program program_from_ordinal(std::uint64_t ordinal);
std::uint64_t ordinal_of(const Program& p);

// Restartable stream over the programs of length <= max_len; shardable by
// ordinal range.
class ProgramStream {
 public:
  explicit ProgramStream(unsigned max_len, std::uint64_t first_ordinal = 1)
      : next_(first_ordinal), last_(program_count_upto(max_len)) {}
  bool next(Program& out) {
    if (next_ > last_) return false;
    out = program_from_ordinal(next_++);
    return true;
  }
  std::uint64_t remaining() const { return next_ > last_ ? 0 : last_ - next_ + 1; }

 private:
  std::uint64_t next_;
  std::uint64_t last_;
};

struct ConsistencyQuery {
  Bits target;
  unsigned max_len = 0;
  RunBudget budget;
};

// Default per-program budget for a length bound L: 10 * 2^L steps and
// |target| + 64 output bits.
RunBudget default_budget(unsigned max_len, std::size_t target_len);

struct QSet {
  std::uint64_t count = 0;
  std::optional<Program> q_min;
  std::optional<std::size_t> l;  // length of q_min
  std::uint64_t undecided = 0;
  std::vector<Program> members_sample;
};

enum class Exec { Serial, Parallel };

inline constexpr std::size_t kMembersSampleCap = 32;

// Q_L: programs of length <= L whose run emits at least |target| bits and
// whose first |target| output bits equal target. Programs that stop short of
// |target| bits are inconsistent; the ones that ran out of steps while still
// matching are tallied as undecided.
QSet consistent_set(const ConsistencyQuery& query, Exec exec = Exec::Parallel);

// Km upper bound at this length bound and budget: (l, q_min), or absent when
// Q_L is empty.
std::optional<std::pair<std::size_t, Program>> km_upper(
    const Bits& target, unsigned max_len, const RunBudget& budget,
    Exec exec = Exec::Parallel);

// Q_L^n: consistency against target followed by continuation.
QSet consistent_split(const Bits& target, const Bits& continuation,
                      unsigned max_len, const RunBudget& budget,
                      Exec exec = Exec::Parallel);

}  // namespace toe
