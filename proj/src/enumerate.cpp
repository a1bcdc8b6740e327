#include "toelab/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toe {

std::uint64_t program_count_upto(unsigned max_len) {
  if (max_len > 62) throw std::invalid_argument("max_len too large");
  return (std::uint64_t{2} << max_len) - 1;
}

Program program_from_ordinal(std::uint64_t ordinal) {
  if (ordinal == 0) throw std::invalid_argument("ordinal must be >= 1");
  unsigned width = std::bit_width(ordinal) - 1;  // bits after the leading 1
  Program p(width);
  for (unsigned i = 0; i < width; ++i)
    p[i] = static_cast<std::uint8_t>((ordinal >> (width - 1 - i)) & 1);
  return p;
}

std::uint64_t ordinal_of(const Program& p) {
  if (p.size() > 62) throw std::invalid_argument("program too long");
  std::uint64_t v = 1;
  for (auto b : p) v = (v << 1) | b;
  return v;
}

RunBudget default_budget(unsigned max_len, std::size_t target_len) {
  return RunBudget{std::uint64_t{10} << max_len, target_len + 64};
}

namespace {

enum class Verdict { Consistent, Inconsistent, Undecided };

Verdict classify(const Program& p, const Bits& target, const RunBudget& budget) {
  // Output beyond |target| bits cannot change the verdict; capping there lets
  // matching runs stop as soon as the prefix is established.
  RunBudget b = budget;
  b.max_output_bits = std::min<std::uint64_t>(b.max_output_bits, target.size());
  if (b.max_output_bits == 0) return Verdict::Consistent;  // empty target
  GeneratorRun run = run_generator(p, b);
  bool matches = is_prefix_of(run.output, target);
  if (run.output.size() >= target.size() && matches) return Verdict::Consistent;
  if (run.cause == StopCause::StepBudget && matches) return Verdict::Undecided;
  return Verdict::Inconsistent;
}

void keep_smallest(std::vector<std::uint64_t>& v, std::uint64_t ordinal,
                   std::size_t cap) {
  if (v.size() < cap) {
    v.push_back(ordinal);
  } else if (ordinal < v.back()) {
    v.back() = ordinal;
  } else {
    return;
  }
  std::sort(v.begin(), v.end());
}

QSet finalize(std::uint64_t count, std::uint64_t undecided,
              std::uint64_t min_ordinal,
              std::vector<std::uint64_t> sample_ordinals) {
  QSet qs;
  qs.count = count;
  qs.undecided = undecided;
  if (min_ordinal != UINT64_MAX) {
    qs.q_min = program_from_ordinal(min_ordinal);
    qs.l = qs.q_min->size();
  }
  std::sort(sample_ordinals.begin(), sample_ordinals.end());
  if (sample_ordinals.size() > kMembersSampleCap)
    sample_ordinals.resize(kMembersSampleCap);
  for (auto j : sample_ordinals)
    qs.members_sample.push_back(program_from_ordinal(j));
  return qs;
}

QSet consistent_set_serial(const ConsistencyQuery& q) {
  const std::uint64_t n = program_count_upto(q.max_len);
  std::uint64_t count = 0, undecided = 0, min_ordinal = UINT64_MAX;
  std::vector<std::uint64_t> sample;
  for (std::uint64_t j = 1; j <= n; ++j) {
    Verdict v = classify(program_from_ordinal(j), q.target, q.budget);
    if (v == Verdict::Consistent) {
      ++count;
      min_ordinal = std::min(min_ordinal, j);
      keep_smallest(sample, j, kMembersSampleCap);
    } else if (v == Verdict::Undecided) {
      ++undecided;
    }
  }
  return finalize(count, undecided, min_ordinal, std::move(sample));
}

QSet consistent_set_parallel(const ConsistencyQuery& q) {
#ifndef _OPENMP
  return consistent_set_serial(q);
#else
  const std::uint64_t n = program_count_upto(q.max_len);
  std::uint64_t count = 0, undecided = 0, min_ordinal = UINT64_MAX;
  std::vector<std::uint64_t> sample;
#pragma omp parallel
  {
    std::uint64_t local_count = 0, local_undecided = 0,
                  local_min = UINT64_MAX;
    std::vector<std::uint64_t> local_sample;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t j = 1; j <= static_cast<std::int64_t>(n); ++j) {
      Verdict v = classify(program_from_ordinal(static_cast<std::uint64_t>(j)),
                           q.target, q.budget);
      if (v == Verdict::Consistent) {
        ++local_count;
        local_min = std::min(local_min, static_cast<std::uint64_t>(j));
        keep_smallest(local_sample, static_cast<std::uint64_t>(j),
                      kMembersSampleCap);
      } else if (v == Verdict::Undecided) {
        ++local_undecided;
      }
    }
#pragma omp critical
    {
      count += local_count;
      undecided += local_undecided;
      min_ordinal = std::min(min_ordinal, local_min);
      sample.insert(sample.end(), local_sample.begin(), local_sample.end());
    }
  }
  return finalize(count, undecided, min_ordinal, std::move(sample));
#endif
}

}  // namespace

QSet consistent_set(const ConsistencyQuery& query, Exec exec) {
  return exec == Exec::Serial ? consistent_set_serial(query)
                              : consistent_set_parallel(query);
}

std::optional<std::pair<std::size_t, Program>> km_upper(const Bits& target,
                                                        unsigned max_len,
                                                        const RunBudget& budget,
                                                        Exec exec) {
  QSet qs = consistent_set({target, max_len, budget}, exec);
  if (!qs.q_min) return std::nullopt;
  return std::make_pair(*qs.l, *qs.q_min);
}

QSet consistent_split(const Bits& target, const Bits& continuation,
                      unsigned max_len, const RunBudget& budget, Exec exec) {
  return consistent_set({concat(target, continuation), max_len, budget}, exec);
}

}  // namespace toe
