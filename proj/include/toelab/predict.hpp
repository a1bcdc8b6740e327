#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "toelab/enumerate.hpp"

namespace toe {

// Counting-based prediction: the probability of a continuation is the exact
// fraction of length-<=L programs consistent with it among those consistent
// with the past. No floating point on the probability path.

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool operator==(const Rational&) const = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);  // reduces

struct ContinuationRow {
  Bits continuation;
  std::uint64_t count = 0;
  Rational prob;                    // count / |Q_L|
  std::optional<std::size_t> l_n;   // length of the minimal member
};

struct PredictorReport {
  Bits target;
  unsigned horizon = 0;
  unsigned max_len = 0;
  std::uint64_t conditioning_count = 0;  // |Q_L|
  std::size_t l = 0;                     // length of q_min for the past alone
  std::vector<ContinuationRow> rows;     // all 2^h continuations, lex order
  Rational deficit;                      // mass of runs shorter than t+h
  Bits argmax;                           // ties broken lexicographically
};

struct EmptyConditioningSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PredictorReport counting_predictor(const Bits& target, unsigned horizon,
                                   unsigned max_len, const RunBudget& budget,
                                   Exec exec = Exec::Parallel);

// The continuation the shortest consistent program emits; truncated when its
// run stops before t+h output bits.
struct OckhamChoice {
  Program q_min;
  Bits continuation;  // up to h bits
  bool truncated = false;
  bool agrees_with_argmax = false;
};

OckhamChoice ockham_choice(const Bits& target, unsigned horizon,
                           unsigned max_len, const RunBudget& budget,
                           Exec exec = Exec::Parallel);

// Uniform self-sampling over the 2^(L+1)-1 programs of length <= L, with
// optional rejection on a required output prefix. Reproducible from the seed.
struct SampleConfig {
  unsigned max_len = 8;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::optional<Bits> condition;
  std::uint64_t retry_cap = 100000;  // per-trial rejection limit
};

std::vector<GeneratorRun> self_sample(const SampleConfig& cfg,
                                      const RunBudget& budget);

// NFL contrast: regime A predicts uniform random targets, regime B predicts
// targets read off self-sampled universes. Both use the counting predictor
// for bit t+1 given the first t bits, against an always-0 baseline.
struct NflConfig {
  unsigned max_len = 12;
  unsigned t = 4;
  unsigned n = 5;  // target length; must satisfy t < n
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
};

struct RegimeStats {
  std::uint64_t trials = 0;
  std::uint64_t predictor_correct = 0;
  std::uint64_t baseline_correct = 0;
  double predictor_accuracy() const;
  double baseline_accuracy() const;
  double std_error() const;  // binomial at the observed predictor accuracy
};

struct NflReport {
  RegimeStats uniform;     // regime A
  RegimeStats universal;   // regime B
  std::uint64_t discarded = 0;  // regime-B draws emitting fewer than n bits
};

NflReport nfl_experiment(const NflConfig& cfg, const RunBudget& budget);

// Km vs -lb of the counting semimeasure P^(u) = |Q_L(u)| / (2^(L+1)-1).
struct KmRow {
  Bits target;
  std::uint64_t count = 0;
  std::optional<std::size_t> km;
  std::optional<double> neg_log_phat;
  std::optional<double> gap;  // km - (-lb phat)
};

std::vector<KmRow> km_vs_logM(const std::vector<Bits>& targets,
                              unsigned max_len, const RunBudget& budget,
                              Exec exec = Exec::Parallel);

// The deterministic RNG behind every stochastic operation; fixed here so
// results are identical across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);
};

}  // namespace toe
