#include "toelab/predict.hpp"

#include <cmath>
#include <numeric>

namespace toe {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  std::uint64_t g = std::gcd(num, den);
  if (num == 0) return {0, 1};
  return {num / g, den / g};
}

PredictorReport counting_predictor(const Bits& target, unsigned horizon,
                                   unsigned max_len, const RunBudget& budget,
                                   Exec exec) {
  QSet base = consistent_set({target, max_len, budget}, exec);
  if (base.count == 0)
    throw EmptyConditioningSet("no program of length <= " +
                               std::to_string(max_len) +
                               " is consistent with the past");
  PredictorReport report;
  report.target = target;
  report.horizon = horizon;
  report.max_len = max_len;
  report.conditioning_count = base.count;
  report.l = *base.l;

  std::uint64_t covered = 0;
  std::uint64_t best_count = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << horizon); ++c) {
    Bits continuation;
    for (unsigned i = 0; i < horizon; ++i)
      continuation.push_back(
          static_cast<std::uint8_t>((c >> (horizon - 1 - i)) & 1));
    QSet split = consistent_split(target, continuation, max_len, budget, exec);
    ContinuationRow row;
    row.continuation = continuation;
    row.count = split.count;
    row.prob = make_rational(split.count, base.count);
    row.l_n = split.l;
    covered += split.count;
    if (report.rows.empty() || split.count > best_count) {
      best_count = split.count;
      report.argmax = continuation;
    }
    report.rows.push_back(std::move(row));
  }
  report.deficit = make_rational(base.count - covered, base.count);
  return report;
}

OckhamChoice ockham_choice(const Bits& target, unsigned horizon,
                           unsigned max_len, const RunBudget& budget,
                           Exec exec) {
  QSet base = consistent_set({target, max_len, budget}, exec);
  if (base.count == 0)
    throw EmptyConditioningSet("no program of length <= " +
                               std::to_string(max_len) +
                               " is consistent with the past");
  OckhamChoice choice;
  choice.q_min = *base.q_min;
  RunBudget extended{budget.max_steps, target.size() + horizon};
  GeneratorRun run = run_generator(choice.q_min, extended);
  for (std::size_t i = target.size();
       i < run.output.size() && i < target.size() + horizon; ++i)
    choice.continuation.push_back(run.output[i]);
  choice.truncated = choice.continuation.size() < horizon;
  if (!choice.truncated) {
    PredictorReport report =
        counting_predictor(target, horizon, max_len, budget, exec);
    choice.agrees_with_argmax = choice.continuation == report.argmax;
  }
  return choice;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty sampling range");
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

std::vector<GeneratorRun> self_sample(const SampleConfig& cfg,
                                      const RunBudget& budget) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::uint64_t space = program_count_upto(cfg.max_len);
  std::vector<GeneratorRun> out;
  out.reserve(cfg.trials);
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    // Per-trial stream so aggregation is order-independent.
    SplitMix64 rng{cfg.seed ^ (0x5851f42d4c957f2dull * (trial + 1))};
    bool found = false;
    for (std::uint64_t attempt = 0; attempt < cfg.retry_cap; ++attempt) {
      GeneratorRun run =
          run_generator(program_from_ordinal(rng.below(space) + 1), budget);
      if (!cfg.condition || is_prefix_of(*cfg.condition, run.output)) {
        out.push_back(std::move(run));
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("condition not met within the retry cap");
  }
  return out;
}

double RegimeStats::predictor_accuracy() const {
  return trials ? static_cast<double>(predictor_correct) / trials : 0.0;
}
double RegimeStats::baseline_accuracy() const {
  return trials ? static_cast<double>(baseline_correct) / trials : 0.0;
}
double RegimeStats::std_error() const {
  if (trials == 0) return 0.0;
  double p = predictor_accuracy();
  return std::sqrt(p * (1.0 - p) / trials);
}

namespace {

// Prefix-count tables: counts[len][packed prefix] = number of programs whose
// run emits at least len bits starting with that prefix. One enumeration pass
// serves every trial.
struct PrefixCounts {
  unsigned n;
  std::vector<std::vector<std::uint64_t>> counts;

  PrefixCounts(unsigned max_len, unsigned n_, const RunBudget& budget) : n(n_) {
    counts.resize(n + 1);
    for (unsigned len = 0; len <= n; ++len)
      counts[len].assign(std::size_t{1} << len, 0);
    ProgramStream stream(max_len);
    Program p;
    while (stream.next(p)) {
      GeneratorRun run = run_generator(p, {budget.max_steps, n});
      unsigned emitted = static_cast<unsigned>(run.output.size());
      std::uint64_t packed = 0;
      ++counts[0][0];
      for (unsigned len = 1; len <= emitted; ++len) {
        packed = (packed << 1) | run.output[len - 1];
        ++counts[len][static_cast<std::size_t>(packed)];
      }
    }
  }

  // Predicted bit t+1 given the first t bits of target; ties favor 0.
  std::uint8_t predict(const Bits& target, unsigned t) const {
    std::uint64_t packed = 0;
    for (unsigned i = 0; i < t; ++i) packed = (packed << 1) | target[i];
    std::uint64_t c0 = counts[t + 1][static_cast<std::size_t>(packed << 1)];
    std::uint64_t c1 = counts[t + 1][static_cast<std::size_t>((packed << 1) | 1)];
    return c1 > c0 ? 1 : 0;
  }
};

}  // namespace

NflReport nfl_experiment(const NflConfig& cfg, const RunBudget& budget) {
  if (cfg.t >= cfg.n || cfg.n > 62)
    throw std::invalid_argument("need t < n <= 62");
  PrefixCounts table(cfg.max_len, cfg.n, budget);
  std::uint64_t space = program_count_upto(cfg.max_len);
  NflReport report;

  auto score = [&](RegimeStats& stats, const Bits& target) {
    ++stats.trials;
    std::uint8_t truth = target[cfg.t];
    if (table.predict(target, cfg.t) == truth) ++stats.predictor_correct;
    if (truth == 0) ++stats.baseline_correct;
  };

  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    SplitMix64 rng{cfg.seed ^ (0xa24baed4963ee407ull * (trial + 1))};
    Bits target(cfg.n);
    std::uint64_t word = rng.next();
    for (unsigned i = 0; i < cfg.n; ++i)
      target[i] = static_cast<std::uint8_t>((word >> i) & 1);
    score(report.uniform, target);
  }

  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    SplitMix64 rng{cfg.seed ^ (0xd1342543de82ef95ull * (trial + 1))};
    GeneratorRun run = run_generator(program_from_ordinal(rng.below(space) + 1),
                                     {budget.max_steps, cfg.n});
    if (run.output.size() < cfg.n) {
      ++report.discarded;
      continue;
    }
    score(report.universal, run.output);
  }
  return report;
}

std::vector<KmRow> km_vs_logM(const std::vector<Bits>& targets,
                              unsigned max_len, const RunBudget& budget,
                              Exec exec) {
  std::vector<KmRow> rows;
  rows.reserve(targets.size());
  double log_space = std::log2(static_cast<double>(program_count_upto(max_len)));
  for (const Bits& target : targets) {
    KmRow row;
    row.target = target;
    QSet qs = consistent_set({target, max_len, budget}, exec);
    row.count = qs.count;
    if (qs.count > 0) {
      row.km = *qs.l;
      row.neg_log_phat = log_space - std::log2(static_cast<double>(qs.count));
      row.gap = static_cast<double>(*row.km) - *row.neg_log_phat;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace toe
