#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "toelab/coding.hpp"
#include "toelab/machine.hpp"

namespace toe {

// Code-length accounting. The bit-exact serialization table in
// docs/formats.md defines Length() for every model; 3-bit tags:
//   000 Coin            001 Bernoulli        010 Markov
//   011 DetStream(M1)   100 DetStream(pi)    101 DetStream(Champernowne)
//   110 Identity obs.   111 M1 observer

struct CoinModel {
  bool operator==(const CoinModel&) const = default;
};

// P(1) = num/den with 0 < num < den, reduced.
struct BernoulliModel {
  std::uint64_t num = 1;
  std::uint64_t den = 2;
  bool operator==(const BernoulliModel&) const = default;
};

// P(next = 1 | previous `order` bits), one reduced rational per context;
// contexts are indexed by their bits read as a binary number, and history
// before the start of the observation counts as zeros.
struct MarkovModel {
  unsigned order = 1;
  struct Row {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool operator==(const Row&) const = default;
  };
  std::vector<Row> p_one;  // size 2^order
  bool operator==(const MarkovModel&) const = default;
};

enum class StreamSource : std::uint8_t { M1, Pi, Champernowne };

struct DetStreamModel {
  StreamSource source = StreamSource::M1;
  Program program;  // used only for StreamSource::M1
  bool operator==(const DetStreamModel&) const = default;
};

using ModelExpr =
    std::variant<CoinModel, BernoulliModel, MarkovModel, DetStreamModel>;

struct IdentityObserver {
  bool operator==(const IdentityObserver&) const = default;
};
struct M1ObserverModel {
  Program s;
  bool operator==(const M1ObserverModel&) const = default;
};
using ObservationModel = std::variant<IdentityObserver, M1ObserverModel>;

Bits serialize_model(const ModelExpr& m);
Bits serialize_observer(const ObservationModel& m);
ModelExpr decode_model(const Bits& bits);
ObservationModel decode_observer(const Bits& bits);

std::uint64_t model_code_length(const ModelExpr& m);
std::uint64_t model_code_length(const ObservationModel& m);

// Deterministic source streams.
Bits pi_bits(std::size_t n);
Bits champernowne_bits(std::size_t n);
Bits stream_bits(const DetStreamModel& m, std::size_t n, const RunBudget& budget);

inline RunBudget stream_budget(std::size_t n) {
  return RunBudget{1u << 20, n};
}

// -lb of the model's probability of obs; +infinity for an impossible
// observation (the model is then inadmissible for selection).
double nll_bits(const ModelExpr& m, const Bits& obs,
                const RunBudget& budget = stream_budget(1u << 16));

struct CodeLengthReport {
  double model_bits = 0;
  double observer_bits = 0;
  double noise_bits = 0;
  double error_table_bits = 0;
  double total = 0;
};

// Probabilistic score: Length(Q) + Length(S) + noise. Identity observers
// work with any model; M1 observers are supported for deterministic streams.
CodeLengthReport prob_score(const ModelExpr& q, const ObservationModel& s,
                            const Bits& obs,
                            const RunBudget& budget = stream_budget(1u << 16));

// Smallest-total selection among (model, observer) candidates; ties go to
// the earliest candidate. Inadmissible (infinite-noise) candidates never win.
std::optional<std::size_t> select_prob_model(
    const std::vector<std::pair<ModelExpr, ObservationModel>>& candidates,
    const Bits& obs, const RunBudget& budget = stream_budget(1u << 16));

// Exact-theory score: Length(q) + Length(s) when the interleaved observation
// extends o_true; nullopt when the pair is not perfect.
std::optional<std::uint64_t> ctoe_score(const Program& q, const Program& s,
                                        const Bits& o_true,
                                        const RunBudget& budget);

struct CtoeSelection {
  std::size_t index = 0;
  std::uint64_t score = 0;
};

// Minimal-length perfect pair; ties broken by length-lexicographic order of
// the concatenation q s, then candidate order. nullopt when nothing is
// perfect.
std::optional<CtoeSelection> select_ctoe(
    const std::vector<std::pair<Program, Program>>& candidates,
    const Bits& o_true, const RunBudget& budget);

// Partial-theory score: Length(q) + error table + Length(s). The table codes
// gamma(m+1), then gamma-coded gaps between error positions, then one literal
// bit of o_true for every error position the observation left undefined
// (undefined positions always count as errors). Error positions are 1-based.
struct PartialScore {
  CodeLengthReport report;
  std::vector<std::uint64_t> error_positions;
  Bits table;
};

PartialScore partial_score(const Program& q, const Program& s,
                           const Bits& o_true, const RunBudget& budget);

// Exact inverse of the error-table code: replays (q, s) and patches the
// observation with the table.
Bits reconstruct_partial(const Program& q, const Program& s, const Bits& table,
                         std::size_t t, const RunBudget& budget);

// Parametric rule: one Bernoulli parameter on the dyadic grid {i / 2^b},
// b = ceil(lb(n)/2), costing b bits on top of the family tag (about sqrt(n)
// levels). Dyadic grids nest, so refining the grid never loses a point,
// which is what makes the half-lb-n resolution optimal to within one bit.
struct ParametricScore {
  CodeLengthReport report;
  std::uint64_t grid_num = 1;
  std::uint64_t grid_den = 2;
  std::uint64_t levels = 1;
  unsigned param_bits = 0;
};

ParametricScore parametric_score_bernoulli(const Bits& obs);

// Same scoring on the dyadic grid {i / den} (interior points only) with a
// declared parameter cost; used to probe other precisions.
double bernoulli_grid_total(const Bits& obs, std::uint64_t den,
                            unsigned param_bits);

// ceil(lb N) for N >= 1.
unsigned localization_bits(unsigned __int128 n);
// Accepts "8", "7000000000", or "3e22".
unsigned localization_bits_dec(std::string_view n);

}  // namespace toe
