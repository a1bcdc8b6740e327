#include <cmath>
#include <limits>

#include "doctest.h"
#include "toelab/enumerate.hpp"
#include "toelab/mdl.hpp"

using namespace toe;

namespace {

const char* kPiPrefix = "11001001000011111101101010100";  // 29 bits
const double kInf = std::numeric_limits<double>::infinity();
const RunBudget kAmple{100000, 256};

}  // namespace

TEST_CASE("elias gamma lengths") {
  CHECK(elias_gamma_length(1) == 1);
  CHECK(elias_gamma_length(2) == 3);
  CHECK(elias_gamma_length(8) == 7);
  CHECK_THROWS_AS(elias_gamma_length(0), std::invalid_argument);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    Bits code = elias_gamma(n);
    CHECK(code.size() == elias_gamma_length(n));
    std::size_t pos = 0;
    CHECK(elias_gamma_decode(code, pos) == n);
    CHECK(pos == code.size());
  }
}

TEST_CASE("pinned code lengths") {
  CHECK(model_code_length(ModelExpr{CoinModel{}}) == 3);
  CHECK(model_code_length(ModelExpr{BernoulliModel{3, 4}}) == 11);
  Program q = bits_from_string("001001");
  CHECK(model_code_length(ModelExpr{DetStreamModel{StreamSource::M1, q}}) ==
        3 + elias_gamma_length(q.size() + 1) + q.size());
  CHECK(model_code_length(ModelExpr{DetStreamModel{StreamSource::Pi, {}}}) == 3);
  CHECK(model_code_length(ObservationModel{IdentityObserver{}}) == 3);
}

TEST_CASE("serialization round trip") {
  std::vector<ModelExpr> models = {
      CoinModel{},
      BernoulliModel{1, 2},
      BernoulliModel{3, 4},
      BernoulliModel{7, 10},
      MarkovModel{1, {{0, 1}, {1, 1}}},
      MarkovModel{2, {{1, 2}, {1, 3}, {2, 3}, {0, 1}}},
      DetStreamModel{StreamSource::M1, bits_from_string("001")},
      DetStreamModel{StreamSource::M1, {}},
      DetStreamModel{StreamSource::Pi, {}},
      DetStreamModel{StreamSource::Champernowne, {}},
  };
  for (const ModelExpr& m : models) {
    Bits code = serialize_model(m);
    CHECK(code.size() == model_code_length(m));
    CHECK(decode_model(code) == m);
  }
  std::vector<ObservationModel> observers = {
      IdentityObserver{}, M1ObserverModel{bits_from_string("111101")},
      M1ObserverModel{{}}};
  for (const ObservationModel& m : observers) {
    Bits code = serialize_observer(m);
    CHECK(code.size() == model_code_length(m));
    CHECK(decode_observer(code) == m);
  }
  CHECK_THROWS_AS(decode_model(serialize_observer(IdentityObserver{})),
                  std::invalid_argument);
  CHECK_THROWS_AS(decode_observer(serialize_model(CoinModel{})),
                  std::invalid_argument);
}

TEST_CASE("nll values") {
  Bits pi29 = bits_from_string(kPiPrefix);
  CHECK(nll_bits(CoinModel{}, pi29) == 29.0);
  CHECK(nll_bits(DetStreamModel{StreamSource::Pi, {}}, pi29) == 0.0);
  Bits wrong = pi29;
  wrong[13] ^= 1;
  CHECK(nll_bits(DetStreamModel{StreamSource::Pi, {}}, wrong) == kInf);
  CHECK(nll_bits(BernoulliModel{3, 4}, bits_from_string("1")) ==
        doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-9));
  // Deterministic order-1 alternator: nll is zero exactly on its own stream.
  MarkovModel alternator{1, {{1, 1}, {0, 1}}};
  CHECK(nll_bits(alternator, bits_from_string("1010")) == 0.0);
  CHECK(nll_bits(alternator, bits_from_string("1011")) == kInf);
  CHECK(nll_bits(MarkovModel{1, {{1, 2}, {1, 2}}}, bits_from_string("0110")) ==
        doctest::Approx(4.0));
}

TEST_CASE("champernowne stream") {
  CHECK(bits_to_string(champernowne_bits(13)) == "1101110010111");
  // Contains every short substring by construction.
  Bits big = champernowne_bits(4096);
  std::string s = bits_to_string(big);
  for (std::uint64_t j = 1; j <= program_count_upto(5); ++j) {
    std::string needle = bits_to_string(program_from_ordinal(j));
    if (needle.empty()) continue;
    CHECK(s.find(needle) != std::string::npos);
  }
}

TEST_CASE("m1 deterministic stream degeneracy") {
  // nll is 0 iff the observation is a prefix of the program's own output.
  DetStreamModel m{StreamSource::M1, bits_from_string("001001")};
  CHECK(nll_bits(m, bits_from_string("11"), kAmple) == 0.0);
  CHECK(nll_bits(m, bits_from_string("10"), kAmple) == kInf);
  CHECK(nll_bits(m, bits_from_string("111"), kAmple) == kInf);
}

TEST_CASE("pi versus coin crossover") {
  ModelExpr coin = CoinModel{};
  ModelExpr pi = DetStreamModel{StreamSource::Pi, {}};
  std::int64_t t_star = static_cast<std::int64_t>(model_code_length(pi)) -
                        static_cast<std::int64_t>(model_code_length(coin));
  CHECK(t_star == 0);  // both are bare tags in this serialization
  // t* - 1 is below the empty observation, so the check starts at t*.
  for (std::int64_t t = t_star; t <= t_star + 1; ++t) {
    Bits obs = pi_bits(static_cast<std::size_t>(t));
    CodeLengthReport rc = prob_score(coin, IdentityObserver{}, obs);
    CodeLengthReport rp = prob_score(pi, IdentityObserver{}, obs);
    double identity_bits = model_code_length(ObservationModel{IdentityObserver{}});
    CHECK(rc.total == model_code_length(coin) + identity_bits + t);
    CHECK(rp.total == model_code_length(pi) + identity_bits);
    CHECK((rp.total < rc.total) == (t > t_star));
  }
  // At the tie the earlier candidate (coin) is selected.
  std::vector<std::pair<ModelExpr, ObservationModel>> candidates = {
      {coin, IdentityObserver{}}, {pi, IdentityObserver{}}};
  CHECK(*select_prob_model(candidates, pi_bits(0)) == 0);
  CHECK(*select_prob_model(candidates, pi_bits(1)) == 1);
  CHECK(*select_prob_model(candidates, bits_from_string(kPiPrefix)) == 1);
}

TEST_CASE("prob_score with an M1 observer") {
  DetStreamModel q{StreamSource::M1, bits_from_string("001001001001")};
  M1ObserverModel s{ident_observer(2)};
  CodeLengthReport r = prob_score(q, s, bits_from_string("11"), kAmple);
  CHECK(r.noise_bits == 0.0);
  CHECK(r.total == model_code_length(ModelExpr{q}) +
                       model_code_length(ObservationModel{s}));
  CHECK(prob_score(q, s, bits_from_string("10"), kAmple).noise_bits == kInf);
  CHECK_THROWS_AS(prob_score(CoinModel{}, s, bits_from_string("1"), kAmple),
                  std::invalid_argument);
}

TEST_CASE("ctoe score and selection") {
  Program ident1 = ident_observer(1);
  Bits one = bits_from_string("1");
  auto good = ctoe_score(bits_from_string("001"), ident1, one, kAmple);
  REQUIRE(good);
  CHECK(*good == 3 + ident1.size());
  CHECK(ident1.size() == 42);
  CHECK_FALSE(ctoe_score(bits_from_string("000"), ident1, one, kAmple));

  std::vector<std::pair<Program, Program>> candidates = {
      {bits_from_string("001"), ident1},
      {bits_from_string("001001"), ident1}};
  auto best = select_ctoe(candidates, one, kAmple);
  REQUIRE(best);
  CHECK(best->index == 0);
  CHECK(best->score == 3 + ident1.size());

  std::vector<std::pair<Program, Program>> hopeless = {
      {bits_from_string("000"), ident1}};
  CHECK_FALSE(select_ctoe(hopeless, one, kAmple));
  auto single = select_ctoe({{bits_from_string("001001"), ident1}}, one, kAmple);
  REQUIRE(single);
  CHECK(single->index == 0);
}

TEST_CASE("ctoe tie break is length-lex on the concatenation") {
  // Both emit "1"; equal totals, so the lexicographically smaller q s wins.
  std::vector<std::pair<Program, Program>> candidates = {
      {bits_from_string("011001"), ident_observer(1)},
      {bits_from_string("001001"), ident_observer(1)}};
  auto best = select_ctoe(candidates, bits_from_string("1"), kAmple);
  REQUIRE(best);
  CHECK(best->index == 1);
}

TEST_CASE("partial score error table") {
  Program ident8 = ident_observer(8);
  Program q = bits_from_string("000000000000000000000000");  // emits 8 zeros
  Bits o_true = bits_from_string("01001000");                // errors at 2, 5
  PartialScore ps = partial_score(q, ident8, o_true, kAmple);
  CHECK(ps.error_positions == std::vector<std::uint64_t>{2, 5});
  CHECK(ps.table.size() == 9);  // gamma(3) + gamma(2) + gamma(3)
  CHECK(ps.report.error_table_bits == 9.0);
  CHECK(ps.report.total == q.size() + 9.0 + ident8.size());
  CHECK(reconstruct_partial(q, ident8, ps.table, 8, kAmple) == o_true);

  // Perfect pair: the table is the single bit gamma(1).
  PartialScore perfect =
      partial_score(bits_from_string("001"), ident_observer(1),
                    bits_from_string("1"), kAmple);
  CHECK(perfect.error_positions.empty());
  CHECK(perfect.table.size() == 1);
}

TEST_CASE("partial score pays literal bits for undefined positions") {
  Program ident2 = ident_observer(2);
  Program q = bits_from_string("001001");  // emits "11" then halts
  Bits o_true = bits_from_string("1101");  // positions 3, 4 undefined
  PartialScore ps = partial_score(q, ident2, o_true, kAmple);
  CHECK(ps.error_positions == std::vector<std::uint64_t>{3, 4});
  CHECK(reconstruct_partial(q, ident2, ps.table, 4, kAmple) == o_true);

  // Exhaustive reconstruction across all 4-bit truths.
  for (std::uint64_t v = 0; v < 16; ++v) {
    Bits truth(4);
    for (int i = 0; i < 4; ++i) truth[i] = (v >> (3 - i)) & 1;
    PartialScore score = partial_score(q, ident2, truth, kAmple);
    CHECK(reconstruct_partial(q, ident2, score.table, 4, kAmple) == truth);
  }
}

TEST_CASE("identical observations rank identically under exact and partial scores") {
  Program ident1 = ident_observer(1);
  Bits o_true = bits_from_string("1");
  std::vector<std::pair<Program, Program>> pairs = {
      {bits_from_string("001"), ident1}, {bits_from_string("001001"), ident1}};
  PartialScore a = partial_score(pairs[0].first, pairs[0].second, o_true, kAmple);
  PartialScore b = partial_score(pairs[1].first, pairs[1].second, o_true, kAmple);
  CHECK(a.table == b.table);  // same observation, same error table
  // Equal error tables: the partial-score order reduces to the exact-score order.
  CHECK((a.report.total < b.report.total) ==
        (pairs[0].first.size() + pairs[0].second.size() <
         pairs[1].first.size() + pairs[1].second.size()));
}

TEST_CASE("parametric rule") {
  Bits obs(1024, 0);
  for (std::size_t i = 0; i < 700; ++i) obs[i] = 1;  // 700 ones of 1024
  ParametricScore ps = parametric_score_bernoulli(obs);
  CHECK(ps.levels == 31);
  CHECK(ps.param_bits == 5);
  CHECK(ps.report.model_bits == 8.0);
  CHECK(ps.report.total == ps.report.model_bits + ps.report.noise_bits);
  // Nearest dyadic point to 700/1024 = 0.6836 on the 1/32 grid is 22/32.
  CHECK(ps.grid_num == 22);
  CHECK(ps.grid_den == 32);

  ParametricScore tiny = parametric_score_bernoulli(bits_from_string("1"));
  CHECK(tiny.levels == 1);
  CHECK(tiny.param_bits == 0);
  CHECK(tiny.report.model_bits == 3.0);
  CHECK(tiny.grid_num == 1);
  CHECK(tiny.grid_den == 2);
}

TEST_CASE("localization bits") {
  CHECK(localization_bits(1) == 0);
  CHECK(localization_bits(2) == 1);
  CHECK(localization_bits(8) == 3);
  CHECK(localization_bits(9) == 4);
  CHECK(localization_bits(7000000000ull) == 33);
  CHECK_THROWS_AS(localization_bits(0), std::invalid_argument);

  CHECK(localization_bits_dec("8") == 3);
  CHECK(localization_bits_dec("7000000000") == 33);
  CHECK(localization_bits_dec("3e22") == 75);
  CHECK_THROWS_AS(localization_bits_dec("abc"), std::invalid_argument);
  CHECK_THROWS_AS(localization_bits_dec("3e999"), std::out_of_range);
}
