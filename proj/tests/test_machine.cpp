#include <cstdint>
#include <string>

#include "doctest.h"
#include "golden_vectors.h"
#include "toelab/enumerate.hpp"
#include "toelab/machine.hpp"

using namespace toe;
using toe_golden::kGolden;

namespace {

const RunBudget kAmple{100000, 256};

bool suffix_insensitive(StopCause c) {
  return c == StopCause::InOpcode || c == StopCause::StepBudget ||
         c == StopCause::OutputBudget;
}

}  // namespace

TEST_CASE("generator golden vectors") {
  for (const auto& g : kGolden) {
    CAPTURE(g.program);
    GeneratorRun r =
        run_generator(bits_from_string(g.program), {g.max_steps, g.max_out});
    CHECK(bits_to_string(r.output) == g.output);
    CHECK(r.status == g.status);
    CHECK(r.steps_used == g.steps);
    CHECK(r.fetched_bits == g.fetched);
  }
}

TEST_CASE("generator determinism") {
  for (const auto& g : kGolden) {
    RunBudget b{g.max_steps, g.max_out};
    GeneratorRun a = run_generator(bits_from_string(g.program), b);
    GeneratorRun c = run_generator(bits_from_string(g.program), b);
    CHECK(a.output == c.output);
    CHECK(a.status == c.status);
    CHECK(a.steps_used == c.steps_used);
    CHECK(a.fetched_bits == c.fetched_bits);
  }
}

TEST_CASE("fetched bits are a multiple of 3 bounded by program length") {
  for (std::uint64_t j = 1; j <= program_count_upto(9); ++j) {
    Program p = program_from_ordinal(j);
    GeneratorRun r = run_generator(p, {50, 16});
    CHECK(r.fetched_bits % 3 == 0);
    CHECK(r.fetched_bits <= p.size());
    CHECK(r.output.size() <= 16);
  }
}

TEST_CASE("unread suffix invariance") {
  // Runs that stopped without probing the program end behave identically
  // under any appended garbage. Exhaustive over |q| <= 9, |g| <= 3.
  const RunBudget b{40, 16};
  std::size_t checked = 0;
  for (std::uint64_t jq = 1; jq <= program_count_upto(9); ++jq) {
    Program q = program_from_ordinal(jq);
    GeneratorRun base = run_generator(q, b);
    if (!suffix_insensitive(base.cause)) continue;
    for (std::uint64_t jg = 1; jg <= program_count_upto(3); ++jg) {
      Program qg = concat(q, program_from_ordinal(jg));
      GeneratorRun ext = run_generator(qg, b);
      CHECK(ext.output == base.output);
      CHECK(ext.status == base.status);
      CHECK(ext.steps_used == base.steps_used);
      CHECK(ext.fetched_bits == base.fetched_bits);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("garbage extension only extends output") {
  // For clean end-of-program halts the extended program replays the original
  // run, so the original output stays a prefix. This is the monotone-machine
  // property behind the consistent-set lower bound.
  const RunBudget b{40, 16};
  for (std::uint64_t jq = 1; jq <= program_count_upto(9); ++jq) {
    Program q = program_from_ordinal(jq);
    GeneratorRun base = run_generator(q, b);
    if (base.cause != StopCause::ProgramEnd) continue;
    for (std::uint64_t jg = 1; jg <= program_count_upto(3); ++jg) {
      GeneratorRun ext = run_generator(concat(q, program_from_ordinal(jg)), b);
      CHECK(is_prefix_of(base.output, ext.output));
    }
  }
}

TEST_CASE("budget monotonicity") {
  for (std::uint64_t jq = 1; jq <= program_count_upto(7); ++jq) {
    Program q = program_from_ordinal(jq);
    Bits prev;
    for (std::uint64_t steps = 1; steps <= 24; ++steps) {
      GeneratorRun r = run_generator(q, {steps, 16});
      CHECK(is_prefix_of(prev, r.output));
      prev = r.output;
    }
  }
}

TEST_CASE("observer ignores input when it has no IN") {
  ObserverRun r =
      run_observer(bits_from_string("000"), bits_from_string("1111"), kAmple);
  CHECK(bits_to_string(r.observation) == "0");
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.consumed_input == 0);
}

TEST_CASE("IDENT_1 copies one bit") {
  Program s = ident_observer(1);
  for (int bit = 0; bit <= 1; ++bit) {
    Bits universe{static_cast<std::uint8_t>(bit)};
    ObserverRun r = run_observer(s, universe, kAmple);
    CHECK(r.observation == universe);
    CHECK(r.status == RunStatus::Halted);
    CHECK(r.consumed_input == 1);
  }
}

TEST_CASE("IDENT_n copies n bits") {
  for (std::size_t n : {2, 3, 5}) {
    Program s = ident_observer(n);
    for (std::uint64_t ju = 1; ju <= program_count_upto(n); ++ju) {
      Bits u = program_from_ordinal(ju);
      if (u.size() != n) continue;
      ObserverRun r = run_observer(s, u, kAmple);
      CHECK(r.observation == u);
      CHECK(r.status == RunStatus::Halted);
    }
  }
}

TEST_CASE("observer blocks when the universe is exhausted") {
  ObserverRun r = run_observer(ident_observer(2), bits_from_string("1"), kAmple);
  CHECK(bits_to_string(r.observation) == "1");
  CHECK(r.status == RunStatus::Blocked);
}

TEST_CASE("interleaved examples") {
  SUBCASE("generator feeds the copy observer") {
    auto [g, o] = run_interleaved(bits_from_string("001"), ident_observer(1),
                                  kAmple);
    CHECK(bits_to_string(o.observation) == "1");
    CHECK(o.status == RunStatus::Halted);
    CHECK(bits_to_string(g.output) == "1");
  }
  SUBCASE("observer independent of the universe") {
    auto [g, o] = run_interleaved(bits_from_string("000"),
                                  bits_from_string("001"), kAmple);
    CHECK(bits_to_string(o.observation) == "1");
    CHECK(o.status == RunStatus::Halted);
  }
  SUBCASE("empty generator blocks any reader") {
    auto [g, o] = run_interleaved(Program{}, ident_observer(1), kAmple);
    CHECK(o.observation.empty());
    CHECK(o.status == RunStatus::Blocked);
    CHECK(g.status == RunStatus::Halted);
  }
  SUBCASE("run_observer_live matches the observer half") {
    ObserverRun o =
        run_observer_live(ident_observer(1), bits_from_string("001"), kAmple);
    CHECK(bits_to_string(o.observation) == "1");
  }
}

TEST_CASE("interleaved equals observer on the completed output") {
  // For halting generators, interleaving is just lazy evaluation of the
  // completed universe prefix.
  std::vector<Program> observers = {ident_observer(1), ident_observer(2),
                                    bits_from_string("000111001"),
                                    bits_from_string("111101001100011100010110"),
                                    bits_from_string("001111000")};
  for (std::uint64_t jq = 1; jq <= program_count_upto(6); ++jq) {
    Program q = program_from_ordinal(jq);
    GeneratorRun gr = run_generator(q, kAmple);
    if (gr.status != RunStatus::Halted) continue;
    for (const Program& s : observers) {
      ObserverRun direct = run_observer(s, gr.output, kAmple);
      ObserverRun inter = run_interleaved(q, s, kAmple).second;
      CHECK(direct.observation == inter.observation);
      CHECK(direct.status == inter.status);
    }
  }
}
