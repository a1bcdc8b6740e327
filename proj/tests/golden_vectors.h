#pragma once

#include <cstdint>

#include "toelab/machine.hpp"

namespace toe_golden {

struct GoldenCase {
  const char* program;
  std::uint64_t max_steps;
  std::uint64_t max_out;
  const char* output;
  toe::RunStatus status;
  std::uint64_t steps;
  std::uint64_t fetched;
};

// Pinned against tests/tools/m1_oracle.py (independent interpreter written
// from the opcode table in docs/machine.md).
inline const GoldenCase kGolden[] = {
    {"001", 10, 64, "1", toe::RunStatus::Halted, 1, 3},
    {"", 10, 64, "", toe::RunStatus::Halted, 0, 0},
    {"101001", 100, 64, "", toe::RunStatus::Halted, 2, 6},
    {"001001", 1, 64, "1", toe::RunStatus::OutOfBudget, 1, 3},
    {"001001", 100, 64, "11", toe::RunStatus::Halted, 2, 6},
    {"000", 100, 64, "0", toe::RunStatus::Halted, 1, 3},
    {"000001", 100, 64, "01", toe::RunStatus::Halted, 2, 6},
    {"111", 100, 64, "", toe::RunStatus::Halted, 0, 3},
    {"111001", 100, 64, "", toe::RunStatus::Halted, 0, 3},
    {"010", 100, 64, "", toe::RunStatus::Halted, 1, 3},
    {"011", 100, 64, "", toe::RunStatus::Halted, 1, 3},
    {"100", 100, 64, "", toe::RunStatus::Halted, 1, 3},
    {"101", 100, 64, "", toe::RunStatus::Halted, 1, 3},
    {"110", 100, 64, "", toe::RunStatus::Halted, 1, 3},
    {"0011", 100, 64, "1", toe::RunStatus::Halted, 1, 3},
    {"00100", 100, 64, "1", toe::RunStatus::Halted, 1, 3},
    {"110001", 100, 64, "1", toe::RunStatus::Halted, 2, 6},
    {"100110", 100, 64, "", toe::RunStatus::Halted, 3, 6},
    {"100101110", 100, 64, "", toe::RunStatus::OutOfBudget, 100, 9},
    {"100101110001", 100, 64, "", toe::RunStatus::OutOfBudget, 100, 9},
    {"101001110", 100, 64, "", toe::RunStatus::Halted, 3, 9},
    {"101101110110", 100, 64, "", toe::RunStatus::Halted, 4, 12},
    {"101000110", 100, 64, "", toe::RunStatus::Halted, 3, 9},
    {"100101000110", 100, 64, "0000000000000000000000000",
     toe::RunStatus::OutOfBudget, 100, 12},
    {"100101000110001", 100, 64, "0000000000000000000000000",
     toe::RunStatus::OutOfBudget, 100, 12},
    {"100101001100110", 20, 64, "1", toe::RunStatus::Halted, 5, 15},
    {"100101001100110", 7, 64, "1", toe::RunStatus::Halted, 5, 15},
    {"001001001001", 100, 2, "11", toe::RunStatus::OutOfBudget, 2, 9},
    {"001001001001", 100, 4, "1111", toe::RunStatus::Halted, 4, 12},
    {"000001000001", 100, 64, "0101", toe::RunStatus::Halted, 4, 12},
    {"010001", 100, 64, "1", toe::RunStatus::Halted, 2, 6},
    {"011001", 100, 64, "1", toe::RunStatus::Halted, 2, 6},
    {"100001", 100, 64, "1", toe::RunStatus::Halted, 2, 6},
    {"100100001", 100, 64, "1", toe::RunStatus::Halted, 3, 9},
    {"010100101001110", 100, 64, "1111111111111111111111111",
     toe::RunStatus::OutOfBudget, 100, 15},
    {"101110", 100, 64, "", toe::RunStatus::Halted, 2, 6},
    {"110110", 100, 64, "", toe::RunStatus::Halted, 2, 6},
    {"100110110", 100, 64, "", toe::RunStatus::Halted, 3, 6},
    {"101101110", 100, 64, "", toe::RunStatus::Halted, 3, 9},
    {"001101001110", 100, 64, "1", toe::RunStatus::Halted, 4, 12},
    {"100101110110", 50, 64, "", toe::RunStatus::OutOfBudget, 50, 9},
    {"011100110", 100, 64, "", toe::RunStatus::Halted, 5, 9},
    {"001010001", 100, 64, "11", toe::RunStatus::Halted, 3, 9},
    {"001011001", 100, 64, "11", toe::RunStatus::Halted, 3, 9},
    {"101001001", 100, 64, "", toe::RunStatus::Halted, 3, 9},
};

}  // namespace toe_golden
