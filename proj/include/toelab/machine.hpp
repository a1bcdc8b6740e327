#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "toelab/bits.hpp"

namespace toe {

// Reference machine M1. Programs are bit strings decoded as 3-bit opcodes;
// trailing 1-2 bits that cannot form an opcode are ignored.
//
//   000 OUT0   append 0 to the output
//   001 OUT1   append 1 to the output
//   010 LEFT   move the work head one cell left
//   011 RIGHT  move the work head one cell right
//   100 FLIP   toggle the current work cell
//   101 JZ     if cell==0, scan forward past the matching JNZ; no match: halt
//   110 JNZ    if cell==1, scan backward past the matching JZ; no match: halt
//   111 IN     observer: read next universe bit into the cell; generator: halt
//
// The work tape is unbounded in both directions and initialized to 0.
// Jump matching is resolved lazily by scanning at jump time; each scanned
// opcode costs one budget step, as does each executed opcode.

inline constexpr std::string_view kMachineVersion = "M1-v1";

enum class Op : std::uint8_t {
  Out0 = 0,
  Out1 = 1,
  Left = 2,
  Right = 3,
  Flip = 4,
  Jz = 5,
  Jnz = 6,
  In = 7,
};

struct RunBudget {
  std::uint64_t max_steps = 0;
  std::uint64_t max_output_bits = 0;
  bool valid() const { return max_steps > 0 && max_output_bits > 0; }
};

enum class RunStatus : std::uint8_t { Halted, OutOfBudget, Blocked };

// Why a run stopped, at finer grain than RunStatus. Causes ProgramEnd and
// UnmatchedJump depend on where the program ends; InOpcode and the budget
// causes do not, which is what the unread-suffix property keys on.
enum class StopCause : std::uint8_t {
  ProgramEnd,      // program counter passed the last complete opcode
  InOpcode,        // IN executed in generator mode
  UnmatchedJump,   // a jump scan found no matching partner
  StepBudget,      // max_steps hit
  OutputBudget,    // an OUT was attempted with the output already full
  InputExhausted,  // observer IN that can never be served
};

struct GeneratorRun {
  Program program;
  Bits output;
  RunStatus status = RunStatus::Halted;
  std::uint64_t steps_used = 0;
  std::uint64_t fetched_bits = 0;
  StopCause cause = StopCause::ProgramEnd;
};

struct ObserverRun {
  Program observer;
  Bits observation;
  std::uint64_t consumed_input = 0;
  RunStatus status = RunStatus::Halted;
  std::uint64_t steps_used = 0;
  std::uint64_t fetched_bits = 0;
  StopCause cause = StopCause::ProgramEnd;
};

GeneratorRun run_generator(const Program& program, const RunBudget& budget);

// Observer against a fixed, fully known universe prefix. An IN past the end
// of `universe` blocks.
ObserverRun run_observer(const Program& observer, const Bits& universe,
                         const RunBudget& budget);

// Cooperative co-execution of generator q and observer s under one combined
// step budget: s runs until it needs an unavailable universe bit, then q runs
// until it supplies it or finishes.
std::pair<GeneratorRun, ObserverRun> run_interleaved(const Program& q,
                                                     const Program& s,
                                                     const RunBudget& budget);

// Observer fed by a live generator; the observer half of run_interleaved.
ObserverRun run_observer_live(const Program& observer, const Program& generator,
                              const RunBudget& budget);

// Canonical observer that copies its first n input bits to the output.
// IDENT_n is the IDENT_1 block repeated n times (14 opcodes per block).
Program ident_observer(std::size_t n);

}  // namespace toe
