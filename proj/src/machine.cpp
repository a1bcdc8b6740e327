#include "toelab/machine.hpp"

#include <algorithm>
#include <limits>

namespace toe {
namespace {

struct Tape {
  std::vector<std::uint8_t> pos{0};  // cells 0, 1, 2, ...
  std::vector<std::uint8_t> neg;     // cells -1, -2, ...
  std::int64_t head = 0;

  std::uint8_t& cell() {
    if (head >= 0) {
      if (static_cast<std::size_t>(head) >= pos.size())
        pos.resize(static_cast<std::size_t>(head) + 1, 0);
      return pos[static_cast<std::size_t>(head)];
    }
    std::size_t i = static_cast<std::size_t>(-head - 1);
    if (i >= neg.size()) neg.resize(i + 1, 0);
    return neg[i];
  }
};

enum class CoreStop { Done, NeedInput, OutputReached };

struct Core {
  const Program* prog = nullptr;
  std::size_t n_ops = 0;
  std::size_t pc = 0;
  Tape tape;
  Bits output;
  std::size_t fetched_ops = 0;
  std::uint64_t steps = 0;
  bool observer_mode = false;

  const Bits* universe = nullptr;  // observer input; may grow under our feet
  std::size_t cursor = 0;
  bool live_input = false;

  bool done = false;
  RunStatus status = RunStatus::Halted;
  StopCause cause = StopCause::ProgramEnd;

  Core(const Program& p, bool observer) : prog(&p), observer_mode(observer) {
    n_ops = p.size() / 3;
  }

  Op fetch(std::size_t i) {
    fetched_ops = std::max(fetched_ops, i + 1);
    const Program& p = *prog;
    return static_cast<Op>((p[3 * i] << 2) | (p[3 * i + 1] << 1) | p[3 * i + 2]);
  }

  void finish(RunStatus st, StopCause c) {
    done = true;
    status = st;
    cause = c;
  }
};

// Runs the core until it stops, needs input (live observers only), or its
// output reaches stop_output_at bits. pool is the step counter checked
// against the budget; interleaved runs share one pool between two cores.
CoreStop advance(Core& c, std::uint64_t* pool, const RunBudget& b,
                 std::size_t stop_output_at) {
  for (;;) {
    if (c.done) return CoreStop::Done;
    if (c.pc >= c.n_ops) {
      c.finish(RunStatus::Halted, StopCause::ProgramEnd);
      return CoreStop::Done;
    }
    if (*pool >= b.max_steps) {
      c.finish(RunStatus::OutOfBudget, StopCause::StepBudget);
      return CoreStop::Done;
    }
    Op op = c.fetch(c.pc);
    switch (op) {
      case Op::Out0:
      case Op::Out1:
        if (c.output.size() >= b.max_output_bits) {
          c.finish(RunStatus::OutOfBudget, StopCause::OutputBudget);
          return CoreStop::Done;
        }
        ++*pool;
        ++c.steps;
        c.output.push_back(op == Op::Out1 ? 1 : 0);
        ++c.pc;
        if (c.output.size() >= stop_output_at) return CoreStop::OutputReached;
        break;
      case Op::Left:
        ++*pool;
        ++c.steps;
        --c.tape.head;
        ++c.pc;
        break;
      case Op::Right:
        ++*pool;
        ++c.steps;
        ++c.tape.head;
        ++c.pc;
        break;
      case Op::Flip:
        ++*pool;
        ++c.steps;
        c.tape.cell() ^= 1;
        ++c.pc;
        break;
      case Op::Jz: {
        ++*pool;
        ++c.steps;
        if (c.tape.cell() == 0) {
          int depth = 1;
          std::size_t j = c.pc + 1;
          bool matched = false;
          for (; j < c.n_ops; ++j) {
            if (*pool >= b.max_steps) {
              c.finish(RunStatus::OutOfBudget, StopCause::StepBudget);
              return CoreStop::Done;
            }
            Op o2 = c.fetch(j);
            ++*pool;
            ++c.steps;
            if (o2 == Op::Jz) {
              ++depth;
            } else if (o2 == Op::Jnz && --depth == 0) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            c.finish(RunStatus::Halted, StopCause::UnmatchedJump);
            return CoreStop::Done;
          }
          c.pc = j + 1;
        } else {
          ++c.pc;
        }
        break;
      }
      case Op::Jnz: {
        ++*pool;
        ++c.steps;
        if (c.tape.cell() == 1) {
          int depth = 1;
          std::size_t j = c.pc;
          bool matched = false;
          while (j > 0) {
            --j;
            if (*pool >= b.max_steps) {
              c.finish(RunStatus::OutOfBudget, StopCause::StepBudget);
              return CoreStop::Done;
            }
            Op o2 = c.fetch(j);
            ++*pool;
            ++c.steps;
            if (o2 == Op::Jnz) {
              ++depth;
            } else if (o2 == Op::Jz && --depth == 0) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            c.finish(RunStatus::Halted, StopCause::UnmatchedJump);
            return CoreStop::Done;
          }
          c.pc = j + 1;
        } else {
          ++c.pc;
        }
        break;
      }
      case Op::In: {
        if (!c.observer_mode) {
          // Generator mode: IN halts, consuming no step.
          c.finish(RunStatus::Halted, StopCause::InOpcode);
          return CoreStop::Done;
        }
        if (c.universe == nullptr || c.cursor >= c.universe->size()) {
          if (c.live_input) return CoreStop::NeedInput;
          c.finish(RunStatus::Blocked, StopCause::InputExhausted);
          return CoreStop::Done;
        }
        ++*pool;
        ++c.steps;
        c.tape.cell() = (*c.universe)[c.cursor++];
        ++c.pc;
        break;
      }
    }
  }
}

GeneratorRun make_generator_record(const Program& program, const Core& c) {
  GeneratorRun r;
  r.program = program;
  r.output = c.output;
  r.status = c.status;
  r.steps_used = c.steps;
  r.fetched_bits = 3 * c.fetched_ops;
  r.cause = c.cause;
  return r;
}

ObserverRun make_observer_record(const Program& observer, const Core& c) {
  ObserverRun r;
  r.observer = observer;
  r.observation = c.output;
  r.consumed_input = c.cursor;
  r.status = c.status;
  r.steps_used = c.steps;
  r.fetched_bits = 3 * c.fetched_ops;
  r.cause = c.cause;
  return r;
}

constexpr std::size_t kNoOutputStop = std::numeric_limits<std::size_t>::max();

}  // namespace

GeneratorRun run_generator(const Program& program, const RunBudget& budget) {
  Core c(program, /*observer=*/false);
  std::uint64_t pool = 0;
  advance(c, &pool, budget, kNoOutputStop);
  return make_generator_record(program, c);
}

ObserverRun run_observer(const Program& observer, const Bits& universe,
                         const RunBudget& budget) {
  Core c(observer, /*observer=*/true);
  c.universe = &universe;
  std::uint64_t pool = 0;
  advance(c, &pool, budget, kNoOutputStop);
  return make_observer_record(observer, c);
}

std::pair<GeneratorRun, ObserverRun> run_interleaved(const Program& q,
                                                     const Program& s,
                                                     const RunBudget& budget) {
  Core gen(q, /*observer=*/false);
  Core obs(s, /*observer=*/true);
  obs.universe = &gen.output;
  obs.live_input = true;
  std::uint64_t pool = 0;
  for (;;) {
    CoreStop r = advance(obs, &pool, budget, kNoOutputStop);
    if (r == CoreStop::Done) break;
    // Observer wants bit obs.cursor; run the generator until it exists.
    CoreStop g = advance(gen, &pool, budget, obs.cursor + 1);
    if (g == CoreStop::OutputReached) continue;
    // Generator finished without supplying the bit.
    obs.finish(RunStatus::Blocked, StopCause::InputExhausted);
    break;
  }
  if (!gen.done) {
    // The observation completed while the generator was still runnable; the
    // generator record covers the partial run it was granted.
    gen.finish(RunStatus::OutOfBudget, StopCause::StepBudget);
  }
  return {make_generator_record(q, gen), make_observer_record(s, obs)};
}

ObserverRun run_observer_live(const Program& observer, const Program& generator,
                              const RunBudget& budget) {
  return run_interleaved(generator, observer, budget).second;
}

Program ident_observer(std::size_t n) {
  // IN JZ OUT1 FLIP RIGHT FLIP LEFT JNZ RIGHT FLIP JZ OUT0 FLIP JNZ
  static const char* kBlock = "111101001100011100010110011100101000100110";
  Bits block = bits_from_string(kBlock);
  Bits out;
  out.reserve(block.size() * n);
  for (std::size_t i = 0; i < n; ++i)
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

}  // namespace toe
