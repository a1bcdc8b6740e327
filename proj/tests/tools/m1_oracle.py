#!/usr/bin/env python3
"""Stand-alone reference interpreter for the M1 machine.

Written directly from the opcode table in docs/machine.md, independently of
the C++ implementation. Used to generate and cross-check the golden vectors
in tests/test_machine.cpp.

Usage:
  m1_oracle.py run BITS MAX_STEPS MAX_OUT      one generator run
  m1_oracle.py golden                          emit the golden vector table
"""

import sys

OUT0, OUT1, LEFT, RIGHT, FLIP, JZ, JNZ, IN = range(8)


def run_generator(bits, max_steps, max_out):
    n_ops = len(bits) // 3
    ops = [int(bits[3 * i : 3 * i + 3], 2) for i in range(n_ops)]
    tape = {}
    head = 0
    pc = 0
    out = []
    steps = 0
    fetched = 0  # highest opcode index fetched, +1

    def fetch(i):
        nonlocal fetched
        fetched = max(fetched, i + 1)
        return ops[i]

    while True:
        if pc >= n_ops:
            return "".join(out), "Halted", steps, 3 * fetched
        if steps >= max_steps:
            return "".join(out), "OutOfBudget", steps, 3 * fetched
        op = fetch(pc)
        if op in (OUT0, OUT1):
            if len(out) >= max_out:
                return "".join(out), "OutOfBudget", steps, 3 * fetched
            steps += 1
            out.append("1" if op == OUT1 else "0")
            pc += 1
        elif op == LEFT:
            steps += 1
            head -= 1
            pc += 1
        elif op == RIGHT:
            steps += 1
            head += 1
            pc += 1
        elif op == FLIP:
            steps += 1
            tape[head] = tape.get(head, 0) ^ 1
            pc += 1
        elif op == JZ:
            steps += 1
            if tape.get(head, 0) == 0:
                depth = 1
                j = pc + 1
                matched = False
                while j < n_ops:
                    if steps >= max_steps:
                        return "".join(out), "OutOfBudget", steps, 3 * fetched
                    o2 = fetch(j)
                    steps += 1
                    if o2 == JZ:
                        depth += 1
                    elif o2 == JNZ:
                        depth -= 1
                        if depth == 0:
                            matched = True
                            break
                    j += 1
                if not matched:
                    return "".join(out), "Halted", steps, 3 * fetched
                pc = j + 1
            else:
                pc += 1
        elif op == JNZ:
            steps += 1
            if tape.get(head, 0) == 1:
                depth = 1
                j = pc
                matched = False
                while j > 0:
                    j -= 1
                    if steps >= max_steps:
                        return "".join(out), "OutOfBudget", steps, 3 * fetched
                    o2 = fetch(j)
                    steps += 1
                    if o2 == JNZ:
                        depth += 1
                    elif o2 == JZ:
                        depth -= 1
                        if depth == 0:
                            matched = True
                            break
                if not matched:
                    return "".join(out), "Halted", steps, 3 * fetched
                pc = j + 1
            else:
                pc += 1
        elif op == IN:
            return "".join(out), "Halted", steps, 3 * fetched


GOLDEN_CASES = [
    # (program, max_steps, max_output_bits)
    ("001", 10, 64),
    ("", 10, 64),
    ("101001", 100, 64),
    ("001001", 1, 64),
    ("001001", 100, 64),
    ("000", 100, 64),
    ("000001", 100, 64),
    ("111", 100, 64),
    ("111001", 100, 64),
    ("010", 100, 64),
    ("011", 100, 64),
    ("100", 100, 64),
    ("101", 100, 64),
    ("110", 100, 64),
    ("0011", 100, 64),
    ("00100", 100, 64),
    ("110001", 100, 64),
    ("100110", 100, 64),
    ("100101110", 100, 64),
    ("100101110001", 100, 64),
    ("101001110", 100, 64),
    ("101101110110", 100, 64),
    ("101000110", 100, 64),
    ("100101000110", 100, 64),
    ("100101000110001", 100, 64),
    ("100101001100110", 20, 64),
    ("100101001100110", 7, 64),
    ("001001001001", 100, 2),
    ("001001001001", 100, 4),
    ("000001000001", 100, 64),
    ("010001", 100, 64),
    ("011001", 100, 64),
    ("100001", 100, 64),
    ("100100001", 100, 64),
    ("010100101001110", 100, 64),
    ("101110", 100, 64),
    ("110110", 100, 64),
    ("100110110", 100, 64),
    ("101101110", 100, 64),
    ("001101001110", 100, 64),
    ("100101110110", 50, 64),
    ("011100110", 100, 64),
    ("001010001", 100, 64),
    ("001011001", 100, 64),
    ("101001001", 100, 64),
]


def main():
    if len(sys.argv) >= 2 and sys.argv[1] == "run":
        bits, ms, mo = sys.argv[2], int(sys.argv[3]), int(sys.argv[4])
        out, status, steps, fetched = run_generator(bits, ms, mo)
        print(f"{bits or '(empty)'} -> out={out or '(empty)'} {status} "
              f"steps={steps} fetched={fetched}")
        return
    for bits, ms, mo in GOLDEN_CASES:
        out, status, steps, fetched = run_generator(bits, ms, mo)
        print(f'{{"{bits}", {ms}, {mo}, "{out}", RunStatus::{status}, '
              f"{steps}, {fetched}}},")


if __name__ == "__main__":
    main()
