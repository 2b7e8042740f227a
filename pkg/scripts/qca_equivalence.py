"""Run random programs on the cellular automaton and on the processor and compare."""

import argparse

import numpy as np

from ctrlshift.linalg import RegisterShape
from ctrlshift.processor import ProcessorConfig, Program
from ctrlshift.qca import Instruction, cross_check_processor, encode_program, instruction_gate_set
from ctrlshift.sampling import random_state


def random_table(rng, d, size):
    table = [Instruction.idle(d)]
    for _ in range(size):
        one = rng.integers(0, 3, size=d)
        two = rng.integers(0, 2, size=d - 1)
        table.append(Instruction.checkerboard(one, two))
    return table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qubits", type=int, default=3)
    ap.add_argument("--length", type=int, default=4)
    ap.add_argument("--instructions", type=int, default=3)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--dtau", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    d = args.qubits
    worst = 0.0
    for trial in range(args.trials):
        table = random_table(rng, d, args.instructions)
        prog = Program(tuple(int(k) for k in rng.integers(0, len(table), size=args.length)))
        data = random_state(rng, RegisterShape.qubits(d))
        lat = encode_program(table, prog, data)
        cfg = ProcessorConfig(instruction_gate_set(table, d, args.dtau), args.length)
        dist = cross_check_processor(lat, cfg, prog, table, args.dtau)
        worst = max(worst, dist)
        print(f"trial {trial:3d} program {list(prog.steps)} distance {dist:.3e}")
    print(f"max distance {worst:.3e}")


if __name__ == "__main__":
    main()
