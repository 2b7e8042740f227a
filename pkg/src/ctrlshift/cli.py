"""ctrlshift command line: run, verify, qca, approx.

Exit codes: 0 success, 1 check or contract failure, 2 input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import processor, qca, verify
from .errors import ContractError, InputError
from .serialize import dumps, encode_vector, parse_program, parse_qca, read_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text)
    else:
        try:
            Path(out).write_text(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror}") from None


def cmd_run(args) -> int:
    pf = parse_program(read_json(args.file))
    final = processor.run_joint(pf.program, pf.config, pf.initial)
    restored = final.program_control == tuple(reversed(pf.program.steps))
    doc = {"final_state": encode_vector(final.data.amps), "program_restored": restored}
    _emit(dumps(doc), args.out)
    return EXIT_OK if restored else EXIT_FAIL


def cmd_verify(args) -> int:
    records = verify.run_suite(args.suite, seed=args.seed, tol=args.tol)
    for rec in records:
        print(dumps(rec))
    return EXIT_OK if all(r["pass"] for r in records) else EXIT_FAIL


def cmd_qca(args) -> int:
    cfg = parse_qca(read_json(args.config))
    out = qca.evolve(cfg.lattice, cfg.sequence, cfg.repetitions, cfg.dtau)
    restored = out.line_contents() == cfg.lattice.line_contents()
    doc = {
        "final_state": encode_vector(out.data.amps),
        "lines": [list(s) for s in out.line_contents()],
        "lines_restored": restored,
    }
    print(dumps(doc))
    return EXIT_OK


def cmd_approx(args) -> int:
    res = processor.approximate_angle(args.theta, args.dtau, args.eps, args.max_steps)
    print(dumps({"m": res.m, "error": res.error, "found": res.found}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ctrlshift", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="execute a program file on the processor")
    p.add_argument("file")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run the numerical check suites")
    p.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--tol", type=_positive, default=None, help="override upper-bound tolerances")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qca", help="evolve a QCA configuration")
    p.add_argument("config")
    p.set_defaults(func=cmd_qca)

    p = sub.add_parser("approx", help="find m with m*dtau close to theta mod 2 pi")
    p.add_argument("--theta", type=_finite, required=True)
    p.add_argument("--dtau", type=_positive, default=processor.DEFAULT_DTAU)
    p.add_argument("--eps", type=_positive, default=1e-3)
    p.add_argument("--max-steps", type=_positive_int, default=processor.DEFAULT_MAX_STEPS)
    p.set_defaults(func=cmd_approx)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ctrlshift: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContractError, AssertionError) as exc:
        print(f"ctrlshift: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
