"""Show how many repetitions of a fixed step reach a target phase angle."""

import argparse
import math

from ctrlshift.processor import approximate_angle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=math.pi / 4)
    ap.add_argument("--dtau", type=float, default=1.0)
    ap.add_argument("--max-steps", type=int, default=10**6)
    args = ap.parse_args()

    print(f"theta={args.theta:.6f} dtau={args.dtau:.6f}")
    print(f"{'eps':>8} {'m':>9} {'error':>11} found")
    for eps in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
        r = approximate_angle(args.theta, args.dtau, eps, args.max_steps)
        print(f"{eps:8.0e} {r.m:9d} {r.error:11.3e} {r.found}")


if __name__ == "__main__":
    main()
