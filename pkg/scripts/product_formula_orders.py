"""Print product-formula errors against step size and the fitted orders."""

import argparse

import numpy as np

from ctrlshift.gates import pauli
from ctrlshift.sampling import random_hermitian
from ctrlshift.theorems import empirical_order, product_formula_error


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=0, metavar="DIM",
                    help="use two random Hermitian matrices of this dimension instead of sigma_x, sigma_z")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--taus", type=float, nargs="+", default=[0.2, 0.1, 0.05, 0.025])
    args = ap.parse_args()

    if args.random:
        rng = np.random.default_rng(args.seed)
        h1, h2 = random_hermitian(rng, (args.random,)), random_hermitian(rng, (args.random,))
    else:
        h1, h2 = pauli(1), pauli(3)

    errs = [product_formula_error(h1, h2, t) for t in args.taus]
    print(f"{'tau':>8} {'sum err':>12} {'comm err':>12}")
    for t, (e29, e30) in zip(args.taus, errs):
        print(f"{t:8.4f} {e29:12.4e} {e30:12.4e}")
    print(f"order (sum)        {empirical_order(args.taus, [e[0] for e in errs]):.3f}")
    print(f"order (commutator) {empirical_order(args.taus, [e[1] for e in errs]):.3f}")


if __name__ == "__main__":
    main()
