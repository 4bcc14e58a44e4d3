#!/usr/bin/env python3
"""Writes the symmetric three-terminal bound tables used by the acceptance tests.

Values come straight from the closed-form expressions (upper bound and the m=2 achievable
rate) evaluated with Python fractions, without touching the C++ library.
"""

import argparse
from fractions import Fraction
from pathlib import Path

HEADER = ("sweep_var,sweep_value,upper_coeff,lower_coeff,ell,q,normalization,upper_per_dof,"
          "lower_per_dof,normalization_mismatch,lower_method")


def pos(x):
    return max(x, 0)


def upper(ell, n_a, n, n_e):
    vals = []
    for n_i in n:
        reach = min(n_a, n_i + n_e)
        vals.append(pos(reach - n_e) * pos(ell - reach))
    return Fraction(min(vals))


def lower_symmetric(ell, n_a, n_b, n_e):
    u_b = pos(n_b - pos(2 * n_b - n_a) - pos(n_b + n_e - n_a))
    u_bc = min(n_a - n_e, pos(2 * n_b - n_a))
    per_dof = min(Fraction(u_b + u_bc), Fraction(n_a + u_bc - n_e, 2))
    return per_dof * pos(ell - n_a)


def table(ell, q, n_a, n_b, ne_lo, ne_hi):
    lines = [HEADER]
    for n_e in range(ne_lo, ne_hi + 1):
        up = upper(ell, n_a, [n_b, n_b], n_e)
        lo = lower_symmetric(ell, n_a, n_b, n_e)
        dof = ell - n_a
        mismatch = int(any(min(n_a, n_i + n_e) != n_a for n_i in (n_b, n_b)))
        lines.append(",".join(str(v) for v in [
            "ne", n_e, up, lo, ell, q, "absolute", up / dof, lo / dof, mismatch, "three_terminal"]))
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parent.parent / "tests" / "golden"))
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for n_b in (15, 45):
        (out / f"bounds_na60_nb{n_b}.csv").write_text(table(70, 2, 60, n_b, 0, 60))


if __name__ == "__main__":
    main()
