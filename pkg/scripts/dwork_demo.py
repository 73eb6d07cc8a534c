"""Frobenius matrices of the two small Dwork cases across precisions and weights b.

Prints, per run, the matrix mod p^N, det(I - tM), the counted P(p^r t), the
certified precision and the column valuation profile.  The determinant should
not depend on b; the columns should clear e*b(p-1)/p.
"""
import argparse
import time
from fractions import Fraction

from dworkzeta.cli_reports import load_input
from dworkzeta.dwork_frobenius import (PadicCtx, compare_with_P, frobenius_matrix, newton_bound_check)
from dworkzeta.errors import PrecisionInsufficient
from dworkzeta.jacobian_cohomology import hodge_numbers
from dworkzeta.point_counting import count_ledger
from dworkzeta.zeta_assembly import assemble

DEFAULT_INPUTS = ["inputs/fermat_cubic_f7.json", "inputs/quadric_surface_f3.json", "inputs/two_quadrics_f5.json"]


def run(path, precisions, bs):
    spec = load_input(path)
    hodge = hodge_numbers(spec)
    led = count_ledger(spec, max(hodge.degree, 1))
    P = assemble({m: led.projective[m] for m in range(1, hodge.degree + 1)}, hodge.h, spec.q, spec.n, spec.r).P
    print(f"== {spec.label or path}: P(t) = {P}")
    for N in precisions:
        for b in bs or [None]:
            ctx = PadicCtx.make(spec, N=N, b=b)
            t0 = time.perf_counter()
            F = frobenius_matrix(spec, ctx)
            dt = time.perf_counter() - t0
            cmp = compare_with_P(F, P, spec.r)
            try:
                bound = newton_bound_check(F, hodge.h).kind
            except PrecisionInsufficient:
                bound = "PrecisionInsufficient"
            cols = ", ".join(f"{F.column_min_valuation(j)}>={F.column_bound(j)}" for j in range(F.size))
            print(f"  N={N} b={ctx.b} V_max={ctx.V_max} L={ctx.L}: M={F.entries} det={list(cmp.det_coeffs)} "
                  f"target={list(cmp.target_coeffs)} match={cmp.ok} slack={F.slack} bound={bound} "
                  f"cols[{cols}] {dt:.2f}s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("inputs", nargs="*", default=DEFAULT_INPUTS)
    ap.add_argument("--precisions", default="2,3,4")
    ap.add_argument("--b", action="append", type=Fraction, default=[],
                    help="weight b; repeat for several (default (p+1)/(2(p-1)))")
    args = ap.parse_args(argv)
    precisions = [int(x) for x in args.precisions.split(",")]
    for path in args.inputs:
        run(path, precisions, args.b)


if __name__ == "__main__":
    main()
