"""Input schema, key-value run reports, the seeded corpus and the ``dworkzeta`` command line.

Input (JSON):
    {"p": 5, "a": 1, "n": 2, "r": 1, "degrees": [3],
     "polys": [[[1, [3, 0, 0]], [1, [0, 3, 0]], [1, [0, 0, 3]]]], "label": "fermat"}

Every report is a plain-text tree with a fixed field order.  Timings live in
the last section only, so two runs on the same input and version differ
nowhere else.
"""
from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .dwork_frobenius import (PadicCtx, check_scope, compare_with_P, det_one_minus_t,
                              frobenius_matrix, newton_bound_check)
from .errors import (BoundViolation, BudgetExceeded, InputError, MismatchAtDegree,
                     NonIntegerCoefficient, NonIntegralRelation, NotSmoothSuspected,
                     PrecisionInsufficient, Refused)
from .exp_sums import CycInt, exp_sum, l_function_check
from .field_tower import make_field
from .jacobian_cohomology import (exceptional_class, expected_degree, full_basis, hodge_numbers,
                                  torsion_vector)
from .point_counting import count_affine, count_ledger, default_budget, predicted_cost, smoothness_audit
from .polyforms import VarietySpec, compositions, format_form, format_monomial, format_poly
from .zeta_assembly import assemble, counts_from_P

EXIT_OK, EXIT_INPUT, EXIT_SINGULAR, EXIT_VIOLATION, EXIT_BUDGET = 0, 1, 2, 3, 4


# -- input ----------------------------------------------------------------------

def spec_from_dict(data: dict) -> VarietySpec:
    try:
        p, n = int(data["p"]), int(data["n"])
        a = int(data.get("a", 1))
        polys_in = data["polys"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"missing or malformed field: {exc}") from None
    fld = make_field(p, a)
    r = int(data.get("r", len(polys_in)))
    if r != len(polys_in):
        raise InputError(f"r = {r} but {len(polys_in)} polynomials given")
    polys = []
    for j, poly in enumerate(polys_in):
        terms = []
        for t, term in enumerate(poly):
            if not (isinstance(term, (list, tuple)) and len(term) == 2 and isinstance(term[1], (list, tuple))):
                raise InputError(f"f_{j + 1} term {t}: expected [coefficient, exponent-vector], got {term!r}")
            c, exps = term
            if len(exps) != n + 1:
                raise InputError(f"f_{j + 1} term {t}: exponent vector {list(exps)} has length {len(exps)}, expected {n + 1}")
            terms.append((int(c), tuple(int(e) for e in exps)))
        polys.append(terms)
    degrees = data.get("degrees")
    if degrees is not None:
        degrees = [int(d) for d in degrees]
        if len(degrees) != r:
            raise InputError(f"{len(degrees)} degrees given for r = {r}")
        for j, (d, terms) in enumerate(zip(degrees, polys)):
            for t, (_, exps) in enumerate(terms):
                if sum(exps) != d:
                    raise InputError(f"f_{j + 1} term {t}: {list(exps)} has degree {sum(exps)}, expected {d}")
    return VarietySpec.from_terms(fld, n, polys, degrees, str(data.get("label", "")))


def load_input(path) -> VarietySpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    return spec_from_dict(data)


def spec_to_dict(spec: VarietySpec) -> dict:
    return {
        "p": spec.p, "a": spec.field.a, "n": spec.n, "r": spec.r,
        "degrees": list(spec.degrees),
        "polys": [[[c, list(e)] for e, c in poly] for poly in spec.polys],
        "label": spec.label,
    }


def canonical_json(spec: VarietySpec) -> str:
    return json.dumps(spec_to_dict(spec), sort_keys=True, separators=(",", ":"))


def input_hash(spec: VarietySpec) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(spec).encode()).hexdigest()[:16]


# -- reports --------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, float) and v == math.inf:
        return "inf"
    return str(v)


class Report:
    """Ordered sections of key-value pairs; values may be nested dicts."""

    def __init__(self, command: str, spec: VarietySpec | None = None):
        self.sections: dict[str, dict] = {}
        self.timings: dict[str, float] = {}
        head = self.section("run")
        head["tool"] = "dworkzeta"
        head["version"] = __version__
        head["command"] = command
        if spec is not None:
            head["input_hash"] = input_hash(spec)
            inp = self.section("input")
            inp["label"] = spec.label or "-"
            inp["field"] = f"F_{spec.q} (p={spec.p}, a={spec.field.a})"
            inp["n"] = spec.n
            inp["r"] = spec.r
            inp["degrees"] = list(spec.degrees)
            for j, poly in enumerate(spec.polys):
                inp[f"f{j + 1}"] = format_poly(spec.n, poly)
            inp["json"] = canonical_json(spec)

    def section(self, name: str) -> dict:
        return self.sections.setdefault(name, {})

    def timed(self, name: str):
        report = self

        class _T:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                report.timings[name] = time.perf_counter() - self.t0
                return False

        return _T()

    def render(self, timings: bool = True) -> str:
        lines = []

        def emit(d: dict, depth: int):
            for k, v in d.items():
                if isinstance(v, dict):
                    lines.append("  " * depth + f"{k}:")
                    emit(v, depth + 1)
                else:
                    lines.append("  " * depth + f"{k}: {_fmt(v)}")

        for name, body in self.sections.items():
            lines.append(f"[{name}]")
            emit(body, 1)
        if timings and self.timings:
            lines.append("[timings]")
            for k, v in self.timings.items():
                lines.append(f"  {k}: {v:.3f}s")
        return "\n".join(lines) + "\n"


def strip_timings(text: str) -> str:
    return text.split("[timings]")[0]


def _error(report: Report, exc: Exception, code: int) -> int:
    sec = report.section("error")
    sec["type"] = type(exc).__name__
    sec["message"] = str(exc)
    sec["exit_code"] = code
    return code


# -- analyze --------------------------------------------------------------------

@dataclass
class AnalyzeOptions:
    budget: int | None = None
    workers: int = 1
    partitions: int = 1
    kmax: int = 2
    extra_depth: int = 0  # count beyond deg P and check the counts against Z(t)
    expsums: bool = False
    expsum_order: int = 3
    naive_cap: int = 2 * 10 ** 5  # largest double loop run in naive exponential-sum mode
    lcheck_cost: int = 2 * 10 ** 7  # extra counting allowed for the L-identity
    dwork: bool = False
    precision: int = 3
    b: Fraction | None = None
    ah_depth: int | None = None
    vmax: int | None = None


@dataclass
class AnalyzeResult:
    report: Report
    code: int
    facts: dict = field(default_factory=dict)


def _basis_lines(spec: VarietySpec, hodge) -> list[str]:
    out = []
    for e, (a, b, _) in full_basis(spec, hodge):
        out.append(f"e={e}: {format_monomial(a, b)} vol")
    return out


def analyze(spec: VarietySpec, opts: AnalyzeOptions | None = None) -> AnalyzeResult:
    """smoothness -> h_e -> counts -> P(t) -> polygons -> verdict (+ optional sections)."""
    opts = opts or AnalyzeOptions()
    rep = Report("analyze", spec)
    facts: dict = {}
    budget = default_budget() if opts.budget is None else opts.budget

    def done(code):
        facts["exit_code"] = code
        return AnalyzeResult(rep, code, facts)

    sm = rep.section("smoothness")
    try:
        with rep.timed("smoothness"):
            verdict = smoothness_audit(spec, opts.kmax, budget)
    except BudgetExceeded as exc:
        return done(_error(rep, exc, EXIT_BUDGET))
    sm["verdict"] = verdict.describe()
    sm["depth"] = opts.kmax
    if not verdict.smooth:
        facts["outcome"] = "singular"
        return done(_error(rep, NotSmoothSuspected(verdict.describe()), EXIT_SINGULAR))

    hs = rep.section("hodge")
    try:
        with rep.timed("hodge"):
            hodge = hodge_numbers(spec)
    except NotSmoothSuspected as exc:
        facts["outcome"] = "singular"
        return done(_error(rep, exc, EXIT_SINGULAR))
    h = hodge.h
    D = hodge.degree
    hs["h"] = {f"h_{e}": h[e] for e in sorted(h)}
    hs["vector"] = hodge.vector()
    hs["degree"] = D
    hs["expected_degree"] = expected_degree(spec.n, spec.degrees)
    hs["exceptional"] = hodge.exceptional
    if hodge.exceptional:
        tc = exceptional_class(spec, require_nonzero=False)
        hs["exceptional_weight"] = hodge.exceptional_weight
        hs["cokernel_at_exceptional_weight"] = hodge.pieces[hodge.exceptional_weight].cokernel_dim
        hs["torsion_class"] = format_form(tc.tau)
        hs["torsion_nonzero_in_cokernel"] = not hodge.pieces[tc.weight].is_zero_class(
            torsion_vector(spec, tc))
    hs["basis"] = _basis_lines(spec, hodge)
    facts.update(h=dict(h), degree=D, expected_degree=hs["expected_degree"])

    depth = max(D, 1) + opts.extra_depth
    ct = rep.section("counts")
    try:
        with rep.timed("counting"):
            ledger = count_ledger(spec, depth, budget, opts.partitions, opts.workers)
            ledger.check_relation()
    except BudgetExceeded as exc:
        return done(_error(rep, exc, EXIT_BUDGET))
    except NonIntegralRelation as exc:
        facts["outcome"] = "divisibility_failure"
        return done(_error(rep, exc, EXIT_VIOLATION))
    for m in range(1, depth + 1):
        ct[f"m={m}"] = f"N'={ledger.affine[m]} N={ledger.projective[m]}"
    facts["affine"] = dict(ledger.affine)
    facts["projective"] = dict(ledger.projective)

    zs = rep.section("zeta")
    try:
        zr = assemble({m: ledger.projective[m] for m in range(1, D + 1)}, h, spec.q, spec.n, spec.r)
    except (NonIntegerCoefficient, BoundViolation) as exc:
        facts["outcome"] = "integrality_failure"
        return done(_error(rep, exc, EXIT_SINGULAR))
    zs["P"] = str(zr.P)
    zs["P_coeffs"] = list(zr.P.coeffs)
    zs["newton_vertices"] = [f"({x},{y})" for x, y in zr.newton.vertices]
    zs["newton_slopes"] = [str(s) for s in zr.newton.slopes()]
    zs["hodge_vertices"] = [f"({x},{y})" for x, y in zr.hodge.vertices]
    zs["hodge_slopes"] = [str(s) for s in zr.hodge.slopes()]
    zs["verdict"] = str(zr.verdict)
    predicted = counts_from_P(zr.P, spec.q, spec.n, spec.r, depth)
    consistent = all(predicted[m] == ledger.projective[m] for m in range(1, depth + 1))
    zs["counts_consistent"] = consistent
    facts.update(P=zr.P, verdict=str(zr.verdict), consistent=consistent, zeta=zr)

    code = EXIT_OK
    if not zr.verdict.ok or not consistent:
        facts["outcome"] = "violation"
        code = _error(rep, BoundViolation(f"verdict {zr.verdict}, counts consistent: {consistent}"),
                      EXIT_VIOLATION)
    else:
        facts["outcome"] = "ok"

    if opts.expsums:
        _expsum_section(rep, spec, zr.P, ledger, opts, budget, facts)
    if opts.dwork:
        dwork_section(rep, spec, opts, zr.P, facts)
    return done(code)


def _expsum_section(rep, spec, P, ledger, opts, budget, facts):
    es = rep.section("exp_sums")
    ok = True
    affine = dict(ledger.affine)
    with rep.timed("exp_sums"):
        for m in (1, 2):
            if m not in affine:
                try:
                    affine[m] = count_affine(spec, m, min(budget, opts.lcheck_cost), opts.partitions, opts.workers)
                except BudgetExceeded:
                    es[f"S_{m}"] = "skipped (budget)"
                    continue
            aff = affine[m]
            naive_size = spec.q ** (m * (spec.n + 1 + spec.r))
            mode = "naive" if naive_size <= min(budget, opts.naive_cap) else "fast"
            s = exp_sum(spec, m, mode=mode, budget=budget, partitions=opts.partitions, workers=opts.workers)
            expect = spec.q ** (m * spec.r) * aff
            match = s.is_rational() and s.as_int() == expect
            facts.setdefault("expsum_modes", []).append(mode)
            if match:
                facts.setdefault("expsum_matched", []).append(m)
            ok &= match
            es[f"S_{m}"] = f"{s} ({mode}; q^(mr) N' = {expect}; {'match' if match else 'MISMATCH'})"
        order = opts.expsum_order
        try:
            sums = {}
            for m in range(1, order + 1):
                if m not in affine:
                    affine[m] = count_affine(spec, m, min(budget, opts.lcheck_cost), opts.partitions, opts.workers)
                sums[m] = CycInt.from_int(spec.p, spec.q ** (m * spec.r) * affine[m])
            chk = l_function_check(spec, sums, P, order)
            es["L_identity"] = f"matches through t^{chk.order}"
            facts["lcheck"] = True
        except BudgetExceeded:
            es["L_identity"] = "skipped (budget)"
            facts["lcheck"] = None
        except MismatchAtDegree as exc:
            es["L_identity"] = f"MISMATCH at t^{exc.k}"
            facts["lcheck"] = False
            ok = False
    es["ok"] = ok
    facts["expsums_ok"] = ok


# -- dwork ----------------------------------------------------------------------

def dwork_section(rep: Report, spec: VarietySpec, opts: AnalyzeOptions, P=None, facts=None) -> int:
    facts = {} if facts is None else facts
    dw = rep.section("dwork")
    try:
        check_scope(spec)
    except Refused as exc:
        dw["status"] = f"Refused: {exc}"
        facts["dwork"] = "refused"
        return EXIT_INPUT
    ctx = PadicCtx.make(spec, N=opts.precision, b=opts.b, L=opts.ah_depth, V_max=opts.vmax)
    dw["N"] = ctx.N
    dw["b"] = str(ctx.b)
    dw["L"] = ctx.L
    dw["V_max"] = ctx.V_max
    with rep.timed("dwork"):
        Fm = frobenius_matrix(spec, ctx)
    dw["size"] = Fm.size
    dw["basis"] = [f"e={e}: z^{list(W)}" for e, W in Fm.basis]
    dw["matrix_mod_p^N"] = [list(row) for row in Fm.entries]
    cols = {}
    for j, (e, _) in enumerate(Fm.basis):
        cols[f"col{j}"] = (f"e={e} min_val={Fm.column_min_valuation(j)} "
                           f"bound={Fm.column_bound(j)} ok={_fmt(Fm.column_min_valuation(j) >= Fm.column_bound(j))}")
    dw["valuation_profile"] = cols
    dw["certified_precision"] = Fm.certified
    dw["slack"] = Fm.slack
    dw["reduction_sweeps"] = Fm.sweeps
    dw["det(I-tM)_mod_p^N"] = det_one_minus_t(Fm)
    if P is not None:
        cmp = compare_with_P(Fm, P, spec.r)
        dw["P(p^r t)_mod_p^cert"] = list(cmp.target_coeffs)
        dw["det_matches"] = cmp.ok
        facts["dwork_match"] = cmp.ok
    h = hodge_numbers(spec).h
    try:
        bc = newton_bound_check(Fm, h)
        dw["newton_bound"] = bc.kind if bc.ok else f"{bc.kind}({bc.abscissa})"
        facts["dwork_bound"] = bc.kind
    except PrecisionInsufficient as exc:
        dw["newton_bound"] = f"PrecisionInsufficient: {exc}"
        facts["dwork_bound"] = "PrecisionInsufficient"
    facts["dwork"] = "done"
    return EXIT_OK


# -- corpus ---------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusBounds:
    primes: tuple[int, ...] = (2, 3, 5, 7)
    n_max: int = 4
    r_max: int = 2
    d_max: int = 3
    case_cost: int = 2 * 10 ** 7  # evaluations allowed per case (audit + counts)
    kmax: int = 2

    def validate(self):
        if self.r_max < 1 or self.n_max < 1 or self.d_max < 1:
            raise InputError("bounds must be positive")
        if self.r_max > self.n_max:
            raise InputError(f"r_max = {self.r_max} > n_max = {self.n_max}: no complete intersection fits")
        for p in self.primes:
            make_field(p)


def shape_cost(p: int, n: int, degrees, kmax: int) -> int:
    D = expected_degree(n, degrees)
    depth = max(D, 1)
    q = p
    return sum(q ** (m * (n + 1)) for m in range(1, depth + 1)) + sum(q ** (k * (n + 1)) for k in range(1, kmax + 1))


def feasible_shapes(bounds: CorpusBounds) -> list[tuple[int, int, tuple[int, ...]]]:
    """(p, n, degrees) within bounds whose total enumeration cost fits case_cost."""
    out = []
    for p in bounds.primes:
        for n in range(1, bounds.n_max + 1):
            for r in range(1, min(bounds.r_max, n) + 1):
                for degs in itertools.combinations_with_replacement(range(1, bounds.d_max + 1), r):
                    if shape_cost(p, n, degs, bounds.kmax) <= bounds.case_cost:
                        out.append((p, n, tuple(degs)))
    return out


def random_input(rng: random.Random, p: int, n: int, degrees, density: float = 0.5) -> dict:
    polys = []
    for d in degrees:
        monos = list(compositions(d, n + 1))
        while True:
            terms = [[rng.randrange(1, p), list(e)] for e in monos if rng.random() < density]
            if terms:
                break
        polys.append(terms)
    return {"p": p, "a": 1, "n": n, "r": len(degrees), "degrees": list(degrees), "polys": polys}


def generate_corpus(seed: int, count: int, bounds: CorpusBounds | None = None,
                    max_attempts_per_case: int = 200):
    """``count`` smooth-suspected inputs plus the number of drawn-and-discarded ones.

    Shapes are drawn from feasible_shapes (favoring deg P > 0), polynomials with random
    supports; a candidate survives the depth-kmax audit and the vanishing of
    cohomology above weight n.  Deterministic in ``seed``.
    """
    bounds = bounds or CorpusBounds()
    bounds.validate()
    rng = random.Random(seed)
    shapes = feasible_shapes(bounds)
    # shapes with P(t) = 1 say little about the polygons; draw them less often
    weights = [1 if expected_degree(n, degs) == 0 else 4 for _, n, degs in shapes]
    if count and not shapes:
        raise InputError("no shape fits the bounds and the per-case cost")
    cases, discarded = [], 0
    attempts = 0
    while len(cases) < count:
        attempts += 1
        if attempts > max_attempts_per_case * max(count, 1):
            raise InputError(f"only {len(cases)} smooth cases after {attempts - 1} draws")
        p, n, degs = rng.choices(shapes, weights)[0]
        data = random_input(rng, p, n, degs)
        data["label"] = f"seed{seed}-case{len(cases)}"
        spec = spec_from_dict(data)
        try:
            if not smoothness_audit(spec, bounds.kmax, math.inf).smooth:
                discarded += 1
                continue
            hodge_numbers(spec)
        except NotSmoothSuspected:
            discarded += 1
            continue
        cases.append(spec)
    return cases, discarded


@dataclass
class CorpusSummary:
    seed: int
    cases: int
    discarded: int
    verdicts: dict
    violations: int
    divisibility_failures: int
    integrality_failures: int
    degree_mismatches: int
    expsum_failures: int
    singular_late: int
    budget: int

    @property
    def ok(self) -> bool:
        return not (self.violations or self.divisibility_failures or self.integrality_failures
                    or self.degree_mismatches or self.expsum_failures or self.budget)


def run_corpus(seed: int, count: int, bounds: CorpusBounds | None = None, opts: AnalyzeOptions | None = None,
               workers: int = 1):
    """Generate, analyze (concurrently up to ``workers``) and summarize."""
    bounds = bounds or CorpusBounds()
    opts = opts or AnalyzeOptions(kmax=bounds.kmax)
    specs, discarded = generate_corpus(seed, count, bounds)
    if workers > 1 and specs:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: analyze(s, opts), specs))
    else:
        results = [analyze(s, opts) for s in specs]
    verdicts: dict = {}
    tallies = dict(violations=0, divisibility_failures=0, integrality_failures=0, degree_mismatches=0,
                   expsum_failures=0, singular_late=0, budget=0)
    for res in results:
        f = res.facts
        outcome = f.get("outcome")
        if outcome == "ok":
            verdicts[f["verdict"]] = verdicts.get(f["verdict"], 0) + 1
        tallies["violations"] += outcome == "violation"
        tallies["divisibility_failures"] += outcome == "divisibility_failure"
        tallies["integrality_failures"] += outcome == "integrality_failure"
        tallies["singular_late"] += outcome == "singular"
        tallies["budget"] += res.code == EXIT_BUDGET
        if "P" in f and not (f["degree"] == f["P"].degree == f["expected_degree"]):
            tallies["degree_mismatches"] += 1
        if f.get("expsums_ok") is False:
            tallies["expsum_failures"] += 1
    summary = CorpusSummary(seed, len(specs), discarded, dict(sorted(verdicts.items())), **tallies)
    return summary, results


def corpus_report(summary: CorpusSummary, bounds: CorpusBounds) -> Report:
    rep = Report("corpus")
    s = rep.section("corpus")
    s["seed"] = summary.seed
    s["bounds"] = (f"p in {list(bounds.primes)}, n <= {bounds.n_max}, r <= {bounds.r_max}, "
                   f"d <= {bounds.d_max}, case_cost <= {bounds.case_cost}, kmax = {bounds.kmax}")
    s["cases"] = summary.cases
    s["discarded_non_smooth"] = summary.discarded
    s["verdicts"] = summary.verdicts or "-"
    for k in ("violations", "divisibility_failures", "integrality_failures", "degree_mismatches",
              "expsum_failures", "singular_late", "budget"):
        s[k] = getattr(summary, k)
    s["ok"] = summary.ok
    return rep


# -- command line ---------------------------------------------------------------

def _common(ap: argparse.ArgumentParser):
    ap.add_argument("--budget", type=float, default=None, help="max field evaluations (default 1e9 or $DWORKZETA_BUDGET)")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--partitions", type=int, default=1)
    ap.add_argument("--kmax", type=int, default=2, help="smoothness audit depth")


def _dwork_flags(ap: argparse.ArgumentParser):
    ap.add_argument("--precision", type=int, default=3, help="p-adic working digits N")
    ap.add_argument("--b-override", type=Fraction, default=None, help="weight b in (1/(p-1), p/(p-1))")
    ap.add_argument("--ah-depth", type=int, default=None, help="number of kappa_l correction terms")
    ap.add_argument("--vmax", type=int, default=None, help="y-degree truncation override")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dworkzeta", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"dworkzeta {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="full pipeline on one input")
    a.add_argument("input")
    _common(a)
    _dwork_flags(a)
    a.add_argument("--depth", type=int, default=0, help="extra counting depth beyond deg P")
    a.add_argument("--expsums", action="store_true")
    a.add_argument("--dwork", action="store_true")
    a.add_argument("--out", default=None)

    d = sub.add_parser("dwork", help="Frobenius matrix and determinant check (q = p, p not dividing the degrees)")
    d.add_argument("input")
    _common(d)
    _dwork_flags(d)
    d.add_argument("--out", default=None)

    c = sub.add_parser("corpus", help="seeded random corpus through analyze")
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--count", type=int, default=10)
    c.add_argument("--primes", default="2,3,5,7")
    c.add_argument("--nmax", type=int, default=4)
    c.add_argument("--rmax", type=int, default=2)
    c.add_argument("--dmax", type=int, default=3)
    c.add_argument("--case-cost", type=float, default=2e7)
    c.add_argument("--expsums", action="store_true")
    c.add_argument("--out-dir", default=None, help="write one report per case here")
    _common(c)

    k = sub.add_parser("count", help="N'_m and N_m for m = 1..depth")
    k.add_argument("input")
    k.add_argument("--depth", type=int, default=2)
    _common(k)

    h = sub.add_parser("hodge", help="h_e and the monomial basis")
    h.add_argument("input")
    return ap


def _budget(args) -> int | None:
    return None if args.budget is None else int(args.budget)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as exc:
        rep = Report(args.cmd)
        code = _error(rep, exc, EXIT_INPUT)
        sys.stdout.write(rep.render())
        return code
    except BudgetExceeded as exc:
        rep = Report(args.cmd)
        code = _error(rep, exc, EXIT_BUDGET)
        sys.stdout.write(rep.render())
        return code


def _dispatch(args) -> int:
    if args.cmd == "corpus":
        bounds = CorpusBounds(tuple(int(x) for x in args.primes.split(",")), args.nmax, args.rmax, args.dmax,
                              int(args.case_cost), args.kmax)
        opts = AnalyzeOptions(budget=_budget(args), partitions=args.partitions, kmax=args.kmax,
                              expsums=args.expsums)
        summary, results = run_corpus(args.seed, args.count, bounds, opts, args.workers)
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            for i, res in enumerate(results):
                (out / f"case{i:03d}.txt").write_text(res.report.render())
        sys.stdout.write(corpus_report(summary, bounds).render())
        if summary.violations or summary.divisibility_failures or summary.integrality_failures:
            return EXIT_VIOLATION
        return EXIT_BUDGET if summary.budget else EXIT_OK

    spec = load_input(args.input)
    if args.cmd == "hodge":
        rep = Report("hodge", spec)
        try:
            hodge = hodge_numbers(spec)
        except NotSmoothSuspected as exc:
            code = _error(rep, exc, EXIT_SINGULAR)
            sys.stdout.write(rep.render())
            return code
        hs = rep.section("hodge")
        hs["h"] = {f"h_{e}": hodge.h[e] for e in sorted(hodge.h)}
        hs["degree"] = hodge.degree
        hs["exceptional"] = hodge.exceptional
        hs["basis"] = _basis_lines(spec, hodge)
        sys.stdout.write(rep.render())
        return EXIT_OK
    if args.cmd == "count":
        rep = Report("count", spec)
        with rep.timed("counting"):
            ledger = count_ledger(spec, args.depth, _budget(args), args.partitions, args.workers)
        ct = rep.section("counts")
        ct["predicted_cost"] = predicted_cost(spec, args.depth)
        for m in range(1, args.depth + 1):
            ct[f"m={m}"] = f"N'={ledger.affine[m]} N={ledger.projective[m]}"
        sys.stdout.write(rep.render())
        return EXIT_OK

    opts = AnalyzeOptions(budget=_budget(args), workers=args.workers, partitions=args.partitions,
                          kmax=args.kmax, precision=args.precision, b=args.b_override,
                          ah_depth=args.ah_depth, vmax=args.vmax)
    if args.cmd == "dwork":
        rep = Report("dwork", spec)
        P = None
        try:
            check_scope(spec)
            hodge = hodge_numbers(spec)
            D = hodge.degree
            ledger = count_ledger(spec, max(D, 1), opts.budget)
            P = assemble({m: ledger.projective[m] for m in range(1, D + 1)}, hodge.h, spec.q, spec.n, spec.r).P
        except Refused:
            pass
        except (NotSmoothSuspected, NonIntegerCoefficient, BoundViolation) as exc:
            code = _error(rep, exc, EXIT_SINGULAR)
            _emit(rep.render(), args.out)
            return code
        except BudgetExceeded:
            rep.section("dwork")["comparison"] = "skipped: counting over budget"
        code = dwork_section(rep, spec, opts, P)
        _emit(rep.render(), args.out)
        return code

    opts.extra_depth = args.depth
    opts.expsums = args.expsums
    opts.dwork = args.dwork
    res = analyze(spec, opts)
    _emit(res.report.render(), args.out)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
