"""Exhaustive point counts over F_{q^m} and a finite-depth smoothness audit.

Points of A^{n+1}(F_Q), Q = q^m, are indexed by integers in [0, Q^{n+1})
read in base Q (x_n is the fastest digit).  Work is split into contiguous
index ranges; each range is evaluated in numpy blocks and the per-range
integer counts are summed, so the result cannot depend on the split.
"""
from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, NonIntegralRelation
from .field_tower import ExtHandle, FieldCtx, partition_range
from .polyforms import VarietySpec

DEFAULT_BUDGET = 10 ** 9
BUDGET_ENV = "DWORKZETA_BUDGET"
BLOCK = 1 << 18


def default_budget() -> int:
    env = os.environ.get(BUDGET_ENV)
    return int(float(env)) if env else DEFAULT_BUDGET


@lru_cache(maxsize=None)
def _ext(base: FieldCtx, m: int) -> ExtHandle:
    return ExtHandle(base, m)


@lru_cache(maxsize=None)
def lifted_terms(spec: VarietySpec, m: int):
    """Polynomials and their partial derivatives with coefficients embedded in F_{q^m}.

    Returns (big field, polys, jac) where polys[j] and jac[j][i] are lists of
    (coeff, exps) usable by ArrayOps.eval_poly.
    """
    ext = _ext(spec.field, m)
    big = ext.field
    polys = []
    jac = []
    for j in range(spec.r):
        terms = [(ext.embed(c), e) for e, c in spec.polys[j]]
        polys.append(terms)
        rows = []
        for i in range(spec.n + 1):
            d = []
            for e, c in spec.polys[j]:
                if e[i] and e[i] % spec.p:
                    de = list(e)
                    de[i] -= 1
                    d.append((ext.embed(spec.field.mul(spec.field.from_int(e[i]), c)), tuple(de)))
            rows.append(d)
        jac.append(rows)
    return big, polys, jac


def _decode(idx: np.ndarray, Q: int, nvars: int) -> list[np.ndarray]:
    coords = []
    for i in range(nvars):
        coords.append((idx // Q ** (nvars - 1 - i)) % Q)
    return coords


def _check_budget(predicted: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if predicted > budget:
        raise BudgetExceeded(predicted, budget, what)


def _count_range(spec: VarietySpec, m: int, rng: range) -> int:
    big, polys, _ = lifted_terms(spec, m)
    ops = big.arrays
    nvars = spec.n + 1
    total = 0
    for start in range(rng.start, rng.stop, BLOCK):
        idx = np.arange(start, min(start + BLOCK, rng.stop), dtype=np.int64)
        coords = _decode(idx, big.q, nvars)
        alive = np.ones(idx.shape, dtype=bool)
        for terms in polys:
            # evaluate only where still alive: later polys see fewer points
            sub = [c[alive] for c in coords]
            vals = ops.eval_poly(terms, sub)
            alive[alive] = vals == 0
            if not alive.any():
                break
        total += int(alive.sum())
    return total


def _run_partitions(fn, size: int, partitions: int, workers: int) -> int:
    parts = partition_range(size, partitions)
    if workers <= 1 or len(parts) == 1:
        return sum(fn(rng) for rng in parts)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(fn, parts))


def count_affine(spec: VarietySpec, m: int, budget: int | None = None,
                 partitions: int = 1, workers: int = 1) -> int:
    """N'_m: points of the affine cone over F_{q^m}."""
    Q = spec.q ** m
    size = Q ** (spec.n + 1)
    _check_budget(size, budget, f"affine count over F_{{{spec.q}^{m}}}")
    return _run_partitions(lambda rng: _count_range(spec, m, rng), size, partitions, workers)


def projective_from_affine(affine: int, q: int, m: int) -> int:
    Q = q ** m
    if (affine - 1) % (Q - 1):
        raise NonIntegralRelation(f"(N'_{m} - 1) = {affine - 1} is not divisible by q^m - 1 = {Q - 1}; counting bug")
    return (affine - 1) // (Q - 1)


def count_projective(spec: VarietySpec, m: int, budget: int | None = None, direct: bool = False,
                     partitions: int = 1, workers: int = 1) -> int:
    """N_m, by default through (N'_m - 1)/(q^m - 1); ``direct`` enumerates normalized points."""
    if not direct:
        return projective_from_affine(count_affine(spec, m, budget, partitions, workers), spec.q, m)
    Q = spec.q ** m
    n = spec.n
    _check_budget(sum(Q ** (n - k) for k in range(n + 1)), budget, "projective count")
    big, polys, _ = lifted_terms(spec, m)
    ops = big.arrays
    total = 0
    for k in range(n + 1):
        # points (0, ..., 0, 1, x_{k+1}, ..., x_n)
        size = Q ** (n - k)
        for start in range(0, size, BLOCK):
            idx = np.arange(start, min(start + BLOCK, size), dtype=np.int64)
            tail = _decode(idx, Q, n - k)
            coords = [np.zeros_like(idx)] * k + [np.ones_like(idx)] + tail
            alive = np.ones(idx.shape, dtype=bool)
            for terms in polys:
                alive &= ops.eval_poly(terms, coords) == 0
            total += int(alive.sum())
    return total


@dataclass
class CountLedger:
    q: int
    affine: dict = field(default_factory=dict)
    projective: dict = field(default_factory=dict)
    seconds: dict = field(default_factory=dict)
    partitions: int = 1
    workers: int = 1

    @property
    def depth(self) -> int:
        return max(self.projective, default=0)

    def check_relation(self) -> None:
        for m, a in self.affine.items():
            if projective_from_affine(a, self.q, m) != self.projective[m]:
                raise NonIntegralRelation(f"relation fails at m={m}")


def predicted_cost(spec: VarietySpec, depth: int) -> int:
    return sum((spec.q ** m) ** (spec.n + 1) for m in range(1, depth + 1))


def count_ledger(spec: VarietySpec, depth: int, budget: int | None = None,
                 partitions: int = 1, workers: int = 1) -> CountLedger:
    """Counts for m = 1..depth, vetoed up front if the total cost exceeds the budget."""
    _check_budget(predicted_cost(spec, depth), budget, f"counting to depth {depth}")
    ledger = CountLedger(spec.q, partitions=partitions, workers=workers)
    for m in range(1, depth + 1):
        t0 = time.perf_counter()
        a = count_affine(spec, m, budget=math.inf, partitions=partitions, workers=workers)
        ledger.affine[m] = a
        ledger.projective[m] = projective_from_affine(a, spec.q, m)
        ledger.seconds[m] = time.perf_counter() - t0
    return ledger


# -- smoothness audit ---------------------------------------------------------

@dataclass(frozen=True)
class SmoothUpToDepth:
    depth: int
    points_checked: int

    smooth = True

    def describe(self) -> str:
        return f"SmoothUpToDepth {self.depth} ({self.points_checked} points checked)"


@dataclass(frozen=True)
class SingularPointFound:
    point: tuple[int, ...]  # projective coordinates in F_{q^m}, first nonzero = 1
    m: int
    field_size: int

    smooth = False

    def describe(self) -> str:
        return f"SingularPointFound {self.point} over F_{self.field_size}"


@dataclass(frozen=True)
class ExcessDimension:
    """Some subset S of the equations has more F_{q^m} zeros than deg * Q^{n+1-|S|} allows."""
    subset: tuple[int, ...]
    m: int
    count: int
    bound: int

    smooth = False

    def describe(self) -> str:
        return f"ExcessDimension subset={list(self.subset)} over m={self.m}: {self.count} > {self.bound}"


def _det_vectorized(ops, M) -> np.ndarray:
    """Determinant of an r x r matrix of arrays over a field, by Leibniz expansion."""
    r = len(M)
    acc = np.zeros_like(M[0][0])
    for perm in itertools.permutations(range(r)):
        sign = 1
        for i in range(r):
            for j in range(i + 1, r):
                if perm[i] > perm[j]:
                    sign = -sign
        term = M[0][perm[0]]
        for i in range(1, r):
            term = ops.mul(term, M[i][perm[i]])
        acc = ops.add(acc, term) if sign > 0 else ops.sub(acc, term)
    return acc


def _full_rank(ops, jac_vals, r: int, ncols: int) -> np.ndarray:
    """Boolean array: Jacobian has rank r at each point."""
    shape = jac_vals[0][0].shape
    ok = np.zeros(shape, dtype=bool)
    for cols in itertools.combinations(range(ncols), r):
        if ok.all():
            break
        minor = [[jac_vals[j][c] for c in cols] for j in range(r)]
        ok |= _det_vectorized(ops, minor) != 0
    return ok


def _normalize(big: FieldCtx, point) -> tuple[int, ...]:
    lead = next(x for x in point if x)
    inv = big.inv(lead)
    return tuple(big.mul(inv, x) for x in point)


def smoothness_audit(spec: VarietySpec, k_max: int = 2, budget: int | None = None):
    """Jacobian rank test at every point of X over F_{q^k}, k = 1..k_max.

    Also bounds, for every nonempty subset S of the equations, the affine
    zero count by prod_{j in S} d_j * Q^{n+1-|S|}; exceeding it means S cuts
    out something of too large a dimension.
    """
    n1, r = spec.n + 1, spec.r
    _check_budget(predicted_cost(spec, k_max), budget, f"smoothness audit to depth {k_max}")
    subsets = [s for size in range(1, r + 1) for s in itertools.combinations(range(r), size)]
    checked = 0
    for k in range(1, k_max + 1):
        big, polys, jac = lifted_terms(spec, k)
        ops = big.arrays
        Q = big.q
        size = Q ** n1
        subset_counts = {s: 0 for s in subsets}
        for start in range(0, size, BLOCK):
            idx = np.arange(start, min(start + BLOCK, size), dtype=np.int64)
            coords = _decode(idx, Q, n1)
            zero = [ops.eval_poly(t, coords) == 0 for t in polys]
            for s in subsets:
                subset_counts[s] += int(np.logical_and.reduce([zero[j] for j in s]).sum())
            on_x = np.logical_and.reduce(zero) & (idx != 0)
            if not on_x.any():
                continue
            sub = [c[on_x] for c in coords]
            checked += int(on_x.sum())
            jac_vals = [[ops.eval_poly(jac[j][i], sub) for i in range(n1)] for j in range(r)]
            ok = _full_rank(ops, jac_vals, r, n1)
            if not ok.all():
                bad = int(np.nonzero(~ok)[0][0])
                point = tuple(int(c[bad]) for c in sub)
                return SingularPointFound(_normalize(big, point), k, Q)
        for s, cnt in subset_counts.items():
            bound = math.prod(spec.degrees[j] for j in s) * Q ** (n1 - len(s))
            if cnt > bound:
                return ExcessDimension(s, k, cnt, bound)
    return SmoothUpToDepth(k_max, checked)
