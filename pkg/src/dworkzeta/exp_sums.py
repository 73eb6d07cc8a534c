"""Exact exponential sums S_m in Z[zeta_p] and the L-function identity.

S_m = sum over (x, y) in A^{n+1+r}(F_{q^m}) of Psi(F(x, y)), F = sum y_j f_j,
with Psi(z) = zeta_p^{Tr z}.  Summing over y first gives q^{mr} when every
f_j(x) = 0 and 0 otherwise; the fast mode uses that, the naive mode does not.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MismatchAtDegree
from .field_tower import FieldCtx
from .point_counting import (BLOCK, _check_budget, _decode, _run_partitions, count_affine,
                             lifted_terms)
from .polyforms import VarietySpec
from .zeta_assembly import PPoly, series_exp, series_inverse, series_mul, series_pow


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}."""
    p: int
    c: tuple[int, ...]

    @classmethod
    def from_int(cls, p: int, x: int) -> "CycInt":
        return cls(p, (x,) + (0,) * (p - 2))

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CycInt":
        return cls.from_histogram(p, [1 if t == k % p else 0 for t in range(p)])

    @classmethod
    def from_histogram(cls, p: int, counts) -> "CycInt":
        """sum_t counts[t] zeta^t, folding zeta^{p-1} = -(1 + ... + zeta^{p-2})."""
        top = int(counts[p - 1])
        return cls(p, tuple(int(counts[t]) - top for t in range(p - 1)))

    def __add__(self, other: "CycInt") -> "CycInt":
        return CycInt(self.p, tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-x for x in self.c))

    def __sub__(self, other: "CycInt") -> "CycInt":
        return self + (-other)

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.p, tuple(other * x for x in self.c))
        p = self.p
        prod = [0] * p
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    prod[(i + j) % p] += x * y
        return CycInt.from_histogram(p, prod)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def as_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.c[0]

    def norm(self) -> int:
        """Product of the Galois conjugates, computed exactly in Z[zeta]."""
        out = CycInt.from_int(self.p, 1)
        for k in range(1, self.p):
            out = out * self.galois(k)
        return out.as_int()

    def galois(self, k: int) -> "CycInt":
        """Image under zeta -> zeta^k."""
        hist = [0] * self.p
        for i, x in enumerate(self.c):
            hist[(i * k) % self.p] += x
        return CycInt.from_histogram(self.p, hist)

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        return " + ".join(f"{x}*z^{i}" for i, x in enumerate(self.c) if x) or "0"


def character(fld: FieldCtx, x: int) -> CycInt:
    """Psi(x) = zeta_p^{Tr x}."""
    return CycInt.zeta_power(fld.p, fld.trace_to_prime(x))


def exp_sum(spec: VarietySpec, m: int, mode: str = "fast", budget: int | None = None,
            partitions: int = 1, workers: int = 1) -> CycInt:
    """S_m, either through the inner y-sum in closed form ("fast") or the full (x, y) loop ("naive")."""
    p = spec.p
    Q = spec.q ** m
    if mode == "fast":
        n_aff = count_affine(spec, m, budget, partitions, workers)
        return CycInt.from_int(p, Q ** spec.r * n_aff)
    if mode != "naive":
        raise ValueError(f"unknown mode {mode!r}")
    nvars = spec.n + 1 + spec.r
    size = Q ** nvars
    _check_budget(size, budget, f"naive exponential sum over F_{{{spec.q}^{m}}}")
    big, polys, _ = lifted_terms(spec, m)
    ops = big.arrays
    # F(x, y) = sum_j y_j f_j(x) as one polynomial in n+1+r variables
    terms = []
    for j, fj in enumerate(polys):
        for c, e in fj:
            ey = [0] * spec.r
            ey[j] = 1
            terms.append((c, tuple(e) + tuple(ey)))

    def work(rng):
        hist = np.zeros(p, dtype=np.int64)
        for start in range(rng.start, rng.stop, BLOCK):
            idx = np.arange(start, min(start + BLOCK, rng.stop), dtype=np.int64)
            coords = _decode(idx, Q, nvars)
            tr = ops.trace(ops.eval_poly(terms, coords))
            hist += np.bincount(tr, minlength=p)
        return hist

    hist = _run_partitions(work, size, partitions, workers)
    return CycInt.from_histogram(p, [int(x) for x in hist])


@dataclass(frozen=True)
class LCheck:
    order: int
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def l_function_check(spec: VarietySpec, sums: dict, P: PPoly, order: int) -> LCheck:
    """Compare L^{(-1)^{n+r}} with (1 - q^{n+1} t)^{(-1)^{n+r-1}} P(q^r t)/P(q^{r+1} t) through t^order.

    L = exp(sum S_m t^m/m); every S_m must be a rational integer.
    """
    q, n, r = spec.q, spec.n, spec.r
    logl = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        logl[m] = Fraction(sums[m].as_int(), m)
    sign = 1 if (n + r) % 2 == 0 else -1
    lhs = series_exp([sign * x for x in logl], order)
    first = series_pow([Fraction(1), Fraction(-(q ** (n + 1)))], -sign, order)
    num = [Fraction(c) for c in P.scaled(q ** r).coeffs]
    den = [Fraction(c) for c in P.scaled(q ** (r + 1)).coeffs]
    rhs = series_mul(first, series_mul(num, series_inverse(den, order), order), order)
    rhs = rhs + [Fraction(0)] * (order + 1 - len(rhs))
    for k in range(order + 1):
        if lhs[k] != rhs[k]:
            raise MismatchAtDegree(k, lhs[k], rhs[k])
    return LCheck(order, tuple(lhs), tuple(rhs[: order + 1]))
