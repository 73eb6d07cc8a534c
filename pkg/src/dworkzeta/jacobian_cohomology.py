"""Weight pieces of the top cohomology of (Omega, dF^) over F_q.

The (0, e) piece of H^{n+r+1} is the cokernel of dF^ from the (0, e-1)
(n+r)-forms to the (0, e) volume forms x^a y^b dx_0...dx_n dy_1...dy_r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ExceptionalClassNeeded, NotSmoothSuspected, SolveFailed
from .linalg import Echelon, solve_fq
from .polyforms import (BiForm, VarietySpec, compositions, dF, format_form,
                        popcount, theta, wedge_dF)

FormKey = tuple  # (a, b, mask)


def _masks_of_degree(nslots: int, k: int) -> list[int]:
    return sorted((m for m in range(1 << nslots) if popcount(m) == k), reverse=True)


@lru_cache(maxsize=None)
def enumerate_piece(spec: VarietySpec, e: int, k: int) -> tuple[FormKey, ...]:
    """All monomial k-forms of bidegree (0, e), in a fixed graded-lex order."""
    n1, r = spec.n + 1, spec.r
    out = []
    for mask in _masks_of_degree(spec.nslots, k):
        l = popcount(mask & ((1 << n1) - 1))
        dys = [j for j in range(r) if mask >> (n1 + j) & 1]
        bsum = e - len(dys)
        if bsum < 0:
            continue
        for b in compositions(bsum, r):
            asum = sum(bj * dj for bj, dj in zip(b, spec.degrees)) + sum(spec.degrees[j] for j in dys) - l
            if asum < 0:
                continue
            for a in compositions(asum, n1):
                out.append((a, b, mask))
    return tuple(out)


def _vector(omega: BiForm, index: dict, size: int) -> list[int]:
    v = [0] * size
    for key, c in omega.terms.items():
        v[index[key]] = c
    return v


@lru_cache(maxsize=None)
def boundary_columns(spec: VarietySpec, e: int) -> tuple[tuple[int, ...], ...]:
    """Images dF ^ (source) of the (0, e-1) (n+r)-forms, as vectors over the (0, e) volume monomials."""
    targets = enumerate_piece(spec, e, spec.nslots)
    index = {t: i for i, t in enumerate(targets)}
    cols = []
    for a, b, mask in enumerate_piece(spec, e - 1, spec.nslots - 1):
        img = wedge_dF(BiForm(spec, {(a, b, mask): 1}))
        cols.append(tuple(_vector(img, index, len(targets))))
    return tuple(cols)


def boundary_matrix(spec: VarietySpec, e: int) -> list[list[int]]:
    """Rows indexed by target monomials, columns by source (n+r)-forms."""
    cols = boundary_columns(spec, e)
    ntargets = len(enumerate_piece(spec, e, spec.nslots))
    return [[col[i] for col in cols] for i in range(ntargets)]


@dataclass(frozen=True)
class GradedPieceReport:
    e: int
    target_monomials: tuple[FormKey, ...]
    boundary_rank: int
    cokernel_dim: int
    basis: tuple[FormKey, ...]
    exceptional: bool
    echelon: Echelon = field(repr=False, compare=False, default=None)

    def class_vector(self, vec):
        """Normal form of a target-coordinate vector modulo the image."""
        return self.echelon.reduce(vec)

    def is_zero_class(self, vec) -> bool:
        return self.echelon.in_span(vec)


def is_exceptional_weight(spec: VarietySpec, e: int) -> bool:
    return spec.exceptional and 2 * e == spec.n + spec.r + 1


@lru_cache(maxsize=None)
def compute_piece(spec: VarietySpec, e: int) -> GradedPieceReport:
    targets = enumerate_piece(spec, e, spec.nslots)
    cols = boundary_columns(spec, e) if targets else ()
    ech = Echelon(list(cols), len(targets), spec.field)
    coker = len(targets) - ech.rank
    return GradedPieceReport(
        e=e,
        target_monomials=targets,
        boundary_rank=ech.rank,
        cokernel_dim=coker,
        basis=tuple(targets[i] for i in ech.non_pivots()),
        exceptional=is_exceptional_weight(spec, e),
        echelon=ech,
    )


@dataclass(frozen=True)
class HodgeData:
    h: dict  # e -> h_e for e = r..n
    pieces: dict  # e -> GradedPieceReport
    exceptional: bool
    exceptional_weight: int | None
    vanishing_checked_to: int
    violations: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return sum(self.h.values())

    def vector(self) -> list[int]:
        return [self.h[e] for e in sorted(self.h)]


def middle_hodge_numbers(spec: VarietySpec) -> dict[int, int]:
    """h_e for e = r..n only (no vanishing audit); cheap enough to size a point count."""
    return hodge_numbers(spec, check_vanishing=False).h


def hodge_numbers(spec: VarietySpec, check_vanishing: bool = True) -> HodgeData:
    pieces = {}
    h = {}
    exc_weight = (spec.n + spec.r + 1) // 2 if spec.exceptional else None
    for e in range(spec.r, spec.n + 1):
        piece = compute_piece(spec, e)
        pieces[e] = piece
        h[e] = piece.cokernel_dim - (1 if piece.exceptional else 0)
    top = spec.n
    violations = []
    if check_vanishing:
        top = spec.n + max(spec.degrees)
        for e in range(spec.n + 1, top + 1):
            piece = compute_piece(spec, e)
            pieces[e] = piece
            if piece.cokernel_dim:
                violations.append(e)
    data = HodgeData(h, pieces, spec.exceptional, exc_weight, top, tuple(violations))
    if violations:
        err = NotSmoothSuspected(f"cohomology does not vanish in weights {violations} > n; input is likely singular")
        err.data = data
        raise err
    if any(v < 0 for v in h.values()):
        raise NotSmoothSuspected(f"negative corrected dimension {h}; exceptional class missing, input is likely singular")
    return data


@dataclass(frozen=True)
class TorsionClass:
    tau: BiForm
    zetas: tuple[BiForm, ...]
    etas: tuple[BiForm, ...]
    weight: int

    def __repr__(self):
        return f"TorsionClass(weight={self.weight}, tau={format_form(self.tau)})"


def _solve_theta(spec: VarietySpec, eta: BiForm, k: int) -> BiForm:
    """Least-index zeta among (0, k) 2k-forms with theta(zeta) = eta."""
    sources = enumerate_piece(spec, k, 2 * k)
    targets = enumerate_piece(spec, k, 2 * k - 1)
    index = {t: i for i, t in enumerate(targets)}
    for key in eta.terms:
        if key not in index:
            raise SolveFailed(f"eta_{k} has a term {key} outside bidegree (0,{k})")
    cols = [_vector(theta(BiForm(spec, {s: 1})), index, len(targets)) for s in sources]
    x = solve_fq(cols, _vector(eta, index, len(targets)), len(targets), spec.field)
    if x is None:
        raise SolveFailed(f"theta(zeta_{k}) = eta_{k} has no solution")
    return BiForm(spec, {s: c for s, c in zip(sources, x) if c})


@lru_cache(maxsize=None)
def exceptional_class(spec: VarietySpec, require_nonzero: bool = True) -> TorsionClass:
    """Torsion class built by iterated theta-solves.

    Nonvanishing of its cokernel class is guaranteed for smooth input only;
    pass ``require_nonzero=False`` to get the chain on singular input anyway.
    """
    if not spec.exceptional:
        raise ValueError("exceptional class exists only when p | d_1...d_r and n + r is odd")
    top = (spec.n + spec.r + 1) // 2
    eta = dF(spec)
    etas = [eta]
    zetas = []
    for k in range(1, top + 1):
        zeta = _solve_theta(spec, eta, k)
        zetas.append(zeta)
        if k < top:
            eta = wedge_dF(zeta)
            etas.append(eta)
    tau = zetas[-1]
    piece = compute_piece(spec, top)
    index = {t: i for i, t in enumerate(piece.target_monomials)}
    if require_nonzero and piece.is_zero_class(_vector(tau, index, len(index))):
        raise SolveFailed("constructed torsion class vanishes in the cokernel")
    return TorsionClass(tau, tuple(zetas), tuple(etas), top)


def torsion_vector(spec: VarietySpec, tc: TorsionClass) -> list[int]:
    piece = compute_piece(spec, tc.weight)
    index = {t: i for i, t in enumerate(piece.target_monomials)}
    return _vector(tc.tau, index, len(index))


def monomial_basis(spec: VarietySpec, e: int, torsion: TorsionClass | None = None) -> tuple[FormKey, ...]:
    piece = compute_piece(spec, e)
    if not piece.exceptional:
        return piece.basis
    if torsion is None:
        raise ExceptionalClassNeeded(f"weight {e} is exceptional; compute the torsion class first")
    rows = list(boundary_columns(spec, e)) + [torsion_vector(spec, torsion)]
    ech = Echelon(rows, len(piece.target_monomials), spec.field)
    return tuple(piece.target_monomials[i] for i in ech.non_pivots())


def full_basis(spec: VarietySpec, hodge: HodgeData | None = None) -> list[tuple[int, FormKey]]:
    """All (e, xi) with e = r..n, in (e, l) order."""
    hodge = hodge or hodge_numbers(spec)
    tc = exceptional_class(spec) if spec.exceptional else None
    out = []
    for e in sorted(hodge.h):
        for key in monomial_basis(spec, e, tc if is_exceptional_weight(spec, e) else None):
            out.append((e, key))
    return out


def expected_degree(n: int, degrees) -> int:
    """Primitive middle Betti number of a smooth complete intersection of these degrees.

    From the Euler characteristic deg(X) * [H^{n-r}] (1+H)^{n+1} / prod (1 + d_j H);
    independent of the field, so it predicts deg P(t) = sum h_e before any
    linear algebra is done.
    """
    r = len(degrees)
    dim = n - r
    series = [math.comb(n + 1, k) for k in range(dim + 1)]
    for d in degrees:
        # divide by (1 + d H)
        for k in range(1, dim + 1):
            series[k] -= d * series[k - 1]
    chi = math.prod(degrees) * series[dim]
    return (-1) ** dim * (chi - (dim + 1))
