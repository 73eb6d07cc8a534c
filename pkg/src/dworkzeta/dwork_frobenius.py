"""Truncated Dwork Frobenius on the top cohomology, for q = p and p not dividing prod d_j.

Coordinates.  A top form xi * dx_0..dx_n dy_1..dy_r is stored through
z^W = x y xi, W = (U, V) with every exponent >= 1 and sum U = sum_j V_j d_j.
Its level is |V|; the weight-(0, e) cohomology sits at level e.

gamma-normalization.  We write coefficients against gamma^{|V|} z^W.  In
these coordinates

  * Frobenius: alpha(gamma^e z^W) = sum_{W'} Ghat_{pW'-W} rho^{|V'|} gamma^{|V'|} z^{W'},
    where G = prod theta(a x^u y_j) has G_{u,v} = Ghat_{u,v} gamma^{|v|}, Ghat built
    from Artin-Hasse coefficients and Teichmuller lifts, and rho = gamma^{p-1} in Z_p;
  * the image of the twisted differential is spanned, for each slot k and
    each W with W_k >= 0, by
        (z_k Fhat_k) z^W  +  W_k z^W  +  sum_{l >= 1} kappa_l (z_k Fhat_k)(z^{p^l}) z^W,
    with kappa_l = gamma_l p^l / gamma^{p^l} in Z_p of ord >= p^l - 1.

So every number in the computation is a p-adic integer and the matrix is
obtained with integer arithmetic mod p^N.  A level-E Frobenius coefficient is
divisible by rho^E, which makes truncation above a level V_max certified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (DivisionNotExact, NoConvergence, PrecisionInsufficient, Refused,
                     TruncationUncertified)
from .jacobian_cohomology import enumerate_piece, full_basis, hodge_numbers
from .linalg import SurjectionSolver
from .padic import (PadicScalar, artin_hasse_coeffs, fraction_mod, gamma_root, kappa, ord_p,
                    rho_sigma, teichmuller)
from .polyforms import VarietySpec
from .zeta_assembly import PPoly, Polygon, lower_hull, polygon_from_slopes

Key = tuple  # exponent vector (U_0..U_n, V_1..V_r)


# -- context --------------------------------------------------------------------

@dataclass(frozen=True)
class PadicCtx:
    p: int
    N: int
    b: Fraction
    L: int
    V_max: int

    @classmethod
    def make(cls, spec: VarietySpec, N: int = 3, b=None, L: int | None = None,
             V_max: int | None = None, guard: int = 1) -> "PadicCtx":
        p = spec.p
        b = Fraction((p + 1), 2 * (p - 1)) if b is None else Fraction(b)
        if not (Fraction(1, p - 1) < b < Fraction(p, p - 1)):
            raise ValueError(f"b = {b} outside the open interval (1/(p-1), p/(p-1))")
        if N < 1:
            raise ValueError("precision must be positive")
        if L is None:
            # kappa_l has ord >= p^l - 1, so only l with p^l - 1 < N matter
            L = 0
            while p ** (L + 1) - 1 < N:
                L += 1
        if V_max is None:
            V_max = max(spec.n, N - 1) + guard
        if V_max < spec.n:
            raise ValueError("V_max must reach the top weight n")
        return cls(p, N, b, L, V_max)

    @property
    def mod(self) -> int:
        return self.p ** self.N

    @property
    def delta(self) -> Fraction:
        """b - 1/(p-1): valuation gained per level by the weight normalization."""
        return self.b - Fraction(1, self.p - 1)


def check_scope(spec: VarietySpec) -> None:
    if spec.field.a != 1:
        raise Refused("q = p required: the Frobenius computation is restricted to prime fields")
    if math.prod(spec.degrees) % spec.p == 0:
        raise Refused("p divides d_1...d_r: the exceptional torsion class is out of scope at the p-adic level")


# -- series ---------------------------------------------------------------------

@dataclass
class WeightedSeries:
    """Finite map exponent -> PadicScalar, with a certified bound on what was dropped.

    ``tail_valuation``: every discarded coefficient has ord at least this.
    ``b``: weight of the ambient C(b); psi_map multiplies it by p.
    """
    p: int
    K: int
    terms: dict
    b: Fraction
    tail_valuation: float | Fraction = math.inf

    def min_valuation(self):
        return min((c.valuation() for c in self.terms.values()), default=math.inf)

    def int_terms(self) -> dict:
        return {k: c.as_int() for k, c in self.terms.items() if not c.is_zero()}


def fhat_terms(spec: VarietySpec, K: int):
    """Monomials (z-exponent, Teichmuller coefficient) of Fhat = sum_j y_j fhat_j."""
    r = spec.r
    out = []
    for j in range(r):
        for e, c in spec.polys[j]:
            v = [0] * r
            v[j] = 1
            out.append((tuple(e) + tuple(v), teichmuller(c, spec.p, K)))
    return out


def stripped_G(spec: VarietySpec, K: int, bound: Key) -> dict:
    """Ghat = prod_t sum_k AH_k (a_t m_t)^k, truncated to exponents <= bound componentwise."""
    p, mod = spec.p, p_pow(spec.p, K)
    kmax = max(bound[spec.n + 1:]) if spec.r else 0
    ah = [fraction_mod(x, mod) for x in artin_hasse_coeffs(p, max(kmax, 1))]
    G = {tuple([0] * len(bound)): 1}
    for mono, a in fhat_terms(spec, K):
        factor = []
        k = 0
        power = 1
        while True:
            e = tuple(k * x for x in mono)
            if any(x > b for x, b in zip(e, bound)):
                break
            factor.append((e, ah[k] * power % mod))
            k += 1
            power = power * a % mod
        nxt = {}
        for key, c in G.items():
            for e, f in factor:
                if not f:
                    continue
                tgt = tuple(x + y for x, y in zip(key, e))
                if any(x > b for x, b in zip(tgt, bound)):
                    break
                nxt[tgt] = (nxt.get(tgt, 0) + c * f) % mod
        G = {k: v for k, v in nxt.items() if v}
    return G


def G_coefficients(spec: VarietySpec, K: int, keys) -> dict:
    """Ghat at the requested exponents only, by recursion over the monomials of Fhat.

    Each monomial of Fhat carries exactly one y_j, so once the last monomial
    of f_j is reached its power is forced to be the remaining y_j exponent.
    Agrees with stripped_G on every key; used by the Frobenius because only a
    few hundred coefficients are ever needed.
    """
    p = spec.p
    mod = p ** K
    terms = fhat_terms(spec, K)
    n1 = spec.n + 1
    keys = [tuple(k) for k in keys]
    if not keys:
        return {}
    kmax = max(max(k[n1:], default=0) for k in keys)
    ah = [fraction_mod(x, mod) for x in artin_hasse_coeffs(p, max(kmax, 1))]
    yslot = [n1 + next(j for j in range(spec.r) if m[n1 + j]) for m, _ in terms]
    last_of_group = [t + 1 == len(terms) or yslot[t + 1] != yslot[t] for t in range(len(terms))]
    support = [[i for i, x in enumerate(m) if x] for m, _ in terms]
    memo = [dict() for _ in terms]

    def coeff(t: int, rem: tuple) -> int:
        if t == len(terms):
            return 0 if any(rem) else 1
        hit = memo[t].get(rem)
        if hit is not None:
            return hit
        mono, a = terms[t]
        ys = yslot[t]
        if last_of_group[t]:
            ks = [rem[ys]]
        else:
            ks = range(rem[ys] + 1)
        total = 0
        for k in ks:
            if any(rem[i] < k * mono[i] for i in support[t]):
                break
            if not ah[k]:
                continue
            nxt = tuple(x - k * y for x, y in zip(rem, mono))
            sub = coeff(t + 1, nxt)
            if sub:
                total += ah[k] * pow(a, k, mod) * sub
        total %= mod
        memo[t][rem] = total
        return total

    # a y_j with no monomials in f_j can only carry exponent 0
    used = set(yslot)
    out = {}
    for k in keys:
        if any(k[s] for s in range(n1, n1 + spec.r) if s not in used):
            out[k] = 0
        else:
            out[k] = coeff(0, k)
    return out


def p_pow(p: int, K: int) -> int:
    return p ** K


def build_G(spec: VarietySpec, ctx: PadicCtx, y_max: int | None = None) -> WeightedSeries:
    """G = prod theta(a x^u y_j) with its gamma-powers restored, |v| <= y_max (default V_max)."""
    check_scope(spec)
    y_max = ctx.V_max if y_max is None else y_max
    xbound = y_max * max(spec.degrees)
    bound = tuple([xbound] * (spec.n + 1) + [y_max] * spec.r)
    K = ctx.N
    Gh = stripped_G(spec, K, bound)
    gamma = gamma_root(spec.p, K)
    gpow = [PadicScalar.from_int(spec.p, K, 1)]
    for _ in range(y_max):
        gpow.append(gpow[-1] * gamma)
    terms = {}
    for key, c in Gh.items():
        vdeg = sum(key[spec.n + 1:])
        if vdeg <= y_max:
            terms[key] = gpow[vdeg] * c
    # a dropped term has |v| > y_max, hence ord >= |v|/(p-1)
    return WeightedSeries(spec.p, K, terms, ctx.b, Fraction(y_max + 1, spec.p - 1))


def psi_map(s: WeightedSeries) -> WeightedSeries:
    p = s.p
    terms = {tuple(x // p for x in k): c for k, c in s.terms.items() if all(x % p == 0 for x in k)}
    return WeightedSeries(p, s.K, terms, s.b * p, s.tail_valuation)


# -- levels and relations ---------------------------------------------------------

def key_from_form(spec: VarietySpec, form_key, missing: int | None = None) -> Key:
    """(a, b, mask) -> W = (a + 1, b + 1), except at the missing slot (exponent kept as is)."""
    a, b, _ = form_key
    raw = list(a) + list(b)
    return tuple(x if i == missing else x + 1 for i, x in enumerate(raw))


def level_of(spec: VarietySpec, W: Key) -> int:
    return sum(W[spec.n + 1:])


@dataclass
class _Level:
    E: int
    targets: list
    index: dict
    sources: list  # (slot, W)
    solver: SurjectionSolver
    basis_rows: list  # target rows of the basis monomials
    basis_pos: list  # their positions in the global basis
    down_src: np.ndarray
    down_rows: np.ndarray
    down_mult: np.ndarray
    ups: list  # (l, target level, src idx array, row array or None, coeff array)


class ReductionData:
    """Per-spec, per-precision solvers for peeling levels V_max..r."""

    def __init__(self, spec: VarietySpec, ctx: PadicCtx):
        check_scope(spec)
        self.spec, self.ctx = spec, ctx
        p, K = spec.p, ctx.N
        self.mod = p ** K
        n1, r = spec.n + 1, spec.r
        self.nslots = n1 + r
        hodge = hodge_numbers(spec)
        self.hodge = hodge
        self.basis = [(e, key_from_form(spec, key)) for e, key in full_basis(spec, hodge)]
        self.basis_index = {W: i for i, (_, W) in enumerate(self.basis)}
        fh = fhat_terms(spec, K)
        # z_k Fhat_k as (exponent, coeff) lists
        self.zdF = []
        for k in range(self.nslots):
            terms = []
            for mono, c in fh:
                if mono[k] and (mono[k] * c) % self.mod:
                    terms.append((mono, mono[k] * c % self.mod))
            self.zdF.append(terms)
        self.kappas = {l: kappa(p, l, K) for l in range(1, ctx.L + 1)}
        self.targets = {}
        for E in range(r, ctx.V_max + 1):
            tg = [key_from_form(spec, t) for t in enumerate_piece(spec, E, self.nslots)]
            self.targets[E] = (tg, {W: i for i, W in enumerate(tg)})
        self.levels = {E: self._build_level(E) for E in range(r, ctx.V_max + 1)}

    def _build_level(self, E: int) -> _Level:
        spec, mod = self.spec, self.mod
        targets, index = self.targets[E]
        sources = []
        full = (1 << self.nslots) - 1
        for a, b, mask in enumerate_piece(spec, E - 1, self.nslots - 1):
            k = (full ^ mask).bit_length() - 1
            sources.append((k, key_from_form(spec, (a, b, mask), missing=k)))
        basis_rows, basis_pos = [], []
        for W in targets:
            if W in self.basis_index and self.basis[self.basis_index[W]][0] == E:
                basis_rows.append(index[W])
                basis_pos.append(self.basis_index[W])
        A = np.zeros((len(targets), len(sources) + len(basis_rows)), dtype=object)
        for col, (k, W) in enumerate(sources):
            for mono, c in self.zdF[k]:
                tgt = tuple(x + y for x, y in zip(W, mono))
                A[index[tgt], col] = (A[index[tgt], col] + c) % mod
        for j, row in enumerate(basis_rows):
            A[row, len(sources) + j] = 1
        solver = SurjectionSolver(A.astype(np.int64) if mod < 2 ** 31 else A, spec.p, self.ctx.N)
        if solver.pivots[-len(basis_rows):] != list(range(len(sources), len(sources) + len(basis_rows))) and basis_rows:
            raise AssertionError(f"basis monomials at level {E} are not a complement of the image")
        d_src, d_rows, d_mult = [], [], []
        for s, (k, W) in enumerate(sources):
            if W[k] > 0:
                d_src.append(s)
                d_rows.append(self.targets[E - 1][1][W])
                d_mult.append(W[k])
        ups = []
        for l, kap in self.kappas.items():
            if kap == 0:
                continue
            lvl = E - 1 + self.spec.p ** l
            src, rows, coeffs = [], [], []
            for s, (k, W) in enumerate(sources):
                for mono, c in self.zdF[k]:
                    tgt = tuple(x + self.spec.p ** l * y for x, y in zip(W, mono))
                    src.append(s)
                    rows.append(self.targets[lvl][1][tgt] if lvl in self.targets else -1)
                    coeffs.append(kap * c % mod)
            ups.append((l, lvl, np.array(src, dtype=np.int64), np.array(rows, dtype=np.int64),
                        np.array(coeffs, dtype=object)))
        return _Level(E, targets, index, sources, solver, basis_rows, basis_pos,
                      np.array(d_src, dtype=np.int64), np.array(d_rows, dtype=np.int64),
                      np.array(d_mult, dtype=object), ups)

    def level_of(self, W: Key) -> int:
        return level_of(self.spec, W)


@lru_cache(maxsize=None)
def reduction_data(spec: VarietySpec, ctx: PadicCtx) -> ReductionData:
    return ReductionData(spec, ctx)


def _min_ord(values, p: int, mod: int):
    best = math.inf
    for v in values:
        v = int(v) % mod
        if v:
            best = min(best, ord_p(v, p))
    return best


@dataclass
class Reduction:
    coords: list  # ints mod p^N, one per basis element
    certified: int | float  # result is exact modulo p^certified
    sweeps: int
    history: list  # min valuation of the residual at the start of each sweep


def reduce_to_basis(spec: VarietySpec, ctx: PadicCtx, series: dict) -> Reduction:
    """Coordinates of a gamma-normalized top-form series against the monomial basis.

    Levels are peeled from V_max down to r; at each level the residual is
    split as (basis part) + (image of z_k Fhat_k), and the image part is
    replaced by the remaining terms of its relation (same level minus one,
    or p^l - 1 levels up with a kappa_l factor).  Sweeps repeat until the
    residual vanishes mod p^N.
    """
    data = reduction_data(spec, ctx)
    p, mod = spec.p, data.mod
    residual = {E: np.zeros(len(lv.targets), dtype=object) for E, lv in data.levels.items()}
    for W, c in series.items():
        E = data.level_of(W)
        if E not in residual or W not in data.levels[E].index:
            raise ValueError(f"monomial {W} is not an interior level-{E} monomial within V_max={ctx.V_max}")
        residual[E][data.levels[E].index[W]] += c
    coords = np.zeros(len(data.basis), dtype=object)
    dropped = math.inf
    history = []
    max_sweeps = ctx.N + 2
    for sweep in range(max_sweeps + 1):
        current = min((_min_ord(v, p, mod) for v in residual.values()), default=math.inf)
        if current == math.inf:
            return Reduction([int(x) % mod for x in coords], min(ctx.N, dropped), sweep, history)
        if history and current <= history[-1]:
            raise NoConvergence(sweep, history + [current])
        history.append(current)
        if sweep == max_sweeps:
            break
        for E in sorted(data.levels, reverse=True):
            v = residual[E] % mod
            if not v.any():
                continue
            residual[E] = np.zeros_like(residual[E])
            lv = data.levels[E]
            x = np.asarray(lv.solver.solve(v.astype(np.int64) if mod < 2 ** 31 else v), dtype=object)
            nS = len(lv.sources)
            g = x[:nS]
            for j, pos in enumerate(lv.basis_pos):
                coords[pos] = (coords[pos] + x[nS + j]) % mod
            if len(lv.down_src):
                contrib = (lv.down_mult * g[lv.down_src]) % mod
                np.subtract.at(residual[E - 1], lv.down_rows, contrib)
            for l, lvl, src, rows, coeffs in lv.ups:
                contrib = (coeffs * g[src]) % mod
                if lvl in residual:
                    np.subtract.at(residual[lvl], rows, contrib)
                else:
                    dropped = min(dropped, _min_ord(contrib, p, mod))
    raise NoConvergence(max_sweeps, history)


def apply_D(spec: VarietySpec, ctx: PadicCtx, slot: int, g: dict) -> dict:
    """Image of sum g_W z^W under the slot-k relation, in gamma-normalized coordinates.

    Equals the twisted differential D of the matching (n+r)-form up to a
    nonzero constant.  Terms above V_max are dropped (returned separately by
    the caller's choice of small inputs).
    """
    data = reduction_data(spec, ctx)
    mod = data.mod
    out = {}

    def add(W, c):
        if data.level_of(W) <= ctx.V_max:
            out[W] = (out.get(W, 0) + c) % mod

    for W, c in g.items():
        if any(x < 1 for i, x in enumerate(W) if i != slot) or W[slot] < 0:
            raise ValueError("relation input must be interior away from the slot")
        for mono, f in data.zdF[slot]:
            add(tuple(x + y for x, y in zip(W, mono)), c * f)
        if W[slot]:
            add(W, c * W[slot])
        for l, kap in data.kappas.items():
            for mono, f in data.zdF[slot]:
                add(tuple(x + spec.p ** l * y for x, y in zip(W, mono)), c * f * kap)
    return {k: v for k, v in out.items() if v}


# -- Frobenius ----------------------------------------------------------------------

def frobenius_on_form(spec: VarietySpec, ctx: PadicCtx, W: Key) -> WeightedSeries:
    """alpha(gamma^e z^W) in gamma-normalized coordinates, levels r..V_max.

    Coefficient at W' is Ghat_{pW'-W} * rho^{|V'|}; the dropped levels
    above V_max are divisible by rho^{V_max+1}.
    """
    check_scope(spec)
    data = reduction_data(spec, ctx)
    p, K, mod = spec.p, ctx.N, data.mod
    if any(x < 1 for x in W):
        raise DivisionNotExact(f"{W} is not interior")
    rho, _ = rho_sigma(p, K)
    needed = []
    for E in range(spec.r, ctx.V_max + 1):
        for Wp in data.targets[E][0]:
            u = tuple(p * a - b for a, b in zip(Wp, W))
            if min(u) >= 0:
                needed.append((E, Wp, u))
    G = G_coefficients(spec, K, [u for _, _, u in needed])
    terms = {}
    for E, Wp, u in needed:
        c = G.get(u, 0)
        if c:
            val = c * pow(rho, E, mod) % mod
            if val:
                terms[Wp] = PadicScalar.from_int(p, K, val)
    return WeightedSeries(p, K, terms, ctx.b * p, ctx.V_max + 1)


@dataclass
class FrobeniusMatrix:
    p: int
    N: int
    b: Fraction
    basis: list  # (e, W)
    entries: list  # entries[row][col], ints mod p^N, gamma-normalized basis
    certified: int | float
    sweeps: list

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def slack(self) -> int | float:
        return self.N - self.certified

    def entry(self, i: int, j: int) -> PadicScalar:
        return PadicScalar.from_int(self.p, self.N, self.entries[i][j])

    def normalized_valuation(self, i: int, j: int):
        """ord of the entry against the weight-normalized basis pi^{Mbe} z^W.

        Equals ord(M[i][j]) + (b - 1/(p-1)) (e_j - e_i); an entry that is 0 mod
        p^N contributes the lower bound N instead of ord.
        """
        e_i, e_j = self.basis[i][0], self.basis[j][0]
        v = ord_p(self.entries[i][j], self.p)
        v = min(v, self.certified)
        return v + (self.b - Fraction(1, self.p - 1)) * (e_j - e_i)

    def column_min_valuation(self, j: int):
        return min(self.normalized_valuation(i, j) for i in range(self.size))

    def column_bound(self, j: int) -> Fraction:
        e = self.basis[j][0]
        return self.b * e * (self.p - 1) / self.p


def frobenius_matrix(spec: VarietySpec, ctx: PadicCtx) -> FrobeniusMatrix:
    check_scope(spec)
    data = reduction_data(spec, ctx)
    cols = []
    certified = min(ctx.N, ctx.V_max + 1)
    sweeps = []
    for e, W in data.basis:
        image = frobenius_on_form(spec, ctx, W)
        red = reduce_to_basis(spec, ctx, image.int_terms())
        cols.append(red.coords)
        certified = min(certified, red.certified)
        sweeps.append(red.sweeps)
    if certified < 1:
        raise TruncationUncertified("truncation leaves no certified digits")
    size = len(data.basis)
    entries = [[cols[j][i] for j in range(size)] for i in range(size)]
    return FrobeniusMatrix(spec.p, ctx.N, ctx.b, data.basis, entries, certified, sweeps)


# -- characteristic polynomial -----------------------------------------------------

def berkowitz(M, mod: int) -> list[int]:
    """Coefficients [1, c_1, ..., c_n] of det(t I - M) = t^n + c_1 t^{n-1} + ..., division free.

    These are also the coefficients of det(I - t M) in increasing degree.
    """
    n = len(M)
    C = [1]
    for k in range(n):
        # leading k x k block A, new column S, new row R, corner a
        a = M[k][k] % mod
        R = [M[k][j] for j in range(k)]
        S = [M[i][k] for i in range(k)]
        col = [1, -a % mod]
        vec = S[:]
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(R, vec)) % mod)
            vec = [sum(M[i][j] * vec[j] for j in range(k)) % mod for i in range(k)]
        # Toeplitz (k+2) x (k+1) lower-triangular matrix with first column `col`
        new = []
        for i in range(k + 2):
            s = 0
            for j in range(k + 1):
                if 0 <= i - j < len(col):
                    s += col[i - j] * C[j]
            new.append(s % mod)
        C = new
    return C


def det_one_minus_t(F: FrobeniusMatrix) -> list[int]:
    return berkowitz(F.entries, F.p ** F.N)


@dataclass(frozen=True)
class DetComparison:
    ok: bool
    precision: int
    det_coeffs: tuple
    target_coeffs: tuple


def compare_with_P(F: FrobeniusMatrix, P: PPoly, r: int) -> DetComparison:
    """det(I - t F) against P(p^r t), modulo p^{certified}."""
    prec = int(F.certified)
    mod = F.p ** prec
    lhs = [c % mod for c in det_one_minus_t(F)]
    target = [c % mod for c in P.scaled(F.p ** r).coeffs]
    width = max(len(lhs), len(target))
    lhs += [0] * (width - len(lhs))
    target += [0] * (width - len(target))
    return DetComparison(lhs == target, prec, tuple(lhs), tuple(target))


@dataclass(frozen=True)
class BoundCheck:
    kind: str  # "Holds" or "VIOLATION"
    points: tuple  # (i, valuation lower bound, exact?)
    newton: Polygon
    prelimit: Polygon
    hodge: Polygon
    abscissa: int | None = None

    @property
    def ok(self) -> bool:
        return self.kind == "Holds"


def newton_bound_check(F: FrobeniusMatrix, h: dict) -> BoundCheck:
    """Newton polygon (ord_p) of det(I - tF) against prod (1 - p^{e b (p-1)/p} t)^{h_e} and prod (1 - p^e t)^{h_e}.

    A coefficient that vanishes mod p^certified only gives the lower bound
    `certified`; that suffices as long as the bound clears both polygons,
    otherwise PrecisionInsufficient.  Since both bound polygons are convex,
    all coefficient points lying on or above them is equivalent to the
    Newton polygon lying on or above them.
    """
    prec = int(F.certified)
    mod = F.p ** prec
    coeffs = [c % mod for c in det_one_minus_t(F)]
    pre_slopes, hodge_slopes = [], []
    for e in sorted(h):
        pre_slopes += [F.b * e * (F.p - 1) / F.p] * h[e]
        hodge_slopes += [Fraction(e)] * h[e]
    pre = polygon_from_slopes(pre_slopes)
    hodge = polygon_from_slopes(hodge_slopes)
    points = []
    for i, c in enumerate(coeffs):
        if c:
            points.append((i, Fraction(ord_p(c, F.p)), True))
        else:
            bound = Fraction(prec)
            if bound < hodge.at(i) or bound < pre.at(i):
                raise PrecisionInsufficient(
                    f"coefficient of t^{i} vanishes mod p^{prec}; cannot certify against ordinate {hodge.at(i)}")
            points.append((i, bound, False))
    newton = lower_hull([(i, v) for i, v, _ in points])
    for i, v, _ in points:
        if v < pre.at(i) or v < hodge.at(i):
            return BoundCheck("VIOLATION", tuple(points), newton, pre, hodge, i)
    return BoundCheck("Holds", tuple(points), newton, pre, hodge)
