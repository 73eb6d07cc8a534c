"""P(t) from point counts, and Newton/Hodge polygon comparison.

Everything here is exact: power series over Fraction, polygons with
Fraction vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundViolation, DegreeMismatch, NonIntegerCoefficient
from .padic import ord_p


# -- truncated power series over Q --------------------------------------------

def series_mul(a, b, order: int):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def series_exp(a, order: int):
    """exp(a) for a with a[0] = 0, via n e_n = sum_k k a_k e_{n-k}."""
    if a and a[0]:
        raise ValueError("exp needs zero constant term")
    a = list(a) + [Fraction(0)] * (order + 1 - len(a))
    e = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        e[n] = sum(k * a[k] * e[n - k] for k in range(1, n + 1)) / n
    return e


def series_log_one_minus(c: int, order: int):
    """log(1 - c t) = -sum c^m t^m / m."""
    return [Fraction(0)] + [Fraction(-(c ** m), m) for m in range(1, order + 1)]


def series_inverse(a, order: int):
    if a[0] == 0:
        raise ZeroDivisionError("series not invertible")
    a = list(a) + [Fraction(0)] * (order + 1 - len(a))
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1) / a[0]
    for n in range(1, order + 1):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, n + 1)) / a[0]
    return out


def series_pow(a, e: int, order: int):
    """a^e for integer e (negative allowed when a[0] != 0)."""
    base = a if e >= 0 else series_inverse(a, order)
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(abs(e)):
        out = series_mul(out, base, order)
    return out


def poly_scale_var(coeffs, c: int):
    """P(t) -> P(c t)."""
    return [x * c ** i for i, x in enumerate(coeffs)]


# -- P(t) ---------------------------------------------------------------------

@dataclass(frozen=True)
class PPoly:
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return sum(c * t ** i for i, c in enumerate(self.coeffs))

    def scaled(self, c: int) -> "PPoly":
        return PPoly(tuple(poly_scale_var(self.coeffs, c)))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        return " + ".join(parts) or "0"


def deligne_bound(D: int, i: int, q: int, weight: int) -> int:
    """ceil(C(D,i) q^{i*weight/2}) for reciprocal roots of absolute value q^{weight/2}."""
    num = math.comb(D, i)
    if (i * weight) % 2 == 0:
        return num * q ** (i * weight // 2)
    x = num * num * q ** (i * weight)
    s = math.isqrt(x)
    return s if s * s == x else s + 1


def extract_P(projective_counts: dict, D: int, q: int, n: int, r: int) -> PPoly:
    """P(t) of degree D from N_1..N_D.

    Z(t) = P(t)^{(-1)^{n-r-1}} / prod_{i=0}^{n-r} (1 - q^i t), so
    (-1)^{n-r-1} log P = sum N_m t^m/m + sum_i log(1 - q^i t).
    """
    missing = [m for m in range(1, D + 1) if m not in projective_counts]
    if missing:
        raise ValueError(f"need N_m for m = {missing}")
    logp = [Fraction(0)] + [Fraction(projective_counts[m], m) for m in range(1, D + 1)]
    for i in range(n - r + 1):
        for k, v in enumerate(series_log_one_minus(q ** i, D)):
            logp[k] += v
    if (n - r - 1) % 2:
        logp = [-x for x in logp]
    coeffs = series_exp(logp, D)
    out = []
    for i, c in enumerate(coeffs):
        if c.denominator != 1:
            raise NonIntegerCoefficient(
                f"coefficient of t^{i} is {c}: wrong h_e (degree {D}), non-smooth input, or a counting bug")
        out.append(int(c))
    weight = n - r
    for i, c in enumerate(out):
        if abs(c) > deligne_bound(D, i, q, weight):
            raise BoundViolation(
                f"|c_{i}| = {abs(c)} exceeds {deligne_bound(D, i, q, weight)}: wrong h_e, non-smooth input, or a counting bug")
    return PPoly(tuple(out))


def counts_from_P(P: PPoly, q: int, n: int, r: int, order: int) -> dict:
    """Inverse of extract_P: N_m for m = 1..order from P and the denominator."""
    sign = -1 if (n - r - 1) % 2 else 1
    coeffs = [Fraction(c) for c in P.coeffs] + [Fraction(0)] * order
    logp = _series_log(coeffs[: order + 1], order)
    out = {}
    for m in range(1, order + 1):
        val = sign * logp[m]
        for i in range(n - r + 1):
            val += Fraction(q ** (i * m), m)
        out[m] = val * m
    return out


def _series_log(a, order: int):
    """log(a) for a[0] = 1, via a' = a * (log a)'."""
    if a[0] != 1:
        raise ValueError("log needs constant term 1")
    a = list(a) + [Fraction(0)] * (order + 1 - len(a))
    lg = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        # n a_n = sum_{k=1}^{n} k lg_k a_{n-k}
        s = n * a[n] - sum(k * lg[k] * a[n - k] for k in range(1, n))
        lg[n] = s / n
    return lg


# -- polygons -----------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[Fraction, Fraction], ...]

    @property
    def length(self) -> Fraction:
        return self.vertices[-1][0]

    def slopes(self) -> list[Fraction]:
        """Slope multiset, one entry per unit of abscissa."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            s = (y1 - y0) / (x1 - x0)
            out.extend([s] * int(x1 - x0))
        return out

    def at(self, x) -> Fraction:
        x = Fraction(x)
        vs = self.vertices
        if x < vs[0][0] or x > vs[-1][0]:
            raise ValueError("abscissa outside polygon")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return vs[-1][1]

    def __str__(self):
        return " ".join(f"({x},{y})" for x, y in self.vertices)


def lower_hull(points) -> Polygon:
    """Lower convex hull of points sorted by abscissa (monotone chain)."""
    pts = sorted((Fraction(x), Fraction(y)) for x, y in points)
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return Polygon(tuple(hull))


def newton_polygon(P: PPoly, q: int) -> Polygon:
    """Newton polygon with respect to ord_q (ord_q q = 1)."""
    p, a = _prime_power(q)
    pts = [(i, Fraction(ord_p(c, p), a)) for i, c in enumerate(P.coeffs) if c]
    if not pts:
        raise ValueError("zero polynomial")
    return lower_hull(pts)


def polygon_from_slopes(slopes) -> Polygon:
    pts = [(Fraction(0), Fraction(0))]
    x, y = Fraction(0), Fraction(0)
    for s in sorted(Fraction(s) for s in slopes):
        x += 1
        y += s
        pts.append((x, y))
    return lower_hull(pts)


def hodge_polygon(h: dict, r: int) -> Polygon:
    """Slope e - r with multiplicity h_e."""
    slopes = []
    for e in sorted(h):
        if h[e] < 0:
            raise ValueError(f"negative h_{e}")
        slopes.extend([e - r] * h[e])
    return polygon_from_slopes(slopes)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            a = 0
            while q % p == 0:
                q //= p
                a += 1
            if q != 1:
                raise ValueError("not a prime power")
            return p, a
    raise ValueError("q must be >= 2")


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Holds", "HoldsWithEquality", "VIOLATION"
    abscissa: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.kind != "VIOLATION"

    def __str__(self):
        return self.kind if self.abscissa is None else f"{self.kind}({self.abscissa})"


HOLDS = Verdict("Holds")
HOLDS_EQ = Verdict("HoldsWithEquality")


def lies_on_or_above(upper: Polygon, lower: Polygon) -> Verdict:
    """Does ``upper`` (a Newton polygon) lie on or above ``lower`` (a Hodge polygon)?"""
    if upper.length != lower.length:
        raise DegreeMismatch(f"polygons end at {upper.length} and {lower.length}")
    xs = sorted({x for x, _ in upper.vertices} | {x for x, _ in lower.vertices})
    equal = True
    for x in xs:
        a, b = upper.at(x), lower.at(x)
        if a < b:
            return Verdict("VIOLATION", x)
        if a != b:
            equal = False
    return HOLDS_EQ if equal else HOLDS


@dataclass(frozen=True)
class ZetaReport:
    P: PPoly
    newton: Polygon
    hodge: Polygon
    verdict: Verdict


def assemble(projective_counts: dict, h: dict, q: int, n: int, r: int) -> ZetaReport:
    D = sum(h.values())
    P = extract_P(projective_counts, D, q, n, r)
    newton = newton_polygon(P, q)
    hodge = hodge_polygon(h, r)
    return ZetaReport(P, newton, hodge, lies_on_or_above(newton, hodge))
