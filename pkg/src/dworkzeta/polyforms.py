"""Bigraded polynomial differential forms over F_q.

Variables are x_0..x_n and y_1..y_r.  A monomial form is stored as a key
``(a, b, mask)``: exponent tuples for x and y, and a bitmask over the n+1+r
differential slots dx_0 < ... < dx_n < dy_1 < ... < dy_r.  Slot s <= n is
dx_s, slot n+j is dy_j.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import InputError
from .field_tower import FieldCtx

EXP_MAX = 2 ** 16


@dataclass(frozen=True)
class VarietySpec:
    """f_1, ..., f_r homogeneous in x_0..x_n over ``field``.

    ``polys[j]`` is a tuple of ``(exponents, coeff)`` pairs with nonzero
    coefficients, sorted by exponent.
    """

    field: FieldCtx
    n: int
    r: int
    degrees: tuple[int, ...]
    polys: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise InputError(f"need 1 <= r <= n, got n={self.n}, r={self.r}")
        if len(self.degrees) != self.r or len(self.polys) != self.r:
            raise InputError("number of degrees/polynomials must equal r")
        for j, (d, poly) in enumerate(zip(self.degrees, self.polys)):
            if d < 1:
                raise InputError(f"f_{j + 1} must be nonconstant (degree {d})")
            if not poly:
                raise InputError(f"f_{j + 1} is zero")
            for exps, c in poly:
                if len(exps) != self.n + 1:
                    raise InputError(f"f_{j + 1}: exponent vector {list(exps)} has length {len(exps)}, expected {self.n + 1}")
                if any(e < 0 or e >= EXP_MAX for e in exps):
                    raise InputError(f"f_{j + 1}: exponent out of range in {list(exps)}")
                if sum(exps) != d:
                    raise InputError(f"f_{j + 1}: term {list(exps)} has degree {sum(exps)}, expected {d}")
                if not 0 < c < self.field.q:
                    raise InputError(f"f_{j + 1}: coefficient {c} is not a nonzero element of F_{self.field.q}")

    @classmethod
    def from_terms(cls, field: FieldCtx, n: int, polys, degrees=None, label: str = "") -> "VarietySpec":
        """Build from per-polynomial iterables of (coeff, exponents) with integer coefficients.

        Coefficients are reduced into F_q (ints >= q are rejected rather than
        guessed; negative ints and ints below p act through the prime field).
        Repeated exponents are summed.
        """
        packed = []
        for poly in polys:
            acc: dict[tuple[int, ...], int] = {}
            for c, exps in poly:
                exps = tuple(int(e) for e in exps)
                c = int(c)
                if field.a == 1:
                    c %= field.p
                elif c < 0:
                    c = field.neg(field.from_int(-c))
                elif c >= field.q:
                    raise InputError(f"coefficient {c} does not encode an element of F_{field.q}")
                acc[exps] = field.add(acc.get(exps, 0), c)
            packed.append(tuple(sorted((e, c) for e, c in acc.items() if c)))
        if degrees is None:
            degrees = [sum(poly[0][0]) if poly else 0 for poly in packed]
        return cls(field, n, len(packed), tuple(degrees), tuple(packed), label)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def nslots(self) -> int:
        return self.n + 1 + self.r

    @property
    def top_mask(self) -> int:
        return (1 << self.nslots) - 1

    @property
    def exceptional(self) -> bool:
        prod = 1
        for d in self.degrees:
            prod *= d
        return prod % self.p == 0 and (self.n + self.r) % 2 == 1

    def poly(self, j: int) -> dict[tuple[int, ...], int]:
        return dict(self.polys[j])

    @cached_property
    def dF_components(self) -> tuple[tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...], ...]:
        """Coefficient of each slot in dF, as tuples of (a, b, coeff)."""
        fld = self.field
        n, r = self.n, self.r
        comps = []
        for i in range(n + 1):
            acc: dict = {}
            for j in range(r):
                b = tuple(1 if t == j else 0 for t in range(r))
                for exps, c in self.polys[j]:
                    if exps[i] == 0:
                        continue
                    a = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                    cc = fld.mul(c, fld.from_int(exps[i]))
                    if cc:
                        key = (a, b)
                        acc[key] = fld.add(acc.get(key, 0), cc)
            comps.append(tuple((a, b, c) for (a, b), c in sorted(acc.items()) if c))
        zero_b = (0,) * r
        for j in range(r):
            comps.append(tuple((exps, zero_b, c) for exps, c in self.polys[j]))
        return tuple(comps)


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_slots(mask: int, nslots: int) -> list[int]:
    return [s for s in range(nslots) if mask >> s & 1]


def bidegree(spec: VarietySpec, a, b, mask: int) -> tuple[int, int]:
    """(e1, e2) of x^a y^b dx_I dy_J: x, dx weigh (1, 0); y_j, dy_j weigh (-d_j, 1)."""
    n1 = spec.n + 1
    l = popcount(mask & ((1 << n1) - 1))
    dys = [j for j in range(spec.r) if mask >> (n1 + j) & 1]
    e1 = sum(a) + l - sum(bj * dj for bj, dj in zip(b, spec.degrees)) - sum(spec.degrees[j] for j in dys)
    e2 = sum(b) + len(dys)
    return e1, e2


def _add_into(acc: dict, key, c: int, fld: FieldCtx) -> None:
    v = fld.add(acc.get(key, 0), c)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class BiForm:
    """Immutable sparse form; ``terms`` maps (a, b, mask) -> nonzero F_q coefficient."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: VarietySpec, terms: Mapping | None = None):
        fld = spec.field
        clean = {}
        for key, c in (terms or {}).items():
            a, b, mask = key
            if len(a) != spec.n + 1 or len(b) != spec.r or not 0 <= mask <= spec.top_mask:
                raise ValueError(f"malformed term key {key}")
            if c % fld.q if fld.a == 1 else c:
                clean[(tuple(a), tuple(b), mask)] = c % fld.p if fld.a == 1 else c
        degs = {popcount(k[2]) for k in clean}
        if len(degs) > 1:
            raise ValueError(f"mixed form degrees {sorted(degs)} in one BiForm")
        self.spec = spec
        self.terms = clean

    @classmethod
    def monomial(cls, spec: VarietySpec, a, b, slots=(), coeff: int = 1) -> "BiForm":
        """Coefficient times x^a y^b dz_{s1} ... dz_{sk}, slots given in any order (sign applied)."""
        mask = 0
        sign = 1
        for s in slots:
            if mask >> s & 1:
                return cls(spec)
            if popcount(mask >> (s + 1)) % 2:
                sign = -sign
            mask |= 1 << s
        c = coeff if sign == 1 else spec.field.neg(coeff)
        return cls(spec, {(tuple(a), tuple(b), mask): c})

    @property
    def degree(self) -> int | None:
        for _, _, mask in self.terms:
            return popcount(mask)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiForm) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "BiForm") -> "BiForm":
        fld = self.spec.field
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c, fld)
        return BiForm(self.spec, acc)

    def __neg__(self) -> "BiForm":
        fld = self.spec.field
        return BiForm(self.spec, {k: fld.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def scale(self, c: int) -> "BiForm":
        fld = self.spec.field
        return BiForm(self.spec, {k: fld.mul(c, v) for k, v in self.terms.items()})

    def bidegrees(self) -> set[tuple[int, int]]:
        return {bidegree(self.spec, a, b, m) for a, b, m in self.terms}

    def __repr__(self):
        return f"BiForm({format_form(self)})"


def dF(spec: VarietySpec) -> BiForm:
    fld = spec.field
    acc: dict = {}
    for s, comp in enumerate(spec.dF_components):
        for a, b, c in comp:
            _add_into(acc, (a, b, 1 << s), c, fld)
    return BiForm(spec, acc)


def _addvec(u, v):
    return tuple(x + y for x, y in zip(u, v))


def wedge(omega1: BiForm, omega2: BiForm) -> BiForm:
    """omega1 ^ omega2 with the canonical slot ordering."""
    spec = omega1.spec
    fld = spec.field
    acc: dict = {}
    for (a1, b1, m1), c1 in omega1.terms.items():
        for (a2, b2, m2), c2 in omega2.terms.items():
            if m1 & m2:
                continue
            # sign of merging sorted m1 then sorted m2: count pairs (s in m1, t in m2) with s > t
            inv = 0
            for t in mask_slots(m2, spec.nslots):
                inv += popcount(m1 >> (t + 1))
            c = fld.mul(c1, c2)
            if inv % 2:
                c = fld.neg(c)
            _add_into(acc, (_addvec(a1, a2), _addvec(b1, b2), m1 | m2), c, fld)
    return BiForm(spec, acc)


def wedge_dF(omega: BiForm) -> BiForm:
    """dF ^ omega."""
    spec = omega.spec
    fld = spec.field
    comps = spec.dF_components
    acc: dict = {}
    for (a, b, mask), c in omega.terms.items():
        for s in range(spec.nslots):
            if mask >> s & 1:
                continue
            below = popcount(mask & ((1 << s) - 1))
            sc = fld.neg(c) if below % 2 else c
            newmask = mask | (1 << s)
            for a2, b2, c2 in comps[s]:
                _add_into(acc, (_addvec(a, a2), _addvec(b, b2), newmask), fld.mul(sc, c2), fld)
    return BiForm(spec, acc)


def theta(omega: BiForm) -> BiForm:
    """Contraction: dx_i -> x_i, dy_j -> -d_j y_j, alternating in slot position."""
    spec = omega.spec
    fld = spec.field
    n1 = spec.n + 1
    acc: dict = {}
    for (a, b, mask), c in omega.terms.items():
        for pos, s in enumerate(mask_slots(mask, spec.nslots)):
            newmask = mask & ~(1 << s)
            if s < n1:
                w = c
                a2 = a[:s] + (a[s] + 1,) + a[s + 1:]
                b2 = b
            else:
                j = s - n1
                w = fld.mul(c, fld.neg(fld.from_int(spec.degrees[j])))
                a2 = a
                b2 = b[:j] + (b[j] + 1,) + b[j + 1:]
            if pos % 2:
                w = fld.neg(w)
            _add_into(acc, (a2, b2, newmask), w, fld)
    return BiForm(spec, acc)


# -- monomial enumeration ---------------------------------------------------

def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Exponent tuples of the given total, in decreasing lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def weighted_compositions(total: int, weights) -> Iterator[tuple[int, ...]]:
    """Tuples v >= 0 with sum v_j w_j == total, decreasing lex order."""
    weights = tuple(weights)
    if not weights:
        if total == 0:
            yield ()
        return
    w0 = weights[0]
    for first in range(total // w0, -1, -1):
        for rest in weighted_compositions(total - first * w0, weights[1:]):
            yield (first,) + rest


# -- text serialisation -----------------------------------------------------

def format_monomial(a, b) -> str:
    parts = [f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(a) if e]
    parts += [f"y{j + 1}^{e}" if e > 1 else f"y{j + 1}" for j, e in enumerate(b) if e]
    return "*".join(parts) if parts else "1"


def format_mask(spec: VarietySpec, mask: int) -> str:
    n1 = spec.n + 1
    names = [f"dx{s}" if s < n1 else f"dy{s - n1 + 1}" for s in mask_slots(mask, spec.nslots)]
    return "".join(names)


def format_form(omega: BiForm) -> str:
    if omega.is_zero():
        return "0"
    out = []
    for (a, b, mask), c in sorted(omega.terms.items(), key=lambda kv: (kv[0][2], kv[0][1], kv[0][0]), reverse=True):
        mono = format_monomial(a, b)
        d = format_mask(omega.spec, mask)
        body = "*".join(x for x in (mono if mono != "1" or not d else "", d) if x) or "1"
        out.append(f"{c}*{body}")
    return " + ".join(out)


def format_poly(n: int, poly) -> str:
    """``coeff*x0^a0*...`` terms joined by ' + '."""
    terms = []
    for exps, c in poly:
        mono = format_monomial(exps, ())
        terms.append(f"{c}" if mono == "1" else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"^\s*(-?\d+)?\s*\*?\s*(.*)$")


def parse_poly(text: str, n: int) -> list[tuple[int, tuple[int, ...]]]:
    """Inverse of :func:`format_poly` (also accepts '-' separated terms)."""
    out = []
    text = text.replace("-", "+-").strip()
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            continue
        sign = 1
        if raw.startswith("-"):
            sign = -1
            raw = raw[1:].strip()
        factors = [f.strip() for f in raw.split("*") if f.strip()]
        coeff = 1
        exps = [0] * (n + 1)
        for f in factors:
            if f.isdigit():
                coeff *= int(f)
                continue
            m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", f)
            if not m:
                raise InputError(f"cannot parse factor {f!r}")
            i = int(m.group(1))
            if i > n:
                raise InputError(f"variable x{i} out of range for n={n}")
            exps[i] += int(m.group(2) or 1)
        out.append((sign * coeff, tuple(exps)))
    return out
