"""Finite fields F_p, F_q = F_{p^a} and extensions F_{q^m}.

Elements are plain ints in ``range(q)``: the base-p digits of the int are the
coefficient vector of the element in the basis 1, z, ..., z^{a-1}, where z is
a root of the field modulus.  Zero is 0, one is 1, and the prime subfield is
``range(p)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import CompositeP, TooLarge

P_MAX = 2 ** 20
Q_MAX = 2 ** 40
A_MAX = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p, coefficient lists low degree first ----------

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = _trim(f)
    g = _trim(g)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _trim(f)
    return f


def _pmulmod(f, g, mod, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    return _pmod(out, mod, p)


def _ppowmod(f, e, mod, p):
    result = [1]
    base = _pmod(f, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(f, g, p):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _psub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([(x - y) % p for x, y in zip(f, g)])


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of a monic f over F_p (root test plus gcd with x^{p^k} - x)."""
    f = _trim(f)
    a = len(f) - 1
    if a <= 1:
        return a == 1
    for c in range(p):
        if sum(fi * pow(c, i, p) for i, fi in enumerate(f)) % p == 0:
            return False
    x = [0, 1]
    xpk = x
    for _ in range(1, a // 2 + 1):
        xpk = _ppowmod(xpk, p, f, p)
        if len(_pgcd(f, _psub(xpk, x, p), p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree a (low-degree coefficients first)."""
    for low in itertools.product(range(p), repeat=a):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # impossible


@dataclass(frozen=True)
class FieldCtx:
    p: int
    a: int
    modulus: tuple[int, ...]  # monic, low degree first, length a + 1
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.a)

    # -- encoding ---------------------------------------------------------
    def to_vec(self, x: int) -> list[int]:
        out = []
        for _ in range(self.a):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def from_vec(self, v) -> int:
        x = 0
        for d in reversed(list(v)):
            x = x * self.p + d % self.p
        return x

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    @property
    def gen(self) -> int:
        """The class of z (a root of the modulus); for a = 1 this is 0 by convention."""
        return self.p if self.a > 1 else (-self.modulus[0]) % self.p

    # -- arithmetic -------------------------------------------------------
    def add(self, x: int, y: int) -> int:
        if self.a == 1:
            return (x + y) % self.p
        p = self.p
        out, scale = 0, 1
        while x or y:
            x, dx = divmod(x, p)
            y, dy = divmod(y, p)
            out += ((dx + dy) % p) * scale
            scale *= p
        return out

    def neg(self, x: int) -> int:
        if self.a == 1:
            return -x % self.p
        return self.from_vec([-d for d in self.to_vec(x)])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.a == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        prod = _pmulmod(_trim(self.to_vec(x)), _trim(self.to_vec(y)), list(self.modulus), self.p)
        return self.from_vec(prod)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x = self.inv(x)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.a == 1:
            return pow(x, -1, self.p)
        return self.pow(x, self.q - 2)

    def frobenius(self, x: int, k: int = 1) -> int:
        """x -> x^{p^k}."""
        return self.pow(x, self.p ** k)

    def trace_to_prime(self, x: int) -> int:
        """Absolute trace sum_{k < a} x^{p^k}, an element of F_p."""
        t = 0
        y = x
        for _ in range(self.a):
            t = self.add(t, y)
            y = self.frobenius(y)
        assert t < self.p, "trace left the prime field"
        return t

    @cached_property
    def basis_traces(self) -> tuple[int, ...]:
        """Tr(z^i) for i < a; the trace is the F_p-linear form with these values."""
        return tuple(self.trace_to_prime(self.p ** i) for i in range(self.a))

    # -- enumeration ------------------------------------------------------
    def elements(self):
        return iter(range(self.q))

    def partition(self, k: int) -> list[range]:
        return partition_range(self.q, k)

    @cached_property
    def primitive_element(self) -> int:
        order = self.q - 1
        factors = prime_factors(order) if order > 1 else []
        for g in range(1, self.q):
            if all(self.pow(g, order // ell) != 1 for ell in factors):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    @cached_property
    def arrays(self) -> "ArrayOps":
        return ArrayOps(self)


def partition_range(size: int, k: int) -> list[range]:
    """Split range(size) into k contiguous chunks (some possibly empty)."""
    k = max(1, k)
    bounds = [size * i // k for i in range(k + 1)]
    return [range(bounds[i], bounds[i + 1]) for i in range(k)]


@lru_cache(maxsize=None)
def make_field(p: int, a: int = 1) -> FieldCtx:
    if not isinstance(p, int) or not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p > P_MAX:
        raise TooLarge(f"p = {p} exceeds {P_MAX}")
    if not 1 <= a <= A_MAX or p ** a > Q_MAX:
        raise TooLarge(f"p^a = {p}^{a} outside supported range")
    return FieldCtx(p, a, smallest_irreducible(p, a))


def enumerate_field(fld) -> range:
    """All elements of a FieldCtx or ExtHandle, 0 first."""
    if isinstance(fld, ExtHandle):
        fld = fld.field
    return range(fld.q)


def trace_to_prime(fld, x: int) -> int:
    if isinstance(fld, ExtHandle):
        fld = fld.field
    return fld.trace_to_prime(x)


class ExtHandle:
    """F_{q^m} realised as the absolute field F_{p^{am}} with an embedding of F_q."""

    EMBED_SEARCH_MAX = 2 ** 24

    def __init__(self, base: FieldCtx, m: int):
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.base = base
        self.m = m
        self.field = make_field(base.p, base.a * m)
        self.q = self.field.q
        self._root = self._find_base_root()

    def _find_base_root(self) -> int:
        base, big = self.base, self.field
        if base.a == 1:
            return base.gen
        if big.q > self.EMBED_SEARCH_MAX:
            raise TooLarge("embedding search space too large")
        for z in range(big.p, big.q):
            acc = 0
            for c in reversed(base.modulus):
                acc = big.add(big.mul(acc, z), c)
            if acc == 0:
                return z
        raise AssertionError("base modulus has no root in the extension")

    @cached_property
    def embedding_table(self) -> np.ndarray:
        table = np.zeros(self.base.q, dtype=np.int64)
        for x in range(self.base.q):
            table[x] = self.embed(x)
        return table

    def embed(self, x: int) -> int:
        if self.base.a == 1:
            return x
        big = self.field
        out = 0
        power = 1
        for d in self.base.to_vec(x):
            if d:
                out = big.add(out, big.mul(d, power))
            power = big.mul(power, self._root)
        return out

    def relative_trace(self, x: int) -> int:
        """Tr_{F_{q^m}/F_q}(x) as an element of the embedded F_q."""
        big = self.field
        t, y = 0, x
        for _ in range(self.m):
            t = big.add(t, y)
            y = big.pow(y, self.base.q)
        return t

    @cached_property
    def modulus_over_base(self) -> tuple[int, ...]:
        """Minimal polynomial over F_q (low degree first, base encoding) of the absolute generator."""
        big = self.field
        g = big.primitive_element if big.a == 1 else big.gen
        conj = [big.pow(g, self.base.q ** k) for k in range(self.m)]
        poly = [1]
        for c in conj:
            nxt = [0] * (len(poly) + 1)
            for i, pi in enumerate(poly):
                nxt[i + 1] = big.add(nxt[i + 1], pi)
                nxt[i] = big.sub(nxt[i], big.mul(c, pi))
            poly = nxt
        back = {self.embed(x): x for x in range(self.base.q)}
        return tuple(back[c] for c in poly)


class ArrayOps:
    """Vectorised arithmetic over one field, backed by exp/log tables."""

    def __init__(self, fld: FieldCtx):
        self.field = fld
        p, a, q = fld.p, fld.a, fld.q
        self.p, self.a, self.q = p, a, q
        self.powers = p ** np.arange(a, dtype=np.int64)
        self.digits_table = (np.arange(q, dtype=np.int64)[:, None] // self.powers) % p
        self.exp = self._build_exp()
        self.log = np.zeros(q, dtype=np.int64)
        self.log[self.exp[: q - 1]] = np.arange(q - 1, dtype=np.int64)
        self.trace_vec = np.array(fld.basis_traces, dtype=np.int64)

    def _mul_const_matrix(self, c: int) -> np.ndarray:
        fld = self.field
        rows = [fld.to_vec(fld.mul(c, self.p ** i)) for i in range(self.a)]
        return np.array(rows, dtype=np.int64)

    def _build_exp(self) -> np.ndarray:
        q = self.q
        g = self.field.primitive_element
        exp = np.empty(2 * (q - 1), dtype=np.int64)
        exp[0] = 1
        filled = 1
        gpow = g
        while filled < q - 1:
            take = min(filled, q - 1 - filled)
            block = self.digits_table[exp[:take]] @ self._mul_const_matrix(gpow) % self.p
            exp[filled: filled + take] = block @ self.powers
            filled += take
            gpow = self.field.mul(gpow, gpow)
        exp[q - 1:] = exp[: q - 1]
        return exp

    def add(self, x, y):
        if self.a == 1:
            return (x + y) % self.p
        return ((self.digits_table[x] + self.digits_table[y]) % self.p) @ self.powers

    def neg(self, x):
        if self.a == 1:
            return (-x) % self.p
        return ((-self.digits_table[x]) % self.p) @ self.powers

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.a == 1:
            return (x * y) % self.p
        out = self.exp[self.log[x] + self.log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def trace(self, x):
        """Absolute trace to F_p, vectorised through the F_p-linear form."""
        if self.a == 1:
            return np.asarray(x) % self.p
        return (self.digits_table[x] @ self.trace_vec) % self.p

    def eval_poly(self, terms, coords):
        """Evaluate sum c * x^a at many points.

        terms: list of (coeff, exponent tuple) with coeff in this field.
        coords: list of int arrays, one per variable, all the same shape.
        """
        shape = np.shape(coords[0])
        acc = np.zeros(shape, dtype=np.int64)
        if not terms:
            return acc
        if self.a == 1:
            # direct modular powers are cheaper than table lookups in F_p
            p = self.p
            pow_cache = {}
            for c, exps in terms:
                val = np.full(shape, c % p, dtype=np.int64)
                for i, e in enumerate(exps):
                    if e:
                        key = (i, e)
                        if key not in pow_cache:
                            pw = np.ones(shape, dtype=np.int64)
                            base = coords[i] % p
                            for _ in range(e):
                                pw = pw * base % p
                            pow_cache[key] = pw
                        val = val * pow_cache[key] % p
                acc = (acc + val) % p
            return acc
        qm1 = self.q - 1
        logs = [self.log[c] for c in coords]
        zeros = [c == 0 for c in coords]
        for c, exps in terms:
            if c == 0:
                continue
            lg = np.full(shape, int(self.log[c]), dtype=np.int64)
            dead = np.zeros(shape, dtype=bool)
            for i, e in enumerate(exps):
                if e:
                    lg = lg + e * logs[i]
                    dead |= zeros[i]
            val = np.where(dead, 0, self.exp[lg % qm1])
            acc = self.add(acc, val)
        return acc
