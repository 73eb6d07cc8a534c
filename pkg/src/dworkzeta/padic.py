"""Truncated arithmetic in Z_p[zeta_p] and the Dwork constant gamma.

Elements of Z_p[zeta_p] are stored in the basis 1, zeta, ..., zeta^{p-2}
with coefficients mod p^K.  The uniformizer is lam = zeta - 1 and
valuations are normalized by ord p = 1, so ord lam = 1/(p-1).

gamma is the root of sum_i t^{p^i}/p^i = 0 with gamma = lam mod lam^2.
Since that series is t times a series in t^{p-1}, rho = gamma^{p-1} is a
p-adic integer (rho = p*sigma with sigma = -1 mod p); most of the Frobenius
computation only ever needs rho, never gamma itself.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import NoRootFound, PrecisionExhausted


def ord_p(x: int, p: int) -> int | float:
    """Exact p-adic valuation of a rational integer (inf for 0)."""
    if x == 0:
        return math.inf
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def ord_p_fraction(x: Fraction, p: int) -> int | float:
    if x == 0:
        return math.inf
    return ord_p(x.numerator, p) - ord_p(x.denominator, p)


def fraction_mod(x: Fraction, mod: int) -> int:
    """Image of a p-integral rational in Z/mod."""
    return x.numerator * pow(x.denominator, -1, mod) % mod


def teichmuller(a: int, p: int, K: int) -> int:
    """Teichmuller lift of a mod p, as an integer mod p^K."""
    mod = p ** K
    t = a % p
    if t == 0:
        return 0
    for _ in range(K):
        t = pow(t, p, mod)
    return t


@lru_cache(maxsize=None)
def artin_hasse_coeffs(p: int, n_max: int) -> tuple[Fraction, ...]:
    """Coefficients of E(t) = exp(sum_i t^{p^i}/p^i) up to t^{n_max}.

    From E'/E = sum_i t^{p^i - 1}: n a_n = sum_{p^i <= n} a_{n - p^i}.
    """
    a = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = Fraction(0)
        pk = 1
        while pk <= n:
            s += a[n - pk]
            pk *= p
        a.append(s / n)
    return tuple(a)


class PadicScalar:
    """Element of Z_p[zeta_p] / p^K."""

    __slots__ = ("p", "K", "c")

    def __init__(self, p: int, K: int, coeffs):
        self.p = p
        self.K = K
        mod = p ** K
        c = [int(x) % mod for x in coeffs]
        if len(c) != p - 1:
            raise ValueError(f"need {p - 1} coefficients, got {len(c)}")
        self.c = tuple(c)

    # constructors
    @classmethod
    def from_int(cls, p: int, K: int, x: int) -> "PadicScalar":
        return cls(p, K, [x] + [0] * (p - 2))

    @classmethod
    def zeta(cls, p: int, K: int) -> "PadicScalar":
        if p == 2:
            return cls(p, K, [-1])
        return cls(p, K, [0, 1] + [0] * (p - 3))

    @classmethod
    def lam(cls, p: int, K: int) -> "PadicScalar":
        return cls.zeta(p, K) - cls.from_int(p, K, 1)

    @property
    def mod(self) -> int:
        return self.p ** self.K

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if (other.p, other.K) != (self.p, self.K):
                raise ValueError("mixed precision or prime")
            return other
        return PadicScalar.from_int(self.p, self.K, int(other))

    def __add__(self, other):
        o = self._coerce(other)
        return PadicScalar(self.p, self.K, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(self.p, self.K, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PadicScalar):
            return PadicScalar(self.p, self.K, [x * int(other) for x in self.c])
        o = self._coerce(other)
        p = self.p
        prod = [0] * p
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        prod[(i + j) % p] += x * y
        # zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        top = prod[p - 1]
        return PadicScalar(p, self.K, [prod[i] - top for i in range(p - 1)])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PadicScalar.from_int(self.p, self.K, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = PadicScalar.from_int(self.p, self.K, other)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return (self.p, self.K, self.c) == (other.p, other.K, other.c)

    def __hash__(self):
        return hash((self.p, self.K, self.c))

    def __repr__(self):
        if self.in_Zp():
            return f"PadicScalar({self.c[0]} mod {self.p}^{self.K})"
        return f"PadicScalar({list(self.c)} mod {self.p}^{self.K})"

    def is_zero(self) -> bool:
        return not any(self.c)

    def in_Zp(self) -> bool:
        return not any(self.c[1:])

    def as_int(self) -> int:
        if not self.in_Zp():
            raise ValueError("element is not in Z_p")
        return self.c[0]

    def with_precision(self, K: int) -> "PadicScalar":
        if K > self.K:
            raise PrecisionExhausted(f"cannot raise precision from {self.K} to {K}")
        return PadicScalar(self.p, K, self.c)

    def lambda_coords(self) -> list[int]:
        """Coordinates in the basis 1, lam, ..., lam^{p-2} (a unimodular change of basis)."""
        p, mod = self.p, self.mod
        if p == 2:
            return list(self.c)
        out = [0] * (p - 1)
        for i, a in enumerate(self.c):
            if a:
                for j in range(i + 1):
                    out[j] += a * math.comb(i, j)
        return [x % mod for x in out]

    def valuation(self) -> Fraction | float:
        """Exact ord (ord p = 1) when the element is nonzero mod p^K, else inf.

        The powers lam^j, j < p-1, have distinct valuations mod 1, so the
        valuation of a sum is the minimum over its lam-coordinates.
        """
        best = math.inf
        for j, b in enumerate(self.lambda_coords()):
            if b:
                v = ord_p(b, self.p) + Fraction(j, self.p - 1)
                best = min(best, v)
        return best

    def inverse(self) -> "PadicScalar":
        """Inverse of a unit, by Newton iteration x <- x(2 - a x)."""
        lc = self.lambda_coords()
        if lc[0] % self.p == 0:
            raise ZeroDivisionError("element is not a unit")
        x = PadicScalar.from_int(self.p, self.K, pow(lc[0], -1, self.p))
        prec = Fraction(1, self.p - 1)
        while prec < self.K:
            x = x * (2 - self * x)
            prec *= 2
        x = x * (2 - self * x)
        return x


def _lambda_power_over_p(p: int, K: int) -> PadicScalar:
    """eps = lam^{p-1} / p, a unit congruent to -1 mod lam."""
    big = PadicScalar.lam(p, K + 1) ** (p - 1)
    coeffs = []
    for x in big.c:
        if x % p:
            raise AssertionError("lam^(p-1) not divisible by p")
        coeffs.append(x // p)
    return PadicScalar(p, K, coeffs)


def _series_terms(p: int, K: int) -> list[tuple[int, int]]:
    """Pairs (i, Q_i) with Q_i = (p^i - 1)/(p - 1), kept while p^{Q_i - i} can be nonzero mod p^K."""
    out = []
    i = 0
    while True:
        Q = (p ** i - 1) // (p - 1)
        if Q - i >= K:
            break
        out.append((i, Q))
        i += 1
    return out


@lru_cache(maxsize=None)
def _gamma_unit(p: int, K: int) -> PadicScalar:
    """The unit w = gamma/lam mod p^K.

    Writing t = lam*w turns t^{p^i}/p^i into lam * p^{Q_i - i} eps^{Q_i} w^{p^i},
    so Newton runs on an integral series in w whose derivative is a unit.
    Every Teichmuller start c in 1..p-1 converges (to omega(c)*gamma); the
    search keeps the root attached to zeta_p, i.e. w = 1 mod lam.
    """
    eps = _lambda_power_over_p(p, K)
    terms = _series_terms(p, K)
    eps_pows = {Q: eps ** Q for _, Q in terms}

    def psi(w):
        s = PadicScalar.from_int(p, K, 0)
        for i, Q in terms:
            s = s + eps_pows[Q] * (w ** (p ** i)) * (p ** (Q - i))
        return s

    def dpsi(w):
        s = PadicScalar.from_int(p, K, 0)
        for i, Q in terms:
            s = s + eps_pows[Q] * (w ** (p ** i - 1)) * (p ** Q)
        return s

    roots = {}
    for c in range(1, p):
        w = PadicScalar.from_int(p, K, teichmuller(c, p, K))
        for _ in range(2 * K + 4):
            step = psi(w) * dpsi(w).inverse()
            if step.is_zero():
                break
            w = w - step
        if psi(w).is_zero():
            roots[c] = w
    if 1 not in roots:
        raise NoRootFound(f"Newton iteration for gamma did not converge (p={p}, K={K})")
    return roots[1]


@lru_cache(maxsize=None)
def gamma_root(p: int, K: int) -> PadicScalar:
    """gamma in Z_p[zeta_p] mod p^K: root of sum t^{p^i}/p^i with gamma = lam mod lam^2."""
    gamma = PadicScalar.lam(p, K + 1) * _gamma_unit(p, K + 1)
    gamma = gamma.with_precision(K)
    if gamma.valuation() != Fraction(1, p - 1):
        raise NoRootFound("root has the wrong valuation")
    return gamma


@lru_cache(maxsize=None)
def rho_sigma(p: int, K: int) -> tuple[int, int]:
    """(rho, sigma) mod p^K with rho = gamma^{p-1} = p*sigma.

    sigma solves sum_i p^{Q_i - i} sigma^{Q_i} = 0, a contraction around -1.
    """
    mod = p ** (K + 1)
    terms = _series_terms(p, K + 1)
    sigma = -1
    for _ in range(K + 2):
        rest = sum(pow(p, Q - i) * pow(sigma, Q, mod) for i, Q in terms if i >= 2)
        sigma = (-1 - rest) % mod
    return (p * sigma) % p ** K, sigma % p ** K


@lru_cache(maxsize=None)
def kappa(p: int, l: int, K: int) -> int:
    """kappa_l = gamma_l p^l / gamma^{p^l} in Z_p, mod p^K.

    Uses gamma_l = -sum_{i > l} gamma^{p^i}/p^i, so every term is integral:
    kappa_l = -sum_{i > l} p^{l - i + Q_i - Q_l} sigma^{Q_i - Q_l}, ord >= p^l - 1.
    """
    mod = p ** K
    _, sigma = rho_sigma(p, K)
    Ql = (p ** l - 1) // (p - 1)
    total = 0
    i = l + 1
    while True:
        Qi = (p ** i - 1) // (p - 1)
        e = l - i + Qi - Ql
        if e >= K:
            break
        total += pow(p, e) * pow(sigma, Qi - Ql, mod)
        i += 1
    return (-total) % mod


def gamma_l(p: int, l: int, K: int) -> PadicScalar:
    """gamma_l = sum_{i <= l} gamma^{p^i}/p^i, summed directly (no tail identity)."""
    Kw = K + 1
    w = _gamma_unit(p, Kw)
    eps = _lambda_power_over_p(p, Kw)
    s = PadicScalar.from_int(p, Kw, 0)
    for i in range(l + 1):
        Q = (p ** i - 1) // (p - 1)
        s = s + (eps ** Q) * (w ** (p ** i)) * (p ** (Q - i))
    return (PadicScalar.lam(p, Kw) * s).with_precision(K)


def splitting_coeffs(p: int, i_max: int, K: int) -> list[PadicScalar]:
    """lambda_0..lambda_{i_max}: coefficients of E(gamma t), lambda_i = AH_i gamma^i."""
    if Fraction(i_max, p - 1) >= K:
        raise PrecisionExhausted(f"lambda_{i_max} has ord >= {Fraction(i_max, p - 1)}, beyond precision {K}")
    ah = artin_hasse_coeffs(p, i_max)
    gamma = gamma_root(p, K)
    mod = p ** K
    out = []
    power = PadicScalar.from_int(p, K, 1)
    for i in range(i_max + 1):
        out.append(power * fraction_mod(ah[i], mod))
        power = power * gamma
    return out
