"""Small finite fields F_{p^m}.

Elements are stored in the polynomial basis over F_p and packed into a
single integer ``sum(c_i * p**i)``.  Moduli are chosen deterministically:
for each (p, m) the lexicographically least monic primitive polynomial that
is compatible with the moduli already chosen for every proper divisor of m
(the Conway compatibility condition, with a plain lexicographic order).
Compatibility makes the embeddings ``F_{p^d} -> F_{p^m}`` given by
``x -> x**((p^m - 1)/(p^d - 1))`` ring homomorphisms that compose along
divisor chains.

``FieldTables`` provides the log/Zech representation used by the
enumeration kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 2**24
MAX_ENUM_SIZE = 2**20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
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


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**e; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymulmod(a, b, f, p):
    m = len(f) - 1
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # f is monic
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
    return _trim(prod[:m])


def _polypowmod(a, e, f, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polyeval_mod(g, x, f, p):
    """g(x) mod f, with g given by coefficients over F_p (Horner)."""
    acc: list[int] = []
    for c in reversed(g):
        acc = _polymulmod(acc, x, f, p)
        if c:
            acc = (acc or [0])
            acc[0] = (acc[0] + c) % p
            acc = _trim(acc)
    return acc


def _digits(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(v % p)
        v //= p
    return out


@lru_cache(maxsize=None)
def conway_like_modulus(p: int, m: int) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_{m-1}, 1) of the chosen degree-m modulus."""
    n = p**m - 1
    exps = [n // r for r in prime_factors(n)] if n > 1 else []
    subs = [d for d in range(1, m) if m % d == 0]
    # enumerate (c_{m-1}, ..., c_0) lexicographically
    for v in range(p**m):
        low = list(reversed(_digits(v, p, m)))  # low[0] = c_0
        if low[0] == 0:
            continue
        f = low + [1]
        x = [0, 1] if m > 1 else [(-low[0]) % p]
        x = _trim(x)
        if _polypowmod(x, n, f, p) != [1]:
            continue
        if any(_polypowmod(x, e, f, p) == [1] for e in exps):
            continue
        ok = True
        for d in subs:
            g = conway_like_modulus(p, d)
            r = _polypowmod(x, n // (p**d - 1), f, p)
            if _polyeval_mod(list(g), r, f, p):
                ok = False
                break
        if ok:
            return tuple(f)
    raise FieldError(f"no compatible primitive modulus for ({p}, {m})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.p**self.m

    def __repr__(self):
        return f"F_{self.p}^{self.m}" if self.m > 1 else f"F_{self.p}"

    def element(self, value) -> "FieldElement":
        """From a packed integer in [0, p^m) or a coefficient sequence."""
        if isinstance(value, (list, tuple)):
            value = sum(int(c) % self.p * self.p**i for i, c in enumerate(value))
        if not 0 <= value < self.size:
            raise FieldError(f"{value} is not a packed element of {self!r}")
        return FieldElement(self, int(value))

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def gen(self):
        """The class of x, a generator of the unit group."""
        return FieldElement(self, self.p if self.m > 1 else (-self.modulus[0]) % self.p)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.size)]


def make_field(p: int, m: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not 1 <= m <= 16 or p**m > MAX_FIELD_SIZE:
        raise FieldError(f"field F_{p}^{m} outside supported range")
    return _make_field(p, m)


@lru_cache(maxsize=None)
def _make_field(p, m):
    return FieldSpec(p, m, conway_like_modulus(p, m))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(self.value, self.spec.p, self.spec.m))

    @classmethod
    def _from_coeffs(cls, spec, coeffs):
        v = 0
        for c in reversed(list(coeffs) + [0] * (spec.m - len(coeffs))):
            v = v * spec.p + c
        return cls(spec, v)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return self.spec.element(int(other) % self.spec.p)
        if other.spec != self.spec:
            raise FieldError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement._from_coeffs(
            self.spec, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement._from_coeffs(self.spec, [(-a) % p for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        s = self.spec
        prod = _polymulmod(_trim(list(self.coeffs)), _trim(list(other.coeffs)), list(s.modulus), s.p)
        return FieldElement._from_coeffs(s, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        s = self.spec
        if e < 0:
            return self.inverse() ** (-e)
        r = _polypowmod(_trim(list(self.coeffs)), e, list(s.modulus), s.p)
        return FieldElement._from_coeffs(s, r if e else [1])

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.spec.size - 2)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.spec!r}({list(self.coeffs)})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    if b is not None and a.spec != b.spec:
        raise FieldError("spec mismatch")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: FieldElement, k: int = 1, q: int | None = None) -> FieldElement:
    """x ** (q**k); q defaults to p."""
    q = x.spec.p if q is None else q
    if not x or x.spec.size == 2:
        return x
    return x ** pow(q, k, x.spec.size - 1)


def embed(x: FieldElement, target: FieldSpec) -> FieldElement:
    s = x.spec
    if s.p != target.p or target.m % s.m:
        raise FieldError(f"cannot embed {s!r} into {target!r}")
    if s == target:
        return x
    ratio = (target.size - 1) // (s.size - 1)
    r = target.gen() ** ratio
    acc = target.zero()
    for c in reversed(x.coeffs):
        acc = acc * r + c
    return acc


def norm_map(x: FieldElement, sub_degree: int, q: int | None = None) -> FieldElement:
    """x * x**(q**d): the norm from F_{q^{2d}} down to F_{q^d}."""
    if not x:
        raise FieldError("norm of zero")
    return x * frobenius(x, sub_degree, q)


def enumerate_units(spec: FieldSpec) -> list[FieldElement]:
    if spec.size > MAX_ENUM_SIZE:
        raise FieldError("field too large to enumerate")
    return [FieldElement(spec, v) for v in range(1, spec.size)]


class FieldTables:
    """Log/Zech tables for fast arithmetic on integer codes.

    Code 0 is the zero element, code ``k + 1`` is ``gen**k``.
    """

    def __init__(self, spec: FieldSpec):
        if spec.size > MAX_ENUM_SIZE:
            raise FieldError("field too large for tables")
        self.spec = spec
        p, m, n = spec.p, spec.m, spec.size
        self.order = n - 1
        exp = np.zeros(max(n - 1, 1), dtype=np.int64)
        log = np.full(n, -1, dtype=np.int64)
        g = spec.gen()
        cur = spec.one()
        for k in range(n - 1):
            exp[k] = cur.value
            log[cur.value] = k
            cur = cur * g
        self.exp = exp
        self.log = log
        zech = np.full(max(n - 1, 1), -1, dtype=np.int64)
        one_digits = 1
        for d in range(n - 1):
            v = _add_ints(int(exp[d]), one_digits, p, m)
            zech[d] = log[v] if v else -1
        self.zech = zech
        self.neg_one = self.code(-spec.one())

    def code(self, x: FieldElement) -> int:
        return 0 if x.value == 0 else int(self.log[x.value]) + 1

    def element(self, c: int) -> FieldElement:
        return self.spec.zero() if c == 0 else FieldElement(self.spec, int(self.exp[c - 1]))

    def frob_multiplier(self, q: int) -> int:
        return q % self.order if self.order > 1 else 1

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        d = (b - a) % self.order
        z = self.zech[d]
        if z < 0:
            return 0
        return (a - 1 + int(z)) % self.order + 1

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.order + 1

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (-(a - 1)) % self.order + 1

    def power(self, a, e):
        if a == 0:
            return 0 if e else 1
        return ((a - 1) * e) % self.order + 1


def _add_ints(a, b, p, m):
    if p == 2:
        return a ^ b
    out, mul = 0, 1
    for _ in range(m):
        out += ((a % p + b % p) % p) * mul
        a //= p
        b //= p
        mul *= p
    return out


@lru_cache(maxsize=None)
def field_tables(p: int, m: int) -> FieldTables:
    return FieldTables(make_field(p, m))
