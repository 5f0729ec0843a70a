"""Symbolic component groups Pi_w, their orders and irreducible-representation counts.

Pi_w is the group of points of H_w (the standard Levi of type K_w) fixed by
the twisted Frobenius h -> phi(yw h (yw)^-1).  The twist permutes the
diagonal blocks of H_w; following each block around its cycle gives either a
plain Frobenius return (a GL over an extension field) or a return through
the transpose-inverse duality (a unitary group).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Optional, Union

from .weyl import TYPE_A, TYPE_A_TWISTED, TYPE_C, WeylElement, cycle_decomposition
from .zipdata import Stratum, ZipDatum

DEFERRED = "= #conjugacy classes (deferred)"


class UnsupportedConfiguration(NotImplementedError):
    pass


def gl_order(k: int, Q: int) -> int:
    return prod(Q**k - Q**i for i in range(k))


def u_order(k: int, Q: int) -> int:
    return Q ** (k * (k - 1) // 2) * prod(Q**i - (-1) ** i for i in range(1, k + 1))


def sp_order(k: int, Q: int) -> int:
    return Q ** (k * k) * prod(Q ** (2 * i) - 1 for i in range(1, k + 1))


def _fq(d: int) -> str:
    return "F_q" if d == 1 else f"F_{{q^{d}}}"


# -- atoms ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Atom:
    def order(self, q: int) -> int:
        raise NotImplementedError

    @property
    def abelian(self) -> bool:
        return False

    def to_dict(self) -> dict:
        d = {"atom": type(self).__name__}
        d.update(self.__dict__)
        return d


@dataclass(frozen=True, order=True)
class TorusRes(Atom):
    """Unit group of F_{q^d}."""
    d: int

    def order(self, q):
        return q**self.d - 1

    @property
    def abelian(self):
        return True

    def __str__(self):
        return f"{_fq(self.d)}^×"


@dataclass(frozen=True, order=True)
class NormKernel(Atom):
    """{x in F_{q^2d}^× : x^(q^d + 1) = 1}."""
    d: int

    def order(self, q):
        return q**self.d + 1

    @property
    def abelian(self):
        return True

    def __str__(self):
        return f"ker(N: {_fq(2 * self.d)}^× → {_fq(self.d)}^×)"


@dataclass(frozen=True, order=True)
class GLBlock(Atom):
    k: int
    d: int = 1

    def order(self, q):
        return gl_order(self.k, q**self.d)

    def __str__(self):
        return f"GL_{self.k}({_fq(self.d)})"


@dataclass(frozen=True, order=True)
class UBlock(Atom):
    """Unitary group U_k(F_{q^d}) relative to F_{q^2d}/F_{q^d}."""
    k: int
    d: int = 1

    def order(self, q):
        return u_order(self.k, q**self.d)

    def __str__(self):
        return f"U_{self.k}({_fq(self.d)})"


@dataclass(frozen=True, order=True)
class GUBlock(Atom):
    """Unitary similitudes GU_k(F_q); GU_0 is F_q^×."""
    k: int

    def order(self, q):
        return (q - 1) * u_order(self.k, q)

    @property
    def abelian(self):
        return self.k <= 1

    def __str__(self):
        return f"GU_{self.k}(F_q)"


@dataclass(frozen=True, order=True)
class SpBlock(Atom):
    k: int

    def order(self, q):
        return sp_order(self.k, q)

    def __str__(self):
        return f"Sp_{2 * self.k}(F_q)"


@dataclass(frozen=True, order=True)
class FullGroup(Atom):
    """G(F_q) for a central cocharacter."""
    family: str
    n: int

    def order(self, q):
        if self.family == TYPE_A:
            return gl_order(self.n, q)
        if self.family == TYPE_C:
            return sp_order(self.n, q)
        return (q - 1) * u_order(self.n, q)

    @property
    def abelian(self):
        return self.n == 1 and self.family != TYPE_C

    def __str__(self):
        name = {TYPE_A: "GL_{}", TYPE_C: "Sp_{}", TYPE_A_TWISTED: "GU_{}"}[self.family]
        return name.format(2 * self.n if self.family == TYPE_C else self.n) + "(F_q)"


def normalize(a: Atom) -> Optional[Atom]:
    """Rewrite rank-one blocks as tori; drop empty blocks."""
    if isinstance(a, GLBlock):
        if a.k == 0:
            return None
        if a.k == 1:
            return TorusRes(a.d)
    if isinstance(a, UBlock):
        if a.k == 0:
            return None
        if a.k == 1:
            return NormKernel(a.d)
    if isinstance(a, SpBlock) and a.k == 0:
        return None
    return a


def _sort_key(a: Atom):
    return (type(a).__name__, tuple(str(v) for v in a.__dict__.values()))


def canonical(atoms) -> tuple:
    out = [b for b in (normalize(a) for a in atoms) if b is not None]
    return tuple(sorted(out, key=_sort_key))


@dataclass(frozen=True)
class Extension:
    """1 -> kernel -> Pi -> quotient -> 1 (extension class not recorded)."""
    kernel: tuple
    quotient: Atom


@dataclass(frozen=True)
class GroupDescriptor:
    factors: tuple = ()
    extension: Optional[Extension] = None

    @classmethod
    def product(cls, atoms) -> "GroupDescriptor":
        return cls(canonical(atoms))

    @property
    def atoms(self) -> tuple:
        out = list(self.factors)
        if self.extension is not None:
            out += list(self.extension.kernel) + [self.extension.quotient]
        return tuple(out)

    @property
    def is_abelian(self) -> bool:
        # extensions only arise for GU, where all-abelian atoms means H_w is a torus
        return all(a.abelian for a in self.atoms)

    def __str__(self):
        parts = []
        if self.factors:
            parts.append(" × ".join(_powers(self.factors)))
        if self.extension is not None:
            ker = " × ".join(_powers(self.extension.kernel)) or "1"
            parts.append(f"[{ker} ↪ · ↠ {self.extension.quotient}]")
        return " × ".join(parts) or "1"

    def to_dict(self) -> dict:
        out = {"factors": [a.to_dict() for a in self.factors]}
        if self.extension is not None:
            out["extension"] = {
                "kernel": [a.to_dict() for a in self.extension.kernel],
                "quotient": self.extension.quotient.to_dict(),
            }
        return out


def _powers(atoms) -> list[str]:
    out = []
    i = 0
    atoms = list(atoms)
    while i < len(atoms):
        j = i
        while j < len(atoms) and atoms[j] == atoms[i]:
            j += 1
        s = str(atoms[i])
        out.append(s if j - i == 1 else f"({s})^{j - i}")
        i = j
    return out


def order_at(g: GroupDescriptor, q: int) -> int:
    return prod(a.order(q) for a in g.atoms)


# -- torus fixed points -----------------------------------------------------

@dataclass(frozen=True)
class SignedMonomialAction:
    """Coordinate i is sent to coordinate perm[i] raised to sign[i] * q (0-based)."""
    perm: tuple[int, ...]
    signs: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a bijection")
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * len(self.perm))
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1 per coordinate")


def torus_fixed_points(act: SignedMonomialAction) -> GroupDescriptor:
    atoms = []
    seen = set()
    for i in range(len(act.perm)):
        if i in seen:
            continue
        d, sign, j = 0, 1, i
        while j not in seen:
            seen.add(j)
            sign *= act.signs[j]
            j = act.perm[j]
            d += 1
        atoms.append(TorusRes(d) if sign == 1 else NormKernel(d))
    return GroupDescriptor.product(atoms)


# -- Levi blocks -------------------------------------------------------------

def levi_blocks(degree: int, K) -> list[tuple[int, ...]]:
    """Diagonal blocks of the standard Levi of type K, as sorted index tuples."""
    parent = list(range(degree + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in K:
        for c in cycle_decomposition(s):
            for a in c[1:]:
                parent[find(a)] = find(c[0])
    groups: dict[int, list[int]] = {}
    for i in range(1, degree + 1):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(v) for v in groups.values())


def _image(perm: WeylElement, block) -> tuple:
    return tuple(sorted(perm(i) for i in block))


def _gl_descriptor(blocks, pi: WeylElement) -> GroupDescriptor:
    index = {b: i for i, b in enumerate(blocks)}
    torus = [b for b in blocks if len(b) == 1]
    tindex = {b: i for i, b in enumerate(torus)}
    atoms = []
    if torus:
        act = SignedMonomialAction(tuple(tindex[_image(pi, b)] for b in torus))
        atoms += torus_fixed_points(act).factors
    seen = set()
    for b in blocks:
        if len(b) == 1 or b in seen:
            continue
        d, c = 0, b
        while True:
            if c not in index:
                raise UnsupportedConfiguration("twist does not permute the Levi blocks")
            seen.add(c)
            c = _image(pi, c)
            d += 1
            if c == b:
                break
        atoms.append(GLBlock(len(b), d))
    return GroupDescriptor.product(atoms)


def _sp_descriptor(blocks, pi: WeylElement, n: int) -> GroupDescriptor:
    N = 2 * n
    dual = lambda b: tuple(sorted(N + 1 - i for i in b))
    atoms = []
    coords = [b[0] for b in blocks if len(b) == 1 and b[0] <= n]
    if coords:
        pos = {c: i for i, c in enumerate(coords)}
        perm, signs = [], []
        for c in coords:
            j = pi(c)
            perm.append(pos[j] if j <= n else pos[N + 1 - j])
            signs.append(1 if j <= n else -1)
        atoms += torus_fixed_points(SignedMonomialAction(tuple(perm), tuple(signs))).factors
    seen = set()
    for b in blocks:
        if len(b) == 1 or b in seen:
            continue
        if b == dual(b):
            atoms.append(SpBlock(len(b) // 2))
            seen.add(b)
            continue
        d, c, twisted = 0, b, False
        while True:
            seen.add(c)
            seen.add(dual(c))
            c = _image(pi, c)
            d += 1
            if c == b:
                break
            if c == dual(b):
                twisted = True
                break
        atoms.append(UBlock(len(b), d) if twisted else GLBlock(len(b), d))
    return GroupDescriptor.product(atoms)


def _gu_descriptor(blocks, M: WeylElement) -> GroupDescriptor:
    # every step of the twist passes through transpose-inverse; c lives in F_q^×
    cycles = []
    seen = set()
    for b in blocks:
        if b in seen:
            continue
        d, c = 0, b
        while c not in seen:
            seen.add(c)
            c = _image(M, c)
            d += 1
        cycles.append((b, d))
    fixed = [(len(b), i) for i, (b, d) in enumerate(cycles) if d == 1]
    quotient_size, qi = max(fixed) if fixed else (0, None)
    kernel = []
    for i, (b, d) in enumerate(cycles):
        if i == qi:
            continue
        kernel.append(UBlock(len(b), d) if d % 2 else GLBlock(len(b), d))
    return GroupDescriptor(extension=Extension(canonical(kernel), GUBlock(quotient_size)))


def stabilizer_descriptor(d: ZipDatum, s: Stratum) -> GroupDescriptor:
    cox = d.cox
    if d.I == cox.S:
        return GroupDescriptor((FullGroup(cox.family, cox.n),))
    yw = d.y * s.w
    blocks = levi_blocks(cox.degree, s.K_w)
    if cox.family == TYPE_A:
        return _gl_descriptor(blocks, yw)
    if cox.family == TYPE_C:
        return _sp_descriptor(blocks, yw, cox.n)
    if cox.family == TYPE_A_TWISTED:
        return _gu_descriptor(blocks, cox.w0 * yw)
    raise UnsupportedConfiguration(cox.family)


# -- GU signature (1, n-1) closed forms --------------------------------------

def gu_f(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f"stratum index {k} out of range 1..{n}")
    return n + 1 - 2 * k if 2 * k <= n + 1 else 2 * k - n - 2


def gu_epsilon(n: int, k: int) -> int:
    gu_f(n, k)
    return -1 if 2 * k <= n + 1 else 1


def gu_M(n: int, k: int) -> tuple[int, ...]:
    if gu_epsilon(n, k) == -1:
        return tuple(range(k + 1, n + 2 - k))
    return tuple(range(n + 2 - k, k))


def gu_Kw_indices(n: int, k: int) -> list[int]:
    """Indices i of (i i+1) in I with i, i+1 in M(n, k)."""
    M = set(gu_M(n, k))
    return [i for i in range(2, n) if i in M and i + 1 in M]


def gu_signature_descriptor(n: int, k: int, q: int | None = None) -> GroupDescriptor:
    if n < 2:
        raise ValueError("n must be at least 2")
    f = gu_f(n, k)
    kernel = TorusRes(n - f) if gu_epsilon(n, k) == 1 else NormKernel(n - f)
    return GroupDescriptor(extension=Extension((kernel,), GUBlock(f)))


# -- counting irreducibles --------------------------------------------------

def irrep_count(g: GroupDescriptor, q: int, elements=None, budget: int | None = None) -> Union[int, str]:
    """Number of irreducible complex representations of Pi_w(F_q).

    Abelian groups: the order.  Direct products: the product of the class
    numbers of the factors, each counted by brute force.  Extensions need the
    enumerated group itself (``elements``, a ``matrixgrp.FiniteMatrixGroup``).
    """
    if g.is_abelian:
        return order_at(g, q)
    from . import matrixgrp

    if elements is not None:
        return matrixgrp.conjugacy_class_count(elements)
    if g.extension is not None:
        return DEFERRED
    total = 1
    for a in g.factors:
        if a.abelian:
            total *= a.order(q)
            continue
        group = matrixgrp.atom_group(a, q, budget=budget)
        if group is None:
            return DEFERRED
        total *= matrixgrp.conjugacy_class_count(group)
    return total
