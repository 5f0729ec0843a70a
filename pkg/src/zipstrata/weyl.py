"""Weyl groups of type A (S_n) and type C (inside S_2n).

Permutations are one-line tuples on {1..N}; products compose right to left,
``(a * b)(i) = a(b(i))``.  Subsets of simple reflections are frozensets of
``WeylElement``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from threading import Lock

TYPE_A = "A"
TYPE_C = "C"
TYPE_A_TWISTED = "A_twisted"

MAX_RANK = {TYPE_A: 8, TYPE_A_TWISTED: 8, TYPE_C: 6}


class WeylError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class WeylElement:
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise WeylError(f"{self.perm} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles) -> "WeylElement":
        img = list(range(1, n + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __len__(self):
        return len(self.perm)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(tuple(self.perm[j - 1] for j in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, 1):
            inv[j - 1] = i
        return WeylElement(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm, 1))

    def inversions(self) -> int:
        p = self.perm
        return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])

    def order(self) -> int:
        from math import lcm
        out = 1
        for c in cycle_decomposition(self):
            out = lcm(out, len(c))
        return out

    def cycle_str(self) -> str:
        cyc = [c for c in cycle_decomposition(self) if len(c) > 1]
        if not cyc:
            return "id"
        sep = "" if len(self.perm) < 10 else " "
        return "".join("(" + sep.join(map(str, c)) + ")" for c in cyc)

    def __str__(self):
        return self.cycle_str()


def cycle_decomposition(w: WeylElement) -> list[tuple[int, ...]]:
    """Disjoint cycles of w, fixed points included, each starting at its least entry."""
    seen = set()
    out = []
    for i in range(1, len(w) + 1):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = w(i)
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = w(j)
        out.append(tuple(cyc))
    return out


def transposition(n: int, a: int, b: int) -> WeylElement:
    return WeylElement.from_cycles(n, (a, b))


@dataclass(frozen=True)
class CoxeterDescriptor:
    """A finite Weyl group with its simple reflections and Frobenius.

    ``family`` is TYPE_A (split GL_n), TYPE_A_TWISTED (GU_n, Frobenius is
    conjugation by w0) or TYPE_C (Sp_2n embedded in S_2n).
    """

    family: str
    n: int
    _lengths: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: Lock = field(default_factory=Lock, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.family not in MAX_RANK:
            raise WeylError(f"unknown family {self.family!r}")
        lo = 1
        if not lo <= self.n <= MAX_RANK[self.family]:
            raise WeylError(f"rank {self.n} outside supported range for type {self.family}")

    @property
    def degree(self) -> int:
        """Size of the permuted set."""
        return 2 * self.n if self.family == TYPE_C else self.n

    @property
    def frobenius_kind(self) -> str:
        return "conjugate_by_w0" if self.family == TYPE_A_TWISTED else "identity"

    @cached_property
    def simple_reflections(self) -> tuple[WeylElement, ...]:
        N = self.degree
        if self.family == TYPE_C:
            n = self.n
            out = [WeylElement.from_cycles(N, (i, i + 1), (2 * n - i, 2 * n - i + 1))
                   for i in range(1, n)]
            out.append(transposition(N, n, n + 1))
            return tuple(out)
        return tuple(transposition(N, i, i + 1) for i in range(1, N))

    def simple(self, i: int) -> WeylElement:
        """The i-th simple reflection, 1-based."""
        return self.simple_reflections[i - 1]

    def index_of(self, s: WeylElement) -> int:
        return self.simple_reflections.index(s) + 1

    @property
    def S(self) -> frozenset:
        return frozenset(self.simple_reflections)

    def subset(self, indices) -> frozenset:
        return frozenset(self.simple(i) for i in indices)

    def indices(self, K) -> list[int]:
        return sorted(self.index_of(s) for s in K)

    def identity(self) -> WeylElement:
        return WeylElement.identity(self.degree)

    def contains(self, w: WeylElement) -> bool:
        if len(w) != self.degree:
            return False
        if self.family == TYPE_C:
            N = self.degree
            return all(w(i) + w(N + 1 - i) == N + 1 for i in range(1, N + 1))
        return True

    def check(self, w: WeylElement) -> None:
        if not self.contains(w):
            raise WeylError(f"{w.perm} is not in W({self.family}{self.n})")

    @cached_property
    def elements(self) -> tuple[WeylElement, ...]:
        if self.family == TYPE_C:
            return tuple(sorted(self._bfs_lengths()))
        return tuple(WeylElement(p) for p in permutations(range(1, self.n + 1)))

    def order(self) -> int:
        from math import factorial
        return factorial(self.n) * (2**self.n if self.family == TYPE_C else 1)

    def _bfs_lengths(self) -> dict:
        with self._lock:
            if not self._lengths:
                dist = {self.identity(): 0}
                queue = deque([self.identity()])
                while queue:
                    w = queue.popleft()
                    for s in self.simple_reflections:
                        v = w * s
                        if v not in dist:
                            dist[v] = dist[w] + 1
                            queue.append(v)
                self._lengths.update(dist)
            return self._lengths

    def bfs_length(self, w: WeylElement) -> int:
        self.check(w)
        return self._bfs_lengths()[w]

    @cached_property
    def w0(self) -> WeylElement:
        return longest_element(self, self.S)


def length(cox: CoxeterDescriptor, w: WeylElement) -> int:
    cox.check(w)
    if cox.family == TYPE_C:
        return cox.bfs_length(w)
    return w.inversions()


def generate_subgroup(cox: CoxeterDescriptor, K) -> list[WeylElement]:
    """All elements of the parabolic subgroup W_K."""
    seen = {cox.identity()}
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        for s in K:
            v = w * s
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return sorted(seen, key=lambda v: (length(cox, v), v.perm))


def longest_element(cox: CoxeterDescriptor, K) -> WeylElement:
    w = cox.identity()
    grew = True
    while grew:
        grew = False
        for s in sorted(K):
            v = s * w
            if length(cox, v) > length(cox, w):
                w = v
                grew = True
    return w


def is_min_coset_rep(cox: CoxeterDescriptor, I, w: WeylElement) -> bool:
    lw = length(cox, w)
    return all(length(cox, s * w) > lw for s in I)


def min_coset_reps(cox: CoxeterDescriptor, I) -> list[WeylElement]:
    """^I W ordered by (length, one-line form)."""
    reps = [w for w in cox.elements if is_min_coset_rep(cox, I, w)]
    return sorted(reps, key=lambda v: (length(cox, v), v.perm))


def _bruhat_leq_sym(u: WeylElement, v: WeylElement) -> bool:
    # tableau criterion for S_N
    n = len(u)
    for i in range(1, n):
        a = sorted(u.perm[:i])
        b = sorted(v.perm[:i])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def bruhat_leq(cox: CoxeterDescriptor, u: WeylElement, v: WeylElement) -> bool:
    """Bruhat order; type C is the restriction of the order on S_2n."""
    cox.check(u)
    cox.check(v)
    return _bruhat_leq_sym(u, v)


def frobenius_w(cox: CoxeterDescriptor, w: WeylElement) -> WeylElement:
    if cox.family == TYPE_A_TWISTED:
        w0 = cox.w0
        return w0 * w * w0
    return w


def conjugate(cox: CoxeterDescriptor, a: WeylElement, b: WeylElement) -> WeylElement:
    """a b a^-1."""
    return a * b * a.inverse()


def reduced_word(cox: CoxeterDescriptor, w: WeylElement) -> list[int]:
    """Indices i1..ik with w = s_i1 ... s_ik and k = length(w)."""
    word = []
    cur = w
    while not cur.is_identity():
        lc = length(cox, cur)
        for i, s in enumerate(cox.simple_reflections, 1):
            v = cur * s
            if length(cox, v) < lc:
                word.append(i)
                cur = v
                break
    return word[::-1]
