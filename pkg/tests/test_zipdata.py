from collections import Counter
from dataclasses import replace
from itertools import combinations, product

import numpy as np
import pytest

from zipstrata import matrixgrp as mg
from zipstrata.weyl import (
    TYPE_A, TYPE_A_TWISTED, TYPE_C, CoxeterDescriptor, WeylElement, WeylError, conjugate,
    length,
)
from zipstrata.zipdata import (
    ZipDatum, closure_order, closure_relation_candidate, compute_Kw, hasse_edges,
    reference_posets, twist_map, validate_closure_rule,
)

CONFIGS = [
    (TYPE_A, 2, ()), (TYPE_A, 3, (2,)), (TYPE_A, 4, (1, 3)), (TYPE_A, 4, (2, 3)),
    (TYPE_A, 4, ()), (TYPE_C, 2, (1,)), (TYPE_C, 2, (2,)), (TYPE_C, 3, (1, 2)),
    (TYPE_A_TWISTED, 3, (2,)), (TYPE_A_TWISTED, 4, (2, 3)), (TYPE_A_TWISTED, 5, (2, 3, 4)),
]


def cyc(n, *c):
    return WeylElement.from_cycles(n, *c)


def all_configs():
    for fam, n in [(TYPE_A, 2), (TYPE_A, 3), (TYPE_A, 4), (TYPE_C, 2), (TYPE_C, 3),
                   (TYPE_A_TWISTED, 2), (TYPE_A_TWISTED, 3), (TYPE_A_TWISTED, 4)]:
        cox = CoxeterDescriptor(fam, n)
        idx = range(1, len(cox.simple_reflections) + 1)
        for r in range(len(idx) + 1):
            for I in combinations(idx, r):
                yield ZipDatum.make(fam, n, I)


def test_gl4_22_data():
    d = ZipDatum.make(TYPE_A, 4, (1, 3))
    assert d.J == d.cox.subset([1, 3])
    assert d.y == cyc(4, (1, 3), (2, 4))
    ws = [s.w for s in d.strata]
    assert set(ws) == {cyc(4), cyc(4, (2, 3)), cyc(4, (1, 3, 2)), cyc(4, (2, 3, 4)),
                       cyc(4, (1, 3, 4, 2)), cyc(4, (1, 3), (2, 4))}
    K = {str(s.w): {str(t) for t in s.K_w} for s in d.strata}
    assert K["id"] == {"(12)", "(34)"}
    assert K["(13)(24)"] == {"(12)", "(34)"}
    assert K["(23)"] == K["(132)"] == K["(234)"] == K["(1342)"] == set()


def test_sp4_data():
    d = ZipDatum.make(TYPE_C, 2, (1,))
    s, r = d.cox.simple_reflections
    assert [x.w for x in d.strata] == [d.cox.identity(), r, r * s, r * s * r]
    assert [x.K_w for x in d.strata] == [{s}, set(), set(), {s}]


def test_gu_strata_are_cycles():
    for n in range(2, 7):
        d = ZipDatum.make(TYPE_A_TWISTED, n, range(2, n))
        assert [str(x.w) for x in d.strata] == ["id"] + [
            "(" + "".join(map(str, range(1, k + 1))) + ")" for k in range(2, n + 1)]


def test_every_stratum_set():
    for d in all_configs():
        strata = d.strata
        cox = d.cox
        assert len(strata) * _parabolic_order(d) == cox.order()
        opens = [x for x in strata if x.is_open]
        assert len(opens) == 1
        top = max(x.length for x in strata)
        assert [x.w for x in strata if x.length == top] == [opens[0].w]
        assert opens[0].w == d.y.inverse()
        for x in strata:
            f = twist_map(d, x.w)
            image = [f(t) for t in x.K_w]
            # K_w stability is an exact bijection onto itself
            assert sorted(image) == sorted(x.K_w)
            assert x.K_w <= d.J


def _parabolic_order(d):
    from zipstrata.weyl import generate_subgroup
    return len(generate_subgroup(d.cox, d.I))


def test_open_stratum_K_is_phi_stable_part_of_J():
    # K_{y^-1} is the intersection of the iterates phi^i(J)
    for d in all_configs():
        K = set(d.J)
        for _ in range(4):
            K &= {d.phi(t) for t in K}
        assert compute_Kw(d, d.y.inverse()) == K


def test_compute_Kw_rejects_non_representatives():
    d = ZipDatum.make(TYPE_A, 3, (2,))
    with pytest.raises(WeylError):
        compute_Kw(d, cyc(3, (2, 3)))


def test_closure_rule_matches_worked_posets():
    assert validate_closure_rule() == []
    for (fam, n, idx), ref in reference_posets().items():
        if n > 5:
            continue
        d = ZipDatum.make(fam, n, idx)
        assert closure_relation_candidate(d) == ref


def test_gl4_diamond():
    d = ZipDatum.make(TYPE_A, 4, (1, 3))
    rel = closure_order(d)
    nodes = [s.w for s in d.strata]
    edges = {(str(a), str(b)) for a, b in hasse_edges(rel, nodes)}
    assert edges == {("(13)(24)", "(1342)"), ("(1342)", "(132)"), ("(1342)", "(234)"),
                     ("(132)", "(23)"), ("(234)", "(23)"), ("(23)", "id")}
    assert (cyc(4, (1, 3, 2)), cyc(4, (2, 3, 4))) not in rel


def test_gu_chain_is_total():
    for n in range(2, 6):
        d = ZipDatum.make(TYPE_A_TWISTED, n, range(2, n))
        ws = [s.w for s in d.strata]
        rel = closure_order(d)
        for i, a in enumerate(ws):
            below = {b for b in ws if (b, a) in rel}
            assert below == set(ws[:i + 1])


@pytest.mark.parametrize("fam,n,I", CONFIGS)
def test_closure_is_a_partial_order(fam, n, I):
    d = ZipDatum.make(fam, n, I)
    rel = closure_relation_candidate(d)
    ws = [s.w for s in d.strata]
    for a in ws:
        assert (a, a) in rel
        assert (d.cox.identity(), a) in rel
        assert (a, d.y.inverse()) in rel
        for b in ws:
            if (a, b) in rel and (b, a) in rel:
                assert a == b
            if (a, b) in rel:
                assert length(d.cox, a) <= length(d.cox, b)
                for c in ws:
                    if (b, c) in rel:
                        assert (a, c) in rel


# -- brute-force orbit counting on GL_n(F_2) ------------------------------------

def _gl_f2(n):
    mats = []
    for bits in product((0, 1), repeat=n * n):
        M = np.array(bits, dtype=np.int64).reshape(n, n)
        if round(abs(np.linalg.det(M))) % 2 == 1:
            mats.append(M)
    return np.array(mats)


def _inv_f2(M):
    n = M.shape[0]
    A = np.concatenate([M % 2, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        r = next(r for r in range(c, n) if A[r, c])
        A[[c, r]] = A[[r, c]]
        for k in range(n):
            if k != c and A[k, c]:
                A[k] = (A[k] + A[c]) % 2
    return A[:, n:]


def _encode(arr):
    n = arr.shape[-1]
    w = 1 << np.arange(n * n, dtype=np.int64)
    return (arr.reshape(len(arr), n * n) * w).sum(axis=1)


def emu_orbit_stabilizers(n):
    """Stabilizer orders of the orbits of E(F_2) on GL_n(F_2), cocharacter type (1, n-1).

    E = {(p, q) in P x Q with equal Levi parts}, P block upper and Q block lower
    triangular with blocks (1, n - 1), acting by g -> p g q^-1.
    """
    G = _gl_f2(n)
    levi = [M for M in _gl_f2(n - 1)]
    P, Qi = [], []
    for Lb in levi:
        L = np.zeros((n, n), dtype=np.int64)
        L[0, 0] = 1
        L[1:, 1:] = Lb
        for a in product((0, 1), repeat=n - 1):
            for b in product((0, 1), repeat=n - 1):
                U = np.eye(n, dtype=np.int64)
                U[0, 1:] = a
                V = np.eye(n, dtype=np.int64)
                V[1:, 0] = b
                P.append(L @ U % 2)
                Qi.append(_inv_f2(L @ V % 2))
    P, Qi = np.array(P), np.array(Qi)
    codes = _encode(G)
    seen = set()
    stabs = []
    for g, c in zip(G, codes):
        if int(c) in seen:
            continue
        orbit = set(_encode(np.einsum("kij,jl,klm->kim", P, g, Qi) % 2).tolist())
        seen |= orbit
        stabs.append(len(P) // len(orbit))
    assert len(seen) == len(G)
    return Counter(stabs)


def twisted_class_centralizers(G, q):
    """|Z| for each class of x ~ y x F(y)^-1, F raising entries to the q-th power."""
    ops = G.ops
    T = ops.tables
    qmul = q % T.order if T.order > 1 else 1
    frob = lambda x: tuple(0 if v == 0 else ((v - 1) * qmul) % T.order + 1 for v in x)
    gens = G.check_group()
    acts = [(g, ops.inv(frob(g))) for g in gens]
    seen, out = set(), []
    for x in sorted(G.elements):
        if x in seen:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g, fgi in acts:
                z = ops.mul(ops.mul(g, y), fgi)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        seen |= orbit
        out.append(G.count // len(orbit))
    return out


def predicted_stabilizers(n, q, kw_rule):
    d = ZipDatum.make(TYPE_A, n, range(2, n), q)
    out = Counter()
    for s in d.strata:
        s2 = replace(s, K_w=kw_rule(d, s.w))
        G = mg.stratum_group(d, s2)
        codim = (n - 1) - s.length
        for z in twisted_class_centralizers(G, q):
            out[q**codim * z] += 1
    return out


def kw_conjugated_by_w(d, w):
    # the other reading of K_w: J cap ^{w}I instead of J cap ^{w^-1}I
    K = set(d.J) & {conjugate(d.cox, w, s) for s in d.I}
    f = twist_map(d, w)
    changed = True
    while changed:
        changed = False
        for t in list(K):
            if f(t) not in K:
                K.discard(t)
                changed = True
    return frozenset(K)


@pytest.mark.parametrize("n", [3, 4])
def test_kw_convention_against_orbit_count(n):
    brute = emu_orbit_stabilizers(n)
    ours = predicted_stabilizers(n, 2, lambda d, w: compute_Kw(d, w))
    assert ours == brute
    if n == 4:
        other = predicted_stabilizers(n, 2, kw_conjugated_by_w)
        assert other != brute
