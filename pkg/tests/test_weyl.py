from collections import deque
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from zipstrata.weyl import (
    TYPE_A, TYPE_A_TWISTED, TYPE_C, CoxeterDescriptor, WeylElement, WeylError, bruhat_leq,
    conjugate, cycle_decomposition, frobenius_w, generate_subgroup, is_min_coset_rep, length,
    longest_element, min_coset_reps, reduced_word,
)

GROUPS = [(TYPE_A, 2), (TYPE_A, 3), (TYPE_A, 4), (TYPE_C, 2), (TYPE_C, 3), (TYPE_A_TWISTED, 3)]


def word_lengths(cox):
    # independent oracle: BFS in the Cayley graph on simple reflections
    dist = {cox.identity(): 0}
    queue = deque([cox.identity()])
    while queue:
        w = queue.popleft()
        for s in cox.simple_reflections:
            v = s * w
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    return dist


def subsets(cox):
    S = cox.simple_reflections
    for r in range(len(S) + 1):
        yield from (frozenset(c) for c in combinations(S, r))


@pytest.mark.parametrize("fam,n", GROUPS)
def test_length_is_word_length(fam, n):
    cox = CoxeterDescriptor(fam, n)
    dist = word_lengths(cox)
    assert len(dist) == cox.order() == len(cox.elements)
    for w, d in dist.items():
        assert length(cox, w) == d
        word = reduced_word(cox, w)
        assert len(word) == d
        prod = cox.identity()
        for i in word:
            prod = prod * cox.simple(i)
        assert prod == w


def test_group_orders():
    assert CoxeterDescriptor(TYPE_A, 4).order() == 24
    assert CoxeterDescriptor(TYPE_C, 2).order() == 8
    assert CoxeterDescriptor(TYPE_C, 3).order() == 48


def test_longest_element_type_a_reverses():
    for n in range(2, 6):
        cox = CoxeterDescriptor(TYPE_A, n)
        assert cox.w0.perm == tuple(range(n, 0, -1))
        assert length(cox, cox.w0) == n * (n - 1) // 2


def test_longest_element_type_c_is_minus_one():
    cox = CoxeterDescriptor(TYPE_C, 3)
    assert cox.w0.perm == (6, 5, 4, 3, 2, 1)
    assert length(cox, cox.w0) == 9


def test_sp4_simple_reflections():
    cox = CoxeterDescriptor(TYPE_C, 2)
    s, r = cox.simple_reflections
    assert s == WeylElement.from_cycles(4, (1, 2), (3, 4))
    assert r == WeylElement.from_cycles(4, (2, 3))
    assert str(r * s) == "(1342)"
    assert str(r * s * r) == "(13)(24)"


def subword_leq(cox, u, v):
    # oracle: u <= v iff u is a product of a subword of a reduced word for v
    word = reduced_word(cox, v)
    reach = {cox.identity()}
    for i in word:
        s = cox.simple(i)
        reach |= {x * s for x in reach}
    return u in reach


@pytest.mark.parametrize("fam,n", [(TYPE_A, 3), (TYPE_A, 4), (TYPE_C, 2), (TYPE_C, 3)])
def test_bruhat_matches_subword_property(fam, n):
    cox = CoxeterDescriptor(fam, n)
    els = cox.elements
    for u in els:
        for v in els:
            assert bruhat_leq(cox, u, v) == subword_leq(cox, u, v)


@pytest.mark.parametrize("fam,n", GROUPS)
def test_min_coset_reps(fam, n):
    cox = CoxeterDescriptor(fam, n)
    for I in subsets(cox):
        reps = min_coset_reps(cox, I)
        WI = generate_subgroup(cox, I)
        assert len(reps) * len(WI) == cox.order()
        # minimal length in each coset W_I w, and the two characterizations agree
        for w in cox.elements:
            coset = [u * w for u in WI]
            m = min(length(cox, x) for x in coset)
            assert is_min_coset_rep(cox, I, w) == (length(cox, w) == m)
        for w in reps:
            assert all(length(cox, u * w) == length(cox, u) + length(cox, w) for u in WI)
        assert reps == sorted(reps, key=lambda v: (length(cox, v), v.perm))


def test_frobenius_twist():
    cox = CoxeterDescriptor(TYPE_A_TWISTED, 4)
    for w in cox.elements:
        assert frobenius_w(cox, frobenius_w(cox, w)) == w
    s1, s2, s3 = cox.simple_reflections
    assert frobenius_w(cox, s1) == s3
    assert frobenius_w(cox, s2) == s2
    plain = CoxeterDescriptor(TYPE_A, 4)
    assert frobenius_w(plain, s1) == s1


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(1, 7)), st.permutations(range(1, 7)))
def test_products_and_cycles(p1, p2):
    a, b = WeylElement(tuple(p1)), WeylElement(tuple(p2))
    ab = a * b
    for i in range(1, 7):
        assert ab(i) == a(b(i))
    assert (a * a.inverse()).is_identity()
    assert conjugate(None, a, b) == a * b * a.inverse()
    cycles = cycle_decomposition(a)
    assert sorted(x for c in cycles for x in c) == list(range(1, 7))
    for c in cycles:
        for x, y in zip(c, c[1:] + c[:1]):
            assert a(x) == y


def test_cycle_strings():
    assert str(WeylElement.from_cycles(4, (1, 3), (2, 4))) == "(13)(24)"
    assert str(WeylElement.identity(3)) == "id"
    assert str(WeylElement.from_cycles(10, (1, 10))) == "(1 10)"


def test_errors():
    with pytest.raises(WeylError):
        WeylElement((1, 1, 2))
    with pytest.raises(WeylError):
        CoxeterDescriptor("B", 2)
    with pytest.raises(WeylError):
        CoxeterDescriptor(TYPE_A, 12)
    cox = CoxeterDescriptor(TYPE_C, 2)
    with pytest.raises(WeylError):
        length(cox, WeylElement((2, 1, 3, 4)))


def test_longest_of_parabolic():
    cox = CoxeterDescriptor(TYPE_A, 4)
    I = cox.subset([1, 3])
    assert longest_element(cox, I) == WeylElement.from_cycles(4, (1, 2), (3, 4))
