"""Brute-force finite matrix groups: the independent oracle for the symbolic layer.

Two constructions, sharing the compiled kernels in ``_kernels``:

* ``enumerate_group`` lists GL_k, U_k, GU_k and Sp_2k over a small field by
  testing every matrix against the defining form.
* ``twisted_fixed_points`` lists the points of a block-diagonal Levi fixed
  by a family of maps ``h -> s * M phi^e(h or h^-T) M^T`` (M signed
  monomial).  The stabilizer Pi_w of a stratum is such a fixed-point group.

Group elements are tuples of field codes (see ``finfield.FieldTables``):
the blocks in row-major order, followed by the similitude factor when the
group carries one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import lcm, prod
from typing import Optional

import numpy as np

from . import _kernels
from ._kernels._pykernels import _Arith
from .finfield import MAX_ENUM_SIZE, FieldTables, field_tables, prime_power
from .stabilizer import (
    Atom, FullGroup, GLBlock, GUBlock, SpBlock, UBlock, UnsupportedConfiguration, levi_blocks,
)
from .weyl import TYPE_A, TYPE_A_TWISTED, TYPE_C, WeylElement, reduced_word
from .zipdata import Stratum, ZipDatum

DEFAULT_BUDGET = 10**7
MAX_ELEMENTS = 10**5


class NotAGroup(ValueError):
    pass


# -- signed monomial matrices -------------------------------------------------

def perm_matrix(w: WeylElement) -> np.ndarray:
    """P with P e_j = e_{w(j)}, so P_a P_b = P_{ab}."""
    N = len(w)
    P = np.zeros((N, N), dtype=np.int64)
    for j in range(1, N + 1):
        P[w(j) - 1, j - 1] = 1
    return P


def symplectic_form(n: int) -> np.ndarray:
    """Antidiagonal J with +1 in the first n rows and -1 in the last n."""
    N = 2 * n
    J = np.zeros((N, N), dtype=np.int64)
    for i in range(N):
        J[i, N - 1 - i] = 1 if i < n else -1
    return J


def sp_simple_lift(n: int, i: int) -> np.ndarray:
    """Lift of the i-th simple reflection of type C_n to Sp_2n(Z)."""
    N = 2 * n
    L = np.eye(N, dtype=np.int64)

    def swap(a, b, sign):
        # columns a <-> b (1-based), e_b -> sign*e_a, e_a -> -sign*e_b
        L[a - 1, a - 1] = L[b - 1, b - 1] = 0
        L[a - 1, b - 1] = sign
        L[b - 1, a - 1] = -sign

    if i < n:
        swap(i, i + 1, 1)
        swap(N - i, N - i + 1, -1)
    else:
        swap(n, n + 1, 1)
    return L


def monomial_data(M: np.ndarray) -> tuple[list[int], list[int]]:
    """(col, sign) with M[i, col[i]] = sign[i]."""
    cols, signs = [], []
    for row in np.asarray(M):
        nz = np.flatnonzero(row)
        if len(nz) != 1 or abs(int(row[nz[0]])) != 1:
            raise ValueError("not a signed monomial matrix")
        cols.append(int(nz[0]))
        signs.append(int(row[nz[0]]))
    return cols, signs


def matrix_order_mod(M: np.ndarray, p: int, cap: int = 10**4) -> int:
    N = M.shape[0]
    eye = np.eye(N, dtype=np.int64)
    cur = M % p
    for k in range(1, cap + 1):
        if np.array_equal(cur % p, eye):
            return k
        cur = (cur @ M) % p
    raise ValueError("matrix order not found")


# -- specifications -----------------------------------------------------------

@dataclass(frozen=True)
class MatrixGroupSpec:
    """``kind`` is GL, U, GU or Sp (defined over F_{q^d}) or Levi (``blocks``
    of 0-based indices inside GL_n, with a similitude factor if ``scalar``)."""
    kind: str
    n: int
    q: int
    d: int = 1
    blocks: tuple = ()
    scalar: bool = False

    def form(self) -> Optional[np.ndarray]:
        if self.kind == "Sp":
            return symplectic_form(self.n // 2)
        if self.kind in ("U", "GU"):
            return np.fliplr(np.eye(self.n, dtype=np.int64))
        return None


@dataclass(frozen=True)
class TwistMap:
    matrix: tuple
    frob: int = 1        # exponent e of phi
    dual: bool = False
    scalar: bool = False  # multiply by the similitude factor c


@dataclass(frozen=True)
class TwistData:
    """Maps whose common fixed points are wanted; entries lie in F_{q^m}."""
    maps: tuple
    q: int
    m: int
    lift: tuple = ()


# -- block arithmetic -----------------------------------------------------------

class BlockOps:
    """Multiplication on tuples of square blocks (plus an optional scalar)."""

    def __init__(self, tables: FieldTables, sizes, scalar: bool = False):
        self.tables = tables
        self.sizes = tuple(int(k) for k in sizes)
        self.scalar = scalar
        self.ar = _Arith(tables.zech, tables.order, tables.neg_one)
        offs, o = [], 0
        for k in self.sizes:
            offs.append(o)
            o += k * k
        self.offsets = offs
        self.width = o + (1 if scalar else 0)

    def identity(self) -> tuple:
        out = []
        for k in self.sizes:
            out.extend(1 if i == j else 0 for i in range(k) for j in range(k))
        if self.scalar:
            out.append(1)
        return tuple(out)

    def _matmul(self, A, B, k):
        ar = self.ar
        out = []
        for i in range(k):
            for j in range(k):
                acc = 0
                for l in range(k):
                    a = A[i * k + l]
                    if a:
                        b = B[l * k + j]
                        if b:
                            acc = ar.add(acc, ar.mul(a, b))
                out.append(acc)
        return out

    def mul(self, x, y) -> tuple:
        out = []
        for k, o in zip(self.sizes, self.offsets):
            out.extend(self._matmul(x[o:o + k * k], y[o:o + k * k], k))
        if self.scalar:
            out.append(self.ar.mul(x[-1], y[-1]))
        return tuple(out)

    def inv(self, x) -> tuple:
        out = []
        for k, o in zip(self.sizes, self.offsets):
            r = self.ar.mat_inv(x[o:o + k * k], k)
            if r is None:
                raise NotAGroup("singular element")
            out.extend(r)
        if self.scalar:
            out.append(self.ar.inv(x[-1]))
        return tuple(out)


@dataclass
class FiniteMatrixGroup:
    label: str
    ops: BlockOps
    count: int
    elements: Optional[frozenset] = field(default=None, repr=False)
    _gens: Optional[list] = field(default=None, repr=False)

    @property
    def materialized(self) -> bool:
        return self.elements is not None

    def check_group(self) -> list:
        """Verify the group axioms; returns a generating set."""
        if self.elements is None:
            raise ValueError("group not materialized")
        if self._gens is None:
            self._gens = generating_set(self)
        return self._gens


def _closure(ops: BlockOps, gens, universe) -> set:
    e = ops.identity()
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = ops.mul(x, g)
            if y not in seen:
                if y not in universe:
                    raise NotAGroup("not closed under multiplication")
                seen.add(y)
                queue.append(y)
    return seen


def generating_set(G: FiniteMatrixGroup) -> list:
    """Greedy generators; raises NotAGroup unless the element set is a group."""
    elems = G.elements
    if G.ops.identity() not in elems:
        raise NotAGroup("identity missing")
    gens: list = []
    H = {G.ops.identity()}
    for x in sorted(elems):
        if x in H:
            continue
        gens.append(x)
        H = _closure(G.ops, gens, elems)
        if len(H) == len(elems):
            break
    if len(H) != len(elems):
        raise NotAGroup("generated subgroup is smaller than the set")
    return gens


def conjugacy_class_count(G: FiniteMatrixGroup) -> int:
    """Number of conjugacy classes (= number of complex irreducibles)."""
    if G.elements is None:
        raise ValueError("group not materialized")
    ops = G.ops
    gens = G.check_group()
    pairs = [(g, ops.inv(g)) for g in gens]
    seen: set = set()
    classes = 0
    for x in G.elements:
        if x in seen:
            continue
        classes += 1
        seen.add(x)
        stack = [x]
        while stack:
            y = stack.pop()
            for g, gi in pairs:
                z = ops.mul(ops.mul(g, y), gi)
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
    return classes


# -- direct enumeration ---------------------------------------------------------

def _tables_for(q: int, degree: int) -> Optional[FieldTables]:
    p, a = prime_power(q)
    if p ** (a * degree) > MAX_ENUM_SIZE:
        return None
    return field_tables(p, a * degree)


def _in_subfield(code: int, sub: int, order: int) -> bool:
    # code = g^(code-1) lies in F_sub iff its (sub-1)-th power is 1
    return code != 0 and ((code - 1) * (sub - 1)) % order == 0


def enumerate_group(spec: MatrixGroupSpec, budget: int = DEFAULT_BUDGET) -> Optional[FiniteMatrixGroup]:
    """All elements of GL_n, U_n, GU_n or Sp_n (n even) over F_{q^d}.

    Returns None when the candidate count exceeds ``budget``.  U and GU are
    realized inside GL_n(F_{Q^2}), Q = q^d, with the antidiagonal hermitian
    form; Sp with ``symplectic_form``.
    """
    Q = spec.q ** spec.d
    n = spec.n
    unitary = spec.kind in ("U", "GU")
    T = _tables_for(spec.q, spec.d * (2 if unitary else 1))
    if T is None:
        return None
    nfield = T.spec.size
    if nfield ** (n * n) > budget:
        return None
    allowed = np.zeros(nfield, dtype=np.int64)
    if spec.kind == "GL":
        mode, F, qmul = 0, np.eye(max(n, 1), dtype=np.int64), 1
    elif spec.kind == "Sp":
        if n % 2:
            raise ValueError("Sp needs even size")
        mode, F, qmul = 1, symplectic_form(n // 2), 1
        allowed[1] = 1
    elif unitary:
        mode, F, qmul = 1, np.fliplr(np.eye(n, dtype=np.int64)), Q
        if spec.kind == "U":
            allowed[1] = 1
        else:
            for c in range(1, nfield):
                allowed[c] = _in_subfield(c, Q, T.order)
    else:
        raise ValueError(f"unknown group kind {spec.kind!r}")
    fcol, fsgn = monomial_data(F)
    sols = _kernels.form_filter(T.zech, T.order, T.neg_one, nfield, n, fcol, fsgn,
                                qmul % T.order if T.order > 1 else 1, allowed, mode)
    ops = BlockOps(T, [n])
    label = f"{spec.kind}_{n}(q={spec.q},d={spec.d})"
    elems = frozenset(tuple(int(v) for v in s) for s in sols) if len(sols) <= MAX_ELEMENTS else None
    return FiniteMatrixGroup(label, ops, len(sols), elems)


def atom_spec(atom: Atom, q: int) -> MatrixGroupSpec:
    if isinstance(atom, GLBlock):
        return MatrixGroupSpec("GL", atom.k, q, atom.d)
    if isinstance(atom, UBlock):
        return MatrixGroupSpec("U", atom.k, q, atom.d)
    if isinstance(atom, GUBlock):
        return MatrixGroupSpec("GU", atom.k, q)
    if isinstance(atom, SpBlock):
        return MatrixGroupSpec("Sp", 2 * atom.k, q)
    if isinstance(atom, FullGroup):
        kind = {TYPE_A: "GL", TYPE_C: "Sp", TYPE_A_TWISTED: "GU"}[atom.family]
        return MatrixGroupSpec(kind, 2 * atom.n if kind == "Sp" else atom.n, q)
    raise UnsupportedConfiguration(f"no matrix model for {atom}")


def atom_group(atom: Atom, q: int, budget: Optional[int] = DEFAULT_BUDGET) -> Optional[FiniteMatrixGroup]:
    """A materialized brute-force model of a non-abelian atom, or None."""
    G = enumerate_group(atom_spec(atom, q), DEFAULT_BUDGET if budget is None else budget)
    if G is None or G.elements is None:
        return None
    return G


# -- twisted fixed points ---------------------------------------------------------

@dataclass
class _Step:
    src: int
    tgt: int
    qmul: int
    dual: int
    scalar: int
    assign: int
    idx: list
    sgn: list


def _component_plan(blocks, maps, T: FieldTables, q: int):
    """Split blocks into orbits under the maps; BFS steps per orbit."""
    where = {}
    for bi, b in enumerate(blocks):
        for i in b:
            where[i] = bi
    mdata = []
    for tm in maps:
        cols, signs = monomial_data(np.array(tm.matrix))
        qmul = pow(q, tm.frob, T.order) if T.order > 1 else 1
        mdata.append((cols, signs, qmul, int(tm.dual), tm.scalar))

    def image(bi, md):
        cols = md[0]
        b = blocks[bi]
        tgt = sorted(i for i in range(len(cols)) if cols[i] in b)
        if len(tgt) != len(b) or where.get(tgt[0]) is None or blocks[where[tgt[0]]] != tuple(tgt):
            raise UnsupportedConfiguration("twist does not permute the Levi blocks")
        return where[tgt[0]]

    plans = []
    done = set()
    for root in range(len(blocks)):
        if root in done:
            continue
        local = {root: 0}
        order = [root]
        steps = []
        queue = deque([root])
        while queue:
            bi = queue.popleft()
            for md in mdata:
                ti = image(bi, md)
                cols, signs, qmul, dual, scal = md
                src_b, tgt_b = blocks[bi], blocks[ti]
                pos = {g: l for l, g in enumerate(src_b)}
                idx = [pos[cols[i]] for i in tgt_b]
                sgn = [0 if signs[i] > 0 else 1 for i in tgt_b]
                assign = ti not in local
                if assign:
                    local[ti] = len(order)
                    order.append(ti)
                    queue.append(ti)
                steps.append(_Step(local[bi], local[ti], qmul, dual, scal, int(assign), idx, sgn))
        done.update(order)
        plans.append((order, steps))
    return plans


def twisted_fixed_points(spec: MatrixGroupSpec, twist: TwistData,
                         budget: int = DEFAULT_BUDGET, count_only: bool = False
                         ) -> Optional[FiniteMatrixGroup]:
    """Common fixed points in the Levi ``spec.blocks`` of all maps in ``twist``.

    When ``spec.scalar`` is set the group is Levi x G_m and maps flagged
    ``scalar`` multiply by the G_m coordinate c, which must itself be
    Frobenius fixed; c then ranges over F_q^x.
    """
    T = _tables_for(twist.q, twist.m)
    if T is None:
        return None
    blocks = [tuple(b) for b in spec.blocks]
    plans = _component_plan(blocks, twist.maps, T, twist.q)
    nfield = T.spec.size
    cs = [c for c in range(1, nfield) if _in_subfield(c, twist.q, T.order)] if spec.scalar else [1]
    cost = len(cs) * sum(nfield ** (len(blocks[order[0]]) ** 2) for order, _ in plans)
    if cost > budget:
        return None
    ops = BlockOps(T, [len(b) for b in blocks], spec.scalar)
    total = 0
    elems: Optional[set] = None if count_only else set()
    for c in cs:
        per_comp = []
        for order, steps in plans:
            bsize = [len(blocks[b]) for b in order]
            st = [(s.src, s.tgt, s.qmul, s.dual, c if s.scalar else 1, s.assign) for s in steps]
            sols = _kernels.search_component(T.zech, T.order, T.neg_one, nfield, bsize, st,
                                             [s.idx for s in steps], [s.sgn for s in steps])
            per_comp.append((order, sols))
        n_c = prod(len(s) for _, s in per_comp)
        total += n_c
        if elems is not None and total <= MAX_ELEMENTS:
            for combo in iproduct(*(s for _, s in per_comp)):
                parts: list = [None] * len(blocks)
                for (order, _), sol in zip(per_comp, combo):
                    off = 0
                    for b in order:
                        k = len(blocks[b])
                        parts[b] = sol[off:off + k * k]
                        off += k * k
                flat = tuple(int(v) for part in parts for v in part)
                elems.add(flat + ((c,) if spec.scalar else ()))
        elif elems is not None:
            elems = None
    return FiniteMatrixGroup("Pi", ops, total, frozenset(elems) if elems is not None else None)


# -- the stabilizer oracle for a stratum ------------------------------------------

def weyl_lift(d: ZipDatum, w: WeylElement) -> np.ndarray:
    """A representative of w in N(T); signed for type C."""
    cox = d.cox
    if cox.family != TYPE_C:
        return perm_matrix(w)
    n = cox.n
    L = np.eye(cox.degree, dtype=np.int64)
    for i in reduced_word(cox, w):
        L = L @ sp_simple_lift(n, i)
    return L


def y_lift(d: ZipDatum) -> np.ndarray:
    cox = d.cox
    n = cox.n
    if cox.family == TYPE_C and n >= 3 and d.I == cox.S - {cox.simple(n)}:
        # the Siegel parabolic: y-dot = [[0, 1], [-1, 0]]
        Z = np.zeros((n, n), dtype=np.int64)
        E = np.eye(n, dtype=np.int64)
        return np.block([[Z, E], [-E, Z]])
    return weyl_lift(d, d.y)


def build_twist(d: ZipDatum, s: Stratum) -> tuple[MatrixGroupSpec, TwistData]:
    """Levi of type K_w and the Frobenius twist whose fixed points are Pi_w."""
    cox = d.cox
    q = d.q
    p, _ = prime_power(q)
    N = cox.degree
    blocks = tuple(tuple(i - 1 for i in b) for b in levi_blocks(N, s.K_w))
    L = y_lift(d) @ weyl_lift(d, s.w)
    if cox.family == TYPE_A:
        maps = (TwistMap(_tup(L), 1, False, False),)
        m = matrix_order_mod(L, p)
        return MatrixGroupSpec("Levi", N, q, blocks=blocks), TwistData(maps, q, m, _tup(L))
    if cox.family == TYPE_C:
        J = symplectic_form(cox.n)
        if not np.array_equal(L.T @ J @ L, J):
            raise AssertionError("Weyl lift is not symplectic")
        maps = (TwistMap(_tup(L), 1, False, False), TwistMap(_tup(J.T), 0, True, False))
        m = matrix_order_mod(L, p)
        return MatrixGroupSpec("Levi", N, q, blocks=blocks), TwistData(maps, q, m, _tup(L))
    if cox.family == TYPE_A_TWISTED:
        M = perm_matrix(cox.w0) @ L
        maps = (TwistMap(_tup(M), 1, True, True),)
        m = lcm(2, matrix_order_mod(M, p))
        return (MatrixGroupSpec("Levi", N, q, blocks=blocks, scalar=True),
                TwistData(maps, q, m, _tup(L)))
    raise UnsupportedConfiguration(cox.family)


def build_lift(d: ZipDatum, w: WeylElement) -> TwistData:
    """The twist attached to the stratum of w; ``lift`` holds y-dot w-dot."""
    for s in d.strata:
        if s.w == w:
            return build_twist(d, s)[1]
    raise ValueError(f"{w} is not a stratum of this zip datum")


def similitude(G: FiniteMatrixGroup, x: tuple, Q: int) -> int:
    """Code of c with x^T F x^(Q) = c F, for a one-block group with form F."""
    (k,) = G.ops.sizes
    ar = G.ops.ar
    F = np.fliplr(np.eye(k, dtype=np.int64))
    fcol, _ = monomial_data(F)
    T = G.ops.tables
    qmul = Q % T.order if T.order > 1 else 1
    acc = 0
    for a in range(k):
        acc = ar.add(acc, ar.mul(x[a * k], ar.frob(x[fcol[a] * k + fcol[0]], qmul)))
    return acc


def _tup(M) -> tuple:
    return tuple(tuple(int(v) for v in row) for row in np.asarray(M))


def stratum_group(d: ZipDatum, s: Stratum, budget: int = DEFAULT_BUDGET,
                  count_only: bool = False) -> Optional[FiniteMatrixGroup]:
    """Brute-force Pi_w(F_q), or None when over budget."""
    if d.I == d.cox.S:
        return enumerate_group(atom_spec(FullGroup(d.cox.family, d.cox.n), d.q), budget)
    spec, twist = build_twist(d, s)
    return twisted_fixed_points(spec, twist, budget, count_only=count_only)
