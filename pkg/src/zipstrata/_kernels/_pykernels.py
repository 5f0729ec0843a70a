"""Reference (pure Python) enumeration kernels.

Field elements are integer codes: 0 is zero, ``k + 1`` is ``g**k`` for a
fixed generator g.  ``zech[d]`` is the log of ``1 + g**d`` (-1 when that
sum vanishes).  The compiled module ``_ckernels`` implements the same two
functions with the same signatures.
"""

from itertools import product


class _Arith:
    __slots__ = ("zech", "order", "neg_one")

    def __init__(self, zech, order, neg_one):
        self.zech = [int(z) for z in zech]
        self.order = int(order)
        self.neg_one = int(neg_one)

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        z = self.zech[(b - a) % self.order]
        if z < 0:
            return 0
        return (a - 1 + z) % self.order + 1

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.order + 1

    def inv(self, a):
        return (1 - a) % self.order + 1

    def frob(self, a, qmul):
        if a == 0:
            return 0
        return ((a - 1) * qmul) % self.order + 1

    def mat_inv(self, X, k):
        """Inverse of a k*k row-major matrix, or None if singular."""
        A = [list(X[i * k:(i + 1) * k]) + [1 if j == i else 0 for j in range(k)] for i in range(k)]
        for col in range(k):
            piv = next((r for r in range(col, k) if A[r][col]), None)
            if piv is None:
                return None
            A[col], A[piv] = A[piv], A[col]
            pinv = self.inv(A[col][col])
            A[col] = [self.mul(pinv, v) for v in A[col]]
            for r in range(k):
                f = A[r][col]
                if r != col and f:
                    nf = self.mul(self.neg_one, f)
                    A[r] = [self.add(v, self.mul(nf, w)) for v, w in zip(A[r], A[col])]
        return [A[i][k + j] for i in range(k) for j in range(k)]


def search_component(zech, order, neg_one, nfield, bsize, steps, idx, sgn):
    """Enumerate the twisted-fixed block tuples of one connected component.

    Block 0 ranges over all k0*k0 matrices with entries in the field; every
    other block is reached by the ``steps`` (src, tgt, qmul, dual, scalar,
    assign) in order.  An assign step defines block tgt as the image of src;
    a check step requires the image to equal the current value.  Returns the
    surviving tuples, blocks concatenated in row-major order.
    """
    ar = _Arith(zech, order, neg_one)
    nb = len(bsize)
    k0 = int(bsize[0])
    steps = [tuple(int(v) for v in s) for s in steps]
    idx = [[int(v) for v in row] for row in idx]
    sgn = [[int(v) for v in row] for row in sgn]
    out = []
    for X in product(range(int(nfield)), repeat=k0 * k0):
        xinv = ar.mat_inv(X, k0)
        if xinv is None:
            continue
        vals = [None] * nb
        invs = [None] * nb
        vals[0] = list(X)
        invs[0] = xinv
        ok = True
        for t, (src, tgt, qmul, dual, scalar, assign) in enumerate(steps):
            ks = int(bsize[src])
            kt = int(bsize[tgt])
            if dual:
                if invs[src] is None:
                    invs[src] = ar.mat_inv(vals[src], ks)
                S = invs[src]
            else:
                S = vals[src]
            ix, sg = idx[t], sgn[t]
            Y = []
            for i in range(kt):
                for j in range(kt):
                    a, b = ix[i], ix[j]
                    v = S[b * ks + a] if dual else S[a * ks + b]
                    v = ar.frob(v, qmul)
                    v = ar.mul(v, scalar)
                    if (sg[i] + sg[j]) & 1:
                        v = ar.mul(v, ar.neg_one)
                    Y.append(v)
            if assign:
                vals[tgt] = Y
            elif Y != vals[tgt]:
                ok = False
                break
        if ok:
            flat = []
            for v in vals:
                flat.extend(v)
            out.append(tuple(flat))
    return out


def form_filter(zech, order, neg_one, nfield, n, fcol, fsgn, qmul, allowed, mode):
    """All n*n matrices X with X^T F phi(X) = c F for an allowed c (mode 1),
    or all invertible X (mode 0).  F is the signed monomial with entry
    fsgn[a] at (a, fcol[a]); phi raises entries to the power given by qmul.
    """
    ar = _Arith(zech, order, neg_one)
    n = int(n)
    fcol = [int(v) for v in fcol]
    fsgn = [int(v) for v in fsgn]
    allowed = [bool(v) for v in allowed]
    out = []
    for X in product(range(int(nfield)), repeat=n * n):
        if mode == 0:
            if ar.mat_inv(X, n) is not None:
                out.append(X)
            continue
        Y = [ar.frob(v, qmul) for v in X]
        c = None
        ok = True
        for i in range(n):
            for j in range(n):
                acc = 0
                for a in range(n):
                    x = X[a * n + i]
                    if x:
                        t = ar.mul(x, Y[fcol[a] * n + j])
                        if fsgn[a] < 0:
                            t = ar.mul(t, ar.neg_one)
                        acc = ar.add(acc, t)
                # target c * F[i][j]
                if fcol[i] == j:
                    ci = acc if fsgn[i] > 0 else ar.mul(acc, ar.neg_one)
                    if c is None:
                        c = ci
                        if c == 0 or not allowed[c]:
                            ok = False
                    elif ci != c:
                        ok = False
                elif acc != 0:
                    ok = False
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(X)
    return out
