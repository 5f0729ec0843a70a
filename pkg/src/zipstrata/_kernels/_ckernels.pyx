# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures, same output."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    MAXK = 16


cdef struct Ar:
    const long long* zech
    long long order
    long long neg_one


cdef inline long long f_add(Ar* ar, long long a, long long b) noexcept nogil:
    cdef long long z
    if a == 0:
        return b
    if b == 0:
        return a
    z = ar.zech[((b - a) % ar.order + ar.order) % ar.order]
    if z < 0:
        return 0
    return (a - 1 + z) % ar.order + 1


cdef inline long long f_mul(Ar* ar, long long a, long long b) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return (a + b - 2) % ar.order + 1


cdef inline long long f_inv(Ar* ar, long long a) noexcept nogil:
    return ((1 - a) % ar.order + ar.order) % ar.order + 1


cdef inline long long f_frob(Ar* ar, long long a, long long qmul) noexcept nogil:
    if a == 0:
        return 0
    return ((a - 1) * qmul) % ar.order + 1


cdef int mat_inv(Ar* ar, const long long* X, int k, long long* out) noexcept nogil:
    """Write the inverse of X to out; return 0 if X is singular."""
    cdef long long A[MAXK][2 * MAXK]
    cdef long long tmp, pinv, f, nf
    cdef int i, j, r, col, piv
    for i in range(k):
        for j in range(k):
            A[i][j] = X[i * k + j]
            A[i][k + j] = 1 if i == j else 0
    for col in range(k):
        piv = -1
        for r in range(col, k):
            if A[r][col] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            for j in range(2 * k):
                tmp = A[col][j]
                A[col][j] = A[piv][j]
                A[piv][j] = tmp
        pinv = f_inv(ar, A[col][col])
        for j in range(2 * k):
            A[col][j] = f_mul(ar, pinv, A[col][j])
        for r in range(k):
            f = A[r][col]
            if r != col and f != 0:
                nf = f_mul(ar, ar.neg_one, f)
                for j in range(2 * k):
                    A[r][j] = f_add(ar, A[r][j], f_mul(ar, nf, A[col][j]))
    for i in range(k):
        for j in range(k):
            out[i * k + j] = A[i][k + j]
    return 1


def search_component(zech, order, neg_one, nfield, bsize, steps, idx, sgn):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] zarr = np.ascontiguousarray(zech, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] bs = np.ascontiguousarray(bsize, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] st = np.ascontiguousarray(
        np.asarray(steps, dtype=np.int64).reshape(-1, 6))
    cdef int nsteps = st.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ix = np.zeros((max(nsteps, 1), MAXK), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] sg = np.zeros((max(nsteps, 1), MAXK), dtype=np.int64)
    cdef int nb = bs.shape[0]
    cdef int t, i, j, a, b, ks, kt, src, tgt, ok, pos
    cdef long long v, qmul, scalar
    cdef long long nf = nfield
    cdef int k0 = bs[0]
    cdef int cells = k0 * k0
    cdef Ar ar
    cdef cnp.ndarray[cnp.int64_t, ndim=2] vals = np.zeros((nb, MAXK * MAXK), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] invs = np.zeros((nb, MAXK * MAXK), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] have_inv = np.zeros(nb, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] X = np.zeros(max(cells, 1), dtype=np.int64)
    cdef long long* Xp = <long long*> X.data
    cdef long long Y[MAXK * MAXK]
    cdef long long* S
    cdef long long* V
    for t in range(nsteps):
        for i, v in enumerate(idx[t]):
            ix[t, i] = v
        for i, v in enumerate(sgn[t]):
            sg[t, i] = v
    for t in range(nb):
        if bs[t] > MAXK:
            raise ValueError("block too large for the compiled kernel")
    ar.zech = <const long long*> zarr.data
    ar.order = order
    ar.neg_one = neg_one
    out = []
    if cells == 0:
        return out
    while True:
        V = <long long*> &vals[0, 0]
        for i in range(cells):
            V[i] = Xp[i]
        if mat_inv(&ar, Xp, k0, <long long*> &invs[0, 0]):
            for t in range(1, nb):
                have_inv[t] = 0
            have_inv[0] = 1
            ok = 1
            for t in range(nsteps):
                src = st[t, 0]
                tgt = st[t, 1]
                qmul = st[t, 2]
                scalar = st[t, 4]
                ks = bs[src]
                kt = bs[tgt]
                if st[t, 3]:
                    if not have_inv[src]:
                        mat_inv(&ar, <long long*> &vals[src, 0], ks, <long long*> &invs[src, 0])
                        have_inv[src] = 1
                    S = <long long*> &invs[src, 0]
                else:
                    S = <long long*> &vals[src, 0]
                for i in range(kt):
                    for j in range(kt):
                        a = ix[t, i]
                        b = ix[t, j]
                        if st[t, 3]:
                            v = S[b * ks + a]
                        else:
                            v = S[a * ks + b]
                        v = f_mul(&ar, f_frob(&ar, v, qmul), scalar)
                        if (sg[t, i] + sg[t, j]) & 1:
                            v = f_mul(&ar, v, ar.neg_one)
                        Y[i * kt + j] = v
                V = <long long*> &vals[tgt, 0]
                if st[t, 5]:
                    for i in range(kt * kt):
                        V[i] = Y[i]
                else:
                    for i in range(kt * kt):
                        if V[i] != Y[i]:
                            ok = 0
                            break
                    if not ok:
                        break
            if ok:
                flat = []
                for t in range(nb):
                    for i in range(bs[t] * bs[t]):
                        flat.append(int(vals[t, i]))
                out.append(tuple(flat))
        # odometer, last cell fastest (matches itertools.product)
        pos = cells - 1
        while pos >= 0:
            Xp[pos] += 1
            if Xp[pos] < nf:
                break
            Xp[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return out


def form_filter(zech, order, neg_one, nfield, n, fcol, fsgn, qmul, allowed, mode):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] zarr = np.ascontiguousarray(zech, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fc = np.ascontiguousarray(fcol, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] fs = np.ascontiguousarray(fsgn, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] al = np.ascontiguousarray(allowed, dtype=np.int64)
    cdef int nn = n
    cdef int cells = nn * nn
    cdef int md = mode
    cdef long long qm = qmul
    cdef long long nf = nfield
    cdef int i, j, a, pos, ok, have_c
    cdef long long c, ci, acc, x, t
    cdef long long Y[MAXK * MAXK]
    cdef long long W[MAXK * MAXK]
    cdef Ar ar
    cdef cnp.ndarray[cnp.int64_t, ndim=1] X = np.zeros(max(cells, 1), dtype=np.int64)
    cdef long long* Xp = <long long*> X.data
    if nn > MAXK:
        raise ValueError("matrix too large for the compiled kernel")
    ar.zech = <const long long*> zarr.data
    ar.order = order
    ar.neg_one = neg_one
    out = []
    while True:
        if md == 0:
            if mat_inv(&ar, Xp, nn, W):
                out.append(tuple(X.tolist()))
        else:
            for i in range(cells):
                Y[i] = f_frob(&ar, Xp[i], qm)
            ok = 1
            have_c = 0
            c = 0
            for i in range(nn):
                for j in range(nn):
                    acc = 0
                    for a in range(nn):
                        x = Xp[a * nn + i]
                        if x != 0:
                            t = f_mul(&ar, x, Y[fc[a] * nn + j])
                            if fs[a] < 0:
                                t = f_mul(&ar, t, ar.neg_one)
                            acc = f_add(&ar, acc, t)
                    if fc[i] == j:
                        ci = acc if fs[i] > 0 else f_mul(&ar, acc, ar.neg_one)
                        if not have_c:
                            c = ci
                            have_c = 1
                            if c == 0 or not al[c]:
                                ok = 0
                        elif ci != c:
                            ok = 0
                    elif acc != 0:
                        ok = 0
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple(X.tolist()))
        pos = cells - 1
        while pos >= 0:
            Xp[pos] += 1
            if Xp[pos] < nf:
                break
            Xp[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return out
