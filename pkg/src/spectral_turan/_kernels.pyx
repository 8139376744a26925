# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: embedding backtracking and the fused polynomial passes.

Semantics match :mod:`spectral_turan._kernels_py` exactly.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free

cnp.import_array()

BACKEND = "cython"


cdef inline bint _has_key(const long long[::1] keys, long long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < keys.shape[0] and keys[lo] == key


def enumerate_injective(int n, int q, order, anchors, checks, adj, edge_keys, long long limit=0):
    cdef const cnp.uint8_t[:, ::1] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef const long long[::1] keys = np.ascontiguousarray(edge_keys, dtype=np.int64)
    cdef const int[::1] ordr = np.asarray(order, dtype=np.int32)

    # flatten anchors / checks into CSR-style arrays
    anc_ptr_np = np.zeros(q + 1, dtype=np.int32)
    anc_list = []
    for kk in range(q):
        anc_list.extend(anchors[kk])
        anc_ptr_np[kk + 1] = len(anc_list)
    cdef int[::1] anc_ptr = anc_ptr_np
    cdef int[::1] anc = np.asarray(anc_list + [0], dtype=np.int32)

    chk_ptr_np = np.zeros(q + 1, dtype=np.int32)
    chk_edges = []
    r = 0
    for kk in range(q):
        for edge in checks[kk]:
            r = len(edge)
            chk_edges.append(list(edge))
        chk_ptr_np[kk + 1] = len(chk_edges)
    cdef int[::1] chk_ptr = chk_ptr_np
    cdef int R = r
    cdef int[:, ::1] chk = np.asarray(chk_edges if chk_edges else [[0]], dtype=np.int32).reshape(len(chk_edges) or 1, -1)

    cdef int[::1] img = np.zeros(max(q, 1), dtype=np.int32)
    cdef int[::1] cursor = np.zeros(max(q, 1), dtype=np.int32)
    cdef cnp.uint8_t[::1] used = np.zeros(max(n, 1), dtype=np.uint8)
    cdef long long[::1] tmp = np.zeros(max(R, 1), dtype=np.int64)

    cdef Py_ssize_t cap = 1024, count = 0
    cdef int* buf = <int*> malloc(cap * max(q, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()

    cdef int k, v, a, i, j, e, d
    cdef long long key, t
    cdef bint ok
    cdef int* newbuf

    if q > 0:
        with nogil:
            k = 0
            cursor[0] = 0
            while k >= 0:
                if cursor[k] >= n:
                    # exhausted depth k: backtrack
                    k -= 1
                    if k >= 0:
                        used[img[k]] = 0
                        cursor[k] += 1
                    continue
                v = cursor[k]
                ok = used[v] == 0
                if ok:
                    for i in range(anc_ptr[k], anc_ptr[k + 1]):
                        if A[img[anc[i]], v] == 0:
                            ok = False
                            break
                if ok:
                    img[k] = v
                    for e in range(chk_ptr[k], chk_ptr[k + 1]):
                        for i in range(R):
                            tmp[i] = img[chk[e, i]]
                        # insertion sort, R is tiny
                        for i in range(1, R):
                            t = tmp[i]
                            j = i - 1
                            while j >= 0 and tmp[j] > t:
                                tmp[j + 1] = tmp[j]
                                j -= 1
                            tmp[j + 1] = t
                        key = 0
                        for i in range(R - 1, -1, -1):
                            key = key * n + tmp[i]
                        if not _has_key(keys, key):
                            ok = False
                            break
                if not ok:
                    cursor[k] += 1
                    continue
                if k == q - 1:
                    if count == cap:
                        cap *= 2
                        newbuf = <int*> realloc(buf, cap * q * sizeof(int))
                        if newbuf == NULL:
                            break
                        buf = newbuf
                    for d in range(q):
                        buf[count * q + ordr[d]] = img[d]
                    count += 1
                    if limit > 0 and count >= limit:
                        break
                    cursor[k] += 1
                    continue
                used[v] = 1
                k += 1
                cursor[k] = 0

    out = np.empty((count, q), dtype=np.int32)
    cdef int[:, ::1] ov = out
    cdef Py_ssize_t row
    for row in range(count):
        for d in range(q):
            ov[row, d] = buf[row * q + d]
    free(buf)
    if count > 1:
        out = out[np.lexsort(out.T[::-1])]
    return out


def poly_eval_grad(emb, x):
    cdef const int[:, ::1] E = np.ascontiguousarray(emb, dtype=np.int32)
    cdef const double[::1] X = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = X.shape[0], m = E.shape[0], q = E.shape[1] if E.ndim == 2 else 0
    grad = np.zeros(n)
    cdef double[::1] G = grad
    cdef double value = 0.0, pre, run
    cdef double suf[64]
    cdef Py_ssize_t i, j
    if q > 63:
        raise ValueError("pattern too large")
    with nogil:
        for i in range(m):
            suf[q] = 1.0
            for j in range(q - 1, -1, -1):
                suf[j] = suf[j + 1] * X[E[i, j]]
            value += suf[0]
            pre = 1.0
            for j in range(q):
                G[E[i, j]] += pre * suf[j + 1]
                pre *= X[E[i, j]]
    return value, grad


def poly_hessian(emb, x):
    cdef const int[:, ::1] E = np.ascontiguousarray(emb, dtype=np.int32)
    cdef const double[::1] X = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = X.shape[0], m = E.shape[0], q = E.shape[1] if E.ndim == 2 else 0
    hess = np.zeros((n, n))
    cdef double[:, ::1] H = hess
    cdef double prod
    cdef Py_ssize_t i, a, b, c
    with nogil:
        for i in range(m):
            for a in range(q):
                for b in range(a + 1, q):
                    prod = 1.0
                    for c in range(q):
                        if c != a and c != b:
                            prod *= X[E[i, c]]
                    H[E[i, a], E[i, b]] += prod
                    H[E[i, b], E[i, a]] += prod
    return hess
