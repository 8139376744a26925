"""Pure-Python/numpy fallback for the compiled kernels in ``_kernels.pyx``.

Both modules expose the same three functions with identical semantics; the
selector in :mod:`spectral_turan.kernels` picks one at import time.
"""

import bisect

import numpy as np

BACKEND = "python"


def enumerate_injective(n, q, order, anchors, checks, adj, edge_keys, limit=0):
    """Backtracking search for injective, edge-preserving maps of a pattern.

    Parameters
    ----------
    n : int
        Number of host vertices (0-based labels ``0..n-1``).
    q : int
        Number of pattern vertices.
    order : sequence of int
        Pattern vertex placed at each search depth.
    anchors : sequence of sequence of int
        ``anchors[k]`` lists earlier depths whose pattern vertex shares an edge
        with ``order[k]``; their images must be adjacent in the host shadow.
    checks : sequence of sequence of sequence of int
        ``checks[k]`` lists the pattern edges (as tuples of depths) whose last
        vertex is placed at depth ``k``.
    adj : ndarray of uint8, shape (n, n)
        Host 2-shadow adjacency.
    edge_keys : ndarray of int64
        Sorted keys of host edges, see :func:`edge_key`.
    limit : int
        Stop after this many maps; ``0`` means enumerate all.

    Returns
    -------
    ndarray of int32, shape (m, q)
        Row ``i`` holds the image of pattern vertex ``j`` in column ``j``.
        Rows are in lexicographic order.
    """
    keys = [int(k) for k in edge_keys]
    adjl = [np.flatnonzero(adj[v]).tolist() for v in range(n)]
    adjs = [set(a) for a in adjl]
    img = [0] * q
    used = [False] * n
    found = []

    def has_edge(depths):
        vs = sorted(img[d] for d in depths)
        key = 0
        for v in reversed(vs):
            key = key * n + v
        i = bisect.bisect_left(keys, key)
        return i < len(keys) and keys[i] == key

    def rec(k):
        if k == q:
            row = [0] * q
            for d in range(q):
                row[order[d]] = img[d]
            found.append(row)
            return limit > 0 and len(found) >= limit
        if anchors[k]:
            first = anchors[k][0]
            cands = adjl[img[first]]
            rest = [adjs[img[a]] for a in anchors[k][1:]]
        else:
            cands = range(n)
            rest = []
        for v in cands:
            if used[v] or any(v not in s for s in rest):
                continue
            img[k] = v
            if all(has_edge(e) for e in checks[k]):
                used[v] = True
                stop = rec(k + 1)
                used[v] = False
                if stop:
                    return True
        return False

    if q > 0:
        rec(0)
    out = np.array(sorted(found), dtype=np.int32).reshape(-1, q)
    return out


def edge_key(vertices, n):
    """Integer key of a sorted vertex tuple, base ``n``, least significant first."""
    key = 0
    for v in reversed(vertices):
        key = key * n + v
    return key


def _excluded_products(X):
    m, q = X.shape
    ones = np.ones((m, 1))
    pre = np.cumprod(np.hstack([ones, X[:, :-1]]), axis=1)
    suf = np.cumprod(np.hstack([ones, X[:, :0:-1]]), axis=1)[:, ::-1]
    return pre * suf


def poly_eval_grad(emb, x):
    """Value and gradient of ``sum_rows prod_j x[emb[row, j]]``."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if emb.shape[0] == 0:
        return 0.0, np.zeros(n)
    X = x[emb]
    excl = _excluded_products(X)
    value = float(np.sum(excl[:, 0] * X[:, 0]))
    grad = np.bincount(emb.ravel(), weights=excl.ravel(), minlength=n)
    return value, grad


def poly_hessian(emb, x):
    """Hessian of ``sum_rows prod_j x[emb[row, j]]`` (rows have distinct entries)."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    hess = np.zeros(n * n)
    m, q = emb.shape
    if m == 0 or q < 2:
        return hess.reshape(n, n)
    X = x[emb]
    for a in range(q):
        for b in range(a + 1, q):
            prod = np.ones(m)
            for c in range(q):
                if c != a and c != b:
                    prod *= X[:, c]
            ia, ib = emb[:, a], emb[:, b]
            hess += np.bincount(ia * n + ib, weights=prod, minlength=n * n)
            hess += np.bincount(ib * n + ia, weights=prod, minlength=n * n)
    return hess.reshape(n, n)
