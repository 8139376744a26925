"""Maximising P_{Q,H} over the nonnegative part of the alpha-sphere.

The iterative solver works in mass coordinates ``Y_c = s_c * w_c**alpha`` on
the probability simplex, where ``w_c`` is the weight of variable ``c`` and
``s_c`` the number of vertices sharing it (1 for the full problem, the class
size for the symmetry-reduced one).  A KKT point satisfies

    Y_c = w_c * dP/dw_c / (q * P),

and the right-hand side, used as an update, is always an ascent direction on
the simplex (Cauchy-Schwarz), so a backtracking line search along it is
monotone.  Once the residual is small, Newton's method on the stationarity
system finishes the job to machine precision.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import kernels
from ._parallel import ordered_map
from .embeddings import PatternLike, embedding_array
from .hypergraph import Hypergraph, induced_subgraph, remove_vertex
from .polynomial import WeightVector, eval_grad_P, eval_P, normalize, weight_vector

TAU_KKT = 1e-8
ORACLE_MAX_VARS = 6
ORACLE_AGREEMENT = 1e-4


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = 2.0
    tol: float = 1e-10
    max_iter: int = 10000
    restarts: int = 16
    seed: int = 0
    damping: float = 0.0
    grid_resolution: int = 60

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1 or self.restarts < 1:
            raise ValueError("max_iter and restarts must be positive")
        if not 0 <= self.damping < 1:
            raise ValueError("damping must lie in [0, 1)")
        if self.grid_resolution < 1:
            raise ValueError("grid_resolution must be positive")


@dataclass
class SpectralResult:
    lam: float
    x_opt: np.ndarray
    alpha: float
    kkt_residual: float
    iterations: int
    method: str
    converged: bool
    restarts_used: int
    certified_global: bool = False
    oracle_lam: Optional[float] = None

    @property
    def weights(self) -> WeightVector:
        return weight_vector(self.x_opt, self.alpha)

    def to_dict(self) -> dict:
        out = {
            "lambda": self.lam,
            "alpha": self.alpha,
            "kkt_residual": self.kkt_residual,
            "converged": self.converged,
            "certified_global": self.certified_global,
            "method": self.method,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "x_opt": [float(v) for v in self.x_opt],
        }
        if self.oracle_lam is not None:
            out["oracle_lambda"] = self.oracle_lam
        return out


# --------------------------------------------------------------------------
# problems: full (one variable per vertex) and class-reduced


class _FullProblem:
    def __init__(self, emb: np.ndarray, n: int, q: int):
        self.emb = emb
        self.sizes = np.ones(n)
        self.q = q

    def value_grad(self, w):
        return kernels.poly_eval_grad(self.emb, w)

    def hessian(self, w):
        return kernels.poly_hessian(self.emb, w)


class ReducedPolynomial:
    """P restricted to class-constant vectors, one variable per class.

    ``f(w) = sum_s coef_s * prod_c w_c**K[s, c]`` where ``K[s, c]`` counts the
    vertices of class ``c`` used by embeddings of signature ``s``.
    """

    def __init__(self, classes: Sequence[Sequence[int]], emb: np.ndarray, n: int, q: int):
        self.classes = [list(c) for c in classes]
        self.sizes = np.array([len(c) for c in self.classes], dtype=np.float64)
        self.q = q
        d = len(self.classes)
        class_of = np.empty(n, dtype=np.int64)
        for c, members in enumerate(self.classes):
            class_of[np.asarray(members) - 1] = c
        self.class_of = class_of
        if emb.shape[0]:
            cls = class_of[emb]
            sig = np.zeros((emb.shape[0], d), dtype=np.int64)
            np.add.at(sig, (np.repeat(np.arange(emb.shape[0]), q), cls.ravel()), 1)
            K, coef = np.unique(sig, axis=0, return_counts=True)
        else:
            K, coef = np.zeros((0, d), dtype=np.int64), np.zeros(0, dtype=np.int64)
        self.K = K
        self.coef = coef.astype(np.float64)

    def _powers(self, w, shift):
        # w_c ** (K - shift), zero where K < shift
        K = self.K - shift
        with np.errstate(divide="ignore", invalid="ignore"):
            p = np.where(K >= 0, np.power(w[None, :], np.maximum(K, 0)), 0.0)
        return p

    def value_grad(self, w):
        w = np.asarray(w, dtype=np.float64)
        if self.K.shape[0] == 0:
            return 0.0, np.zeros_like(w)
        p0 = self._powers(w, 0)
        p1 = self._powers(w, 1)
        value = float(self.coef @ np.prod(p0, axis=1))
        d = w.shape[0]
        grad = np.empty(d)
        for c in range(d):
            others = np.prod(np.delete(p0, c, axis=1), axis=1)
            grad[c] = float(self.coef @ (self.K[:, c] * p1[:, c] * others))
        return value, grad

    def hessian(self, w):
        w = np.asarray(w, dtype=np.float64)
        d = w.shape[0]
        hess = np.zeros((d, d))
        if self.K.shape[0] == 0:
            return hess
        p0, p1, p2 = self._powers(w, 0), self._powers(w, 1), self._powers(w, 2)
        for c in range(d):
            others = np.prod(np.delete(p0, c, axis=1), axis=1)
            hess[c, c] = self.coef @ (self.K[:, c] * (self.K[:, c] - 1) * p2[:, c] * others)
        for a, b in combinations(range(d), 2):
            others = np.prod(np.delete(p0, [a, b], axis=1), axis=1)
            v = self.coef @ (self.K[:, a] * self.K[:, b] * p1[:, a] * p1[:, b] * others)
            hess[a, b] = hess[b, a] = v

        return hess

    def expand(self, w) -> np.ndarray:
        return np.asarray(w, dtype=np.float64)[self.class_of]

    def value(self, w) -> float:
        return self.value_grad(w)[0]


# --------------------------------------------------------------------------
# ascent machinery


def _weights(Y, sizes, alpha):
    return np.power(np.maximum(Y, 0.0) / sizes, 1.0 / alpha)


def _residual(f, g, w, sizes, q, alpha):
    """max_c |g_c/s_c - q f w_c^(alpha-1)|, one-sided at zero coordinates."""
    thresh = q * f * np.power(w, alpha - 1.0)
    diff = g / sizes - thresh
    diff = np.where(w > 0, np.abs(diff), np.maximum(diff, 0.0))
    return float(diff.max()) if diff.size else 0.0


def _newton_polish(prob, w, alpha, iters=40):
    """Newton on {grad f = mu * alpha * s * w^(alpha-1), sum s w^alpha = 1}."""
    s, q = prob.sizes, prob.q
    f0, g0 = prob.value_grad(w)
    best = (_residual(f0, g0, w, s, q, alpha), w, f0)
    if f0 <= 0:
        return best
    support = np.flatnonzero(w > 1e-12 * w.max())
    mu = q * f0 / alpha
    cur = w.copy()
    for _ in range(iters):
        f, g = prob.value_grad(cur)
        hess = prob.hessian(cur)
        wS, sS = cur[support], s[support]
        k = support.size
        F = np.empty(k + 1)
        F[:k] = g[support] - mu * alpha * sS * wS ** (alpha - 1)
        F[k] = np.sum(sS * wS**alpha) - 1.0
        J = np.zeros((k + 1, k + 1))
        J[:k, :k] = hess[np.ix_(support, support)]
        J[:k, :k] -= np.diag(mu * alpha * (alpha - 1) * sS * wS ** (alpha - 2))
        J[:k, k] = -alpha * sS * wS ** (alpha - 1)
        J[k, :k] = alpha * sS * wS ** (alpha - 1)
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        t = 1.0
        while t > 1e-6 and np.any(wS + t * step[:k] <= 0):
            t *= 0.5
        if np.any(wS + t * step[:k] <= 0):
            break
        nxt = cur.copy()
        nxt[support] = wS + t * step[:k]
        nxt /= np.sum(s * nxt**alpha) ** (1.0 / alpha)
        mu += t * step[k]
        fn, gn = prob.value_grad(nxt)
        res = _residual(fn, gn, nxt, s, q, alpha)
        if fn >= f0 - 1e-12 * max(1.0, f0) and res < best[0]:
            best = (res, nxt, fn)
        if res < 1e-15 * max(1.0, fn):
            break
        cur = nxt
    return best


def _pg_step(prob, w, f, g, alpha):
    """Projected gradient step on the sphere: clip at 0, renormalise."""
    s = prob.sizes
    eta = 1.0
    for _ in range(60):
        cand = np.maximum(w + eta * g / s, 0.0)
        norm = np.sum(s * cand**alpha)
        if norm > 0:
            cand = cand / norm ** (1.0 / alpha)
            fc, gc = prob.value_grad(cand)
            if fc > f:
                return cand, fc, gc
        eta *= 0.5
    return None


def _ascend(prob, Y0, cfg: SolverConfig):
    """Monotone ascent from ``Y0``; returns (f, w, residual, iterations, used_pg)."""
    alpha, q, s = cfg.alpha, prob.q, prob.sizes
    Y = np.asarray(Y0, dtype=np.float64)
    Y = Y / Y.sum()
    w = _weights(Y, s, alpha)
    f, g = prob.value_grad(w)
    used_pg = False
    it = 0
    next_newton = 50
    res = _residual(f, g, w, s, q, alpha)
    while it < cfg.max_iter:
        if f <= 0:
            break
        scale = max(1.0, q * f)
        if res <= cfg.tol * scale:
            break
        if res <= 1e-4 * scale or it >= next_newton:
            next_newton = it + 200
            r2, w2, f2 = _newton_polish(prob, w, alpha)
            if r2 < res:
                res, w, f = r2, w2, f2
                Y = s * w**alpha
                f, g = prob.value_grad(w)
                if res <= cfg.tol * scale:
                    break
        it += 1
        T = w * g / (q * f)
        if cfg.damping > 0:
            T = np.power(Y, cfg.damping) * np.power(T, 1 - cfg.damping)
        T = T / T.sum()
        d = T - Y
        t, accepted = 1.0, False
        for _ in range(40):
            Yn = np.maximum(Y + t * d, 0.0)
            Yn /= Yn.sum()
            wn = _weights(Yn, s, alpha)
            fn, gn = prob.value_grad(wn)
            if fn >= f:
                accepted = True
                break
            t *= 0.5
        if accepted and fn > f * (1 + 1e-15):
            Y, w, f, g = Yn, wn, fn, gn
        else:
            if accepted:
                Y, w, f, g = Yn, wn, fn, gn
            pg = _pg_step(prob, w, f, g, alpha)
            if pg is not None:
                used_pg = True
                w, f, g = pg
                Y = s * w**alpha
            else:
                # stalled: nothing improves; let Newton have the last word
                res = _residual(f, g, w, s, q, alpha)
                r2, w2, f2 = _newton_polish(prob, w, alpha)
                if r2 < res:
                    res, w, f = r2, w2, f2
                    f, g = prob.value_grad(w)
                break
        res = _residual(f, g, w, s, q, alpha)
    return f, w, res, it, used_pg


def _starts(d, sizes, cfg: SolverConfig, extra=()):
    rng = np.random.default_rng(cfg.seed)
    starts = [sizes / sizes.sum()]
    for _ in range(cfg.restarts - 1):
        starts.append(rng.dirichlet(np.ones(d)))
    starts.extend(extra)
    return starts


def _pick_best(cands):
    """Highest value; near-ties broken by the lexicographically smallest vector."""
    top = max(c[0] for c in cands)
    tied = [c for c in cands if c[0] >= top - 1e-12 * max(1.0, abs(top))]
    return min(tied, key=lambda c: tuple(np.round(c[1], 12)))


def _run(prob, expand, n, cfg, extra_starts=(), method="fixed-point") -> SpectralResult:
    starts = _starts(prob.sizes.shape[0], prob.sizes, cfg, extra_starts)
    runs = ordered_map(lambda Y0: _ascend(prob, Y0, cfg), starts)
    cands = [(f, expand(w), res, it, pg) for f, w, res, it, pg in runs]
    f, x, res, _, _ = _pick_best(cands)
    total_iter = sum(c[3] for c in cands)
    used_pg = any(c[4] for c in cands)
    return SpectralResult(
        lam=float(f),
        x_opt=x,
        alpha=cfg.alpha,
        kkt_residual=float(res),
        iterations=int(total_iter),
        method="projected-gradient" if used_pg else method,
        converged=bool(res <= TAU_KKT),
        restarts_used=len(starts),
    )


def _zero_result(n, cfg) -> SpectralResult:
    x = np.full(n, n ** (-1.0 / cfg.alpha)) if n else np.zeros(0)
    return SpectralResult(0.0, x, cfg.alpha, 0.0, 0, "fixed-point", True, 0)


def solve_lambda(
    Q: PatternLike,
    H: Hypergraph,
    cfg: SolverConfig = SolverConfig(),
    starts: Sequence = (),
) -> SpectralResult:
    """lambda_{alpha,Q}(H) by restarted monotone ascent plus Newton polishing.

    ``starts`` adds nonnegative vectors (in x-coordinates) to the seeded
    random restarts; the result is never below P at any of them.
    """
    if cfg.alpha == 1:
        return brute_force_lambda(Q, H, cfg)
    emb = embedding_array(Q, H)
    q = emb.shape[1]
    if emb.shape[0] == 0:
        return _zero_result(H.n, cfg)
    prob = _FullProblem(emb, H.n, q)
    extra = []
    for x0 in starts:
        x0 = np.asarray(x0, dtype=np.float64)
        extra.append(x0**cfg.alpha / np.sum(x0**cfg.alpha))
    return _run(prob, lambda w: w, H.n, cfg, extra)


def kkt_residual(Q: PatternLike, H: Hypergraph, x, alpha: float) -> float:
    """max_i |d_iP(x) - q P(x) x_i^(alpha-1)|; at x_i = 0 only the excess counts."""
    x = np.asarray(x, dtype=np.float64)
    emb = embedding_array(Q, H)
    f, g = eval_grad_P(Q, H, x)
    return _residual(f, g, x, np.ones(H.n), emb.shape[1], alpha)


# --------------------------------------------------------------------------
# symmetry


def is_transposition_automorphism(H: Hypergraph, i: int, j: int) -> bool:
    if i == j:
        return True
    edges = H.edge_set
    for e in H.edges:
        if (i in e) != (j in e):
            swapped = tuple(sorted(j if v == i else i if v == j else v for v in e))
            if swapped not in edges:
                return False
    return True


def equivalence_classes(H: Hypergraph) -> list[list[int]]:
    """Classes of vertices whose transposition is an automorphism of H."""
    parent = list(range(H.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(1, H.n + 1):
        for j in range(i + 1, H.n + 1):
            if find(i) != find(j) and is_transposition_automorphism(H, i, j):
                parent[find(j)] = find(i)
    classes: dict[int, list[int]] = {}
    for v in range(1, H.n + 1):
        classes.setdefault(find(v), []).append(v)
    return sorted(classes.values(), key=lambda c: c[0])


def symmetrize(Q: PatternLike, H: Hypergraph, x, i: int, j: int, alpha: float) -> WeightVector:
    """Replace x_i, x_j by their alpha-power mean; never decreases P."""
    if not is_transposition_automorphism(H, i, j):
        raise ValueError(f"vertices {i} and {j} are not equivalent")
    y = np.array(x, dtype=np.float64)
    m = ((y[i - 1] ** alpha + y[j - 1] ** alpha) / 2) ** (1 / alpha)
    y[i - 1] = y[j - 1] = m
    return weight_vector(y, alpha)


def reduced_polynomial(Q: PatternLike, H: Hypergraph) -> ReducedPolynomial:
    emb = embedding_array(Q, H)
    return ReducedPolynomial(equivalence_classes(H), emb, H.n, emb.shape[1])


def reduced_solve(Q: PatternLike, H: Hypergraph, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """Optimise over class-constant vectors, one variable per equivalence class."""
    if cfg.alpha == 1:
        return brute_force_lambda(Q, H, cfg)
    red = reduced_polynomial(Q, H)
    if red.K.shape[0] == 0:
        return _zero_result(H.n, cfg)
    out = _run(red, red.expand, H.n, cfg)
    out.kkt_residual = kkt_residual(Q, H, out.x_opt, cfg.alpha)
    out.converged = out.kkt_residual <= TAU_KKT
    return out


# --------------------------------------------------------------------------
# grid oracle


@lru_cache(maxsize=64)
def _compositions(total, parts):
    """All nonnegative integer vectors of length ``parts`` summing to ``total``.

    Stars and bars: choose the bar positions among total + parts - 1 slots.
    """
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    slots = total + parts - 1
    bars = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(slots), parts - 1)),
        dtype=np.int64,
    ).reshape(-1, parts - 1)
    edges = np.hstack([np.full((bars.shape[0], 1), -1), bars, np.full((bars.shape[0], 1), slots)])
    out = np.diff(edges, axis=1) - 1
    out.setflags(write=False)
    return out


def _grid_values(red, active, Y, alpha):
    """Vectorised f at mass points ``Y`` (rows, active classes only)."""
    sizes = red.sizes[active]
    with np.errstate(divide="ignore"):
        logw = (np.log(Y) - np.log(sizes)) / alpha
    logw = np.where(np.isfinite(logw), logw, -1e4)
    K = red.K[:, active]
    L = logw @ K.T + np.log(red.coef)[None, :]
    return np.exp(L).sum(axis=1)


def brute_force_lambda(Q: PatternLike, H: Hypergraph, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """Grid search over the class-mass simplex with three local refinements."""
    alpha = cfg.alpha
    red = reduced_polynomial(Q, H)
    if red.K.shape[0] == 0:
        return SpectralResult(0.0, _zero_result(H.n, cfg).x_opt, alpha, 0.0, 0, "brute-force", True, 0, True)
    # classes that no embedding touches carry no weight at the optimum
    active = np.flatnonzero(red.K.sum(axis=0) > 0)
    d = active.size
    if d > ORACLE_MAX_VARS:
        raise ValueError(f"{d} free variables after class reduction; the oracle handles at most {ORACLE_MAX_VARS}")
    N = cfg.grid_resolution
    best_val, best_Y = -1.0, None
    evaluated = 0
    if d == 1:
        best_Y = np.ones(1)
        best_val = float(_grid_values(red, active, best_Y[None, :], alpha)[0])
        evaluated = 1
    else:
        for first in range(N + 1):
            rest = _compositions(N - first, d - 1)
            pts = np.hstack([np.full((rest.shape[0], 1), first), rest]) / N
            vals = _grid_values(red, active, pts, alpha)
            evaluated += pts.shape[0]
            k = int(np.argmax(vals))
            if vals[k] > best_val:
                best_val, best_Y = float(vals[k]), pts[k]
        h = 1.0 / N
        offsets = np.array(np.meshgrid(*[np.arange(-5, 6)] * (d - 1), indexing="ij")).reshape(d - 1, -1).T
        for _ in range(3):
            h /= 5
            head = best_Y[None, :-1] + h * offsets
            tail = 1.0 - head.sum(axis=1, keepdims=True)
            pts = np.hstack([head, tail])
            pts = pts[np.all(pts >= 0, axis=1)]
            vals = _grid_values(red, active, pts, alpha)
            evaluated += pts.shape[0]
            k = int(np.argmax(vals))
            if vals[k] > best_val:
                best_val, best_Y = float(vals[k]), pts[k]
    Y = np.zeros(len(red.classes))
    Y[active] = best_Y
    w = _weights(Y, red.sizes, alpha)
    x = red.expand(w)
    x = x / np.sum(x**alpha) ** (1 / alpha)
    lam = eval_P(Q, H, x)
    return SpectralResult(
        lam=float(lam),
        x_opt=x,
        alpha=alpha,
        kkt_residual=kkt_residual(Q, H, x, alpha),
        iterations=int(evaluated),
        method="brute-force",
        converged=True,
        restarts_used=0,
        certified_global=True,
        oracle_lam=float(lam),
    )


def oracle_variables(Q: PatternLike, H: Hypergraph) -> int:
    red = reduced_polynomial(Q, H)
    return int(np.count_nonzero(red.K.sum(axis=0) > 0)) if red.K.shape[0] else 0


def solve_certified(Q: PatternLike, H: Hypergraph, cfg: SolverConfig = SolverConfig()) -> SpectralResult:
    """solve_lambda, then the grid oracle when the reduced problem is small enough.

    ``certified_global`` is set only if the oracle ran and did not beat the
    iterative value by more than ``ORACLE_AGREEMENT``.
    """
    res = solve_lambda(Q, H, cfg)
    if res.method == "brute-force":
        return res
    if oracle_variables(Q, H) <= ORACLE_MAX_VARS:
        oracle = brute_force_lambda(Q, H, cfg)
        res.oracle_lam = oracle.lam
        res.certified_global = res.converged and oracle.lam <= res.lam + ORACLE_AGREEMENT
    return res


# --------------------------------------------------------------------------
# vertex deletion


@dataclass(frozen=True)
class DeletionCheck:
    vertex: int
    weight_power: float
    lhs: float
    rhs: float
    lam_deleted: float
    chain_bound: float
    identity_ok: bool
    chain_ok: bool


def vertex_deletion_identity(
    Q: PatternLike,
    H: Hypergraph,
    result: SpectralResult,
    i: int,
    cfg: Optional[SolverConfig] = None,
    rel_tol: float = 1e-8,
) -> DeletionCheck:
    """P_{Q,H-i}(x|) = (1 - q x_i^a) lambda and the resulting lower bound on lambda(H-i).

    ``x`` is the certified optimum in ``result``.
    """
    if not result.converged or result.kkt_residual > TAU_KKT:
        raise ValueError("vertex deletion needs a KKT-certified optimum")
    if cfg is None:
        cfg = SolverConfig(alpha=result.alpha)
    alpha = result.alpha
    q = embedding_array(Q, H).shape[1]
    x = np.asarray(result.x_opt, dtype=np.float64)
    lam = result.lam
    G, relabel = remove_vertex(H, i)
    keep = np.array(sorted(relabel), dtype=np.int64) - 1
    xr = x[keep]
    xa = float(x[i - 1] ** alpha)
    lhs = eval_P(Q, G, xr)
    rhs = (1 - q * xa) * lam
    rest = 1 - xa
    if rest > 0 and np.any(xr > 0):
        chain = rest ** (-q / alpha) * (1 - q * xa) * lam
        lam_g = solve_lambda(Q, G, replace(cfg, alpha=alpha), starts=[xr]).lam
    else:
        chain = 0.0
        lam_g = solve_lambda(Q, G, replace(cfg, alpha=alpha)).lam
    scale = max(1.0, abs(lam))
    return DeletionCheck(
        vertex=i,
        weight_power=xa,
        lhs=float(lhs),
        rhs=float(rhs),
        lam_deleted=float(lam_g),
        chain_bound=float(chain),
        identity_ok=abs(lhs - rhs) <= rel_tol * scale,
        chain_ok=lam_g >= chain - rel_tol * scale,
    )
