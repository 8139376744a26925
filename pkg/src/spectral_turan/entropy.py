"""Random embeddings, their mixtures and the entropic density.

A random embedding is stored as a probability vector aligned with the rows
of ``embedding_array(Q, H)``.  All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .embeddings import PatternLike, automorphisms, embedding_array
from .hypergraph import Hypergraph, Pattern
from .solver import SolverConfig, SolverError, solve_lambda

PROB_TOL = 1e-12
TAU_EQ = 1e-6


class DistributionError(ValueError):
    pass


def shannon_entropy(dist) -> float:
    """-sum p log2 p with 0 log 0 = 0; accepts an array or a mapping."""
    if isinstance(dist, dict):
        dist = list(dist.values())
    p = np.asarray(dist, dtype=np.float64).ravel()
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise DistributionError("probabilities must be finite and nonnegative")
    if abs(p.sum() - 1.0) > PROB_TOL * max(1, p.size) ** 0.5 + 1e-12:
        raise DistributionError(f"probabilities sum to {p.sum()}, not 1")
    nz = p[p > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def _row_keys(rows: np.ndarray, n: int) -> np.ndarray:
    # column 0 most significant, so lexicographic row order = key order
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for c in range(rows.shape[1]):
        keys = keys * n + rows[:, c]
    return keys


def orbit_ids(Q: PatternLike, H: Hypergraph) -> np.ndarray:
    """For each embedding, the smallest row index in its Aut(Q) orbit."""
    emb = embedding_array(Q, H)
    if emb.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    keys = _row_keys(emb, H.n)
    ids = np.arange(emb.shape[0])
    for sigma in automorphisms(Q):
        perm = np.array(sigma) - 1
        idx = np.searchsorted(keys, _row_keys(emb[:, perm], H.n))
        ids = np.minimum(ids, idx)
    return ids


@dataclass(frozen=True)
class RandomEmbedding:
    """A distribution on Inj(Q, H), symmetric under Aut(Q)."""

    pattern: PatternLike
    host: Hypergraph
    probs: np.ndarray
    _orbits: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        emb = embedding_array(self.pattern, self.host)
        p = np.array(self.probs, dtype=np.float64)
        if p.shape != (emb.shape[0],):
            raise DistributionError(f"{p.shape[0]} probabilities for {emb.shape[0]} embeddings")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DistributionError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise DistributionError(f"probabilities sum to {p.sum()}, not 1")
        orbits = self._orbits if self._orbits is not None else orbit_ids(self.pattern, self.host)
        # p must be constant on orbits
        lo = np.full(p.shape[0], np.inf)
        hi = np.full(p.shape[0], -np.inf)
        np.minimum.at(lo, orbits, p)
        np.maximum.at(hi, orbits, p)
        spread = (hi - lo)[np.unique(orbits)]
        if spread.size and spread.max() > PROB_TOL:
            raise DistributionError("distribution is not symmetric under Aut(Q)")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "_orbits", orbits)

    @property
    def q(self) -> int:
        return embedding_array(self.pattern, self.host).shape[1]

    @property
    def embeddings(self) -> np.ndarray:
        return embedding_array(self.pattern, self.host)

    def as_dict(self) -> dict:
        """{embedding tuple (1-based): p} over the support."""
        return {
            tuple(int(v) + 1 for v in row): float(pv)
            for row, pv in zip(self.embeddings, self.probs)
            if pv > 0
        }

    def class_probs(self) -> dict:
        """q_phi = |Aut(Q)| * p_phi, keyed by the orbit representative."""
        aut = len(automorphisms(self.pattern))
        reps = np.unique(self._orbits)
        return {tuple(int(v) + 1 for v in self.embeddings[r]): aut * float(self.probs[r]) for r in reps}

    def entropy(self) -> float:
        return shannon_entropy(self.probs)


@dataclass(frozen=True)
class MixtureDistribution:
    weights: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.weights, dtype=np.float64)
        if np.any(y < 0) or abs(y.sum() - 1.0) > PROB_TOL:
            raise DistributionError("mixture weights must form a distribution")

    def __getitem__(self, v: int) -> float:
        return float(self.weights[v - 1])

    @property
    def support(self) -> list[int]:
        return [int(v) + 1 for v in np.flatnonzero(self.weights > 0)]

    def entropy(self) -> float:
        return shannon_entropy(self.weights)


def uniform_embedding(Q: PatternLike, H: Hypergraph) -> RandomEmbedding:
    m = embedding_array(Q, H).shape[0]
    if m == 0:
        raise DistributionError("Inj(Q, H) is empty")
    return RandomEmbedding(Q, H, np.full(m, 1.0 / m))


def mixture(re: RandomEmbedding) -> MixtureDistribution:
    """y_v = (1/q) * sum_i P(X_i = v)."""
    emb = re.embeddings
    q = emb.shape[1]
    y = np.bincount(emb.ravel(), weights=np.repeat(re.probs, q), minlength=re.host.n) / q
    return MixtureDistribution(y)


def embedding_distribution_from_vector(Q: PatternLike, H: Hypergraph, x) -> RandomEmbedding:
    """p_phi = prod_{j in phi} x_j / P(x)."""
    emb = embedding_array(Q, H)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (H.n,) or np.any(x < 0):
        raise DistributionError("x must be a nonnegative vector on the host vertices")
    prods = np.prod(x[emb], axis=1) if emb.shape[0] else np.zeros(0)
    beta = float(prods.sum())
    if beta <= 0:
        raise DistributionError("P(x) = 0: no embedding has positive weight")
    return RandomEmbedding(Q, H, prods / beta)


def entropy_objective(re: RandomEmbedding, alpha: float) -> float:
    """H[(X_1..X_q)] - (q/alpha) H[mixture]."""
    return re.entropy() - re.q / alpha * mixture(re).entropy()


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    log_beta: float
    correction: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


def entropy_difference_identity_check(Q: PatternLike, H: Hypergraph, x, alpha: float) -> IdentityCheck:
    """Both sides of H[X] - (q/a)H[mu] = log2 beta - (q/a) sum_j y_j log2(x_j^a / y_j)."""
    x = np.asarray(x, dtype=np.float64)
    re = embedding_distribution_from_vector(Q, H, x)
    q = re.q
    lhs = entropy_objective(re, alpha)
    emb = re.embeddings
    beta = float(np.prod(x[emb], axis=1).sum())
    y = mixture(re).weights
    on = y > 0
    correction = float(np.sum(y[on] * np.log2(x[on] ** alpha / y[on])))
    rhs = math.log2(beta) - q / alpha * correction
    return IdentityCheck(lhs, rhs, math.log2(beta), correction)


def _symmetric_noise(orbits: np.ndarray, rng) -> np.ndarray:
    z = rng.standard_normal(orbits.shape[0])
    return z[orbits]


def _random_symmetric_distribution(orbits: np.ndarray, rng) -> np.ndarray:
    w = rng.exponential(size=orbits.shape[0])[orbits]
    return w / w.sum()


def _objective_raw(p, emb, n, q, alpha) -> float:
    nz = p[p > 0]
    hj = -np.sum(nz * np.log2(nz))
    y = np.bincount(emb.ravel(), weights=np.repeat(p, q), minlength=n) / q
    yz = y[y > 0]
    hm = -np.sum(yz * np.log2(yz))
    return float(hj - q / alpha * hm)


@dataclass
class EntropicDensity:
    eta: float
    lam: float
    objective: float
    best_perturbed: float
    perturbations: int
    hill_climb_steps: int
    certified_global: bool

    @property
    def gap(self) -> float:
        return abs(self.eta - self.lam)

    @property
    def equal(self) -> bool:
        return self.gap <= TAU_EQ * max(1.0, self.lam)

    @property
    def no_improvement(self) -> bool:
        return self.best_perturbed <= self.eta + TAU_EQ

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "lambda": self.lam,
            "objective_bits": self.objective,
            "gap": self.gap,
            "equal": self.equal,
            "best_perturbed": self.best_perturbed,
            "no_improvement": self.no_improvement,
            "perturbations": self.perturbations,
            "hill_climb_steps": self.hill_climb_steps,
            "certified_global": self.certified_global,
        }


def entropic_density(
    Q: PatternLike,
    H: Hypergraph,
    alpha: float,
    cfg: Optional[SolverConfig] = None,
    perturbations: int = 1000,
    hill_climb_steps: int = 200,
    result=None,
) -> EntropicDensity:
    """eta from the distribution induced by the optimal vector, with a local search.

    ``perturbations`` random Aut-symmetric distributions near the candidate
    (multiplicative noise and mixing with random symmetric distributions over
    all of Inj(Q, H)) are scored, then the best is hill-climbed.  Nothing
    should beat the candidate.
    """
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    if cfg.alpha != alpha:
        raise ValueError("cfg.alpha and alpha disagree")
    emb = embedding_array(Q, H)
    if emb.shape[0] == 0:
        raise DistributionError("Inj(Q, H) is empty; the entropic density is undefined")
    res = result if result is not None else solve_lambda(Q, H, cfg)
    if not res.converged:
        raise SolverError(f"solver did not converge (kkt residual {res.kkt_residual:.3e})")
    re = embedding_distribution_from_vector(Q, H, res.x_opt)
    obj = entropy_objective(re, alpha)
    eta = 2.0**obj

    n, q = H.n, emb.shape[1]
    orbits = re._orbits
    p0 = re.probs
    rng = np.random.default_rng(cfg.seed)
    best_val, best_p = -np.inf, p0
    scales = np.logspace(-4, -0.3, 8)
    for k in range(perturbations):
        t = scales[k % scales.size]
        if k % 2 == 0:
            p = p0 * np.exp(t * _symmetric_noise(orbits, rng))
            p /= p.sum()
        else:
            p = (1 - t) * p0 + t * _random_symmetric_distribution(orbits, rng)
        val = _objective_raw(p, emb, n, q, alpha)
        if val > best_val:
            best_val, best_p = val, p

    # hill climb from the best perturbed point with a shrinking step
    step = 1e-2
    cur, cur_val = best_p, best_val
    for _ in range(hill_climb_steps):
        p = cur * np.exp(step * _symmetric_noise(orbits, rng))
        p /= p.sum()
        val = _objective_raw(p, emb, n, q, alpha)
        if val > cur_val:
            cur, cur_val = p, val
        else:
            step = max(step * 0.9, 1e-6)
    best = max(best_val, cur_val)
    return EntropicDensity(
        eta=float(eta),
        lam=float(res.lam),
        objective=float(obj),
        best_perturbed=float(2.0**best),
        perturbations=perturbations,
        hill_climb_steps=hill_climb_steps,
        certified_global=bool(res.certified_global),
    )
