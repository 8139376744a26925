"""The Lagrangian Q-polynomial P_{Q,H} and its derivatives.

P_{Q,H}(x) = sum over phi in Inj(Q, H) of prod_{i in phi} x_i.  Every routine
sums over the enumerated embedding array, so evaluation is exact up to
floating-point rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .embeddings import PatternLike, embedding_array
from .hypergraph import Hypergraph

NORM_TOL = 1e-12
RENORMALIZE_TOL = 1e-6


@dataclass(frozen=True)
class WeightVector:
    """A nonnegative point of the alpha-sphere: sum_i x_i**alpha = 1."""

    alpha: float
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    def __len__(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def weight_vector(entries, alpha: float) -> WeightVector:
    """Validate ``entries`` as a point of the alpha-sphere.

    Vectors within ``RENORMALIZE_TOL`` of the sphere are rescaled onto it;
    anything further away is rejected.
    """
    x = np.array(entries, dtype=np.float64)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise ValueError("weight vectors must be finite and nonnegative")
    s = float(np.sum(x**alpha))
    if abs(s - 1.0) > RENORMALIZE_TOL:
        raise ValueError(f"sum of x_i**alpha is {s}, not 1")
    if abs(s - 1.0) > NORM_TOL:
        x = x / s ** (1.0 / alpha)
    return WeightVector(float(alpha), x)


def normalize(x, alpha: float) -> WeightVector:
    """Scale a nonnegative, nonzero vector onto the alpha-sphere."""
    x = np.array(x, dtype=np.float64)
    s = float(np.sum(x**alpha))
    if s <= 0:
        raise ValueError("cannot normalize the zero vector")
    return weight_vector(x / s ** (1.0 / alpha), alpha)


def uniform_vector(n: int, alpha: float) -> WeightVector:
    return WeightVector(float(alpha), np.full(n, n ** (-1.0 / alpha)))


def _as_array(x, n: int) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (n,):
        raise ValueError(f"vector has shape {arr.shape}, host has {n} vertices")
    return arr


def eval_P(Q: PatternLike, H: Hypergraph, x) -> float:
    value, _ = kernels.poly_eval_grad(embedding_array(Q, H), _as_array(x, H.n))
    return value


def eval_P_classical(H: Hypergraph, x) -> float:
    """The edge form r! * sum_{e in H} prod_{i in e} x_i."""
    arr = _as_array(x, H.n)
    if len(H) == 0:
        return 0.0
    idx = np.array(H.edges, dtype=np.int64) - 1
    return math.factorial(H.r) * float(np.prod(arr[idx], axis=1).sum())


def grad_P(Q: PatternLike, H: Hypergraph, x) -> np.ndarray:
    """Component i is the sum of x_S over S in the ordered Q-link of i."""
    _, grad = kernels.poly_eval_grad(embedding_array(Q, H), _as_array(x, H.n))
    return grad


def eval_grad_P(Q: PatternLike, H: Hypergraph, x) -> tuple[float, np.ndarray]:
    return kernels.poly_eval_grad(embedding_array(Q, H), _as_array(x, H.n))


def hessian_P(Q: PatternLike, H: Hypergraph, x) -> np.ndarray:
    return kernels.poly_hessian(embedding_array(Q, H), _as_array(x, H.n))


def link_power_sum(Q: PatternLike, H: Hypergraph, x, i: int, alpha: float) -> float:
    """sum over S in the ordered Q-link of i of x_S**alpha."""
    arr = embedding_array(Q, H)
    xa = _as_array(x, H.n) ** alpha
    rows = arr[(arr == i - 1).any(axis=1)]
    if rows.shape[0] == 0:
        return 0.0
    vals = xa[rows]
    vals[rows == i - 1] = 1.0
    return float(np.prod(vals, axis=1).sum())


def grad_upper_bound_holder(Q: PatternLike, H: Hypergraph, x, i: int, alpha: float) -> float:
    """Hoelder bound d_{Q,H}(i)**((alpha-1)/alpha) * (link power sum)**(1/alpha).

    Dominates the i-th partial derivative at any nonnegative ``x``.
    """
    if alpha <= 1:
        raise ValueError("the Hoelder bound needs alpha > 1")
    if not 1 <= i <= H.n:
        raise ValueError(f"vertex {i} outside 1..{H.n}")
    arr = embedding_array(Q, H)
    deg = int((arr == i - 1).any(axis=1).sum())
    return deg ** ((alpha - 1) / alpha) * link_power_sum(Q, H, x, i, alpha) ** (1 / alpha)
