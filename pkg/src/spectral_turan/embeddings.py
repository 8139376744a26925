"""Injective homomorphisms Inj(Q, H), Q-degrees and ordered Q-links.

An embedding is the tuple ``(phi(1), ..., phi(q))`` of host vertices, indexed
by the label order of the pattern.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from . import kernels
from .hypergraph import Hypergraph, HypergraphError, Pattern

PatternLike = Union[Pattern, Hypergraph]


def _graph(Q: PatternLike) -> Hypergraph:
    return Q.graph if isinstance(Q, Pattern) else Q


def search_plan(Q: Hypergraph):
    """Most-constrained-first visiting order for the backtracking search.

    Returns ``(order, anchors, checks)`` in the form the kernels expect.
    """
    q = Q.n
    adj = Q.shadow
    deg = adj.sum(axis=1)
    placed: list[int] = []
    remaining = set(range(q))
    while remaining:
        def score(u):
            links = sum(int(adj[u, p]) for p in placed)
            return (links, int(deg[u]), -u)

        u = max(remaining, key=score)
        placed.append(u)
        remaining.remove(u)
    depth = {u: k for k, u in enumerate(placed)}
    anchors = [[depth[p] for p in placed[:k] if adj[u, p]] for k, u in enumerate(placed)]
    checks: list[list[tuple[int, ...]]] = [[] for _ in range(q)]
    for e in Q.edges:
        ds = tuple(depth[v - 1] for v in e)
        checks[max(ds)].append(ds)
    return placed, anchors, checks


@lru_cache(maxsize=512)
def _embedding_array(Q: Hypergraph, H: Hypergraph, limit: int = 0) -> np.ndarray:
    if Q.r != H.r:
        raise HypergraphError(f"uniformity mismatch: pattern is {Q.r}-uniform, host is {H.r}-uniform")
    if Q.n > H.n:
        return np.zeros((0, Q.n), dtype=np.int32)
    order, anchors, checks = search_plan(Q)
    arr = kernels.enumerate_injective(
        H.n, Q.n, order, anchors, checks, H.shadow, H.edge_keys, limit
    )
    arr.setflags(write=False)
    return arr


def embedding_array(Q: PatternLike, H: Hypergraph) -> np.ndarray:
    """Inj(Q, H) as a read-only 0-based int32 array of shape (inj, q)."""
    return _embedding_array(_graph(Q), H)


@dataclass(frozen=True)
class EmbeddingList:
    pattern: PatternLike
    host: Hypergraph
    array: np.ndarray

    @property
    def items(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) + 1 for v in row) for row in self.array]

    def __len__(self) -> int:
        return self.array.shape[0]

    def __iter__(self):
        return iter(self.items)


def enumerate_injective(Q: PatternLike, H: Hypergraph) -> EmbeddingList:
    """All injective homomorphisms of Q into H, in lexicographic order."""
    return EmbeddingList(Q, H, embedding_array(Q, H))


def inj_count(Q: PatternLike, H: Hypergraph) -> int:
    return int(embedding_array(Q, H).shape[0])


def has_injective(Q: PatternLike, H: Hypergraph) -> bool:
    return _embedding_array(_graph(Q), H, 1).shape[0] > 0


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    """Isomorphism test: equal sizes plus one injective edge-preserving map."""
    if (G.n, G.r, len(G)) != (H.n, H.r, len(H)):
        return False
    if sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return has_injective(G, H)


def count_copies(Q: Pattern, H: Hypergraph) -> int:
    """N(Q, H) = inj(Q, H) / |Aut(Q)|."""
    inj = inj_count(Q, H)
    copies, rem = divmod(inj, Q.aut_count)
    assert rem == 0, f"|Aut(Q)|={Q.aut_count} does not divide inj={inj}"
    return copies


def _check_vertex(H: Hypergraph, v: int) -> None:
    if not 1 <= v <= H.n:
        raise HypergraphError(f"vertex {v} outside 1..{H.n}")


def q_degrees(Q: PatternLike, H: Hypergraph) -> np.ndarray:
    """d_{Q,H}(v) for every vertex, as an integer array indexed 0..n-1."""
    arr = embedding_array(Q, H)
    return np.bincount(arr.ravel(), minlength=H.n).astype(np.int64)


def q_degree(Q: PatternLike, H: Hypergraph, v: int) -> int:
    """Number of embeddings whose image contains ``v``."""
    _check_vertex(H, v)
    return int(q_degrees(Q, H)[v - 1])


@dataclass(frozen=True)
class DegreeStats:
    min: float
    avg: float


def degree_stats(Q: PatternLike, H: Hypergraph) -> DegreeStats:
    if H.n == 0:
        return DegreeStats(0, 0.0)
    deg = q_degrees(Q, H)
    return DegreeStats(int(deg.min()), float(deg.sum()) / H.n)


@dataclass(frozen=True)
class QLink:
    vertex: int
    tuples: Counter

    @property
    def total(self) -> int:
        return sum(self.tuples.values())


def q_link(Q: PatternLike, H: Hypergraph, v: int) -> QLink:
    """The ordered Q-link: multiset of ``phi - v`` over embeddings through ``v``."""
    _check_vertex(H, v)
    arr = embedding_array(Q, H)
    links: Counter = Counter()
    for row in arr[(arr == v - 1).any(axis=1)]:
        links[tuple(int(u) + 1 for u in row if u != v - 1)] += 1
    return QLink(v, links)


def automorphisms(Q: PatternLike) -> list[tuple[int, ...]]:
    """Aut(Q) = Inj(Q, Q) as image tuples."""
    g = _graph(Q)
    return enumerate_injective(g, g).items
