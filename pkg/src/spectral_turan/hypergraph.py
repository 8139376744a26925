"""Uniform hypergraphs on labelled vertex sets and the standard constructions.

Vertices are the integers ``1..n``. Edges are stored as strictly increasing
tuples, and the edge tuple itself is kept sorted, so two hypergraphs with the
same labelled edge set compare (and hash) equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class HypergraphError(ValueError):
    """Raised for malformed hypergraph input."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.edge_set

    @cached_property
    def shadow(self) -> np.ndarray:
        """0-based boolean matrix: ``u`` and ``v`` lie in a common edge."""
        adj = np.zeros((self.n, self.n), dtype=np.uint8)
        for e in self.edges:
            for u, v in itertools.permutations(e, 2):
                adj[u - 1, v - 1] = 1
        return adj

    @cached_property
    def edge_keys(self) -> np.ndarray:
        keys = [kernels.edge_key([v - 1 for v in e], self.n) for e in self.edges]
        return np.array(sorted(keys), dtype=np.int64)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return deg

    def add_edge(self, vertices: Iterable[int]) -> "Hypergraph":
        return make_hypergraph(self.n, self.r, list(self.edges) + [tuple(vertices)])

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply ``v -> perm[v - 1]`` to every vertex."""
        return make_hypergraph(
            self.n, self.r, [tuple(perm[v - 1] for v in e) for e in self.edges]
        )


@dataclass(frozen=True)
class Pattern:
    """A pattern hypergraph with its automorphism count |Inj(Q, Q)|."""

    graph: Hypergraph
    aut_count: int
    name: str = field(default="", compare=False)

    @property
    def q(self) -> int:
        return self.graph.n

    @property
    def r(self) -> int:
        return self.graph.r


def make_hypergraph(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and canonicalise an edge list into a :class:`Hypergraph`."""
    if n < 0:
        raise HypergraphError(f"vertex count must be nonnegative, got {n}")
    if r < 1:
        raise HypergraphError(f"uniformity must be positive, got {r}")
    out = []
    seen = set()
    for raw in edges:
        e = tuple(sorted(int(v) for v in raw))
        if len(e) != r:
            raise HypergraphError(f"edge {tuple(raw)} has {len(e)} vertices, expected {r}")
        if len(set(e)) != r:
            raise HypergraphError(f"edge {tuple(raw)} repeats a vertex")
        if e[0] < 1 or e[-1] > n:
            raise HypergraphError(f"edge {tuple(raw)} has a vertex outside 1..{n}")
        if e in seen:
            raise HypergraphError(f"duplicate edge {e}")
        seen.add(e)
        out.append(e)
    return Hypergraph(n, r, tuple(sorted(out)))


def empty_hypergraph(n: int, r: int = 2) -> Hypergraph:
    return Hypergraph(n, r, ())


def complete_hypergraph(n: int, r: int = 2) -> Hypergraph:
    """K_n^r: every r-subset of [n]."""
    return make_hypergraph(n, r, itertools.combinations(range(1, n + 1), r))


def single_edge(r: int) -> Hypergraph:
    """K_r^r."""
    return complete_hypergraph(r, r)


def cycle_graph(n: int) -> Hypergraph:
    if n < 3:
        raise HypergraphError("a cycle needs at least 3 vertices")
    return make_hypergraph(n, 2, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Hypergraph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return make_hypergraph(n, 2, [(i, i + 1) for i in range(1, n)])


def star_graph(leaves: int) -> Hypergraph:
    """K_{1,leaves} with centre 1."""
    return make_hypergraph(leaves + 1, 2, [(1, i) for i in range(2, leaves + 2)])


def petersen_graph() -> Hypergraph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return make_hypergraph(10, 2, outer + spokes + inner)


def balanced_partition(n: int, m: int) -> list[int]:
    """Part sizes of a balanced m-partition of [n], larger parts first.

    With ``n = m*s + t`` the first ``t`` parts get ``s + 1`` vertices.
    """
    if m < 1:
        raise HypergraphError("need at least one part")
    s, t = divmod(n, m)
    return [s + 1] * t + [s] * (m - t)


def parts_from_sizes(sizes: Sequence[int]) -> list[list[int]]:
    """Consecutive vertex blocks with the given sizes, starting at vertex 1."""
    parts, start = [], 1
    for size in sizes:
        parts.append(list(range(start, start + size)))
        start += size
    return parts


def complete_multipartite(part_sizes: Sequence[int], q: int) -> Hypergraph:
    """All q-sets meeting each part in at most one vertex."""
    parts = parts_from_sizes(part_sizes)
    edges = []
    for chosen in itertools.combinations(parts, q):
        edges.extend(itertools.product(*chosen))
    return make_hypergraph(sum(part_sizes), q, edges)


def turan_hypergraph(m: int, q: int, n: int) -> Hypergraph:
    """The balanced complete m-partite q-graph T^q_{m,n}."""
    if q < 1 or m < q:
        raise HypergraphError(f"need m >= q >= 1, got m={m}, q={q}")
    if n < 1:
        raise HypergraphError("need at least one vertex")
    return complete_multipartite(balanced_partition(n, m), q)


def turan_edge_count(m: int, q: int, n: int) -> int:
    """|T^q_{m,n}| from the part-size formula, n = m*s + t."""
    s, t = divmod(n, m)
    return sum(
        math.comb(t, i) * math.comb(m - t, q - i) * (s + 1) ** i * s ** (q - i)
        for i in range(q + 1)
    )


def c5_blowup(part_sizes: Sequence[int]) -> Hypergraph:
    """Blow-up of C_5: parts B_1..B_5, B_i complete to B_{i+1 mod 5}."""
    if len(part_sizes) != 5:
        raise HypergraphError(f"a C5 blow-up needs exactly 5 parts, got {len(part_sizes)}")
    if any(s < 1 for s in part_sizes):
        raise HypergraphError("blow-up parts must be nonempty")
    parts = parts_from_sizes(part_sizes)
    edges = []
    for i in range(5):
        edges.extend(itertools.product(parts[i], parts[(i + 1) % 5]))
    return make_hypergraph(sum(part_sizes), 2, edges)


def c5_blowup_coloring(part_sizes: Sequence[int]) -> dict[int, int]:
    """The part map of :func:`c5_blowup`, a homomorphism onto C_5 (labels 1..5)."""
    return {v: i + 1 for i, part in enumerate(parts_from_sizes(part_sizes)) for v in part}


def induced_subgraph(h: Hypergraph, keep: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """H[S], relabelled to 1..|S| in increasing order, with the old->new map."""
    keep = sorted(set(keep))
    for v in keep:
        if not 1 <= v <= h.n:
            raise HypergraphError(f"vertex {v} outside 1..{h.n}")
    relabel = {v: i + 1 for i, v in enumerate(keep)}
    edges = [tuple(relabel[v] for v in e) for e in h.edges if all(v in relabel for v in e)]
    return make_hypergraph(len(keep), h.r, edges), relabel


def remove_vertex(h: Hypergraph, v: int) -> tuple[Hypergraph, dict[int, int]]:
    if not 1 <= v <= h.n:
        raise HypergraphError(f"vertex {v} outside 1..{h.n}")
    return induced_subgraph(h, (u for u in h.vertices if u != v))


def pattern_of(graph: Hypergraph, name: str = "") -> Pattern:
    """Wrap ``graph`` as a pattern, computing |Aut| = |Inj(Q, Q)|."""
    if len(graph) == 0:
        raise HypergraphError("a pattern needs at least one edge")
    from .embeddings import inj_count

    return Pattern(graph, inj_count(graph, graph), name)


BUILTIN_PATTERNS = ("k2", "k3", "c5", "kr_r:<r>")


def builtin_pattern(spec: str) -> Pattern:
    """Named patterns: ``k2``, ``k3``, ``c5`` and ``kr_r:<r>`` (single r-edge)."""
    spec = spec.strip().lower()
    if spec == "k2":
        return pattern_of(complete_hypergraph(2), "K2")
    if spec == "k3":
        return pattern_of(complete_hypergraph(3), "K3")
    if spec == "c5":
        return pattern_of(cycle_graph(5), "C5")
    if spec.startswith("kr_r:"):
        r = int(spec.split(":", 1)[1])
        return pattern_of(single_edge(r), f"K{r}^{r}")
    raise HypergraphError(f"unknown pattern {spec!r}; builtins are {', '.join(BUILTIN_PATTERNS)}")
