"""Desk-scale verification suites.

Each suite returns a :class:`VerifyReport`.  Entries of kind ``exact`` carry a
pass flag and make the suite fail when false; entries of kind ``report``
record numbers for claims that only hold asymptotically and never fail.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from ._parallel import ordered_map
from .embeddings import PatternLike, degree_stats, embedding_array, inj_count, is_isomorphic
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    builtin_pattern,
    c5_blowup,
    complete_hypergraph,
    complete_multipartite,
    cycle_graph,
    make_hypergraph,
    path_graph,
    petersen_graph,
    turan_edge_count,
    turan_hypergraph,
)
from .io import encode_graph6, parse_graph6
from .solver import (
    ORACLE_MAX_VARS,
    SolverConfig,
    brute_force_lambda,
    oracle_variables,
    reduced_solve,
    solve_certified,
    solve_lambda,
    vertex_deletion_identity,
)

EXACT = "exact"
REPORT = "report"
REL_TOL = 1e-8


# ------------------------------------------------------------------ reports


@dataclass
class ReportEntry:
    instance: str
    kind: str
    values: dict
    passed: Optional[bool] = None

    def __post_init__(self):
        if self.kind == EXACT and not isinstance(self.passed, bool):
            raise ValueError("exact entries need a pass flag")
        if self.kind == REPORT and self.passed is not None:
            raise ValueError("report-only entries never carry pass/fail")
        if self.kind not in (EXACT, REPORT):
            raise ValueError(f"unknown entry kind {self.kind!r}")

    def to_dict(self) -> dict:
        out = {"instance": self.instance, "kind": self.kind}
        if self.kind == EXACT:
            out["passed"] = self.passed
        out.update(self.values)
        return out


@dataclass
class VerifyReport:
    suite: str
    params: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    rejected: list = field(default_factory=list)
    runtime: float = 0.0

    def exact(self, instance: str, passed: bool, **values) -> None:
        self.entries.append(ReportEntry(instance, EXACT, values, bool(passed)))

    def report(self, instance: str, **values) -> None:
        self.entries.append(ReportEntry(instance, REPORT, values))

    @property
    def exact_entries(self) -> list:
        return [e for e in self.entries if e.kind == EXACT]

    @property
    def failures(self) -> list:
        return [e for e in self.exact_entries if not e.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "exact_checks": len(self.exact_entries),
            "failures": len(self.failures),
            "summary": self.summary,
        }
        if self.rejected:
            out["rejected"] = self.rejected
        if include_runtime:
            out["runtime_s"] = self.runtime
        out["instances"] = [e.to_dict() for e in self.entries]
        return out


class _Timer:
    def __init__(self, report: VerifyReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.runtime = time.perf_counter() - self.t0
        return False


def _ge(a: float, b: float, tol: float = REL_TOL) -> bool:
    return a >= b - tol * max(1.0, abs(b))


# ------------------------------------------------------------ graph sources


def has_triangle(G: Hypergraph) -> bool:
    if G.r != 2:
        return False
    A = G.shadow.astype(np.int64)
    return bool(np.trace(A @ A @ A) > 0)


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``n``."""
    for cuts in itertools.combinations(range(1, n), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[k + 1] - bounds[k] for k in range(parts))


def blowup_compositions(n: int) -> list[tuple[int, ...]]:
    """Compositions of n into 5 parts, one per dihedral orbit (lexicographically least)."""
    seen = set()
    out = []
    for c in compositions(n, 5):
        rots = [c[k:] + c[:k] for k in range(5)]
        orbit = rots + [r[::-1] for r in rots]
        canon = min(orbit)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return sorted(out)


@dataclass(frozen=True)
class GraphFamilySource:
    """Either a generator tag with a size range or a graph6 stream.

    Tags: ``c5-blowups`` (all blowups up to dihedral symmetry), ``turan``
    (``m`` and ``q`` in ``params``), ``complete``, ``paths-cycles``,
    ``triangle-free`` (every triangle-free graph up to isomorphism).
    """

    tag: str = ""
    sizes: tuple = ()
    params: tuple = ()
    graph6: Union[str, bytes, None] = None
    k3_free: bool = False

    def __post_init__(self):
        if (self.graph6 is None) == (not self.tag):
            raise ValueError("give exactly one of a generator tag or a graph6 stream")
        if self.tag and self.tag not in GENERATORS:
            raise ValueError(f"unknown generator {self.tag!r}; choose from {sorted(GENERATORS)}")

    def _raw(self) -> Iterator[tuple[str, Hypergraph]]:
        if self.graph6 is not None:
            data = self.graph6
            if isinstance(data, str):
                data = Path(data).read_bytes()
            for k, G in enumerate(parse_graph6(data), start=1):
                yield f"graph6#{k}:{encode_graph6(G).decode()}", G
            return
        yield from GENERATORS[self.tag](self.sizes, dict(self.params))

    def graphs(self, rejected: Optional[list] = None) -> Iterator[tuple[str, Hypergraph]]:
        for label, G in self._raw():
            if self.k3_free and has_triangle(G):
                if rejected is not None:
                    rejected.append({"instance": label, "reason": "contains a triangle"})
                continue
            yield label, G


def _gen_blowups(sizes, params):
    for n in sizes:
        for c in blowup_compositions(n):
            yield f"C5{list(c)}", c5_blowup(c)


def _gen_turan(sizes, params):
    m, q = params["m"], params.get("q", 2)
    for n in sizes:
        yield f"T^{q}_{{{m},{n}}}", turan_hypergraph(m, q, n)


def _gen_complete(sizes, params):
    r = params.get("r", 2)
    for n in sizes:
        yield f"K_{n}" + (f"^{r}" if r != 2 else ""), complete_hypergraph(n, r)


def _gen_paths_cycles(sizes, params):
    for n in sizes:
        yield f"P_{n}", path_graph(n)
        if n >= 3:
            yield f"C_{n}", cycle_graph(n)


def _gen_triangle_free(sizes, params):
    for n in sizes:
        for k, G in enumerate(triangle_free_graphs(n), start=1):
            yield f"n{n}#{k}:{encode_graph6(G).decode()}", G


GENERATORS = {
    "c5-blowups": _gen_blowups,
    "turan": _gen_turan,
    "complete": _gen_complete,
    "paths-cycles": _gen_paths_cycles,
    "triangle-free": _gen_triangle_free,
}


def _invariant(G: Hypergraph) -> tuple:
    deg = G.degrees()
    nbr = sorted(tuple(sorted(deg[u] for u in range(G.n) if G.shadow[v, u])) for v in range(G.n))
    return (len(G), tuple(sorted(deg)), tuple(nbr))


def triangle_free_graphs(n: int) -> list[Hypergraph]:
    """All triangle-free graphs on n vertices, one per isomorphism class.

    Built by vertex extension: every triangle-free graph on k+1 vertices is a
    triangle-free graph on k vertices plus a vertex joined to an independent set.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    level = [make_hypergraph(0, 2, [])]
    for k in range(n):
        buckets: dict[tuple, list[Hypergraph]] = {}
        for G in level:
            A = G.shadow
            for size in range(k + 1):
                for S in itertools.combinations(range(k), size):
                    if any(A[a, b] for a, b in itertools.combinations(S, 2)):
                        continue
                    H = make_hypergraph(k + 1, 2, list(G.edges) + [(s + 1, k + 1) for s in S])
                    bucket = buckets.setdefault(_invariant(H), [])
                    if not any(is_isomorphic(H, other) for other in bucket):
                        bucket.append(H)
        level = [H for key in sorted(buckets) for H in buckets[key]]
    return level


def colorability_check(G: Hypergraph) -> bool:
    """True iff G has a homomorphism to C_5 (exact backtracking)."""
    if G.r != 2:
        raise HypergraphError("C5-colorability is defined for graphs (r = 2)")
    n = G.n
    A = G.shadow
    nbrs = [np.flatnonzero(A[v]).tolist() for v in range(n)]
    # BFS order so every vertex after the first in its component has a coloured neighbour
    order, seen = [], [False] * n
    for root in sorted(range(n), key=lambda v: -len(nbrs[v])):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in nbrs[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    color = [-1] * n

    def ok(v, c):
        return all(color[u] < 0 or (color[u] - c) % 5 in (1, 4) for u in nbrs[v])

    def place(k):
        if k == n:
            return True
        v = order[k]
        coloured = [color[u] for u in nbrs[v] if color[u] >= 0]
        if coloured:
            cands = [(coloured[0] + 1) % 5, (coloured[0] - 1) % 5]
        elif k == 0 or not nbrs[v]:
            cands = [0]
        else:
            cands = range(5)
        for c in cands:
            if ok(v, c):
                color[v] = c
                if place(k + 1):
                    return True
                color[v] = -1
        return False

    return place(0)


def find_partition(H: Hypergraph, m: int) -> Optional[list[int]]:
    """Part index (0..m-1) per vertex with every edge meeting each part at most once."""
    n = H.n
    A = H.shadow
    order = sorted(range(n), key=lambda v: -int(A[v].sum()))
    part = [-1] * n

    def place(k, used):
        if k == n:
            return True
        v = order[k]
        # symmetry breaking: a fresh part is only opened in increasing order
        for c in range(min(used + 1, m)):
            if all(part[u] != c for u in np.flatnonzero(A[v])):
                part[v] = c
                if place(k + 1, max(used, c + 1)):
                    return True
                part[v] = -1
        return False

    return part if place(0, 0) else None


def standard_corpus() -> list[tuple[str, Hypergraph]]:
    """Graphs on at most 10 vertices used across the suites."""
    out = [(f"K_{n}", complete_hypergraph(n)) for n in range(2, 9)]
    out += [(f"T^2_{{2,{n}}}", turan_hypergraph(2, 2, n)) for n in range(2, 11)]
    out += [(f"T^2_{{3,{n}}}", turan_hypergraph(3, 2, n)) for n in (6, 7, 9)]
    out += [(f"P_{n}", path_graph(n)) for n in range(2, 11)]
    out += [(f"C_{n}", cycle_graph(n)) for n in range(3, 11)]
    out.append(("Petersen", petersen_graph()))
    return out


# ------------------------------------------------------------------- suites


def check_lower_bound_suite(
    Q: PatternLike,
    family: Iterable[tuple[str, Hypergraph]],
    alpha: float,
    cfg: Optional[SolverConfig] = None,
) -> VerifyReport:
    """lambda >= inj(Q,H) n^(-q/alpha); the edge-count reading is recorded alongside."""
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    rep = VerifyReport("lower-bound", {"alpha": alpha, "pattern": getattr(Q, "name", "")})
    family = list(family)
    with _Timer(rep):
        q = Q.q if hasattr(Q, "q") else Q.n

        def one(item):
            label, H = item
            if H.n > 12:
                raise ValueError(f"{label}: desk-scale suites take n <= 12")
            return solve_lambda(Q, H, cfg)

        results = ordered_map(one, family)
        for (label, H), res in zip(family, results):
            inj = inj_count(Q, H)
            bound = inj * H.n ** (-q / alpha) if H.n else 0.0
            rep.exact(
                label,
                _ge(res.lam, bound, 1e-12),
                n=H.n,
                inj=inj,
                lam=res.lam,
                bound_inj=bound,
                bound_edges=len(H) * H.n ** (-q / alpha) if H.n else 0.0,
                slack=res.lam - bound,
                converged=res.converged,
            )
    return rep


def sandwich_constants(ns: Sequence[int], cs: Sequence[Optional[float]]) -> dict:
    """Running maximum of C_n and whether it stays flat over the last two steps."""
    fitted, running = [], -math.inf
    for c in cs:
        if c is not None:
            running = max(running, c)
        fitted.append(running if running > -math.inf else None)
    valid = [f for f in fitted if f is not None]
    tail_flat = len(valid) >= 3 and valid[-1] == valid[-3]
    return {
        "C_fit": valid[-1] if valid else None,
        "C_running_max": fitted,
        "bounded": bool(valid) and all(math.isfinite(f) for f in valid),
        "tail_non_increasing": tail_flat,
    }


def check_turan_sandwich(
    m: int,
    q: int,
    n_range: Iterable[int],
    alpha: float,
    cfg: Optional[SolverConfig] = None,
) -> VerifyReport:
    """q! |T| n^(-q/alpha) <= lambda(T) (exact); the upper constant C is fitted and reported."""
    if not m >= q >= 2:
        raise ValueError("need m >= q >= 2")
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    Q = builtin_pattern(f"kr_r:{q}")
    rep = VerifyReport("turan-sandwich", {"m": m, "q": q, "alpha": alpha})
    ns = list(n_range)
    with _Timer(rep):
        cs = []
        for n in ns:
            T = turan_hypergraph(m, q, n)
            lower = math.factorial(q) * len(T) * n ** (-q / alpha)
            res = reduced_solve(Q, T, cfg)
            cert = oracle_variables(Q, T) <= ORACLE_MAX_VARS and len(T) > 0
            oracle = brute_force_lambda(Q, T, cfg).lam if cert else None
            c = n * n * (res.lam / lower - 1) if lower > 0 else None
            cs.append(c)
            rep.exact(
                f"T^{q}_{{{m},{n}}}",
                _ge(res.lam, lower, 1e-12),
                n=n,
                edges=len(T),
                lam=res.lam,
                lower=lower,
                oracle_lam=oracle,
                C_n=c,
                converged=res.converged,
            )
        info = sandwich_constants(ns, cs)
        rep.summary = {k: v for k, v in info.items() if k != "C_running_max"}
        rep.report("fitted-constant", n=ns, C_n=cs, C_running_max=info["C_running_max"])
    return rep


def check_turan_count(m: int, q: int, n_range: Iterable[int]) -> VerifyReport:
    """|T| from the construction = closed formula, and |T| <= C(m,q)(n/m)^q, both exact."""
    rep = VerifyReport("turan-count", {"m": m, "q": q})
    with _Timer(rep):
        worst = 0.0
        for n in n_range:
            T = turan_hypergraph(m, q, n)
            edges = len(T)
            formula = turan_edge_count(m, q, n)
            cap = Fraction(math.comb(m, q) * n**q, m**q)
            dev = cap - edges
            c = float(dev) / n ** (q - 2) if n else 0.0
            worst = max(worst, c)
            rep.exact(
                f"T^{q}_{{{m},{n}}}",
                edges == formula and edges <= cap,
                n=n,
                edges=edges,
                formula=formula,
                cap=float(cap),
                deviation=float(dev),
                C_dev=c,
            )
        rep.summary = {"C_dev_max": worst}
    return rep


def multipartite_family(m: int, q: int, count: int, seed: int = 0, n_max: int = 8) -> list:
    """T^q_{m,n} instances plus random subgraphs of random complete m-partite q-graphs."""
    rng = np.random.default_rng(seed)
    out = [(f"T^{q}_{{{m},{n}}}", turan_hypergraph(m, q, n), None) for n in range(max(m, q), n_max + 1)]
    while len(out) < count:
        n = int(rng.integers(max(m, q), n_max + 1))
        cuts = np.sort(rng.choice(np.arange(1, n), size=m - 1, replace=False))
        sizes = np.diff(np.concatenate([[0], cuts, [n]])).tolist()
        K = complete_multipartite(sizes, q)
        keep = [e for e in K.edges if rng.random() < 0.7]
        if not keep:
            continue
        parts = [c for c, s in enumerate(sizes) for _ in range(s)]
        out.append((f"sub{sizes}#{len(out)}", make_hypergraph(n, q, keep), parts))
    return out[:count]


def check_kny_suite(
    m: int,
    q: int,
    alpha: float,
    family: Iterable,
    cfg: Optional[SolverConfig] = None,
) -> VerifyReport:
    """lambda(H) <= lambda(T^q_{m,n}) and lambda(H) <= q! C(m,q)^(1/a) m^(-q/a) |H|^(1-1/a).

    ``family`` items are ``(label, H)`` or ``(label, H, parts)``; a missing
    partition is searched for.
    """
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    Q = builtin_pattern(f"kr_r:{q}")
    rep = VerifyReport("kny", {"m": m, "q": q, "alpha": alpha})
    turan_lam: dict[int, float] = {}
    with _Timer(rep):
        for item in family:
            label, H = item[0], item[1]
            parts = item[2] if len(item) > 2 else None
            if H.r != q:
                raise HypergraphError(f"{label} is not {q}-uniform")
            if parts is None:
                parts = find_partition(H, m)
            if parts is None or any(
                len({parts[v - 1] for v in e}) < q for e in H.edges
            ):
                raise HypergraphError(f"{label} is not {m}-partite")
            n = H.n
            if n not in turan_lam:
                turan_lam[n] = reduced_solve(Q, turan_hypergraph(m, q, n), cfg).lam
            res = solve_lambda(Q, H, cfg)
            lam_t = turan_lam[n]
            bound_b = (
                math.factorial(q) * math.comb(m, q) ** (1 / alpha) * m ** (-q / alpha) * len(H) ** (1 - 1 / alpha)
            )
            is_turan = H == turan_hypergraph(m, q, n)
            ok_a = res.lam <= lam_t + REL_TOL * max(1.0, lam_t)
            ok_b = res.lam <= bound_b + REL_TOL * max(1.0, bound_b)
            tight = abs(res.lam - lam_t) <= REL_TOL * max(1.0, lam_t)
            rep.exact(
                label,
                ok_a and ok_b and (tight if is_turan else True),
                n=n,
                edges=len(H),
                lam=res.lam,
                lam_turan=lam_t,
                bound_b=bound_b,
                is_turan=is_turan,
                tight_a=tight,
                converged=res.converged,
            )
    return rep


def pentagon_desk_check(
    n: int,
    alpha: float = 2.0,
    source: Optional[GraphFamilySource] = None,
    cfg: Optional[SolverConfig] = None,
) -> VerifyReport:
    """lambda_{alpha,C5} over triangle-free graphs on n vertices.

    For n = 5 the maximiser being C_5 and C5-colourable is asserted; for
    larger n everything is report-only.
    """
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    if source is None:
        if n > 9:
            raise ValueError("exhaustive mode covers n <= 9; pass a graph6 source")
        source = GraphFamilySource("triangle-free", (n,))
    source = GraphFamilySource(source.tag, source.sizes, source.params, source.graph6, True)
    C5 = builtin_pattern("c5")
    rep = VerifyReport("pentagon", {"n": n, "alpha": alpha})
    with _Timer(rep):
        graphs = [(label, G) for label, G in source.graphs(rep.rejected) if G.n == n]

        def one(item):
            _, G = item
            if inj_count(C5, G) == 0:
                return None
            return solve_certified(C5, G, cfg)

        results = ordered_map(one, graphs)
        rows = []
        for (label, G), res in zip(graphs, results):
            lam = res.lam if res is not None else 0.0
            rows.append((lam, label, G, res))
            rep.report(
                label,
                edges=len(G),
                inj=inj_count(C5, G),
                lam=lam,
                converged=True if res is None else res.converged,
                certified_global=True if res is None else res.certified_global,
                c5_colorable=colorability_check(G),
            )
        if not rows:
            rep.summary = {"graphs": 0}
            return rep
        top = max(r[0] for r in rows)
        winners = [r for r in rows if r[0] >= top - 1e-9 * max(1.0, top)]
        lam_best, label_best, G_best, _ = winners[0]

        blow = [(reduced_solve(C5, c5_blowup(c), cfg).lam, c) for c in blowup_compositions(n)] if n >= 5 else []
        blow_best = max(blow) if blow else (0.0, None)
        colorable = all(colorability_check(r[2]) for r in winners)
        rep.summary = {
            "graphs": len(rows),
            "maximizer": label_best,
            "maximizer_graph6": encode_graph6(G_best).decode(),
            "maximizer_edges": [list(e) for e in G_best.edges],
            "lam_max": lam_best,
            "ties": len(winners),
            "maximizer_c5_colorable": colorable,
            "blowup_max": blow_best[0],
            "blowup_argmax": list(blow_best[1]) if blow_best[1] else None,
            "maximizer_matches_blowup": abs(lam_best - blow_best[0]) <= 1e-8 * max(1.0, lam_best),
        }
        if n == 5:
            is_c5 = len(winners) == 1 and is_isomorphic(G_best, cycle_graph(5))
            rep.exact("maximizer-is-C5", is_c5, lam=lam_best)
            rep.exact("maximizer-c5-colorable", colorable)
    return rep


def deletion_and_degree_reports(
    Q: PatternLike,
    family: Iterable[tuple[str, Hypergraph]],
    alpha: float,
    cfg: Optional[SolverConfig] = None,
    vertices: str = "all",
) -> VerifyReport:
    """Deletion identity and chain (exact) plus the mu_n and min-degree reports."""
    cfg = SolverConfig(alpha=alpha) if cfg is None else cfg
    q = Q.q if hasattr(Q, "q") else Q.n
    rep = VerifyReport("deletion", {"alpha": alpha, "pattern": getattr(Q, "name", "")})
    family = list(family)
    with _Timer(rep):
        mu: dict[int, float] = {}
        inj_max: dict[int, int] = {}
        solved = []
        for label, H in family:
            res = solve_lambda(Q, H, cfg)
            solved.append((label, H, res))
            if res.lam > mu.get(H.n, -1.0):
                mu[H.n] = res.lam
            inj_max[H.n] = max(inj_max.get(H.n, 0), inj_count(Q, H))
            if not res.converged:
                rep.report(label, note="solver did not converge; deletion checks skipped", kkt_residual=res.kkt_residual)
                continue
            targets = range(1, H.n + 1) if vertices == "all" else [int(np.argmin(res.x_opt)) + 1]
            for i in targets:
                chk = vertex_deletion_identity(Q, H, res, i, cfg)
                rep.exact(
                    f"{label}-v{i}",
                    chk.identity_ok and chk.chain_ok,
                    weight_power=chk.weight_power,
                    lhs=chk.lhs,
                    rhs=chk.rhs,
                    lam=res.lam,
                    lam_deleted=chk.lam_deleted,
                    chain_bound=chk.chain_bound,
                )
        if not mu:
            return rep
        n_top = max(mu)
        pi_hat = inj_max[n_top] / n_top**q
        table = []
        for n in sorted(mu):
            row = {"n": n, "mu_n": mu[n]}
            if n - 1 in mu:
                expect = q * (alpha - 1) / alpha * pi_hat * n ** (q - q / alpha - 1)
                row["mu_diff"] = mu[n] - mu[n - 1]
                row["delta"] = mu[n] - mu[n - 1] - expect
            table.append(row)
        rep.report("mu-table", pi_hat_estimate=pi_hat, rows=table)
        scatter = []
        for label, H, res in solved:
            if H.n == 0 or res.lam == 0:
                continue
            st = degree_stats(Q, H)
            scatter.append(
                {
                    "instance": label,
                    "min_degree_ratio": st.min / (q * pi_hat * H.n ** (q - 1)),
                    "min_weight_scaled": float(np.min(res.x_opt)) * H.n ** (1 / alpha),
                }
            )
        rep.report("min-degree-scatter", pi_hat_estimate=pi_hat, points=scatter)
        rep.summary = {"pi_hat_estimate": pi_hat, "n_max": n_top}
    return rep


def check_appendix_inequalities(grid_resolution: int = 200) -> VerifyReport:
    """Three elementary inequalities on uniform grids, counting violations."""
    if grid_resolution < 100:
        raise ValueError("grid_resolution must be at least 100")
    N = grid_resolution
    slack = 1e-12
    rep = VerifyReport("appendix-inequalities", {"grid_resolution": N})
    with _Timer(rep):
        k = np.arange(1, N + 1) / N
        # (x/(x-1))^b >= 1 + b/x on (1, 100] x (0, 10]
        x = (1 + 99 * k)[:, None]
        b = (10 * k)[None, :]
        lhs = np.expm1(-b * np.log1p(-1 / x))
        rhs = b / x
        bad1 = int(np.count_nonzero(lhs < rhs * (1 - slack)))
        rep.exact("power-ratio", bad1 == 0, points=int(lhs.size), violations=bad1,
                  min_margin=float(np.min(lhs - rhs)))
        # (1-x)^(-b) >= 1 + b x on [0, 1) x [0, 10]
        x = (np.arange(N) / N)[:, None]
        b = (10 * np.arange(N + 1) / N)[None, :]
        lhs = np.expm1(-b * np.log1p(-x))
        rhs = b * x
        bad2 = int(np.count_nonzero(lhs < rhs * (1 - slack)))
        rep.exact("bernoulli", bad2 == 0, points=int(lhs.size), violations=bad2,
                  min_margin=float(np.min(lhs - rhs)))
        # 1 - x >= exp(-x - x^2) on [0, 1/2]
        x = np.arange(N + 1) / (2 * N)
        lhs = np.log1p(-x)
        rhs = -x - x * x
        bad3 = int(np.count_nonzero(lhs < rhs - slack * np.abs(rhs)))
        rep.exact("exp-lower", bad3 == 0, points=int(x.size), violations=bad3,
                  min_margin=float(np.min(lhs - rhs)))
        rep.summary = {"violations": bad1 + bad2 + bad3}
    return rep


SUITES = (
    "lower-bound",
    "turan-sandwich",
    "turan-count",
    "kny",
    "pentagon",
    "deletion",
    "appendix-inequalities",
)
