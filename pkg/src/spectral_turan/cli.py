"""Command-line entry point.

Exit codes: 0 success, 1 failed exact check, 2 input error, 3 solver did not
converge.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import kernels
from .embeddings import count_copies, degree_stats, inj_count, q_degrees
from .entropy import DistributionError, entropic_density
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    Pattern,
    builtin_pattern,
    c5_blowup,
    complete_hypergraph,
    cycle_graph,
    path_graph,
    pattern_of,
    petersen_graph,
    single_edge,
    star_graph,
    turan_hypergraph,
)
from .io import FormatError, format_edgelist, parse_graph6, read_edgelist, write_report
from .solver import SolverConfig, SolverError, brute_force_lambda, reduced_solve, solve_certified, solve_lambda
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NONCONVERGED = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    alpha: float = 2.0
    pattern: str = "k2"
    host: Optional[str] = None
    graph6: Optional[str] = None
    tol: float = 1e-10
    max_iter: int = 10000
    restarts: int = 16
    seed: int = 0
    grid: int = 60
    out: Optional[str] = None
    format: str = "json"
    method: str = "auto"
    suite: Optional[str] = None
    spec: Optional[str] = None
    m: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None
    n_range: Optional[str] = None
    family: Optional[str] = None
    count: int = 30
    perturbations: int = 1000

    def solver(self) -> SolverConfig:
        return SolverConfig(
            alpha=self.alpha,
            tol=self.tol,
            max_iter=self.max_iter,
            restarts=self.restarts,
            seed=self.seed,
            grid_resolution=self.grid,
        )


# ------------------------------------------------------------------ parsing


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> list[int]:
    """``a-b`` (inclusive) or ``a,b,c``."""
    if "-" in text and "," not in text:
        lo, hi = text.split("-", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise InputError(f"bad range {text!r}") from None
    return _ints(text)


def generated_host(spec: str) -> Hypergraph:
    """Generator specs: complete:n[,r] cycle:n path:n star:k petersen edge:r
    turan:m,q,n blowup:a,b,c,d,e."""
    name, _, args = spec.partition(":")
    vals = _ints(args) if args else []
    try:
        if name == "complete":
            return complete_hypergraph(*vals)
        if name == "cycle":
            return cycle_graph(*vals)
        if name == "path":
            return path_graph(*vals)
        if name == "star":
            return star_graph(*vals)
        if name == "petersen" and not vals:
            return petersen_graph()
        if name == "edge":
            return single_edge(*vals)
        if name == "turan":
            return turan_hypergraph(*vals)
        if name == "blowup":
            return c5_blowup(vals)
    except TypeError:
        raise InputError(f"wrong number of arguments in generator spec {spec!r}") from None
    raise InputError(f"unknown generator spec {spec!r}")


def load_host(spec: str) -> Hypergraph:
    path = Path(spec)
    if path.exists():
        return read_edgelist(path)
    if ":" in spec or spec == "petersen":
        return generated_host(spec)
    raise InputError(f"host {spec!r} is neither a file nor a generator spec")


def load_pattern(spec: str) -> Pattern:
    try:
        return builtin_pattern(spec)
    except (KeyError, ValueError):
        pass
    path = Path(spec)
    if path.exists():
        return pattern_of(read_edgelist(path), path.stem)
    raise InputError(f"pattern {spec!r} is neither builtin (k2, k3, c5, kr_r:<r>) nor a file")


def hosts(cfg: RunConfig) -> list[tuple[str, Hypergraph]]:
    if (cfg.host is None) == (cfg.graph6 is None):
        raise InputError("give exactly one of --host or --graph6")
    if cfg.host is not None:
        return [(cfg.host, load_host(cfg.host))]
    data = Path(cfg.graph6).read_bytes()
    return [(f"graph6#{k}", G) for k, G in enumerate(parse_graph6(data), start=1)]


# --------------------------------------------------------------- subcommands


def _wrap(items: list[dict], cfg: RunConfig, kind: str) -> dict:
    if len(items) == 1 and cfg.graph6 is None:
        return items[0]
    return {"command": kind, "instances": items}


def cmd_count(cfg: RunConfig):
    Q = load_pattern(cfg.pattern)
    items = []
    for label, H in hosts(cfg):
        st = degree_stats(Q, H)
        items.append(
            {
                "host": label,
                "n": H.n,
                "edges": len(H),
                "pattern": Q.name,
                "aut": Q.aut_count,
                "inj": inj_count(Q, H),
                "copies": count_copies(Q, H),
                "min_degree": st.min,
                "avg_degree": st.avg,
                "degrees": q_degrees(Q, H).tolist(),
            }
        )
    return _wrap(items, cfg, "count"), EXIT_OK


def _solve(Q, H, cfg: RunConfig):
    sc = cfg.solver()
    if cfg.method == "brute-force" or cfg.alpha == 1:
        return brute_force_lambda(Q, H, sc)
    if cfg.method == "reduced":
        return reduced_solve(Q, H, sc)
    if cfg.method == "fixed-point":
        return solve_lambda(Q, H, sc)
    return solve_certified(Q, H, sc)


def cmd_lambda(cfg: RunConfig):
    Q = load_pattern(cfg.pattern)
    items, code = [], EXIT_OK
    for label, H in hosts(cfg):
        res = _solve(Q, H, cfg)
        d = {"host": label, "n": H.n, "pattern": Q.name}
        d.update(res.to_dict())
        d["lower_bound"] = inj_count(Q, H) * H.n ** (-Q.q / cfg.alpha) if H.n else 0.0
        items.append(d)
        if not res.converged:
            code = EXIT_NONCONVERGED
    return _wrap(items, cfg, "lambda"), code


def cmd_entropy(cfg: RunConfig):
    Q = load_pattern(cfg.pattern)
    items, code = [], EXIT_OK
    for label, H in hosts(cfg):
        ed = entropic_density(Q, H, cfg.alpha, cfg.solver(), perturbations=cfg.perturbations)
        d = {"host": label, "pattern": Q.name}
        d.update(ed.to_dict())
        items.append(d)
        if not (ed.equal and ed.no_improvement):
            code = EXIT_FAIL
    return _wrap(items, cfg, "entropy"), code


def cmd_construct(cfg: RunConfig):
    if not cfg.spec:
        raise InputError("construct needs a generator spec, e.g. turan:3,2,7 or blowup:2,1,1,1,1")
    return format_edgelist(generated_host(cfg.spec)), EXIT_OK


def _need(value, flag):
    if value is None:
        raise InputError(f"this suite needs {flag}")
    return value


def _family(cfg: RunConfig, default: str):
    if cfg.graph6:
        return V.GraphFamilySource(graph6=cfg.graph6)
    tag = cfg.family or default
    sizes = tuple(parse_range(cfg.n_range)) if cfg.n_range else tuple(range(2, 9))
    params = ()
    if tag == "turan":
        params = (("m", _need(cfg.m, "--m")), ("q", cfg.q or 2))
    return V.GraphFamilySource(tag, sizes, params)


def cmd_verify(cfg: RunConfig):
    suite = cfg.suite
    sc = cfg.solver()
    if suite == "appendix-inequalities":
        rep = V.check_appendix_inequalities(max(cfg.grid, 200))
    elif suite == "lower-bound":
        Q = load_pattern(cfg.pattern)
        rep = V.check_lower_bound_suite(Q, list(_family(cfg, "complete").graphs()), cfg.alpha, sc)
    elif suite == "turan-sandwich":
        rep = V.check_turan_sandwich(_need(cfg.m, "--m"), cfg.q or 2, parse_range(cfg.n_range or "1-12"), cfg.alpha, sc)
    elif suite == "turan-count":
        rep = V.check_turan_count(_need(cfg.m, "--m"), cfg.q or 2, parse_range(cfg.n_range or "1-30"))
    elif suite == "kny":
        m, q = _need(cfg.m, "--m"), cfg.q or 2
        rep = V.check_kny_suite(m, q, cfg.alpha, V.multipartite_family(m, q, cfg.count, cfg.seed), sc)
    elif suite == "pentagon":
        rep = _pentagon(cfg)
    elif suite == "deletion":
        Q = load_pattern(cfg.pattern)
        rep = V.deletion_and_degree_reports(Q, list(_family(cfg, "c5-blowups").graphs()), cfg.alpha, sc)
    else:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(V.SUITES)}")
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def _pentagon(cfg: RunConfig):
    n = _need(cfg.n, "--n")
    source = V.GraphFamilySource(graph6=cfg.graph6) if cfg.graph6 else None
    return V.pentagon_desk_check(n, cfg.alpha, source, cfg.solver())


def cmd_pentagon(cfg: RunConfig):
    rep = _pentagon(cfg)
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {
    "count": cmd_count,
    "lambda": cmd_lambda,
    "entropy": cmd_entropy,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "pentagon": cmd_pentagon,
}


def run(cfg: RunConfig) -> int:
    try:
        doc, code = COMMANDS[cfg.subcommand](cfg)
    except (InputError, FormatError, HypergraphError, DistributionError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    if isinstance(doc, str):
        text = doc
        if cfg.out and cfg.out != "-":
            Path(cfg.out).write_text(text)
    else:
        text = write_report(doc, cfg.format, cfg.out)
    if not cfg.out or cfg.out == "-":
        sys.stdout.write(text)
    return code


# -------------------------------------------------------------------- argv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=2.0)
    common.add_argument("--pattern", default="k2", help="k2, k3, c5, kr_r:<r> or an edge-list file")
    common.add_argument("--host", help="edge-list file or generator spec (e.g. complete:8, turan:3,2,7)")
    common.add_argument("--graph6", help="graph6 file")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--max-iter", type=int, default=10000)
    common.add_argument("--restarts", type=int, default=16)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", type=int, default=60, help="oracle grid subdivisions")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = argparse.ArgumentParser(prog="spectral-turan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s (kernels: {kernels.BACKEND})")
    sub = p.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("count", parents=[common], help="inj, copies and Q-degrees")
    lp = sub.add_parser("lambda", parents=[common], help="the (alpha,Q)-spectral radius")
    lp.add_argument("--method", choices=("auto", "fixed-point", "reduced", "brute-force"), default="auto")
    ep = sub.add_parser("entropy", parents=[common], help="entropic density and its agreement with lambda")
    ep.add_argument("--perturbations", type=int, default=1000)
    cp = sub.add_parser("construct", parents=[common], help="emit a construction as an edge list")
    cp.add_argument("spec", help="turan:m,q,n | blowup:a,b,c,d,e | complete:n[,r] | cycle:n | path:n | star:k | petersen | edge:r")
    vp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vp.add_argument("suite", choices=V.SUITES)
    pp = sub.add_parser("pentagon", parents=[common], help="C5 desk check over triangle-free graphs")
    for sp in (vp, pp):
        sp.add_argument("--m", type=int)
        sp.add_argument("--q", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-range", help="a-b or a,b,c")
        sp.add_argument("--family", choices=sorted(V.GENERATORS))
        sp.add_argument("--count", type=int, default=30)
    return p


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        cfg.solver()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
