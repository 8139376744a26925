"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Each case runs both backends on the same inputs, checks that the outputs
agree and reports the best-of-N wall time.
"""

import argparse
import json
import sys
import timeit

import numpy as np

from spectral_turan import _kernels_py
from spectral_turan.embeddings import embedding_array, search_plan
from spectral_turan.hypergraph import (
    builtin_pattern,
    c5_blowup,
    complete_hypergraph,
    make_hypergraph,
    petersen_graph,
    turan_hypergraph,
)

try:
    from spectral_turan import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def random_host(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    return make_hypergraph(n, 2, edges)


CASES = [
    ("C5 in Petersen", "c5", petersen_graph()),
    ("C5 in C5[3,3,3,3,3]", "c5", c5_blowup([3, 3, 3, 3, 3])),
    ("K3 in K12", "k3", complete_hypergraph(12)),
    ("C5 in G(14,0.5)", "c5", random_host(14, 0.5, 1)),
    ("K3^3 in T^3_{4,12}", "kr_r:3", turan_hypergraph(4, 3, 12)),
]


def enum_call(mod, Q, H):
    order, anchors, checks = search_plan(Q.graph)
    return lambda: mod.enumerate_injective(H.n, Q.q, order, anchors, checks, H.shadow, H.edge_keys, 0)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print rows as json")
    args = ap.parse_args(argv)

    if _kernels_cy is None:
        print("compiled extension not built; run `python3 setup.py build_ext --inplace`", file=sys.stderr)
        return 1

    rows = []
    x_rng = np.random.default_rng(0)
    for label, qname, H in CASES:
        Q = builtin_pattern(qname)
        emb = embedding_array(Q, H)
        x = x_rng.random(H.n)
        for kernel, mk in (
            ("enumerate", lambda m: enum_call(m, Q, H)),
            ("eval+grad", lambda m: (lambda: m.poly_eval_grad(emb, x))),
            ("hessian", lambda m: (lambda: m.poly_hessian(emb, x))),
        ):
            f_py, f_cy = mk(_kernels_py), mk(_kernels_cy)
            a, b = f_py(), f_cy()
            if kernel == "enumerate":
                same = np.array_equal(np.sort(a, axis=0), np.sort(b, axis=0)) and a.shape == b.shape
            elif kernel == "eval+grad":
                same = np.isclose(a[0], b[0], rtol=1e-12) and np.allclose(a[1], b[1], rtol=1e-12)
            else:
                same = np.allclose(a, b, rtol=1e-12)
            t_py, t_cy = best(f_py, args.repeat), best(f_cy, args.repeat)
            rows.append(
                {
                    "case": label,
                    "kernel": kernel,
                    "inj": int(emb.shape[0]),
                    "python_s": t_py,
                    "cython_s": t_cy,
                    "speedup": t_py / t_cy if t_cy > 0 else float("inf"),
                    "agree": bool(same),
                }
            )

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'case':<22} {'kernel':<10} {'inj':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}  agree")
        for r in rows:
            print(
                f"{r['case']:<22} {r['kernel']:<10} {r['inj']:>8} {r['python_s']:>10.5f} "
                f"{r['cython_s']:>10.5f} {r['speedup']:>8.1f}  {r['agree']}"
            )
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
