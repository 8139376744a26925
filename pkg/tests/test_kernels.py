import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from spectral_turan import _kernels_py, kernels
from spectral_turan.embeddings import search_plan
from spectral_turan.hypergraph import builtin_pattern, complete_hypergraph, make_hypergraph, petersen_graph

compiled = pytest.importorskip("spectral_turan._kernels")


def _random_host(rng, n, r, p):
    base = complete_hypergraph(n, r).edges
    return make_hypergraph(n, r, [e for e in base if rng.random() < p])


class TestBackendEquivalence:
    @pytest.mark.parametrize("pattern", ["k2", "k3", "c5", "kr_r:3"])
    def test_enumeration(self, pattern, rng):
        Q = builtin_pattern(pattern)
        plan = search_plan(Q.graph)
        for _ in range(15):
            n = int(rng.integers(Q.q, 9))
            H = _random_host(rng, n, Q.r, 0.5)
            args = (H.n, Q.q, *plan, H.shadow, H.edge_keys)
            a = compiled.enumerate_injective(*args)
            b = _kernels_py.enumerate_injective(*args)
            assert a.dtype == b.dtype == np.int32
            np.testing.assert_array_equal(a, b)

    def test_limit(self):
        Q = builtin_pattern("c5")
        H = petersen_graph()
        args = (H.n, Q.q, *search_plan(Q.graph), H.shadow, H.edge_keys)
        assert compiled.enumerate_injective(*args, limit=1).shape[0] == 1
        assert _kernels_py.enumerate_injective(*args, limit=1).shape[0] == 1

    def test_poly_passes(self, rng):
        Q = builtin_pattern("c5")
        H = petersen_graph()
        emb = compiled.enumerate_injective(H.n, Q.q, *search_plan(Q.graph), H.shadow, H.edge_keys)
        for _ in range(10):
            x = rng.random(H.n)
            va, ga = compiled.poly_eval_grad(emb, x)
            vb, gb = _kernels_py.poly_eval_grad(emb, x)
            assert va == pytest.approx(vb, rel=1e-13)
            np.testing.assert_allclose(ga, gb, rtol=1e-13)
            np.testing.assert_allclose(compiled.poly_hessian(emb, x), _kernels_py.poly_hessian(emb, x), rtol=1e-13)

    def test_read_only_inputs(self):
        emb = np.array([[0, 1], [1, 0]], dtype=np.int32)
        emb.setflags(write=False)
        x = np.array([0.5, 0.5])
        x.setflags(write=False)
        assert compiled.poly_eval_grad(emb, x)[0] == pytest.approx(0.5)


class TestSelection:
    def test_default_prefers_compiled(self):
        if os.environ.get("SPECTRAL_TURAN_PURE_PYTHON", "0") not in ("", "0"):
            pytest.skip("pure-Python backend forced by the environment")
        assert kernels.BACKEND == "cython"

    def test_env_forces_fallback(self):
        env = dict(os.environ, SPECTRAL_TURAN_PURE_PYTHON="1")
        out = subprocess.run(
            [sys.executable, "-c", "from spectral_turan import kernels; print(kernels.BACKEND)"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == "python"
