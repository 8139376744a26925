"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's enumeration and solver code:
brute-force counts walk every ordered q-tuple with itertools.permutations, and
the spectral radius comes from plain power iteration on the adjacency matrix.
"""

import itertools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def brute_inj(q_edges, q_n, h_edges, h_n):
    """Count injective edge-preserving maps by checking every ordered q-tuple."""
    hset = {tuple(sorted(e)) for e in h_edges}
    count = 0
    for img in itertools.permutations(range(1, h_n + 1), q_n):
        if all(tuple(sorted(img[v - 1] for v in e)) in hset for e in q_edges):
            count += 1
    return count


def brute_embeddings(q_edges, q_n, h_edges, h_n):
    hset = {tuple(sorted(e)) for e in h_edges}
    return [
        img
        for img in itertools.permutations(range(1, h_n + 1), q_n)
        if all(tuple(sorted(img[v - 1] for v in e)) in hset for e in q_edges)
    ]


def power_method_radius(edges, n, tol=1e-15, max_iter=200000):
    """Largest adjacency eigenvalue by power iteration on A + I.

    The shift keeps bipartite graphs from oscillating; the start vector is
    positive so the Perron vector is reached on connected components.
    """
    A = np.zeros((n, n))
    for a, b in edges:
        A[a - 1, b - 1] = A[b - 1, a - 1] = 1.0
    if not edges:
        return 0.0
    M = A + np.eye(n)
    v = np.linspace(1.0, 2.0, n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = M @ v
        new = float(np.linalg.norm(w))
        w /= new
        if abs(new - lam) < tol and np.linalg.norm(w - v) < 1e-12:
            break
        v, lam = w, new
    return float(v @ A @ v / (v @ v))


def random_graph(rng, n, p):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def record_criterion(number, passed, detail):
    """Log one acceptance line; the terminal summary repeats them in order."""
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
