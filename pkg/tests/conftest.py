import random
import sys
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from symanzik_kit.linalg import IntMatrix
from symanzik_kit.multipoly import MPoly
from symanzik_kit.simplicial import SimplicialComplex, GeneralizedComplex, graph_complex

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "src" / "symanzik_kit" / "data"

RP2 = [[-1, -1], [-1, -1], [1, -1]]
BIPYRAMID_FACETS = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)]
BIPYRAMID_MATRIX = [
    [1, 1, 0, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, 0],
    [0, -1, -1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, -1, 0, 1, 0],
    [0, 0, 0, 0, -1, -1, 0],
    [0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, -1],
    [0, 0, 0, 0, 0, 1, 1],
]
THETA_EDGES = [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]
TRI_EDGES = [(1, 2), (1, 3), (2, 3)]
DOUBLED_RP2 = [[-1, -1, -1, -1], [-1, -1, -1, -1], [1, -1, 0, 0], [0, 0, 1, -1]]


@pytest.fixture
def tri():
    return graph_complex(TRI_EDGES)


@pytest.fixture
def tri_matrix():
    return graph_complex(TRI_EDGES).top_boundary


@pytest.fixture
def rp2():
    return GeneralizedComplex(IntMatrix.from_rows(RP2))


@pytest.fixture
def bipyramid():
    return SimplicialComplex(BIPYRAMID_FACETS)


@pytest.fixture
def theta():
    return graph_complex(THETA_EDGES)


def vertex_vector(n_vertices, coeffs):
    """Boundary vector in the vertex basis, from {vertex (1-based): coefficient}."""
    v = [0] * n_vertices
    for i, c in coeffs.items():
        v[i - 1] = c
    return v


# ---------------------------------------------------------------- oracles

def sympy_gram(rows, idx):
    m = sympy.Matrix(rows)[:, list(idx)] if idx else None
    if m is None:
        return 1
    return int((m.T * m).det())


def sympy_saturation_index(rows):
    m = sympy.Matrix(rows)
    if m.rows == 0 or m.cols == 0 or m.is_zero_matrix:
        return 1
    out = 1
    for d in invariant_factors(m, domain=sympy.ZZ):
        if d:
            out *= int(abs(d))
    return out


def oracle_kirchhoff(rows, k):
    """Kir_k from Gram determinants: (gram(U_I) * a^2 / gcd_I gram(U_I))^(k/2)."""
    m = sympy.Matrix(rows)
    n = m.cols
    r = m.rank()
    if r == 0:
        return MPoly.constant(1, n)
    grams = {}
    for idx in combinations(range(n), r):
        g = sympy_gram(rows, idx)
        if g:
            grams[idx] = g
    g0 = 0
    for g in grams.values():
        g0 = gcd(g0, g)
    a = sympy_saturation_index(rows)
    terms = {}
    for idx, g in grams.items():
        sq = Fraction(g * a * a, g0)
        root = sympy.sqrt(sympy.Rational(sq.numerator, sq.denominator))
        assert root.is_Integer
        exps = tuple(1 if i in idx else 0 for i in range(n))
        terms[exps] = int(root) ** k if k else 1
    return MPoly(n, terms)


def oracle_symanzik(rows, k):
    kir = oracle_kirchhoff(rows, k)
    n = kir.nvars
    return MPoly(n, {tuple(1 - e for e in exps): c for exps, c in kir.terms.items()})


def random_int_matrix(rng, p, n, bound=3):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(p)]


def random_connected_graph(rng, n_vertices, extra):
    """Random spanning tree plus ``extra`` random extra edges (no multi-edges)."""
    verts = list(range(1, n_vertices + 1))
    rng.shuffle(verts)
    edges = set()
    for i in range(1, n_vertices):
        a, b = verts[i], verts[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    candidates = [(a, b) for a in range(1, n_vertices + 1) for b in range(a + 1, n_vertices + 1)
                  if (a, b) not in edges]
    rng.shuffle(candidates)
    edges.update(candidates[:extra])
    return sorted(edges)


def small_matrices(max_p=4, max_n=5, bound=3):
    return st.integers(1, max_p).flatmap(
        lambda p: st.integers(1, max_n).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=p, max_size=p)))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    gate = sys.modules.get("test_acceptance")
    if gate is not None and gate.LINES:
        terminalreporter.section("acceptance criteria")
        for line in gate.LINES:
            terminalreporter.write_line(line)
