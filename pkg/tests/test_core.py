import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (
    RP2, THETA_EDGES, oracle_kirchhoff, oracle_symanzik, random_connected_graph, small_matrices,
    vertex_vector,
)
from symanzik_kit import core
from symanzik_kit.errors import IdentityFailure
from symanzik_kit.linalg import IntMatrix, det, kernel_lattice_basis, rank
from symanzik_kit.matroid import MatroidView
from symanzik_kit.multipoly import MPoly
from symanzik_kit.simplicial import graph_complex

x = MPoly.variables(3)
ONES6 = [1] * 6


def theta_u():
    return graph_complex(THETA_EDGES).top_boundary


def random_unimodular(rng, p):
    m = IntMatrix.identity(p).to_rows()
    for _ in range(3 * p):
        i, j = rng.sample(range(p), 2) if p > 1 else (0, 0)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return IntMatrix.from_rows(m)


# ---------------------------------------------------------------- Kirchhoff and Symanzik

def test_kirchhoff_examples(tri_matrix):
    assert core.kirchhoff(tri_matrix, 2) == x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    a, b = MPoly.variables(2)
    assert core.kirchhoff(RP2, 2) == 4 * a * b
    for k in (0, 2, 4):
        assert core.kirchhoff(IntMatrix.zeros(2, 3), k) == 1


def test_odd_order_rejected(tri_matrix):
    for f in (core.kirchhoff, core.symanzik):
        with pytest.raises(ValueError):
            f(tri_matrix, 3)


def test_symanzik_examples(tri_matrix):
    assert core.symanzik(tri_matrix, 2) == x[0] + x[1] + x[2]
    assert core.symanzik(RP2, 2) == 4
    for k in (0, 2, 4):
        assert core.symanzik(IntMatrix.identity(2), k) == 1


@given(small_matrices(4, 5), st.sampled_from([0, 2, 4]))
def test_kirchhoff_against_gram_oracle(rows, k):
    kir = core.kirchhoff(rows, k)
    assert kir == oracle_kirchhoff(rows, k)
    assert kir == core.kirchhoff_from_gram(rows, k)
    assert kir.is_integral()


@given(small_matrices(4, 5), st.sampled_from([0, 2, 4]))
def test_reciprocity(rows, k):
    sym = core.symanzik(rows, k)
    assert sym == core.kirchhoff(rows, k).reciprocal_transform()
    assert sym == oracle_symanzik(rows, k)


@given(small_matrices(4, 5), st.integers(0, 10 ** 6))
def test_kirchhoff_depends_on_row_lattice(rows, seed):
    rng = random.Random(seed)
    m = IntMatrix.from_rows(rows)
    L = random_unimodular(rng, m.rows)
    for k in (2, 4):
        assert core.kirchhoff(L @ m, k) == core.kirchhoff(m, k)


# ---------------------------------------------------------------- parameters

def test_params_examples(tri_matrix):
    u = theta_u()
    assert core.symanzik_with_params(core.ParamFamily(u, []), 2) == core.symanzik(u, 2)
    b = vertex_vector(5, {2: 1, 3: -1})
    val = core.symanzik_with_params(core.ParamFamily(u, [b]), 2).evaluate(ONES6)
    assert val == 12
    pf = core.ParamFamily(tri_matrix, [tri_matrix.col(0)])
    p = core.symanzik_with_params(pf, 2)
    assert p.coefficient((0, 1, 1)) == 0
    assert p.coefficient((1, 0, 1)) != 0


def test_params_errors(tri_matrix):
    with pytest.raises(ValueError):
        core.ParamFamily(tri_matrix, [(1, 1, 1)])
    cols = [tri_matrix.col(0), tri_matrix.col(1), tri_matrix.col(2)]
    with pytest.raises(ValueError):
        core.symanzik_with_params(core.ParamFamily(tri_matrix, cols), 2)
    dep = core.ParamFamily(tri_matrix, [cols[0], [2 * v for v in cols[0]]])
    assert core.symanzik_with_params(dep, 2) == 0


# ---------------------------------------------------------------- duality

def test_duality_examples(tri_matrix):
    cert = core.duality_certificate(tri_matrix, 2)
    assert cert.holds and (cert.a, cert.b) == (1, 1)
    assert cert.lhs == x[0] + x[1] + x[2]
    assert cert.v.col(0) in ((1, -1, 1), (-1, 1, -1))
    cert = core.duality_certificate(RP2, 2)
    assert (cert.a, cert.b) == (2, 1) and cert.lhs == 1 and cert.rhs == 1
    assert cert.summary() == "OK a=2 b=1 k=2"
    cert = core.duality_certificate([[2, 1], [1, 1]], 4)
    assert cert.lhs == 1 and cert.rhs == 1


@given(small_matrices(4, 6), st.sampled_from([0, 2, 4]))
def test_duality_property(rows, k):
    assert core.duality_certificate(rows, k).holds


@given(small_matrices(3, 6), st.integers(0, 10 ** 6))
def test_duality_with_unsaturated_kernel(rows, seed):
    m = IntMatrix.from_rows(rows)
    K = kernel_lattice_basis(m)
    if K.cols == 0:
        return
    rng = random.Random(seed)
    T = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(K.cols)] for _ in range(K.cols)])
    if rank(T) < K.cols:
        T = IntMatrix.from_rows([[2 * (i == j) for j in range(K.cols)] for i in range(K.cols)])
    for k in (2, 4):
        cert = core.duality_certificate(m, k, kernel=K @ T)
        assert cert.holds
        assert cert.b == abs(det(T))


def test_duality_failure_is_reported():
    m = IntMatrix.from_rows([[1, 1, 0]])
    bad = IntMatrix.from_rows([[1], [1], [0]])
    with pytest.raises((IdentityFailure, ValueError)):
        core.duality_certificate(m, 2, kernel=bad)


# ---------------------------------------------------------------- determinantal form

def test_determinantal_examples(tri_matrix):
    assert core.symanzik_determinantal(tri_matrix, 2) == x[0] + x[1] + x[2]
    assert core.symanzik_determinantal(tri_matrix, 0) == core.symanzik(tri_matrix, 0)


@given(small_matrices(3, 5), st.sampled_from([0, 2, 4]))
def test_determinantal_equals_definition(rows, k):
    assert core.symanzik_determinantal(rows, k) == core.symanzik(rows, k)


@given(small_matrices(3, 5), st.integers(0, 10 ** 6))
def test_determinantal_with_parameters(rows, seed):
    m = IntMatrix.from_rows(rows)
    rng = random.Random(seed)
    if rank(m) == 0:
        return
    c = [rng.randint(-2, 2) for _ in range(m.cols)]
    w = [sum(m[i, j] * c[j] for j in range(m.cols)) for i in range(m.rows)]
    pf = core.ParamFamily(m, [w])
    assert core.symanzik_determinantal(m, 2, pf) == core.symanzik_with_params(pf, 2)


def test_determinantal_rejects_bad_kernel(tri_matrix):
    with pytest.raises(ValueError):
        core.symanzik_determinantal(tri_matrix, 2, kernel=[[1], [1], [1]])


# ---------------------------------------------------------------- orientation

def test_orientation_examples():
    u = theta_u()
    assert core.symanzik_orientation(core.ParamFamily(u, []), 2) == core.symanzik(u, 2)
    b = vertex_vector(5, {2: 2, 3: -1, 4: -1})
    pf = core.ParamFamily(u, [b])
    p = core.symanzik_orientation(pf, 2)
    assert p.evaluate(ONES6) == 36
    assert p == core.symanzik_with_params(pf, 2)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
def test_orientation_on_random_graphs(seed, l):
    rng = random.Random(seed)
    nv = rng.randint(3, 5)
    edges = random_connected_graph(rng, nv, rng.randint(0, 3))
    u = graph_complex(edges).top_boundary
    params = []
    for _ in range(l):
        a, b = rng.sample(range(1, nv + 1), 2)
        params.append(vertex_vector(nv, {a: 1, b: -1}))
    pf = core.ParamFamily(u, params)
    if l > rank(u):
        return
    ref = core.symanzik_with_params(pf, 2)
    assert core.symanzik_orientation(pf, 2) == ref
    assert core.symanzik_orientation(pf, 2, flip=True) == ref


# ---------------------------------------------------------------- rational fractions and pairing

def test_rat_sym_examples(tri_matrix):
    assert core.rat_sym(core.ParamFamily(tri_matrix, []), 2, [1, 2, 3]) == 1
    pf = core.ParamFamily(tri_matrix, [tri_matrix.col(0)])
    assert core.rat_sym(pf, 2, [1, 1, 1]) == Fraction(2, 3)
    y = [Fraction(2), Fraction(3), Fraction(5)]
    assert core.rat_sym(pf, 2, [7 * t for t in y]) == 7 * core.rat_sym(pf, 2, y)


def test_height_pairing_triangle(tri_matrix):
    b = [1, -1, 0]
    assert core.height_pairing(tri_matrix, b, b, [1, 1, 1]) == Fraction(2, 3)
    assert core.height_pairing(tri_matrix, b, b, [1, 1, 1], method="preimage") == Fraction(2, 3)
    with pytest.raises(ValueError):
        core.height_pairing(tri_matrix, [1, 1, 1], b, [1, 1, 1])
    with pytest.raises(ValueError):
        core.height_pairing(tri_matrix, b, b, [1, 0, 1])


@given(st.integers(0, 10 ** 6))
def test_height_pairing_properties(seed):
    rng = random.Random(seed)
    nv = rng.randint(3, 5)
    u = graph_complex(random_connected_graph(rng, nv, rng.randint(0, 3))).top_boundary
    y = [Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(u.cols)]

    def rand_boundary():
        c = [rng.randint(-2, 2) for _ in range(u.cols)]
        return [sum(u[i, j] * c[j] for j in range(u.cols)) for i in range(u.rows)]
    b, b2, b3 = rand_boundary(), rand_boundary(), rand_boundary()
    hp = core.height_pairing
    assert hp(u, b, b2, y) == hp(u, b2, b, y)
    lam = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    comb = [s + lam * t for s, t in zip(b2, b3)]
    assert hp(u, b, comb, y) == hp(u, b, b2, y) + lam * hp(u, b, b3, y)
    if any(b):
        assert hp(u, b, b, y) > 0
        assert hp(u, b, b, y) == core.rat_sym(core.ParamFamily(u, [b]), 2, y)


def test_height_pairing_shortcut_agrees():
    u = IntMatrix.from_rows([[1, 0, 1, 2], [0, 1, 1, -1]])
    y = [1, 2, 3, 4]
    b, b2 = [1, 2], [3, -1]
    assert core.height_pairing(u, b, b2, y, "shortcut") == core.height_pairing(u, b, b2, y, "preimage")


# ---------------------------------------------------------------- order 0 and matroids

def test_matroid_order_zero(tri_matrix):
    M = MatroidView.linear(tri_matrix)
    assert core.matroid_kirchhoff0(M) == core.kirchhoff(tri_matrix, 0)
    assert core.matroid_kirchhoff0(M) == x[0] * x[1] + x[0] * x[2] + x[1] * x[2]
    u24 = core.matroid_kirchhoff0(MatroidView.uniform(2, 4))
    assert len(u24) == 6 and all(c == 1 and sum(e) == 2 for e, c in u24.terms.items())


@given(small_matrices(3, 5))
def test_order_zero_conventions(rows):
    m = IntMatrix.from_rows(rows)
    M = MatroidView.linear(m)
    assert core.kirchhoff(m, 0) == core.matroid_kirchhoff0(M)
    assert core.symanzik(m, 0) == core.matroid_symanzik0(M)
    K = kernel_lattice_basis(m)
    dual = MatroidView.linear(K.T) if K.cols else MatroidView.uniform(0, m.cols)
    assert core.matroid_symanzik0(M) == core.matroid_kirchhoff0(dual)


def test_zero_power_convention():
    assert core._power(0, 0) == 0
    assert core._power(3, 0) == 1
    assert core._power(-2, 2) == 4
