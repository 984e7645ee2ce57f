"""Kirchhoff and Symanzik polynomials of even order for integer vector families.

A family ``u`` is the list of columns of an integer ``p x n`` matrix.
Polynomials live in Q[x1..xn], variable ``i`` paired with column ``i``.
All coefficients are exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import IdentityFailure
from .hypermatrix import DEFAULT_HYPERDET_BUDGET, wedge_inner_product
from .linalg import (
    IntMatrix, as_intmatrix, gram_det, generic_det, iter_independent_subsets,
    kernel_lattice_basis, rank, rational_inverse, rational_rank,
    row_lattice_basis, saturated_column_basis, saturation_index, solve_rational,
)
from .multipoly import MPoly


def _check_k(k):
    if not isinstance(k, int) or k < 0 or k % 2:
        raise ValueError(f"order k must be an even nonnegative integer, got {k!r}")


def _power(value, k):
    # convention: a^0 is 0 for a = 0 and 1 otherwise
    if k == 0:
        return 0 if value == 0 else 1
    return value ** k


class VectorFamily:
    """The columns of an integer matrix, with cached rank and lattice data."""

    def __init__(self, matrix):
        self.U = as_intmatrix(matrix)

    @property
    def p(self):
        return self.U.rows

    @property
    def n(self):
        return self.U.cols

    @cached_property
    def rank(self):
        return rank(self.U)

    @cached_property
    def saturation_index(self):
        return saturation_index(self.U)

    @cached_property
    def row_basis(self):
        """r x n basis of the lattice spanned by the rows of U (Hermite form)."""
        return row_lattice_basis(self.U)

    @cached_property
    def saturated_basis(self):
        """Columns: a basis of span(u) ∩ Z^p."""
        return saturated_column_basis(self.U)

    @cached_property
    def kernel(self):
        """n x (n - r) saturated kernel basis."""
        return kernel_lattice_basis(self.U)

    @cached_property
    def bases(self):
        """Pairs ``(I, det V_I)`` over the bases I, lexicographic."""
        return [(i, int(d)) for i, d in
                iter_independent_subsets(self.row_basis, self.rank, with_det=True)]

    def __repr__(self):
        return f"VectorFamily(p={self.p}, n={self.n}, r={self.rank})"


def _family(u):
    return u if isinstance(u, VectorFamily) else VectorFamily(u)


class ParamFamily:
    """A vector family together with rational parameters in its span.

    ``w_tilde[j]`` is a rational solution of ``U w_tilde[j] = w[j]``.
    """

    def __init__(self, base, w=()):
        self.base = _family(base)
        U = self.base.U
        self.w = [tuple(Fraction(x) for x in vec) for vec in w]
        for vec in self.w:
            if len(vec) != U.rows:
                raise ValueError(f"parameter of length {len(vec)}, expected {U.rows}")
        rows = U.to_rows()
        self.w_tilde = []
        for vec in self.w:
            sol = solve_rational(rows, vec) if U.rows else [Fraction(0)] * U.cols
            if sol is None or (U.rows == 0 and any(vec)):
                raise ValueError(f"parameter {list(map(str, vec))} is not in the span of u")
            self.w_tilde.append(tuple(sol))

    @property
    def l(self):
        return len(self.w)

    def __repr__(self):
        return f"ParamFamily({self.base!r}, l={self.l})"


def _params(pf):
    return pf if isinstance(pf, ParamFamily) else ParamFamily(pf)


# ---------------------------------------------------------------- polynomials

def kirchhoff(u, k):
    """Kir_k(u; x): sum over bases I of |det V_I|^k x^I.

    ``V`` is a Hermite basis of the row lattice of U, so ``|det V_I|`` is
    the ratio of the covolume of u_I to that of the saturated lattice.
    """
    _check_k(k)
    u = _family(u)
    n = u.n
    if u.rank == 0:
        return MPoly.constant(1, n)
    terms = {}
    for idx, d in u.bases:
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = _power(abs(d), k)
    return MPoly(n, terms)


def kirchhoff_from_gram(u, k):
    """Kir_k(u; x) straight from Gram determinants (independent of ``kirchhoff``)."""
    _check_k(k)
    u = _family(u)
    n = u.n
    if u.rank == 0:
        return MPoly.constant(1, n)
    covol2 = gram_det(u.saturated_basis)
    terms = {}
    for idx in iter_independent_subsets(u.U, u.rank):
        ratio = Fraction(gram_det(u.U, idx), covol2)
        if ratio.denominator != 1:
            raise IdentityFailure("covolume ratio is not an integer")
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = _power(ratio, k // 2) if k else 1
    return MPoly(n, terms)


def symanzik(u, k):
    """Sym_k(u; x): the Kirchhoff coefficients on complementary monomials."""
    _check_k(k)
    u = _family(u)
    n = u.n
    if u.rank == 0:
        direct = MPoly.squarefree(range(n), n)
    else:
        terms = {}
        for idx, d in u.bases:
            e = [1] * n
            for i in idx:
                e[i] = 0
            terms[tuple(e)] = _power(abs(d), k)
        direct = MPoly(n, terms)
    via_kir = kirchhoff(u, k).reciprocal_transform(n)
    if direct != via_kir:
        raise IdentityFailure("Symanzik polynomial disagrees with the reciprocal Kirchhoff polynomial")
    return direct


def _wedge_gram_ratio(u, idx, w):
    # ||u_I ∧ w||^2 / ||<u>_Z||^2 as an exact rational
    cols = [list(map(Fraction, u.U.col(i))) for i in idx] + [list(v) for v in w]
    g = [[sum(a * b for a, b in zip(c1, c2)) for c2 in cols] for c1 in cols]
    return Fraction(generic_det(g)) / gram_det(u.saturated_basis)


def _even_power(ratio, k):
    # ratio is a square norm; returns ratio^(k/2) with the 0^0 convention
    if k == 0:
        return 0 if ratio == 0 else 1
    return ratio ** (k // 2)


def symanzik_with_params(pf, k):
    """Sym_k(u; w; x) = sum_{|I| = r - l} ||u_I ∧ w||^k / ||<u>_Z||^k x^{complement of I}."""
    _check_k(k)
    pf = _params(pf)
    u = pf.base
    n, r, l = u.n, u.rank, pf.l
    if l > r:
        raise ValueError(f"{l} parameters exceed the rank {r}")
    if l == 0:
        return symanzik(u, k)
    if rational_rank([list(v) for v in pf.w]) < l:
        return MPoly.zero(n)
    terms = {}
    for idx in iter_independent_subsets(u.U, r - l):
        coef = _even_power(_wedge_gram_ratio(u, idx, pf.w), k)
        if coef:
            e = [1] * n
            for i in idx:
                e[i] = 0
            terms[tuple(e)] = coef
    return MPoly(n, terms)


def _symbolic_weights(n):
    return MPoly.variables(n)


def symanzik_determinantal(u, k, params=(), kernel=None, budget=DEFAULT_HYPERDET_BUDGET):
    """(a/b)^k ||v^T ∧ w~||_{k,x}^k, the determinantal form of Sym_k(u; w; x).

    ``v^T`` is the column family of a kernel basis (the saturated canonical
    one unless ``kernel`` is supplied), ``b`` its saturation index, and
    ``w~`` the preimages of the parameters.  At k = 2 this is
    det(M^T diag(x) M) with M = [kernel | w~].  At k = 0 it reduces to the
    sum of x^J over the row subsets J where M_J is invertible.
    """
    _check_k(k)
    pf = params if isinstance(params, ParamFamily) else ParamFamily(u, params)
    u = pf.base
    n = u.n
    K = u.kernel if kernel is None else as_intmatrix(kernel)
    if K.rows != n:
        raise ValueError("kernel basis must have one row per column of U")
    if any(any(sum(u.U[i, j] * K[j, c] for j in range(n)) for i in range(u.p))
           for c in range(K.cols)):
        raise ValueError("supplied kernel matrix does not lie in ker(U)")
    if K.cols != n - u.rank or (K.cols and rank(K) != K.cols):
        raise ValueError("supplied kernel matrix is not a basis of ker(U)")
    b = saturation_index(K.T) if K.cols else 1
    a = u.saturation_index
    columns = [list(map(Fraction, K.col(c))) for c in range(K.cols)]
    columns += [list(w) for w in pf.w_tilde]
    m = len(columns)
    if k == 0:
        if m == 0:
            return MPoly.constant(1, n)
        terms = {}
        mat_rows = [[col[i] for col in columns] for i in range(n)]
        for rows_idx in combinations(range(n), m):
            if generic_det([mat_rows[i] for i in rows_idx]) != 0:
                e = [0] * n
                for i in rows_idx:
                    e[i] = 1
                terms[tuple(e)] = 1
        return MPoly(n, terms)
    x = _symbolic_weights(n)
    vectors = columns
    if m == 0:
        form = MPoly.constant(1, n)
    else:
        form = wedge_inner_product([vectors] * k, y=x, budget=budget)
        if not isinstance(form, MPoly):
            form = MPoly.constant(form, n)
    return form * (Fraction(a, b) ** k)


def orientation_sign(u, idx_i, idx_j, flip=False):
    """epsilon_I(J): sign of the canonical volume form on u_{I ⋆ J}."""
    V = u.row_basis
    block = [[V[r, c] for c in list(idx_i) + list(idx_j)] for r in range(V.rows)]
    d = generic_det(block)
    s = (d > 0) - (d < 0)
    return -s if flip else s


def symanzik_orientation(pf, k, flip=False):
    """Sym_k(u; w; x) through the chirotope expansion.

    For each (r - l)-subset I the coefficient of x^{complement of I} is
    (sum over l-subsets J of the complement of
    eps_I(J) * ||u_{I∪J}|| / ||<u>_Z|| * det(w~ restricted to rows J))^k.
    The volume form is the determinant in the Hermite basis of the row
    lattice; ``flip`` reverses it, which must not change the result.
    """
    _check_k(k)
    pf = _params(pf)
    u = pf.base
    n, r, l = u.n, u.rank, pf.l
    if l > r:
        raise ValueError(f"{l} parameters exceed the rank {r}")
    if l == 0:
        return symanzik(u, k)
    V = u.row_basis
    norms = {idx: abs(d) for idx, d in u.bases}
    wt = pf.w_tilde
    terms = {}
    for idx_i in iter_independent_subsets(u.U, r - l):
        rest = [j for j in range(n) if j not in idx_i]
        inner = Fraction(0)
        for idx_j in combinations(rest, l):
            norm = norms.get(tuple(sorted(idx_i + idx_j)), 0)
            if not norm:
                continue
            minor = generic_det([[wt[c][row] for c in range(l)] for row in idx_j])
            if not minor:
                continue
            inner += orientation_sign(u, idx_i, idx_j, flip) * norm * minor
        coef = _power(inner, k)
        if coef:
            e = [1] * n
            for i in idx_i:
                e[i] = 0
            terms[tuple(e)] = coef
    return MPoly(n, terms)


def rat_sym(pf, k, y):
    """Sym_k(u; w; y) / Sym_k(u; y) as an exact rational."""
    pf = _params(pf)
    y = [Fraction(v) for v in y]
    den = symanzik(pf.base, k).evaluate(y)
    if den == 0:
        raise ZeroDivisionError("Symanzik polynomial vanishes at y")
    return Fraction(symanzik_with_params(pf, k).evaluate(y)) / den


# ---------------------------------------------------------------- duality

@dataclass(frozen=True)
class DualityCertificate:
    v: IntMatrix
    a: int
    b: int
    k: int
    lhs: MPoly
    rhs: MPoly

    @property
    def holds(self):
        return self.lhs == self.rhs

    def summary(self):
        return f"{'OK' if self.holds else 'FAIL'} a={self.a} b={self.b} k={self.k}"


def duality_certificate(u, k, kernel=None, check=True):
    """Compare Sym_k(u)/a^k with Kir_k(v)/b^k, v the rows of a kernel basis.

    Supplying a non-saturated ``kernel`` basis exercises ``b > 1``.
    """
    _check_k(k)
    u = _family(u)
    K = u.kernel if kernel is None else as_intmatrix(kernel)
    v = VectorFamily(K.T if K.cols else IntMatrix.zeros(0, u.n))
    a = u.saturation_index
    b = saturation_index(v.U)
    lhs = symanzik(u, k) * Fraction(1, a ** k)
    rhs = kirchhoff(v, k) * Fraction(1, b ** k)
    cert = DualityCertificate(K, a, b, k, lhs, rhs)
    if check and not cert.holds:
        raise IdentityFailure(f"duality fails: {lhs} != {rhs}")
    return cert


# ---------------------------------------------------------------- matroids, order 0

def matroid_kirchhoff0(matroid):
    """Sum of x^B over the bases B of a matroid view."""
    n = matroid.n
    return MPoly(n, {tuple(int(i in b) for i in range(n)): 1 for b in matroid.bases()})


def matroid_symanzik0(matroid):
    """Sum of x^{complement of B} over the bases B."""
    return matroid_kirchhoff0(matroid).reciprocal_transform()


# ---------------------------------------------------------------- height pairing

def _check_weights(y, n):
    y = [Fraction(v) for v in y]
    if len(y) != n:
        raise ValueError(f"weights have length {len(y)}, expected {n}")
    if any(v <= 0 for v in y):
        raise ValueError("weights must be positive")
    return y


def orthogonal_preimage(u, b, y):
    """The preimage a of b with U a = b that is y-orthogonal to ker(U)."""
    u = _family(u)
    y = _check_weights(y, u.n)
    b = [Fraction(v) for v in b]
    if len(b) != u.p:
        raise ValueError(f"boundary vector has length {len(b)}, expected {u.p}")
    a0 = solve_rational(u.U.to_rows(), b) if u.p else [Fraction(0)] * u.n
    if a0 is None or (u.p == 0 and any(b)):
        raise ValueError("vector is not in the column span of U")
    K = u.kernel
    m = K.cols
    if m == 0:
        return a0
    kc = [list(K.col(c)) for c in range(m)]
    gram = [[sum(y[i] * c1[i] * c2[i] for i in range(u.n)) for c2 in kc] for c1 in kc]
    rhs = [sum(y[i] * c[i] * a0[i] for i in range(u.n)) for c in kc]
    inv = rational_inverse(gram)
    coeffs = [sum(inv[s][t] * rhs[t] for t in range(m)) for s in range(m)]
    return [a0[i] - sum(coeffs[s] * kc[s][i] for s in range(m)) for i in range(u.n)]


def height_pairing(u, b, b2, y, method="auto"):
    """<b, b2>_y on the image of U.

    ``method="preimage"`` pairs the kernel-orthogonal preimages in the
    y-inner product; ``"shortcut"`` evaluates b^T (U Y^-1 U^T)^-1 b2 and
    needs full row rank; ``"auto"`` picks the shortcut when available.
    """
    u = _family(u)
    y = _check_weights(y, u.n)
    if method == "auto":
        method = "shortcut" if u.rank == u.p else "preimage"
    if method == "preimage":
        a = orthogonal_preimage(u, b, y)
        a2 = orthogonal_preimage(u, b2, y)
        return sum(w * s * t for w, s, t in zip(y, a, a2))
    if method == "shortcut":
        if u.rank != u.p:
            raise ValueError("shortcut needs U of full row rank")
        b = [Fraction(v) for v in b]
        b2 = [Fraction(v) for v in b2]
        U = u.U
        m = [[sum(U[i, e] * U[j, e] / y[e] for e in range(u.n)) for j in range(u.p)]
             for i in range(u.p)]
        inv = rational_inverse(m)
        return sum(b[i] * inv[i][j] * b2[j] for i in range(u.p) for j in range(u.p))
    raise ValueError(f"unknown method {method!r}")
