"""Exact integer and rational linear algebra.

Everything here works on Python integers (arbitrary precision) and
:class:`fractions.Fraction`.  Matrices are immutable :class:`IntMatrix`
values; internal helpers operate on plain lists of lists.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored in row-major order."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(entries)}")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                if isinstance(e, Fraction) and e.denominator == 1:
                    continue
                raise TypeError(f"non-integer entry {e!r}")
        object.__setattr__(self, "entries", tuple(int(e) for e in entries))

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for an empty column list")
            rows = len(columns[0])
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)]
                             if columns else [[] for _ in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self):
        return IntMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def select_columns(self, idx):
        idx = list(idx)
        return IntMatrix(self.rows, len(idx),
                         tuple(self.entries[i * self.cols + j]
                               for i in range(self.rows) for j in idx))

    def select_rows(self, idx):
        idx = list(idx)
        return IntMatrix(len(idx), self.cols,
                         tuple(e for i in idx for e in self.row(i)))

    def delete_rows(self, idx):
        drop = set(idx)
        return self.select_rows([i for i in range(self.rows) if i not in drop])

    def hstack(self, other):
        if other.rows != self.rows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
            self.cols + other.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else []
        out = [[sum(x * y for x, y in zip(r, c)) for c in bt] if bt else
               [0] * other.cols for r in a]
        return IntMatrix.from_rows(out, other.cols)

    def is_zero(self):
        return not any(self.entries)

    def to_text(self):
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(e) for e in self.row(i)) for i in range(self.rows)]
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text().rstrip("\n")


def as_intmatrix(m):
    """Coerce a nested sequence (list of rows) or IntMatrix into an IntMatrix."""
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


def parse_matrix_text(text):
    """Parse the ``p n`` header followed by ``p`` rows of ``n`` integers."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    p, n = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != p:
        raise ValueError(f"expected {p} rows, found {len(body)}")
    rows = []
    for ln in body:
        vals = [int(t) for t in ln.split()]
        if len(vals) != n:
            raise ValueError(f"expected {n} entries in row {ln!r}")
        rows.append(vals)
    return IntMatrix.from_rows(rows, n)


# --------------------------------------------------------------------------
# elimination kernels on lists of lists

def _hermite_rows(a, track=False):
    """Row-style Hermite normal form by unimodular row operations.

    Returns ``(H, L, pivots)`` with ``L @ A == H``.  Pivots are positive and
    entries above a pivot are reduced into ``[0, pivot)``.  ``L`` is None
    unless ``track`` is set.
    """
    h = [list(r) for r in a]
    m = len(h)
    ncols = len(h[0]) if h else 0
    lmat = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    pivots = []
    t = 0
    for j in range(ncols):
        if t == m:
            break
        while True:
            nz = [i for i in range(t, m) if h[i][j]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][j]))
            if piv != t:
                h[t], h[piv] = h[piv], h[t]
                if track:
                    lmat[t], lmat[piv] = lmat[piv], lmat[t]
            done = True
            pv = h[t][j]
            for i in range(t + 1, m):
                if h[i][j]:
                    q = h[i][j] // pv
                    if q:
                        ri, rt = h[i], h[t]
                        for c in range(j, ncols):
                            ri[c] -= q * rt[c]
                        if track:
                            li, lt = lmat[i], lmat[t]
                            for c in range(m):
                                li[c] -= q * lt[c]
                    if h[i][j]:
                        done = False
            if done:
                break
        if t < m and h[t][j]:
            if h[t][j] < 0:
                h[t] = [-x for x in h[t]]
                if track:
                    lmat[t] = [-x for x in lmat[t]]
            pv = h[t][j]
            for i in range(t):
                q = h[i][j] // pv
                if q:
                    for c in range(j, ncols):
                        h[i][c] -= q * h[t][c]
                    if track:
                        for c in range(m):
                            lmat[i][c] -= q * lmat[t][c]
            pivots.append(j)
            t += 1
    return h, lmat, pivots


def _bareiss_det(a):
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mkk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * mkk - mik * rk[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


def _fraction_det(a):
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return d


def generic_det(a):
    """Determinant of a square matrix of ints or Fractions."""
    if all(isinstance(x, int) for r in a for x in r):
        return _bareiss_det(a)
    return _fraction_det(a)


def _rank_rows(a):
    m = [[Fraction(x) for x in r] for r in a]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][j] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][j]
        for i in range(r + 1, len(m)):
            f = m[i][j] * inv
            if f:
                for c in range(j, ncols):
                    m[i][c] -= f * m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def rational_rank(rows):
    """Rank over the rationals of a list of rows with int/Fraction entries."""
    return _rank_rows(rows)


def solve_rational(a, b):
    """One rational solution ``x`` of ``A x = b`` or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = len(a)
    ncols = len(a[0]) if a else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][j] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][j]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(pivots):
        x[j] = aug[i][ncols]
    return x


def rational_inverse(a):
    """Inverse of a square rational matrix (list of rows); raises if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in a[i]] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for j in range(n):
        piv = next((i for i in range(j, n) if aug[i][j] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = 1 / aug[j][j]
        aug[j] = [x * inv for x in aug[j]]
        for i in range(n):
            if i != j and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[j])]
    return [r[n:] for r in aug]


# --------------------------------------------------------------------------
# public operations

def rank(m):
    """Rank over the rationals; 0 for an empty matrix."""
    m = as_intmatrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return _rank_rows(m.to_rows())


def det(m):
    m = as_intmatrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return _bareiss_det(m.to_rows())


class SnfResult(NamedTuple):
    """Smith normal form ``S`` with unimodular ``L``, ``R`` and ``L @ M @ R == S``."""

    S: IntMatrix
    L: IntMatrix
    R: IntMatrix

    @property
    def divisors(self):
        """Nonzero diagonal entries of ``S``."""
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S[i, i] for i in range(n) if self.S[i, i])


def smith_normal_form(m):
    """Smith normal form by repeated gcd pivoting with transforms tracked."""
    m = as_intmatrix(m)
    p, n = m.rows, m.cols
    a = m.to_rows()
    lm = [[int(i == j) for j in range(p)] for i in range(p)]
    rm = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        lm[i], lm[j] = lm[j], lm[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in rm:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        lm[dst] = [x + q * y for x, y in zip(lm[dst], lm[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in rm:
            r[dst] += q * r[src]

    for t in range(min(p, n)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, p) for j in range(t, n) if a[i][j]]
            if not nz:
                break
            _, i0, j0 = min(nz)
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            clean = True
            for i in range(t + 1, p):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, p) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < p and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            lm[t] = [-x for x in lm[t]]
    return SnfResult(IntMatrix.from_rows(a, n), IntMatrix.from_rows(lm, p),
                     IntMatrix.from_rows(rm, n))


def elementary_divisors(m):
    return smith_normal_form(m).divisors


def hermite_rows(m):
    """Row-style Hermite normal form (all rows, zero rows last)."""
    m = as_intmatrix(m)
    h, _, _ = _hermite_rows(m.to_rows())
    return IntMatrix.from_rows(h, m.cols)


def row_lattice_basis(m):
    """Basis (as rows of an r x n matrix) of the lattice spanned by the rows."""
    m = as_intmatrix(m)
    h, _, piv = _hermite_rows(m.to_rows())
    return IntMatrix.from_rows(h[:len(piv)], m.cols)


def column_lattice_basis(m):
    """Basis (as columns of a p x r matrix) of the lattice spanned by the columns."""
    return row_lattice_basis(as_intmatrix(m).T).T


def kernel_lattice_basis(m):
    """Columns form a basis of the saturated lattice ker(M) ∩ Z^cols.

    The basis is normalized by putting its vectors (as rows) into Hermite
    normal form, so the first nonzero entry of every column is positive and
    the output is canonical.
    """
    m = as_intmatrix(m)
    n = m.cols
    if n == 0:
        return IntMatrix.zeros(0, 0)
    if m.rows == 0:
        return IntMatrix.identity(n)
    h, lmat, piv = _hermite_rows(m.T.to_rows(), track=True)
    kern = lmat[len(piv):]
    if not kern:
        return IntMatrix.zeros(n, 0)
    hk, _, _ = _hermite_rows(kern)
    return IntMatrix.from_rows(hk, n).T


def saturated_column_basis(m):
    """Basis (columns) of the saturation span(M) ∩ Z^rows of the column lattice."""
    m = as_intmatrix(m)
    annihilator = kernel_lattice_basis(m.T).T
    if annihilator.rows == 0:
        return IntMatrix.identity(m.rows) if rank(m) == m.rows else IntMatrix.zeros(m.rows, 0)
    return kernel_lattice_basis(annihilator)


def saturation_index(m):
    """Index of the column lattice in its saturation.

    Equal to the product of the nonzero elementary divisors.  Computed by a
    row Hermite reduction followed by a column Hermite reduction, which
    leaves a triangular block whose diagonal product is the index.
    """
    m = as_intmatrix(m)
    if m.rows == 0 or m.cols == 0:
        return 1
    h, _, piv = _hermite_rows(m.to_rows())
    r = len(piv)
    if r == 0:
        return 1
    top = h[:r]
    t, _, piv2 = _hermite_rows([list(c) for c in zip(*top)])
    out = 1
    for i, j in enumerate(piv2):
        out *= t[i][j]
    return abs(out)


def gram_det(m, idx=None):
    """det(M_I^T M_I) for the columns ``idx`` (all columns by default)."""
    m = as_intmatrix(m)
    cols = [m.col(j) for j in (range(m.cols) if idx is None else idx)]
    g = [[sum(x * y for x, y in zip(a, b)) for b in cols] for a in cols]
    return _bareiss_det(g) if g else 1


def gram_norm_pow(m, idx, k):
    """||u_I||^k = det(U_I^T U_I)^(k/2); at k = 0 the value is 0 or 1."""
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and nonnegative, got {k}")
    m = as_intmatrix(m)
    idx = list(idx)
    if any(j < 0 or j >= m.cols for j in idx):
        raise IndexError("column index out of range")
    g = gram_det(m, idx)
    if k == 0:
        return 0 if g == 0 else 1
    return g ** (k // 2)


def lattice_factorization(m):
    """Return ``(F, V)`` with ``U = F V``, ``F`` a basis of the column lattice.

    ``F`` is p x r and ``V`` is the unique integer r x n factor.
    """
    m = as_intmatrix(m)
    f = column_lattice_basis(m)
    r = f.cols
    if r == 0:
        return f, IntMatrix.zeros(0, m.cols)
    # F^T is in echelon form; its pivot columns give an invertible block of F
    _, _, piv = _hermite_rows(f.T.to_rows())
    fr = [list(f.row(i)) for i in piv]
    inv = rational_inverse(fr)
    v = []
    for i in range(r):
        row = []
        for j in range(m.cols):
            s = sum(inv[i][t] * m[piv[t], j] for t in range(r))
            if s.denominator != 1:
                raise ArithmeticError("non-integral lattice factor")
            row.append(int(s))
        v.append(row)
    return f, IntMatrix.from_rows(v, m.cols)


def independent_row_indices(m):
    """Indices of a lexicographically first maximal set of independent rows."""
    m = as_intmatrix(m)
    _, _, piv = _hermite_rows(m.T.to_rows())
    return piv


class IncrementalBasis:
    """Column-by-column independence test with running determinant.

    Each stored vector is ``w = s * (c - combination of earlier columns)`` for
    an integer column ``c`` and a rational scale ``s``; reduction is fraction
    free and every stored vector is made primitive.  Entries of ``w`` vanish
    on the pivots of the earlier vectors, so the determinant of the block on
    the pivot rows is the product of ``w[pivot] / s`` times the sign of the
    pivot permutation.
    """

    __slots__ = ("vectors", "pivots", "scales")

    def __init__(self):
        self.vectors = []
        self.pivots = []
        self.scales = []

    def reduce(self, v):
        v = list(v)
        scale = Fraction(1)
        for b, pv in zip(self.vectors, self.pivots):
            c = v[pv]
            if c:
                bp = b[pv]
                g = gcd(bp, c)
                mb, mc = bp // g, c // g
                v = [mb * x - mc * y for x, y in zip(v, b)]
                scale *= mb
        g = 0
        for x in v:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g > 1:
            v = [x // g for x in v]
            scale /= g
        return v, scale

    def try_push(self, v):
        """Append ``v`` when independent; returns the pivot index or None."""
        w, scale = self.reduce(v)
        pv = next((i for i, x in enumerate(w) if x), None)
        if pv is None:
            return None
        self.vectors.append(w)
        self.pivots.append(pv)
        self.scales.append(scale)
        return pv

    def pop(self):
        self.vectors.pop()
        self.pivots.pop()
        self.scales.pop()

    def determinant(self):
        """Signed determinant of the stored columns when they fill the space."""
        out = Fraction(1)
        for b, pv, s in zip(self.vectors, self.pivots, self.scales):
            out *= b[pv] / s
        return out * _permutation_sign(self.pivots)


def _permutation_sign(seq):
    inv = 0
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def iter_independent_subsets(m, size, with_det=False):
    """Yield the column subsets of ``m`` of the given size that are independent.

    Subsets come out in lexicographic order.  With ``with_det`` (meaningful
    when ``size`` equals the row count) each subset is paired with the
    determinant of the selected square block.
    """
    m = as_intmatrix(m)
    n = m.cols
    if size < 0 or size > n:
        return
    if size == 0:
        yield ((), Fraction(1)) if with_det else ()
        return
    cols = [m.col(j) for j in range(n)]
    basis = IncrementalBasis()
    chosen = []

    def rec(start):
        need = size - len(chosen)
        for j in range(start, n - need + 1):
            if basis.try_push(cols[j]) is None:
                continue
            chosen.append(j)
            if need == 1:
                sub = tuple(chosen)
                yield (sub, basis.determinant()) if with_det else sub
            else:
                yield from rec(j + 1)
            chosen.pop()
            basis.pop()
    yield from rec(0)
