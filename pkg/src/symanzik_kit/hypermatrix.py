"""Hypercubic matrices, their determinant, and k-multilinear products.

Entries may be ints, Fractions or :class:`~symanzik_kit.multipoly.MPoly`
values; all routines only use ring operations.  Direction indices are
0-based.
"""

from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

from .linalg import IntMatrix


class SizeGuardError(RuntimeError):
    """Raised when an exact computation would exceed the configured budget."""


DEFAULT_HYPERDET_BUDGET = 4_000_000


class HyperMatrix:
    """Order-k array with entries indexed by tuples in ``shape``."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape, entries):
        shape = tuple(int(s) for s in shape)
        entries = tuple(entries)
        total = 1
        for s in shape:
            total *= s
        if len(entries) != total:
            raise ValueError(f"expected {total} entries for shape {shape}, got {len(entries)}")
        self.shape = shape
        self.entries = entries

    @classmethod
    def from_function(cls, shape, f):
        return cls(shape, [f(idx) for idx in product(*(range(s) for s in shape))])

    @classmethod
    def diagonal(cls, values, k):
        """diag^k(values): value a_i at (i, ..., i), zero elsewhere."""
        values = list(values)
        n = len(values)
        zero = values[0] * 0 if values else 0

        def f(idx):
            return values[idx[0]] if all(i == idx[0] for i in idx) else zero
        return cls.from_function((n,) * k, f)

    @property
    def order(self):
        return len(self.shape)

    @property
    def size(self):
        if len(set(self.shape)) > 1:
            raise ValueError(f"hypermatrix of shape {self.shape} is not hypercubic")
        return self.shape[0] if self.shape else 0

    def _offset(self, idx):
        off = 0
        for i, s in zip(idx, self.shape):
            off = off * s + i
        return off

    def __getitem__(self, idx):
        return self.entries[self._offset(idx)]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return HyperMatrix(self.shape, [a + b for a, b in zip(self.entries, other.entries)])

    def __eq__(self, other):
        return isinstance(other, HyperMatrix) and self.shape == other.shape \
            and all(a == b for a, b in zip(self.entries, other.entries))

    def __repr__(self):
        return f"HyperMatrix(shape={self.shape})"


def _matrix_rows(p):
    if isinstance(p, IntMatrix):
        return p.to_rows()
    return [list(r) for r in p]


def hyper_multiply(c, l, p):
    """Multiply ``c`` by the matrix ``p`` along direction ``l`` (0-based).

    The result has entries ``b[.., i_l, ..] = sum_a c[.., a, ..] * p[a][i_l]``.
    """
    rows = _matrix_rows(p)
    k = c.order
    if not 0 <= l < k:
        raise ValueError(f"direction {l} out of range for order {k}")
    if len(rows) != c.shape[l]:
        raise ValueError(f"matrix has {len(rows)} rows, direction {l} has size {c.shape[l]}")
    m = len(rows[0]) if rows else 0
    shape = c.shape[:l] + (m,) + c.shape[l + 1:]
    n_l = c.shape[l]

    def f(idx):
        total = 0
        j = idx[l]
        for a in range(n_l):
            coef = rows[a][j]
            if coef:
                entry = c[idx[:l] + (a,) + idx[l + 1:]]
                if entry:
                    total = total + entry * coef
        return total
    return HyperMatrix.from_function(shape, f)


def multiply_all_directions(c, p):
    """Apply ``p`` along every direction in turn."""
    for l in range(c.order):
        c = hyper_multiply(c, l, p)
    return c


def hyperdeterminant_work(n, k):
    """Number of elementary steps of the subset recursion for size n, order k."""
    return sum(comb(n, a) ** (k - 1) * (n - a) ** (k - 1) for a in range(n))


def hyperdeterminant(c, method="subsets", budget=DEFAULT_HYPERDET_BUDGET):
    """Hyperdeterminant of an even-order hypercubic matrix.

    With the first permutation fixed to the identity the definition reads
    ``sum over (t_2..t_k) of prod sign(t_j) * prod_a c[a, t_2(a), ..., t_k(a)]``.
    The default method evaluates this sum row by row, memoizing on the sets
    of values already used in each direction; ``method="definitional"``
    runs the raw permutation loops.
    """
    k = c.order
    n = c.size
    if k == 0 or k % 2:
        raise ValueError(f"hyperdeterminant needs an even positive order, got {k}")
    if n == 0:
        return 1
    if method == "definitional":
        work = factorial(n) ** (k - 1) * n
        if work > budget:
            raise SizeGuardError(f"definitional sum needs ~{work} steps (budget {budget})")
        return _hyperdet_definitional(c)
    if method != "subsets":
        raise ValueError(f"unknown method {method!r}")
    work = hyperdeterminant_work(n, k)
    if work > budget:
        raise SizeGuardError(
            f"hyperdeterminant of size {n}, order {k} needs ~{work} steps (budget {budget})")
    return _hyperdet_subsets(c)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _hyperdet_definitional(c):
    k, n = c.order, c.size
    perms = [(p, _perm_sign(p)) for p in permutations(range(n))]
    total = 0
    for combo in product(perms, repeat=k - 1):
        sign = 1
        for _, s in combo:
            sign *= s
        term = sign
        for a in range(n):
            entry = c[(a,) + tuple(p[a] for p, _ in combo)]
            if not entry:
                term = 0
                break
            term = term * entry
        if term:
            total = total + term
    return total


def _hyperdet_subsets(c):
    k, n = c.order, c.size
    dirs = k - 1
    states = {(0,) * dirs: 1}
    for a in range(n):
        nxt = {}
        for masks, val in states.items():
            free = [[t for t in range(n) if not (m >> t) & 1] for m in masks]
            for choice in product(*free):
                entry = c[(a,) + choice]
                if not entry:
                    continue
                flips = 0
                for m, t in zip(masks, choice):
                    flips += bin(m >> (t + 1)).count("1")
                term = val * entry
                if flips & 1:
                    term = -term
                key = tuple(m | (1 << t) for m, t in zip(masks, choice))
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        states = {key: v for key, v in nxt.items() if v}
        if not states:
            return 0
    return sum(states.values(), 0)


def k_product(vectors, y=None):
    """sum_i (prod_j a_j[i]) * y_i, with y_i = 1 when ``y`` is omitted.

    ``y`` may hold numbers or polynomials (for a symbolic product).
    """
    vectors = [list(v) for v in vectors]
    k = len(vectors)
    if k == 0 or k % 2:
        raise ValueError(f"k-product needs an even positive number of vectors, got {k}")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("vectors have different lengths")
    if y is not None:
        y = list(y)
        if len(y) != n:
            raise ValueError("weight vector has the wrong length")
    total = 0
    for i in range(n):
        prod_ = 1
        for v in vectors:
            prod_ = prod_ * v[i]
            if not prod_:
                break
        if prod_:
            total = total + (prod_ * y[i] if y is not None else prod_)
    return total


def product_table(families, y=None):
    """Hypermatrix of k-products (u^1_{i1}, ..., u^k_{ik})_y."""
    families = [list(f) for f in families]
    m = len(families[0])
    return HyperMatrix.from_function(
        (m,) * len(families),
        lambda idx: k_product([fam[i] for fam, i in zip(families, idx)], y))


def wedge_inner_product(families, y=None, budget=DEFAULT_HYPERDET_BUDGET):
    """det of the k-product table of k vector families; 0 for unequal sizes."""
    families = [list(f) for f in families]
    k = len(families)
    if k == 0 or k % 2:
        raise ValueError("need an even positive number of families")
    sizes = {len(f) for f in families}
    if len(sizes) > 1:
        return 0
    if sizes == {0}:
        return 1
    return hyperdeterminant(product_table(families, y), budget=budget)


def to_fraction(x):
    """Normalize an exact scalar result to Fraction."""
    return Fraction(x)
