"""Numeric experiments on the variation of Symanzik rational fractions.

For a kernel basis ``v`` of ``U`` and an extension ``w = v + (alpha)`` with
``U alpha = beta`` the quantity studied is

    D = |w|_y^k / |v|_y^k - |w|_{y+z}^k / |v|_{y+z}^k

where ``|m|_y^k`` is the hyperdeterminant of ``diag^k(y) + Z`` multiplied by
``m`` in every direction.  The boundedness of D as y grows is only observed
empirically here: sup |D| is recorded on a fixed sample set at increasing
scales and a plateau of the last buckets is reported.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hypermatrix import HyperMatrix, hyperdeterminant, multiply_all_directions
from .linalg import as_intmatrix, kernel_lattice_basis, rational_rank, solve_rational
from .multipoly import MPoly


def _columns_to_rows(columns, n):
    return [[col[i] for col in columns] for i in range(n)]


@dataclass
class StabilityInstance:
    """u (p x n integer), preimages ``alphas`` of the parameters, order k.

    ``perturbation(rng)`` returns an order-k hypermatrix of size n (or None
    for Z = 0).
    """
    u: object
    alphas: list
    k: int = 2
    perturbation: object = None
    kernel: list = field(default=None)

    def __post_init__(self):
        self.u = as_intmatrix(self.u)
        if self.k <= 0 or self.k % 2:
            raise ValueError(f"order must be even and positive, got {self.k}")
        n = self.u.cols
        self.alphas = [[Fraction(x) for x in a] for a in self.alphas]
        if any(len(a) != n for a in self.alphas):
            raise ValueError("preimages must have one entry per column of u")
        if self.kernel is None:
            self.kernel = [list(c) for c in kernel_lattice_basis(self.u).columns()]
        cols = [list(map(Fraction, r)) for r in self.kernel] + self.alphas
        if cols and rational_rank(cols) != len(cols):
            raise ValueError("kernel basis extended by the preimages is not free")

    @classmethod
    def from_parameters(cls, u, betas, k=2, perturbation=None):
        """Solve U alpha = beta for each parameter vector beta."""
        u = as_intmatrix(u)
        alphas = []
        for beta in betas:
            a = solve_rational(u.to_rows(), list(beta))
            if a is None:
                raise ValueError(f"parameter {tuple(beta)} is not in the span of u")
            alphas.append(a)
        return cls(u, alphas, k, perturbation)

    @property
    def n(self):
        return self.u.cols

    @property
    def l(self):
        return len(self.alphas)

    def v_matrix(self):
        return _columns_to_rows(self.kernel, self.n)

    def w_matrix(self):
        return _columns_to_rows(list(self.kernel) + list(self.alphas), self.n)


def gram_form(m_rows, y, z=None, k=2):
    """hyperdet of (diag^k(y) + Z) multiplied by m in all directions.

    Entries may be exact (Fraction, MPoly) or floats.
    """
    n = len(y)
    zero = y[0] * 0 if n else 0
    if not m_rows or not m_rows[0]:
        return zero + 1
    c = HyperMatrix.diagonal(list(y), k)
    if z is not None:
        c = c + z
    return hyperdeterminant(multiply_all_directions(c, m_rows))


def _gram_form_float(m_rows, y, z, k):
    if k == 2:
        m = np.array(m_rows, dtype=float)
        g = np.diag(np.asarray(y, dtype=float))
        if z is not None:
            g = g + np.array(z.entries, dtype=float).reshape(len(y), len(y))
        return float(np.linalg.det(m.T @ g @ m)) if m.shape[1] else 1.0
    m_f = [[float(x) for x in r] for r in m_rows]
    zf = None if z is None else HyperMatrix(z.shape, [float(x) for x in z.entries])
    return float(gram_form(m_f, [float(v) for v in y], zf, k))


def ratio_difference(inst, y, z=None, exact=True):
    """D at weights y with perturbation z (a hypermatrix or None).

    The exact path is used for rational inputs; ``exact=False`` evaluates
    with floats (numpy determinants when k = 2).
    """
    v, w = inst.v_matrix(), inst.w_matrix()
    if exact:
        y = [Fraction(t) for t in y]
        form = gram_form
    else:
        form = _gram_form_float
    f1 = form(v, y, None, inst.k)
    f2 = form(w, y, None, inst.k)
    if z is None:
        return f1 * 0
    g1 = form(v, y, z, inst.k)
    g2 = form(w, y, z, inst.k)
    if f1 <= 0 or g1 <= 0:
        raise ValueError("the gram form of the kernel basis is not positive at this point")
    return f2 / f1 - g2 / g1


def diagonal_perturbation(k, n, low=-1, high=1, denominator=1000):
    """Sampler of diag^k(z) with z uniform in [low, high] on a rational grid."""
    def sample(rng):
        z = [Fraction(rng.randint(low * denominator, high * denominator), denominator)
             for _ in range(n)]
        return HyperMatrix.diagonal(z, k)
    return sample


def dense_perturbation(k, n, low=-1, high=1, denominator=1000):
    """Sampler of a full order-k hypermatrix with entries in [low, high]."""
    def sample(rng):
        return HyperMatrix((n,) * k, [
            Fraction(rng.randint(low * denominator, high * denominator), denominator)
            for _ in range(n ** k)])
    return sample


@dataclass
class StabilityReport:
    scales: list
    sups: list
    normalized: bool
    samples: int
    seed: int
    plateau: bool
    skipped: int = 0

    def table(self):
        head = "scale  sup|D|" + ("/max(y)^(l-1)" if self.normalized else "")
        out = [head]
        for c, s in zip(self.scales, self.sups):
            out.append(f"{c:>6g}  {s:.6g}")
        out.append(f"plateau {'yes' if self.plateau else 'no'} (empirical rule: last three buckets within 10% of their max)")
        return "\n".join(out)

    def lines(self):
        return [f"{c:g} {s:.12g}" for c, s in zip(self.scales, self.sups)]


def plateau_detected(sups, window=3, tol=0.1):
    tail = list(sups)[-window:]
    if len(tail) < window:
        return False
    top = max(tail)
    return top - min(tail) <= tol * top


def _experiment(inst, scales, samples, seed, exact, power):
    scales = list(scales)
    if not scales or any(c <= 0 for c in scales) or any(a >= b for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be positive and increasing")
    rng = random.Random(seed)
    draws = []
    for _ in range(samples):
        base = [Fraction(rng.randint(1000, 10000), 1000) for _ in range(inst.n)]
        z = inst.perturbation(rng) if inst.perturbation is not None else None
        draws.append((base, z))
    sups = []
    skipped = 0
    for c in scales:
        best = 0.0
        for base, z in draws:
            y = [c * t for t in base]
            try:
                d = ratio_difference(inst, y, z, exact=exact)
            except ValueError:
                skipped += 1
                continue
            if power:
                d = d / max(y) ** power
            best = max(best, abs(float(d)))
        sups.append(best)
    return scales, sups, skipped


def run_stability_experiment(inst, scales=(10, 100, 1000, 10000), samples=50, seed=0, exact=True):
    """sup |D| over the same seeded samples y = C * t, t in [1, 10]^n, per scale C."""
    scales, sups, skipped = _experiment(inst, scales, samples, seed, exact, 0)
    return StabilityReport(scales, sups, False, samples, seed, plateau_detected(sups), skipped)


def run_corollary_experiment(inst, scales=(10, 100, 1000, 10000), samples=50, seed=0, exact=True):
    """As above with |D| divided by max_i y_i^(l-1)."""
    scales, sups, skipped = _experiment(inst, scales, samples, seed, exact, inst.l - 1)
    return StabilityReport(scales, sups, inst.l > 1, samples, seed, plateau_detected(sups), skipped)


def sharpness_example():
    """The instance showing the max(y)^(l-1) rate cannot be improved (k = 2)."""
    u = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    alphas = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    z = HyperMatrix((4, 4), [0] * 15 + [-1])
    inst = StabilityInstance(u, alphas, 2, lambda rng: z, kernel=[[1, 0, 0, 0]])
    return inst, z


def symbolic_difference(inst, z):
    """D with symbolic weights y1..yn, as (numerator, denominator) polynomials."""
    n = inst.n
    y = MPoly.variables(n)
    zp = HyperMatrix(z.shape, [MPoly.constant(e, n) for e in z.entries])
    v, w = inst.v_matrix(), inst.w_matrix()
    f1 = gram_form(v, y, None, inst.k)
    f2 = gram_form(w, y, None, inst.k)
    g1 = gram_form(v, y, zp, inst.k)
    g2 = gram_form(w, y, zp, inst.k)
    return f2 * g1 - g2 * f1, f1 * g1
