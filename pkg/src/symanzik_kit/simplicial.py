"""Simplicial complexes, spanning forests and the simplicial matrix-tree theorem.

Faces are sorted vertex tuples; in every dimension they are enumerated
lexicographically, which fixes all orientations and variable indices.
Facet and face indices in this API are 0-based; the text formats and
printed polynomials are 1-based.

Complexes without a face structure (Delta-complexes, contractions) are
represented by :class:`GeneralizedComplex`, which only carries the top
boundary matrix.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from . import core
from .errors import IdentityFailure
from .hypermatrix import HyperMatrix, hyperdeterminant
from .linalg import (
    IntMatrix, as_intmatrix, column_lattice_basis, generic_det,
    independent_row_indices, iter_independent_subsets, gram_det,
    kernel_lattice_basis, rank, saturation_index, solve_rational,
)
from .multipoly import MPoly


class SimplicialComplex:
    """Finite abstract simplicial complex generated by a list of faces."""

    def __init__(self, generators):
        faces = set()
        for g in generators:
            g = tuple(sorted(set(int(v) for v in g)))
            if not g:
                continue
            for size in range(1, len(g) + 1):
                faces.update(combinations(g, size))
        if not faces:
            raise ValueError("a complex needs at least one nonempty face")
        self.dim = max(len(f) for f in faces) - 1
        self._faces = {d: sorted(f for f in faces if len(f) == d + 1)
                       for d in range(self.dim + 1)}
        self._faces[-1] = [()]
        self._index = {d: {f: i for i, f in enumerate(fs)} for d, fs in self._faces.items()}

    @property
    def vertices(self):
        return [f[0] for f in self._faces[0]]

    @property
    def vertex_count(self):
        return len(self._faces[0])

    def faces(self, d):
        if d < -1 or d > self.dim:
            return []
        return list(self._faces[d])

    @property
    def facets(self):
        """The faces of top dimension, in their fixed enumeration."""
        return self.faces(self.dim)

    def face_index(self, face):
        face = tuple(sorted(face))
        return self._index[len(face) - 1][face]

    def maximal_faces(self):
        out = []
        for d in range(self.dim, -1, -1):
            for f in self._faces[d]:
                if not any(set(f) < set(g) for g in out):
                    out.append(f)
        return sorted(out, key=lambda f: (-len(f), f))

    def boundary_matrix(self, l=None):
        return boundary_matrix(self, self.dim if l is None else l)

    @property
    def top_boundary(self):
        return self.boundary_matrix(self.dim)

    @property
    def row_labels(self):
        return tuple(range(len(self._faces[self.dim - 1])))

    def to_text(self):
        lines = [f"complex {self.dim}"]
        lines += [" ".join(str(v) for v in f) for f in self.maximal_faces()]
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._faces == other._faces

    def __repr__(self):
        counts = ", ".join(str(len(self._faces[d])) for d in range(self.dim + 1))
        return f"SimplicialComplex(dim={self.dim}, f=({counts}))"


@dataclass(frozen=True)
class GeneralizedComplex:
    """A complex known only through its top boundary matrix.

    ``row_labels`` remembers which rows of an original matrix survive, so
    contractions compose by original labels.
    """

    boundary: IntMatrix
    row_labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "boundary", as_intmatrix(self.boundary))
        if self.row_labels is None:
            object.__setattr__(self, "row_labels", tuple(range(self.boundary.rows)))
        if len(self.row_labels) != self.boundary.rows:
            raise ValueError("one label per row is required")

    @property
    def top_boundary(self):
        return self.boundary

    @property
    def facets(self):
        return list(range(self.boundary.cols))


def top_boundary(obj):
    """The matrix of the top boundary operator of a complex-like value."""
    if isinstance(obj, (SimplicialComplex, GeneralizedComplex)):
        return obj.top_boundary
    return as_intmatrix(obj)


def graph_complex(edges, vertices=()):
    """A graph as a 1-dimensional complex (extra isolated vertices allowed)."""
    gens = [tuple(e) for e in edges] + [(v,) for v in vertices]
    for e in edges:
        if len(set(e)) != 2:
            raise ValueError(f"edge {e} is not a pair of distinct vertices")
    return SimplicialComplex(gens)


def complete_complex(n_vertices, d):
    """The complete d-dimensional complex on vertices 1..n_vertices."""
    return SimplicialComplex(combinations(range(1, n_vertices + 1), d + 1))


def parse_complex_text(text):
    """Read ``complex d`` + facets, or raw ``matrix p n`` + rows."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty complex file")
    head = lines[0].split()
    if head[0] == "complex":
        if len(head) != 2:
            raise ValueError(f"bad complex header {lines[0]!r}")
        d = int(head[1])
        facets = []
        for ln in lines[1:]:
            f = [int(t) for t in ln.split()]
            if any(v < 1 for v in f):
                raise ValueError(f"vertex indices are 1-based: {ln!r}")
            if len(set(f)) != len(f):
                raise ValueError(f"repeated vertex in {ln!r}")
            facets.append(f)
        if not facets:
            raise ValueError("complex has no facets")
        cx = SimplicialComplex(facets)
        if cx.dim != d:
            raise ValueError(f"header says dimension {d}, facets give {cx.dim}")
        return cx
    if head[0] == "matrix":
        from .linalg import parse_matrix_text
        return GeneralizedComplex(parse_matrix_text("\n".join([" ".join(head[1:])] + lines[1:])))
    raise ValueError(f"unknown complex header {lines[0]!r}")


# ---------------------------------------------------------------- boundaries

def boundary_matrix(cx, l):
    """Matrix of the boundary C_l -> C_{l-1} of the augmented chain complex."""
    if not isinstance(cx, SimplicialComplex):
        raise TypeError("boundary_matrix needs a SimplicialComplex")
    if l < -1 or l > cx.dim:
        raise ValueError(f"dimension {l} outside [-1, {cx.dim}]")
    cols = cx.faces(l)
    rows = cx.faces(l - 1)
    if l == -1:
        return IntMatrix.zeros(0, 1)
    index = {f: i for i, f in enumerate(rows)}
    out = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        for t in range(len(f)):
            out[index[f[:t] + f[t + 1:]]][j] += -1 if t % 2 else 1
    return IntMatrix.from_rows(out, len(cols))


def torsion_order(cx, l=None):
    """|Tor H_l| as the product of the elementary divisors of the next boundary."""
    if isinstance(cx, SimplicialComplex):
        l = cx.dim - 1 if l is None else l
        if l < 0 or l > cx.dim - 1:
            raise ValueError(f"torsion is available for 0 <= l <= {cx.dim - 1}")
        return saturation_index(boundary_matrix(cx, l + 1))
    if l is not None:
        raise ValueError("a raw boundary matrix only gives the top torsion")
    return saturation_index(top_boundary(cx))


# ---------------------------------------------------------------- forests

@dataclass(frozen=True)
class ForestConditions:
    acyclic: bool
    corank: bool
    size: bool

    @property
    def count(self):
        return self.acyclic + self.corank + self.size

    @property
    def all(self):
        return self.count == 3


def forest_conditions(cx, gamma, kappa):
    """The three defining conditions of a kappa-forest for the facet subset gamma."""
    U = top_boundary(cx)
    gamma = sorted(set(gamma))
    r = rank(U)
    rg = rank(U.select_columns(gamma)) if gamma else 0
    n = U.cols
    return ForestConditions(acyclic=(rg == len(gamma)), corank=(r - rg == kappa),
                            size=(len(gamma) == n - (n - r) - kappa))


def is_kappa_forest(cx, gamma, kappa):
    cond = forest_conditions(cx, gamma, kappa)
    if cond.count == 2:
        raise IdentityFailure("exactly two forest conditions hold")
    return cond.all


def enumerate_forests(cx, kappa):
    """All kappa-forests (facet index tuples) in lexicographic order."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    U = top_boundary(cx)
    r = rank(U)
    if kappa > r:
        return []
    return list(iter_independent_subsets(U, r - kappa))


# ---------------------------------------------------------------- Kirchhoff

def _monomial(idx, n):
    e = [0] * n
    for i in idx:
        e[i] = 1
    return tuple(e)


def simplicial_kirchhoff(cx, k, paths=("definition", "forests", "torsion")):
    """Kir_k of the top boundary, computed along several independent paths.

    ``definition``
        coefficients |det V_I|^k from a row-lattice basis V;
    ``forests``
        |Tor H_{d-1}|^k times |B(Delta)/B(Gamma)|^k over the 0-forests;
    ``torsion``
        |Tor H_{d-1}(Gamma)|^k over the 0-forests.

    All requested paths must agree; the common polynomial is returned.
    """
    core._check_k(k)
    U = top_boundary(cx)
    n = U.cols
    results = {}
    if "definition" in paths:
        results["definition"] = core.kirchhoff(core.VectorFamily(U), k)
    forests = None
    if "forests" in paths or "torsion" in paths:
        forests = enumerate_forests(cx, 0)
    if "forests" in paths:
        tor = saturation_index(U)
        B = column_lattice_basis(U)
        rows = independent_row_indices(B)
        dB = abs(generic_det([list(B.row(i)) for i in rows])) if rows else 1
        rows_u = [list(U.row(i)) for i in rows]
        terms = {}
        for g in forests:
            num = abs(generic_det([[row[j] for j in g] for row in rows_u])) if g else 1
            if num % dB:
                raise IdentityFailure("boundary lattice index is not an integer")
            terms[_monomial(g, n)] = core._power(tor * (num // dB), k)
        results["forests"] = MPoly(n, terms) if terms else MPoly.zero(n)
    if "torsion" in paths:
        terms = {}
        for g in forests:
            t = saturation_index(U.select_columns(g)) if g else 1
            terms[_monomial(g, n)] = core._power(t, k)
        results["torsion"] = MPoly(n, terms) if terms else MPoly.zero(n)
    if not results:
        raise ValueError("no computation path selected")
    values = list(results.values())
    for name, p in results.items():
        if p != values[0]:
            raise IdentityFailure(f"path {name!r} disagrees: {p} vs {values[0]}")
    return values[0]


def simplicial_symanzik(cx, k):
    return core.symanzik(core.VectorFamily(top_boundary(cx)), k)


# ---------------------------------------------------------------- factorization

@dataclass(frozen=True)
class FacetClassDecomposition:
    classes: tuple
    tau: tuple
    Q: tuple
    P: MPoly
    k: int
    torsion: int
    nfacets: int

    def composed(self):
        """P(Q_1, ..., Q_l) expanded in the facet variables."""
        if not self.classes:
            return MPoly.constant(self.P.constant_term(), self.nfacets)
        return self.P.compose(self.Q)

    def describe(self):
        lines = [f"P = {_class_string(self.P)}"]
        for j, q in enumerate(self.Q):
            lines.append(f"Q{j + 1} = {q}")
        return lines


def _class_string(p):
    return p.to_canonical_string().replace("x", "T")


def facet_class_factorization(cx, k, points=20, seed=0):
    """Factor Sym_k through the facet classes of the cycle lattice.

    Two facets are equivalent when every cycle vanishes on one exactly when
    it vanishes on the other; with the rows of a cycle-lattice basis this is
    parallelism of rows.  ``tau_j`` is the value pattern of a cycle that is
    minimal on class j, ``Q_j = sum tau_j(delta)^k x_delta`` and ``P`` comes
    from writing the cycle basis in terms of the ``tau_j``.
    """
    core._check_k(k)
    if k == 0:
        raise ValueError("facet-class factorization needs k >= 2")
    U = top_boundary(cx)
    n = U.cols
    K = kernel_lattice_basis(U)
    m = K.cols
    rows = [list(K.row(i)) for i in range(n)]
    classes = []
    reps = []
    for i in range(n):
        if not any(rows[i]):
            continue
        for c, rep in enumerate(reps):
            if rational_parallel(rows[i], rows[rep]):
                classes[c].append(i)
                break
        else:
            reps.append(i)
            classes.append([i])
    tau = []
    coef = [[0] * len(classes) for _ in range(m)]
    for c, members in enumerate(classes):
        rep = members[0]
        g = 0
        for x in rows[rep]:
            g = gcd(g, x)
        # primitive direction of the class, positive at the representative
        direction = [x // g for x in rows[rep]]
        pattern = [0] * n
        for i in members:
            fs = [Fraction(x, 1) for x in rows[i]]
            lam = next(fs[t] / direction[t] for t in range(m) if direction[t])
            if lam.denominator != 1:
                raise IdentityFailure("class coefficients are not integral")
            pattern[i] = int(lam)
        tau.append(tuple(pattern))
        for s in range(m):
            coef[s][c] = Fraction(rows[rep][s], pattern[rep])
            if coef[s][c].denominator != 1:
                raise IdentityFailure("cycle basis is not an integer combination of tau")
    l = len(classes)
    x = MPoly.variables(n)
    Q = []
    for pattern in tau:
        q = MPoly.zero(n)
        for i, t in enumerate(pattern):
            if t:
                q = q + x[i] * (t ** k if k else 1)
        Q.append(q)
    tor = saturation_index(U)
    if m == 0:
        P = MPoly.constant(tor ** k, l)
    else:
        T = MPoly.variables(l)
        table = HyperMatrix.from_function(
            (m,) * k,
            lambda idx: sum((T[c] * _prod(coef[s][c] for s in idx) for c in range(l)),
                            MPoly.zero(l)))
        P = hyperdeterminant(table) * (tor ** k)
        if not isinstance(P, MPoly):
            P = MPoly.constant(P, l)
    dec = FacetClassDecomposition(tuple(tuple(c) for c in classes), tuple(tau), tuple(Q),
                                  P, k, tor, n)
    sym = core.symanzik(core.VectorFamily(U), k)
    rng = random.Random(seed)
    for _ in range(points):
        pt = [Fraction(rng.randint(1, 50), rng.randint(1, 12)) for _ in range(n)]
        qv = [q.evaluate(pt) for q in Q]
        lhs = sym.evaluate(pt)
        rhs = P.evaluate(qv) if l else P.constant_term()
        if lhs != rhs:
            raise IdentityFailure(f"factorization fails at {pt}")
    return dec


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def rational_parallel(a, b):
    """True when the nonzero vectors a and b are proportional."""
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


# ---------------------------------------------------------------- subdivision

def stellar_subdivide(cx, facet):
    """Cone a fresh vertex over the boundary of one facet.

    Returns the new complex and ``phi``, the parent (in the old facet
    enumeration) of every new facet.
    """
    if not isinstance(cx, SimplicialComplex):
        raise TypeError("stellar subdivision needs a SimplicialComplex")
    facets = cx.facets
    if not 0 <= facet < len(facets):
        raise IndexError(f"facet index {facet} out of range")
    sigma = facets[facet]
    apex = max(cx.vertices) + 1
    gens = [f for d in range(cx.dim + 1) for f in cx.faces(d) if f != sigma]
    cones = [tuple(sorted(sigma[:t] + sigma[t + 1:] + (apex,))) for t in range(len(sigma))]
    new = SimplicialComplex(gens + cones)
    old_index = {f: i for i, f in enumerate(facets)}
    phi = tuple(facet if f in cones else old_index[f] for f in new.facets)
    return new, phi


def subdivision_assignment(phi, n_old):
    """For every old facet, the new facets mapped onto it."""
    out = [[] for _ in range(n_old)]
    for g, d in enumerate(phi):
        out[d].append(g)
    return out


def subdivision_check(cx, facet, k=2):
    """Compare Sym_k after a stellar subdivision with the substituted original."""
    new, phi = stellar_subdivide(cx, facet)
    before = simplicial_symanzik(cx, k)
    after = simplicial_symanzik(new, k)
    subst = before.substitute_sum(subdivision_assignment(phi, len(cx.facets)), len(new.facets))
    return after == subst, after, subst


# ---------------------------------------------------------------- contraction and boundaries

def contract(cx, rows):
    """Delete the rows of the top boundary whose labels are in ``rows``."""
    if isinstance(cx, SimplicialComplex):
        g = GeneralizedComplex(cx.top_boundary)
    elif isinstance(cx, GeneralizedComplex):
        g = cx
    else:
        g = GeneralizedComplex(as_intmatrix(cx))
    drop = set(rows)
    unknown = drop - set(g.row_labels)
    if unknown:
        raise ValueError(f"rows {sorted(unknown)} are not present")
    keep = [i for i, lab in enumerate(g.row_labels) if lab not in drop]
    return GeneralizedComplex(g.boundary.select_rows(keep),
                              tuple(g.row_labels[i] for i in keep))


def _support(b):
    return [i for i, x in enumerate(b) if x]


def boundary_lattice_on(cx, support):
    """Basis (columns) of Z^support ∩ B, the boundaries supported on ``support``."""
    U = top_boundary(cx)
    outside = [i for i in range(U.rows) if i not in set(support)]
    N = kernel_lattice_basis(U.select_rows(outside)) if outside else IntMatrix.identity(U.cols)
    if N.cols == 0:
        return IntMatrix.zeros(U.rows, 0)
    return column_lattice_basis(U @ N)


def preimage_chain(cx, b):
    """A rational d-chain a with boundary b; raises if b is not a boundary."""
    U = top_boundary(cx)
    sol = solve_rational(U.to_rows(), b)
    if sol is None:
        raise ValueError("vector is not a boundary")
    return sol


def is_simple_boundary(cx, b):
    b = [Fraction(x) for x in b]
    if not any(b) or any(x.denominator != 1 for x in b):
        return False
    preimage_chain(cx, b)
    L = boundary_lattice_on(cx, _support(b))
    if L.cols != 1:
        return False
    gen = L.col(0)
    return list(gen) == [int(x) for x in b] or list(gen) == [-int(x) for x in b]


def theta(cx, b, b2):
    """Index of Z(b, b2) in the boundaries supported on supp b ∪ supp b2."""
    b = [int(x) for x in b]
    b2 = [int(x) for x in b2]
    if not (is_simple_boundary(cx, b) and is_simple_boundary(cx, b2)):
        raise ValueError("theta needs simple boundaries")
    L = boundary_lattice_on(cx, sorted(set(_support(b)) | set(_support(b2))))
    pair = IntMatrix.from_columns([b, b2])
    if L.cols != 2 or rank(pair) != 2:
        raise ValueError("boundaries are not cosimple")
    ratio = Fraction(gram_det(pair), gram_det(L))
    t = isqrt(ratio.numerator)
    if ratio.denominator != 1 or t * t != ratio.numerator:
        raise IdentityFailure("lattice index is not an integer")
    return t


def decompose_simple(cx, b):
    """Write a rational boundary as a combination of pairwise cosimple simple boundaries.

    Returns ``[(lambda_j, b_j), ...]`` with ``b = sum lambda_j b_j`` and
    every ``lambda_j > 0``.
    """
    U = top_boundary(cx)
    b = [Fraction(x) for x in b]
    if len(b) != U.rows:
        raise ValueError(f"boundary has length {len(b)}, expected {U.rows}")
    preimage_chain(cx, b)
    supp = _support(b)
    if not supp:
        return []
    r = rank(U)
    D = []
    for i in supp:
        if rank(U.delete_rows(D + [i])) == r:
            D.append(i)
    out = []
    for delta in supp:
        if delta in D:
            continue
        L = boundary_lattice_on(cx, D + [delta])
        if L.cols != 1:
            raise IdentityFailure("expected a rank-one boundary lattice")
        gen = list(L.col(0))
        lam = b[delta] / gen[delta]
        if lam < 0:
            gen = [-x for x in gen]
            lam = -lam
        out.append((lam, tuple(gen)))
    recon = [sum((lam * g[i] for lam, g in out), Fraction(0)) for i in range(U.rows)]
    if recon != b:
        raise IdentityFailure("simple decomposition does not reconstruct the boundary")
    return out


def contraction_relation(cx, boundaries, k=2):
    """Both sides of the contraction identity for one simple or two cosimple boundaries.

    Returns ``(lhs, rhs)``; with ``b`` simple
    ``Tor(Delta)^k Sym_k(Delta/supp b) == Tor(Delta/supp b)^k Sym_k(Delta; (b))``
    and for a cosimple pair the left side also carries ``theta^k``.
    """
    U = top_boundary(cx)
    boundaries = [[int(x) for x in b] for b in boundaries]
    if len(boundaries) not in (1, 2):
        raise ValueError("one or two boundaries expected")
    support = sorted(set().union(*(_support(b) for b in boundaries)))
    fam = core.VectorFamily(U)
    quotient = contract(cx, support)
    tor = fam.saturation_index
    tor_q = saturation_index(quotient.boundary)
    with_params = core.symanzik_with_params(core.ParamFamily(fam, boundaries), k)
    contracted = core.symanzik(core.VectorFamily(quotient.boundary), k)
    factor = tor ** k
    if len(boundaries) == 2:
        factor *= theta(cx, *boundaries) ** k
    else:
        if not is_simple_boundary(cx, boundaries[0]):
            raise ValueError("boundary is not simple")
    return contracted * factor, with_params * (tor_q ** k)


# ---------------------------------------------------------------- cross terms

@dataclass
class CrossTermReport:
    total: Fraction
    expansion: Fraction
    cycle_norm: Fraction
    single_norms: list
    pair_norms: dict
    cross_terms: dict
    radicands: dict
    sign_by_rule: dict = field(default_factory=dict)
    passed: bool = False

    def lines(self):
        out = [f"total {self.total}", f"expansion {self.expansion}"]
        for (i, j), c in sorted(self.cross_terms.items()):
            out.append(f"pair {i + 1},{j + 1} cross {c} radicand {self.radicands[(i, j)]} "
                       f"sign_rule {self.sign_by_rule.get((i, j))}")
        out.append("PASS" if self.passed else "FAIL")
        return out


def cross_term_identity_check(cx, chains, y):
    """Check the expansion of ||v ∧ (a_1 + ... + a_l)||^2 and its cross terms.

    ``chains`` are rational d-chains; ``v`` is the cycle-lattice basis.
    Each cross term ``||v||^2 <da_i, da_j>`` is compared with the signed
    square root of ``||v∧a_i||^2 ||v∧a_j||^2 - ||v||^2 ||v∧a_i∧a_j||^2`` and
    its sign with the monomial rule on a 0-forest.
    """
    U = top_boundary(cx)
    fam = core.VectorFamily(U)
    n = U.cols
    y = core._check_weights(y, n)
    chains = [[Fraction(x) for x in a] for a in chains]
    for a in chains:
        if len(a) != n:
            raise ValueError("chain length must equal the number of facets")
    K = fam.kernel
    v = [list(map(Fraction, K.col(c))) for c in range(K.cols)]

    def gram(vectors):
        g = [[sum(y[i] * s[i] * t[i] for i in range(n)) for t in vectors] for s in vectors]
        return Fraction(generic_det(g)) if g else Fraction(1)

    def bnd(a):
        return [sum(U[r, c] * a[c] for c in range(n)) for r in range(U.rows)]

    vv = gram(v)
    total_chain = [sum(col) for col in zip(*chains)] if chains else [Fraction(0)] * n
    total = gram(v + [total_chain])
    singles = [gram(v + [a]) for a in chains]
    pairs, crosses, radicands, signs = {}, {}, {}, {}
    ok = True
    for i, j in combinations(range(len(chains)), 2):
        pairs[(i, j)] = gram(v + [chains[i], chains[j]])
        cross = vv * core.height_pairing(fam, bnd(chains[i]), bnd(chains[j]), y)
        crosses[(i, j)] = cross
        rad = singles[i] * singles[j] - vv * pairs[(i, j)]
        radicands[(i, j)] = rad
        if rad < 0 or cross * cross != rad:
            ok = False
        signs[(i, j)] = _cross_sign_rule(fam, v, chains[i], chains[j])
        if cross and signs[(i, j)] != (1 if cross > 0 else -1):
            ok = False
    expansion = sum(singles, Fraction(0)) + 2 * sum(crosses.values(), Fraction(0))
    if total != expansion:
        ok = False
    return CrossTermReport(total, expansion, vv, singles, pairs, crosses, radicands,
                           signs, ok)


def _cross_sign_rule(fam, v, a, a2):
    """Sign of P(y) = (v∧a, v∧a2)_y from one monomial, via a 0-forest."""
    n = fam.n
    x = MPoly.variables(n)
    from .hypermatrix import wedge_inner_product
    P = wedge_inner_product([v + [a], v + [a2]], y=x)
    if not isinstance(P, MPoly) or not P:
        return 0
    exps, coeff = P.items()[0]
    J = [i for i in range(n) if exps[i] == 0]
    U = fam.U
    r = fam.rank
    for delta in [i for i in range(n) if exps[i]]:
        gamma = sorted(J + [delta])
        if len(gamma) == r and rank(U.select_columns(gamma)) == r:
            break
    else:
        raise IdentityFailure("no 0-forest extends the monomial support")
    sub = [[U[row, c] for c in gamma] for row in range(U.rows)]

    def chain_on_forest(chain):
        b = [sum(U[row, c] * chain[c] for c in range(n)) for row in range(U.rows)]
        sol = solve_rational(sub, b)
        return sol[gamma.index(delta)]

    rule = chain_on_forest(a) * chain_on_forest(a2)
    s = (rule > 0) - (rule < 0)
    if s != ((coeff > 0) - (coeff < 0)):
        raise IdentityFailure("monomial sign rule disagrees with the coefficient sign")
    return s
