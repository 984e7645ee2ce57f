"""Matroids given by an independence oracle, and their exchange graphs.

Vertices of the exchange graph are ordered pairs (I, J) of independent
sets; an edge moves one element from one side to the other.  Elements are
0-based; subsets are handled internally as bit masks.
"""

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .linalg import as_intmatrix, rank as matrix_rank


def _mask(subset):
    m = 0
    for i in subset:
        m |= 1 << i
    return m


def _elements(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _popcount(mask):
    return bin(mask).count("1")


class MatroidView:
    """A matroid on ``range(n)`` described by an independence oracle.

    ``oracle`` receives a sorted tuple of elements.  Answers are cached.
    """

    def __init__(self, n, oracle, name="custom"):
        self.n = n
        self._oracle = oracle
        self._cache = {}
        self._rank_cache = {}
        self.name = name

    # ------------------------------------------------------------ back-ends
    @classmethod
    def linear(cls, matrix):
        m = as_intmatrix(matrix)

        def oracle(idx):
            return not idx or matrix_rank(m.select_columns(idx)) == len(idx)
        return cls(m.cols, oracle, "linear")

    @classmethod
    def uniform(cls, r, n):
        if not 0 <= r <= n:
            raise ValueError("uniform matroid needs 0 <= r <= n")
        return cls(n, lambda idx: len(idx) <= r, f"U({r},{n})")

    @classmethod
    def graphic(cls, edges):
        """Cycle matroid of a (multi)graph; loops are dependent."""
        edges = [tuple(e) for e in edges]

        def oracle(idx):
            parent = {}

            def find(x):
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x
            for i in idx:
                a, b = find(edges[i][0]), find(edges[i][1])
                if a == b:
                    return False
                parent[a] = b
            return True
        return cls(len(edges), oracle, "graphic")

    # ------------------------------------------------------------ oracle on masks
    def _indep(self, mask):
        v = self._cache.get(mask)
        if v is None:
            v = bool(self._oracle(_elements(mask)))
            self._cache[mask] = v
        return v

    def _rank(self, mask):
        v = self._rank_cache.get(mask)
        if v is None:
            cur = 0
            for i in _elements(mask):
                if self._indep(cur | (1 << i)):
                    cur |= 1 << i
            v = _popcount(cur)
            self._rank_cache[mask] = v
        return v

    def _closure(self, mask):
        rk = self._rank(mask)
        out = mask
        for i in range(self.n):
            if not (mask >> i) & 1 and self._rank(mask | (1 << i)) == rk:
                out |= 1 << i
        return out

    # ------------------------------------------------------------ public queries
    def _check(self, subset):
        subset = tuple(sorted(set(subset)))
        if any(i < 0 or i >= self.n for i in subset):
            raise ValueError(f"subset {subset} leaves the ground set of size {self.n}")
        return subset

    def is_independent(self, subset):
        return self._indep(_mask(self._check(subset)))

    def rank(self, subset=None):
        subset = range(self.n) if subset is None else subset
        return self._rank(_mask(self._check(subset)))

    def closure(self, subset):
        return _elements(self._closure(_mask(self._check(subset))))

    def fr(self, subset):
        """Elements independent from ``subset``: the complement of its closure."""
        cl = self._closure(_mask(self._check(subset)))
        return tuple(i for i in range(self.n) if not (cl >> i) & 1)

    def independent_masks(self):
        out = [0]
        frontier = [0]
        seen = {0}
        while frontier:
            nxt = []
            for m in frontier:
                top = m.bit_length()
                for i in range(top, self.n):
                    mm = m | (1 << i)
                    if mm not in seen and self._indep(mm):
                        seen.add(mm)
                        nxt.append(mm)
            out.extend(nxt)
            frontier = nxt
        return sorted(out, key=lambda m: (_popcount(m), _elements(m)))

    def independent_sets(self, size=None):
        sets = [_elements(m) for m in self.independent_masks()]
        return sets if size is None else [s for s in sets if len(s) == size]

    def bases(self):
        r = self.rank()
        return sorted(s for s in self.independent_sets(r))

    def check_axioms(self, samples=200, seed=0):
        """Spot-check the independence axioms on random subsets."""
        rng = random.Random(seed)
        if not self._indep(0):
            return False
        for _ in range(samples):
            a = rng.getrandbits(self.n) if self.n else 0
            if self._indep(a):
                for i in _elements(a):
                    if not self._indep(a & ~(1 << i)):
                        return False
            b = rng.getrandbits(self.n) if self.n else 0
            if self._indep(a) and self._indep(b) and _popcount(a) < _popcount(b):
                if not any(self._indep(a | (1 << i)) for i in _elements(b & ~a)):
                    return False
        return True

    def __repr__(self):
        return f"MatroidView({self.name}, n={self.n})"


def least_closing_subset(matroid, subset, i):
    """The least C ⊆ subset (independent) with i in cl(C), or None if i ∉ cl(subset)."""
    s = _mask(matroid._check(subset))
    if not matroid._indep(s):
        raise ValueError("subset must be independent")
    if not (matroid._closure(s) >> i) & 1:
        return None
    if (s >> i) & 1:
        return (i,)
    c = 0
    for j in _elements(s):
        rest = s & ~(1 << j)
        if not (matroid._closure(rest) >> i) & 1:
            c |= 1 << j
    return _elements(c)


# ---------------------------------------------------------------- exchange pairs

@dataclass(frozen=True, order=True)
class ExchangePair:
    I: tuple
    J: tuple

    @classmethod
    def make(cls, matroid, I, J):
        I, J = tuple(sorted(set(I))), tuple(sorted(set(J)))
        if not matroid.is_independent(I) or not matroid.is_independent(J):
            raise ValueError(f"({I}, {J}) is not a pair of independent sets")
        return cls(I, J)

    def masks(self):
        return _mask(self.I), _mask(self.J)

    def __str__(self):
        def fmt(s):
            return "{" + ",".join(str(i + 1) for i in s) + "}"
        return f"({fmt(self.I)},{fmt(self.J)})"


def _pair(a, b):
    return ExchangePair(_elements(a), _elements(b))


def _layer_of(graph, a, b):
    if graph == "full":
        return True
    p, q = graph
    sa, sb = _popcount(a), _popcount(b)
    return (sa, sb) in ((p, q), (p - 1, q + 1))


def _neighbor_masks(matroid, a, b, graph="full"):
    out = []
    n = matroid.n
    for i in range(n):
        bit = 1 << i
        if (b & bit) and not (a & bit) and matroid._indep(a | bit):
            out.append((a | bit, b & ~bit))
        if (a & bit) and not (b & bit) and matroid._indep(b | bit):
            out.append((a & ~bit, b | bit))
    if graph != "full":
        out = [v for v in out if _layer_of(graph, *v)]
    return out


def _normalize_graph(matroid, graph):
    if graph in ("full", None):
        return "full"
    if graph == "rr1":
        r = matroid.rank()
        return (r, r - 1)
    p, q = graph
    r = matroid.rank()
    if not (1 <= p <= r and 0 <= q <= r - 1):
        raise ValueError(f"layer ({p}, {q}) needs 1 <= p <= {r} and 0 <= q <= {r - 1}")
    return (p, q)


def neighbors(matroid, v, graph="full"):
    """Exchange-adjacent vertices, sorted; ``graph`` restricts to a layer (p, q)."""
    graph = _normalize_graph(matroid, graph)
    a, b = v.masks()
    return sorted(_pair(x, y) for x, y in _neighbor_masks(matroid, a, b, graph))


def _mcp_masks(matroid, a, b):
    ua, vb = a, b
    while True:
        na = a & matroid._closure(vb)
        nb = b & matroid._closure(na)
        if na == ua and nb == vb:
            return ua, vb
        ua, vb = na, nb


def mcp(matroid, v):
    """Maximal codependent pair by the alternating closure iteration.

    Starting from (A, B) = (I, J), repeat A <- I ∩ cl(B), B <- J ∩ cl(A).
    The sets only shrink; at the fixed point cl(A) = cl(B), and every
    codependent pair stays inside by induction, so the limit is the MCP.
    """
    a, b = v.masks()
    return _pair(*_mcp_masks(matroid, a, b))


def mcp_bruteforce(matroid, v):
    """MCP by scanning all sub-pairs; checks that the maximum is unique."""
    a, b = v.masks()
    best = []
    subs_a = [_mask(s) for k in range(len(v.I) + 1) for s in combinations(v.I, k)]
    subs_b = [_mask(s) for k in range(len(v.J) + 1) for s in combinations(v.J, k)]
    cl_b = {y: matroid._closure(y) for y in subs_b}
    for x in subs_a:
        cx = matroid._closure(x)
        for y in subs_b:
            if cl_b[y] == cx:
                best.append((x, y))
    top = max(best, key=lambda t: _popcount(t[0]) + _popcount(t[1]))
    for x, y in best:
        if x & ~top[0] or y & ~top[1]:
            raise AssertionError("codependent pairs have no unique maximum")
    return _pair(*top)


def _component(matroid, start, graph):
    seen = {start}
    queue = deque([start])
    while queue:
        a, b = queue.popleft()
        for w in _neighbor_masks(matroid, a, b, graph):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def cfe(matroid, v, p=None, q=None):
    """Intersections of both sides over the component of v in the layer (p, q)."""
    p = len(v.I) if p is None else p
    q = len(v.J) if q is None else q
    graph = _normalize_graph(matroid, (p, q))
    a, b = v.masks()
    if not _layer_of(graph, a, b):
        raise ValueError(f"{v} is not a vertex of the layer ({p}, {q})")
    comp = _component(matroid, (a, b), graph)
    ia = ib = (1 << matroid.n) - 1
    for x, y in comp:
        ia &= x
        ib &= y
    return _pair(ia, ib)


def is_isolated(matroid, v, graph="full"):
    """Isolation test from closures alone.

    In the full graph: cl(I) = cl(J).  In a layer (p, q): I ⊆ cl(J) for
    vertices with |I| = p, J ⊆ cl(I) for vertices with |I| = p - 1; a layer
    with p = q + 1 has no isolated vertex.
    """
    graph = _normalize_graph(matroid, graph)
    a, b = v.masks()
    if graph == "full":
        return matroid._closure(a) == matroid._closure(b)
    p, q = graph
    if not _layer_of(graph, a, b):
        raise ValueError(f"{v} is not a vertex of the layer {graph}")
    if _popcount(a) == p and _popcount(b) == q:
        return a & ~matroid._closure(b) == 0
    return b & ~matroid._closure(a) == 0


def is_isolated_bruteforce(matroid, v, graph="full"):
    graph = _normalize_graph(matroid, graph)
    return not _neighbor_masks(matroid, *v.masks(), graph)


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class ComponentClassification:
    graph: object
    components: tuple
    labels: tuple
    isolated: tuple
    consistent: bool

    def summary_lines(self):
        out = [f"graph {self.graph if self.graph == 'full' else 'G_%d,%d' % self.graph}",
               f"vertices {sum(len(c) for c in self.components)}",
               f"components {len(self.components)}",
               f"isolated {sum(self.isolated)}",
               f"consistent {'yes' if self.consistent else 'no'}"]
        for comp, (multiset, m), iso in zip(self.components, self.labels, self.isolated):
            ms = "{" + ",".join(str(i + 1) for i in multiset) + "}"
            out.append(f"size {len(comp)} multiset {ms} mcp {m}{' isolated' if iso else ''}")
        return out


class ClassificationError(AssertionError):
    pass


def layer_vertices(matroid, graph):
    graph = _normalize_graph(matroid, graph)
    masks = matroid.independent_masks()
    if graph == "full":
        return [(a, b) for a in masks for b in masks]
    p, q = graph
    by_size = {}
    for m in masks:
        by_size.setdefault(_popcount(m), []).append(m)
    out = [(a, b) for a in by_size.get(p, []) for b in by_size.get(q, [])]
    out += [(a, b) for a in by_size.get(p - 1, []) for b in by_size.get(q + 1, [])]
    return out


def classify_components(matroid, graph="full", bound=10, verify=True):
    """BFS components labelled by the multiset I ⊎ J and the MCP.

    With ``verify`` the labels must be constant along every edge and
    distinct components (ignoring isolated vertices of a general layer)
    must carry distinct labels.
    """
    if matroid.n > bound:
        raise ValueError(f"ground set of size {matroid.n} exceeds the bound {bound}")
    graph = _normalize_graph(matroid, graph)
    vertices = sorted(layer_vertices(matroid, graph), key=lambda t: (_elements(t[0]), _elements(t[1])))
    seen = set()
    comps = []
    for v in vertices:
        if v in seen:
            continue
        comp = _component(matroid, v, graph)
        seen |= comp
        comps.append(sorted(comp, key=lambda t: (_elements(t[0]), _elements(t[1]))))

    def label(a, b):
        multiset = tuple(sorted(_elements(a) + _elements(b)))
        return multiset, _pair(*_mcp_masks(matroid, a, b))

    labels, isolated = [], []
    ok = True
    for comp in comps:
        lab = label(*comp[0])
        labels.append(lab)
        isolated.append(len(comp) == 1 and not _neighbor_masks(matroid, *comp[0], graph))
        for a, b in comp:
            if label(a, b) != lab:
                ok = False
    relevant = {}
    for lab, iso in zip(labels, isolated):
        if graph != "full" and iso:
            continue
        if lab in relevant:
            ok = False
        relevant[lab] = True
    if verify and not ok:
        raise ClassificationError("components and invariant classes differ")
    return ComponentClassification(
        graph, tuple(tuple(_pair(a, b) for a, b in c) for c in comps),
        tuple(labels), tuple(isolated), ok)


# ---------------------------------------------------------------- experiment

def probe_square_layer(matroid):
    """Observation only: components of the (r, r) layer extended by spanning sets.

    Vertices are (basis, basis) and (independent of size r - 1, spanning set
    of size r + 1).  Reports whether the multiset/MCP labels separate the
    components; no claim is attached to the answer.
    """
    r = matroid.rank()
    n = matroid.n
    bases = [m for m in matroid.independent_masks() if _popcount(m) == r]
    small = [m for m in matroid.independent_masks() if _popcount(m) == r - 1]
    spanning = [m for m in range(1 << n)
                if _popcount(m) == r + 1 and matroid._rank(m) == r]
    base_set = set(bases)
    vertices = [(a, b) for a in bases for b in bases] + [(a, b) for a in small for b in spanning]

    def nbrs(a, b):
        out = []
        for i in range(n):
            bit = 1 << i
            if _popcount(a) == r and (a & bit) and not (b & bit):
                out.append((a & ~bit, b | bit))
            if _popcount(a) == r - 1 and (b & bit) and not (a & bit):
                if (a | bit) in base_set and (b & ~bit) in base_set:
                    out.append((a | bit, b & ~bit))
        return out
    seen, comps = set(), []
    for v in vertices:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            for w in nbrs(*queue.popleft()):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    labels = {}
    separated = True
    for comp in comps:
        labs = {(tuple(sorted(_elements(a) + _elements(b))), _mcp_masks(matroid, a, b))
                for a, b in comp}
        for lab in labs:
            if lab in labels and len(comp) > 1:
                separated = False
            labels[lab] = True
    return {"vertices": len(vertices), "components": len(comps), "labels_separate": separated,
            }
