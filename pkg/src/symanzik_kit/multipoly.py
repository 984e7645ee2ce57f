"""Sparse multivariate polynomials with exact rational coefficients.

An :class:`MPoly` lives in a fixed ring Q[x1, ..., xn].  Exponents are
stored densely as tuples of length ``n`` so that substitutions and
parameter-extended families stay representable.
"""

import re
from fractions import Fraction
from numbers import Rational


def _as_fraction(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"unsupported coefficient {c!r}")


class MPoly:
    """Immutable polynomial ``{exponent tuple: nonzero Fraction}``."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 0:
            raise ValueError("negative variable count")
        clean = {}
        if terms:
            for exps, c in dict(terms).items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(f"monomial {exps} does not have {nvars} exponents")
                if any((not isinstance(e, int)) or e < 0 for e in exps):
                    raise ValueError(f"bad exponents {exps}")
                c = _as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars):
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, i, nvars):
        """The variable x_{i+1} (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, nvars):
        return [cls.variable(i, nvars) for i in range(nvars)]

    @classmethod
    def monomial(cls, exps, coeff=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def squarefree(cls, support, nvars, coeff=1):
        """coeff * prod_{i in support} x_i."""
        e = [0] * nvars
        for i in support:
            e[i] = 1
        return cls(nvars, {tuple(e): coeff})

    # ------------------------------------------------------------ access
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in canonical order (exponent vectors, lexicographic descending)."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def is_multilinear(self):
        return all(x <= 1 for e in self._terms for x in e)

    def is_integral(self):
        return all(c.denominator == 1 for c in self._terms.values())

    # ------------------------------------------------------------ arithmetic
    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MPoly.constant(_as_fraction(other), self.nvars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = _as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MPoly.zero(self.nvars)
            return MPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant() or not other:
                raise TypeError("polynomial division is not supported")
            other = other.constant_term()
        c = _as_fraction(other)
        return self * (1 / c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # ------------------------------------------------------------ evaluation
    def evaluate(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def compose(self, polys):
        """Substitute polynomial ``polys[i]`` for variable ``x_{i+1}``."""
        polys = list(polys)
        if len(polys) != self.nvars:
            raise ValueError("need one polynomial per variable")
        if not polys:
            return self
        m = polys[0].nvars
        cache = {}
        out = MPoly.zero(m)
        for e, c in self._terms.items():
            t = MPoly.constant(c, m)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = polys[i] ** k
                    t = t * cache[key]
            out = out + t
        return out

    def substitute_sum(self, assignment, new_nvars):
        """Replace each old variable by a sum of new variables.

        ``assignment[i]`` lists the (0-based) new variables whose sum replaces
        the old variable ``i``.
        """
        assignment = [list(a) for a in assignment]
        if len(assignment) != self.nvars:
            raise ValueError("assignment must cover every variable")
        for i, a in enumerate(assignment):
            if not a and any(e[i] for e in self._terms):
                raise ValueError(f"variable x{i + 1} is not covered by the assignment")
        sums = []
        for a in assignment:
            s = MPoly.zero(new_nvars)
            for j in a:
                s = s + MPoly.variable(j, new_nvars)
            sums.append(s)
        return self.compose(sums)

    def reciprocal_transform(self, n=None):
        """x1...xn * p(1/x1, ..., 1/xn) for multilinear ``p``."""
        n = self.nvars if n is None else n
        if n != self.nvars:
            raise ValueError("reciprocal transform needs n equal to the variable count")
        if not self.is_multilinear():
            raise ValueError("reciprocal transform needs a multilinear polynomial")
        return MPoly._raw(n, {tuple(1 - x for x in e): c for e, c in self._terms.items()})

    # ------------------------------------------------------------ text forms
    def to_canonical_string(self):
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.items()):
            names = [f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}"
                     for i, k in enumerate(e) if k]
            mag = abs(c)
            if names:
                body = "*".join(names)
                text = body if mag == 1 else f"{_fmt(mag)}*{body}"
            else:
                text = _fmt(mag)
            if idx == 0:
                parts.append(text if c > 0 else "-" + text)
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)

    def __str__(self):
        return self.to_canonical_string()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_canonical_string()!r})"

    def to_term_list(self):
        lines = []
        for e, c in self.items():
            lines.append(f"{c.numerator}/{c.denominator} " + " ".join(str(x) for x in e))
        return "\n".join(line.rstrip() for line in lines)

    @classmethod
    def from_term_list(cls, text, nvars=None):
        terms = {}
        for line in text.splitlines():
            tok = line.split()
            if not tok:
                continue
            num, _, den = tok[0].partition("/")
            c = Fraction(int(num), int(den or 1))
            exps = tuple(int(t) for t in tok[1:])
            if nvars is None:
                nvars = len(exps)
            if len(exps) != nvars:
                raise ValueError(f"term line {line!r} has the wrong length")
            if exps in terms:
                raise ValueError(f"duplicate monomial in {line!r}")
            terms[exps] = c
        if nvars is None:
            raise ValueError("variable count needed for an empty term list")
        return cls(nvars, terms)

    @classmethod
    def parse(cls, text, nvars):
        """Inverse of :meth:`to_canonical_string` (also accepts any term order)."""
        s = text.strip()
        if s == "0":
            return cls.zero(nvars)
        if not s:
            raise ValueError("empty polynomial text")
        tokens = re.findall(r"[+-]|[^\s+-]+", s)
        terms = []
        sign = 1
        expect_term = True
        for tok in tokens:
            if tok in "+-":
                if expect_term and terms:
                    raise ValueError(f"misplaced sign in {text!r}")
                sign = -1 if tok == "-" else 1
                expect_term = True
                continue
            if not expect_term:
                raise ValueError(f"missing operator before {tok!r}")
            terms.append((sign, tok))
            sign = 1
            expect_term = False
        if expect_term:
            raise ValueError(f"dangling operator in {text!r}")
        out = {}
        for sign, body in terms:
            coeff = Fraction(sign)
            e = [0] * nvars
            for factor in body.split("*"):
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
                if m:
                    i = int(m.group(1)) - 1
                    if not 0 <= i < nvars:
                        raise ValueError(f"variable {factor} outside ring of {nvars}")
                    e[i] += int(m.group(2) or 1)
                elif re.fullmatch(r"\d+(?:/\d+)?", factor):
                    coeff *= Fraction(factor)
                else:
                    raise ValueError(f"cannot parse factor {factor!r}")
            key = tuple(e)
            out[key] = out.get(key, 0) + coeff
        return cls(nvars, out)


def _fmt(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# functional aliases

def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def scalar_mul(p, c):
    return p * _as_fraction(c)


def evaluate(p, point):
    return p.evaluate(point)


def substitute_sum(p, assignment, new_nvars):
    return p.substitute_sum(assignment, new_nvars)


def reciprocal_transform(p, n=None):
    return p.reciprocal_transform(n)


def to_canonical_string(p):
    return p.to_canonical_string()


def parse_polynomial(text, nvars):
    return MPoly.parse(text, nvars)
