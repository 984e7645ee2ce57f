"""Command line front end.

Exit codes: 0 on success, 1 on input errors, 2 when a verified identity fails.
Indices on the command line and in files are 1-based.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import core, matroid as mx, simplicial as sx, stability as st
from .errors import IdentityFailure, SizeGuardError
from .linalg import parse_matrix_text


class InputError(Exception):
    pass


class Output:
    def __init__(self, as_json):
        self.as_json = as_json

    def emit(self, text=None, **record):
        if self.as_json:
            print(json.dumps(record, sort_keys=True, default=str))
        else:
            print(text if text is not None else " ".join(f"{k}={v}" for k, v in record.items()))


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_input(path):
    """A matrix file ("p n"), a complex file ("complex d"), or a raw "matrix p n" file."""
    text = _read(path)
    first = next((ln.split() for ln in text.splitlines()
                  if ln.strip() and not ln.lstrip().startswith("#")), None)
    if first is None:
        raise InputError(f"{path} is empty")
    if first[0] in ("complex", "matrix"):
        return sx.parse_complex_text(text)
    return parse_matrix_text(text)


def _matrix(obj):
    return sx.top_boundary(obj)


def parse_vector(text):
    parts = text.replace(",", " ").split()
    if not parts:
        raise InputError("empty vector")
    try:
        return [Fraction(t) for t in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational vector {text!r}") from exc


def read_params(path):
    """One rational vector per line; blank lines and '#' comments ignored."""
    out = []
    for ln in _read(path).splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            out.append(parse_vector(ln))
    return out


def read_edges(path):
    edges = []
    for ln in _read(path).splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"edge line must hold two vertices: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if not edges:
        raise InputError(f"{path} has no edges")
    return edges


def _indices(text, n):
    if text is None or text.strip() in ("", "-"):
        return ()
    idx = [int(t) - 1 for t in text.replace(",", " ").split()]
    if any(i < 0 or i >= n for i in idx):
        raise InputError(f"indices {text!r} leave 1..{n}")
    return tuple(idx)


def _check_k(k):
    if k < 0 or k % 2:
        raise InputError(f"order k must be even and nonnegative, got {k}")
    return k


# ---------------------------------------------------------------- subcommands

def cmd_kirchhoff(args, out):
    obj = load_input(args.file)
    k = _check_k(args.k)
    if isinstance(obj, (sx.SimplicialComplex, sx.GeneralizedComplex)):
        p = sx.simplicial_kirchhoff(obj, k)
    else:
        p = core.kirchhoff(obj, k)
    out.emit(p.to_canonical_string(), kirchhoff=p.to_canonical_string(), k=k)


def cmd_symanzik(args, out):
    obj = load_input(args.file)
    k = _check_k(args.k)
    U = _matrix(obj)
    if args.factorize:
        if args.params:
            raise InputError("--factorize does not take parameters")
        dec = sx.facet_class_factorization(obj, k, seed=args.seed)
        for line in dec.describe():
            out.emit(line, line=line)
        sym = dec.composed()
        out.emit(f"Sym = {sym.to_canonical_string()}", symanzik=sym.to_canonical_string(), k=k)
        return
    if args.params:
        pf = core.ParamFamily(U, read_params(args.params))
        p = core.symanzik_with_params(pf, k)
        if args.orientation:
            q = core.symanzik_orientation(pf, k)
            if q != p:
                raise IdentityFailure("orientation formula disagrees with the definition")
    else:
        p = core.symanzik(U, k)
    out.emit(p.to_canonical_string(), symanzik=p.to_canonical_string(), k=k)


def cmd_duality(args, out):
    U = _matrix(load_input(args.file))
    cert = core.duality_certificate(U, _check_k(args.k), check=False)
    out.emit(cert.summary(), holds=cert.holds, a=cert.a, b=cert.b, k=cert.k)
    if not cert.holds:
        raise IdentityFailure("duality certificate failed")


def cmd_forests(args, out):
    obj = load_input(args.file)
    forests = sx.enumerate_forests(obj, args.kappa)
    for g in forests:
        s = " ".join(str(i + 1) for i in g)
        out.emit(s, forest=[i + 1 for i in g])
    out.emit(f"count {len(forests)}", count=len(forests), kappa=args.kappa)


def cmd_torsion(args, out):
    obj = load_input(args.file)
    if isinstance(obj, sx.SimplicialComplex):
        t = sx.torsion_order(obj, args.dim)
        dim = obj.dim - 1 if args.dim is None else args.dim
    else:
        if args.dim is not None:
            raise InputError("--dim needs a complex file")
        t = sx.torsion_order(obj)
        dim = None
    out.emit(f"torsion {t}", torsion=t, dim=dim)


def cmd_factorize(args, out):
    args.factorize, args.params = True, None
    cmd_symanzik(args, out)


def cmd_subdivide(args, out):
    obj = load_input(args.file)
    if not isinstance(obj, sx.SimplicialComplex):
        raise InputError("subdivide-check needs a complex file")
    ok, after, subst = sx.subdivision_check(obj, args.facet - 1, _check_k(args.k))
    out.emit(f"{'OK' if ok else 'FAIL'} facet={args.facet} k={args.k}",
             holds=ok, facet=args.facet, k=args.k, after=after.to_canonical_string())
    if not ok:
        raise IdentityFailure("subdivision changed the substituted Symanzik polynomial")


def cmd_height(args, out):
    U = _matrix(load_input(args.file))
    b = parse_vector(args.b)
    b2 = parse_vector(args.b2) if args.b2 else b
    y = parse_vector(args.y) if args.y else [1] * U.cols
    value = core.height_pairing(U, b, b2, y)
    if args.b2 is None:
        pf = core.ParamFamily(U, [b])
        if core.rat_sym(pf, 2, y) != value:
            raise IdentityFailure("height pairing differs from the Symanzik fraction")
    out.emit(str(value), height=str(value))


def _matroid(args):
    kind = args.source[0]
    rest = args.source[1:]
    if kind == "linear" and len(rest) == 1:
        return mx.MatroidView.linear(_matrix(load_input(rest[0])))
    if kind == "uniform" and len(rest) == 2:
        return mx.MatroidView.uniform(int(rest[0]), int(rest[1]))
    if kind == "graphic" and len(rest) == 1:
        return mx.MatroidView.graphic(read_edges(rest[0]))
    raise InputError("matroid must be 'linear FILE', 'uniform R N' or 'graphic FILE'")


def _graph_arg(text):
    if text in ("full", "rr1"):
        return text
    try:
        p, q = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"--graph must be full, rr1 or P,Q; got {text!r}") from exc
    return (p, q)


def cmd_exchange(args, out):
    M = _matroid(args)
    if args.action == "classify":
        res = mx.classify_components(M, _graph_arg(args.graph), bound=args.bound, verify=False)
        for line in res.summary_lines():
            out.emit(line, line=line)
        if not res.consistent:
            raise IdentityFailure("components and invariant classes differ")
        return
    v = mx.ExchangePair.make(M, _indices(args.I, M.n), _indices(args.J, M.n))
    m = mx.mcp(M, v)
    if M.n <= 10 and m != mx.mcp_bruteforce(M, v):
        raise IdentityFailure("fixed-point MCP differs from the exhaustive one")
    out.emit(f"mcp {m}", mcp=str(m), pair=str(v))


def cmd_stability(args, out):
    if args.sharpness:
        inst, z = st.sharpness_example()
        num, den = st.symbolic_difference(inst, z)
        out.emit(f"difference {num.to_canonical_string()} / {den.to_canonical_string()}",
                 numerator=num.to_canonical_string(), denominator=den.to_canonical_string())
    else:
        if not args.file or not args.params:
            raise InputError("stability needs FILE and --params (or --sharpness)")
        U = _matrix(load_input(args.file))
        k = _check_k(args.k)
        if k == 0:
            raise InputError("stability needs k >= 2")
        maker = st.dense_perturbation if args.perturbation == "dense" else st.diagonal_perturbation
        inst = st.StabilityInstance.from_parameters(U, read_params(args.params), k, maker(k, U.cols))
    try:
        scales = [float(t) if "." in t else int(t) for t in args.scales.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --scales {args.scales!r}") from exc
    run = st.run_corollary_experiment if args.corollary or inst.l > 1 else st.run_stability_experiment
    report = run(inst, scales, samples=args.samples, seed=args.seed)
    if out.as_json:
        for c, s in zip(report.scales, report.sups):
            out.emit(scale=c, sup_abs_D=s)
        out.emit(plateau=report.plateau, empirical=True, normalized=report.normalized)
    else:
        print(report.table())
        for line in report.lines():
            print(line)


# ---------------------------------------------------------------- parser

def build_parser():
    ap = argparse.ArgumentParser(prog="symanzik-kit",
                                 description="Kirchhoff and Symanzik polynomials of vector families and complexes.")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="line-oriented JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_k(p, default=2):
        p.add_argument("-k", type=int, default=default, help="even order")

    p = sub.add_parser("kirchhoff", help="Kirchhoff polynomial")
    with_k(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_kirchhoff)

    p = sub.add_parser("symanzik", help="Symanzik polynomial")
    with_k(p)
    p.add_argument("file")
    p.add_argument("--params", help="file with one parameter vector per line")
    p.add_argument("--factorize", action="store_true")
    p.add_argument("--orientation", action="store_true", help="also check the orientation formula")
    p.set_defaults(func=cmd_symanzik)

    p = sub.add_parser("duality", help="duality certificate")
    with_k(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("forests", help="list kappa-forests")
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("file")
    p.set_defaults(func=cmd_forests)

    p = sub.add_parser("homology-torsion", help="order of the torsion of homology")
    p.add_argument("--dim", type=int)
    p.add_argument("file")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("factorize", help="facet-class factorization")
    with_k(p)
    p.add_argument("file")
    p.set_defaults(func=cmd_factorize, orientation=False)

    p = sub.add_parser("subdivide-check", help="invariance under stellar subdivision")
    with_k(p)
    p.add_argument("--facet", type=int, required=True, help="1-based facet index")
    p.add_argument("file")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("height-pairing", help="height pairing of two boundaries")
    p.add_argument("file")
    p.add_argument("--b", required=True)
    p.add_argument("--b2")
    p.add_argument("--y", help="weights, default all ones")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("exchange", help="exchange graph of a matroid")
    p.add_argument("action", choices=["classify", "mcp"])
    p.add_argument("source", nargs="+", help="linear FILE | uniform R N | graphic FILE")
    p.add_argument("--graph", default="full", help="full, rr1 or P,Q")
    p.add_argument("--bound", type=int, default=10, help="largest ground set to classify")
    p.add_argument("--I", help="1-based elements of I")
    p.add_argument("--J", help="1-based elements of J")
    p.set_defaults(func=cmd_exchange)

    p = sub.add_parser("stability", help="empirical variation experiment")
    p.add_argument("file", nargs="?")
    with_k(p)
    p.add_argument("--params", help="parameter vectors, one per line")
    p.add_argument("--scales", default="10,100,1000,10000")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--perturbation", choices=["diagonal", "dense"], default="diagonal")
    p.add_argument("--corollary", action="store_true")
    p.add_argument("--sharpness", action="store_true", help="run the built-in sharpness instance")
    p.set_defaults(func=cmd_stability)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    out = Output(args.json)
    try:
        args.func(args, out)
    except (IdentityFailure, mx.ClassificationError) as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, IndexError, SizeGuardError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
