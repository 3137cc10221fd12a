"""Command-line entry point.

Exit codes: 0 all checks passed, 1 a check failed, 2 input could not be
parsed (or was unusable), 3 an enumeration bound was exceeded.
"""

import argparse
import json
import re
import sys
from dataclasses import fields

from . import bounds
from .errors import (CharPError, CrossCheckFailed, EnumerationTooLarge, NotDifferential,
                     ParseError, PrecisionExhausted, ShapeMismatch)
from .field import PrimeField
from .findim import (classify_ideal, enumerate_differential_ideals, enumerate_ideals,
                     quasifield_info, validate)
from .geometry import solve_system
from .hurwitz import TruncatedHurwitzSeries
from .report import Report
from .spectra import (build_max, build_qmax, build_qspec, build_spec, check_homeomorphism,
                      good_open_decomposition, is_dense_good_open, lattice_report,
                      verify_topology_axioms)
from .taylor import RingMapToField, check_universal, ring_maps_to_field, taylor_hom
from .textio import read_algebra, read_system

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND = 0, 1, 2, 3

ALGEBRA_CHECKS = ("validate", "ideals", "spectra", "topology", "homeo", "simple")
EXTRA_CHECKS = ("goodopen",)


def emit(report, fmt, out):
    if fmt == "json":
        out.write(report.to_json() + "\n")
    elif report.lines:
        out.write(report.format_lines() + "\n")


def _flag(v):
    return "-" if v is None else str(v).lower()


# algebra ---------------------------------------------------------------

def _ideal_lines(A, bound, report):
    for label, family in (("IDEALS", enumerate_ideals(A, bound)),
                          ("DIFF_IDEALS", enumerate_differential_ideals(A, bound))):
        report.note(label, len(family))
        for i, I in enumerate(family):
            c = classify_ideal(A, I, bound)
            flags = ",".join(f"{f.name[3:]}={_flag(getattr(c, f.name))}" for f in fields(c)
                             if f.name not in ("is_ideal",))
            report.note(label[:-1], i, f"dim={I.dim}", f"basis={I.format()}", flags)


def _simple_lines(A, bound, report):
    info = quasifield_info(A, bound)
    report.note("SIMPLE", _flag(info.simple))
    if info.simple:
        kernel = info.frobenius_kernel
        report.note("FROBENIUS_KERNEL", kernel.format() if kernel is not None else "not_a_subspace")
        report.check("QUASIFIELD", "maximal_is_frobenius_kernel", info.law_holds,
                     ";".join(M.format() for M in info.maximal_ideals))


def _goodopen_lines(A, bound, report):
    L = build_qspec(A, bound)
    witness = None
    for f in A.elements(bound):
        try:
            good_open_decomposition(L, f)
            is_dense_good_open(A, f, L, bound)
        except CrossCheckFailed:
            witness = A.format_element(f)
            break
    report.check("GOODOPEN", "decomposition_and_density", witness is None, witness)


def run_algebra(A, checks, bound=None):
    report = Report("algebra")
    A.check_enumerable(bound)
    # every other check presupposes the axioms
    axioms = validate(A)
    valid = axioms.ok
    if "validate" in checks:
        report.extend(axioms)
    for check in checks:
        if check == "validate":
            continue
        if not valid:
            report.check("SKIP", check, False, "not_a_differential_algebra")
            continue
        try:
            if check == "ideals":
                _ideal_lines(A, bound, report)
            elif check == "spectra":
                for build in (build_spec, build_max, build_qspec, build_qmax):
                    lattice_report(build(A, bound), report)
            elif check == "topology":
                for build in (build_spec, build_qspec):
                    L = build(A, bound)
                    report.note("LATTICE", L.kind)
                    verify_topology_axioms(L, report)
            elif check == "homeo":
                check_homeomorphism(A, bound, report)
            elif check == "simple":
                _simple_lines(A, bound, report)
            elif check == "goodopen":
                _goodopen_lines(A, bound, report)
        except (CrossCheckFailed, NotDifferential) as exc:
            report.check("CROSSCHECK", check, False, str(exc))
    return report


def cmd_algebra(args, out):
    checks = _parse_checks(args.checks)
    A = read_algebra(args.path)
    report = run_algebra(A, checks, args.bound)
    emit(report, args.format, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_checks(text):
    checks = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in checks if c not in ALGEBRA_CHECKS + EXTRA_CHECKS]
    if unknown:
        raise ParseError(f"unknown check {unknown[0]!r}", 1, 1)
    return checks


# solve -----------------------------------------------------------------

def run_solve(system, precision=None, bound=None):
    N = system.precision if precision is None else precision
    S = solve_system(system.polynomials, N, bound=bound, field=system.field,
                     n=system.n, m=system.m)
    report = Report("solve")
    report.note("SOLUTIONS", len(S))
    for pt in S:
        tokens = pt.format().split()
        report.note(tokens[0], *tokens[1:])
    return report


def cmd_solve(args, out):
    system = read_system(args.path)
    report = run_solve(system, args.precision, args.bound)
    emit(report, args.format, out)
    return EXIT_OK


# taylor ----------------------------------------------------------------

def run_taylor(A, N, phi_values=None):
    report = Report("taylor")
    if phi_values is not None:
        maps = [RingMapToField(A, phi_values)]
    else:
        maps = ring_maps_to_field(A)
        report.note("RING_MAPS", len(maps))
    for k, phi in enumerate(maps):
        report.note("PHI", k, "values=(" + ",".join(map(str, phi.values)) + ")")
        table = taylor_hom(A, phi, N)
        for name, e in zip(A.basis_names, A.basis()):
            report.note(name, "->", *table(e).format_terms().split())
        check_universal(A, phi, N, report)
    return report


def cmd_taylor(args, out):
    A = read_algebra(args.path)
    phi = None
    if args.phi is not None:
        try:
            phi = [int(v) for v in args.phi.split(",")]
        except ValueError:
            raise ParseError(f"--phi expects comma-separated residues, got {args.phi!r}", 1, 1)
    report = run_taylor(A, args.precision, phi)
    emit(report, args.format, out)
    return EXIT_OK if report.ok else EXIT_FAIL


# hw calculator ---------------------------------------------------------

_HW_HEADER = re.compile(r"\s*p\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s+N\s*=\s*(\d+)")
_LITERAL_TERM = re.compile(r"(-?\d+)?\*?(?:\[(\d+(?:,\d+)*)\])?$")
ARITY = {"add": 2, "sub": 2, "mul": 2, "pow": 2, "pi": 1, "neg": 1}


def _hw_tokens(text, offset):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch == "(":
            depth = 0
            while i < len(text):
                depth += {"(": 1, ")": -1}.get(text[i], 0)
                i += 1
                if depth == 0:
                    break
            if depth:
                raise ParseError("unbalanced parenthesis", 1, offset + start + 1)
        else:
            while i < len(text) and not text[i].isspace():
                i += 1
        tokens.append((text[start:i], offset + start + 1))
    return tokens


def _hw_literal(token, col, field, m, N):
    body = token[1:-1] if token.startswith("(") else token
    result = TruncatedHurwitzSeries.zero(field, m, N)
    for part in re.split(r"\+", body.replace(" ", "")):
        match = _LITERAL_TERM.match(part)
        if not part or not match or (match.group(1) is None and match.group(2) is None):
            raise ParseError(f"bad series literal {token!r}", 1, col)
        c = int(match.group(1)) if match.group(1) is not None else 1
        if match.group(2) is None:
            k = (0,) * m
        else:
            k = tuple(int(x) for x in match.group(2).split(","))
        if len(k) != m or sum(k) > N:
            raise ParseError(f"index {list(k)} not valid for m={m}, N={N}", 1, col)
        result = result + TruncatedHurwitzSeries.delta(field, m, N, k, c)
    return result


def evaluate_hw(text):
    """Evaluate ``p=.. m=.. N=.. <prefix expression>``; returns a series."""
    header = _HW_HEADER.match(text)
    if not header:
        raise ParseError("expected 'p=<prime> m=<m> N=<precision>' before the expression", 1, 1)
    p, m, N = (int(g) for g in header.groups())
    try:
        field = PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), 1, header.start(1) + 1) from None
    tokens = _hw_tokens(text[header.end():], header.end())
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("expression ended early", 1, len(text) + 1)
        tok, col = tokens[pos]
        pos += 1
        d = re.fullmatch(r"d(\d*)", tok)
        if d:
            t = int(d.group(1) or 1)
            if not 1 <= t <= m:
                raise ParseError(f"derivation index {t} outside 1..{m}", 1, col)
            return expr().derive(t)
        if tok == "pow":
            base = expr()
            if pos >= len(tokens) or not tokens[pos][0].isdigit():
                raise ParseError("pow expects a natural exponent", 1, col)
            k = int(tokens[pos][0])
            pos += 1
            return base ** k
        if tok in ARITY:
            args = [expr() for _ in range(ARITY[tok])]
            if tok == "add":
                return args[0] + args[1]
            if tok == "sub":
                return args[0] - args[1]
            if tok == "mul":
                return args[0] * args[1]
            if tok == "neg":
                return -args[0]
            return TruncatedHurwitzSeries.constant(field, m, args[0].precision, args[0].pi())
        return _hw_literal(tok, col, field, m, N)

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"unexpected token {tokens[pos][0]!r}", 1, tokens[pos][1])
    return result


def cmd_hw(args, out):
    result = evaluate_hw(" ".join(args.expr))
    if args.format == "json":
        out.write(json.dumps([[result.format()]]) + "\n")
    else:
        out.write((result.format() if args.full else result.format_terms()) + "\n")
    return EXIT_OK


# entry point -----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="charp-diffalg",
        description="Finite checks in characteristic-p differential algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("lines", "json"), default="lines")
        p.add_argument("--bound", type=int, default=None,
                       help=f"enumeration bound (default from ${bounds.ENV_VAR} or built-in)")

    a = sub.add_parser("algebra", help="verify a finite differential algebra file")
    a.add_argument("path")
    a.add_argument("--checks", default=",".join(ALGEBRA_CHECKS),
                   help="comma-separated subset of " + ",".join(ALGEBRA_CHECKS + EXTRA_CHECKS))
    common(a)
    a.set_defaults(func=cmd_algebra)

    s = sub.add_parser("solve", help="enumerate truncated zeros of a system file")
    s.add_argument("path")
    s.add_argument("--precision", type=int, default=None, help="override N from the header")
    common(s)
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("taylor", help="Taylor homomorphism table and universal-property check")
    t.add_argument("path")
    t.add_argument("--precision", type=int, default=4)
    t.add_argument("--phi", default=None, help="images of the basis, e.g. 1,0")
    common(t)
    t.set_defaults(func=cmd_taylor)

    h = sub.add_parser("hw", help="Hurwitz series calculator, prefix notation")
    h.add_argument("expr", nargs=argparse.REMAINDER,
                   help="p=<p> m=<m> N=<N> followed by e.g. mul (1+[1]) [1]")
    h.add_argument("--full", action="store_true", help="print the header as well")
    h.add_argument("--format", choices=("lines", "json"), default="lines")
    h.set_defaults(func=cmd_hw)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except EnumerationTooLarge as exc:
        err.write(f"bound exceeded: {exc}\n")
        return EXIT_BOUND
    except (PrecisionExhausted, ShapeMismatch, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CharPError as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
