"""Reading and writing algebra files, system files and solution listings.

Algebra file::

    # dual numbers with eps' = 1
    p=2 dim=2 m=1
    basis 1 eps
    mul 0 0 = 1 0
    mul 0 1 = 0 1
    mul 1 1 = 0 0
    D1 0 = 0 0
    D1 1 = 1 0

Basis elements may be referred to by 0-based index or by a non-numeric
name. The unit is not written; it is recovered by solving ``u * e_j = e_j``.

System file::

    p=2 m=1 n=1 N=3
    D[1](y1) - y1
"""

import re
from itertools import combinations_with_replacement

from . import linalg
from .diffpoly import dp_parse
from .errors import ParseError
from .field import PrimeField
from .findim import FinDimDiffAlgebra

_ALG_HEADER = re.compile(r"\s*p\s*=\s*(\d+)\s+dim\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$")
_SYS_HEADER = re.compile(r"\s*p\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s+N\s*=\s*(\d+)\s*$")


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _column(line, token):
    return line.find(token) + 1 if token in line else 1


def _field(p, lineno, line):
    try:
        return PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, _column(line, str(p))) from None


def parse_algebra(text):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty algebra file", 1, 1)
    lineno, line = lines[0]
    header = _ALG_HEADER.match(line)
    if not header:
        raise ParseError("expected header 'p=<prime> dim=<d> m=<m>'", lineno, 1)
    p, d, m = (int(g) for g in header.groups())
    field = _field(p, lineno, line)
    if d < 1:
        raise ParseError("dim must be positive", lineno, _column(line, "dim"))

    if len(lines) < 2 or lines[1][1].split()[0] != "basis":
        at = lines[1][0] if len(lines) > 1 else lineno + 1
        raise ParseError("expected 'basis <name> ...' after the header", at, 1)
    lineno, line = lines[1]
    names = line.split()[1:]
    if len(names) != d:
        raise ParseError(f"basis lists {len(names)} names, expected {d}", lineno, 1)
    if len(set(names)) != d:
        raise ParseError("basis names must be distinct", lineno, 1)
    lookup = {name: i for i, name in enumerate(names)}

    def index(token, lineno, line):
        # digits always mean an index, so a basis element named "1" is index 0
        if token.isdigit():
            if int(token) < d:
                return int(token)
        elif token in lookup:
            return lookup[token]
        raise ParseError(f"unknown basis element {token!r}", lineno, _column(line, token))

    def vector(tokens, lineno, line):
        if len(tokens) != d or not all(re.fullmatch(r"-?\d+", t) for t in tokens):
            raise ParseError(f"expected {d} integer residues", lineno, _column(line, "=") + 1)
        return [int(t) % p for t in tokens]

    table = [[None] * d for _ in range(d)]
    derivs = [[None] * d for _ in range(m)]
    for lineno, line in lines[2:]:
        if "=" not in line:
            raise ParseError("expected '<lhs> = <vector>'", lineno, 1)
        lhs, rhs = line.split("=", 1)
        head = lhs.split()
        vec = vector(rhs.split(), lineno, line)
        if head and head[0] == "mul" and len(head) == 3:
            i, j = (index(t, lineno, line) for t in head[1:])
            if table[i][j] is not None:
                raise ParseError(f"duplicate product {head[1]}*{head[2]}", lineno, 1)
            table[i][j] = table[j][i] = vec
        elif head and re.fullmatch(r"D\d+", head[0]) and len(head) == 2:
            t = int(head[0][1:])
            if not 1 <= t <= m:
                raise ParseError(f"derivation index {t} outside 1..{m}", lineno, 2)
            i = index(head[1], lineno, line)
            if derivs[t - 1][i] is not None:
                raise ParseError(f"duplicate image {head[0]} {head[1]}", lineno, 1)
            derivs[t - 1][i] = vec
        else:
            raise ParseError(f"unrecognized line {lhs.strip()!r}", lineno, 1)

    end = lines[-1][0] + 1
    for i, j in combinations_with_replacement(range(d), 2):
        if table[i][j] is None:
            raise ParseError(f"missing product mul {names[i]} {names[j]}", end, 1)
    for t in range(m):
        for i in range(d):
            if derivs[t][i] is None:
                raise ParseError(f"missing derivation D{t + 1} {names[i]}", end, 1)

    # u * e_j = e_j for all j: d^2 equations in the coordinates of u
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            rows.append([table[i][j][k] for i in range(d)])
            rhs.append(int(j == k))
    unit = linalg.solve(rows, rhs, d, p)
    if unit is None:
        raise ParseError("multiplication table has no unit", end, 1)
    return FinDimDiffAlgebra(field, names, unit, table, derivs)


def format_algebra(A):
    out = [f"p={A.p} dim={A.dim} m={A.m}", "basis " + " ".join(A.basis_names)]
    for i, j in combinations_with_replacement(range(A.dim), 2):
        out.append(f"mul {i} {j} = " + " ".join(map(str, A.mul_table[i][j])))
    for t, D in enumerate(A.derivations, start=1):
        for i, v in enumerate(D):
            out.append(f"D{t} {i} = " + " ".join(map(str, v)))
    return "\n".join(out) + "\n"


def read_algebra(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


class SystemFile:
    def __init__(self, field, m, n, precision, polynomials):
        self.field = field
        self.m = m
        self.n = n
        self.precision = precision
        self.polynomials = polynomials


def parse_system(text):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty system file", 1, 1)
    lineno, line = lines[0]
    header = _SYS_HEADER.match(line)
    if not header:
        raise ParseError("expected header 'p=<prime> m=<m> n=<n> N=<precision>'", lineno, 1)
    p, m, n, N = (int(g) for g in header.groups())
    field = _field(p, lineno, line)
    polys = [dp_parse(line, field, n, m, line=lineno) for lineno, line in lines[1:]]
    return SystemFile(field, m, n, N, polys)


def read_system(path):
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_solutions(solutions):
    lines = [f"SOLUTIONS {len(solutions)}"]
    lines.extend(pt.format() for pt in solutions)
    return "\n".join(lines)
