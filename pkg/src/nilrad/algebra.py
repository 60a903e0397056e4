"""Lie algebra laws as sparse structure constants over exact rationals.

A law stores only brackets [e_i, e_j] with i < j; antisymmetry is structural.
Coefficients are Fractions for exact laws, floats for laws with radical
coefficients (used by explicit nilsoliton witnesses).  The two kinds never
mix inside one law.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from . import linalg

DEFAULT_TOL = 1e-9

Triple = tuple[int, int, int]


class LawError(ValueError):
    """Raised for malformed law text or invalid law operations."""


@dataclass(frozen=True)
class LieLaw:
    """Structure constants c_{ij}^k, keyed (i, j, k) with 1 <= i < j <= dim."""

    dim: int
    brackets: Mapping[Triple, Fraction | float]
    scalar_kind: str = "exact"  # "exact" | "float"
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        for (i, j, k), c in self.brackets.items():
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise LawError(f"bracket index out of range: [{i},{j}]={k}")
            if c == 0:
                raise LawError(f"zero coefficient stored at [{i},{j}]={k}")
        if self.scalar_kind not in ("exact", "float"):
            raise LawError(f"unknown scalar kind {self.scalar_kind!r}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieLaw)
            and self.dim == other.dim
            and dict(self.brackets) == dict(other.brackets)
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.brackets.items())))

    @property
    def is_exact(self) -> bool:
        return self.scalar_kind == "exact"

    def triples(self) -> Iterator[tuple[Triple, Fraction | float]]:
        return iter(sorted(self.brackets.items()))

    def bracket(self, i: int, j: int) -> list:
        """Coordinates of [e_i, e_j] (any i != j; antisymmetry applied)."""
        zero = Fraction(0) if self.is_exact else 0.0
        v = [zero] * self.dim
        if i == j:
            return v
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for (a, b, k), c in self.brackets.items():
            if a == i and b == j:
                v[k - 1] = sign * c
        return v

    def bracket_vectors(self, u: list, v: list) -> list:
        """[u, v] for coordinate vectors u, v (bilinear extension)."""
        zero = Fraction(0) if self.is_exact else 0.0
        out = [zero] * self.dim
        for (a, b, k), c in self.brackets.items():
            coef = u[a - 1] * v[b - 1] - u[b - 1] * v[a - 1]
            if coef:
                out[k - 1] += coef * c
        return out

    def ad(self, p: int) -> list[list]:
        """Matrix of ad(e_p) = [e_p, .] in the standard basis."""
        return linalg.transpose([self.bracket(p, j) for j in range(1, self.dim + 1)])

    def to_float(self, tol: float | None = None) -> "LieLaw":
        if not self.is_exact:
            return self
        return LieLaw(
            self.dim,
            {t: float(c) for t, c in self.brackets.items()},
            "float",
            tol if tol is not None else self.tol,
        )


@dataclass(frozen=True)
class SeriesSignature:
    derived_dims: tuple[int, ...]
    lcs_dims: tuple[int, ...]

    @property
    def nilpotent(self) -> bool:
        return self.lcs_dims[-1] == 0


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[\[\],;=+\-*/()]))"
)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            if self.text[self.pos :].strip():
                raise LawError(f"syntax error at position {self.pos}: {self.text[self.pos:self.pos+10]!r}")
            return None
        kind = m.lastgroup
        return kind, m.group(kind)

    def next(self) -> tuple[str, str] | None:
        tok = self.peek()
        if tok is not None:
            m = _TOKEN.match(self.text, self.pos)
            self.pos = m.end()
        return tok

    def expect(self, value: str) -> None:
        tok = self.next()
        if tok is None or tok[1] != value:
            got = "end of input" if tok is None else repr(tok[1])
            raise LawError(f"expected {value!r} at position {self.pos}, got {got}")


def _parse_atom(sc: _Scanner, params: Mapping[str, Fraction]):
    tok = sc.peek()
    if tok is None:
        raise LawError("unexpected end of coefficient")
    kind, val = tok
    if val == "-":
        sc.next()
        return -_parse_atom(sc, params)
    if val == "(":
        sc.next()
        v = _parse_expr(sc, params)
        sc.expect(")")
        return v
    if kind == "num":
        sc.next()
        return Fraction(int(val))
    if kind == "name":
        sc.next()
        if val == "sqrt":
            sc.expect("(")
            inner = _parse_expr(sc, params)
            sc.expect(")")
            if inner < 0:
                raise LawError("sqrt of negative value")
            return math.sqrt(inner)
        if val not in params:
            raise LawError(f"unknown parameter {val!r}")
        return params[val]
    raise LawError(f"syntax error in coefficient near {val!r}")


def _parse_factor(sc: _Scanner, params):
    v = _parse_atom(sc, params)
    while True:
        tok = sc.peek()
        if tok is None:
            return v
        val = tok[1]
        if val == "/":
            sc.next()
            v = v / _parse_atom(sc, params)
        elif val == "*" or tok[0] in ("num", "name") or val == "(":
            # implicit product, e.g. "7/1767 sqrt(1767)" or "2*sqrt(3)"
            if val == "*":
                sc.next()
            v = v * _parse_atom(sc, params)
        else:
            return v


def _parse_expr(sc: _Scanner, params):
    v = _parse_factor(sc, params)
    while True:
        tok = sc.peek()
        if tok is None or tok[1] not in "+-":
            return v
        sc.next()
        w = _parse_factor(sc, params)
        v = v + w if tok[1] == "+" else v - w


def _parse_coeff(sc: _Scanner, params):
    """Coefficient after '*': a signed factor chain; '+'/'-' only in parens."""
    return _parse_factor(sc, params)


def parse_law(text: str, params: Mapping[str, object] | None = None, tol: float = DEFAULT_TOL) -> LieLaw:
    """Parse the law text format.

    Grammar: ``dim <n>; [i,j]=image; ...`` where an image is a '+'-separated
    list of components ``k`` or ``k*<coeff>``.  Coefficients are rational
    expressions (``p/q``, parameter names, parenthesised arithmetic) with an
    optional ``sqrt(m)`` factor; any sqrt makes the law float-valued.
    """
    p: dict[str, Fraction] = {}
    for name, value in (params or {}).items():
        p[name] = value if isinstance(value, Fraction) else Fraction(value)
    sc = _Scanner(text)
    tok = sc.next()
    if tok is None or tok[1] != "dim":
        raise LawError("law text must start with 'dim <n>;'")
    tok = sc.next()
    if tok is None or tok[0] != "num":
        raise LawError("missing dimension after 'dim'")
    dim = int(tok[1])
    if sc.peek() is not None:
        sc.expect(";")
    brackets: dict[Triple, object] = {}
    is_float = False
    while True:
        tok = sc.peek()
        if tok is None:
            break
        if tok[1] == ";":
            sc.next()
            continue
        sc.expect("[")
        ti = sc.next()
        if ti is None or ti[0] != "num":
            raise LawError(f"expected index at position {sc.pos}")
        sc.expect(",")
        tj = sc.next()
        if tj is None or tj[0] != "num":
            raise LawError(f"expected index at position {sc.pos}")
        sc.expect("]")
        sc.expect("=")
        i, j = int(ti[1]), int(tj[1])
        if not (1 <= i < j <= dim):
            raise LawError(f"index out of range in bracket [{i},{j}] (need 1 <= i < j <= {dim})")
        while True:
            tk = sc.next()
            if tk is None or tk[0] != "num":
                raise LawError(f"expected image basis index at position {sc.pos}")
            k = int(tk[1])
            if not (1 <= k <= dim):
                raise LawError(f"image index {k} out of range in bracket [{i},{j}]")
            coeff: object = Fraction(1)
            tok = sc.peek()
            if tok is not None and tok[1] == "*":
                sc.next()
                coeff = _parse_coeff(sc, p)
            if isinstance(coeff, float):
                is_float = True
            if coeff == 0:
                raise LawError(f"zero coefficient in bracket [{i},{j}]={k}")
            if (i, j, k) in brackets:
                raise LawError(f"duplicate bracket component [{i},{j}]={k}")
            brackets[(i, j, k)] = coeff
            tok = sc.peek()
            if tok is not None and tok[1] == "+":
                sc.next()
                continue
            break
        tok = sc.peek()
        if tok is not None:
            sc.expect(";")
    if is_float:
        brackets = {t: float(c) for t, c in brackets.items()}
        return LieLaw(dim, brackets, "float", tol)
    return LieLaw(dim, brackets, "exact", tol)


def format_law(law: LieLaw) -> str:
    """Canonical text for a law; exact laws round-trip through parse_law."""
    parts = [f"dim {law.dim}"]
    by_pair: dict[tuple[int, int], list[tuple[int, object]]] = {}
    for (i, j, k), c in law.triples():
        by_pair.setdefault((i, j), []).append((k, c))
    for (i, j), comps in sorted(by_pair.items()):
        imgs = []
        for k, c in comps:
            if c == 1:
                imgs.append(f"{k}")
            elif law.is_exact:
                imgs.append(f"{k}*{c}")
            else:
                imgs.append(f"{k}*({c!r})")
        parts.append(f"[{i},{j}]={'+'.join(imgs)}")
    return "; ".join(parts)


# ---------------------------------------------------------------------------
# elementary invariants

def jacobi_violations(law: LieLaw) -> list[tuple[int, int, int, list]]:
    """All (i, j, k, residual) with a nonzero Jacobi sum; empty iff Lie."""
    n = law.dim
    out = []
    basis = [linalg.e_i(n, i) if law.is_exact else [float(x) for x in linalg.e_i(n, i)] for i in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            vij = law.bracket(i, j)
            for k in range(j + 1, n + 1):
                vjk = law.bracket(j, k)
                vik = law.bracket(i, k)
                r1 = law.bracket_vectors(basis[i - 1], vjk)
                r2 = law.bracket_vectors(basis[j - 1], vik)
                r3 = law.bracket_vectors(basis[k - 1], vij)
                res = [a - b + c for a, b, c in zip(r1, r2, r3)]
                if law.is_exact:
                    bad = any(x != 0 for x in res)
                else:
                    bad = any(abs(x) > law.tol for x in res)
                if bad:
                    out.append((i, j, k, res))
    return out


def _span_dim(vectors: list[list[Fraction]]) -> int:
    vs = [v for v in vectors if any(v)]
    return linalg.rank(vs) if vs else 0


def _subspace_bracket(law: LieLaw, a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    prods = [law.bracket_vectors(u, v) for u in a for v in b]
    prods = [p for p in prods if any(p)]
    if not prods:
        return []
    red, pivots = linalg.rref(prods)
    return red[: len(pivots)]


def series_signature(law: LieLaw) -> SeriesSignature:
    """Dimensions of the derived series and the descending central series."""
    if not law.is_exact:
        raise LawError("series_signature requires an exact law")
    n = law.dim
    full = [linalg.e_i(n, i) for i in range(n)]

    derived = [n]
    cur = full
    while derived[-1] != 0:
        nxt = _subspace_bracket(law, cur, cur)
        d = len(nxt)
        if d == derived[-1]:  # stabilised above zero: not solvable
            break
        derived.append(d)
        cur = nxt

    lcs = [n]
    cur = full
    while lcs[-1] != 0:
        nxt = _subspace_bracket(law, full, cur)
        d = len(nxt)
        if d == lcs[-1]:  # stabilised: not nilpotent
            break
        lcs.append(d)
        cur = nxt
    return SeriesSignature(tuple(derived), tuple(lcs))


def is_nilpotent(law: LieLaw) -> bool:
    return series_signature(law).nilpotent


# ---------------------------------------------------------------------------
# basis change action

def act(g: list[list], law: LieLaw) -> LieLaw:
    """(g . mu)(x, y) = g mu(g^{-1} x, g^{-1} y)."""
    n = law.dim
    exact = law.is_exact and all(isinstance(x, (int, Fraction)) for row in g for x in row)
    if exact:
        gm = [[Fraction(x) for x in row] for row in g]
        ginv = linalg.inv(gm)
        if ginv is None:
            raise LawError("singular matrix in act()")
    else:
        import numpy as np

        gm = np.array([[float(x) for x in row] for row in g], dtype=float)
        if abs(float(np.linalg.det(gm))) < 1e-14:
            raise LawError("singular matrix in act()")
        ginv = np.linalg.inv(gm)
        lawf = law.to_float()
    cols = [[ginv[a][b] for a in range(n)] for b in range(n)]  # ginv columns
    brackets: dict[Triple, object] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if exact:
                w = law.bracket_vectors(cols[i - 1], cols[j - 1])
                img = linalg.matvec(gm, w)
            else:
                w = lawf.bracket_vectors(cols[i - 1], cols[j - 1])
                img = [sum(gm[a][b] * w[b] for b in range(n)) for a in range(n)]
            for k in range(1, n + 1):
                c = img[k - 1]
                if (exact and c != 0) or (not exact and abs(c) > law.tol):
                    brackets[(i, j, k)] = c
    return LieLaw(n, brackets, "exact" if exact else "float", law.tol)


def scale(law: LieLaw, s) -> LieLaw:
    """s . mu: every structure constant multiplied by s."""
    if s == 0:
        return LieLaw(law.dim, {}, law.scalar_kind, law.tol)
    factor = Fraction(s) if law.is_exact else float(s)
    return LieLaw(law.dim, {t: c * factor for t, c in law.brackets.items()}, law.scalar_kind, law.tol)
