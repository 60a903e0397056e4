"""Nice-basis detection, weight Gram matrix, and the exact positivity test.

For a law written in a nice basis the Einstein-nilradical question reduces
to an exact feasibility problem: does U x = [1] admit a strictly positive
solution?  U is the Gram matrix of the weight vectors f_k - f_i - f_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .algebra import LawError, LieLaw


@dataclass(frozen=True)
class WeightSystem:
    """Stored bracket triples in canonical (lexicographic) order."""

    dim: int
    entries: tuple[tuple[int, int, int], ...]

    def alphas(self) -> list[list[int]]:
        out = []
        for (i, j, k) in self.entries:
            a = [0] * self.dim
            a[i - 1] -= 1
            a[j - 1] -= 1
            a[k - 1] += 1
            out.append(a)
        return out


@dataclass(frozen=True)
class NiceCheck:
    nice: bool
    weights: WeightSystem | None = None
    reason: str | None = None


@dataclass(frozen=True)
class PositiveSolutionResult:
    status: str  # "positive" | "no_positive_solution" | "inconsistent"
    x: tuple[Fraction, ...] | None = None


def is_nice(law: LieLaw) -> NiceCheck:
    """Nice-basis conditions.

    (N1) every bracket image is a single basis vector; (N2) two different
    bracket pairs hitting the same image vector share no index.
    """
    if not law.is_exact:
        raise LawError("is_nice requires an exact law")
    by_pair: dict[tuple[int, int], list[int]] = {}
    by_image: dict[int, list[tuple[int, int]]] = {}
    for (i, j, k) in law.brackets:
        by_pair.setdefault((i, j), []).append(k)
        by_image.setdefault(k, []).append((i, j))
    for (i, j), ks in by_pair.items():
        if len(ks) > 1:
            return NiceCheck(False, reason=f"N1 fails at ({i},{j}): image has components {sorted(ks)}")
    for k, pairs in by_image.items():
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                shared = set(pairs[a]) & set(pairs[b])
                if shared:
                    return NiceCheck(
                        False,
                        reason=(
                            f"N2 fails at image {k}: pairs {pairs[a]} and {pairs[b]} share index {min(shared)}"
                        ),
                    )
    entries = tuple(sorted(law.brackets))
    return NiceCheck(True, weights=WeightSystem(law.dim, entries))


@dataclass(frozen=True)
class GramU:
    u: tuple[tuple[int, ...], ...]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.u]

    @property
    def size(self) -> int:
        return len(self.u)


def gram_matrix(ws: WeightSystem) -> GramU:
    alphas = ws.alphas()
    u = tuple(
        tuple(sum(x * y for x, y in zip(a, b)) for b in alphas) for a in alphas
    )
    return GramU(u)


def positive_solution(u: GramU | list[list[int]]) -> PositiveSolutionResult:
    """Exact decision of {x : Ux = [1], x > 0} != {} via rational LP."""
    rows = u.rows() if isinstance(u, GramU) else [list(r) for r in u]
    m = len(rows)
    frac_rows = [[Fraction(v) for v in row] for row in rows]
    rhs = [Fraction(1)] * m
    status, t, x = lp.max_min_component(frac_rows, rhs)
    if status == "infeasible":
        return PositiveSolutionResult("inconsistent")
    if t > 0:
        # re-validate the witness independently of the simplex bookkeeping
        assert all(sum(r * xi for r, xi in zip(row, x)) == 1 for row in frac_rows)
        assert min(x) > 0
        return PositiveSolutionResult("positive", tuple(x))
    return PositiveSolutionResult("no_positive_solution")


def soliton_norm(x) -> Fraction:
    """1 / sum(x) for a positive solution of Ux = [1]."""
    total = sum(Fraction(v) for v in x)
    if total <= 0:
        raise ValueError("soliton_norm needs a positive solution vector")
    return Fraction(1) / total


def positive_solution_oracle(u: list[list[int]]) -> bool:
    """Brute-force reference decision for small U (vertex/ray enumeration).

    P = {x >= 0 : Ux = 1} is pointed, so it is nonempty iff it has a vertex,
    and by convexity a strictly positive point exists iff every coordinate
    is positive somewhere on P (vertices) or can be pushed up along a
    recession ray.  Exponential in the number of weights; use for m <= 6.
    """
    from . import linalg

    m = len(u)
    frac = [[Fraction(v) for v in row] for row in u]
    one = [Fraction(1)] * m
    zero = [Fraction(0)] * m

    def subset_rows(zset):
        rows = [row[:] for row in frac]
        for a in zset:
            r = [Fraction(0)] * m
            r[a] = Fraction(1)
            rows.append(r)
        return rows

    vertices = []
    rays = []
    for mask in range(1 << m):
        zset = [a for a in range(m) if mask >> a & 1]
        rows = subset_rows(zset)
        b = one + zero[: len(zset)]
        aug = [row + [bv] for row, bv in zip(rows, b)]
        red, pivots = linalg.rref(aug)
        if m not in pivots and len(pivots) == m:
            x = [Fraction(0)] * m
            for r, cpos in enumerate(pivots):
                x[cpos] = red[r][m]
            if all(v >= 0 for v in x):
                vertices.append(x)
        # extreme rays of the recession cone {d >= 0 : Ud = 0}
        ns = linalg.nullspace(rows, ncols=m)
        if len(ns) == 1:
            d = ns[0]
            if all(v >= 0 for v in d):
                rays.append(d)
            elif all(v <= 0 for v in d):
                rays.append([-v for v in d])

    if not vertices:
        return False
    for a in range(m):
        if any(v[a] > 0 for v in vertices):
            continue
        if any(r[a] > 0 for r in rays):
            continue
        return False
    return True
