"""Derivation algebra, diagonal torus, and the pre-Einstein derivation.

Everything is exact: the derivation identity is a linear system over Q in
the n^2 matrix entries, the diagonal torus is an integer kernel lattice,
and the pre-Einstein derivation solves a rational Gram system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import LawError, LieLaw


@dataclass(frozen=True)
class DerivationSpace:
    dim: int
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]  # each an n x n matrix
    diag_basis: tuple[tuple[int, ...], ...]  # integer diagonal generators (HNF rows)

    def __len__(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class PreEinsteinDerivation:
    phi: tuple[Fraction, ...]

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.phi)

    def first_nonpositive(self) -> int | None:
        for idx, x in enumerate(self.phi):
            if x <= 0:
                return idx
        return None


def _derivation_rows(law: LieLaw) -> list[dict[int, Fraction]]:
    """Sparse equations for D[e_i,e_j] = [De_i,e_j] + [e_i,De_j].

    Unknowns are D_{kl} at column index (k-1)*n + (l-1); one equation per
    pair i<j and output coordinate k.
    """
    n = law.dim
    mu = {}
    for (a, b, k), c in law.brackets.items():
        mu.setdefault((a, b), {})[k] = c

    def mu_comp(a, b, k):
        if a == b:
            return Fraction(0)
        if a < b:
            return mu.get((a, b), {}).get(k, Fraction(0))
        return -mu.get((b, a), {}).get(k, Fraction(0))

    rows = []
    col = lambda k, l: (k - 1) * n + (l - 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            img = mu.get((i, j), {})
            for k in range(1, n + 1):
                row: dict[int, Fraction] = {}

                def add(c_idx, val):
                    if val:
                        row[c_idx] = row.get(c_idx, Fraction(0)) + val
                        if not row[c_idx]:
                            del row[c_idx]

                for l, c in img.items():
                    add(col(k, l), c)
                for l in range(1, n + 1):
                    add(col(l, i), -mu_comp(l, j, k))
                    add(col(l, j), -mu_comp(i, l, k))
                if row:
                    rows.append(row)
    return rows


def derivation_space(law: LieLaw) -> DerivationSpace:
    """Exact basis of Der(mu) plus integer generators of its diagonal part."""
    if not law.is_exact:
        raise LawError("derivation_space requires an exact law")
    n = law.dim
    vecs = linalg.sparse_nullspace(_derivation_rows(law), n * n)
    basis = tuple(
        tuple(tuple(v[k * n + l] for l in range(n)) for k in range(n)) for v in vecs
    )
    diag = tuple(tuple(d) for d in _diagonal_generators(law))
    return DerivationSpace(n, basis, diag)


def dim_der(law: LieLaw) -> int:
    return len(derivation_space(law).basis)


def _weight_rows(law: LieLaw) -> list[list[int]]:
    """One row f_i + f_j - f_k per stored structure-constant triple."""
    rows = []
    seen = set()
    for (i, j, k) in law.brackets:
        if (i, j, k) in seen:
            continue
        seen.add((i, j, k))
        row = [0] * law.dim
        row[i - 1] += 1
        row[j - 1] += 1
        row[k - 1] -= 1
        rows.append(row)
    return rows


def _diagonal_generators(law: LieLaw) -> list[list[int]]:
    rows = _weight_rows(law)
    if not rows:
        return [list(r) for r in linalg.hnf([[int(i == j) for j in range(law.dim)] for i in range(law.dim)])]
    return linalg.kernel_lattice(rows)


def diagonal_rank(law: LieLaw) -> tuple[int, list[list[int]]]:
    """Rank of the diagonal torus and an HNF-canonical integer basis of it."""
    if not law.is_exact:
        raise LawError("diagonal_rank requires an exact law")
    gens = _diagonal_generators(law)
    return len(gens), gens


class RankZeroError(LawError):
    """No pre-Einstein derivation: the law has no nonzero diagonal derivation."""


class TorusNotMaximalError(LawError):
    """Full-basis verification of the pre-Einstein derivation failed."""


def pre_einstein(law: LieLaw, space: DerivationSpace | None = None) -> PreEinsteinDerivation:
    """The diagonal derivation phi with tr(phi psi) = tr(psi) for all psi in Der.

    Solved inside the diagonal torus, then verified against the full
    derivation basis; failure of that check means the diagonal torus was
    not maximal and is reported rather than patched.
    """
    if space is None:
        space = derivation_space(law)
    gens = space.diag_basis
    if not gens:
        raise RankZeroError("rank-zero law has no pre-Einstein derivation")
    r = len(gens)
    gram = [[Fraction(sum(a * b for a, b in zip(gens[p], gens[q]))) for q in range(r)] for p in range(r)]
    rhs = [Fraction(sum(gens[p])) for p in range(r)]
    coeffs = linalg.solve(gram, rhs)
    assert coeffs is not None  # gram of independent generators is definite
    phi = tuple(
        sum((coeffs[p] * gens[p][i] for p in range(r)), Fraction(0))
        for i in range(law.dim)
    )
    n = law.dim
    for psi in space.basis:
        tr_phi_psi = sum(phi[i] * psi[i][i] for i in range(n))
        tr_psi = sum(psi[i][i] for i in range(n))
        if tr_phi_psi != tr_psi:
            raise TorusNotMaximalError(
                "tr(phi.psi) != tr(psi) for a derivation psi; diagonal torus not maximal"
            )
    return PreEinsteinDerivation(phi)


def positivity_gate(phi: PreEinsteinDerivation) -> tuple[bool, int | None]:
    """(passed, witness index); fails at the first eigenvalue <= 0."""
    idx = phi.first_nonpositive()
    return idx is None, idx


def is_derivation(law: LieLaw, d: list[list], tol: float | None = None) -> bool:
    """Check D[e_i,e_j] = [De_i,e_j] + [e_i,De_j] on all basis pairs."""
    n = law.dim
    exact = law.is_exact
    tol = law.tol if tol is None else tol
    cols = [[d[a][b] for a in range(n)] for b in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = law.bracket(i, j)
            lhs = [sum(d[k][l] * v[l] for l in range(n)) for k in range(n)]
            rhs1 = law.bracket_vectors(cols[i - 1], [Fraction(int(a == j - 1)) for a in range(n)])
            rhs2 = law.bracket_vectors([Fraction(int(a == i - 1)) for a in range(n)], cols[j - 1])
            for k in range(n):
                diff = lhs[k] - rhs1[k] - rhs2[k]
                if exact and diff != 0:
                    return False
                if not exact and abs(diff) > tol:
                    return False
    return True


def diagonal_is_derivation(law: LieLaw, d: list, tol: float | None = None) -> bool:
    """Derivation check for diagonal d (vector of eigenvalues)."""
    tol = law.tol if tol is None else tol
    for (i, j, k), c in law.brackets.items():
        diff = d[i - 1] + d[j - 1] - d[k - 1]
        if law.is_exact and isinstance(diff, Fraction):
            if diff != 0:
                return False
        elif abs(diff) > tol:
            return False
    return True
