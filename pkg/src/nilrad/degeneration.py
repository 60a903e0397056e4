"""One-parameter diagonal degenerations and non-isomorphism certificates.

A diagonal X = diag(a_1..a_n) with tr X = 0 and tr(X phi) = 0 generates a
one-parameter subgroup g_t = exp(tX) inside the stabiliser-compatible group
G_phi.  Under g_t the bracket coefficient at (i, j, k) is scaled by
exp(-t (a_i + a_j - a_k)), so the t -> oo limit keeps exactly the brackets
of weight zero, dies to the zero law when all weights are positive, and
diverges when a kept coefficient has negative weight.  A limit outside the
orbit (zero, or separated from the law by an isomorphism invariant)
certifies that the orbit is not closed, hence NOT an Einstein nilradical.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import LawError, LieLaw, act, jacobi_violations, series_signature
from .derivations import PreEinsteinDerivation, diagonal_rank, dim_der


@dataclass(frozen=True)
class LimitResult:
    kind: str  # "limit" | "zero" | "divergent"
    law: LieLaw | None = None


@dataclass(frozen=True)
class Distinction:
    invariant: str  # "series" | "dim_der" | "rank"
    left: object
    right: object


@dataclass(frozen=True)
class DegenerationWitness:
    x: tuple[Fraction, ...]
    limit: LimitResult
    distinction: Distinction | None  # None for a zero limit


def in_g_phi(x, phi: PreEinsteinDerivation | list) -> bool:
    """Membership of a diagonal X in g_phi: tr X = 0 and tr(X phi) = 0."""
    eig = phi.phi if isinstance(phi, PreEinsteinDerivation) else phi
    xs = [Fraction(v) for v in x]
    return sum(xs) == 0 and sum(e * v for e, v in zip(eig, xs)) == 0


def one_param_limit(law: LieLaw, x, frame=None) -> LimitResult:
    """Limit of exp(tX).(frame law) as t -> oo for diagonal exponents X."""
    if not law.is_exact:
        raise LawError("one_param_limit requires an exact law")
    base = act(frame, law) if frame is not None else law
    xs = [Fraction(v) for v in x]
    if len(xs) != law.dim:
        raise LawError(f"X must have length {law.dim}")
    kept = {}
    for (i, j, k), c in base.brackets.items():
        w = xs[i - 1] + xs[j - 1] - xs[k - 1]
        if w < 0:
            return LimitResult("divergent")
        if w == 0:
            kept[(i, j, k)] = c
    if not kept and base.brackets:
        return LimitResult("zero")
    return LimitResult("limit", LieLaw(law.dim, kept, "exact", law.tol))


def distinguish(a: LieLaw, b: LieLaw) -> Distinction | None:
    """First invariant separating a and b, or None.

    Compares series signatures, then dim Der, then diagonal rank.  None
    means "not separated by these invariants", not "isomorphic".  The
    first two rungs are isomorphism invariants outright; diagonal rank is
    one only when the diagonal torus is maximal on both sides, which holds
    for the catalog's degeneration pairs (their limits carry recorded
    maximal tori) but not for arbitrary basis changes.
    """
    if a.dim != b.dim:
        raise LawError("distinguish needs laws of equal dimension")
    sa, sb = series_signature(a), series_signature(b)
    if (sa.derived_dims, sa.lcs_dims) != (sb.derived_dims, sb.lcs_dims):
        return Distinction("series", (sa.derived_dims, sa.lcs_dims), (sb.derived_dims, sb.lcs_dims))
    da, db = dim_der(a), dim_der(b)
    if da != db:
        return Distinction("dim_der", da, db)
    ra, rb = diagonal_rank(a)[0], diagonal_rank(b)[0]
    if ra != rb:
        return Distinction("rank", ra, rb)
    return None


def _size_reduce(basis: list[list[int]]) -> list[list[int]]:
    """Greedy pairwise reduction; HNF bases are too skewed to sample from."""
    b = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(b)):
            for j in range(len(b)):
                if i == j:
                    continue
                den = sum(x * x for x in b[j])
                if den == 0:
                    continue
                q = round(sum(x * y for x, y in zip(b[i], b[j])) / den)
                if q:
                    cand = [x - q * y for x, y in zip(b[i], b[j])]
                    if sum(x * x for x in cand) < sum(x * x for x in b[i]):
                        b[i] = cand
                        changed = True
    return b


def g_phi_lattice(phi: PreEinsteinDerivation, dim: int) -> list[list[int]]:
    """Size-reduced integer basis of the diagonal part of g_phi."""
    eig = [Fraction(v) for v in (phi.phi if isinstance(phi, PreEinsteinDerivation) else phi)]
    den = 1
    for e in eig:
        den = den * e.denominator // math.gcd(den, e.denominator)
    wrow = [int(e * den) for e in eig]
    return _size_reduce(linalg.kernel_lattice([[1] * dim, wrow]))


def search_degeneration(
    law: LieLaw,
    phi: PreEinsteinDerivation,
    trials: int,
    seed: int,
    extra_pool: tuple = (),
    coeff_bound: int = 4,
) -> DegenerationWitness | None:
    """Randomised hunt for a diagonal degeneration witness.

    Samples integer X in the diagonal g_phi lattice (plus any injected
    candidates, tried first) and keeps the first X whose limit is zero or
    separated from the law by distinguish().  None after `trials` attempts
    is inconclusive: it never certifies that the orbit is closed.
    Deterministic for a fixed seed.
    """
    lattice = g_phi_lattice(phi, law.dim)
    rng = random.Random(seed)
    seen: set[tuple] = set()
    checked_limits: dict = {}

    def consider(xvec) -> DegenerationWitness | None:
        key = tuple(xvec)
        if key in seen or not any(xvec):
            return None
        seen.add(key)
        if not in_g_phi(xvec, phi):
            return None
        res = one_param_limit(law, xvec)
        if res.kind == "divergent":
            return None
        if res.kind == "zero":
            return DegenerationWitness(tuple(Fraction(v) for v in xvec), res, None)
        if res.law == law:
            return None
        lim_key = tuple(sorted(res.law.brackets.items()))
        if lim_key in checked_limits:
            dist = checked_limits[lim_key]
        else:
            dist = distinguish(law, res.law)
            checked_limits[lim_key] = dist
        if dist is not None:
            return DegenerationWitness(tuple(Fraction(v) for v in xvec), res, dist)
        return None

    for cand in extra_pool:
        hit = consider(list(cand))
        if hit is not None:
            return hit
    if not lattice:
        return None
    r = len(lattice)
    for trial in range(trials):
        bound = coeff_bound * (1 + trial % 4)  # mix small and wider boxes
        coeffs = [rng.randint(-bound, bound) for _ in range(r)]
        xvec = [sum(coeffs[p] * lattice[p][i] for p in range(r)) for i in range(law.dim)]
        hit = consider(xvec)
        if hit is not None:
            return hit
    return None


def limit_is_lie(res: LimitResult) -> bool:
    """Limits of Lie laws are Lie laws; exposed for the test suite."""
    if res.kind != "limit":
        return True
    return not jacobi_violations(res.law)
