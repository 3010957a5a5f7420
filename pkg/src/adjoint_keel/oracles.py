"""Independent brute-force validators.

Nothing here reuses the code paths it checks: polygon levels are probed
by direct feasibility of scaled inward offsets, and effectivity on
plane blowups is decided by the rank of an exact interpolation matrix
(forms of fixed degree vanishing to prescribed multiplicities at random
rational points in general position).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .polygon import LatticePolygon, offset_feasible
from .surfaces import DivisorClass, SurfaceModel, is_effective, multiplicities

DEFAULT_SEED = 1729

_PRIME = (1 << 61) - 1


@dataclass(frozen=True)
class FatPointProblem:
    """Forms of a fixed degree vanishing to given multiplicities at points."""

    degree: int
    points: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise ValueError("one multiplicity per point required")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be pairwise distinct")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _condition_rows(problem: FatPointProblem) -> list[list[int]]:
    """Integer rows of the vanishing-conditions matrix.

    Columns run over monomials x^i y^j with i + j <= degree; each point of
    multiplicity m contributes the derivatives of order < m, with the row
    scaled by a common denominator (rank is scale-invariant).
    """
    d = problem.degree
    monomials = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    rows = []
    for (px, py), m in zip(problem.points, problem.multiplicities):
        den = math.lcm(px.denominator, py.denominator)
        for dx in range(m):
            for dy in range(m - dx):
                row = []
                for i, j in monomials:
                    if dx > i or dy > j:
                        row.append(Fraction(0))
                    else:
                        row.append(
                            _falling(i, dx)
                            * _falling(j, dy)
                            * px ** (i - dx)
                            * py ** (j - dy)
                        )
                scale = den ** (d)
                rows.append([int(v * scale) for v in row])
    return rows


def _rank_mod(rows, ncols: int, p: int) -> int:
    mat = [[v % p for v in row] for row in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        prow = [(v * inv) % p for v in mat[rank]]
        mat[rank] = prow
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def _rank_bareiss(rows, ncols: int) -> int:
    """Fraction-free Gaussian elimination over the integers; exact."""
    mat = [row[:] for row in rows]
    nrows = len(mat)
    rank = 0
    prev = 1
    col = 0
    while rank < nrows and col < ncols:
        pivot = next((i for i in range(rank, nrows) if mat[i][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        for i in range(rank + 1, nrows):
            fi = mat[i][col]
            mat[i] = [
                (pv * a - fi * b) // prev
                for a, b in zip(mat[i], mat[rank])
            ]
        prev = pv
        rank += 1
        col += 1
    return rank


def _exact_rank(rows, ncols: int) -> int:
    """Exact rank over the rationals of an integer matrix.

    A single-prime modular rank is a lower bound; when it already meets
    min(rows, cols) it is the exact value, otherwise the fraction-free
    elimination settles it.
    """
    if not rows:
        return 0
    rp = _rank_mod(rows, ncols, _PRIME)
    if rp == min(len(rows), ncols):
        return rp
    return _rank_bareiss(rows, ncols)


def fatpoint_dim(problem: FatPointProblem) -> int:
    """Projective dimension of the forms satisfying the problem; -1 if empty."""
    d = problem.degree
    n_monomials = (d + 2) * (d + 1) // 2
    rows = _condition_rows(problem)
    return n_monomials - _exact_rank(rows, n_monomials) - 1


def random_general_points(count: int, seed: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """Pseudo-random rational points; distinct by construction."""
    rng = random.Random(seed)
    pts: set[tuple[Fraction, Fraction]] = set()
    while len(pts) < count:
        pts.add(
            (
                Fraction(rng.randint(-40, 40), rng.randint(1, 3)),
                Fraction(rng.randint(-40, 40), rng.randint(1, 3)),
            )
        )
    return tuple(sorted(pts))


_dim_cache: dict[tuple[int, tuple[int, ...], int], int] = {}


def _stable_dim(degree: int, mults: tuple[int, ...], seed: int) -> int:
    """Fat-point dimension at two independent samples, resampling on
    disagreement (a disagreement flags a degenerate point sample)."""
    key = (degree, mults, seed)
    if key in _dim_cache:
        return _dim_cache[key]
    n_monomials = (degree + 2) * (degree + 1) // 2
    n_conditions = sum(m * (m + 1) // 2 for m in mults)
    if n_conditions < n_monomials:
        # The rank cannot exceed the row count, so the system is nonempty
        # regardless of position; the exact dimension is still sampled so
        # callers comparing dimensions stay honest.
        pass
    for attempt in range(8):
        offset = attempt * 104729
        d1 = fatpoint_dim(
            FatPointProblem(degree, random_general_points(len(mults), seed + offset), mults)
        )
        d2 = fatpoint_dim(
            FatPointProblem(
                degree, random_general_points(len(mults), seed + offset + 7919), mults
            )
        )
        if d1 == d2:
            _dim_cache[key] = d1
            return d1
    raise RuntimeError("fat-point sampling kept disagreeing; seed exhausted")


def effectivity_oracle(surface: SurfaceModel, d: DivisorClass, seed: int = DEFAULT_SEED) -> bool:
    """Effectivity of a plane-blowup class by interpolation rank.

    Negative multiplicities are fixed exceptional parts and are dropped
    (adding a multiple of E_i changes nothing); a negative degree is
    never effective.
    """
    if surface.kind != "plane_blowup":
        raise ValueError("the interpolation oracle runs on plane blowups")
    deg, *mults = multiplicities(d)
    if deg < 0:
        return False
    mults = tuple(sorted((m for m in mults if m > 0), reverse=True))
    if not mults:
        return True
    n_monomials = (deg + 2) * (deg + 1) // 2
    n_conditions = sum(m * (m + 1) // 2 for m in mults)
    if n_conditions < n_monomials:
        return True
    return _stable_dim(deg, mults, seed) >= 0


def polygon_level_oracle(polygon: LatticePolygon, q_max: int) -> Fraction:
    """max over 1 <= q <= q_max of (largest p with a nonempty offset)/q.

    Pure feasibility probing; shares no code with the critical-offset
    search.  Successive q reuse the running best as a feasible floor.
    """
    if q_max < 1:
        raise ValueError("q_max must be positive")
    best = Fraction(0)
    for q in range(1, q_max + 1):
        p = int(best * q)
        if not offset_feasible(polygon, q, p):
            # The floor must stay feasible; only p = 0 may fail it.
            p = 0
            if not offset_feasible(polygon, q, p):
                continue
        while offset_feasible(polygon, q, p + 1):
            p += 1
        best = max(best, Fraction(p, q))
    return best


def divisor_level_oracle(surface: SurfaceModel, d: DivisorClass, q_max: int = 12) -> Fraction:
    """max p/q with q*D + p*K effective, probed through is_effective."""
    k = surface.canonical_class()
    best = Fraction(0)
    for q in range(1, q_max + 1):
        p = int(best * q)
        if not is_effective(q * d + p * k):
            continue
        while is_effective(q * d + (p + 1) * k):
            p += 1
        best = max(best, Fraction(p, q))
    return best
