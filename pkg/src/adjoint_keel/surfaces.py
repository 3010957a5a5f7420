"""Integer intersection theory on Picard lattices of rational surfaces.

A SurfaceModel is pure lattice data: a symmetric intersection form of
signature (1, rank-1), the canonical class, generators of the effective
cone, and the exceptional classes eligible for blowdown.  Built-in
models cover the plane blown up in r <= 8 general points, the
Hirzebruch surfaces, the split quadric, and the two rank-2 conic
fibration lattices (a quadric blown up at a degree-2 point and the
plane blown up at a degree-4 point); a rank-1 quadric lattice is the
blowdown target of the former.

Classes on a plane blowup are stored as raw coefficients over the basis
(L, E_1, ..., E_r); the classical degree/multiplicity notation
(d; m_1, ..., m_r) denotes d*L - sum(m_i E_i) and is what the JSON
interfaces and display helpers use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ModelMismatchError,
    NotContractibleError,
    UndecidedError,
    UnsupportedRankError,
)

Coeffs = tuple[int, ...]


def _form(gram, x, y) -> int:
    return sum(x[i] * sum(gram[i][j] * y[j] for j in range(len(y))) for i in range(len(x)))


@dataclass(frozen=True)
class SurfaceModel:
    """Picard lattice data of a rational surface model."""

    kind: str
    param: int | None
    gram: tuple[Coeffs, ...]
    canonical: Coeffs
    effective_generators: tuple[Coeffs, ...]
    contractibles: tuple[Coeffs, ...]

    @property
    def rank(self) -> int:
        return len(self.canonical)

    def label(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}({self.param})"

    def divisor(self, coeffs) -> "DivisorClass":
        return DivisorClass(self, tuple(int(c) for c in coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def canonical_class(self) -> "DivisorClass":
        return DivisorClass(self, self.canonical)

    def __repr__(self):
        return f"SurfaceModel({self.label()})"


@dataclass(frozen=True)
class DivisorClass:
    """Integer class in the basis of its surface model."""

    surface: SurfaceModel
    coeffs: Coeffs

    def _check(self, other: "DivisorClass"):
        if self.surface != other.surface:
            raise ModelMismatchError(
                f"classes on {self.surface.label()} and {other.surface.label()}"
            )

    def __add__(self, other):
        self._check(other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int):
        return DivisorClass(self.surface, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        self._check(other)
        return _form(self.surface.gram, self.coeffs, other.coeffs)

    def self_intersection(self) -> int:
        return self.dot(self)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if any(self.coeffs) else 0

    def __repr__(self):
        return f"<{self.surface.label()} {list(self.coeffs)}>"


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    """Intersection number of two classes on the same model."""
    return a.dot(b)


def arithmetic_genus(d: DivisorClass) -> Fraction:
    """(D^2 + D.K)/2 + 1; zero for the fiber of a conic fibration."""
    k = d.surface.canonical_class()
    return Fraction(d.dot(d) + d.dot(k), 2) + 1


# ---------------------------------------------------------------------------
# (-1)-class enumeration for plane blowups


@lru_cache(maxsize=None)
def _neg_one_vectors(r: int) -> tuple[Coeffs, ...]:
    """Raw coefficient vectors of all classes with C^2 = C.K = -1.

    In degree/multiplicity form these are the solutions of
    d^2 - sum(m_i^2) = -1 and 3d - sum(m_i) = 1; the search is exhaustive
    with Cauchy-Schwarz pruning, so the bound on d needs no external input.
    """
    if r < 0 or r > 8:
        raise UnsupportedRankError(f"plane blowup rank {r} outside 0..8")
    sols: list[tuple[int, tuple[int, ...]]] = []
    for d in range(-1, 8):
        target_sum = 3 * d - 1
        target_sq = d * d + 1
        if target_sum * target_sum > r * target_sq:
            continue

        def rec(idx: int, rem_sum: int, rem_sq: int, acc: list[int]):
            left = r - idx
            if left == 0:
                if rem_sum == 0 and rem_sq == 0:
                    sols.append((d, tuple(acc)))
                return
            bound = math.isqrt(rem_sq)
            for m in range(-bound, bound + 1):
                ns, nq = rem_sum - m, rem_sq - m * m
                if nq < 0:
                    continue
                if left == 1:
                    if ns == 0 and nq == 0:
                        sols.append((d, tuple(acc + [m])))
                    continue
                if ns * ns > (left - 1) * nq:
                    continue
                acc.append(m)
                rec(idx + 1, ns, nq, acc)
                acc.pop()

        rec(0, target_sum, target_sq, [])
    sols.sort()
    return tuple((d,) + tuple(-m for m in ms) for d, ms in sols)


# ---------------------------------------------------------------------------
# Built-in models


@lru_cache(maxsize=None)
def plane_blowup(r: int) -> SurfaceModel:
    """Plane blown up in r general points; basis (L, E_1, ..., E_r)."""
    if r < 0 or r > 8:
        raise UnsupportedRankError(f"plane blowup rank {r} outside 0..8")
    n = r + 1
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n)
    )
    canonical = (-3,) + (1,) * r
    if r == 0:
        gens = ((1,),)
    elif r == 1:
        gens = ((0, 1), (1, -1))
    else:
        gens = _neg_one_vectors(r)
    contractibles = _neg_one_vectors(r) if r >= 1 else ()
    return SurfaceModel("plane_blowup", r, gram, canonical, gens, contractibles)


@lru_cache(maxsize=None)
def hirzebruch(n: int) -> SurfaceModel:
    """Ruled surface with section C (C^2 = -n) and fiber f."""
    if n < 0:
        raise ValueError(f"hirzebruch parameter must be nonnegative, got {n}")
    gram = ((-n, 1), (1, 0))
    canonical = (-2, -(n + 2))
    contractibles = ((1, 0),) if n == 1 else ()
    return SurfaceModel("hirzebruch", n, gram, canonical, ((1, 0), (0, 1)), contractibles)


@lru_cache(maxsize=None)
def quadric() -> SurfaceModel:
    """Split quadric; basis the two rulings (F1, F2)."""
    return SurfaceModel(
        "quadric", None, ((0, 1), (1, 0)), (-2, -2), ((1, 0), (0, 1)), ()
    )


@lru_cache(maxsize=None)
def quadric_rank1() -> SurfaceModel:
    """Quadric with Picard rank 1; basis the plane-section class H, H^2 = 2."""
    return SurfaceModel("quadric_rank1", None, ((2,),), (-2,), ((1,),), ())


@lru_cache(maxsize=None)
def quadric_deg2_blowup() -> SurfaceModel:
    """Quadric blown up at a degree-2 point; basis (P, E), P^2 = 0, PE = 2, E^2 = -2."""
    return SurfaceModel(
        "quadric_deg2_blowup",
        None,
        ((0, 2), (2, -2)),
        (-2, -1),
        ((1, 0), (0, 1)),
        ((0, 1),),
    )


@lru_cache(maxsize=None)
def plane_deg4_blowup() -> SurfaceModel:
    """Plane blown up at a degree-4 point; basis (L, E), E^2 = -4.

    The effective cone is spanned by the exceptional class E and the
    conic-fibration class 2L - E (the line class sits halfway between).
    """
    return SurfaceModel(
        "plane_deg4_blowup",
        None,
        ((1, 0), (0, -4)),
        (-3, 1),
        ((2, -1), (0, 1)),
        ((0, 1),),
    )


def _signature(gram) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix."""
    n = len(gram)
    m = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for k in range(n):
        if m[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if swap is not None:
                m[k], m[swap] = m[swap], m[k]
                for row in m:
                    row[k], row[swap] = row[swap], row[k]
            else:
                mate = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if mate is None:
                    zero += 1
                    continue
                for j in range(n):
                    m[k][j] += m[mate][j]
                for i in range(n):
                    m[i][k] += m[i][mate]
        pivot = m[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor == 0:
                continue
            for j in range(n):
                m[i][j] -= factor * m[k][j]
            for j in range(n):
                m[j][i] -= factor * m[j][k]
    return pos, neg, zero


def custom_model(gram, canonical, effective_generators, contractibles=()) -> SurfaceModel:
    """Surface model from raw lattice data; validates the signature."""
    gram_t = tuple(tuple(int(x) for x in row) for row in gram)
    n = len(gram_t)
    if any(len(row) != n for row in gram_t):
        raise ValueError("gram matrix is not square")
    if any(gram_t[i][j] != gram_t[j][i] for i in range(n) for j in range(n)):
        raise ValueError("gram matrix is not symmetric")
    pos, neg, zero = _signature(gram_t)
    if (pos, neg, zero) != (1, n - 1, 0):
        raise ValueError(f"intersection form has inertia {(pos, neg, zero)}, need (1, {n - 1}, 0)")
    model = SurfaceModel(
        "custom",
        None,
        gram_t,
        tuple(int(c) for c in canonical),
        tuple(tuple(int(c) for c in g) for g in effective_generators),
        tuple(tuple(int(c) for c in e) for e in contractibles),
    )
    for e in model.contractibles:
        cls = model.divisor(e)
        if cls.self_intersection() != cls.dot(model.canonical_class()) or cls.self_intersection() >= 0:
            raise ValueError(f"contractible {list(e)} must satisfy E^2 = E.K < 0")
    return model


# ---------------------------------------------------------------------------
# Degree/multiplicity notation on plane blowups


def from_multiplicities(surface: SurfaceModel, degree: int, mults) -> DivisorClass:
    """Class d*L - sum(m_i E_i) on a plane blowup."""
    if surface.kind != "plane_blowup":
        raise ModelMismatchError("degree/multiplicity form only applies to plane blowups")
    ms = tuple(int(m) for m in mults)
    if len(ms) != surface.rank - 1:
        raise ValueError(f"expected {surface.rank - 1} multiplicities, got {len(ms)}")
    return DivisorClass(surface, (int(degree),) + tuple(-m for m in ms))


def multiplicities(d: DivisorClass) -> tuple[int, ...]:
    """Degree/multiplicity tuple (d, m_1, ..., m_r) of a plane-blowup class."""
    if d.surface.kind != "plane_blowup":
        raise ModelMismatchError("degree/multiplicity form only applies to plane blowups")
    return (d.coeffs[0],) + tuple(-c for c in d.coeffs[1:])


def neg_one_classes(surface: SurfaceModel, bound: int | None = None) -> list[DivisorClass]:
    """All classes C with C^2 = C.K = -1 on a plane blowup, sorted.

    The optional ``bound`` caps the degree of the search (the default is
    the exact Cauchy-Schwarz bound, so passing it only restricts output).
    """
    if surface.kind != "plane_blowup":
        raise ModelMismatchError("(-1)-class enumeration runs on plane blowups")
    vecs = _neg_one_vectors(surface.param)
    out = [surface.divisor(v) for v in vecs]
    if bound is not None:
        out = [c for c in out if c.coeffs[0] <= bound]
    return out


# ---------------------------------------------------------------------------
# Nefness and effectivity


def is_nef(d: DivisorClass) -> bool:
    """True when the class pairs nonnegatively with every effective-cone generator."""
    return all(
        _form(d.surface.gram, d.coeffs, g) >= 0 for g in d.surface.effective_generators
    )


@lru_cache(maxsize=None)
def _nef_witnesses(surface: SurfaceModel) -> tuple[Coeffs, ...]:
    """Nef classes used to certify non-effectivity (anticanonical first)."""
    out = []
    neg_k = tuple(-c for c in surface.canonical)
    gens = surface.effective_generators
    if all(_form(surface.gram, neg_k, g) >= 0 for g in gens):
        out.append(neg_k)
    for g in gens:
        if _form(surface.gram, g, g) >= 0 and all(
            _form(surface.gram, g, h) >= 0 for h in gens
        ):
            out.append(g)
    return tuple(out)


def is_effective(d: DivisorClass) -> bool:
    """Effectivity by fixed-component peeling against the cone generators.

    A generator with negative square pairing negatively with the residue
    is a fixed component and gets subtracted; a residue pairing
    nonnegatively with every generator is nef, hence effective on these
    models; a residue pairing negatively with a nef witness cannot be
    effective.  Raises UndecidedError only if the loop fails to settle
    within rank*64 steps, which signals inconsistent cone data.
    """
    surface = d.surface
    gram = surface.gram
    gens = surface.effective_generators
    witnesses = _nef_witnesses(surface)
    res = d.coeffs
    for _ in range(surface.rank * 64):
        if all(c == 0 for c in res):
            return True
        if any(_form(gram, res, w) < 0 for w in witnesses):
            return False
        pairings = [_form(gram, res, g) for g in gens]
        if all(v >= 0 for v in pairings):
            return True
        peeled = False
        for g, v in zip(gens, pairings):
            if v < 0 and _form(gram, g, g) < 0:
                res = tuple(a - b for a, b in zip(res, g))
                peeled = True
                break
        if not peeled:
            # Negative pairing only against square >= 0 generators; on the
            # built-in models those are nef, so the class is not effective.
            for g, v in zip(gens, pairings):
                if v < 0 and all(_form(gram, g, h) >= 0 for h in gens):
                    return False
            raise UndecidedError(
                f"effectivity of {list(res)} on {surface.label()} undecided"
            )
    raise UndecidedError(f"peeling did not terminate on {surface.label()}")


# ---------------------------------------------------------------------------
# Contraction (blowdown) and minimalization


class Contraction:
    """One blowdown step with its pushforward and pullback maps."""

    def __init__(self, source: SurfaceModel, target: SurfaceModel, contracted: DivisorClass, push, pull):
        self.source = source
        self.target = target
        self.contracted = contracted
        self._push = push
        self._pull = pull

    def pushforward(self, d: DivisorClass) -> DivisorClass:
        if d.surface != self.source:
            raise ModelMismatchError("pushforward input lives on the wrong model")
        return self.target.divisor(self._push(d.coeffs))

    def pullback(self, d: DivisorClass) -> DivisorClass:
        if d.surface != self.target:
            raise ModelMismatchError("pullback input lives on the wrong model")
        return self.source.divisor(self._pull(d.coeffs))

    def __repr__(self):
        return f"Contraction({self.source.label()} -> {self.target.label()}, {list(self.contracted.coeffs)})"


def _reflect(gram, x: Coeffs, root: Coeffs) -> Coeffs:
    c = _form(gram, x, root)
    return tuple(a + c * b for a, b in zip(x, root))


def _reduction_word(surface: SurfaceModel, e: Coeffs) -> list[Coeffs]:
    """Roots whose reflections move a (-1)-class to the last coordinate.

    Uses the quadratic transformation centered at the three largest
    multiplicities while the degree is positive, then a coordinate swap.
    """
    gram = surface.gram
    r = surface.rank - 1
    word: list[Coeffs] = []
    x = e
    for _ in range(64):
        d = x[0]
        if d == 0:
            idx = [i for i in range(1, r + 1) if x[i] != 0]
            if len(idx) != 1 or x[idx[0]] != 1:
                raise NotContractibleError(f"{list(e)} does not reduce to a blowdown class")
            i = idx[0]
            if i != r:
                root = tuple(
                    1 if j == i else (-1 if j == r else 0) for j in range(r + 1)
                )
                word.append(root)
                x = _reflect(gram, x, root)
            return word
        if d < 0 or r < 3:
            raise NotContractibleError(f"{list(e)} does not reduce to a blowdown class")
        mult = [(-x[i], i) for i in range(1, r + 1)]
        mult.sort(key=lambda t: (-t[0], t[1]))
        picks = [i for _, i in mult[:3]]
        root = tuple(
            1 if j == 0 else (-1 if j in picks else 0) for j in range(r + 1)
        )
        nxt = _reflect(gram, x, root)
        if nxt[0] >= d:
            raise NotContractibleError(f"{list(e)} does not reduce to a blowdown class")
        word.append(root)
        x = nxt
    raise NotContractibleError(f"{list(e)} does not reduce to a blowdown class")


def _contraction(surface: SurfaceModel, e: DivisorClass) -> Contraction:
    if e.surface != surface:
        raise ModelMismatchError("exceptional class lives on the wrong model")
    if e.coeffs not in surface.contractibles:
        raise NotContractibleError(f"{list(e.coeffs)} is not contractible on {surface.label()}")

    if surface.kind == "plane_blowup":
        r = surface.param
        if r == 2 and e.coeffs == (1, -1, -1):
            # Blowdown of the line through both points lands on the quadric:
            # the two rulings pull back to L - E_1 and L - E_2.
            target = quadric()
            u1, u2 = (1, -1, 0), (1, 0, -1)
            gram = surface.gram

            def push(c):
                return (_form(gram, c, u2), _form(gram, c, u1))

            def pull(c):
                return tuple(c[0] * a + c[1] * b for a, b in zip(u1, u2))

            return Contraction(surface, target, e, push, pull)

        word = _reduction_word(surface, e.coeffs)
        target = plane_blowup(r - 1)
        gram = surface.gram

        def push(c):
            for root in word:
                c = _reflect(gram, c, root)
            return c[:-1]

        def pull(c):
            c = tuple(c) + (0,)
            for root in reversed(word):
                c = _reflect(gram, c, root)
            return c

        return Contraction(surface, target, e, push, pull)

    if surface.kind == "hirzebruch" and surface.param == 1:
        # C is the exceptional section; f pulls back from the line class.
        return Contraction(
            surface,
            plane_blowup(0),
            e,
            lambda c: (c[1],),
            lambda c: (c[0], c[0]),
        )

    if surface.kind == "quadric_deg2_blowup":
        # The plane-section class P + E pushes to the rank-1 quadric's H.
        return Contraction(
            surface,
            quadric_rank1(),
            e,
            lambda c: (c[0],),
            lambda c: (c[0], c[0]),
        )

    if surface.kind == "plane_deg4_blowup":
        return Contraction(
            surface,
            plane_blowup(0),
            e,
            lambda c: (c[0],),
            lambda c: (c[0], 0),
        )

    raise NotContractibleError(f"no blowdown defined on {surface.label()}")


def contract(surface: SurfaceModel, e: DivisorClass, d: DivisorClass) -> tuple[SurfaceModel, DivisorClass]:
    """Blow down the exceptional class e and push d forward."""
    con = _contraction(surface, e)
    return con.target, con.pushforward(d)


def minimalize(
    surface: SurfaceModel, d: DivisorClass, reverse: bool = False
) -> tuple[SurfaceModel, DivisorClass, list[Contraction]]:
    """Contract exceptional classes orthogonal to d until none remains.

    Ties are broken by the lexicographically smallest coefficient vector
    (largest when ``reverse`` is set; the downstream invariants do not
    depend on the choice).
    """
    trail: list[Contraction] = []
    for _ in range(64):
        cands = [
            surface.divisor(e)
            for e in surface.contractibles
            if _form(surface.gram, d.coeffs, e) == 0
        ]
        if not cands:
            return surface, d, trail
        cands.sort(key=lambda c: c.coeffs, reverse=reverse)
        con = _contraction(surface, cands[0])
        d = con.pushforward(d)
        surface = con.target
        trail.append(con)
    raise UndecidedError("minimalization did not terminate")
