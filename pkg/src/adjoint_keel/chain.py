"""Adjoint chains on Picard lattices, endpoint classification, and
linear bounds on the parametric degree.

The chain alternates minimalization (contracting exceptional classes
orthogonal to the running class) with adding the canonical class, and
stops as soon as the adjoint is no longer effective.  The terminal
class falls into one of six cases which determine the level and keel:
it is zero, a multiple of a conic-fibration fiber, or a big class whose
double or triple adjoint degenerates, giving level fractions 1/3, 1/2
or 2/3.  The bounds 3*level + keel <= pdeg <= 6*level + 2*keel come
with a constructive intermediate value from a parametrizing class on
the endpoint model whenever the endpoint is integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvariantViolationError,
    NonTerminatingError,
    NotBigError,
    NotNefError,
    UnknownEndpointError,
)
from .surfaces import (
    Contraction,
    DivisorClass,
    SurfaceModel,
    hirzebruch,
    is_effective,
    is_nef,
    minimalize,
    plane_blowup,
    quadric,
)

ZERO_CLASS = "zero_class"
FIBER_MULTIPLE = "fiber_multiple"
THIRD = "third"
TWO_THIRDS = "two_thirds"
HALF = "half"
HALF_FIBER = "half_fiber"


@dataclass(frozen=True)
class ChainStep:
    """One stage of the chain: the model, the class, and how it got there."""

    surface: SurfaceModel
    divisor: DivisorClass
    contracted: tuple[DivisorClass, ...]


@dataclass(frozen=True)
class AdjointChainResult:
    steps: tuple[ChainStep, ...]
    a: int
    endpoint_case: str
    level: Fraction
    keel: Fraction
    fiber: DivisorClass | None = None
    fiber_multiplicity: int | None = None

    @property
    def terminal_surface(self) -> SurfaceModel:
        return self.steps[-1].surface

    @property
    def terminal_divisor(self) -> DivisorClass:
        return self.steps[-1].divisor


def _primitive_fiber(d: DivisorClass) -> tuple[int, DivisorClass]:
    """Split a nonzero square-zero class as k * P with P primitive on its ray."""
    k = d.content()
    p = d.surface.divisor(tuple(c // k for c in d.coeffs))
    if p.dot(p.surface.canonical_class()) != -2:
        raise UnknownEndpointError(
            f"fiber class {list(p.coeffs)} on {p.surface.label()} pairs "
            f"{p.dot(p.surface.canonical_class())} with K, expected -2"
        )
    return k, p


def adjoint_chain(
    surface: SurfaceModel, d: DivisorClass, reverse_tiebreak: bool = False
) -> AdjointChainResult:
    """Run the adjoint chain from a nef class with positive square.

    Raises NotNefError / NotBigError on inputs violating the standing
    hypotheses, and NonTerminatingError when the iteration exceeds the
    bound implied by the level (only possible with inconsistent custom
    cone data).
    """
    if d.surface != surface:
        raise NotNefError("class does not live on the given model")
    if not is_nef(d):
        raise NotNefError(f"{list(d.coeffs)} is not nef on {surface.label()}")
    if d.dot(d) <= 0:
        raise NotBigError(f"{list(d.coeffs)} has self-intersection {d.dot(d)} <= 0")
    if not is_effective(d):
        raise NotNefError(f"{list(d.coeffs)} is not effective on {surface.label()}")

    k2 = surface.canonical_class().dot(surface.canonical_class())
    dk = d.dot(-surface.canonical_class())
    cap = (dk // k2 if k2 > 0 else max(dk, 0)) + surface.rank + 8

    s, cur, trail = minimalize(surface, d, reverse=reverse_tiebreak)
    steps = [ChainStep(s, cur, tuple(c.contracted for c in trail))]
    while True:
        adj = cur + s.canonical_class()
        if not is_effective(adj):
            break
        s2, nxt, trail = minimalize(s, adj, reverse=reverse_tiebreak)
        steps.append(ChainStep(s2, nxt, tuple(c.contracted for c in trail)))
        s, cur = s2, nxt
        if len(steps) > cap:
            raise NonTerminatingError(
                f"chain exceeded {cap} steps; cone data is inconsistent"
            )

    a = len(steps) - 1
    for i, step in enumerate(steps):
        if not is_nef(step.divisor) or not is_effective(step.divisor):
            raise InvariantViolationError(f"chain class at step {i} lost nef/effective")
        if i < a and step.divisor.dot(step.divisor) <= 0:
            raise InvariantViolationError(f"chain class at step {i} lost bigness")

    da = steps[-1].divisor
    ka = s.canonical_class()

    if da.is_zero:
        return AdjointChainResult(tuple(steps), a, ZERO_CLASS, Fraction(a), Fraction(0))

    sq = da.dot(da)
    if sq == 0:
        k, p = _primitive_fiber(da)
        return AdjointChainResult(
            tuple(steps), a, FIBER_MULTIPLE, Fraction(a), Fraction(k), p, k
        )

    if (3 * da + ka).is_zero:
        return AdjointChainResult(tuple(steps), a, THIRD, Fraction(a) + Fraction(1, 3), Fraction(0))
    if (3 * da + 2 * ka).is_zero:
        return AdjointChainResult(
            tuple(steps), a, TWO_THIRDS, Fraction(a) + Fraction(2, 3), Fraction(0)
        )
    b = 2 * da + ka
    if b.is_zero:
        return AdjointChainResult(tuple(steps), a, HALF, Fraction(a) + Fraction(1, 2), Fraction(0))
    if b.dot(b) != 0 or not is_effective(b):
        raise UnknownEndpointError(
            f"terminal class {list(da.coeffs)} on {s.label()} fits no endpoint case"
        )
    _, b_min, _ = minimalize(s, b)
    k, p = _primitive_fiber(b_min)
    return AdjointChainResult(
        tuple(steps),
        a,
        HALF_FIBER,
        Fraction(a) + Fraction(1, 2),
        Fraction(k, 2),
        p,
        k,
    )


def level_keel_divisor(surface: SurfaceModel, d: DivisorClass) -> tuple[Fraction, Fraction]:
    """Level and keel of a nef big class, read off its adjoint chain."""
    res = adjoint_chain(surface, d)
    return res.level, res.keel


# ---------------------------------------------------------------------------
# Endpoint classification and parametrizing classes

PLANE = "plane"
QUADRIC = "quadric"
DEL_PEZZO_5 = "del_pezzo_5"
DEL_PEZZO_6 = "del_pezzo_6"


def classify_endpoint(
    surface: SurfaceModel, endpoint_case: str, fiber: DivisorClass | None = None
) -> str:
    """Minimal-model tag of a chain endpoint.

    Integral endpoints (zero or fiber-multiple terminal class) match the
    classification of minimal rational surfaces and P-minimal conic
    fibrations; anything else raises UnknownEndpointError.
    """
    k = surface.canonical_class()
    k2 = k.dot(k)
    if endpoint_case == FIBER_MULTIPLE:
        if fiber is None:
            raise UnknownEndpointError("fiber endpoint without a fiber class")
        if surface.kind == "quadric" or (surface.kind == "hirzebruch" and surface.param == 0):
            return "ruled_f0"
        if surface.kind == "hirzebruch":
            return f"ruled_f{surface.param}"
        if surface.kind == "plane_blowup" and surface.param == 1:
            return "ruled_f1"
        if surface.kind == "quadric_deg2_blowup":
            return "quadric_deg2_blowup"
        if surface.kind == "plane_deg4_blowup":
            return "plane_deg4_blowup"
        raise UnknownEndpointError(
            f"{surface.label()} is no supported conic-fibration endpoint"
        )
    if k2 == 9:
        return PLANE
    if k2 == 8:
        return QUADRIC
    if k2 == 6 and surface.rank == 1:
        return DEL_PEZZO_6
    if k2 == 5 and surface.rank == 1:
        return DEL_PEZZO_5
    raise UnknownEndpointError(f"{surface.label()} with K^2 = {k2} fits no endpoint model")


def _parametrizing_class(surface: SurfaceModel, tag: str, fiber: DivisorClass | None) -> DivisorClass:
    """Class Q on the endpoint model whose pullback parametrizes the surface."""
    k = surface.canonical_class()
    if tag == PLANE:
        return surface.divisor(tuple(-c // 3 for c in k.coeffs))
    if tag == QUADRIC:
        if any(c % 2 for c in k.coeffs):
            raise UnknownEndpointError(f"-K on {surface.label()} is not twice a class")
        return surface.divisor(tuple(-c // 2 for c in k.coeffs))
    if tag in (DEL_PEZZO_5, DEL_PEZZO_6):
        return -k
    if tag == "ruled_f0":
        return surface.divisor((1, 1))
    if tag.startswith("ruled_f"):
        n = int(tag.removeprefix("ruled_f"))
        if surface.kind == "plane_blowup":
            # F_1 realized as the one-point blowup: section E_1, fiber L - E_1.
            return surface.divisor((1, 0))
        return surface.divisor((1, n))
    if tag == "quadric_deg2_blowup":
        return surface.divisor((1, 1))
    if tag == "plane_deg4_blowup":
        return surface.divisor((1, 0))
    raise UnknownEndpointError(f"no parametrizing class for endpoint {tag}")


def _section_class(surface: SurfaceModel) -> DivisorClass | None:
    """Negative section C of a ruled endpoint, for the nef guard."""
    if surface.kind == "hirzebruch":
        return surface.divisor((1, 0))
    if surface.kind == "plane_blowup" and surface.param == 1:
        return surface.divisor((0, 1))
    return None


@dataclass(frozen=True)
class PdegBounds:
    """Linear bounds on the parametric degree from level and keel."""

    level: Fraction
    keel: Fraction
    lower: Fraction
    lower_int: int
    upper: Fraction
    constructive_upper: int | None
    endpoint_surface: str | None
    chain: AdjointChainResult


def pdeg_bounds(surface: SurfaceModel, d: DivisorClass) -> PdegBounds:
    """Lower bound 3*level + keel, upper bound 6*level + 2*keel, and the
    pairing of the constructed parametrizing class with the input where
    the endpoint is integral."""
    res = adjoint_chain(surface, d)
    lower = 3 * res.level + res.keel
    upper = 6 * res.level + 2 * res.keel
    constructive: int | None = None
    tag: str | None = None

    if res.endpoint_case in (ZERO_CLASS, FIBER_MULTIPLE):
        s_a = res.terminal_surface
        d_a = res.terminal_divisor
        k_a = s_a.canonical_class()
        tag = classify_endpoint(s_a, res.endpoint_case, res.fiber)
        q = _parametrizing_class(s_a, tag, res.fiber)
        if not is_nef(q):
            raise InvariantViolationError("parametrizing class is not nef")
        if q.dot(-k_a) > 6 or q.dot(k_a) > -3:
            raise InvariantViolationError("parametrizing class pairs badly with K")
        pushed = d_a - res.a * k_a
        section = _section_class(s_a)
        if res.endpoint_case == FIBER_MULTIPLE and section is not None:
            if pushed.dot(section) < 0:
                raise InvariantViolationError("pushforward lost nefness on the section")
        constructive = q.dot(pushed)
    else:
        try:
            tag = classify_endpoint(res.terminal_surface, res.endpoint_case)
        except UnknownEndpointError:
            tag = None

    if constructive is not None and not (lower <= constructive <= upper):
        raise InvariantViolationError(
            f"constructed degree {constructive} escapes [{lower}, {upper}]"
        )
    return PdegBounds(
        res.level,
        res.keel,
        lower,
        math.ceil(lower),
        upper,
        constructive,
        tag,
        res,
    )


# ---------------------------------------------------------------------------
# The odd-degree family with quadratic parametric degree


@dataclass(frozen=True)
class FamilyReport:
    """Closed-form level/keel data for the family
    z^(2n+1) = x^2 w^(2n-1) + y^n w^(n+1), n odd and at least 5."""

    n: int
    level: Fraction
    keel: Fraction
    lower: Fraction
    upper: Fraction
    parametrization_degree: int
    base_multiplicities: tuple[tuple[int, int], ...]
    infinitely_near_simple: int
    feasibility: tuple[int, int]
    sandwich_ok: bool


def high_degree_family_report(n: int) -> FamilyReport:
    """Level, keel, and degree bounds for the odd-degree family member n.

    The known parametrization has degree n^2 + 1 with one base point of
    multiplicity n^2 - 2n, (n-3)/2 points of multiplicity 2n, 2n + 3
    points of multiplicity n, and one simple point trailing
    n^2 - 2n - 1 simple infinitely near points.  Classes q*H + p*K are
    effective exactly for 2p <= (2n+1)q, and the keel comes from the
    moving lines through the dominant base point at q = 2.
    """
    if not isinstance(n, int) or n < 5 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 5, got {n!r}")

    deg = n * n + 1
    profile = (
        (1, n * n - 2 * n),
        ((n - 3) // 2, 2 * n),
        (2 * n + 3, n),
        (1, 1),
    )
    near_simple = n * n - 2 * n - 1

    # Degree check of the implicit surface: H^2 = d^2 - sum of m^2.
    sq = deg * deg - sum(
        count * m * m for count, m in profile
    ) - near_simple
    if sq != 2 * n + 1:
        raise InvariantViolationError("base point profile does not match the degree")

    level = Fraction(2 * n + 1, 2)
    # At q = 2, p = 2n + 1 the system is lines through the dominant point:
    # degree M with an M-fold point, minus the lines absorbed by the 2n-fold
    # points (their residual multiplicity is 2n - 1 each).
    m_deg = 2 * deg - 3 * (2 * n + 1)
    m_big = 2 * (n * n - 2 * n) - (2 * n + 1)
    if m_deg != m_big:
        raise InvariantViolationError("critical system is not a pencil of lines")
    absorbed = ((n - 3) // 2) * (2 * (2 * n) - (2 * n + 1))
    keel = Fraction(m_deg - absorbed, 2)
    if keel != Fraction(2 * n * n - 5 * n - 5, 4):
        raise InvariantViolationError("keel disagrees with its closed form")

    lower = 3 * level + keel
    upper = 6 * level + 2 * keel
    return FamilyReport(
        n,
        level,
        keel,
        lower,
        upper,
        deg,
        profile,
        near_simple,
        (2, 2 * n + 1),
        lower <= deg <= upper,
    )
