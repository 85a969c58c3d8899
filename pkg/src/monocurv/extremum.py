"""Curvature behavior at the maximally mixed state: series, classification, families.

Around the maximally mixed state the qubit curvature is even in a,

    r(a) = c0 + c2 a^2 + c4 a^4 + O(a^6),

with coefficients determined by f''(1), f''''(1), f''''''(1) alone.  For a
measure-built function the derivatives reduce to moments of the pushforward
of mu under x = 4t(1-t), which turns the extremum question into moment
inequalities: the origin is a local minimum iff the t-functional

    t_mu = 12 (int t(1-t) dmu)^2 - int t(t-1)(20t^2 - 40t + 13) dmu

is negative (t_mu = -c2/40).  Single mirrored-pair measures mu_p always give
t > 0 (local maximum); two-pair measures mu_{p,q} cross into t < 0 inside
the boundary curve q(p), which is where the monotone metrics with a
curvature minimum at maximal mixing live.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

from .monotone import (
    MomentSummary,
    MonotoneFunction,
    SymmetricMeasure,
    function_from_measure,
    pushforward_moments,
)

#: |c2| (and |c4|) below this count as zero in the sign logic
TIE_TOL = 1e-10

#: tolerance for the exact-equality branch of the moment condition
MOMENT_EQ_TOL = 1e-12

#: left endpoint of the admissible p-interval for the two-pair family
P_LEFT = (7.0 - math.sqrt(7.0)) / 14.0


class Verdict(str, Enum):
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    DEGENERATE = "Degenerate"


class DecidedBy(str, Enum):
    C2_SIGN = "C2Sign"
    C4_SIGN = "C4Sign"
    MOMENT_CONDITION = "MomentCondition"


@dataclass(frozen=True)
class SeriesExpansion:
    """Coefficients of a^0, a^2, a^4 in the origin expansion of r(a)."""

    c0: float
    c2: float
    c4: float


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    decided_by: DecidedBy
    values: SeriesExpansion
    moment_summary: Optional[MomentSummary] = None

    def to_dict(self) -> dict:
        out = {
            "c0": self.values.c0,
            "c2": self.values.c2,
            "c4": self.values.c4,
            "verdict": self.verdict.value,
            "decided_by": self.decided_by.value,
            "moment_summary": None,
        }
        if self.moment_summary is not None:
            m = self.moment_summary
            out["moment_summary"] = {"m": m.m, "var": m.var, "e2": m.e2, "e3": m.e3}
        return out


def series_coefficients(f: MonotoneFunction) -> SeriesExpansion:
    """Origin-series coefficients of r(a) from the jet of f at 1."""
    j = f.jet(1.0, 6)
    f2, f4, f6 = j[2], j[4], j[6]
    c0 = 6.0 + 36.0 * f2
    c2 = (100.0 / 3.0) * f4 - 140.0 * f2 - 120.0 * f2**2
    c4 = (
        352.0 * f2**3
        + 616.0 * f2**2
        + 1092.0 * f2
        - (1288.0 / 3.0) * f4
        + (392.0 / 45.0) * f6
        - 160.0 * f2 * f4
    )
    return SeriesExpansion(c0=c0, c2=c2, c4=c4)


def origin_curvature_from_measure(mu: SymmetricMeasure) -> float:
    """r(0) = 6 + 72 int (t^2 - t) dmu."""
    return 6.0 + 72.0 * mu.integrate(lambda t: t * t - t)


def t_functional(mu: SymmetricMeasure) -> float:
    """The minimum-certificate functional; negative values certify a local minimum."""
    i2 = mu.integrate(lambda t: t * (1.0 - t))
    i4 = mu.integrate(lambda t: t * (t - 1.0) * (20.0 * t * t - 40.0 * t + 13.0))
    return 12.0 * i2 * i2 - i4


def _series_sign_logic(series: SeriesExpansion):
    if series.c2 > TIE_TOL:
        return Verdict.LOCAL_MIN, DecidedBy.C2_SIGN
    if series.c2 < -TIE_TOL:
        return Verdict.LOCAL_MAX, DecidedBy.C2_SIGN
    if series.c4 > TIE_TOL:
        return Verdict.LOCAL_MIN, DecidedBy.C4_SIGN
    if series.c4 < -TIE_TOL:
        return Verdict.LOCAL_MAX, DecidedBy.C4_SIGN
    return Verdict.DEGENERATE, DecidedBy.C4_SIGN


def classify_origin(obj: Union[SymmetricMeasure, MonotoneFunction]) -> Classification:
    """Classify the curvature extremum at the maximally mixed state.

    Measures (and measure-backed functions) go through the moment
    condition m(3 - 2m) < 5 sigma^2 first; anything undecided falls back
    to the sign of c2, then c4, then Degenerate.  The moment and series
    routes are algebraically equivalent, so a sign contradiction between
    them is raised as an error rather than papered over.

    The equality branch (m(3 - 2m) = 5 sigma^2 exactly) is transcribed
    as specified but is experimental: it is only reachable through
    deliberately constructed boundary measures and has no independent
    cross-check.
    """
    if isinstance(obj, SymmetricMeasure):
        mu, f = obj, function_from_measure(obj)
    elif isinstance(obj, MonotoneFunction):
        mu, f = obj.measure, obj
    else:
        raise TypeError(f"cannot classify {type(obj).__name__}")

    series = series_coefficients(f)
    moments = pushforward_moments(mu) if mu is not None else None

    if moments is not None:
        m = moments.m
        lhs = m * (3.0 - 2.0 * m)
        rhs = 5.0 * moments.var
        if lhs < rhs - MOMENT_EQ_TOL:
            if series.c2 < -TIE_TOL:
                raise ArithmeticError(
                    "moment condition certifies a minimum but c2 < 0; "
                    "the routes are algebraically equivalent, so this is a bug"
                )
            return Classification(Verdict.LOCAL_MIN, DecidedBy.MOMENT_CONDITION, series, moments)
        if abs(lhs - rhs) <= MOMENT_EQ_TOL:
            # experimental boundary branch, transcribed as specified
            if -44.0 * m**3 + 70.0 * m**2 + 114.0 * m < 98.0 * moments.e3:
                return Classification(
                    Verdict.LOCAL_MIN, DecidedBy.MOMENT_CONDITION, series, moments
                )
        verdict, decided_by = _series_sign_logic(series)
        if verdict is Verdict.LOCAL_MIN and decided_by is DecidedBy.C2_SIGN:
            raise ArithmeticError(
                "series route certifies a minimum the moment condition rejects; "
                "the routes are algebraically equivalent, so this is a bug"
            )
        return Classification(verdict, decided_by, series, moments)

    verdict, decided_by = _series_sign_logic(series)
    return Classification(verdict, decided_by, series, None)


# ---------------------------------------------------------------------------
# mirrored-pair measure families
# ---------------------------------------------------------------------------


def t_single_pair(p: float) -> float:
    """t-functional of the single mirrored pair; positive on (0, 1/2]."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"pair location p={p} outside [0, 1/2]")
    return p * (1.0 - p) * (8.0 * p * p - 8.0 * p + 3.0)


def t_double_pair(p: float, q: float) -> float:
    """t-functional of the two-pair measure, as an explicit quartic."""
    for name, v in (("p", p), ("q", q)):
        if not 0.0 <= v <= 0.5:
            raise ValueError(f"pair location {name}={v} outside [0, 1/2]")
    return (
        -7.0 * (p**4 + q**4)
        + 14.0 * (p**3 + q**3)
        - 6.0 * p * q * (p + q - p * q - 1.0)
        - 8.5 * (p**2 + q**2)
        + 1.5 * (p + q)
    )


def t_double_pair_uv(u: float, v: float) -> float:
    """The same quartic in the symmetric variables u = pq, v = p + q."""
    return (
        -8.0 * u * u
        + (28.0 * v * v - 48.0 * v + 23.0) * u
        - (7.0 * v**4 - 14.0 * v**3 + 8.5 * v * v - 1.5 * v)
    )


def family_measure(p: float, q: float) -> SymmetricMeasure:
    """The two-pair measure: quarter weights at p, q and their mirrors."""
    atoms = []
    for t in (float(p), float(q)):
        if not 0.0 <= t <= 0.5:
            raise ValueError(f"pair location {t} outside [0, 1/2]")
        atoms.append((t, 0.5 if t == 0.5 else 0.25))
    return SymmetricMeasure(atoms=atoms)


def family_function(p: float, q: float, from_measure: bool = False) -> MonotoneFunction:
    """The two-pair operator monotone function.

    By default the explicit four-term rational form (which the series
    tracer differentiates exactly); with ``from_measure=True`` the
    measure-backed route, for cross-checking the two against each other.
    """
    if from_measure:
        return function_from_measure(family_measure(p, q), label=f"two_pair(p={p}, q={q})")
    for name, v in (("p", p), ("q", q)):
        if not 0.0 <= v <= 0.5:
            raise ValueError(f"pair location {name}={v} outside [0, 1/2]")

    def formula(x):
        return (x / 4.0) * (
            1.0 / (p * x + (1.0 - p))
            + 1.0 / ((1.0 - p) * x + p)
            + 1.0 / (q * x + (1.0 - q))
            + 1.0 / ((1.0 - q) * x + q)
        )

    return MonotoneFunction(f"two_pair(p={p}, q={q})", formula=formula)


@dataclass(frozen=True)
class FamilyParams:
    """Parameters in the admissible window of the two-pair minimum family."""

    p: float
    q: float

    def __post_init__(self):
        if not P_LEFT < self.p <= 0.5:
            raise ValueError(f"p={self.p} outside the admissible interval ({P_LEFT}, 1/2]")
        if not 0.0 <= self.q <= 0.5:
            raise ValueError(f"q={self.q} outside [0, 1/2]")

    @property
    def u(self) -> float:
        return self.p * self.q

    @property
    def v(self) -> float:
        return self.p + self.q

    def in_minimum_window(self) -> bool:
        """True when q lies strictly inside the negative-t (local-minimum) region."""
        return self.q < boundary_curves(self.p).q_root


@dataclass(frozen=True)
class BoundaryCurves:
    """The curves bounding the minimum region of the two-pair family."""

    h_p: float
    q_root: float
    u_of_v: Callable[[float], float]


def boundary_curves(p: float) -> BoundaryCurves:
    """Boundary data at parameter p: h(p), the root q(p) of t, and u(v).

    q(p) is the unique admissible root of t(p, q) = 0; h(p) = 1/2 - q(p)
    (the radicand must be 12p^2 - 12p + 4 + sqrt(R) for that identity to
    hold -- a 14p^2 - 14p radicand would overshoot the negative-t region).
    u(v) solves t(u, v) = 0 under 0 < u < 1/4.
    """
    if not P_LEFT < p <= 0.5:
        raise ValueError(
            f"p={p} outside ({P_LEFT}, 1/2]; q(p) is positive only on that interval"
        )
    inner = -640.0 * p**4 + 1280.0 * p**3 - 880.0 * p**2 + 240.0 * p + 9.0
    root_inner = math.sqrt(inner)
    h_p = math.sqrt(12.0 * p * p - 12.0 * p + 4.0 + root_inner) / (2.0 * math.sqrt(7.0))
    q_root = 0.5 - math.sqrt(84.0 * p * p - 84.0 * p + 28.0 + 7.0 * root_inner) / 14.0

    def u_of_v(v: float) -> float:
        disc = 560.0 * v**4 - 2240.0 * v**3 + 3320.0 * v * v - 2160.0 * v + 529.0
        return 1.75 * v * v - 3.0 * v + 23.0 / 16.0 - math.sqrt(disc) / 16.0

    return BoundaryCurves(h_p=h_p, q_root=q_root, u_of_v=u_of_v)


# ---------------------------------------------------------------------------
# small closed forms from the statistical-distance picture
# ---------------------------------------------------------------------------


def geodesic_ball_volume(n: int, scal: float, radius: float) -> float:
    """Small-radius volume of a geodesic ball in the (n^2 - 1)-space of states.

    Leading Euclidean term times the curvature deficit 1 - scal r^2/(6(n^2+1));
    valid to O(r^4), so ``radius`` should be small.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    dim = n * n - 1
    flat = math.sqrt(math.pi**dim) * radius**dim / math.gamma((n * n + 1) / 2.0)
    return flat * (1.0 - scal * radius**2 / (6.0 * (n * n + 1)))


def classical_fisher_distance(p1: float, p2: float) -> float:
    """Fisher statistical distance between two-outcome distributions."""
    for name, v in (("p1", p1), ("p2", p2)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name}={v} outside [0, 1]")
    arg = math.sqrt(p1 * p2) + math.sqrt((1.0 - p1) * (1.0 - p2))
    return math.acos(min(1.0, max(-1.0, arg)))
