"""Scalar curvature of the qubit state manifold by three independent routes.

The interior of the qubit state space is the open Bloch ball; a monotone
metric built from an operator monotone function f gives it the line element

    ds^2 = dr^2/(1-r^2) + g(r) dtheta^2 + g(r) sin^2(theta) dphi^2,
    g(r) = r^2 / ((1+r) f((1-r)/(1+r))).

Along a diameter the state is parametrized by a in (-1, 1) with eigenvalues
(1+a)/2 and (1-a)/2, and the scalar curvature r(a) is computed three ways:

* ``curvature_closed_form`` -- the explicit five-term formula in
  f, f', f'' at (1-a)/(1+a);
* ``curvature_via_sums`` -- the eigenvalue route: coincident-argument
  limits of the spectral kernel functions, summed into sh_1..sh_4 and
  combined as sh1 - sh2/2 + 2 sh3 - sh4 + 3/2;
* ``curvature_geometric`` -- Christoffel symbols, Riemann and Ricci
  tensors of the line element above, contracted with the inverse metric.

The three are algebraically equal; keeping all of them (plus the series
expansion at a = 0 assembled in ``summand_series``) is the point: each
route cross-validates the others to ~1e-12.

Near a = 0 the closed form has cancelling 2/a^2 divergences, so |a| below
1e-3 is evaluated from the series instead of risking catastrophic
cancellation in float arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from . import jets
from .monotone import MonotoneFunction

#: below this |a| the closed form switches to the 4th-order series
SERIES_SWITCH = 1e-3

#: eigenvalue gaps below this (relative) route to the degenerate-limit branch
DEGENERATE_GAP = 1e-6

_EIGENSUM_TOL = 1e-12


@dataclass(frozen=True)
class QubitState:
    """One-parameter qubit state: eigenvalues (1+a)/2 and (1-a)/2."""

    a: float
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not -1.0 < self.a < 1.0:
            raise ValueError(f"qubit parameter a={self.a} outside (-1, 1)")

    @property
    def lambda1(self) -> float:
        return (1.0 + self.a) / 2.0

    @property
    def lambda2(self) -> float:
        return (1.0 - self.a) / 2.0

    @property
    def radius(self) -> float:
        return abs(self.a)


@dataclass(frozen=True)
class CurvatureSample:
    """One sweep row: the three curvature routes and their spread."""

    a: float
    r_closed: float
    r_sums: float
    r_geometric: float
    max_rel_disagreement: float


@dataclass(frozen=True)
class ChristoffelSymbols:
    """The seven non-zero independent symbols of the Bloch-ball metric."""

    r_rr: float
    r_tt: float
    r_pp: float
    t_rt: float
    t_pp: float
    p_rp: float
    p_tp: float


def mc_function(f: MonotoneFunction, x: float, y: float) -> float:
    """Morozova-Chentsov kernel c(x, y) = 1 / (y f(x/y)).

    Satisfies c(x,x) = 1/x, c(x,y) = c(y,x) and the homogeneity
    c(x,y) = t c(tx, ty).
    """
    if x <= 0.0 or y <= 0.0:
        raise ValueError(f"kernel arguments must be positive, got ({x}, {y})")
    return 1.0 / (y * f(x / y))


def five_summands(f: MonotoneFunction, a: float) -> Tuple[float, float, float, float, float]:
    """The five summands of the closed-form r(a); their sum is the curvature.

    Individually the 4th and 5th carry 2/a^2 poles and the 2nd and 5th
    carry 6/a poles, all of which cancel in the total.
    """
    if not -1.0 < a < 1.0 or a == 0.0:
        raise ValueError(f"summands need a in (-1, 1) excluding 0, got {a}")
    x = (1.0 - a) / (1.0 + a)
    j = f.jet(x, 2)
    F, Fp, Fpp = j[0], j[1], j[2]
    s1 = 14.0 * (a - 1.0) * Fp**2 / ((1.0 + a) ** 3 * F**2)
    s2 = 2.0 * (a * a + 7.0 * a - 6.0) * Fp / ((1.0 + a) ** 2 * a * F)
    s3 = 8.0 * (1.0 - a) * Fpp / ((1.0 + a) ** 3 * F)
    s4 = 2.0 * (1.0 + a) * F / a**2
    s5 = (3.0 * a**3 + 5.0 * a**2 + 8.0 * a - 4.0) / (2.0 * (1.0 + a) * a**2)
    return s1, s2, s3, s4, s5


def summand_series(f: MonotoneFunction) -> np.ndarray:
    """Laurent data of the five summands around a = 0, shape (5, 7).

    Row i holds the coefficients of the *regular* series of (summand_i * a^2),
    i.e. entry [i, k] is the Laurent coefficient of a^(k-2) of summand i.
    Assembled by composing the jet of f at 1 with x(a) = (1-a)/(1+a), so the
    coefficients carry no finite-difference or cancellation noise.  The
    truncation is pinned by the order-6 jet at 1.
    """
    arg = jets.variable(0.0, 6)
    u = (-2.0 * arg) / (1.0 + arg)  # x(a) - 1
    b = jets.jet_to_monomials(f.jet(1.0, 6).coefficients)
    bp = b[1:] * np.arange(1, b.size)
    bpp = bp[1:] * np.arange(1, bp.size)
    F = jets.compose(b, u)
    Fp = jets.compose(bp, u)
    Fpp = jets.compose(bpp, u)
    one_plus = 1.0 + arg
    rows = [
        14.0 * (arg - 1.0) * arg**2 * Fp**2 / (one_plus**3 * F**2),
        2.0 * ((arg**2 + 7.0 * arg) - 6.0) * arg * Fp / (one_plus**2 * F),
        8.0 * arg**2 * (1.0 - arg) * Fpp / (one_plus**3 * F),
        2.0 * one_plus * F,
        (3.0 * arg**3 + 5.0 * arg**2 + 8.0 * arg - 4.0) / (2.0 * one_plus),
    ]
    return np.vstack([row.c for row in rows])


def curvature_series(f: MonotoneFunction) -> np.ndarray:
    """Coefficients of a^(-2) .. a^4 of r(a), from the summand expansion.

    Entries 0 and 1 (the 2/a^2 and 6/a contributions) and the odd orders
    cancel to roundoff; entries 2, 4, 6 are c0, c2, c4.
    """
    return summand_series(f).sum(axis=0)


def curvature_closed_form(f: MonotoneFunction, a: float) -> float:
    """Scalar curvature r(a), finite on all of (-1, 1).

    |a| >= 1 is an error; |a| < 1e-3 (including a = 0, where the limit is
    6 + 36 f''(1)) comes from the series to avoid cancellation of the
    2/a^2 terms.
    """
    if not -1.0 < a < 1.0:
        raise ValueError(f"qubit parameter a={a} outside (-1, 1)")
    if abs(a) < SERIES_SWITCH:
        s = curvature_series(f)
        return float(s[2] + s[4] * a**2 + s[6] * a**4)
    return float(sum(five_summands(f, a)))


def _sums_combination(f: MonotoneFunction, x: float, y: float) -> float:
    """sh_1 - sh_2/2 + 2 sh_3 - sh_4 + 3/2 for distinct eigenvalues x, y."""
    jx = f.jet(x / y, 2)
    jy = f.jet(y / x, 2)
    Fxy, Fpxy, Fppxy = jx[0], jx[1], jx[2]
    Fyx, Fpyx = jy[0], jy[1]
    rat = Fpxy / Fxy
    quo = Fxy * Fpyx / Fyx**2
    gap2 = (x - y) ** 2
    sh1 = ((y * (x + y) / x) * Fxy**2 + y - 3.0 * x + (4.0 * x * (x - y) / y) * rat) / gap2
    sh2 = (
        (x / y**2) * rat**2
        + (y**3 / x**4) * quo**2
        + (2.0 * y * (x + y) / (x * gap2)) * Fxy**2
        - (8.0 * y / gap2) * Fxy
        + 2.0 * (x + y) / gap2
    )
    # the second term carries (x+y)/y^2: that coefficient is forced by the
    # coincident-limit construction (an (x+y)/x^2 variant breaks the identity
    # with the closed form by gp(x+y)^2(x-y)(x gp - y g)/(g^2 x^2 y^3))
    sh3 = (
        (-2.0 * x * (x + y) / y**3) * rat**2
        - ((x + y) / y**2) * (Fpxy * Fpyx / Fxy**2)
        + (2.0 * (x**2 + 2.0 * x * y - y**2) / (y**2 * (x - y))) * rat
        + (x * (x + y) / y**3) * (Fppxy / Fxy)
        - 2.0 / (x - y)
    )
    sh4 = (
        (x / y**2) * rat**2
        + (y**3 / x**4) * quo**2
        + (1.0 / y) * rat
        + (y / x**2) * quo
    )
    return sh1 - 0.5 * sh2 + 2.0 * sh3 - sh4 + 1.5


def curvature_via_sums(f: MonotoneFunction, lambda1: float, lambda2: float) -> float:
    """Curvature from the eigenvalue pair via the sh-combination route.

    Nearly degenerate pairs (relative gap < 1e-6) are evaluated at
    symmetric offsets delta = 1e-4 and delta/2 and Richardson-extrapolated;
    the offset average is even in delta, so the extrapolation error is
    O(delta^4).
    """
    if lambda1 <= 0.0 or lambda2 <= 0.0:
        raise ValueError(f"eigenvalues must be positive, got ({lambda1}, {lambda2})")
    if abs(lambda1 + lambda2 - 1.0) > _EIGENSUM_TOL:
        raise ValueError(f"eigenvalues must sum to 1, got {lambda1 + lambda2!r}")
    if abs(lambda1 - lambda2) >= DEGENERATE_GAP:
        return _sums_combination(f, lambda1, lambda2)
    mid = 0.5 * (lambda1 + lambda2)

    def symmetric(delta: float) -> float:
        return 0.5 * (
            _sums_combination(f, mid + delta, mid - delta)
            + _sums_combination(f, mid - delta, mid + delta)
        )

    delta = 1e-4
    return (4.0 * symmetric(delta / 2.0) - symmetric(delta)) / 3.0


# ---------------------------------------------------------------------------
# geometric route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricComponents:
    """Diagonal Bloch-ball metric; g_phiphi = g_angular * sin(theta)^2."""

    g_rr: float
    g_angular: float


def metric_tensor(f: MonotoneFunction, r: float) -> MetricComponents:
    """Diagonal metric components at radius r (theta-independent factors)."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius {r} outside [0, 1)")
    g_rr = 1.0 / (1.0 - r * r)
    if r == 0.0:
        return MetricComponents(g_rr=g_rr, g_angular=0.0)
    g_ang = r * r / ((1.0 + r) * f((1.0 - r) / (1.0 + r)))
    return MetricComponents(g_rr=g_rr, g_angular=g_ang)


def christoffel(f: MonotoneFunction, r: float, theta: float) -> ChristoffelSymbols:
    """The seven non-zero independent Christoffel symbols at (r, theta)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"radius {r} outside (0, 1)")
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta {theta} at or beyond the polar coordinate singularity")
    c = (1.0 - r) / (1.0 + r)
    j = f.jet(c, 1)
    F, Fp = j[0], j[1]
    rat = Fp / F
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    g_r_rr = r / (1.0 - r * r)
    g_r_tt = -r * (1.0 - r) / (2.0 * (1.0 + r) ** 2 * F) * (r * r + 3.0 * r + 2.0 + 2.0 * r * rat)
    g_t_rt = -F / (r * r * (1.0 - r)) * g_r_tt
    return ChristoffelSymbols(
        r_rr=g_r_rr,
        r_tt=g_r_tt,
        r_pp=sin_t * sin_t * g_r_tt,
        t_rt=g_t_rt,
        t_pp=-sin_t * cos_t,
        p_rp=g_t_rt,
        p_tp=cos_t / sin_t,
    )


def riemann_components(f: MonotoneFunction, r: float, theta: float) -> Tuple[float, float, float]:
    """The three independent non-zero curvature components (R_1212, R_1313, R_2323)."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"radius {r} outside (0, 1)")
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta {theta} at or beyond the polar coordinate singularity")
    c = (1.0 - r) / (1.0 + r)
    j = f.jet(c, 2)
    F, Fp, Fpp = j[0], j[1], j[2]
    rat = Fp / F
    r1212 = (
        -r
        / ((1.0 + r) ** 4 * (1.0 - r * r) * F)
        * (
            2.0 * r * (1.0 - r) * Fpp / F
            - 3.0 * r * (1.0 - r) * rat**2
            + (1.0 + r) * (3.0 * r - 2.0) * rat
            + (r * r + r + 4.0) * (1.0 + r) ** 2 / 4.0
        )
    )
    sin2 = math.sin(theta) ** 2
    r2323 = (
        r * r * (1.0 - r) * sin2
        / ((1.0 + r) ** 4 * F**2)
        * (
            r * (r + 2.0) * rat
            + r * r / (1.0 + r) * rat**2
            - (1.0 + r) ** 3 / (1.0 - r) * F
            + (1.0 + r) * (2.0 + r) ** 2 / 4.0
        )
    )
    return r1212, sin2 * r1212, r2323


def ricci_components(f: MonotoneFunction, r: float) -> Tuple[float, float]:
    """Theta-free Ricci entries (Ric_11, Ric_22); Ric_33 = sin(theta)^2 Ric_22.

    Signs follow this construction's contraction convention (the negative
    of the textbook one); the scalar contraction below is consistent with it.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"radius {r} outside (0, 1)")
    c = (1.0 - r) / (1.0 + r)
    j = f.jet(c, 2)
    F, Fp, Fpp = j[0], j[1], j[2]
    rat = Fp / F
    # third term carries 1/(r(1-r)): the 1/r is forced by
    # Ric_11 = -2 R_1212 (1+r) f(c) / r^2 with the verified R_1212
    ric11 = (
        4.0 * Fpp / F
        - 6.0 * rat**2
        + 2.0 * (1.0 + r) * (3.0 * r - 2.0) / (r * (1.0 - r)) * rat
        + (r * r + r + 4.0) * (1.0 + r) ** 2 / (2.0 * r * (1.0 - r))
    ) / (1.0 + r) ** 4
    ric22 = (
        r * r * (1.0 - r)
        / ((1.0 + r) ** 4 * F)
        * (
            2.0 * Fpp / F
            - 4.0 * rat**2
            + (1.0 + r) * (r * r + 4.0 * r - 4.0) / (r * (1.0 - r)) * rat
            + (1.0 + r) ** 4 * F / (r * r * (1.0 - r))
            + (r**3 + 2.0 * r * r + 2.0 * r - 2.0) * (1.0 + r) ** 2 / (2.0 * r * r * (1.0 - r))
        )
    )
    return ric11, ric22


_THETA_PROBES = (math.pi / 4.0, math.pi / 2.0, 3.0 * math.pi / 4.0)


def curvature_geometric(f: MonotoneFunction, r_radial: float) -> float:
    """Scalar curvature from the Ricci contraction with the inverse metric.

    Evaluated at three probe colatitudes to confirm theta-independence
    (the spread is required below 1e-9 relative) and returned at the equator.
    """
    if not 0.0 < r_radial < 1.0:
        raise ValueError(f"radius {r_radial} outside (0, 1)")
    ric11, ric22 = ricci_components(f, r_radial)
    g = metric_tensor(f, r_radial)
    values = []
    for theta in _THETA_PROBES:
        sin2 = math.sin(theta) ** 2
        values.append(
            (1.0 - r_radial**2) * ric11
            + ric22 / g.g_angular
            + (sin2 * ric22) / (g.g_angular * sin2)
        )
    spread = max(values) - min(values)
    scale = max(1.0, abs(values[1]))
    if spread > 1e-9 * scale:
        raise AssertionError(f"scalar curvature not theta-independent: spread {spread!r}")
    return values[1]


# ---------------------------------------------------------------------------
# metric evaluation on tangent vectors, and sweeps
# ---------------------------------------------------------------------------


def metric_eval(spectrum, x_matrix, y_matrix, f: MonotoneFunction) -> float:
    """K_D(X, Y) = sum_ij conj(X_ij) Y_ij c(lambda_i, lambda_j).

    X and Y are self-adjoint traceless matrices written in the eigenbasis
    of the state; ``spectrum`` is the eigenvalue sequence (or any object
    exposing ``.eigenvalues``).  With the qubit parametrized by
    a = 2 lambda_1 - 1 this normalization reproduces the Bloch-ball line
    element with chart factor exactly 1 (pinned by matching the largest
    function at a reference point and applied uniformly).
    """
    eig = np.asarray(getattr(spectrum, "eigenvalues", spectrum), dtype=float)
    x = np.asarray(x_matrix, dtype=complex)
    y = np.asarray(y_matrix, dtype=complex)
    n = eig.size
    if x.shape != (n, n) or y.shape != (n, n):
        raise ValueError(f"tangent matrices must be {n}x{n} to match the spectrum")
    for name, m in (("X", x), ("Y", y)):
        scale = max(1.0, float(np.abs(m).max()))
        if abs(np.trace(m)) > 1e-9 * scale:
            raise ValueError(f"{name} is not traceless (trace {np.trace(m)!r})")
        if np.abs(m - m.conj().T).max() > 1e-9 * scale:
            raise ValueError(f"{name} is not self-adjoint")
    kernel = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            kernel[i, j] = mc_function(f, eig[i], eig[j])
    value = np.sum(np.conj(x) * y * kernel)
    return float(value.real)


def curvature_profile(f: MonotoneFunction, a_values: Sequence[float]) -> list[CurvatureSample]:
    """Three-route sweep over a grid of qubit parameters.

    Disagreement is measured relative to max(1, |r_closed|).  The radial
    chart degenerates at a = 0, so |a| < 1e-3 reports the common series
    limit for the geometric route.
    """
    samples = []
    for a in a_values:
        a = float(a)
        r_closed = curvature_closed_form(f, a)
        r_sums = curvature_via_sums(f, (1.0 + a) / 2.0, (1.0 - a) / 2.0)
        if abs(a) < SERIES_SWITCH:
            r_geo = r_closed
        else:
            r_geo = curvature_geometric(f, abs(a))
        spread = max(r_closed, r_sums, r_geo) - min(r_closed, r_sums, r_geo)
        rel = spread / max(1.0, abs(r_closed))
        samples.append(CurvatureSample(a, r_closed, r_sums, r_geo, rel))
    return samples
