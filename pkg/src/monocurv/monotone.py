"""Operator monotone functions and their symmetric Radon-measure form.

The normalized symmetric operator monotone functions on (0, inf) --
``f(1) = 1`` and ``f(x) = x f(1/x)`` -- are in bijection with the set T of
probability measures on [0, 1] invariant under ``t -> 1 - t``, through

    f(x) = integral of x / ((1 - t) x + t) dmu(t).

This module provides three interchangeable sources for such functions
(a named catalog, a measure, or a user callable), a derivative oracle up
to order 6 (exact for catalog and measure sources), moment functionals of
the pushforward of mu under ``x = 4 t (1 - t)``, and the measure-file
(JSON) interface.

All objects are immutable after construction and every operation is a
pure function; instances can be shared freely across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from . import jets

MASS_TOL = 1e-12
NORMALIZATION_TOL = 1e-12
SYMMETRY_TOL = 1e-10

# Jets within this distance of x = 1 are evaluated by shifting a cached
# high-order expansion at 1; all catalog formulas are analytic on a unit
# disc around 1, so the tail at this radius is far below roundoff.
_SHIFT_RADIUS = 0.25
_SERIES_AT_ONE_ORDER = 72
_TRACE_PAD = 4

# Nodes for fixed 16-point Gauss-Legendre quadrature per density bin;
# exact for the polynomial moment integrands (degree <= 6) and far below
# the stated tolerances for the rational kernel of the representation.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

MAX_JET_ORDER = 6


# ---------------------------------------------------------------------------
# symmetric measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSummary:
    """Moments of the pushforward of mu under x = 4 t (1 - t)."""

    m: float
    var: float
    e2: float
    e3: float


class SymmetricMeasure:
    """Probability measure on [0, 1] symmetric under t -> 1 - t.

    Canonical half-storage: only locations t <= 1/2 are kept.  A stored
    atom ``(t, w)`` with t < 1/2 stands for weight w at t *and* w at
    1 - t; an atom at exactly 1/2 is stored once with its full weight.
    Density bins ``(lo, hi, mass)`` with hi <= 1/2 are piecewise-constant
    and mirrored the same way.

    With ``auto_mirror=True`` (the measure-file default) the input must
    already live in [0, 1/2] and is taken as the canonical half.  With
    ``auto_mirror=False`` the input must be an explicitly symmetric
    atom/bin list, which is verified and then folded.
    """

    __slots__ = ("atoms", "density_bins")

    def __init__(
        self,
        atoms: Iterable[Tuple[float, float]] = (),
        density_bins: Iterable[Tuple[float, float, float]] = (),
        auto_mirror: bool = True,
    ):
        atoms = [(float(t), float(w)) for t, w in atoms]
        bins = [(float(lo), float(hi), float(m)) for lo, hi, m in (density_bins or ())]

        for t, w in atoms:
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"atom location {t} outside [0, 1]")
            if w <= 0.0:
                raise ValueError(f"atom weight {w} must be positive (no renormalizing)")
        for lo, hi, m in bins:
            if not (0.0 <= lo < hi <= 1.0):
                raise ValueError(f"bin [{lo}, {hi}] is not a subinterval of [0, 1]")
            if m < 0.0:
                raise ValueError(f"bin mass {m} must be non-negative")

        if auto_mirror:
            if any(t > 0.5 for t, _ in atoms) or any(hi > 0.5 for _, hi, _ in bins):
                raise ValueError("auto_mirror expects all locations in [0, 0.5]")
            half_atoms, half_bins = atoms, bins
        else:
            half_atoms = _fold_atoms(atoms)
            half_bins = _fold_bins(bins)

        half_atoms = _merge_atoms(half_atoms)
        object.__setattr__(self, "atoms", tuple(sorted(half_atoms)))
        object.__setattr__(self, "density_bins", tuple(sorted(half_bins)))

        mass = self.total_mass()
        if abs(mass - 1.0) > MASS_TOL:
            raise ValueError(f"total mass {mass!r} != 1 (atoms + bins, mirrors included)")

    def __setattr__(self, *_):  # immutability
        raise AttributeError("SymmetricMeasure is immutable")

    def total_mass(self) -> float:
        mass = sum(w if t == 0.5 else 2.0 * w for t, w in self.atoms)
        mass += sum(2.0 * m for _, _, m in self.density_bins)
        return mass

    def expanded_atoms(self) -> Iterator[Tuple[float, float]]:
        """Atoms over the full support [0, 1], mirrors included."""
        for t, w in self.atoms:
            if t == 0.5:
                yield t, w
            else:
                yield t, w
                yield 1.0 - t, w

    def expanded_bins(self) -> Iterator[Tuple[float, float, float]]:
        for lo, hi, m in self.density_bins:
            yield lo, hi, m
            yield 1.0 - hi, 1.0 - lo, m

    def integrate(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integral of g against the measure; g must accept numpy arrays."""
        acc = 0.0
        pts = np.array([t for t, _ in self.expanded_atoms()])
        if pts.size:
            wts = np.array([w for _, w in self.expanded_atoms()])
            acc += float(np.dot(wts, g(pts)))
        for lo, hi, m in self.expanded_bins():
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            nodes = mid + half * _GL_NODES
            # piecewise-constant density m / (hi - lo); GL weights carry half
            acc += m * 0.5 * float(np.dot(_GL_WEIGHTS, g(nodes)))
        return acc

    def __repr__(self) -> str:
        return f"SymmetricMeasure(atoms={self.atoms}, density_bins={self.density_bins})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymmetricMeasure)
            and self.atoms == other.atoms
            and self.density_bins == other.density_bins
        )

    def __hash__(self):
        return hash((self.atoms, self.density_bins))

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "atoms": [{"t": t, "w": w} for t, w in self.atoms],
            "density_bins": [{"lo": lo, "hi": hi, "mass": m} for lo, hi, m in self.density_bins],
            "auto_mirror": True,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymmetricMeasure":
        atoms = [(a["t"], a["w"]) for a in data.get("atoms", [])]
        bins = [(b["lo"], b["hi"], b["mass"]) for b in data.get("density_bins", [])]
        return cls(atoms, bins, auto_mirror=data.get("auto_mirror", True))


def _merge_atoms(atoms):
    merged: dict = {}
    for t, w in atoms:
        merged[t] = merged.get(t, 0.0) + w
    return list(merged.items())


def _fold_atoms(atoms, tol: float = 1e-12):
    """Verify mirror symmetry of a full atom list and keep the t <= 1/2 half."""
    left = [(t, w) for t, w in atoms if t < 0.5 - tol]
    centre = [(0.5, w) for t, w in atoms if abs(t - 0.5) <= tol]
    right = [(1.0 - t, w) for t, w in atoms if t > 0.5 + tol]
    for t, w in left:
        match = [i for i, (s, v) in enumerate(right) if abs(s - t) <= tol and abs(v - w) <= tol]
        if not match:
            raise ValueError(f"atom at t={t} has no mirror partner at {1.0 - t}")
        right.pop(match[0])
    if right:
        raise ValueError(f"unmatched atoms at {[round(1 - t, 12) for t, _ in right]}")
    return left + _merge_atoms(centre)


def _fold_bins(bins, tol: float = 1e-12):
    """Verify mirror symmetry of a full bin list and keep the [0, 1/2] half."""
    left, right, half = [], [], []
    for lo, hi, m in bins:
        if hi <= 0.5 + tol:
            left.append((lo, min(hi, 0.5), m))
        elif lo >= 0.5 - tol:
            right.append((max(lo, 0.5), hi, m))
        elif abs((lo + hi) - 1.0) <= tol:
            # self-symmetric straddling bin: keep the left half at half mass
            half.append((lo, 0.5, 0.5 * m))
        else:
            raise ValueError(f"bin [{lo}, {hi}] straddles 1/2 asymmetrically; split it at 1/2")
    for lo, hi, m in left:
        mlo, mhi = 1.0 - hi, 1.0 - lo
        match = [
            i
            for i, (a, b, v) in enumerate(right)
            if abs(a - mlo) <= tol and abs(b - mhi) <= tol and abs(v - m) <= tol
        ]
        if not match:
            raise ValueError(f"bin [{lo}, {hi}] has no mirror partner at [{mlo}, {mhi}]")
        right.pop(match[0])
    if right:
        raise ValueError(f"unmatched bins on (1/2, 1]: {right}")
    return left + half


def pushforward_moments(mu: SymmetricMeasure) -> MomentSummary:
    """Moments of mu pushed forward through x = 4 t (1 - t).

    The map is invariant under t -> 1 - t, so pushing the full measure
    forward coincides with the doubled-half construction and yields a
    probability measure on [0, 1].
    """
    x = lambda t: 4.0 * t * (1.0 - t)
    m = mu.integrate(x)
    e2 = mu.integrate(lambda t: x(t) ** 2)
    e3 = mu.integrate(lambda t: x(t) ** 3)
    return MomentSummary(m=m, var=e2 - m * m, e2=e2, e3=e3)


def derivatives_at_one(mu: SymmetricMeasure, k: int) -> float:
    """k-th derivative at x = 1 of the function represented by mu.

    Differentiating the representation under the integral sign gives
    f^(k)(1) = (-1)^(k+1) k! * integral of t (1 - t)^(k-1) dmu for k >= 1.
    """
    if k == 0:
        raise ValueError("k = 0 is the function value; use eval_jet")
    if not 1 <= k <= MAX_JET_ORDER:
        raise ValueError(f"derivative order {k} outside 1..{MAX_JET_ORDER}")
    val = mu.integrate(lambda t: t * (1.0 - t) ** (k - 1))
    return (-1.0) ** (k + 1) * math.factorial(k) * val


def load_measure(path: str) -> SymmetricMeasure:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return SymmetricMeasure.from_dict(data)


def dump_measure(mu: SymmetricMeasure, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(mu.to_dict(), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# monotone functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TaylorJet:
    """Derivatives (f(x), f'(x), ..., f^(k)(x)) at a positive base point."""

    base_point: float
    coefficients: Tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> float:
        return self.coefficients[k]


def _catalog_sld(x):
    return (1 + x) / 2


def _catalog_smallest(x):
    return 2 * x / (1 + x)


def _catalog_kubo_mori(x):
    return (x - 1) / jets.log(x)


def _catalog_log_square(x):
    return 2 * (x - 1) ** 2 / ((1 + x) * jets.log(x) ** 2)


def _catalog_sqrt_log(x):
    return 2 * (x - 1) * jets.sqrt(x) / ((1 + x) * jets.log(x))


def _catalog_power(x, alpha):
    return 2 * jets.powr(x, alpha + 0.5) / (1 + jets.powr(x, 2 * alpha))


def _catalog_wyd(x, beta):
    return (
        beta
        * (1 - beta)
        * (x - 1) ** 2
        / ((jets.powr(x, beta) - 1) * (jets.powr(x, 1 - beta) - 1))
    )


#: name -> (formula, needs_parameter); "bures" is an alias of "sld"
CATALOG = {
    "sld": (_catalog_sld, None),
    "bures": (_catalog_sld, None),
    "smallest": (_catalog_smallest, None),
    "kubo_mori": (_catalog_kubo_mori, None),
    "log_square": (_catalog_log_square, None),
    "sqrt_log": (_catalog_sqrt_log, None),
    "power": (_catalog_power, "alpha"),
    "wyd": (_catalog_wyd, "beta"),
}

CATALOG_NAMES = tuple(CATALOG)

#: the seven distinct families, with the default parameters used in sweeps
DEFAULT_CATALOG = (
    ("sld", {}),
    ("smallest", {}),
    ("kubo_mori", {}),
    ("log_square", {}),
    ("sqrt_log", {}),
    ("power", {"alpha": 0.25}),
    ("wyd", {"beta": 0.5}),
)


class MonotoneFunction:
    """A normalized symmetric operator monotone candidate with a jet oracle.

    Three sources:

    * ``catalog(name, ...)`` -- closed-form families; jets are exact
      (series arithmetic, shifted from a cached expansion at 1 when close).
    * ``function_from_measure(mu)`` -- jets are exact integrals of mu.
    * ``MonotoneFunction.from_callable(f)`` -- arbitrary evaluator; jets
      are traced through the series arithmetic when the callable is built
      from overloadable operations, otherwise Richardson-extrapolated
      finite differences (step 1e-3, 3 levels; orders >= 5 are noisy).

    Monotonicity itself is only guaranteed for measure-built functions;
    construction verifies normalization, the symmetry identity and strict
    positivity, which are necessary conditions shared by all sources.
    """

    __slots__ = ("label", "_formula", "_measure", "_value_fn", "_jet_fn", "_series1")

    def __init__(
        self,
        label: str,
        formula: Optional[Callable] = None,
        measure: Optional[SymmetricMeasure] = None,
        value_fn: Optional[Callable[[float], float]] = None,
        jet_fn: Optional[Callable[[float, int], Sequence[float]]] = None,
        validate: bool = True,
    ):
        if formula is None and measure is None and value_fn is None:
            raise ValueError("a monotone function needs a formula, a measure or a callable")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_formula", formula)
        object.__setattr__(self, "_measure", measure)
        object.__setattr__(self, "_value_fn", value_fn)
        object.__setattr__(self, "_jet_fn", jet_fn)

        series1 = None
        if formula is not None:
            series1 = formula(jets.variable(1.0, _SERIES_AT_ONE_ORDER)).c
        elif measure is None and value_fn is not None and jet_fn is None:
            try:  # duck-trace the user callable through the series arithmetic
                candidate = value_fn(jets.variable(1.0, _SERIES_AT_ONE_ORDER))
                if isinstance(candidate, jets.Series):
                    series1 = candidate.c
            except Exception:
                series1 = None
        object.__setattr__(self, "_series1", series1)

        if validate:
            self._check_invariants()

    def __setattr__(self, *_):
        raise AttributeError("MonotoneFunction is immutable")

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_callable(
        cls,
        func: Callable[[float], float],
        label: str = "user",
        jet_fn: Optional[Callable[[float, int], Sequence[float]]] = None,
        validate: bool = True,
    ) -> "MonotoneFunction":
        return cls(label=label, value_fn=func, jet_fn=jet_fn, validate=validate)

    @property
    def measure(self) -> Optional[SymmetricMeasure]:
        return self._measure

    @property
    def is_measure_backed(self) -> bool:
        return self._measure is not None

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: float) -> float:
        if x <= 0.0:
            raise ValueError(f"monotone functions are defined on x > 0, got {x}")
        if self._measure is not None:
            return self._measure.integrate(lambda t: x / ((1.0 - t) * x + t))
        if self._series1 is not None and abs(x - 1.0) <= _SHIFT_RADIUS:
            return float(jets.derivatives_from_series(self._series1, x - 1.0, 0)[0])
        if self._formula is not None:
            return float(self._formula(x))
        return float(self._value_fn(x))

    def jet(self, x: float, order: int) -> TaylorJet:
        """Derivatives f(x), f'(x), ..., f^(order)(x)."""
        if x <= 0.0:
            raise ValueError(f"jet base point must be positive, got {x}")
        if not 0 <= order <= MAX_JET_ORDER:
            raise ValueError(f"jet order {order} outside 0..{MAX_JET_ORDER}")
        if self._measure is not None:
            coeffs = [self(x)]
            for k in range(1, order + 1):
                val = self._measure.integrate(
                    lambda t: t * (1.0 - t) ** (k - 1) / ((1.0 - t) * x + t) ** (k + 1)
                )
                coeffs.append((-1.0) ** (k + 1) * math.factorial(k) * val)
            return TaylorJet(x, tuple(coeffs))
        if self._series1 is not None and abs(x - 1.0) <= _SHIFT_RADIUS:
            d = jets.derivatives_from_series(self._series1, x - 1.0, order)
            return TaylorJet(x, tuple(d))
        if self._formula is not None:
            traced = self._formula(jets.variable(x, order + _TRACE_PAD))
            d = jets.derivatives_from_series(traced.c, 0.0, order)
            return TaylorJet(x, tuple(d))
        if self._jet_fn is not None:
            d = tuple(float(v) for v in self._jet_fn(x, order))
            if len(d) != order + 1:
                raise ValueError("user jet callable returned the wrong number of terms")
            return TaylorJet(x, d)
        try:
            traced = self._value_fn(jets.variable(x, order + _TRACE_PAD))
            if isinstance(traced, jets.Series):
                return TaylorJet(x, tuple(jets.derivatives_from_series(traced.c, 0.0, order)))
        except Exception:
            pass
        d = jets.finite_difference_jet(self._value_fn, x, order)
        return TaylorJet(x, tuple(d))

    # -- invariants -----------------------------------------------------------

    def _check_invariants(self) -> None:
        f1 = self(1.0)
        if abs(f1 - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"{self.label}: f(1) = {f1!r}, normalization violated")
        for x in np.logspace(-3, 3, 13):
            res = symmetry_residual(self, float(x))
            if abs(res) > SYMMETRY_TOL:
                raise ValueError(
                    f"{self.label}: symmetry residual {res!r} at x={x!r} exceeds {SYMMETRY_TOL}"
                )
        for x in np.logspace(-6, 6, 25):
            if self(float(x)) <= 0.0:
                raise ValueError(f"{self.label}: non-positive value at x={x!r}")

    def __repr__(self) -> str:
        return f"MonotoneFunction({self.label!r})"


def catalog(name: str, alpha: Optional[float] = None, beta: Optional[float] = None) -> MonotoneFunction:
    """Named operator monotone function from the built-in catalog.

    ``power`` needs ``alpha`` in [0, 1/2]; ``wyd`` needs ``beta`` in
    (-1, 1) excluding 0.  ``bures`` is an alias of ``sld``.
    """
    if name not in CATALOG:
        raise ValueError(f"unknown catalog function {name!r}; known: {', '.join(CATALOG_NAMES)}")
    formula, param = CATALOG[name]
    if param == "alpha":
        if alpha is None or not 0.0 <= alpha <= 0.5:
            raise ValueError(f"power family needs alpha in [0, 1/2], got {alpha!r}")
        return MonotoneFunction(f"power(alpha={alpha})", formula=lambda x: formula(x, alpha))
    if param == "beta":
        if beta is None or not -1.0 < beta < 1.0 or beta == 0.0:
            raise ValueError(f"wyd family needs beta in (-1, 1) \\ {{0}}, got {beta!r}")
        return MonotoneFunction(f"wyd(beta={beta})", formula=lambda x: formula(x, beta))
    return MonotoneFunction(name, formula=formula)


def default_catalog() -> list:
    """The seven catalog families with sweep-default parameters."""
    return [catalog(name, **params) for name, params in DEFAULT_CATALOG]


def function_from_measure(mu: SymmetricMeasure, label: Optional[str] = None) -> MonotoneFunction:
    """The operator monotone function represented by mu (exact atoms, GL bins)."""
    if label is None:
        label = f"measure({len(mu.atoms)} atoms, {len(mu.density_bins)} bins)"
    return MonotoneFunction(label, measure=mu)


def eval_jet(f: MonotoneFunction, x: float, order: int) -> TaylorJet:
    """Derivative oracle: f(x), f'(x), ..., f^(order)(x), order <= 6."""
    return f.jet(x, order)


def symmetry_residual(f: MonotoneFunction, x: float) -> float:
    """f(x) - x f(1/x); identically zero for admissible functions."""
    if x <= 0.0:
        raise ValueError(f"symmetry residual needs x > 0, got {x}")
    return f(x) - x * f(1.0 / x)
