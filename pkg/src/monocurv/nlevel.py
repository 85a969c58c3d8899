"""Scalar curvature for n-level states and the majorization (mixedness) order.

The curvature of a monotone metric at a state depends on the spectrum
alone; it is assembled from a three-argument kernel combination

    h = h1 - h2/2 + 2 h3 - h4

of the Morozova-Chentsov kernel c and its first partial derivative, summed
over eigenvalue triples:

    r(D) = sum_{(i,j,k) not all equal} h(l_i, l_j, l_k) + (n^2-1)(n^2-2)/4.

Coincident triples are the delicate part: pairwise-coincident arguments
route to analytic limit forms (the mixed partial of log c obtained from
the Euler relation c = -x d1c - y d2c), and fully coincident triples use
an even-symmetrized Richardson extrapolation.  Values with a relative gap
between ~1e-6 and ~1e-4 are evaluated generically and lose a few digits
to cancellation; exact repeats are handled exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .monotone import MonotoneFunction
from .qubit import mc_function

#: relative eigenvalue gap below which the analytic limit branch is used
COINCIDENCE_TOL = 1e-6

SPECTRUM_SUM_TOL = 1e-12


class Spectrum:
    """Eigenvalues of a faithful density matrix: positive, summing to 1."""

    __slots__ = ("eigenvalues",)

    def __init__(self, eigenvalues: Iterable[float], sum_tol: float = SPECTRUM_SUM_TOL):
        eig = tuple(float(v) for v in eigenvalues)
        if len(eig) < 2:
            raise ValueError("a spectrum needs at least two eigenvalues")
        if any(v <= 0.0 for v in eig):
            raise ValueError(f"eigenvalues must be strictly positive, got {eig}")
        total = math.fsum(eig)
        if abs(total - 1.0) > sum_tol:
            raise ValueError(f"eigenvalues sum to {total!r}, not 1 (tolerance {sum_tol})")
        object.__setattr__(self, "eigenvalues", eig)

    def __setattr__(self, *_):
        raise AttributeError("Spectrum is immutable")

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def sorted_desc(self) -> Tuple[float, ...]:
        return tuple(sorted(self.eigenvalues, reverse=True))

    def __iter__(self):
        return iter(self.eigenvalues)

    def __eq__(self, other):
        return isinstance(other, Spectrum) and self.eigenvalues == other.eigenvalues

    def __hash__(self):
        return hash(self.eigenvalues)

    def __repr__(self):
        return f"Spectrum{self.eigenvalues}"


# ---------------------------------------------------------------------------
# kernel derivatives and the h combination
# ---------------------------------------------------------------------------


def _kernel_parts(f: MonotoneFunction, x: float, y: float):
    """c(x,y) and the partial-derivative data needed by the limit forms."""
    u = x / y
    j = f.jet(u, 2)
    F, Fp, Fpp = j[0], j[1], j[2]
    c = 1.0 / (y * F)
    d1c = -Fp / (y * y * F * F)
    d11c = (2.0 * Fp * Fp - Fpp * F) / (y**3 * F**3)
    d2c = -(F - u * Fp) / (y * y * F * F)
    d12c = -(2.0 * d1c + x * d11c) / y  # Euler relation c = -x d1c - y d2c
    return c, d1c, d11c, d2c, d12c


def _d1logc(f: MonotoneFunction, x: float, y: float) -> float:
    j = f.jet(x / y, 1)
    return -j[1] / (y * j[0])


def _h_generic(f: MonotoneFunction, x: float, y: float, z: float) -> float:
    """h at pairwise-distinct arguments, straight from the definitions."""
    cxy = mc_function(f, x, y)
    cxz = mc_function(f, x, z)
    cyz = mc_function(f, y, z)
    h1 = (cxy - z * cxz * cyz) / ((x - z) * (y - z) * cxz * cyz)
    h2 = (cxz - cyz) ** 2 / ((x - y) ** 2 * cxy * cxz * cyz)
    gzx = _d1logc(f, z, x)
    gzy = _d1logc(f, z, y)
    h3 = z / (x - y) * (gzx - gzy)
    h4 = z * gzx * gzy
    return h1 - 0.5 * h2 + 2.0 * h3 - h4


def _h_first_pair(f: MonotoneFunction, x: float, y: float) -> float:
    """h(x, x, y): first two arguments coincide, third distinct."""
    c, d1c, _, _, _ = _kernel_parts(f, x, y)
    cyx, d1cyx, _, d2cyx, d12cyx = _kernel_parts(f, y, x)
    h1 = (1.0 - x * y * c * c) / (x * (x - y) ** 2 * c * c)
    h2 = x * (d1c / c) ** 2
    # y * d2 d1 log c (y, x); the mixed partial comes from the Euler relation
    h3 = y * (d12cyx * cyx - d1cyx * d2cyx) / cyx**2
    h4 = y * (d1cyx / c) ** 2
    return h1 - 0.5 * h2 + 2.0 * h3 - h4


def _h_outer_pair(f: MonotoneFunction, x: float, y: float) -> float:
    """h(x, y, x): first and third coincide, middle distinct."""
    c, d1c, _, _, _ = _kernel_parts(f, x, y)
    shared = -(c + 2.0 * x * d1c) / (2.0 * (x - y) * c)  # h1 = h3 here
    h1 = shared
    h2 = ((1.0 - x * c) / ((x - y) * c)) ** 2 / x
    h3 = shared
    h4 = -0.5 * d1c / c
    return h1 - 0.5 * h2 + 2.0 * h3 - h4


def _h_triple(f: MonotoneFunction, s: float) -> float:
    """h(s, s, s) by even-symmetrized Richardson extrapolation."""

    def symmetric(delta: float) -> float:
        return 0.5 * (
            _h_generic(f, s + delta, s, s - delta) + _h_generic(f, s - delta, s, s + delta)
        )

    delta = 1e-3 * s
    value = (4.0 * symmetric(delta / 2.0) - symmetric(delta)) / 3.0
    if not math.isfinite(value):
        raise ArithmeticError(f"triple-coincidence limit failed at eigenvalue {s}")
    return value


def h_value(f: MonotoneFunction, x: float, y: float, z: float) -> float:
    """The kernel combination h(x, y, z) with coincident arguments handled.

    Pairwise coincidences (relative gap < 1e-6) use the analytic limit
    forms; a fully coincident triple uses Richardson extrapolation.
    """
    if x <= 0.0 or y <= 0.0 or z <= 0.0:
        raise ValueError(f"h needs positive arguments, got ({x}, {y}, {z})")
    scale = max(x, y, z)
    tol = COINCIDENCE_TOL * scale
    eq_xy = abs(x - y) < tol
    eq_xz = abs(x - z) < tol
    eq_yz = abs(y - z) < tol
    if eq_xy and eq_xz and eq_yz:
        return _h_triple(f, (x + y + z) / 3.0)
    if eq_xy:
        return _h_first_pair(f, 0.5 * (x + y), z)
    if eq_xz:
        return _h_outer_pair(f, 0.5 * (x + z), y)
    if eq_yz:
        # h symmetric in its first two arguments: (x, y, y) -> (y, x, y)
        return _h_outer_pair(f, 0.5 * (y + z), x)
    return _h_generic(f, x, y, z)


def scalar_curvature(f: MonotoneFunction, spectrum) -> float:
    """Scalar curvature at a state with the given spectrum.

    Sums h over eigenvalue index triples with multiplicity; the fully
    diagonal triples cancel against their explicit subtraction, so they
    are simply skipped.  The additive constant is (n^2-1)(n^2-2)/4.
    """
    spec = spectrum if isinstance(spectrum, Spectrum) else Spectrum(spectrum)
    eig = spec.eigenvalues
    n = spec.n
    cache: dict = {}
    total = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i == j == k:
                    continue
                key = (eig[i], eig[j], eig[k])
                val = cache.get(key)
                if val is None:
                    val = h_value(f, *key)
                    cache[key] = val
                total += val
    return total + 0.25 * (n * n - 1) * (n * n - 2)


def curvature_second_difference(
    f: MonotoneFunction, spectrum, direction: Sequence[float], delta: float
) -> float:
    """r(s + delta d) - 2 r(s) + r(s - delta d) along a trace-preserving direction."""
    spec = spectrum if isinstance(spectrum, Spectrum) else Spectrum(spectrum)
    d = np.asarray(direction, dtype=float)
    if d.size != spec.n:
        raise ValueError("direction dimension does not match the spectrum")
    if abs(d.sum()) > 1e-12:
        raise ValueError("direction must be trace-preserving (components summing to 0)")
    d = d / np.linalg.norm(d)
    base = np.asarray(spec.eigenvalues)
    r0 = scalar_curvature(f, spec)
    rp = scalar_curvature(f, Spectrum(base + delta * d))
    rm = scalar_curvature(f, Spectrum(base - delta * d))
    return rp - 2.0 * r0 + rm


# ---------------------------------------------------------------------------
# majorization order and monotonicity scans
# ---------------------------------------------------------------------------


def is_more_mixed(a, b, tol: float = 1e-12) -> bool:
    """True iff a is more mixed than b (partial-sum dominance of b over a)."""
    sa = a if isinstance(a, Spectrum) else Spectrum(a)
    sb = b if isinstance(b, Spectrum) else Spectrum(b)
    if sa.n != sb.n:
        raise ValueError(f"dimension mismatch: {sa.n} vs {sb.n}")
    pa = np.cumsum(sa.sorted_desc())
    pb = np.cumsum(sb.sorted_desc())
    return bool(np.all(pa <= pb + tol))


@dataclass(frozen=True)
class MonotonicityViolation:
    """A majorization-ordered pair whose curvatures are in the wrong order."""

    pair_index: int
    more_mixed: Spectrum
    less_mixed: Spectrum
    r_more_mixed: float
    r_less_mixed: float

    @property
    def deficit(self) -> float:
        return self.r_less_mixed - self.r_more_mixed


def monotonicity_scan(
    f: MonotoneFunction,
    pairs: Sequence[Tuple],
    tol: float = 1e-9,
) -> list[MonotonicityViolation]:
    """Check r(more mixed) >= r(less mixed) over majorization-ordered pairs.

    Each pair is (D1, D2) with D1 more mixed than D2 (anything else is an
    error).  Returns the violations r(D1) < r(D2) - tol; an empty list
    supports the monotonicity conjecture on the given grid.
    """
    cache: dict = {}

    def curv(s: Spectrum) -> float:
        if s not in cache:
            cache[s] = scalar_curvature(f, s)
        return cache[s]

    violations = []
    for idx, (d1, d2) in enumerate(pairs):
        s1 = d1 if isinstance(d1, Spectrum) else Spectrum(d1)
        s2 = d2 if isinstance(d2, Spectrum) else Spectrum(d2)
        if not is_more_mixed(s1, s2):
            raise ValueError(f"pair {idx} is not majorization-ordered: {s1} vs {s2}")
        r1, r2 = curv(s1), curv(s2)
        if r1 < r2 - tol:
            violations.append(MonotonicityViolation(idx, s1, s2, r1, r2))
    return violations


def qubit_grid_pairs(a_values: Sequence[float]) -> list[Tuple[Spectrum, Spectrum]]:
    """All majorization-ordered qubit spectrum pairs from a grid of |a| values."""
    radii = sorted({abs(float(a)) for a in a_values})
    spectra = [Spectrum(((1.0 + r) / 2.0, (1.0 - r) / 2.0)) for r in radii]
    return [
        (spectra[i], spectra[j])
        for i in range(len(spectra))
        for j in range(i + 1, len(spectra))
    ]
