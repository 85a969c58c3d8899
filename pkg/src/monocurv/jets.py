"""Truncated Taylor-series arithmetic for high-order derivative oracles.

A :class:`Series` holds the coefficients of a truncated power series
``sum_k c[k] * t**k`` in the local variable ``t = x - x0``.  Feeding
``variable(x0, order)`` through an ordinary arithmetic formula (the
functions below dispatch on float vs Series) yields the Taylor jet of the
formula at ``x0`` with no finite-difference noise.  Division strips a
common valuation, so ratios with removable singularities -- e.g.
``(x - 1) / log(x)`` at ``x0 = 1`` -- come out exact.

The same machinery doubles as the Laurent-coefficient engine used by the
curvature-series checks: a summand with a pole of order ``m`` at 0 is
multiplied by ``t**m`` analytically first, turning it into a regular
series whose leading coefficients are the Laurent data.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Union

import numpy as np

Scalar = Union[int, float]


class Series:
    """Truncated power series around a fixed base point."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[float]):
        self.c = np.asarray(coeffs, dtype=float)
        if self.c.ndim != 1 or self.c.size == 0:
            raise ValueError("series needs a 1-d, non-empty coefficient array")

    @property
    def order(self) -> int:
        return self.c.size - 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Series({self.c.tolist()})"

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.c)
            c[0] = float(other)
            return Series(c)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.c.size, o.c.size)
        return Series(self.c[:n] + o.c[:n])

    __radd__ = __add__

    def __neg__(self):
        return Series(-self.c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.c.size, o.c.size)
        return Series(self.c[:n] - o.c[:n])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Series(self.c * float(other))
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.c.size, other.c.size)
        out = np.convolve(self.c[:n], other.c[:n])[:n]
        return Series(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Series(self.c / float(other))
        if not isinstance(other, Series):
            return NotImplemented
        return _divide(self, other)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _divide(o, self)

    def __pow__(self, exponent):
        if isinstance(exponent, int):
            if exponent < 0:
                return 1.0 / (self ** (-exponent))
            out = Series(np.concatenate(([1.0], np.zeros(self.c.size - 1))))
            for _ in range(exponent):
                out = out * self
            return out
        if isinstance(exponent, float):
            return powr(self, exponent)
        return NotImplemented


def variable(x0: float, order: int) -> Series:
    """The identity function x = x0 + t, truncated at the given order."""
    c = np.zeros(order + 1)
    c[0] = float(x0)
    if order >= 1:
        c[1] = 1.0
    return Series(c)


def _valuation(c: np.ndarray) -> int:
    nz = np.nonzero(c)[0]
    return int(nz[0]) if nz.size else c.size


def _divide(num: Series, den: Series) -> Series:
    """Series quotient; a common valuation (exact leading zeros) is cancelled."""
    n = min(num.c.size, den.c.size)
    a, b = num.c[:n], den.c[:n]
    vd = _valuation(b)
    if vd >= n:
        raise ZeroDivisionError("division by a zero series")
    if vd:
        if _valuation(a) < vd:
            raise ZeroDivisionError(
                "quotient has a pole: numerator valuation below denominator's"
            )
        a, b = a[vd:], b[vd:]
        n -= vd
    q = np.empty(n)
    for k in range(n):
        acc = a[k] - np.dot(q[:k], b[k:0:-1])
        q[k] = acc / b[0]
    return Series(q)


# -- elementary functions (float or Series) ------------------------------


def log(x):
    if isinstance(x, Series):
        s = x.c
        if s[0] <= 0.0:
            raise ValueError("log of a series with non-positive constant term")
        n = s.size
        # (log f)' = f'/f, integrated term by term
        dlog = _divide(Series(np.arange(1, n) * s[1:]), Series(s[: n - 1]))
        out = np.empty(n)
        out[0] = math.log(s[0])
        out[1:] = dlog.c[: n - 1] / np.arange(1, n)
        return Series(out)
    return math.log(x)


def exp(x):
    if isinstance(x, Series):
        s = x.c
        n = s.size
        out = np.empty(n)
        out[0] = math.exp(s[0])
        for k in range(1, n):
            out[k] = np.dot(np.arange(1, k + 1) * s[1 : k + 1], out[k - 1 :: -1][:k]) / k
        return Series(out)
    return math.exp(x)


def powr(x, exponent: float):
    """Real power x**exponent for positive x (or a series with c0 > 0)."""
    if isinstance(x, Series):
        return exp(log(x) * exponent)
    return x**exponent


def sqrt(x):
    return powr(x, 0.5)


def compose(outer: Sequence[float], inner: Series) -> Series:
    """outer(u) with u = inner(t); inner must have zero constant term."""
    if inner.c[0] != 0.0:
        raise ValueError("composition needs an inner series with zero constant term")
    out = Series(np.zeros_like(inner.c))
    for b in reversed(np.asarray(outer, dtype=float)):
        out = out * inner + b
    return out


def derivatives_from_series(coeffs: Sequence[float], dx: float, order: int) -> np.ndarray:
    """Derivatives f(x), f'(x), ..., f^(order)(x) from Taylor coefficients at x - dx.

    ``coeffs[m]`` is the monomial coefficient of ``(x - x0)**m``; ``dx = x - x0``
    must lie well inside the convergence disc for the tail to be negligible.
    """
    c = np.asarray(coeffs, dtype=float)
    out = np.empty(order + 1)
    for k in range(order + 1):
        if k >= c.size:
            out[k] = 0.0
            continue
        # sum_m c[m+k] * C(m+k, k) * dx**m, then * k!
        binom = 1.0
        acc = 0.0
        term = 1.0
        for m in range(c.size - k):
            if m > 0:
                binom *= (m + k) / m
                term *= dx
            acc += c[m + k] * binom * term
        out[k] = acc * math.factorial(k)
    return out


def jet_to_monomials(derivs: Sequence[float]) -> np.ndarray:
    """Convert derivative values f^(k)(x0) to monomial coefficients c_k = f^(k)/k!."""
    d = np.asarray(derivs, dtype=float)
    return d / np.array([math.factorial(k) for k in range(d.size)])


# -- finite-difference fallback ------------------------------------------


def finite_difference_jet(
    func: Callable[[float], float],
    x: float,
    order: int,
    h: float = 1e-3,
    levels: int = 3,
) -> np.ndarray:
    """Derivatives of an opaque callable by Richardson-extrapolated central differences.

    Error model c1*h^2 + c2*h^4 + ...; three halving levels eliminate the
    first two terms.  Orders >= 5 carry substantial roundoff (h^-k noise
    amplification) and are best-effort only.
    """
    out = np.empty(order + 1)
    out[0] = func(x)
    for k in range(1, order + 1):
        stencil = [(-1.0) ** j * math.comb(k, j) for j in range(k + 1)]
        offsets = [k / 2.0 - j for j in range(k + 1)]
        vals = []
        for lev in range(levels):
            hh = h / 2.0**lev
            d = sum(w * func(x + o * hh) for w, o in zip(stencil, offsets)) / hh**k
            vals.append(d)
        for m in range(1, levels):
            f = 4.0**m
            vals = [(f * vals[i + 1] - vals[i]) / (f - 1.0) for i in range(len(vals) - 1)]
        out[k] = vals[0]
    return out
