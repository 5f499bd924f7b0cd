"""Winding numbers about base points, closed-form and numerical.

For the two-term family the winding number about the origin has a closed
form: a for s < 0 and b for s > 0 (the curve passes through the origin at
s = 0, where the winding number is undefined).  The numerical route tracks
the argument of gamma(t) - z0 around one period and rounds the total
turning; the residual of that rounding is reported as a diagnostic.  A
trapezoidal kernel integral provides an independent oracle for the two
integrals appearing in the closed form's derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curve import AnySpec, PlanePoint, TwoTermSpec, curve_scale, eval_complex
from .errors import NearPole, OnCurve, Unresolved

ORIGIN = PlanePoint(0.0, 0.0)


@dataclass(frozen=True)
class WindingResult:
    """Integer winding value with rounding diagnostics."""

    value: int
    residual: float
    samples: int


@dataclass(frozen=True)
class KernelParams:
    """Parameters of the integrand 1 / (beta + alpha * exp(2*pi*i*t))."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise ValueError("beta must be strictly positive")


def winding_closed_form(spec: TwoTermSpec) -> int:
    """Winding number of the two-term curve about the origin.

    Returns a for s < 0 and b for s > 0, including the endpoint weights
    s = -1 and s = 1 where the curve degenerates to a circle traced a
    or b times.

    Raises
    ------
    OnCurve
        If s = 0: the curve passes through the origin and the winding
        number is undefined there.
    """
    if spec.s == 0:
        raise OnCurve("curve passes through the origin at s=0")
    return spec.a if spec.s < 0 else spec.b


def winding_numeric(spec: AnySpec, z0: PlanePoint = ORIGIN, n: int = 4096) -> WindingResult:
    """Winding number about z0 by argument tracking on an n-point grid.

    Accumulates the principal-value angle increments of gamma(t) - z0
    between consecutive grid points and rounds the total turning to an
    integer.  Every increment must stay below pi/2; if the grid is too
    coarse for that, one doubling retry is attempted before giving up.

    Raises
    ------
    OnCurve
        If some grid sample comes within 1e-9 * curve scale of z0.
    Unresolved
        If the turning steps stay too large even after doubling, or the
        total turning is not close to an integer multiple of 2*pi.
    """
    if n < 64:
        raise ValueError("need n >= 64")
    z0c = z0.as_complex() if isinstance(z0, PlanePoint) else complex(z0)
    dist_tol = 1e-9 * curve_scale(spec)
    for m in (n, 2 * n):
        t = np.arange(m + 1) / m  # closing sample repeats t=0 at t=1
        w = eval_complex(spec, t) - z0c
        if np.min(np.abs(w)) <= dist_tol:
            raise OnCurve("base point lies on the curve within tolerance")
        steps = np.angle(w[1:] * np.conj(w[:-1]))
        if np.max(np.abs(steps)) <= np.pi / 2:
            total = float(np.sum(steps))
            value = round(total / (2.0 * np.pi))
            residual = abs(total / (2.0 * np.pi) - value)
            if residual >= 0.25:
                raise Unresolved(f"total turning {total} is far from any integer")
            return WindingResult(value=value, residual=residual, samples=m)
    raise Unresolved("turning steps exceed pi/2 even after grid doubling")


def kernel_integral(p: KernelParams, n: int = 2048) -> complex:
    """Trapezoidal value of the integral of 1/(beta + alpha*e^{2*pi*i*t}).

    The integrand is one-periodic and analytic, so the n-point trapezoid
    rule (the mean over a uniform grid) converges spectrally.  The exact
    value is 1/beta for beta > |alpha| and 0 for beta < |alpha|.

    Raises
    ------
    NearPole
        If beta is within 1e-6 (relative) of |alpha|, where the integrand
        has a pole on the contour.
    """
    span = max(p.beta, abs(p.alpha))
    if abs(p.beta - abs(p.alpha)) < 1e-6 * span:
        raise NearPole("beta too close to |alpha|")
    t = np.arange(n) / n
    return complex(np.mean(1.0 / (p.beta + p.alpha * np.exp(2j * np.pi * t))))


def winding_decomposition_check(spec: TwoTermSpec, n: int = 4096) -> tuple[complex, complex]:
    """The two summand integrals behind the closed-form winding number.

    Factoring each exponential out of gamma'/gamma splits the winding
    integral into

        a * (1-s) * I1,  I1 = integral of 1/((1-s) + (1+s) e^{2*pi*i(b-a)t}),
        b * (1+s) * I2,  I2 = integral of 1/((1-s) e^{2*pi*i(a-b)t} + (1+s)),

    and each integral collapses to 1/(dominant weight) or 0.  Both
    summands are computed by trapezoid quadrature and returned, so the
    algebra can be machine-checked: their sum equals the closed form.

    Raises
    ------
    OnCurve
        If s = 0 (the denominators vanish on the grid and the winding
        number itself is undefined).
    """
    if spec.s == 0:
        raise OnCurve("decomposition undefined at s=0")
    s = spec.s
    t = np.arange(n) / n
    first = spec.a * (1.0 - s) * np.mean(
        1.0 / ((1.0 - s) + (1.0 + s) * np.exp(2j * np.pi * (spec.b - spec.a) * t))
    )
    second = spec.b * (1.0 + s) * np.mean(
        1.0 / ((1.0 - s) * np.exp(2j * np.pi * (spec.a - spec.b) * t) + (1.0 + s))
    )
    return complex(first), complex(second)


def zeros_of_curve(a: int, b: int) -> list[Fraction]:
    """Parameters where the balanced curve (s=0) passes through the origin.

    These are exactly t = h/(2(b-a)) for odd h, giving b-a values in [0, 1).
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    d = 2 * (b - a)
    return [Fraction(h, d) for h in range(1, d, 2)]
