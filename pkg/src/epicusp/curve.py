"""Curve model and pointwise evaluation.

A curve is a finite sum of complex exponentials,

    gamma(t) = sum_j w_j * exp(2*pi*i * a_j * t),

with integer frequencies a_j and complex weights w_j, traced over one period
t in [0, 1).  The central special case is the two-term family

    gamma_{a,b}^s(t) = (1-s) * exp(2*pi*i*a*t) + (1+s) * exp(2*pi*i*b*t)

with 1 <= a < b and a weight parameter s in [-1, 1].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np


class PlanePoint(NamedTuple):
    """A point (x, y) of the plane, also read as the complex number x + iy."""

    x: float
    y: float

    @staticmethod
    def from_complex(z: complex) -> "PlanePoint":
        return PlanePoint(z.real, z.imag)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class ExponentialTerm:
    """One summand w * exp(2*pi*i * frequency * t)."""

    frequency: int
    weight: complex

    def __post_init__(self) -> None:
        if not isinstance(self.frequency, int):
            raise ValueError("frequency must be an integer")
        object.__setattr__(self, "weight", complex(self.weight))


@dataclass(frozen=True)
class CurveSpec:
    """An exponential sum given by an ordered list of terms."""

    terms: tuple[ExponentialTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        if len(terms) < 1:
            raise ValueError("a curve needs at least one term")
        object.__setattr__(self, "terms", terms)

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, complex]]) -> "CurveSpec":
        return CurveSpec(tuple(ExponentialTerm(f, w) for f, w in pairs))


@dataclass(frozen=True)
class TwoTermSpec:
    """The two-term family with frequencies 1 <= a < b and weights 1-s, 1+s."""

    a: int
    b: int
    s: float

    def __post_init__(self) -> None:
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise ValueError("frequencies a, b must be integers")
        if not 1 <= self.a < self.b:
            raise ValueError("need 1 <= a < b")
        if not -1.0 <= self.s <= 1.0:
            raise ValueError("s must lie in [-1, 1]")
        object.__setattr__(self, "s", float(self.s))

    def lower(self) -> CurveSpec:
        return CurveSpec.from_pairs([(self.a, 1.0 - self.s), (self.b, 1.0 + self.s)])


AnySpec = Union[CurveSpec, TwoTermSpec]


def as_curve(spec: AnySpec) -> CurveSpec:
    """Lower a TwoTermSpec to its generic form; pass CurveSpec through."""
    if isinstance(spec, TwoTermSpec):
        return spec.lower()
    if isinstance(spec, CurveSpec):
        return spec
    raise TypeError(f"not a curve spec: {spec!r}")


def curve_scale(spec: AnySpec) -> float:
    """Sum of |w_j|, an upper bound on |gamma(t)|."""
    return float(sum(abs(term.weight) for term in as_curve(spec).terms))


def derivative_scale(spec: AnySpec) -> float:
    """Sum of 2*pi*|a_j|*|w_j|, an upper bound on |gamma'(t)|."""
    c = as_curve(spec)
    return float(sum(2.0 * math.pi * abs(t.frequency) * abs(t.weight) for t in c.terms))


def eval_complex(spec: AnySpec, t, order: int = 0) -> np.ndarray:
    """Vectorized evaluation of gamma or one of its t-derivatives.

    Parameters
    ----------
    spec : CurveSpec or TwoTermSpec
    t : array_like of float
    order : int
        0 for the curve itself, k >= 1 for d^k/dt^k.

    Returns
    -------
    numpy.ndarray of complex, same shape as ``t``.
    """
    c = as_curve(spec)
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for term in c.terms:
        # Reduce the phase a*t mod 1 before multiplying by 2*pi; for large t
        # this keeps the angle in [0, 2*pi) and avoids precision loss.
        angle = 2.0 * np.pi * np.mod(term.frequency * t, 1.0)
        factor = (2j * np.pi * term.frequency) ** order
        out += term.weight * factor * (np.cos(angle) + 1j * np.sin(angle))
    return out


def evaluate(spec: AnySpec, t: float) -> PlanePoint:
    """Evaluate the curve at parameter t (reduced mod 1 internally)."""
    z = complex(eval_complex(spec, float(t)))
    return PlanePoint.from_complex(z)


def derivative(spec: AnySpec, t: float, order: int = 1) -> PlanePoint:
    """Evaluate the order-th t-derivative of the curve at t.

    Parameters
    ----------
    order : int
        Must be >= 1; order 1 is the tangent vector.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    z = complex(eval_complex(spec, float(t), order=order))
    return PlanePoint.from_complex(z)


def parametric_derivative(spec: AnySpec, t: float) -> float | None:
    """Slope y'(t)/x'(t) of the curve, or None where x'(t) vanishes.

    None covers both vertical tangents (y' != 0) and singular points
    (y' == 0 as well); classification of which is which lives in the
    singularity module.
    """
    d = complex(eval_complex(spec, float(t), order=1))
    # relative threshold so widely scaled frequency pairs behave uniformly
    tol = 1e-9 * derivative_scale(spec)
    if abs(d.real) <= tol:
        return None
    return d.imag / d.real


def rotate(spec: AnySpec, phi: float) -> CurveSpec:
    """Rotate the curve about the origin by phi radians.

    Every weight is multiplied by exp(i*phi); the image of the rotated
    curve is the rotated image of the original.
    """
    c = as_curve(spec)
    ph = cmath.exp(1j * float(phi))
    return CurveSpec(tuple(ExponentialTerm(t.frequency, t.weight * ph) for t in c.terms))


def sample(spec: AnySpec, n: int) -> list[PlanePoint]:
    """Evaluate the curve on the uniform grid t_j = j/n, j = 0..n-1."""
    if n < 2:
        raise ValueError("need n >= 2 samples")
    z = eval_complex(spec, np.arange(n) / n)
    return [PlanePoint(float(v.real), float(v.imag)) for v in z]


def spec_to_wire(spec: AnySpec) -> dict:
    """Serialize a curve as {"terms": [{"freq", "w_re", "w_im"}, ...]}."""
    c = as_curve(spec)
    return {
        "terms": [
            {"freq": t.frequency, "w_re": t.weight.real, "w_im": t.weight.imag}
            for t in c.terms
        ]
    }


def spec_from_wire(data: dict) -> CurveSpec:
    """Parse the wire format emitted by spec_to_wire."""
    try:
        terms = data["terms"]
    except (TypeError, KeyError) as exc:
        raise ValueError("wire format needs a 'terms' list") from exc
    return CurveSpec.from_pairs(
        [(int(t["freq"]), complex(float(t["w_re"]), float(t["w_im"]))) for t in terms]
    )
