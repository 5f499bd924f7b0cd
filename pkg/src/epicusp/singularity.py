"""Singular points of the two-term family: location and certification.

The family gamma_{a,b}^s has singular points (gamma'(t) = 0) exactly on the
locus s = (a-b)/(a+b), t = h/(2(b-a)) with h odd; this is proven for a = 1
and conjectural (numerically confirmed here) for a > 1.  A singular point
is certified as a cusp by checking that the one-sided unit tangents flip
direction across it: their dot product extrapolates to -1 as the offset
shrinks.  The module also carries the rotation construction that places a
chosen cusp on the vertical axis, the closed-form parametric derivative in
that rotated frame, and the loop-birth count that detects the small loop a
cusp unfolds into.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .curve import (
    AnySpec,
    PlanePoint,
    TwoTermSpec,
    derivative_scale,
    eval_complex,
)
from .errors import NotSingular, WindowTooWide
from .parallel import map_ordered

# |gamma'| below this fraction of its natural scale counts as vanishing
SINGULAR_RTOL = 1e-7
CUSP_FLIP_TOL = 1e-6


class PointKind(enum.Enum):
    REGULAR = "Regular"
    VERTICAL_TANGENT = "VerticalTangent"
    HORIZONTAL_TANGENT = "HorizontalTangent"
    SINGULAR = "Singular"


@dataclass(frozen=True)
class CuspCertificate:
    """Evidence that the curve has a cusp at parameter t.

    The one-sided unit tangents are limits from below and above t; at a
    cusp they point in opposite directions, so their dot product is -1.
    ``proven`` records whether the location is covered by the proven part
    of the cusp locus (a = 1) rather than the conjectural extension.
    """

    s: float
    t: float
    tangent_left: PlanePoint
    tangent_right: PlanePoint
    flip_dot: float
    proven: bool = False


@dataclass(frozen=True)
class CuspLocus:
    """Predicted cusp parameters of the family for fixed (a, b)."""

    s_bar: Fraction
    t_values: tuple[Fraction, ...]
    proven: bool


def classify_point(spec: AnySpec, t: float) -> PointKind:
    """Classify t as regular, vertical/horizontal tangent, or singular."""
    d = complex(eval_complex(spec, float(t), order=1))
    tol = SINGULAR_RTOL * derivative_scale(spec)
    small_x, small_y = abs(d.real) <= tol, abs(d.imag) <= tol
    if small_x and small_y:
        return PointKind.SINGULAR
    if small_x:
        return PointKind.VERTICAL_TANGENT
    if small_y:
        return PointKind.HORIZONTAL_TANGENT
    return PointKind.REGULAR


def _unit_tangent(spec: AnySpec, t: float) -> complex:
    d = complex(eval_complex(spec, t, order=1))
    return d / abs(d)


def certify_cusp(spec: AnySpec, t: float, delta: float = 1e-3) -> Optional[CuspCertificate]:
    """Certify a singular point as a cusp via the unit-tangent flip.

    One-sided unit tangents are evaluated at t +- delta/4^k for four
    shrinking levels.  At a genuine cusp the left/right tangent dot
    product behaves like -cos(c*delta), so Richardson extrapolation of
    consecutive levels must land at -1; at a smooth-but-nearly-singular
    point it tends to +1 instead.  Returns None when certification fails
    (for example at a higher-order singularity).

    Parameters
    ----------
    spec : CurveSpec or TwoTermSpec
    t : float
        Parameter of the candidate point; must classify as Singular.
    delta : float
        Largest one-sided offset, in (0, 1e-3].

    Raises
    ------
    NotSingular
        If the point does not classify as Singular.
    """
    if not 0.0 < delta <= 1e-3:
        raise ValueError("delta must lie in (0, 1e-3]")
    if classify_point(spec, t) is not PointKind.SINGULAR:
        raise NotSingular(f"no singular point at t={t}")

    offsets = [delta / 4**k for k in range(4)]
    left = [_unit_tangent(spec, t - d) for d in offsets]
    right = [_unit_tangent(spec, t + d) for d in offsets]
    flips = [(l.conjugate() * r).real for l, r in zip(left, right)]

    # flip_dot(delta) = -1 + O(delta^2): the fourth-order extrapolant of
    # each consecutive level pair removes that error to O(delta^4)
    for coarse, fine in zip(flips, flips[1:]):
        if (16.0 * fine - coarse) / 15.0 > -1.0 + CUSP_FLIP_TOL:
            return None

    # the one-sided tangent angles drift linearly in delta, so a linear
    # Richardson step on the two smallest offsets cancels the drift
    tl = 4.0 * left[3] - left[2]
    tr = 4.0 * right[3] - right[2]
    tl, tr = tl / abs(tl), tr / abs(tr)
    a_freq = getattr(spec, "a", None)
    return CuspCertificate(
        s=float(getattr(spec, "s", math.nan)),
        t=float(t),
        tangent_left=PlanePoint.from_complex(tl),
        tangent_right=PlanePoint.from_complex(tr),
        flip_dot=(tl.conjugate() * tr).real,
        proven=(a_freq == 1),
    )


def predicted_cusp_locus(a: int, b: int) -> CuspLocus:
    """Predicted cusp parameters: s = (a-b)/(a+b), t = h/(2(b-a)), h odd.

    The locus is proven for a = 1 and conjectural for a > 1; the proven
    flag records which case applies.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    d = 2 * (b - a)
    return CuspLocus(
        s_bar=Fraction(a - b, a + b),
        t_values=tuple(Fraction(h, d) for h in range(1, d, 2)),
        proven=(a == 1),
    )


def _newton_refine_singular(a: int, b: int, s0: float, t0: float) -> Optional[tuple[float, float]]:
    """Damped Newton on gamma'(s, t) = 0 from a grid seed; None if it stalls."""
    ca, cb = 2j * np.pi * a, 2j * np.pi * b
    dscale = 2.0 * np.pi * (a + b) * 2.0

    def gprime(s, t):
        ea = np.exp(2j * np.pi * a * t)
        eb = np.exp(2j * np.pi * b * t)
        return (1.0 - s) * ca * ea + (1.0 + s) * cb * eb, ea, eb

    s, t = s0, t0
    g, ea, eb = gprime(s, t)
    for _ in range(50):
        if abs(g) < 1e-12 * dscale:
            return s, t % 1.0
        dg_ds = -ca * ea + cb * eb
        dg_dt = (1.0 - s) * ca * (2j * np.pi * a) * ea + (1.0 + s) * cb * (2j * np.pi * b) * eb
        jac = np.array([[dg_ds.real, dg_dt.real], [dg_ds.imag, dg_dt.imag]])
        rhs = -np.array([g.real, g.imag])
        try:
            step = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            # near-singular Jacobian: take the least-squares direction
            step = np.linalg.lstsq(jac, rhs, rcond=None)[0]
        lam = 1.0
        while lam > 1.0 / 64.0:
            s_new = min(max(s + lam * step[0], -1.0 + 1e-6), 1.0 - 1e-6)
            t_new = t + lam * step[1]
            g_new, ea_new, eb_new = gprime(s_new, t_new)
            if abs(g_new) < (1.0 - 0.5 * lam) * abs(g) + 1e-15:
                s, t, g, ea, eb = s_new, t_new, g_new, ea_new, eb_new
                break
            lam *= 0.5
        else:
            return None
    return (s, t % 1.0) if abs(g) < 1e-12 * dscale else None


def find_cusps(a: int, b: int, s_grid: int = 256, t_grid: int = 256) -> list[CuspCertificate]:
    """Locate and certify all cusps of the family over s in (-1, 1).

    A vectorized scan of |gamma'|^2 over an (s, t) grid yields local
    minima as seeds; each seed is refined by damped Newton on the two
    real equations x'(s,t) = y'(s,t) = 0, refined points are deduplicated,
    and survivors must pass certify_cusp.  Certificates come back sorted
    by t.  Seeds whose refinement fails to converge are dropped.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    if s_grid < 64 or t_grid < 64:
        raise ValueError("need grids >= 64")

    # endpoints are excluded: at s = +-1 the curve is a circle and
    # |gamma'| is constant, so the scan would see a flat landscape
    ss = np.linspace(-1.0 + 1e-3, 1.0 - 1e-3, s_grid)
    tt = np.arange(t_grid) / t_grid
    S, T = np.meshgrid(ss, tt, indexing="ij")
    G = (1.0 - S) * (2j * np.pi * a) * np.exp(2j * np.pi * a * T) + (
        1.0 + S
    ) * (2j * np.pi * b) * np.exp(2j * np.pi * b * T)
    D = np.abs(G) ** 2

    dscale = 2.0 * np.pi * (a + b) * 2.0
    threshold = (0.05 * dscale) ** 2
    is_min = D < threshold
    for ds, dt in ((di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)):
        shifted = np.roll(D, (ds, dt), axis=(0, 1))
        if ds == -1:
            shifted[-1, :] = np.inf  # s does not wrap
        elif ds == 1:
            shifted[0, :] = np.inf
        is_min &= D <= shifted
    seeds = [(float(S[i, j]), float(T[i, j])) for i, j in zip(*np.nonzero(is_min))]

    outcomes = map_ordered(
        lambda seed: _newton_refine_singular(a, b, seed[0], seed[1]), sorted(seeds)
    )
    refined = [hit for hit in outcomes if hit is not None]

    # cluster refined points; duplicates from adjacent seeds collapse
    refined.sort()
    kept: list[tuple[float, float]] = []
    for s, t in refined:
        if any(abs(s - s2) < 1e-4 and _circ_dist(t, t2) < 1e-4 for s2, t2 in kept):
            continue
        kept.append((s, t))

    certs = []
    delta = min(1e-3, 0.01 / (a + b))
    for s, t in kept:
        cert = certify_cusp(TwoTermSpec(a, b, s), t, delta=delta)
        if cert is not None:
            certs.append(cert)
    return sorted(certs, key=lambda c: c.t)


def _circ_dist(x: float, y: float) -> float:
    d = abs(x - y) % 1.0
    return min(d, 1.0 - d)


def rotation_angle(a: int, b: int) -> float:
    """Angle pi*(1/2 - 1/(b-a)) placing the first cusp on the vertical axis."""
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    return math.pi * (0.5 - 1.0 / (b - a))


def rotated_param_deriv(a: int, b: int, t: float) -> float | None:
    """Closed-form slope of the rotated curve at the cusp weight s = (a-b)/(a+b).

    Equals -tan(pi*(1/(b-a) - (a+b)*t)); returns None at the tangent
    poles, where the rotated curve has a vertical tangent or cusp.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    u = 1.0 / (b - a) - (a + b) * float(t)
    # pole whenever the tangent argument hits pi/2 mod pi
    frac = u - 0.5
    if abs(frac - round(frac)) < 1e-9:
        return None
    return -math.tan(math.pi * u)


def loop_birth_count(
    a: int,
    b: int,
    s: float,
    t_center: float | None = None,
    half_width: float | None = None,
) -> int:
    """Sign changes of the rotated x-component near one predicted cusp.

    The window [t_center - half_width, t_center + half_width] is examined
    on a 1001-point grid after rotating the curve so the predicted cusp
    inside the window sits on the vertical axis.  One sign change means
    the curve crosses the axis once (no loop); three mean a small loop
    has been born.  Exact zeros on the grid are skipped so the count is
    stable at the transition weight itself.

    Raises
    ------
    WindowTooWide
        If two or more predicted cusp parameters fall inside the window.
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    if t_center is None:
        t_center = 1.0 / (2 * (b - a))
    if half_width is None:
        half_width = 0.75 / (2 * (b - a) * (a + b))

    predicted = [(2 * k + 1) / (2 * (b - a)) for k in range(b - a)]
    inside = [tk for tk in predicted if _circ_dist(tk, t_center) <= half_width]
    if len(inside) >= 2:
        raise WindowTooWide(f"{len(inside)} predicted cusps in the window")

    # rotate so the nearest predicted cusp lands on the vertical axis;
    # cusp k is the rotation of cusp 0 by 2*pi*a*k/(b-a)
    k = min(range(b - a), key=lambda i: _circ_dist(predicted[i], t_center))
    phi = rotation_angle(a, b) - 2.0 * math.pi * a * k / (b - a)

    t = np.linspace(t_center - half_width, t_center + half_width, 1001)
    x = (eval_complex(TwoTermSpec(a, b, s), t) * np.exp(1j * phi)).real
    signs = np.sign(x)
    signs = signs[signs != 0.0]
    return int(np.sum(signs[:-1] != signs[1:]))


def undefined_derivative_set(a: int, b: int, s: float) -> list[float]:
    """Parameters in [0, 1) where the parametric derivative is undefined.

    For (a, b) = (1, 3) the set is known in closed form: t = 0 and 1/2
    always, plus the four solutions of 4*pi*t = +-arccos((-2-s)/(3(1+s)))
    mod pi once s >= -1/2 (they coincide in pairs exactly at s = -1/2).
    Other frequency pairs fall back to numerical root finding on x'(t).
    """
    if not 1 <= a < b:
        raise ValueError("need 1 <= a < b")
    if not -1.0 <= s <= 1.0:
        raise ValueError("s must lie in [-1, 1]")
    if (a, b) == (1, 3):
        values = [0.0, 0.5]
        if s >= -0.5:
            tbar = math.acos((-2.0 - s) / (3.0 * (1.0 + s))) / (4.0 * math.pi)
            for v in (tbar, 0.5 - tbar, 0.5 + tbar, 1.0 - tbar):
                v %= 1.0
                if all(abs(v - w) > 1e-12 for w in values):
                    values.append(v)
        return sorted(values)
    return _x_prime_zeros(TwoTermSpec(a, b, s))


def _x_prime_zeros(spec: TwoTermSpec) -> list[float]:
    """Zeros of x'(t) on [0, 1) by sign-change bracketing and brentq."""
    n = 256 * (spec.a + spec.b)

    def xp(t):
        return eval_complex(spec, t, order=1).real

    t = np.arange(n + 1) / n
    v = xp(t)
    roots = []
    for i in range(n):
        if v[i] == 0.0:
            roots.append(float(t[i]))
        elif v[i] * v[i + 1] < 0.0:
            roots.append(brentq(lambda u: float(xp(u)), t[i], t[i + 1], xtol=1e-13))
    out: list[float] = []
    for r in roots:
        r %= 1.0
        if all(_circ_dist(r, q) > 1e-9 for q in out):
            out.append(r)
    return sorted(out)
