"""Self-contained verification suite for the package's headline claims.

Each criterion is a function returning (passed, detail) so the CLI can
run the whole battery and the test suite can assert the pieces
individually.  Tolerances are deliberately pinned here rather than
imported from the modules under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry, render, singularity, winding
from .curve import TwoTermSpec, eval_complex
from .winding import KernelParams


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _coprime_pairs(limit_b: int) -> list[tuple[int, int]]:
    return [
        (a, b)
        for b in range(2, limit_b + 1)
        for a in range(1, b)
        if math.gcd(a, b) == 1
    ]


def criterion_winding_closed_vs_numeric() -> tuple[bool, str]:
    """Closed-form winding equals argument tracking for a < b <= 6."""
    worst_resid = 0.0
    for b in range(2, 7):
        for a in range(1, b):
            for s in (0.1, -0.1, 0.5, -0.5, 0.9, -0.9, 1.0, -1.0):
                spec = TwoTermSpec(a, b, s)
                expected = a if s < 0 else b
                if winding.winding_closed_form(spec) != expected:
                    return False, f"closed form wrong for {(a, b, s)}"
                result = winding.winding_numeric(spec, n=4096)
                if result.value != expected or result.residual >= 1e-6:
                    return False, f"numeric winding off for {(a, b, s)}: {result}"
                worst_resid = max(worst_resid, result.residual)
    for s, expected in ((-0.3, 1), (0.3, 3)):
        if winding.winding_numeric(TwoTermSpec(1, 3, s)).value != expected:
            return False, f"reference value failed at s={s}"
    return True, f"120 weight/frequency combinations, worst residual {worst_resid:.2e}"


def criterion_kernel_dichotomy() -> tuple[bool, str]:
    """Trapezoidal kernel integral matches 1/beta or 0 on seeded pairs."""
    rng = np.random.default_rng(20240817)
    inside = outside = 0
    worst = 0.0
    while inside < 50 or outside < 50:
        alpha = rng.uniform(-2.0, 2.0)
        beta = rng.uniform(0.05, 3.0)
        if beta > 1.01 * abs(alpha) and inside < 50:
            err = abs(winding.kernel_integral(KernelParams(alpha, beta), 2048) - 1 / beta)
            inside += 1
        elif beta < 0.99 * abs(alpha) and outside < 50:
            err = abs(winding.kernel_integral(KernelParams(alpha, beta), 2048))
            outside += 1
        else:
            continue
        worst = max(worst, err)
        if err >= 1e-10:
            return False, f"kernel error {err:.2e} at alpha={alpha}, beta={beta}"
    return True, f"100 seeded pairs, worst error {worst:.2e}"


def criterion_two_cusp_certificates() -> tuple[bool, str]:
    """find_cusps(1,3) certifies exactly the two known cusps."""
    certs = singularity.find_cusps(1, 3)
    if len(certs) != 2:
        return False, f"expected 2 certificates, got {len(certs)}"
    for cert, t_ref in zip(certs, (0.25, 0.75)):
        if abs(cert.s + 0.5) > 1e-6 or abs(cert.t - t_ref) > 1e-6:
            return False, f"certificate at ({cert.s}, {cert.t}) misses ({-0.5}, {t_ref})"
        if cert.flip_dot > -1 + 1e-6:
            return False, f"flip_dot {cert.flip_dot} not at -1"
        for tangent in (cert.tangent_left, cert.tangent_right):
            if abs(tangent.x) > 1e-4 or abs(abs(tangent.y) - 1.0) > 1e-4:
                return False, f"tangent {tangent} not vertical"
        dot = (
            cert.tangent_left.x * cert.tangent_right.x
            + cert.tangent_left.y * cert.tangent_right.y
        )
        if dot > -1 + 1e-4:
            return False, "one-sided tangents do not oppose"
    return True, "2 certificates at (-0.5, 1/4) and (-0.5, 3/4), vertical flipped tangents"


def criterion_unit_a_locus() -> tuple[bool, str]:
    """find_cusps(1,b) recovers the b-1 predicted cusps for b in 2..8."""
    for b in range(2, 9):
        certs = singularity.find_cusps(1, b)
        locus = singularity.predicted_cusp_locus(1, b)
        if len(certs) != b - 1:
            return False, f"(1,{b}): expected {b - 1} cusps, found {len(certs)}"
        for cert, t_ref in zip(certs, sorted(locus.t_values)):
            if abs(cert.s - float(locus.s_bar)) > 1e-6 or abs(cert.t - float(t_ref)) > 1e-6:
                return False, f"(1,{b}): cusp at ({cert.s}, {cert.t}) off locus"
    return True, "b in 2..8: all b-1 certificates on the predicted locus within 1e-6"


def criterion_general_a_locus() -> tuple[bool, str]:
    """The conjectural locus for a > 1, confirmed but flagged unproven."""
    for a, b in ((2, 3), (2, 5), (3, 5)):
        certs = singularity.find_cusps(a, b)
        locus = singularity.predicted_cusp_locus(a, b)
        if len(certs) != b - a:
            return False, f"({a},{b}): expected {b - a} cusps, found {len(certs)}"
        for cert, t_ref in zip(certs, sorted(locus.t_values)):
            if abs(cert.s - float(locus.s_bar)) > 1e-6 or abs(cert.t - float(t_ref)) > 1e-6:
                return False, f"({a},{b}): cusp at ({cert.s}, {cert.t}) off locus"
            if cert.proven:
                return False, f"({a},{b}): certificate wrongly marked proven"
    return True, "(2,3), (2,5), (3,5) match the conjectural locus, proven=False"


def criterion_loop_birth() -> tuple[bool, str]:
    """The cusp of (1,3) unfolds into a loop exactly above s = -1/2."""
    counts = {
        s: singularity.loop_birth_count(1, 3, s, 0.25, 0.03)
        for s in (-0.495, -0.5, -0.505)
    }
    expected = {-0.495: 3, -0.5: 1, -0.505: 1}
    if counts != expected:
        return False, f"counts {counts} != {expected}"
    return True, "axis crossings 3/1/1 at s = -0.495 / -0.5 / -0.505"


def criterion_symmetry_identities() -> tuple[bool, str]:
    """Rotation and reflection identities at 1e-12 over 10^4 samples."""
    for a, b in _coprime_pairs(10):
        for s in (-0.9, -0.5, 0.0, 0.5, 0.9):
            report = geometry.verify_symmetry(TwoTermSpec(a, b, s), n=10_000)
            if report.rotation_deviation >= 1e-12 or report.reflection_deviation >= 1e-12:
                return False, f"identity deviation too large for {(a, b, s)}: {report}"
            if not report.coprime:
                return False, f"coprimality misdetected for {(a, b)}"
    if geometry.verify_symmetry(TwoTermSpec(2, 4, 0.5)).coprime:
        return False, "(2,4) reported coprime"
    return True, "31 coprime pairs x 5 weights verified; non-coprime flagged"


def criterion_intersection_grid() -> tuple[bool, str]:
    """Balanced-curve intersections live on the rational grid."""
    pairs = [(a, b) for a, b in _coprime_pairs(20) if b * b - a * a <= 40]
    for a, b in pairs:
        if not geometry.grid_intersection_check(a, b):
            return False, f"grid structure violated for ({a},{b})"
    return True, f"{len(pairs)} coprime pairs with b^2-a^2 <= 40 all match the grid oracle"


def criterion_origin_zeros() -> tuple[bool, str]:
    """The balanced curve vanishes exactly at t = h/(2(b-a)), h odd."""
    for b in range(2, 9):
        for a in range(1, b):
            zeros = winding.zeros_of_curve(a, b)
            if len(zeros) != b - a:
                return False, f"({a},{b}): {len(zeros)} zeros, expected {b - a}"
            spec = TwoTermSpec(a, b, 0.0)
            for t in zeros:
                value = abs(complex(eval_complex(spec, float(t))))
                if value >= 1e-12:
                    return False, f"({a},{b}): |gamma({t})| = {value:.2e}"
    return True, "all 28 frequency pairs vanish at the predicted parameters"


def criterion_rotated_closed_forms() -> tuple[bool, str]:
    """Rotated-frame slope matches -cot(4 pi t); undefined-set counts."""
    for k in range(1, 1000):
        t = k / 1000.0
        if min(abs(t - p / 4.0) for p in range(5)) < 5e-3:
            continue
        lhs = singularity.rotated_param_deriv(1, 3, t)
        rhs = -1.0 / math.tan(4.0 * math.pi * t)
        if lhs is None or abs(lhs - rhs) >= 1e-9:
            return False, f"slope mismatch at t={t}: {lhs} vs {rhs}"
    for s, count in ((-0.9, 2), (-0.75, 2), (-0.5, 4), (-0.25, 6), (0.0, 6), (1.0, 6)):
        got = len(singularity.undefined_derivative_set(1, 3, s))
        if got != count:
            return False, f"cardinality {got} != {count} at s={s}"
    return True, "closed-form slope within 1e-9; cardinalities 2/4/6 across s = -1/2"


def criterion_render_determinism() -> tuple[bool, str]:
    """Byte-identical documents; two bold cusp markers for (1,3)."""
    spec = TwoTermSpec(1, 3, -0.5)
    if render.render_curve([spec]) != render.render_curve([spec]):
        return False, "render_curve not deterministic"
    doc1 = render.render_singularity_diagram(1, 3)
    doc2 = render.render_singularity_diagram(1, 3)
    if doc1 != doc2:
        return False, "render_singularity_diagram not deterministic"
    markers = [
        line for line in doc1.splitlines() if 'class="cusp-marker"' in line
    ]
    if len(markers) != 2:
        return False, f"expected 2 bold markers, found {len(markers)}"
    want = {("-0.5", "0.25"), ("-0.5", "0.75")}
    got = set()
    for line in markers:
        s_attr = line.split('data-s="')[1].split('"')[0]
        t_attr = line.split('data-t="')[1].split('"')[0]
        got.add((s_attr, t_attr))
    if got != want:
        return False, f"marker positions {got} != {want}"
    return True, "documents byte-identical; markers at (-0.5, 0.25) and (-0.5, 0.75)"


CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("winding closed form vs numeric", criterion_winding_closed_vs_numeric),
    ("kernel integral dichotomy", criterion_kernel_dichotomy),
    ("two cusp certificates for (1,3)", criterion_two_cusp_certificates),
    ("cusp locus for a=1, b=2..8", criterion_unit_a_locus),
    ("conjectural cusp locus for a>1", criterion_general_a_locus),
    ("loop birth across the threshold", criterion_loop_birth),
    ("dihedral symmetry identities", criterion_symmetry_identities),
    ("self-intersection rational grid", criterion_intersection_grid),
    ("origin zeros of balanced curves", criterion_origin_zeros),
    ("rotated-frame closed forms", criterion_rotated_closed_forms),
    ("rendering determinism and markers", criterion_render_determinism),
]


def run_all() -> list[CriterionResult]:
    """Run every criterion in order and collect results."""
    results = []
    for number, (name, fn) in enumerate(CRITERIA, start=1):
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CriterionResult(number, name, passed, detail))
    return results
