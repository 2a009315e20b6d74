"""Acceptance gate: every criterion at its stated tolerance, one summary line each.

Run ``pytest tests/test_acceptance.py -v``; the "acceptance criteria" section of
the terminal summary lists PASS/FAIL per criterion.
"""

import math

import numpy as np
import pytest

from rectwalk import hitting, lattice, quadrature, scmap, specfun

ALPHA10_EXCESS = 1.20561454706472212e-6
RW_RATIO10 = 3.8375894519599411e-7
RW_ORDER1 = 3.83758797925134e-7
RW_ORDER2 = 3.8375894519594e-7
SAW_QUAD10 = 6.682989935e-5
SAW_COEFF = 1.2263431442
SAW_LEADING10 = 6.6824528e-5
SAW_TWO_TERM10 = 6.682989679e-5


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture(scope="module")
def alpha10():
    return scmap.alpha_from_aspect(10.0)


def test_criterion_01_alpha_at_ten(report, alpha10):
    err = rel(alpha10.excess, ALPHA10_EXCESS)
    ok = err <= 1e-12
    report(1, ok, f"alpha(10) excess {alpha10.excess!r}, rel err {err:.2e} (tol 1e-12)")
    assert ok


def test_criterion_02_alpha_series_orders(report):
    one = abs(scmap.alpha_series(10.0, 1).excess - ALPHA10_EXCESS)
    two = abs(scmap.alpha_series(10.0, 2).excess - ALPHA10_EXCESS)
    ok = one < 1e-12 and two < 1e-18
    report(2, ok, f"|d alpha| one term {one:.2e} (< 1e-12), two terms {two:.2e} (< 1e-18)")
    assert one < 1e-12
    assert two < 1e-18


def test_criterion_03_brownian_closed_form(report, alpha10):
    closed = hitting.ratio_closed_rw(alpha10).value
    from_pe = hitting.ratio_from_probability(hitting.brownian_exact_pe())
    e1, e2 = rel(closed, RW_RATIO10), rel(from_pe, closed)
    ok = e1 <= 1e-12 and e2 <= 1e-12
    report(3, ok, f"closed form rel err {e1:.2e}, exact p_e consistency {e2:.2e} (tol 1e-12)")
    assert e1 <= 1e-12
    assert e2 <= 1e-12


def test_criterion_04_brownian_asymptotics(report):
    e1 = rel(hitting.ratio_rw_asymptotic(10.0, 1).value, RW_ORDER1)
    e2 = rel(hitting.ratio_rw_asymptotic(10.0, 2).value, RW_ORDER2)
    ok = e1 <= 1e-11 and e2 <= 1e-11
    report(4, ok, f"order 1 rel err {e1:.2e}, order 2 rel err {e2:.2e} (tol 1e-11)")
    assert e1 <= 1e-11
    assert e2 <= 1e-11


def test_criterion_05_saw_quadrature(report, alpha10):
    value = hitting.ratio_quadrature(alpha10, hitting.SAW, 1e-10).value
    err = rel(value, SAW_QUAD10)
    ok = err <= 1e-8
    report(5, ok, f"R(10, 5/8) = {value!r}, rel err {err:.2e} (tol 1e-8)")
    assert ok


def test_criterion_06_saw_leading(report):
    coeff = hitting.leading_coefficient(hitting.SAW)
    value = hitting.ratio_asymptotic_leading(10.0, hitting.SAW).value
    e1, e2 = rel(coeff, SAW_COEFF), rel(value, SAW_LEADING10)
    ok = e1 <= 1e-9 and e2 <= 1e-7
    report(6, ok, f"coefficient rel err {e1:.2e} (tol 1e-9), value rel err {e2:.2e} (tol 1e-7)")
    assert e1 <= 1e-9
    assert e2 <= 1e-7


def test_criterion_07_saw_two_term(report, alpha10):
    two = hitting.ratio_asymptotic_two_term(10.0, hitting.SAW).value
    lead = hitting.ratio_asymptotic_leading(10.0, hitting.SAW).value
    quad = hitting.ratio_quadrature(alpha10, hitting.SAW, 1e-10).value
    err = rel(two, SAW_TWO_TERM10)
    better = rel(two, quad) < rel(lead, quad)
    ok = err <= 1e-9 and better
    report(
        7, ok,
        f"two-term rel err {err:.2e} (tol 1e-9); deviation from quadrature "
        f"{rel(two, quad):.2e} vs leading {rel(lead, quad):.2e}",
    )
    assert err <= 1e-9
    assert better


def test_criterion_08_square_symmetry(report):
    m = scmap.alpha_from_aspect(1.0)
    devs = {b: abs(hitting.ratio_quadrature(m, b).value - 1.0) for b in (0.25, 0.625, 1.0, 1.5)}
    worst = max(devs.values())
    ok = worst <= 1e-9
    report(8, ok, f"worst |R(1, b) - 1| over b in {{0.25, 5/8, 1, 1.5}}: {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_09_coefficient_identity(report):
    rng = np.random.default_rng(20120807)
    worst = 0.0
    for b in rng.uniform(0.1, 3.0, 20):
        gamma_form = (
            2 ** (2 * b) * specfun.gamma_fn((1 + b) / 2) ** 2
            / (specfun.gamma_fn(1 + b / 2) * specfun.gamma_fn(b / 2))
        )
        worst = max(worst, rel(gamma_form, 2 ** (2 * b + 1) * hitting.lambda_const(b) / b))
    ok = worst <= 1e-13
    report(9, ok, f"worst relative mismatch on 20 random b: {worst:.2e} (tol 1e-13)")
    assert ok


def test_criterion_10_lattice_oracle(report):
    strip = lattice.discrete_harmonic_ratio(lattice.GridSpec(3, 1))
    e_strip = abs(strip.ratio - 1 / 6)
    ref2 = hitting.ratio_closed_rw(scmap.alpha_from_aspect(2.0)).value
    ext = lattice.refine_extrapolate(2.0, [lattice.grid_for_aspect(2.0, h) for h in (19, 39, 79)])
    e2 = rel(ext, ref2)
    ref10 = hitting.ratio_closed_rw(scmap.alpha_from_aspect(10.0)).value
    e10 = rel(lattice.discrete_harmonic_ratio(lattice.grid_for_aspect(10.0, 79)).ratio, ref10)
    ok = e_strip <= 1e-12 and e2 <= 3e-3 and e10 <= 0.25
    report(
        10, ok,
        f"3x1 strip |R - 1/6| {e_strip:.1e}; aspect-2 extrapolation {e2:.2e} (tol 3e-3); "
        f"aspect-10 h=79 {e10:.2e} (tol 0.25)",
    )
    assert e_strip <= 1e-12
    assert e2 <= 3e-3
    assert e10 <= 0.25


def _theta_identity() -> float:
    rng = np.random.default_rng(1)
    worst = 0.0
    for q in rng.uniform(0.0, 0.9, 50):
        t2, t3, t4 = specfun.theta2(q), specfun.theta3(q), specfun.theta4(q)
        worst = max(worst, rel(t2**4 + t4**4, t3**4))
    return worst


def _beta_exactness() -> float:
    worst = 0.0
    for s in (-0.4, -3 / 16, -0.1, 0.25):
        got = quadrature.integrate_de(lambda x, lo, hi: (lo * hi) ** s, 0.0, 1.0, 1e-13, offsets=True).value
        worst = max(worst, rel(got, math.gamma(s + 1) ** 2 / math.gamma(2 * s + 2)))
    return worst


def test_criterion_11_property_suites(report):
    theta = _theta_identity()
    k_values = [specfun.elliptic_K(k) for k in np.linspace(0.0, 0.999999, 400)]
    k_mono = bool(np.all(np.diff(k_values) > 0))
    beta = _beta_exactness()
    r_mono = all(
        bool(np.all(np.diff([
            hitting.ratio_quadrature(scmap.alpha_from_aspect(r), b).value for r in (1, 2, 3, 5, 10)
        ]) < 0))
        for b in (hitting.SAW, hitting.BROWNIAN)
    )
    trip = max(
        rel(hitting.ratio_from_probability(hitting.end_probability(R)), R) for R in (1e-9, 1e-4, 1.0, 100.0)
    )
    ok = theta <= 1e-13 and k_mono and beta <= 1e-11 and r_mono and trip <= 4 * np.finfo(float).eps
    report(
        11, ok,
        f"theta identity {theta:.1e}, K increasing {k_mono}, Beta exactness {beta:.1e}, "
        f"R decreasing in r {r_mono}, probability round trip {trip:.1e}",
    )
    assert theta <= 1e-13
    assert k_mono
    assert beta <= 1e-11
    assert r_mono
    assert trip <= 4 * np.finfo(float).eps
