"""Reference-value checks run by ``rectwalk validate``.

Each check returns a :class:`Check` with the measured value, the reference
and the tolerance it was held to.  ``quick`` keeps lattice grids at height 79
or below; ``full`` adds a finer extrapolation sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hitting, lattice, quadrature, scmap, specfun

__all__ = ["Check", "run_checks", "LEVELS"]

LEVELS = ("quick", "full")

ALPHA10_EXCESS = 1.20561454706472212e-6
RW_RATIO10 = 3.8375894519599411176841999126970034e-7
RW_ORDER1 = 3.83758797925134e-7
RW_ORDER2 = 3.8375894519594e-7
SAW_QUAD10 = 6.682989935e-5
SAW_COEFF = 1.2263431442
SAW_LEADING10 = 6.6824528e-5
SAW_TWO_TERM10 = 6.682989679e-5


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    measured: float
    expected: float
    tolerance: float
    detail: str = ""

    def __post_init__(self):
        # numpy scalars would leak into JSON output otherwise
        object.__setattr__(self, "passed", bool(self.passed))
        for name in ("measured", "expected", "tolerance"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def as_record(self) -> dict:
        return {
            "kind": "criterion",
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _rel_check(n, name, measured, expected, tol, detail=""):
    return Check(n, name, _rel(measured, expected) <= tol, measured, expected, tol, detail)


def _alpha_checks() -> list[Check]:
    m = scmap.alpha_from_aspect(10.0)
    out = [_rel_check(1, "alpha excess at r=10", m.excess, ALPHA10_EXCESS, 1e-12)]
    lead = scmap.alpha_series(10.0, terms=1).excess
    two = scmap.alpha_series(10.0, terms=2).excess
    err_lead = abs(lead - ALPHA10_EXCESS)
    err_two = abs(two - ALPHA10_EXCESS)
    out.append(Check(2, "alpha series, one term (|d alpha|)", err_lead < 1e-12, lead, ALPHA10_EXCESS, 1e-12))
    out.append(Check(2, "alpha series, two terms (|d alpha|)", err_two < 1e-18, two, ALPHA10_EXCESS, 1e-18))
    return out


def _brownian_checks() -> list[Check]:
    m = scmap.alpha_from_aspect(10.0)
    closed = hitting.ratio_closed_rw(m).value
    from_pe = hitting.ratio_from_probability(hitting.brownian_exact_pe())
    return [
        _rel_check(3, "closed-form Brownian ratio at r=10", closed, RW_RATIO10, 1e-12),
        _rel_check(3, "exact p_e converted to a ratio", from_pe, closed, 1e-12),
        _rel_check(4, "Brownian asymptotic, order 1", hitting.ratio_rw_asymptotic(10.0, 1).value, RW_ORDER1, 1e-11),
        _rel_check(4, "Brownian asymptotic, order 2", hitting.ratio_rw_asymptotic(10.0, 2).value, RW_ORDER2, 1e-11),
    ]


def _saw_checks() -> list[Check]:
    m = scmap.alpha_from_aspect(10.0)
    quad = hitting.ratio_quadrature(m, hitting.SAW).value
    lead = hitting.ratio_asymptotic_leading(10.0, hitting.SAW).value
    two = hitting.ratio_asymptotic_two_term(10.0, hitting.SAW).value
    out = [
        _rel_check(5, "SAW quadrature at r=10", quad, SAW_QUAD10, 1e-8),
        _rel_check(6, "SAW leading coefficient", hitting.leading_coefficient(hitting.SAW), SAW_COEFF, 1e-9),
        _rel_check(6, "SAW leading value at r=10", lead, SAW_LEADING10, 1e-7),
        _rel_check(7, "SAW two-term value at r=10", two, SAW_TWO_TERM10, 1e-9),
    ]
    dev_two, dev_lead = _rel(two, SAW_QUAD10), _rel(lead, SAW_QUAD10)
    out.append(
        Check(7, "two-term beats leading against quadrature", dev_two < dev_lead, dev_two, dev_lead, 0.0)
    )
    return out


def _symmetry_checks() -> list[Check]:
    m = scmap.alpha_from_aspect(1.0)
    return [
        Check(
            8,
            f"square symmetry, b={b:g}",
            abs(v - 1.0) <= 1e-9,
            v,
            1.0,
            1e-9,
        )
        for b in (0.25, 0.625, 1.0, 1.5)
        for v in [hitting.ratio_quadrature(m, b).value]
    ]


def _coefficient_identity(rng: np.random.Generator) -> list[Check]:
    worst = 0.0
    for b in rng.uniform(0.1, 3.0, 20):
        via_lambda = 2.0 ** (2 * b + 1) * hitting.lambda_const(b) / b
        worst = max(worst, _rel(hitting.leading_coefficient(b), via_lambda))
    return [Check(9, "Gamma / Lambda coefficient identity (worst of 20)", worst <= 1e-13, worst, 0.0, 1e-13)]


def _lattice_checks(level: str) -> list[Check]:
    strip = lattice.discrete_harmonic_ratio(lattice.GridSpec(3, 1))
    out = [Check(10, "3x1 strip ratio", abs(strip.ratio - 1 / 6) <= 1e-12, strip.ratio, 1 / 6, 1e-12)]
    ref2 = hitting.ratio_closed_rw(scmap.alpha_from_aspect(2.0)).value
    heights = (19, 39, 79)
    ext = lattice.refine_extrapolate(2.0, [lattice.grid_for_aspect(2.0, h) for h in heights])
    out.append(_rel_check(10, "aspect-2 Richardson limit, heights 19/39/79", ext, ref2, 3e-3))
    ref10 = hitting.ratio_closed_rw(scmap.alpha_from_aspect(10.0)).value
    g = lattice.discrete_harmonic_ratio(lattice.grid_for_aspect(10.0, 79))
    out.append(_rel_check(10, "aspect-10 lattice ratio, height 79", g.ratio, ref10, 0.25))
    if level == "full":
        fine = (39, 79, 159)
        ext = lattice.refine_extrapolate(2.0, [lattice.grid_for_aspect(2.0, h) for h in fine])
        out.append(_rel_check(10, "aspect-2 Richardson limit, heights 39/79/159", ext, ref2, 3e-3))
        g = lattice.discrete_harmonic_ratio(lattice.grid_for_aspect(10.0, 159))
        out.append(_rel_check(10, "aspect-10 lattice ratio, height 159", g.ratio, ref10, 0.25))
    return out


def _property_checks(rng: np.random.Generator) -> list[Check]:
    out = []
    worst = 0.0
    for q in rng.uniform(0.0, 0.9, 20):
        t2, t3, t4 = specfun.theta2(q), specfun.theta3(q), specfun.theta4(q)
        worst = max(worst, _rel(t2**4 + t4**4, t3**4))
    out.append(Check(11, "Jacobi theta identity (worst of 20)", worst <= 1e-13, worst, 0.0, 1e-13))

    ks = np.linspace(0.0, 0.999999, 200)
    values = [specfun.elliptic_K(k) for k in ks]
    mono = bool(np.all(np.diff(values) > 0))
    out.append(Check(11, "K(k) strictly increasing", mono, float(mono), 1.0, 0.0))

    worst = 0.0
    for s in (-0.4, -3 / 16, -0.1, 0.25):
        got = quadrature.integrate_de(
            lambda x, lo, hi: (lo * hi) ** s, 0.0, 1.0, 1e-13, offsets=True
        ).value
        exact = math.gamma(s + 1) ** 2 / math.gamma(2 * s + 2)
        worst = max(worst, _rel(got, exact))
    out.append(Check(11, "DE quadrature vs Beta function (worst)", worst <= 1e-11, worst, 0.0, 1e-11))

    mono = True
    for b in (hitting.SAW, hitting.BROWNIAN):
        seq = [hitting.ratio_quadrature(scmap.alpha_from_aspect(r), b).value for r in (1, 2, 3, 5, 10)]
        mono &= bool(np.all(np.diff(seq) < 0))
    out.append(Check(11, "R decreasing in r", mono, float(mono), 1.0, 0.0))

    worst = 0.0
    for R in (1e-9, 1e-4, 1.0, 100.0):
        back = hitting.ratio_from_probability(hitting.end_probability(R))
        worst = max(worst, _rel(back, R))
    out.append(Check(11, "probability round trip (worst)", worst <= 4 * np.finfo(float).eps, worst, 0.0, 4 * np.finfo(float).eps))
    return out


def run_checks(level: str = "quick", seed: int = 20120807) -> list[Check]:
    """Run every reference check at its stated tolerance."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    checks += _alpha_checks()
    checks += _brownian_checks()
    checks += _saw_checks()
    checks += _symmetry_checks()
    checks += _coefficient_identity(rng)
    checks += _lattice_checks(level)
    checks += _property_checks(rng)
    return checks
