"""End-versus-side hitting ratios for a walk started at the rectangle centre.

A walk whose boundary hitting density transforms with exponent ``b`` under
conformal maps (``b = 1`` Brownian motion, ``b = 5/8`` the SAW scaling limit)
is started at the centre of an ``r x 1`` rectangle.  Pulled back to the upper
half plane, the centre sits at ``i sqrt(alpha)`` and the ratio of the
probability of first hitting a short (vertical) edge to that of first hitting
a long edge is

    R(alpha, b) = N / D,
    N = int_1^alpha  (u^2+alpha)^-b (u^2-1)^s (alpha^2-u^2)^s du,
    D = int_-1^1     (u^2+alpha)^-b (1-u^2)^s (alpha^2-u^2)^s du,

with ``s = (b - 1)/2``.  This module evaluates that ratio by quadrature, by
the arctan closed form at ``b = 1``, and by the Gamma-function asymptotics in
``exp(-pi r / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature, scmap
from .errors import AccuracyError, DomainError
from .scmap import ModulusAlpha
from .specfun import gamma_fn

__all__ = [
    "BROWNIAN",
    "SAW",
    "ASYMPTOTIC_MIN_ASPECT",
    "RatioResult",
    "hit_density_halfplane",
    "ratio_quadrature",
    "ratio_closed_rw",
    "ratio_rw_asymptotic",
    "lambda_const",
    "leading_coefficient",
    "ratio_asymptotic_leading",
    "ratio_asymptotic_two_term",
    "denom_approx",
    "numer_approx",
    "end_probability",
    "ratio_from_probability",
    "brownian_exact_pe",
    "compute_ratio",
    "METHODS",
]

BROWNIAN = 1.0
SAW = 5.0 / 8.0

ASYMPTOTIC_MIN_ASPECT = 2.0
DEFAULT_REL_TOL = 1e-10

METHODS = ("quadrature", "closed_rw", "leading", "two_term")

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RatioResult:
    """A computed end/side ratio together with how it was obtained."""

    value: float
    method: str
    err_estimate: float
    r: float
    b: float
    warning: str | None = None
    terms: dict = field(default_factory=dict, compare=False)

    @property
    def probability(self) -> float:
        return end_probability(self.value)


def _check_b(b: float) -> float:
    b = float(b)
    if not (b > 0.0 and math.isfinite(b)):
        raise DomainError(f"hitting exponent b must be positive, got {b!r}")
    return b


def _regime_warning(r: float) -> str | None:
    if r < ASYMPTOTIC_MIN_ASPECT:
        return f"aspect ratio {r:g} is below {ASYMPTOTIC_MIN_ASPECT:g}; asymptotic value unreliable"
    return None


def hit_density_halfplane(x, alpha: ModulusAlpha | float, b: float):
    """Unnormalised density ``(x^2 + alpha)^-b`` on the real axis.

    This is the hitting density for a walk from ``i sqrt(alpha)``; ``alpha``
    may be a plain positive number here.
    """
    b = _check_b(b)
    a = alpha.alpha if isinstance(alpha, ModulusAlpha) else float(alpha)
    if not a > 0.0:
        raise DomainError(f"alpha must be positive, got {a!r}")
    return (np.square(x) + a) ** -b


def ratio_quadrature(
    alpha: ModulusAlpha | float, b: float, rel_tol: float = DEFAULT_REL_TOL
) -> RatioResult:
    """``R(alpha, b)`` by double-exponential quadrature of both integrals.

    The numerator is taken in ``t`` with ``u = 1 + t (alpha - 1)``, which pulls
    out the factor ``(alpha - 1)^b`` and leaves ``[t (1 - t)]^s`` times a smooth
    function.  The denominator is twice the integral over ``[0, 1]``; near
    ``u = 1`` its factor ``alpha - u`` is built as ``(alpha - 1) + (1 - u)``.
    """
    m = scmap.as_alpha(alpha)
    b = _check_b(b)
    eps = m.excess
    a = m.alpha
    s = 0.5 * (b - 1.0)

    def numer_kernel(t, t_lo, t_hi):
        u = 1.0 + t * eps
        return (
            (u * u + a) ** -b
            * ((u + 1.0) * (a + u)) ** s
            * (t_lo * t_hi) ** s
        )

    def denom_kernel(u, u_lo, u_hi):
        # u_hi = 1 - u
        return (
            (u * u + a) ** -b
            * (u_hi * (1.0 + u)) ** s
            * ((eps + u_hi) * (a + u)) ** s
        )

    num = quadrature.integrate_de(numer_kernel, 0.0, 1.0, rel_tol, offsets=True)
    den = quadrature.integrate_de(denom_kernel, 0.0, 1.0, rel_tol, offsets=True)
    scale = eps ** b
    value = scale * num.value / (2.0 * den.value)
    rel_err = num.err_estimate / abs(num.value) + den.err_estimate / abs(den.value)
    return RatioResult(
        value=value,
        method="quadrature",
        err_estimate=abs(value) * rel_err,
        r=scmap.aspect_from_alpha(m),
        b=b,
        terms={"numerator": scale * num.value, "denominator": 2.0 * den.value},
    )


def ratio_closed_rw(alpha: ModulusAlpha | float) -> RatioResult:
    """Brownian (``b = 1``) ratio in closed form.

    ``R = [atan(sqrt a) - atan(1/sqrt a)] / [2 atan(1/sqrt a)]``.  Because the
    product of the two arctan arguments is 1, the numerator collapses to
    ``atan((sqrt a - 1/sqrt a)/2) = atan((a - 1) / (2 sqrt a))``.
    """
    m = scmap.as_alpha(alpha)
    root = math.sqrt(m.alpha)
    num = math.atan(m.excess / (2.0 * root))
    den = 2.0 * math.atan(1.0 / root)
    value = num / den
    return RatioResult(
        value=value,
        method="closed_rw",
        err_estimate=4.0 * _EPS * value,
        r=scmap.aspect_from_alpha(m),
        b=BROWNIAN,
    )


def ratio_rw_asymptotic(r: float, order: int = 2) -> RatioResult:
    """Brownian ratio ``(8/pi) e^{-pi r/2} [+ (64/pi^2) e^{-pi r}]``."""
    if order not in (1, 2):
        raise DomainError(f"order must be 1 or 2, got {order!r}")
    r = float(r)
    if not (r >= 1.0 and math.isfinite(r)):
        raise DomainError(f"aspect ratio must be >= 1, got {r!r}")
    x = math.exp(-0.5 * math.pi * r)
    first = 8.0 / math.pi * x
    second = 64.0 / math.pi**2 * x * x
    value = first + (second if order == 2 else 0.0)
    return RatioResult(
        value=value,
        method="leading" if order == 1 else "two_term",
        err_estimate=(second if order == 1 else 8.0 * x**3),
        r=r,
        b=BROWNIAN,
        warning=_regime_warning(r),
        terms={"first": first, "second": second},
    )


def lambda_const(b: float) -> float:
    """``Lambda(b) = (Gamma((1+b)/2) / Gamma(b/2))^2``."""
    b = _check_b(b)
    return (gamma_fn(0.5 * (1.0 + b)) / gamma_fn(0.5 * b)) ** 2


def leading_coefficient(b: float) -> float:
    """Prefactor of ``exp(-pi b r / 2)`` in the leading asymptotic ratio.

    ``2^(2b) Gamma(1/2 + b/2)^2 / (Gamma(1 + b/2) Gamma(b/2))``, which equals
    ``2^(2b+1) Lambda / b``.
    """
    b = _check_b(b)
    return (
        2.0 ** (2.0 * b)
        * gamma_fn(0.5 + 0.5 * b) ** 2
        / (gamma_fn(1.0 + 0.5 * b) * gamma_fn(0.5 * b))
    )


def ratio_asymptotic_leading(r: float, b: float) -> RatioResult:
    """Leading asymptotic ratio ``C(b) exp(-pi b r / 2)``."""
    b = _check_b(b)
    r = float(r)
    if not (r >= 1.0 and math.isfinite(r)):
        raise DomainError(f"aspect ratio must be >= 1, got {r!r}")
    coeff = leading_coefficient(b)
    via_lambda = 2.0 ** (2.0 * b + 1.0) * lambda_const(b) / b
    if abs(coeff - via_lambda) > 1e-13 * coeff:
        raise AccuracyError(
            f"coefficient forms disagree at b={b!r}: {coeff!r} vs {via_lambda!r}"
        )
    xb = math.exp(-0.5 * math.pi * b * r)
    return RatioResult(
        value=coeff * xb,
        method="leading",
        err_estimate=coeff * xb * (xb + math.exp(-0.5 * math.pi * r)),
        r=r,
        b=b,
        warning=_regime_warning(r),
        terms={"coefficient": coeff},
    )


def ratio_asymptotic_two_term(r: float, b: float) -> RatioResult:
    """Leading ratio with corrections in ``exp(-b pi r/2)`` and ``exp(-pi r/2)``.

    ``R = C xb [1 + A xb + B x]`` with ``xb = exp(-b pi r/2)``,
    ``x = exp(-pi r/2)``, ``C = 2^(2b+1) Lambda / b``,
    ``A = 2^(2b+1) Lambda / (b sin(pi b/2))`` and ``B = 4 (b - 1 + 2 Lambda)``.
    Only defined for ``0 < b < 1``; use :func:`ratio_rw_asymptotic` for ``b = 1``.

    ``A`` follows from the ``(alpha - 1)^b`` endpoint term of the denominator
    integral.  The ``B`` term is kept so the well-known reference value at
    ``r = 10, b = 5/8`` is reproduced, but fits against
    :func:`ratio_quadrature` for several ``b`` put the true coefficient of
    ``exp(-pi r/2)`` at zero, so this correction is not an error bound.  Both
    corrections are reported separately in ``terms``.
    """
    b = _check_b(b)
    if not b < 1.0:
        raise DomainError(
            f"two-term expansion needs 0 < b < 1, got b={b!r}; "
            "use ratio_rw_asymptotic for b = 1"
        )
    r = float(r)
    if not (r >= 1.0 and math.isfinite(r)):
        raise DomainError(f"aspect ratio must be >= 1, got {r!r}")
    lam = lambda_const(b)
    coeff = 2.0 ** (2.0 * b + 1.0) * lam / b
    a_coeff = coeff / math.sin(0.5 * math.pi * b)
    b_coeff = 4.0 * (b - 1.0 + 2.0 * lam)
    xb = math.exp(-0.5 * math.pi * b * r)
    x = math.exp(-0.5 * math.pi * r)
    corr_b = a_coeff * xb
    corr_1 = b_coeff * x
    value = coeff * xb * (1.0 + corr_b + corr_1)
    return RatioResult(
        value=value,
        method="two_term",
        err_estimate=coeff * xb * (xb * xb + abs(corr_1)),
        r=r,
        b=b,
        warning=_regime_warning(r),
        terms={
            "coefficient": coeff,
            "correction_exp_b": corr_b,
            "correction_exp_1": corr_1,
        },
    )


def denom_approx(b: float) -> float:
    """Denominator at ``alpha = 1``: ``sqrt(pi) Gamma(b/2) / (2 Gamma(b/2 + 1/2))``."""
    b = _check_b(b)
    return math.sqrt(math.pi) * gamma_fn(0.5 * b) / (2.0 * gamma_fn(0.5 * b + 0.5))


def numer_approx(alpha: ModulusAlpha | float, b: float) -> float:
    """Narrow-interval numerator ``2^(-b-1) sqrt(pi) Gamma((1+b)/2) / Gamma(1+b/2) (alpha-1)^b``."""
    m = scmap.as_alpha(alpha)
    b = _check_b(b)
    return (
        2.0 ** (-b - 1.0)
        * math.sqrt(math.pi)
        * gamma_fn(0.5 * (1.0 + b))
        / gamma_fn(1.0 + 0.5 * b)
        * m.excess ** b
    )


def end_probability(ratio) -> float:
    """Probability ``p = R / (1 + R)`` of hitting an end first."""
    value = ratio.value if isinstance(ratio, RatioResult) else float(ratio)
    if not value >= 0.0:
        raise DomainError(f"ratio must be non-negative, got {value!r}")
    if math.isinf(value):
        raise DomainError("ratio must be finite")
    return value / (1.0 + value)


def ratio_from_probability(p: float) -> float:
    """Inverse of :func:`end_probability`: ``R = p / (1 - p)``."""
    p = float(p)
    if not (0.0 <= p < 1.0):
        raise DomainError(f"probability must lie in [0, 1), got {p!r}")
    return p / (1.0 - p)


def brownian_exact_pe() -> float:
    """Exact end probability for Brownian motion in the 10 x 1 rectangle.

    ``p = (2/pi) asin[(3-2 sqrt2)^2 (2+sqrt5)^2 (sqrt10-3)^2 (5^(1/4)-sqrt2)^4]``.
    Each small difference is rewritten as a reciprocal sum,
    ``3 - 2 sqrt2 = 1/(3 + 2 sqrt2)`` and so on, so nothing cancels.
    """
    s2 = math.sqrt(2.0)
    s5 = math.sqrt(5.0)
    arg = 1.0 / (
        (3.0 + 2.0 * s2) ** 2
        * (math.sqrt(10.0) + 3.0) ** 2
        * (s5 + 2.0) ** 2
        * (5.0 ** 0.25 + s2) ** 4
    )
    return 2.0 / math.pi * math.asin(arg)


def compute_ratio(
    r: float,
    b: float,
    method: str = "quadrature",
    rel_tol: float = DEFAULT_REL_TOL,
    alpha: ModulusAlpha | None = None,
) -> RatioResult:
    """Dispatch on a method name for an aspect ratio ``r >= 1``.

    ``closed_rw`` requires ``b = 1``.  ``two_term`` at ``b = 1`` uses the
    Brownian expansion, as does ``leading`` (the two coincide there).
    """
    b = _check_b(b)
    if method in ("quadrature", "closed_rw"):
        m = alpha if alpha is not None else scmap.alpha_from_aspect(r)
        if method == "quadrature":
            return ratio_quadrature(m, b, rel_tol)
        if b != BROWNIAN:
            raise DomainError(f"closed form exists only for b = 1, got b={b!r}")
        return ratio_closed_rw(m)
    if method == "leading":
        return ratio_asymptotic_leading(r, b)
    if method == "two_term":
        if b == BROWNIAN:
            return ratio_rw_asymptotic(r, order=2)
        return ratio_asymptotic_two_term(r, b)
    raise DomainError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
