"""Schwarz-Christoffel geometry of the half-plane to rectangle map.

The map is ``f(z) = integral_0^z dxi / (sqrt(1 - xi^2) sqrt(alpha^2 - xi^2))``
with ``alpha > 1``.  It sends the real segment ``[-1, 1]`` onto the bottom
edge ``[-a/2, a/2]`` and ``[1, alpha]`` onto the right edge, so the corners
have preimages ``+-1`` and ``+-alpha``.

For long rectangles ``alpha`` is extremely close to 1 (``alpha - 1`` is about
``8 exp(-pi r / 2)``), so the parameter is carried as its excess over one and
every formula below consumes the excess directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature, specfun
from .errors import DomainError

__all__ = [
    "ModulusAlpha",
    "Rectangle",
    "as_alpha",
    "rect_dims",
    "aspect_from_alpha",
    "alpha_from_aspect",
    "alpha_series",
    "aspect_series_log",
    "start_preimage",
    "sc_map_boundary",
    "sc_map_deriv_abs",
    "ASYMPTOTIC_CROSSOVER",
]

# auto method: asymptotic series + Newton polish at or above this aspect ratio
ASYMPTOTIC_CROSSOVER = 5.0

# alpha - 1 = sum_j c_j x**j with x = exp(-pi r / 2)
_ALPHA_SERIES = (8.0, 32.0, 96.0, 256.0, 624.0, 1408.0)


@dataclass(frozen=True)
class ModulusAlpha:
    """Corner parameter ``alpha > 1`` stored as ``excess = alpha - 1``."""

    excess: float

    def __post_init__(self):
        if not (self.excess > 0.0 and math.isfinite(self.excess)):
            raise DomainError(f"alpha must exceed 1 (excess > 0), got excess={self.excess!r}")

    @property
    def alpha(self) -> float:
        return 1.0 + self.excess

    @classmethod
    def from_alpha(cls, alpha: float) -> "ModulusAlpha":
        """Build from ``alpha`` itself; only ~16 - log10(1/excess) digits of the excess survive."""
        return cls(alpha - 1.0)


@dataclass(frozen=True)
class Rectangle:
    a: float  # horizontal edge
    c: float  # vertical edge

    @property
    def aspect(self) -> float:
        return self.a / self.c


def as_alpha(alpha: ModulusAlpha | float) -> ModulusAlpha:
    if isinstance(alpha, ModulusAlpha):
        return alpha
    return ModulusAlpha.from_alpha(float(alpha))


def _moduli(m: ModulusAlpha) -> tuple[float, float]:
    """``k = 1/alpha`` and ``k' = sqrt(alpha^2 - 1)/alpha`` without cancellation."""
    alpha = m.alpha
    k = 1.0 / alpha
    kp = math.sqrt(m.excess) * math.sqrt(2.0 + m.excess) / alpha
    return k, kp


def rect_dims(alpha: ModulusAlpha | float) -> Rectangle:
    """Edge lengths ``a = (2/alpha) K(1/alpha)`` and ``c = (1/alpha) K'(1/alpha)``."""
    m = as_alpha(alpha)
    k, kp = _moduli(m)
    big_k = specfun.elliptic_K_from_complement(min(kp, 1.0))
    big_kp = specfun.elliptic_K_prime(k)
    return Rectangle(a=2.0 * big_k / m.alpha, c=big_kp / m.alpha)


def aspect_from_alpha(alpha: ModulusAlpha | float) -> float:
    """Aspect ratio ``r = a/c = 2 K(1/alpha) / K'(1/alpha)``."""
    m = as_alpha(alpha)
    k, kp = _moduli(m)
    # 2K/K' = 2 agm(1, k) / agm(1, k')
    return 2.0 * specfun.agm(1.0, k) / specfun.agm(1.0, min(kp, 1.0))


def _check_aspect(r: float) -> None:
    if not (r >= 1.0 and math.isfinite(r)):
        raise DomainError(
            f"aspect ratio must be >= 1, got {r!r}; for r < 1 use 1/r and swap "
            "the roles of ends and sides"
        )


def _excess_theta(r: float) -> float:
    # With q = exp(-2 pi / r):  alpha - 1 = theta4(sqrt q)^2 / theta2(q)^2.
    # Jacobi's imaginary transformation turns both nomes into small ones:
    #   theta4(e^{-pi/r}) = sqrt(r) theta2(e^{-pi r})
    #   theta2(e^{-2pi/r}) = sqrt(r/2) theta4(e^{-pi r/2})
    x = math.exp(-0.5 * math.pi * r)
    num = specfun.theta2(x * x)
    den = specfun.theta4(x)
    return 2.0 * (num / den) ** 2


def alpha_series(r: float, terms: int = 2) -> ModulusAlpha:
    """Truncated expansion ``alpha = 1 + 8x + 32x^2 + 96x^3 + ...`` in ``x = exp(-pi r/2)``.

    ``terms=1`` is the leading-order estimate, ``terms=2`` adds ``32 exp(-pi r)``.
    """
    _check_aspect(r)
    if not (1 <= terms <= len(_ALPHA_SERIES)):
        raise DomainError(f"terms must be in 1..{len(_ALPHA_SERIES)}, got {terms!r}")
    x = math.exp(-0.5 * math.pi * r)
    total = 0.0
    for coeff in reversed(_ALPHA_SERIES[:terms]):
        total = (total + coeff) * x
    return ModulusAlpha(total)


def _newton_polish(r: float, m: ModulusAlpha) -> ModulusAlpha:
    eps = m.excess
    step = eps * 1e-4
    f0 = aspect_from_alpha(m) - r
    slope = (
        aspect_from_alpha(ModulusAlpha(eps + step))
        - aspect_from_alpha(ModulusAlpha(eps - step))
    ) / (2.0 * step)
    return ModulusAlpha(eps - f0 / slope)


def alpha_from_aspect(r: float, method: str = "auto") -> ModulusAlpha:
    """Corner parameter for a rectangle of aspect ratio ``r >= 1``.

    Parameters
    ----------
    r : float
        Aspect ratio ``a/c``.
    method : {"auto", "theta", "asymptotic"}
        ``theta`` evaluates the theta-quotient identity; ``asymptotic`` sums
        the exponential series and applies one Newton step against
        :func:`aspect_from_alpha`.  ``auto`` picks ``asymptotic`` for
        ``r >= ASYMPTOTIC_CROSSOVER``.
    """
    _check_aspect(r)
    if method == "auto":
        method = "asymptotic" if r >= ASYMPTOTIC_CROSSOVER else "theta"
    if method == "theta":
        return ModulusAlpha(_excess_theta(r))
    if method == "asymptotic":
        seed = alpha_series(r, terms=4)
        return _newton_polish(r, seed)
    raise DomainError(f"unknown alpha method {method!r}")


def aspect_series_log(alpha: ModulusAlpha | float) -> float:
    """Log-Taylor expansion of ``r(alpha)`` about ``alpha = 1``.

    ``r = (4 log(2 sqrt 2) - 2 log e + e - 3e^2/8 + 5e^3/24) / pi`` with
    ``e = alpha - 1``; valid for ``0 < e < 0.5``.
    """
    m = as_alpha(alpha)
    e = m.excess
    if not e < 0.5:
        raise DomainError(f"log series needs alpha - 1 < 0.5, got {e!r}")
    poly = e * (1.0 + e * (-3.0 / 8.0 + e * 5.0 / 24.0))
    return (4.0 * math.log(2.0 * math.sqrt(2.0)) - 2.0 * math.log(e) + poly) / math.pi


def start_preimage(alpha: ModulusAlpha | float) -> float:
    """Height ``d`` with ``f(i d)`` the rectangle centre; ``d = sqrt(alpha)``."""
    return math.sqrt(as_alpha(alpha).alpha)


def sc_map_boundary(u: float, alpha: ModulusAlpha | float, rel_tol: float = 1e-13) -> complex:
    """Image ``f(u)`` of a real boundary point ``u`` in ``[-alpha, alpha]``.

    Points in ``[-1, 1]`` land on the bottom edge; points beyond land on the
    vertical edges ``+-a/2 + i y``.
    """
    m = as_alpha(alpha)
    alpha_v = m.alpha
    if abs(u) > alpha_v:
        raise DomainError(f"|u| must not exceed alpha={alpha_v!r}, got u={u!r}")
    sign = -1.0 if u < 0 else 1.0
    v = abs(u)
    if v <= 1.0:
        if v == 0.0:
            return 0j
        one_minus_v = 1.0 - v

        def bottom(x, dl, du):
            w = one_minus_v + du  # 1 - x
            return 1.0 / (np.sqrt(w * (1.0 + x)) * np.sqrt((m.excess + w) * (alpha_v + x)))

        val = quadrature.integrate_de(bottom, 0.0, v, rel_tol, offsets=True).value
        return complex(sign * val, 0.0)

    half_a = 0.5 * rect_dims(m).a
    # distance of v from alpha, formed from the excess; 1 + excess rounds, so clamp
    alpha_minus_v = max(m.excess - (v - 1.0), 0.0)

    def side(x, dl, du):
        # dl = x - 1, du = v - x
        return 1.0 / (
            np.sqrt(dl * (x + 1.0)) * np.sqrt((alpha_minus_v + du) * (alpha_v + x))
        )

    y = quadrature.integrate_de(side, 1.0, v, rel_tol, offsets=True).value
    return complex(sign * half_a, y)


def sc_map_deriv_abs(u: float, alpha: ModulusAlpha | float) -> float:
    """``|f'(u)| = |1 - u^2|^(-1/2) |alpha^2 - u^2|^(-1/2)`` on the real axis."""
    m = as_alpha(alpha)
    alpha_v = m.alpha
    v = abs(u)
    if v == 1.0 or v == alpha_v:
        raise DomainError(f"|f'| is singular at u={u!r}")
    one_term = abs((1.0 - v) * (1.0 + v))
    alpha_term = abs((m.excess - (v - 1.0)) * (alpha_v + v))
    return 1.0 / math.sqrt(one_term * alpha_term)

