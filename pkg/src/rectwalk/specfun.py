"""Real-argument special functions: complete elliptic integrals, theta constants,
the nome and the Gamma function.

Everything here works in double precision and takes plain floats.  The
complete elliptic integral is evaluated with the arithmetic-geometric mean,
which gives both ``K(k)`` and ``K'(k)`` without ever forming ``1 - k**2``
when the caller already knows the complementary modulus.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = [
    "agm",
    "agm_iterations",
    "elliptic_K",
    "elliptic_K_from_complement",
    "elliptic_K_prime",
    "nome_from_modulus",
    "theta2",
    "theta3",
    "theta4",
    "gamma_fn",
]

_AGM_MAX_ITER = 40
_THETA_REL_STOP = 1e-17
# above this nome the series are replaced by their imaginary-transformed duals
_THETA_DUAL_NOME = 0.5


def agm_iterations(a: float, b: float) -> tuple[float, int]:
    """Arithmetic-geometric mean and the number of AGM steps it took."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"agm needs positive arguments, got {a!r}, {b!r}")
    steps = 0
    while abs(a - b) > 2.0 * math.ulp(a) and steps < _AGM_MAX_ITER:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        steps += 1
    return 0.5 * (a + b), steps


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    return agm_iterations(a, b)[0]


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, ``K(k)``, modulus convention.

    Parameters
    ----------
    k : float
        Modulus with ``0 <= k < 1``.

    Returns
    -------
    float
        ``integral_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta)``.
    """
    if not (0.0 <= k < 1.0):
        raise DomainError(f"elliptic_K requires 0 <= k < 1, got {k!r}")
    return elliptic_K_from_complement(math.sqrt((1.0 - k) * (1.0 + k)))


def elliptic_K_from_complement(kp: float) -> float:
    """``K(k)`` given the complementary modulus ``kp = sqrt(1 - k^2)`` in (0, 1].

    Use this when ``kp`` is known to full relative precision; it is the only
    accurate route when ``k`` sits within a few ulps of 1.
    """
    if not (0.0 < kp <= 1.0):
        raise DomainError(f"complementary modulus must lie in (0, 1], got {kp!r}")
    return math.pi / (2.0 * agm(1.0, kp))


def elliptic_K_prime(k: float) -> float:
    """``K'(k) = K(sqrt(1 - k^2))`` for ``0 < k < 1``.

    The AGM of ``(1, k)`` gives this directly, so no complementary modulus is
    formed at all.
    """
    if not (0.0 < k < 1.0):
        raise DomainError(f"elliptic_K_prime requires 0 < k < 1, got {k!r}")
    return math.pi / (2.0 * agm(1.0, k))


def nome_from_modulus(k: float) -> float:
    """Jacobi nome ``q = exp(-pi K'(k) / K(k))`` for ``0 < k < 1``."""
    if not (0.0 < k < 1.0):
        raise DomainError(f"nome_from_modulus requires 0 < k < 1, got {k!r}")
    return math.exp(-math.pi * elliptic_K_prime(k) / elliptic_K(k))


def _check_nome(q: float) -> None:
    if not (0.0 <= q < 1.0):
        raise DomainError(f"nome must satisfy 0 <= q < 1, got {q!r}")


def _dual(q: float) -> tuple[float, float]:
    # q = exp(-pi s)  <->  q' = exp(-pi / s); theta_j(q) = s**-0.5 * theta_j'(q')
    s = -math.log(q) / math.pi
    return 1.0 / math.sqrt(s), math.exp(-math.pi / s)


def _sum_theta3_tail(q: float, sign: float) -> float:
    # sum_{n>=1} sign**n q**(n*n)
    total = 0.0
    n = 1
    while True:
        term = q ** (n * n)
        if term == 0.0 or term < _THETA_REL_STOP * (1.0 + abs(total)):
            break
        total += term * (sign ** n)
        n += 1
    return total


def _theta2_series(q: float) -> float:
    if q == 0.0:
        return 0.0
    total = 0.0
    n = 0
    while True:
        term = q ** (n * (n + 1))
        total += term
        if term < _THETA_REL_STOP * total:
            break
        n += 1
    return 2.0 * q ** 0.25 * total


def theta2(q: float) -> float:
    """Theta constant ``theta_2(q) = 2 * sum_{n>=0} q**((n + 1/2)**2)``."""
    _check_nome(q)
    if q > _THETA_DUAL_NOME:
        scale, qd = _dual(q)
        return scale * (1.0 + 2.0 * _sum_theta3_tail(qd, -1.0))
    return _theta2_series(q)


def theta3(q: float) -> float:
    """Theta constant ``theta_3(q) = 1 + 2 * sum_{n>=1} q**(n**2)``."""
    _check_nome(q)
    if q > _THETA_DUAL_NOME:
        scale, qd = _dual(q)
        return scale * (1.0 + 2.0 * _sum_theta3_tail(qd, 1.0))
    return 1.0 + 2.0 * _sum_theta3_tail(q, 1.0)


def theta4(q: float) -> float:
    """Theta constant ``theta_4(q) = 1 + 2 * sum_{n>=1} (-1)**n q**(n**2)``.

    Near ``q = 1`` this is exponentially small; it is then obtained from
    ``theta_2`` of the dual nome so no cancellation occurs.
    """
    _check_nome(q)
    if q > _THETA_DUAL_NOME:
        scale, qd = _dual(q)
        return scale * _theta2_series(qd)
    return 1.0 + 2.0 * _sum_theta3_tail(q, -1.0)


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments."""
    if not x > 0.0:
        raise DomainError(f"gamma_fn is only defined here for x > 0, got {x!r}")
    try:
        return math.gamma(x)
    except OverflowError as exc:
        raise DomainError(f"gamma_fn overflows at x = {x!r}") from exc
