"""One-dimensional quadrature for integrands with endpoint singularities.

``integrate_de`` is a tanh-sinh (double-exponential) rule with level
doubling.  Node tables are built once per level and shared.  When the
integrand has power-law singularities at the ends, pass ``offsets=True``: the
integrand is then called as ``f(x, x - lower, upper - x)`` with both distances
computed directly from the node complements, so it never has to recover a
tiny distance by subtracting two nearly equal numbers.

``integrate_adaptive`` wraps QUADPACK and exists to cross-check the DE rule
on smooth integrands.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _sp_integrate

from .errors import AccuracyError, DomainError, IntegrandError

__all__ = ["IntegrationResult", "integrate_de", "integrate_adaptive"]

MAX_LEVEL = 12
MIN_LEVEL = 3
_T_MAX = 6.1  # beyond this the node complement underflows double precision
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    err_estimate: float
    evaluations: int


def _check_request(lower: float, upper: float, rel_tol: float) -> None:
    if not (math.isfinite(lower) and math.isfinite(upper) and lower < upper):
        raise DomainError(f"need finite lower < upper, got [{lower!r}, {upper!r}]")
    if not (1e-15 <= rel_tol <= 1e-3):
        raise DomainError(f"rel_tol must lie in [1e-15, 1e-3], got {rel_tol!r}")


@functools.lru_cache(maxsize=None)
def _level_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Positive-side nodes first introduced at ``level``.

    Returns ``(c, w)`` where ``c = 1 - x`` is the distance of the node from
    +1 on the reference interval and ``w`` is the unscaled weight.  The
    mirror node at ``-x`` has the same ``c`` measured from -1.
    """
    h = 2.0 ** -level
    n = int(_T_MAX / h)
    k = np.arange(1, n + 1)
    if level > 0:
        k = k[k % 2 == 1]
    t = k * h
    y = 0.5 * np.pi * np.sinh(t)
    e = np.exp(-2.0 * y)
    c = 2.0 * e / (1.0 + e)
    w = 0.5 * np.pi * np.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    keep = (c > 0.0) & (w > 0.0)
    c, w = c[keep], w[keep]
    c.setflags(write=False)
    w.setflags(write=False)
    return c, w


def _evaluate(f, x, dl, du, offsets):
    args = (x, dl, du) if offsets else (x,)
    try:
        vals = np.asarray(f(*args), dtype=float)
        if vals.shape != x.shape:
            raise TypeError
    except TypeError:
        vals = np.array([f(*a) for a in zip(*args)], dtype=float)
    return vals


def integrate_de(
    f: Callable,
    lower: float,
    upper: float,
    rel_tol: float = 1e-12,
    *,
    offsets: bool = False,
    max_level: int = MAX_LEVEL,
) -> IntegrationResult:
    """Tanh-sinh quadrature of ``f`` over ``[lower, upper]``.

    Parameters
    ----------
    f : callable
        Integrand.  Called with numpy arrays when it supports them, otherwise
        element by element.  With ``offsets=True`` the call is
        ``f(x, x - lower, upper - x)``.
    lower, upper : float
        Finite limits, ``lower < upper``.
    rel_tol : float
        Target relative accuracy in ``[1e-15, 1e-3]``.
    offsets : bool
        Pass accurate endpoint distances to the integrand.
    max_level : int
        Number of step halvings allowed before giving up.

    Returns
    -------
    IntegrationResult
        ``err_estimate`` is the difference between the last two levels.

    Raises
    ------
    AccuracyError
        If successive levels still disagree after ``max_level`` halvings.
    IntegrandError
        If ``f`` returns NaN or infinity at a node strictly inside the interval.
    """
    _check_request(lower, upper, rel_tol)
    half = 0.5 * (upper - lower)
    width = upper - lower
    evaluations = 0

    def level_sum(c, w, include_centre):
        nonlocal evaluations
        d = half * c
        dist_far = width - d
        # nodes near the upper end, then their mirrors near the lower end
        x = np.concatenate([upper - d, lower + d])
        dl = np.concatenate([dist_far, d])
        du = np.concatenate([d, dist_far])
        ww = np.concatenate([w, w])
        if include_centre:
            x = np.append(x, lower + half)
            dl = np.append(dl, half)
            du = np.append(du, half)
            ww = np.append(ww, 0.5 * np.pi)
        if offsets:
            inside = (dl > 0.0) & (du > 0.0)
        else:
            inside = (x > lower) & (x < upper)
        x, dl, du, ww = x[inside], dl[inside], du[inside], ww[inside]
        vals = _evaluate(f, x, dl, du, offsets)
        evaluations += vals.size
        bad = ~np.isfinite(vals)
        if bad.any():
            raise IntegrandError(
                f"integrand is not finite at x = {x[bad][0]!r}", estimate=None
            )
        terms = ww * vals
        return float(np.sum(terms)), float(np.sum(np.abs(terms)))

    c, w = _level_nodes(0)
    total, abs_total = level_sum(c, w, include_centre=True)
    estimate = half * total
    err = math.inf
    for level in range(1, max_level + 1):
        h = 2.0 ** -level
        c, w = _level_nodes(level)
        new, new_abs = level_sum(c, w, include_centre=False)
        total = 0.5 * total + new * h
        abs_total = 0.5 * abs_total + new_abs * h
        previous, estimate = estimate, half * total
        err = abs(estimate - previous)
        if level < MIN_LEVEL:
            continue
        roundoff = 16.0 * _EPS * half * abs_total
        if err <= rel_tol * abs(estimate) or err <= roundoff:
            return IntegrationResult(estimate, err, evaluations)
    raise AccuracyError(
        f"tanh-sinh quadrature did not reach rel_tol={rel_tol:g} after "
        f"{max_level} levels (last difference {err:.3g})",
        estimate=estimate,
    )


def integrate_adaptive(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    rel_tol: float = 1e-12,
) -> IntegrationResult:
    """Adaptive Gauss-Kronrod bisection (QUADPACK ``qags``) for smooth integrands."""
    _check_request(lower, upper, rel_tol)
    # QUADPACK refuses relative tolerances below ~50 eps
    eps_rel = max(rel_tol, 50.0 * _EPS)
    value, abserr, info, *rest = _sp_integrate.quad(
        f, lower, upper, epsabs=0.0, epsrel=eps_rel, limit=500, full_output=1
    )
    if not math.isfinite(value):
        raise IntegrandError("adaptive quadrature produced a non-finite value")
    if rest and abserr > eps_rel * abs(value):
        raise AccuracyError(f"adaptive quadrature: {rest[0]}", estimate=value)
    return IntegrationResult(float(value), float(abserr), int(info["neval"]))
