"""Discrete harmonic measure of a rectangle, as an independent check at b = 1.

A simple random walk on the square lattice starts at the centre site of a
``W x H`` block of interior sites and is absorbed on the first step outside.
The probability of leaving through the left or right column solves the
discrete Dirichlet problem

    4 p(v) - sum_{n ~ v} p(n) = 0   on interior sites,
    p = 1 on the two short sides,   p = 0 on the two long sides.

Corner sites of the absorbing frame are never a neighbour of an interior site
under the 5-point stencil, so assigning them to the long sides is only a
bookkeeping convention.  Both ``W`` and ``H`` must be odd so that the centre
is a lattice site.  The lattice spacing relative to the short side is
``1 / (H + 1)`` and the aspect proxy is ``(W + 1) / (H + 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import AccuracyError, DomainError, ExtrapolationError

__all__ = [
    "GridSpec",
    "GridSolution",
    "grid_for_aspect",
    "solve_field",
    "discrete_harmonic_ratio",
    "richardson",
    "refine_extrapolate",
    "resolution_rows",
    "DIRECT_MAX_CELLS",
]

DIRECT_MAX_CELLS = 100_000
DEFAULT_SOLVE_TOL = 1e-13
# relative noise floor of a solved ratio, per unit of residual tolerance
_NOISE_PER_TOL = 1e3


@dataclass(frozen=True)
class GridSpec:
    interior_width: int
    interior_height: int

    def __post_init__(self):
        for name in ("interior_width", "interior_height"):
            n = getattr(self, name)
            if not isinstance(n, (int, np.integer)) or n < 1 or n % 2 == 0:
                raise DomainError(f"{name} must be a positive odd integer, got {n!r}")

    @property
    def aspect(self) -> float:
        return (self.interior_width + 1) / (self.interior_height + 1)

    @property
    def spacing(self) -> float:
        return 1.0 / (self.interior_height + 1)

    @property
    def cells(self) -> int:
        return self.interior_width * self.interior_height


@dataclass(frozen=True)
class GridSolution:
    p_end: float
    ratio: float
    residual: float
    spec: GridSpec
    method: str


def grid_for_aspect(aspect: float, height: int) -> GridSpec:
    """Grid of the given odd interior height whose aspect proxy equals ``aspect``."""
    width = aspect * (height + 1) - 1
    w = int(round(width))
    if abs(width - w) > 1e-9:
        raise DomainError(f"aspect {aspect!r} is not representable at height {height}")
    return GridSpec(w, height)


def _laplacian(spec: GridSpec) -> sp.csr_matrix:
    def second_difference(n):
        off = -np.ones(n - 1)
        return sp.diags([off, 2.0 * np.ones(n), off], [-1, 0, 1])

    W, H = spec.interior_width, spec.interior_height
    return (
        sp.kron(sp.identity(H), second_difference(W))
        + sp.kron(second_difference(H), sp.identity(W))
    ).tocsr()


def _boundary_rhs(spec: GridSpec, absorbing: str) -> np.ndarray:
    W, H = spec.interior_width, spec.interior_height
    rhs = np.zeros((H, W))
    if absorbing == "ends":
        rhs[:, 0] += 1.0
        rhs[:, -1] += 1.0
    elif absorbing == "sides":
        rhs[0, :] += 1.0
        rhs[-1, :] += 1.0
    else:
        raise DomainError(f"absorbing must be 'ends' or 'sides', got {absorbing!r}")
    return rhs


def _solve_sor(spec: GridSpec, absorbing: str, tol: float, max_iter: int) -> np.ndarray:
    W, H = spec.interior_width, spec.interior_height
    u = np.zeros((H + 2, W + 2))
    if absorbing == "ends":
        u[1:-1, 0] = u[1:-1, -1] = 1.0
    else:
        u[0, 1:-1] = u[-1, 1:-1] = 1.0
    omega = 2.0 / (1.0 + math.sin(math.pi / (min(W, H) + 1)))
    jj, ii = np.indices((H, W))
    red = (ii + jj) % 2 == 0
    black = ~red
    inner = u[1:-1, 1:-1]

    def neighbours():
        return u[:-2, 1:-1] + u[2:, 1:-1] + u[1:-1, :-2] + u[1:-1, 2:]

    for it in range(max_iter):
        for colour in (red, black):
            update = inner + omega * (0.25 * neighbours() - inner)
            inner[colour] = update[colour]
        if it % 10 == 9:
            residual = np.max(np.abs(4.0 * inner - neighbours()))
            if residual <= tol:
                return inner.copy()
    raise AccuracyError(
        f"SOR did not reach residual {tol:g} in {max_iter} sweeps", estimate=None
    )


def solve_field(
    spec: GridSpec,
    absorbing: str = "ends",
    *,
    method: str = "auto",
    solve_tol: float = DEFAULT_SOLVE_TOL,
    max_iter: int = 200_000,
) -> tuple[np.ndarray, float]:
    """Hitting probability of the chosen pair of sides at every interior site.

    Returns the ``(H, W)`` field and the max-norm residual of the discrete
    Laplace equation.  ``method`` is ``direct`` (sparse LU), ``sor`` (red-black
    over-relaxation) or ``auto``, which uses the direct solver up to
    ``DIRECT_MAX_CELLS`` interior sites.
    """
    if method == "auto":
        method = "direct" if spec.cells <= DIRECT_MAX_CELLS else "sor"
    A = _laplacian(spec)
    rhs = _boundary_rhs(spec, absorbing).ravel()
    if method == "direct":
        field = spla.spsolve(A.tocsc(), rhs)
    elif method == "sor":
        field = _solve_sor(spec, absorbing, solve_tol, max_iter).ravel()
    else:
        raise DomainError(f"unknown lattice solver {method!r}")
    residual = float(np.max(np.abs(A @ field - rhs)))
    if residual > solve_tol:
        raise AccuracyError(
            f"lattice residual {residual:.3g} exceeds tolerance {solve_tol:g}",
            estimate=None,
        )
    return field.reshape(spec.interior_height, spec.interior_width), residual


def discrete_harmonic_ratio(
    spec: GridSpec, solve_tol: float = DEFAULT_SOLVE_TOL, *, method: str = "auto"
) -> GridSolution:
    """End probability and end/side ratio for the walk from the centre site."""
    field, residual = solve_field(spec, "ends", method=method, solve_tol=solve_tol)
    p = float(field[spec.interior_height // 2, spec.interior_width // 2])
    return GridSolution(
        p_end=p,
        ratio=p / (1.0 - p),
        residual=residual,
        spec=spec,
        method="direct" if method == "auto" and spec.cells <= DIRECT_MAX_CELLS else method,
    )


def richardson(
    values: Sequence[float], refinement: float, noise: float = 0.0
) -> tuple[float, float]:
    """Limit and observed order from the last three of a refinement sequence.

    ``values`` are ordered coarse to fine with spacing shrinking by
    ``refinement`` each step.  Models ``v(h) = v0 + c h^p``.  Differences no
    larger than ``noise`` (relative to the largest value, and never below a
    few ulps) are treated as zero: a sequence that has stopped changing is
    returned as converged with order ``nan``.
    """
    if len(values) < 3:
        raise ExtrapolationError("need at least three resolutions")
    v1, v2, v3 = (float(v) for v in values[-3:])
    d1, d2 = v1 - v2, v2 - v3
    floor = max(noise, 4 * np.finfo(float).eps) * max(abs(v1), abs(v2), abs(v3))
    if abs(d2) <= floor:
        return v3, math.nan
    if d1 * d2 <= 0.0 or abs(d2) >= abs(d1):
        raise ExtrapolationError(
            f"refinement sequence is not monotonically converging: {v1!r}, {v2!r}, {v3!r}",
            estimate=v3,
        )
    order = math.log(d1 / d2) / math.log(refinement)
    return v3 - d2 / (refinement**order - 1.0), order


def refine_extrapolate(
    aspect: float,
    sizes: Sequence[GridSpec],
    solve_tol: float = DEFAULT_SOLVE_TOL,
) -> float:
    """Continuum estimate of the end/side ratio by Richardson extrapolation.

    ``sizes`` must share the aspect proxy ``aspect`` and refine geometrically.
    """
    if len(sizes) < 3:
        raise ExtrapolationError("need at least three grid sizes")
    ordered = sorted(sizes, key=lambda s: s.interior_height)
    for s in ordered:
        if abs(s.aspect - aspect) > 1e-12 * aspect:
            raise DomainError(f"grid {s} has aspect {s.aspect!r}, expected {aspect!r}")
    spacings = [s.spacing for s in ordered]
    steps = [spacings[i] / spacings[i + 1] for i in range(len(spacings) - 1)]
    if any(abs(q - steps[-1]) > 1e-12 * steps[-1] for q in steps[-2:]) or steps[-1] <= 1.0:
        raise ExtrapolationError(f"grid spacings are not geometric: {spacings}")
    ratios = [discrete_harmonic_ratio(s, solve_tol).ratio for s in ordered]
    # a residual of solve_tol can move the centre value by far more than solve_tol
    limit, _ = richardson(ratios, steps[-1], noise=_NOISE_PER_TOL * solve_tol)
    return limit


def resolution_rows(
    aspect: float, heights: Sequence[int], solve_tol: float = DEFAULT_SOLVE_TOL
) -> list[dict]:
    """One row per height: aspect, height, p_end, ratio, residual."""
    rows = []
    for h in heights:
        sol = discrete_harmonic_ratio(grid_for_aspect(aspect, h), solve_tol)
        rows.append(
            {
                "aspect": aspect,
                "height": h,
                "p_end": sol.p_end,
                "ratio": sol.ratio,
                "residual": sol.residual,
            }
        )
    return rows
