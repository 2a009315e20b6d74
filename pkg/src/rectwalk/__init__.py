"""Hitting ratios for conformally invariant walks in a rectangle."""

from .errors import AccuracyError, DomainError, ExtrapolationError, IntegrandError
from .hitting import (
    BROWNIAN,
    SAW,
    RatioResult,
    brownian_exact_pe,
    compute_ratio,
    end_probability,
    ratio_asymptotic_leading,
    ratio_asymptotic_two_term,
    ratio_closed_rw,
    ratio_from_probability,
    ratio_quadrature,
    ratio_rw_asymptotic,
)
from .scmap import ModulusAlpha, alpha_from_aspect, aspect_from_alpha, rect_dims

__version__ = "0.1.0"
