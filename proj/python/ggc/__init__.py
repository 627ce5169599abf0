"""Generalized gamma convolutions: densities, Laplace transforms, HCM checks, sampling."""

import json as _json

from ._ggc import (
    GammaComponent,
    GammaConvolution,
    QuadratureError,
    UnsupportedShift,
    ValidationError,
    bessel_i,
    density,
    laplace,
    log_gamma,
    parse_grid,
    power_moment,
    remark3_bessel_product,
    remark3_lhs,
    sample,
)
from . import _ggc


def cm_check(f, lo, hi, max_order=8, tol=1e-6):
    """Complete-monotonicity report for a callable on [lo, hi], as a dict."""
    return _json.loads(_ggc.cm_check(f, lo, hi, max_order, tol))


def hcm_check(model, q=None, max_order=8, tol=1e-6):
    """HCM report for s -> E[exp(-s X^q)] (q=None means X itself), as a dict."""
    return _json.loads(_ggc.hcm_check(model, q, max_order, tol))


__all__ = [
    "GammaComponent",
    "GammaConvolution",
    "QuadratureError",
    "UnsupportedShift",
    "ValidationError",
    "bessel_i",
    "cm_check",
    "density",
    "hcm_check",
    "laplace",
    "log_gamma",
    "parse_grid",
    "power_moment",
    "remark3_bessel_product",
    "remark3_lhs",
    "sample",
]
