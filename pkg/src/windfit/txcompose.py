"""Generic transformed-transformer composition engine.

Any transformer distribution with cdf ``H`` and any generator with cdf
``K`` supported on ``[m, inf)`` compose into a new distribution

    F(x) = K(H(x) / (1 - H(x))) - K(m)
    f(x) = h(x) / (1 - H(x))**2 * k(H(x) / (1 - H(x)))

This module keeps the pair fully opaque (plain single-argument callables)
so it can serve as an independent numerical oracle for the closed-form
composite families in :mod:`windfit.distributions`.

The supplied callables must be pure; the engine itself holds no state.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import TransformerSaturatedError
from .families import DistParams, FamilyId
from . import distributions as _dist


@dataclass(frozen=True)
class TxSpec:
    """A (transformer, generator) pair ready for composition.

    ``transformer_log_sf``, when given, evaluates ``log(1 - H(x))``
    analytically; the engine then forms ``H/(1-H)`` through ``expm1`` and
    stays accurate even where ``H`` rounds to 1.
    """

    transformer_cdf: Callable
    transformer_pdf: Callable
    generator_cdf: Callable
    generator_pdf: Callable
    generator_lower: float
    transformer_log_sf: Callable | None = None


def _ratio(spec: TxSpec, x):
    """H(x) / (1 - H(x)) as an array."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if spec.transformer_log_sf is not None:
        with np.errstate(over="ignore"):
            return np.expm1(-np.asarray(spec.transformer_log_sf(x), dtype=float))
    h = np.asarray(spec.transformer_cdf(x), dtype=float)
    if np.any(h >= 1.0):
        raise TransformerSaturatedError(
            "transformer cdf reached 1; supply transformer_log_sf to "
            "evaluate this far into the tail")
    return h / (1.0 - h)


def tx_cdf(spec: TxSpec, x):
    """Composite cdf ``K(H/(1-H)) - K(generator_lower)``, clipped to [0,1]."""
    t = _ratio(spec, x)
    lower = np.atleast_1d(np.asarray(spec.generator_lower, dtype=float))
    base = float(np.ravel(spec.generator_cdf(lower))[0])
    out = np.asarray(spec.generator_cdf(t), dtype=float) - base
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if np.ndim(x) == 0 else out


def tx_pdf(spec: TxSpec, x):
    """Composite density ``h/(1-H)^2 * k(H/(1-H))``."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    t = _ratio(spec, arr)
    h = np.asarray(spec.transformer_pdf(arr), dtype=float)
    if spec.transformer_log_sf is not None:
        with np.errstate(over="ignore"):
            inv_sf_sq = np.exp(-2.0 * np.asarray(spec.transformer_log_sf(arr),
                                                 dtype=float))
    else:
        hh = np.asarray(spec.transformer_cdf(arr), dtype=float)
        if np.any(hh >= 1.0):
            raise TransformerSaturatedError(
                "transformer cdf reached 1; supply transformer_log_sf to "
                "evaluate this far into the tail")
        inv_sf_sq = 1.0 / (1.0 - hh) ** 2
    out = h * inv_sf_sq * np.asarray(spec.generator_pdf(t), dtype=float)
    return float(out[0]) if np.ndim(x) == 0 else out


def composite_spec(p: DistParams) -> TxSpec:
    """Build the TxSpec matching one of the closed-form composite families.

    The handles wrap the classical-family kernels directly so the
    transformer shape may take any positive value, mirroring what the
    closed forms accept.
    """
    p.validate()
    if p.family == FamilyId.WE3_LL3:
        lam, beta, xi = p.lam, p.beta, p.xi

        def h_pdf(x):
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return np.exp(_dist._ll3_logpdf(np.asarray(x, float), lam, beta, xi))

        def h_cdf(x):
            return _dist._ll3_cdf(np.asarray(x, float), lam, beta, xi)

        def h_log_sf(x):
            # survival of the log-logistic: 1/(1 + ((x-xi)/lam)**beta)
            y = (np.asarray(x, float) - xi) / lam
            with np.errstate(divide="ignore"):
                return -np.logaddexp(0.0, beta * np.log(np.maximum(y, 0.0)))

        mu, omega, delta = p.mu, p.omega, p.delta

        def k_pdf(t):
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return np.exp(_dist._we3_logpdf(np.asarray(t, float), mu, omega, delta))

        def k_cdf(t):
            return _dist._we3_cdf(np.asarray(t, float), mu, omega, delta)

        return TxSpec(h_cdf, h_pdf, k_cdf, k_pdf, generator_lower=delta,
                      transformer_log_sf=h_log_sf)

    if p.family == FamilyId.LL3_WE3:
        lam, beta, xi = p.lam, p.beta, p.xi

        def h_pdf(x):
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return np.exp(_dist._we3_logpdf(np.asarray(x, float), lam, beta, xi))

        def h_cdf(x):
            return _dist._we3_cdf(np.asarray(x, float), lam, beta, xi)

        def h_log_sf(x):
            y = (np.asarray(x, float) - xi) / lam
            return -np.maximum(y, 0.0) ** beta

        mu, omega, delta = p.mu, p.omega, p.delta

        def k_pdf(t):
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return np.exp(_dist._ll3_logpdf(np.asarray(t, float), mu, omega, delta))

        def k_cdf(t):
            return _dist._ll3_cdf(np.asarray(t, float), mu, omega, delta)

        return TxSpec(h_cdf, h_pdf, k_cdf, k_pdf, generator_lower=delta,
                      transformer_log_sf=h_log_sf)

    raise ValueError(f"{p.family.value} is not a composite family")
