"""Closed-form pdf/cdf/quantile/support/sampling for the six families.

All functions are pure and accept scalars or numpy arrays for the
evaluation point.  ``pdf`` and ``cdf`` are total in ``x``: points outside
the support yield 0 (cdf yields 1 above an upper-bounded support) rather
than raising, so likelihood code can probe freely.  Invalid *parameters*
always raise :class:`~windfit.errors.InvalidParamsError`.

Numerical notes:

* probability arithmetic in the composites runs in log space wherever
  ``exp`` of a large power appears, so far-tail evaluations neither
  overflow nor go NaN;
* the lognormal cdf/quantile go through the standard-normal ``ndtr`` /
  ``ndtri`` rather than quadrature or root finding;
* the extreme-value family switches to its Gumbel limit for
  ``|mu| < 1e-12`` where the ``1/mu`` exponent becomes singular.
"""

import numpy as np
import scipy.special as sc

from .errors import InvalidParamsError
from .families import DistParams, FamilyId, Support
from .sample import Sample

_GUMBEL_EPS = 1e-12
_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)


# ---------------------------------------------------------------------------
# kernels: raw parameters in, arrays out, no validation


def _we3_logpdf(x, mu, omega, delta):
    y = (x - delta) / mu
    out = np.full_like(y, -np.inf)
    m = y >= 0
    ym = y[m]
    out[m] = np.log(omega / mu) + sc.xlogy(omega - 1.0, ym) - ym ** omega
    return out


def _we3_cdf(x, mu, omega, delta):
    y = (x - delta) / mu
    out = np.zeros_like(y)
    m = y > 0
    out[m] = -np.expm1(-(y[m] ** omega))
    return out


def _we3_quantile(q, mu, omega, delta):
    return delta + mu * (-np.log1p(-q)) ** (1.0 / omega)


def _ll3_logpdf(x, mu, omega, delta):
    y = (x - delta) / mu
    out = np.full_like(y, -np.inf)
    m = y >= 0
    ym = y[m]
    out[m] = (np.log(omega / mu) + sc.xlogy(omega - 1.0, ym)
              - 2.0 * np.logaddexp(0.0, omega * np.log(ym)))
    return out


def _ll3_cdf(x, mu, omega, delta):
    y = (x - delta) / mu
    out = np.zeros_like(y)
    m = y > 0
    out[m] = sc.expit(omega * np.log(y[m]))
    return out


def _ll3_quantile(q, mu, omega, delta):
    return delta + mu * np.exp((np.log(q) - np.log1p(-q)) / omega)


def _ln3_logpdf(x, mu, omega, delta):
    y = x - delta
    out = np.full_like(y, -np.inf)
    m = y > 0
    ly = np.log(y[m])
    out[m] = -ly - np.log(omega) - _LOG_SQRT_2PI - (ly - mu) ** 2 / (2.0 * omega ** 2)
    return out


def _ln3_cdf(x, mu, omega, delta):
    y = x - delta
    out = np.zeros_like(y)
    m = y > 0
    out[m] = sc.ndtr((np.log(y[m]) - mu) / omega)
    return out


def _ln3_quantile(q, mu, omega, delta):
    return delta + np.exp(mu + omega * sc.ndtri(q))


def _gev_logpdf(x, mu, omega, delta):
    if abs(mu) < _GUMBEL_EPS:
        z = (x - delta) / omega
        return -np.log(omega) - z - np.exp(-z)
    t = 1.0 + mu * (x - delta) / omega
    out = np.full_like(t, -np.inf)
    m = t > 0
    lt = np.log(t[m])
    out[m] = -np.log(omega) + (-1.0 / mu - 1.0) * lt - np.exp(-lt / mu)
    return out


def _gev_cdf(x, mu, omega, delta):
    if abs(mu) < _GUMBEL_EPS:
        z = (x - delta) / omega
        return np.exp(-np.exp(-z))
    t = 1.0 + mu * (x - delta) / omega
    out = np.zeros_like(t) if mu > 0 else np.ones_like(t)
    m = t > 0
    out[m] = np.exp(-np.exp(-np.log(t[m]) / mu))
    return out


def _gev_quantile(q, mu, omega, delta):
    if abs(mu) < _GUMBEL_EPS:
        return delta - omega * np.log(-np.log(q))
    return delta + omega * np.expm1(-mu * np.log(-np.log(q))) / mu


def _wl_logpdf(x, mu, omega, delta, lam, beta, xi):
    r = x - xi
    out = np.full_like(r, -np.inf)
    w = np.where(r >= 0, (r / lam) ** beta, -np.inf)
    v = w - delta
    m = (r >= 0) & (v >= 0) & np.isfinite(w)
    out[m] = (np.log(omega) + np.log(beta) - omega * np.log(mu)
              - beta * np.log(lam) + sc.xlogy(beta - 1.0, r[m])
              + sc.xlogy(omega - 1.0, v[m]) - (v[m] / mu) ** omega)
    return out


def _wl_cdf(x, mu, omega, delta, lam, beta, xi):
    r = x - xi
    out = np.zeros_like(r)
    m = r > 0
    v = (r[m] / lam) ** beta - delta
    u = np.maximum(v, 0.0) / mu
    out[m] = np.where(v > 0, -np.expm1(-(u ** omega)), 0.0)
    return out


def _wl_quantile(q, mu, omega, delta, lam, beta, xi):
    gen = mu * (-np.log1p(-q)) ** (1.0 / omega) + delta
    return xi + lam * gen ** (1.0 / beta)


def _lw_logpdf(x, mu, omega, delta, lam, beta, xi):
    r = x - xi
    out = np.full_like(r, -np.inf)
    z = np.where(r >= 0, (r / lam) ** beta, np.inf)
    bb = -np.expm1(np.log1p(delta) - z)
    m = (r >= 0) & (bb >= 0) & np.isfinite(z)
    zm = z[m]
    log_b = np.log(bb[m])
    log_gen = omega * (np.log(mu) - zm)
    out[m] = (np.log(omega) + np.log(beta) - np.log(lam)
              + sc.xlogy(beta - 1.0, r[m] / lam)
              + log_gen + sc.xlogy(omega - 1.0, bb[m])
              - 2.0 * np.logaddexp(omega * log_b, log_gen))
    return out


def _lw_cdf(x, mu, omega, delta, lam, beta, xi):
    r = x - xi
    out = np.zeros_like(r)
    m = r > 0
    a = np.expm1((r[m] / lam) ** beta) - delta
    fm = np.zeros_like(a)
    pos = a > 0
    fm[pos] = 1.0 / (1.0 + (mu / a[pos]) ** omega)
    out[m] = fm
    return out


def _lw_quantile(q, mu, omega, delta, lam, beta, xi):
    t = np.exp((np.log(q) - np.log1p(-q)) / omega)
    return xi + lam * np.log((1.0 + delta) + mu * t) ** (1.0 / beta)


_LOGPDF = {
    FamilyId.WE3: _we3_logpdf,
    FamilyId.LL3: _ll3_logpdf,
    FamilyId.LN3: _ln3_logpdf,
    FamilyId.GEV: _gev_logpdf,
    FamilyId.WE3_LL3: _wl_logpdf,
    FamilyId.LL3_WE3: _lw_logpdf,
}

_CDF = {
    FamilyId.WE3: _we3_cdf,
    FamilyId.LL3: _ll3_cdf,
    FamilyId.LN3: _ln3_cdf,
    FamilyId.GEV: _gev_cdf,
    FamilyId.WE3_LL3: _wl_cdf,
    FamilyId.LL3_WE3: _lw_cdf,
}

_QUANTILE = {
    FamilyId.WE3: _we3_quantile,
    FamilyId.LL3: _ll3_quantile,
    FamilyId.LN3: _ln3_quantile,
    FamilyId.GEV: _gev_quantile,
    FamilyId.WE3_LL3: _wl_quantile,
    FamilyId.LL3_WE3: _lw_quantile,
}


def _args(p: DistParams) -> tuple:
    if p.family.is_composite:
        return (p.mu, p.omega, p.delta, p.lam, p.beta, p.xi)
    return (p.mu, p.omega, p.delta)


def _eval(table, p: DistParams, x):
    p.validate()
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    with np.errstate(divide="ignore", over="ignore", invalid="ignore",
                     under="ignore"):
        out = table[p.family](np.atleast_1d(arr), *_args(p))
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# public surface


def logpdf(p: DistParams, x):
    """Natural log of the density; ``-inf`` outside the support."""
    return _eval(_LOGPDF, p, x)


def pdf(p: DistParams, x):
    """Density at ``x`` (per m/s); 0 outside the support."""
    out = _eval(_LOGPDF, p, x)
    with np.errstate(over="ignore"):
        return float(np.exp(out)) if np.isscalar(out) else np.exp(out)


def cdf(p: DistParams, x):
    """Cumulative probability at ``x``; 0 below and 1 above the support."""
    return _eval(_CDF, p, x)


def quantile(p: DistParams, q):
    """Inverse cdf at probability level(s) ``q`` in the open interval (0,1)."""
    p.validate()
    arr = np.asarray(q, dtype=float)
    if np.any((arr <= 0) | (arr >= 1)) or not np.all(np.isfinite(arr)):
        raise ValueError("quantile level must lie strictly in (0, 1)")
    scalar = arr.ndim == 0
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        out = _QUANTILE[p.family](np.atleast_1d(arr), *_args(p))
    return float(out[0]) if scalar else out


def support(p: DistParams) -> Support:
    """Interval on which the family places positive density."""
    p.validate()
    fam = p.family
    if fam in (FamilyId.WE3, FamilyId.LL3, FamilyId.LN3):
        return Support(p.delta, np.inf, lower_open=True)
    if fam == FamilyId.GEV:
        if abs(p.mu) < _GUMBEL_EPS:
            return Support(-np.inf, np.inf, lower_open=True)
        edge = p.delta - p.omega / p.mu
        if p.mu > 0:
            return Support(edge, np.inf, lower_open=False)
        return Support(-np.inf, edge, lower_open=True)
    if fam == FamilyId.WE3_LL3:
        lower = p.xi + p.lam * p.delta ** (1.0 / p.beta) if p.delta > 0 else p.xi
        return Support(float(lower), np.inf, lower_open=True)
    lower = p.xi + p.lam * np.log1p(p.delta) ** (1.0 / p.beta) if p.delta > 0 else p.xi
    return Support(float(lower), np.inf, lower_open=True)


def sample(p: DistParams, n: int, seed: int) -> Sample:
    """Draw ``n`` inverse-cdf samples, reproducible for a fixed seed."""
    p.validate()
    if n < 1:
        raise ValueError("sample size must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.random(int(n))
    u[u == 0.0] = np.nextafter(0.0, 1.0)
    return Sample(quantile(p, u))
