"""Descriptive statistics of a wind-speed sample."""

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError
from .sample import as_values


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    max: float
    mean: float
    sd: float
    se_mean: float
    skewness: float
    kurtosis: float
    q1: float
    q2: float
    q3: float


def describe(sample) -> DescriptiveStats:
    """Summary statistics in the shape of a seasonal wind-data table.

    sd uses the n-1 divisor; skewness and kurtosis are the population
    central-moment ratios m3/m2^1.5 and m4/m2^2 (non-excess, normal -> 3);
    quartiles interpolate linearly at position 1 + (n-1)p.
    """
    x = as_values(sample)
    if x.size < 2:
        raise InsufficientDataError("describe needs at least 2 observations")
    n = int(x.size)
    mean = float(np.mean(x))
    sd = float(np.std(x, ddof=1))
    c = x - mean
    m2 = float(np.mean(c ** 2))
    m3 = float(np.mean(c ** 3))
    m4 = float(np.mean(c ** 4))
    if m2 == 0.0:
        skew, kurt = 0.0, 0.0
    else:
        skew = m3 / m2 ** 1.5
        kurt = m4 / m2 ** 2
    q1, q2, q3 = (float(v) for v in np.percentile(x, [25, 50, 75]))
    return DescriptiveStats(n=n, max=float(np.max(x)), mean=mean, sd=sd,
                            se_mean=sd / np.sqrt(n), skewness=skew,
                            kurtosis=kurt, q1=q1, q2=q2, q3=q3)
