"""Goodness-of-fit statistics over plotting-position probability pairs.

All four criteria compare the empirical cumulative probability of the
j-th order statistic, ``F_j = (j - a) / (n - 2a + 1)``, with the fitted
model's cdf at that order statistic.  The KS statistic here is the
maximum gap over those pairs (not the two-sided step-function variant),
and the chi-square statistic sums ``(F_j - Fhat_j)^2 / Fhat_j`` over all
order statistics without binning.
"""

from dataclasses import dataclass, replace

import numpy as np

from .families import FamilyId
from .sample import as_values


@dataclass(frozen=True)
class GofConfig:
    """``plotting_a`` is the plotting-position constant in [0, 1].

    ``r2_standard`` switches the coefficient of determination to the
    textbook form whose centering mean is the mean of the *empirical*
    probabilities; the default centers on the mean of the predicted ones.
    """

    plotting_a: float = 0.0
    r2_standard: bool = False

    def __post_init__(self):
        if not 0.0 <= self.plotting_a <= 1.0:
            raise ValueError("plotting_a must lie in [0, 1]")


@dataclass(frozen=True)
class ProbabilityPairs:
    """Aligned empirical and predicted cumulative probabilities."""

    empirical: np.ndarray
    predicted: np.ndarray

    def __post_init__(self):
        emp = np.asarray(self.empirical, dtype=float)
        pred = np.asarray(self.predicted, dtype=float)
        if emp.shape != pred.shape or emp.ndim != 1:
            raise ValueError("empirical and predicted must be 1-D and equal length")
        if emp.size == 0:
            raise ValueError("probability pairs must be nonempty")
        if np.any(np.diff(emp) <= 0):
            raise ValueError("empirical probabilities must be strictly increasing")
        object.__setattr__(self, "empirical", emp)
        object.__setattr__(self, "predicted", pred)

    @property
    def n(self) -> int:
        return int(self.empirical.size)

    @classmethod
    def from_sample(cls, sample, cdf_fn, cfg: GofConfig = GofConfig()):
        """Sort the sample and pair plotting positions with ``cdf_fn``."""
        x = np.sort(as_values(sample))
        return cls(empirical_cdf(x, cfg), np.asarray(cdf_fn(x), dtype=float))


def empirical_cdf(sample, cfg: GofConfig = GofConfig()) -> np.ndarray:
    """Plotting positions ``(j - a) / (n - 2a + 1)`` for j = 1..n."""
    x = as_values(sample)
    if x.size == 0:
        raise ValueError("sample must be nonempty")
    n = x.size
    j = np.arange(1, n + 1, dtype=float)
    a = cfg.plotting_a
    return (j - a) / (n - 2.0 * a + 1.0)


def rmse(pairs: ProbabilityPairs) -> float:
    d = pairs.empirical - pairs.predicted
    return float(np.sqrt(np.sum(d * d) / pairs.n))


def r_squared(pairs: ProbabilityPairs, cfg: GofConfig = GofConfig()) -> float:
    d = pairs.empirical - pairs.predicted
    center = np.mean(pairs.empirical if cfg.r2_standard else pairs.predicted)
    denom = float(np.sum((pairs.empirical - center) ** 2))
    if denom == 0.0:
        raise ValueError("zero variance: empirical probabilities all equal the center")
    return float(1.0 - np.sum(d * d) / denom)


def ks_stat(pairs: ProbabilityPairs) -> float:
    return float(np.max(np.abs(pairs.empirical - pairs.predicted)))


def chi2_stat(pairs: ProbabilityPairs) -> float:
    if np.any(pairs.predicted <= 0):
        raise ValueError("chi-square requires all predicted probabilities > 0")
    d = pairs.empirical - pairs.predicted
    return float(np.sum(d * d / pairs.predicted))


@dataclass(frozen=True)
class GofReport:
    """The four criteria plus the model's rank within a comparison set."""

    ks: float
    r2: float
    rmse: float
    chi2: float
    rank: int | None = None

    @classmethod
    def from_pairs(cls, pairs: ProbabilityPairs,
                   cfg: GofConfig = GofConfig()) -> "GofReport":
        return cls(ks=ks_stat(pairs), r2=r_squared(pairs, cfg),
                   rmse=rmse(pairs), chi2=chi2_stat(pairs))


def criterion_ranks(reports: list) -> dict[str, list[int]]:
    """Per-criterion ranks (1 = best) for a list of (family, report).

    KS, RMSE and chi-square rank ascending, R-squared descending; ties
    resolve by family enumeration order.
    """
    fams = [fam for fam, _ in reports]

    def ranks(values, descending=False):
        keyed = sorted(range(len(values)),
                       key=lambda i: ((-values[i] if descending else values[i]),
                                      fams[i].order))
        out = [0] * len(values)
        for pos, i in enumerate(keyed, start=1):
            out[i] = pos
        return out

    return {
        "ks": ranks([r.ks for _, r in reports]),
        "r2": ranks([r.r2 for _, r in reports], descending=True),
        "rmse": ranks([r.rmse for _, r in reports]),
        "chi2": ranks([r.chi2 for _, r in reports]),
    }


def rank_models(reports: list) -> list[tuple[FamilyId, GofReport]]:
    """Fill the overall rank for a set of fitted models.

    Models order primarily by ascending KS; the sum of the four
    per-criterion ranks and then family enumeration order break ties.
    The result is a permutation of 1..k.
    """
    if len(reports) < 2:
        return [(fam, replace(rep, rank=1)) for fam, rep in reports]
    per = criterion_ranks(reports)
    rank_sums = [sum(per[c][i] for c in per) for i in range(len(reports))]
    order = sorted(range(len(reports)),
                   key=lambda i: (reports[i][1].ks, rank_sums[i],
                                  reports[i][0].order))
    overall = [0] * len(reports)
    for pos, i in enumerate(order, start=1):
        overall[i] = pos
    return [(fam, replace(rep, rank=overall[i]))
            for i, (fam, rep) in enumerate(reports)]
