"""Shared fixtures: reference parameter rows, random generators, CSV builders."""

from datetime import datetime, timedelta

import numpy as np
from scipy.integrate import quad

from windfit import distributions as dist
from windfit.families import DistParams, FamilyId

# Fitted six-parameter rows for the two composite families, one per
# season-set (annual + four seasons), used as evaluation anchors.
WE3_LL3_ROWS = {
    "annual": DistParams.we3_ll3(0.9619, 1.8805, 0.7394, 3.1318, 0.7489, -2.3133),
    "winter": DistParams.we3_ll3(6.4659, 2.2152, 1.0062, 0.2178, 0.7331, -0.4352),
    "spring": DistParams.we3_ll3(3.8217, 1.2911, 4.0028, 7.5347, 2.3723, -3.5170),
    "summer": DistParams.we3_ll3(2.3270, 3.2969, 2.5366, 0.1830, 0.4260, -2.1687),
    "autumn": DistParams.we3_ll3(8.2953, 1.1520, 5.9965, 2.9900, 2.0701, -7.1144),
}
LL3_WE3_ROWS = {
    "annual": DistParams.ll3_we3(3.4232, 1.5701, 1.6756, 6.1670, 1.3805, -6.2797),
    "winter": DistParams.ll3_we3(3.4857, 6.4302, 6.1397, 0.6950, 0.3113, -8.6068),
    "spring": DistParams.ll3_we3(1.9780, 2.2705, 0.6022, 3.6228, 0.7401, -1.7236),
    "summer": DistParams.ll3_we3(2.4518, 3.9466, 2.3182, 3.6378, 0.5017, -6.7806),
    "autumn": DistParams.ll3_we3(3.1284, 4.4782, 1.1355, 2.3734, 0.4781, -4.3178),
}
COMPOSITE_ROWS = list(WE3_LL3_ROWS.values()) + list(LL3_WE3_ROWS.values())

# Reference four-criteria values and rank column, season-set by season-set:
# (family, ks, r2, rmse, chi2, rank)
F = FamilyId
GOF_TABLE = {
    "annual": [
        (F.WE3, 0.1354, 0.9706, 0.0495, 23.9369, 6),
        (F.LL3, 0.1073, 0.9780, 0.0428, 18.8253, 2),
        (F.LN3, 0.1124, 0.9771, 0.0436, 19.5499, 3),
        (F.GEV, 0.1213, 0.9755, 0.0452, 21.6542, 4),
        (F.WE3_LL3, 0.1321, 0.9719, 0.0484, 23.3270, 5),
        (F.LL3_WE3, 0.0992, 0.9793, 0.0415, 18.0069, 1),
    ],
    "winter": [
        (F.WE3, 0.2107, 0.9070, 0.0879, 13.6159, 6),
        (F.LL3, 0.1458, 0.9484, 0.0655, 9.5749, 2),
        (F.LN3, 0.1793, 0.9310, 0.0757, 11.1246, 3),
        (F.GEV, 0.1802, 0.9303, 0.0761, 11.6164, 4),
        (F.WE3_LL3, 0.2080, 0.9092, 0.0868, 13.2413, 5),
        (F.LL3_WE3, 0.1455, 0.9487, 0.0653, 9.4984, 1),
    ],
    "spring": [
        (F.WE3, 0.1376, 0.9678, 0.0517, 6.4234, 5),
        (F.LL3, 0.1047, 0.9798, 0.0409, 4.3847, 2),
        (F.LN3, 0.1110, 0.9781, 0.0426, 4.6806, 4),
        (F.GEV, 0.1085, 0.9796, 0.0411, 4.4638, 3),
        (F.WE3_LL3, 0.1475, 0.9602, 0.0575, 7.5979, 6),
        (F.LL3_WE3, 0.0981, 0.9814, 0.0394, 4.1034, 1),
    ],
    "summer": [
        (F.WE3, 0.0713, 0.9882, 0.0313, 2.8987, 2),
        (F.LL3, 0.0833, 0.9859, 0.0342, 3.1690, 6),
        (F.LN3, 0.0763, 0.9884, 0.0311, 2.7490, 3),
        (F.GEV, 0.0788, 0.9879, 0.0318, 2.8311, 4),
        (F.WE3_LL3, 0.0709, 0.9889, 0.0303, 2.7284, 1),
        (F.LL3_WE3, 0.0791, 0.9867, 0.0332, 3.0047, 5),
    ],
    "autumn": [
        (F.WE3, 0.1371, 0.9753, 0.0453, 6.0072, 5),
        (F.LL3, 0.1048, 0.9792, 0.0416, 4.4866, 2),
        (F.LN3, 0.1082, 0.9789, 0.0415, 4.6498, 3),
        (F.GEV, 0.1147, 0.9787, 0.0421, 4.6711, 4),
        (F.WE3_LL3, 0.1512, 0.9713, 0.0488, 7.3538, 6),
        (F.LL3_WE3, 0.1021, 0.9800, 0.0408, 4.4397, 1),
    ],
}


def random_params(family: FamilyId, rng: np.random.Generator) -> DistParams:
    """A valid, well-conditioned parameter set for property tests."""
    u = rng.uniform
    if family is FamilyId.WE3:
        return DistParams.we3(u(0.5, 4.0), u(0.7, 5.0), u(-1.0, 3.0))
    if family is FamilyId.LL3:
        return DistParams.ll3(u(0.5, 4.0), u(1.0, 6.0), u(-1.0, 3.0))
    if family is FamilyId.LN3:
        return DistParams.ln3(u(-0.5, 1.5), u(0.2, 1.2), u(-1.0, 3.0))
    if family is FamilyId.GEV:
        return DistParams.gev(u(-0.35, 0.35), u(0.5, 3.0), u(-1.0, 3.0))
    if family is FamilyId.WE3_LL3:
        return DistParams.we3_ll3(u(0.5, 3.0), u(0.8, 2.5), u(0.0, 2.0),
                                  u(0.5, 4.0), u(0.7, 2.5), u(-3.0, 1.0))
    return DistParams.ll3_we3(u(0.5, 3.0), u(1.0, 3.5), u(0.0, 2.0),
                              u(0.5, 4.0), u(0.5, 2.5), u(-3.0, 1.0))


def integrate_pdf(p: DistParams) -> float:
    """Adaptive quadrature of the density over the whole support."""
    sup = dist.support(p)
    pts = [sup.lower]
    pts += [float(dist.quantile(p, q)) for q in (1e-7, 0.25, 0.5, 0.75, 1 - 1e-7)]
    pts.append(sup.upper)
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        if not a < b:
            continue
        val, _ = quad(lambda x: dist.pdf(p, x), a, b,
                      epsabs=1e-10, epsrel=1e-10, limit=300)
        total += val
    return total


def year_csv(params: DistParams, n: int, seed: int,
             start: datetime = datetime(2018, 1, 1),
             step_hours: int = 3) -> str:
    """Synthetic CSV with header and ISO timestamps at a fixed cadence."""
    speeds = dist.sample(params, n, seed).values
    lines = ["timestamp,speed_ms"]
    for i, v in enumerate(speeds):
        ts = start + timedelta(hours=step_hours * i)
        lines.append(f"{ts.isoformat()},{float(v)!r}")
    return "\n".join(lines) + "\n"


def ks_one_sample(values: np.ndarray, cdf_values_sorted: np.ndarray) -> float:
    """sup-norm distance between the step ecdf and a model cdf."""
    n = values.size
    steps = np.arange(1, n + 1) / n
    return float(max(np.max(np.abs(steps - cdf_values_sorted)),
                     np.max(np.abs(steps - 1.0 / n - cdf_values_sorted))))
