"""Distribution families and their parameter containers.

Six families are supported: four classical three-parameter models (WE3,
LL3, LN3, GEV) and two six-parameter composites built by feeding a
"transformer" distribution through ``G(H) = H / (1 - H)`` into a
"generator" distribution (WE3-LL3 pairs a Weibull generator with a
log-logistic transformer, LL3-WE3 the reverse).

Field naming follows the role each symbol plays in the density formulas,
not the customary shape/scale labels: for the Weibull and log-logistic
forms ``mu`` is the scale inside the power bracket and ``omega`` the
exponent (shape); for the lognormal ``mu``/``omega`` are the log-mean and
log-sd; for the extreme-value family ``mu`` is the tail shape and
``omega`` the scale.  ``delta`` is always the generator location.  The
composites add the transformer triple ``lam`` (scale), ``beta`` (shape),
``xi`` (location).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError


class FamilyId(enum.Enum):
    """Tags for the six supported families; values double as CLI tokens."""

    WE3 = "we3"
    LL3 = "ll3"
    LN3 = "ln3"
    GEV = "gev"
    WE3_LL3 = "we3-ll3"
    LL3_WE3 = "ll3-we3"

    @property
    def is_composite(self) -> bool:
        return self in (FamilyId.WE3_LL3, FamilyId.LL3_WE3)

    @property
    def n_params(self) -> int:
        return 6 if self.is_composite else 3

    @property
    def order(self) -> int:
        """Stable enumeration index used for deterministic tie-breaking."""
        return list(FamilyId).index(self)

    @classmethod
    def from_token(cls, token: str) -> "FamilyId":
        key = token.strip().lower().replace("_", "-")
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown family {token!r}; expected one of "
                         + ", ".join(f.value for f in cls))


def param_names(family: FamilyId) -> tuple[str, ...]:
    if family.is_composite:
        return ("mu", "omega", "delta", "lambda", "beta", "xi")
    return ("mu", "omega", "delta")


@dataclass(frozen=True)
class DistParams:
    """Parameter vector of one family.

    ``lam``/``beta``/``xi`` are present iff the family is a composite;
    they serialize as ``lambda``/``beta``/``xi``.
    """

    family: FamilyId
    mu: float
    omega: float
    delta: float
    lam: float | None = None
    beta: float | None = None
    xi: float | None = None

    # -- constructors -------------------------------------------------

    @classmethod
    def we3(cls, mu: float, omega: float, delta: float) -> "DistParams":
        return cls(FamilyId.WE3, mu, omega, delta)

    @classmethod
    def ll3(cls, mu: float, omega: float, delta: float) -> "DistParams":
        return cls(FamilyId.LL3, mu, omega, delta)

    @classmethod
    def ln3(cls, mu: float, omega: float, delta: float) -> "DistParams":
        return cls(FamilyId.LN3, mu, omega, delta)

    @classmethod
    def gev(cls, mu: float, omega: float, delta: float) -> "DistParams":
        return cls(FamilyId.GEV, mu, omega, delta)

    @classmethod
    def we3_ll3(cls, mu: float, omega: float, delta: float,
                lam: float, beta: float, xi: float) -> "DistParams":
        return cls(FamilyId.WE3_LL3, mu, omega, delta, lam, beta, xi)

    @classmethod
    def ll3_we3(cls, mu: float, omega: float, delta: float,
                lam: float, beta: float, xi: float) -> "DistParams":
        return cls(FamilyId.LL3_WE3, mu, omega, delta, lam, beta, xi)

    @classmethod
    def from_vector(cls, family: FamilyId, theta) -> "DistParams":
        theta = [float(t) for t in theta]
        if len(theta) != family.n_params:
            raise ValueError(f"{family.value} takes {family.n_params} "
                             f"parameters, got {len(theta)}")
        if family.is_composite:
            return cls(family, *theta)
        return cls(family, theta[0], theta[1], theta[2])

    # -- views ---------------------------------------------------------

    def as_vector(self) -> np.ndarray:
        if self.family.is_composite:
            return np.array([self.mu, self.omega, self.delta,
                             self.lam, self.beta, self.xi], dtype=float)
        return np.array([self.mu, self.omega, self.delta], dtype=float)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(param_names(self.family), self.as_vector().tolist()))

    # -- validation ----------------------------------------------------

    def validate(self) -> "DistParams":
        """Raise :class:`InvalidParamsError` unless evaluation is well defined.

        The fitting layer applies stricter bounds on top of these (see
        ``estimation``); here we only reject parameter sets for which the
        density/cdf formulas do not describe a probability distribution.
        """
        fam = self.family
        vec = [self.mu, self.omega, self.delta]
        if fam.is_composite:
            if self.lam is None or self.beta is None or self.xi is None:
                raise InvalidParamsError(
                    f"{fam.value} requires the transformer triple lambda/beta/xi")
            vec += [self.lam, self.beta, self.xi]
        else:
            if not (self.lam is None and self.beta is None and self.xi is None):
                raise InvalidParamsError(
                    f"{fam.value} takes no transformer parameters")
        if not all(math.isfinite(v) for v in vec):
            raise InvalidParamsError(f"{fam.value} parameters must be finite")

        def bad(msg: str) -> InvalidParamsError:
            return InvalidParamsError(f"{fam.value}: {msg}")

        if fam == FamilyId.WE3:
            if self.mu <= 0 or self.omega <= 0:
                raise bad("requires mu > 0 and omega > 0")
        elif fam == FamilyId.LL3:
            if self.mu <= 0 or self.omega < 1:
                raise bad("requires mu > 0 and omega >= 1")
        elif fam == FamilyId.LN3:
            if self.omega <= 0:
                raise bad("requires omega > 0")
        elif fam == FamilyId.GEV:
            if self.omega <= 0:
                raise bad("requires omega > 0")
        elif fam == FamilyId.WE3_LL3:
            # beta < 1 gives an integrable edge singularity but still a
            # proper distribution, so evaluation allows any beta > 0.
            if self.mu <= 0 or self.omega <= 0 or self.lam <= 0 or self.beta <= 0:
                raise bad("requires mu, omega, lambda, beta > 0")
            if self.delta < 0:
                raise bad("requires delta >= 0 (the composition only spans "
                          "the generator's support from its lower end up)")
        elif fam == FamilyId.LL3_WE3:
            if self.mu <= 0 or self.lam <= 0 or self.beta <= 0:
                raise bad("requires mu, lambda, beta > 0")
            if self.omega < 1:
                raise bad("requires omega >= 1")
            if self.delta < 0:
                raise bad("requires delta >= 0 (the composition only spans "
                          "the generator's support from its lower end up)")
        return self


@dataclass(frozen=True)
class Support:
    """Interval on which a distribution places positive density."""

    lower: float
    upper: float
    lower_open: bool

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("support requires lower < upper")

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        below = x < self.lower if not self.lower_open else x <= self.lower
        return ~below & (x <= self.upper)
