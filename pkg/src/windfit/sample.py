"""Validated wind-speed sample container."""

from dataclasses import dataclass, field
from datetime import datetime

import numpy as np


@dataclass(frozen=True)
class Sample:
    """A series of wind speeds (m/s), optionally timestamped and labelled."""

    values: np.ndarray
    timestamps: tuple[datetime, ...] | None = None
    label: str | None = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("sample values must be one-dimensional")
        if values.size and not np.all(np.isfinite(values)):
            raise ValueError("sample values must be finite")
        if self.timestamps is not None:
            ts = tuple(self.timestamps)
            if len(ts) != values.size:
                raise ValueError("timestamps must align with values")
            object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def sorted_values(self) -> np.ndarray:
        return np.sort(self.values)


def as_values(sample) -> np.ndarray:
    """Accept a Sample or any array-like and return a float array."""
    if isinstance(sample, Sample):
        return sample.values
    return np.asarray(sample, dtype=float)
