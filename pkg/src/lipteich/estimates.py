"""Uniform return type for distance computations."""

from __future__ import annotations

from dataclasses import dataclass

#: Guarantee classes for a numeric distance value.
EXACT = "exact"
TRUNCATION = "lower-bound-by-truncation"
ADDITIVE = "additive-constant-estimate"


@dataclass(frozen=True)
class MetricEstimate:
    """A distance value tagged with its guarantee class and a witness tag."""

    value: float
    guarantee: str
    detail: str = ""

    def __post_init__(self):
        if self.guarantee not in (EXACT, TRUNCATION, ADDITIVE):
            raise ValueError(f"unknown guarantee {self.guarantee!r}")

    def csv_fields(self):
        return (self.value, self.guarantee, self.detail)
