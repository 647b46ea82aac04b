"""Step-size rules for the three convergence regimes plus fixed grid values."""

from __future__ import annotations

from dataclasses import dataclass

SQRT_HORIZON = "constant-over-sqrtT"
PL_HARMONIC = "pl-harmonic"
FIXED_VALUE = "fixed-grid-value"


@dataclass(frozen=True)
class StepSizeRule:
    """Emits the step size used throughout outer iteration t.

    kind constant-over-sqrtT: base / sqrt(horizon) for every t (base=1
    reproduces the theoretical prescription). kind pl-harmonic:
    2 / (mu * (t+1)). kind fixed-grid-value: the base value unchanged.
    """

    kind: str
    base: float = 1.0
    mu: float | None = None

    def __post_init__(self):
        if self.kind not in (SQRT_HORIZON, PL_HARMONIC, FIXED_VALUE):
            raise ValueError(f"unknown step rule kind {self.kind!r}")
        if self.kind == PL_HARMONIC:
            if self.mu is None or self.mu <= 0:
                raise ValueError("pl-harmonic needs mu > 0")
        elif self.base <= 0:
            raise ValueError("step sizes must be strictly positive")

    def alpha(self, t: int, horizon: int) -> float:
        if self.kind == SQRT_HORIZON:
            if horizon < 1:
                raise ValueError("constant-over-sqrtT needs the run horizon")
            return self.base / float(horizon) ** 0.5
        if self.kind == PL_HARMONIC:
            return 2.0 / (self.mu * (t + 1))
        return self.base

    @classmethod
    def sqrt_horizon(cls, base: float = 1.0) -> "StepSizeRule":
        return cls(kind=SQRT_HORIZON, base=base)

    @classmethod
    def pl_harmonic(cls, mu: float) -> "StepSizeRule":
        return cls(kind=PL_HARMONIC, mu=mu)

    @classmethod
    def fixed(cls, value: float) -> "StepSizeRule":
        return cls(kind=FIXED_VALUE, base=value)
