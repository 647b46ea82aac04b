from .base import MooProblem, ProblemConstants, ScalarizedProblem, weighted_value
from .lowrank import RrrProblem, rrr_objective, rrr_partial_gradient
from .quadratic import (
    BallNoise,
    FiniteSumQuadratic,
    GaussianNoise,
    NoNoise,
    NoiseModel,
    QuadraticMoo,
    SinusoidalQuadraticMoo,
    pl_constant,
    quadratic_oracle,
)

__all__ = [
    "MooProblem",
    "ProblemConstants",
    "ScalarizedProblem",
    "weighted_value",
    "RrrProblem",
    "rrr_objective",
    "rrr_partial_gradient",
    "QuadraticMoo",
    "FiniteSumQuadratic",
    "SinusoidalQuadraticMoo",
    "NoiseModel",
    "NoNoise",
    "GaussianNoise",
    "BallNoise",
    "pl_constant",
    "quadratic_oracle",
]
