"""Adaptive class-level loss aggregation with OWA operators."""

from .aggregation import (
    Family,
    QuantifierSpec,
    iowa,
    owa,
    owa_weights,
    owawa,
    quantifier_eval,
    wa,
)
from .losses import Aggregation, Base, LossConfig, aggregate_loss, class_losses, loss_gradient, softmax

__version__ = "0.1.0"

__all__ = [
    "Aggregation",
    "Base",
    "Family",
    "LossConfig",
    "QuantifierSpec",
    "aggregate_loss",
    "class_losses",
    "iowa",
    "loss_gradient",
    "owa",
    "owa_weights",
    "owawa",
    "quantifier_eval",
    "softmax",
    "wa",
]
