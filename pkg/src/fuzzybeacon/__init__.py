"""Deterministic V2X beaconing simulator with a fuzzy transmit gate."""

from .fis import (
    FisDefinition,
    GateVerdict,
    InferenceResult,
    LinguisticVariable,
    NoRuleFired,
    Rule,
    Term,
    classify_output,
    gate_decision,
    infer,
)
from .membership import Ramp, Trapezoid, Triangle, make_mf

__all__ = [
    "FisDefinition",
    "GateVerdict",
    "InferenceResult",
    "LinguisticVariable",
    "NoRuleFired",
    "Ramp",
    "Rule",
    "Term",
    "Trapezoid",
    "Triangle",
    "classify_output",
    "gate_decision",
    "infer",
    "make_mf",
]

__version__ = "0.1.0"
