"""Exact invariants and automorphism-group bounds for genus 2 fibrations."""

from .errors import (
    BadParameter,
    Genus2Error,
    Inapplicable,
    IndivisibleOrder,
    LimitsTooSmall,
    Mismatch,
    NonIntegral,
    NotSquarefree,
    OddClass,
    ScenarioSyntaxError,
    SemanticError,
    UnknownCase,
)

__version__ = "0.1.0"

__all__ = [
    "BadParameter",
    "Genus2Error",
    "Inapplicable",
    "IndivisibleOrder",
    "LimitsTooSmall",
    "Mismatch",
    "NonIntegral",
    "NotSquarefree",
    "OddClass",
    "ScenarioSyntaxError",
    "SemanticError",
    "UnknownCase",
    "__version__",
]
