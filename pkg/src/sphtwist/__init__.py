"""Symbolic toolkit for groups generated by two spherical twists.

The package models twist functors on mesh categories of the translation
quivers ZA_n and ZD_4, solves the word problem in every group that two
spherical twists can generate, certifies free actions by ping-pong, and
computes with the selfinjective algebras Lambda_k and their derived Picard
groups.
"""

from .errors import (
    AmbiguousAction,
    HypothesisViolated,
    InsufficientWindow,
    InvalidInput,
    MismatchedParameter,
    SelfinjectivityViolation,
    SphtwistError,
    UnsupportedDiagram,
    ValidationFailure,
    WordSyntaxError,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousAction",
    "HypothesisViolated",
    "InsufficientWindow",
    "InvalidInput",
    "MismatchedParameter",
    "SelfinjectivityViolation",
    "SphtwistError",
    "UnsupportedDiagram",
    "ValidationFailure",
    "WordSyntaxError",
]
