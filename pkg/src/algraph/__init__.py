"""Garside normal forms and the additional length graph of spherical Artin-Tits groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .coxeter import CoxeterType, classify, coxeter_group, parse_matrix, parse_type
from .garside import GarsideContext, GarsideElement, context

__all__ = [
    "CoxeterType",
    "GarsideContext",
    "GarsideElement",
    "classify",
    "context",
    "coxeter_group",
    "parse_matrix",
    "parse_type",
    "__version__",
]
