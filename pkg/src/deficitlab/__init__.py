"""Exact F-deficit computations for polynomials over field pairs F inside K."""

from .numbers import ContextSpec, Element, FieldContext, Kind, SetId, make_context
from .poly import DeficitReport, Poly1, compose, deficit1, iterate
from .poly2 import Poly2, compose_uni_bi, deficit2, diag_subst_bi, diag_subst_uni
from .parser import format_poly, parse_element, parse_field, parse_poly

__all__ = [
    "ContextSpec", "Element", "FieldContext", "Kind", "SetId", "make_context",
    "DeficitReport", "Poly1", "compose", "deficit1", "iterate",
    "Poly2", "compose_uni_bi", "deficit2", "diag_subst_bi", "diag_subst_uni",
    "format_poly", "parse_element", "parse_field", "parse_poly",
]
