"""Exact rational algebra: graded polynomials, presented rings, linear algebra."""

from .bernoulli import bernoulli
from .linalg import determinant, in_span, intersect, nullspace, rank, rref, same_span
from .poly import Generator, GeneratorTable, GradedPolynomial, Monomial, koszul_sign, order_key
from .rings import (
    RewriteRule,
    RingPresentation,
    TensorRing,
    embed,
    enumerate_monomials,
    extend_ring,
    rule_from_relation,
    substitute,
    tensor,
)
from .textio import ParseError, format_poly, format_rational, parse_poly

__all__ = [
    "Generator",
    "GeneratorTable",
    "GradedPolynomial",
    "Monomial",
    "ParseError",
    "RewriteRule",
    "RingPresentation",
    "TensorRing",
    "bernoulli",
    "determinant",
    "embed",
    "enumerate_monomials",
    "extend_ring",
    "format_poly",
    "format_rational",
    "in_span",
    "intersect",
    "koszul_sign",
    "nullspace",
    "order_key",
    "parse_poly",
    "rank",
    "reduce",
    "rref",
    "rule_from_relation",
    "same_span",
    "substitute",
    "tensor",
]


def reduce(p: GradedPolynomial, ring: RingPresentation) -> GradedPolynomial:
    return ring.reduce(p)
