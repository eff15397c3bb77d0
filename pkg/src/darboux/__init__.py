"""Exact tools for invariant algebraic curves of planar quadratic vector fields."""

from .poly import (
    DEFAULT_CONTEXT,
    Polynomial,
    VariableContext,
    add,
    evaluate,
    exact_divide,
    mul,
    partial_derivative,
    quasi_weight,
    substitute,
)
from .exprio import ParseError, parse_polynomial, print_polynomial
from .field import (
    CurveCertificate,
    PolyVectorField,
    QuadraticNormalForm,
    cofactor_of,
    lie_derivative,
    probe,
    verify_certificate,
)

__version__ = "0.1.0"
