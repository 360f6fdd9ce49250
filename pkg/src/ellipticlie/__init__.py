"""Exact computations with the free Lie algebras L(A,T) and L(X0,X1), their
special derivations, depth and weight filtrations, and period polynomials."""

from .kernels import BACKEND
from .freelie import AT, X01, LieElement, bracket, gen, lyndon_basis, parse_expr, theta, witt_dim
from .derivations import Derivation, commutator, epsilon, epsilon_check, epsilon_std, is_der0, w_pollack

__version__ = "0.1.0"

__all__ = [
    "AT",
    "BACKEND",
    "Derivation",
    "LieElement",
    "X01",
    "bracket",
    "commutator",
    "epsilon",
    "epsilon_check",
    "epsilon_std",
    "gen",
    "is_der0",
    "lyndon_basis",
    "parse_expr",
    "theta",
    "w_pollack",
    "witt_dim",
]
