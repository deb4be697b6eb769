"""Sparse multivariate polynomials over Q and F_p, Groebner bases, small linear algebra."""

from .groebner import (
    GroebnerBasis,
    MonomialOrder,
    eliminate_first,
    groebner,
    ideal_intersection,
    ideal_membership,
    normal_form,
    radical_membership,
)
from .poly import (
    Ideal,
    MPoly,
    Ring,
    T,
    divides,
    is_homogeneous,
    lift,
    partial_derivative,
    reduce_mod_p,
    substitute,
    weighted_degree,
)

__all__ = [
    "GroebnerBasis", "Ideal", "MPoly", "MonomialOrder", "Ring", "T", "divides",
    "eliminate_first", "groebner", "ideal_intersection", "ideal_membership", "is_homogeneous",
    "lift", "normal_form", "partial_derivative", "radical_membership", "reduce_mod_p",
    "substitute", "weighted_degree",
]
