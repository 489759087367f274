"""Moduli dimension counting for weighted hypersurfaces.

The dimension of the degree-d section space, the dimension of the graded-ring
automorphism group (one weighted homogeneous polynomial of degree w_i per
variable), and their difference as the naive moduli dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeModuliDimension
from .weights import WeightVector, monomial_basis


def dim_graded(w: WeightVector, d: int) -> int:
    """Dimension of the space of weighted homogeneous polynomials of degree d."""
    return monomial_basis(w, d).dimension


def automorphism_shape(w: WeightVector) -> tuple[int, ...]:
    """Per-variable coefficient counts: each variable maps to an arbitrary
    polynomial of its own weight, contributing dim S^{w_i} parameters."""
    return tuple(dim_graded(w, wi) for wi in w.weights)


def dim_automorphism_group(w: WeightVector) -> int:
    """Dimension of the graded-ring automorphism group: sum over variables."""
    return sum(automorphism_shape(w))


@dataclass(frozen=True)
class ModuliReport:
    """Naive orbit-count moduli dimension with its ingredients.

    effective_caveat is always set: the parameters need not all be effective,
    so the count is an upper-bound-style generic dimension.
    """

    dim_graded: int
    dim_aut: int
    dim_aut_projective: int
    per_variable_counts: tuple[int, ...]
    moduli_dim: int
    effective_caveat: bool = True

    def __post_init__(self):
        assert self.moduli_dim == self.dim_graded - self.dim_aut
        assert self.dim_aut_projective == self.dim_aut - 1


def moduli_dimension(w: WeightVector, d: int) -> ModuliReport:
    """Moduli dimension of degree-d hypersurfaces: dim S^d minus dim of the
    automorphism group. Raises when the difference is negative."""
    graded = dim_graded(w, d)
    shape = automorphism_shape(w)
    aut = sum(shape)
    if graded < aut:
        raise NegativeModuliDimension(graded, aut)
    return ModuliReport(
        dim_graded=graded,
        dim_aut=aut,
        dim_aut_projective=aut - 1,
        per_variable_counts=shape,
        moduli_dim=graded - aut,
    )
