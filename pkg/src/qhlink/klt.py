"""Arithmetic certificate that anticanonical divisors stay Kawamata log
terminal at a given scaling weight.

The certified geometry: the anticanonical class restricted to the hypersurface
splits into two curve components meeting transversally at one orbifold point,
and multiplicity caps at the orbifold points come from pencils through them.
The module evaluates the resulting two-coefficient inequality chain with exact
rationals and renders the final strict-inequality verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionUnsupported, InfeasibleSystem, MissingQuadraticPart
from .weights import Monomial, QhPolynomial, WeightVector, index_of


def ambient_triple_intersection(
    w: WeightVector, degrees: tuple[int, int, int]
) -> Fraction:
    """Triple product of hypersurface classes on the weighted 3-space:
    a*b*c / (w0 w1 w2 w3)."""
    if len(w) != 4:
        raise DimensionUnsupported(len(w), 4, "triple intersection")
    a, b, c = degrees
    if a <= 0 or b <= 0 or c <= 0:
        raise ValueError("class degrees must be positive")
    return Fraction(a * b * c, math.prod(w.weights))


def coordinate_curve_degree(w: WeightVector, i: int, j: int, k: int) -> Fraction:
    """Degree of a class O(k) on the coordinate curve with free variables
    z_i, z_j: k / (w_i * w_j)."""
    if i == j:
        raise ValueError("curve indices must be distinct")
    if k < 0:
        raise ValueError("class degree must be non-negative")
    return Fraction(k, w.weights[i] * w.weights[j])


@dataclass(frozen=True)
class IntersectionTable:
    """Pairwise intersection numbers of the two components of the split
    anticanonical curve, all exact rationals."""

    o1_c_total: Fraction
    o1_c1: Fraction
    o1_c2: Fraction
    c1_c2: Fraction
    c1_sq_self: Fraction
    c2_sq_self: Fraction

    def __post_init__(self):
        assert self.o1_c1 + self.o1_c2 == self.o1_c_total
        assert self.c1_sq_self == self.o1_c1 - self.c1_c2
        assert self.c2_sq_self == self.o1_c2 - self.c1_c2


def build_intersection_table(
    o1_c1: Fraction, o1_c2: Fraction, meet_order: int
) -> IntersectionTable:
    """Fill the table from the two component degrees and the order of the
    local group at the single transversal meeting point.

    The meeting point contributes 1/meet_order to C1.C2; the
    self-intersections follow from C_i.(C1 + C2) being the degree of the
    polarizing class on C_i.
    """
    if meet_order < 1:
        raise ValueError("meeting-point group order must be at least 1")
    o1_c1 = Fraction(o1_c1)
    o1_c2 = Fraction(o1_c2)
    c1_c2 = Fraction(1, meet_order)
    return IntersectionTable(
        o1_c_total=o1_c1 + o1_c2,
        o1_c1=o1_c1,
        o1_c2=o1_c2,
        c1_c2=c1_c2,
        c1_sq_self=o1_c1 - c1_c2,
        c2_sq_self=o1_c2 - c1_c2,
    )


def vertex_mult_cap(
    w: WeightVector, d: int, index: int, pencil_degree: int, group_order: int
) -> Fraction:
    """Cap on the multiplicity of the pulled-back divisor at a local cover.

    Intersecting with a general pencil member of the given degree through the
    point bounds the multiplicity by group_order * k * I * d / (w0 w1 w2 w3).
    With group order 1 this is the generic off-point bound.
    """
    if index <= 0 or pencil_degree <= 0 or group_order < 1:
        raise ValueError("index, pencil degree and group order must be positive")
    return group_order * ambient_triple_intersection(w, (pencil_degree, index, d))


@dataclass(frozen=True)
class CoefficientBounds:
    """Solved component-coefficient bounds and the tangent-direction cap."""

    a_max: Fraction
    b_max: Fraction
    tangent_coeff_max: Fraction
    residual_mult_cap: Fraction  # cap on mult of the residual part at the point


def _one_sided_bound(
    o1_this: Fraction, o1_other: Fraction, c_self: Fraction, c1_c2: Fraction,
    mult_cap: Fraction,
) -> Fraction:
    # Intersecting the splitting a*C1 + b*C2 + D' with C1 and bounding
    #   C1.D' <= O(1).D' <= O(1)^2 - a * O(1).C1   and   b <= mult_cap - a
    # yields a linear inequality  a * denom <= numer.
    total = o1_this + o1_other
    numer = total - o1_this + mult_cap * c1_c2
    denom = o1_this + c1_c2 - c_self
    if denom <= 0:
        raise InfeasibleSystem(f"degenerate chain, coefficient {denom} of the bound")
    bound = numer / denom
    if bound < 0:
        raise InfeasibleSystem(f"derived coefficient bound {bound} is negative")
    return bound


def coefficient_bounds(
    table: IntersectionTable, mult_cap: Fraction, group_order: int
) -> CoefficientBounds:
    """Solve the inequality chain for the two component coefficients.

    For component coefficient a, the residual part D' has multiplicity at the
    local cover bounded by group_order * (O(1)^2 - a * O(1).C1), so the
    coefficient picked up in the tangent direction of the component is at most
    a plus that cap; the expression is linear in a, hence maximal at an
    endpoint of [0, a_max].
    """
    mult_cap = Fraction(mult_cap)
    if mult_cap < 0:
        raise ValueError("multiplicity cap must be non-negative")
    a_max = _one_sided_bound(
        table.o1_c1, table.o1_c2, table.c1_sq_self, table.c1_c2, mult_cap
    )
    b_max = _one_sided_bound(
        table.o1_c2, table.o1_c1, table.c2_sq_self, table.c1_c2, mult_cap
    )
    best: tuple[Fraction, Fraction] | None = None
    for coeff_bound, o1_this in ((a_max, table.o1_c1), (b_max, table.o1_c2)):
        for a in (Fraction(0), coeff_bound):
            residual = group_order * (table.o1_c_total - a * o1_this)
            if best is None or a + residual > best[0]:
                best = (a + residual, residual)
    tangent, residual = best
    return CoefficientBounds(a_max, b_max, tangent, residual)


@dataclass(frozen=True)
class KltCertificate:
    """Outcome of the certificate at a scaling weight gamma.

    The verdict is true exactly when gamma times each of the two worst-case
    coefficients is strictly below one.
    """

    gamma: Fraction
    mult_cap: Fraction
    a_max: Fraction
    b_max: Fraction
    tangent_coeff_max: Fraction
    generic_mult_bound: Fraction
    verdict: bool
    tangent_product: Fraction
    generic_product: Fraction
    margin: Fraction

    def __post_init__(self):
        assert self.verdict == (
            self.gamma * self.tangent_coeff_max < 1
            and self.gamma * self.generic_mult_bound < 1
        )


def klt_verdict(
    gamma: Fraction,
    tangent_coeff_max: Fraction,
    generic_mult_bound: Fraction,
    mult_cap: Fraction,
    a_max: Fraction,
    b_max: Fraction,
) -> KltCertificate:
    """Exact strict-inequality verdict at the scaling weight gamma."""
    gamma = Fraction(gamma)
    tangent_product = gamma * tangent_coeff_max
    generic_product = gamma * generic_mult_bound
    verdict = tangent_product < 1 and generic_product < 1
    return KltCertificate(
        gamma=gamma,
        mult_cap=Fraction(mult_cap),
        a_max=Fraction(a_max),
        b_max=Fraction(b_max),
        tangent_coeff_max=Fraction(tangent_coeff_max),
        generic_mult_bound=Fraction(generic_mult_bound),
        verdict=verdict,
        tangent_product=tangent_product,
        generic_product=generic_product,
        margin=1 - max(tangent_product, generic_product),
    )


def evaluate_certificate(
    w: WeightVector,
    d: int,
    *,
    gamma: Fraction,
    generic_pencil_degree: int,
    points: Sequence[tuple[int, int]],
    splitting_class_degree: int,
    component_curve_indices: tuple[int, int],
    meet_order: int,
) -> KltCertificate:
    """Run the whole certificate from its geometric inputs.

    points lists (pencil_degree, group_order) for each orbifold point the
    split curve passes through; the certificate takes the worst case over
    them. The first component is the coordinate curve on
    component_curve_indices; the second is the residual component of the
    degree-splitting_class_degree member that splits.
    """
    index = index_of(w, d)
    if index <= 0:
        raise InfeasibleSystem(f"index {index} is not positive")
    if not points:
        raise ValueError("at least one orbifold point is required")
    generic_bound = ambient_triple_intersection(w, (generic_pencil_degree, index, d))
    i, j = component_curve_indices
    o1_c1 = coordinate_curve_degree(w, i, j, index)
    o1_total = ambient_triple_intersection(w, (splitting_class_degree, index, d))
    table = build_intersection_table(o1_c1, o1_total - o1_c1, meet_order)

    worst: tuple[Fraction, Fraction, CoefficientBounds] | None = None
    for pencil_degree, group_order in points:
        cap = vertex_mult_cap(w, d, index, pencil_degree, group_order)
        bounds = coefficient_bounds(table, cap, group_order)
        if worst is None or bounds.tangent_coeff_max > worst[1]:
            worst = (cap, bounds.tangent_coeff_max, bounds)
    cap, _, bounds = worst
    return klt_verdict(
        gamma=gamma,
        tangent_coeff_max=bounds.tangent_coeff_max,
        generic_mult_bound=generic_bound,
        mult_cap=cap,
        a_max=bounds.a_max,
        b_max=bounds.b_max,
    )


_SPLITTING_WEIGHTS = (1, 3, 5, 8)
_SPLITTING_DEGREE = 16
_QUADRATIC_SQUARE = Monomial((0, 0, 0, 2))  # z3^2
_QUADRATIC_CROSS = Monomial((0, 1, 1, 1))  # z1 z2 z3
_QUADRATIC_OTHER = Monomial((0, 2, 2, 0))  # (z1 z2)^2


def splitting_discriminant(f: QhPolynomial) -> Fraction:
    """Discriminant of the quadratic form governing the splitting of the
    anticanonical coordinate section into two distinct components."""
    if f.weights.weights != _SPLITTING_WEIGHTS or f.degree != _SPLITTING_DEGREE:
        raise ValueError(
            "splitting condition is defined for weights (1, 3, 5, 8) in degree 16"
        )
    a = f.coefficient(_QUADRATIC_SQUARE)
    b = f.coefficient(_QUADRATIC_CROSS)
    c = f.coefficient(_QUADRATIC_OTHER)
    if a == 0 and b == 0 and c == 0:
        raise MissingQuadraticPart()
    return b * b - 4 * a * c


def splitting_condition(f: QhPolynomial) -> bool:
    """True when the splitting quadratic has distinct roots."""
    return splitting_discriminant(f) != 0
