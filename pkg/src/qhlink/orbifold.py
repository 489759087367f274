"""Orbifold invariants of the quotient surface of a link.

Singular-point detection on a weighted hypersurface, topological and orbifold
Euler characteristic and signature, the self-intersection of the first Chern
class, and the Einstein obstruction inequalities with their exact margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContainsSingularLine, DimensionUnsupported, QuasiSmoothnessViolation
from .weights import Monomial, QhPolynomial, WeightVector, quasi_smooth_conditions


@dataclass(frozen=True)
class SingularPoint:
    """An isolated orbifold point: a coordinate vertex or a point on a
    coordinate edge whose weights share a factor."""

    kind: str  # "vertex" | "edge"
    indices: tuple[int, ...]  # (i,) for a vertex, (i, j) for an edge point
    group_order: int
    root_index: int | None = None

    @property
    def correction(self) -> Fraction:
        return 1 - Fraction(1, self.group_order)


def _pure_power_present(support: Iterable[Monomial], i: int) -> bool:
    return any(m.support == (i,) for m in support)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # univariate Euclid over the rationals, returning a monic gcd
    def deg(p):
        return len(p) - 1

    def rem(p, q):
        p = p[:]
        while len(p) >= len(q) and any(c != 0 for c in p):
            if p[-1] == 0:
                p.pop()
                continue
            shift = len(p) - len(q)
            factor = p[-1] / q[-1]
            for k in range(len(q)):
                p[shift + k] -= factor * q[k]
            p.pop()
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    while any(c != 0 for c in b):
        a, b = b, rem(a, b)
    lead = a[-1]
    return [c / lead for c in a]


def _distinct_root_count(h: list[Fraction]) -> int:
    # number of distinct complex roots: degree of h / gcd(h, h')
    if len(h) <= 1:
        return 0
    deriv = [k * c for k, c in enumerate(h)][1:]
    g = _poly_gcd(h, deriv)
    return (len(h) - 1) - (len(g) - 1)


def singular_points(f: QhPolynomial) -> list[SingularPoint]:
    """Locate the orbifold points of the hypersurface cut out by f.

    A vertex P_i with w_i >= 2 lies on the hypersurface exactly when no pure
    power of z_i appears in the support. On a coordinate edge whose weights
    share a factor c >= 2, the restriction of f to the edge is a binary form;
    each of its distinct roots away from the vertices is an orbifold point of
    order c. An identically zero restriction means the hypersurface contains
    the singular line, so the singular locus is not isolated.
    """
    w = f.weights
    if len(w) != 4:
        raise DimensionUnsupported(len(w), 4, "singular point detection")
    report = quasi_smooth_conditions(w, f.degree, f.support)
    for name, subject in report.failing():
        if name == "shared_edge":
            raise ContainsSingularLine(*subject)
        raise QuasiSmoothnessViolation(name, subject)

    points: list[SingularPoint] = []
    for i, wi in enumerate(w.weights):
        if wi >= 2 and not _pure_power_present(f.support, i):
            points.append(SingularPoint("vertex", (i,), wi))

    for i in range(4):
        for j in range(i + 1, 4):
            c = math.gcd(w.weights[i], w.weights[j])
            if c < 2:
                continue
            edge_terms = [
                (m.exponents[j], coeff)
                for m, coeff in f.terms
                if all(e == 0 for k, e in enumerate(m.exponents) if k not in (i, j))
            ]
            if not edge_terms:
                raise ContainsSingularLine(i, j)
            # restriction with z_i = 1, powers of z_j stepped by w_i / c
            beta = min(e for e, _ in edge_terms)
            step = w.weights[i] // c
            coeffs = [Fraction(0)] * ((max(e for e, _ in edge_terms) - beta) // step + 1)
            for e, coeff in edge_terms:
                assert (e - beta) % step == 0
                coeffs[(e - beta) // step] += coeff
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            for r in range(_distinct_root_count(coeffs)):
                points.append(SingularPoint("edge", (i, j), c, root_index=r))
    return points


def surface_betti(b2_link: int, offset: int = 1) -> int:
    """Second Betti number of the quotient surface from that of the link.

    The circle-bundle relation adds one class (the fiber class); the offset is
    configurable for cases where that relation does not apply.
    """
    return b2_link + offset


@dataclass(frozen=True)
class TopInvariants:
    chi_top: int
    tau_top: int

    @property
    def combination(self) -> int:
        """2*chi + 3*tau, the smooth Einstein obstruction quantity."""
        return 2 * self.chi_top + 3 * self.tau_top


def top_invariants(b2_surface: int) -> TopInvariants:
    """Euler characteristic 2 + b2 and signature 2 - b2 of the surface."""
    if b2_surface < 1:
        raise ValueError("surface Betti number must be at least 1")
    return TopInvariants(2 + b2_surface, 2 - b2_surface)


def chi_orb(chi_top: int, points: Sequence[SingularPoint]) -> Fraction:
    """Orbifold Euler characteristic: chi_top minus sum of (1 - 1/|G_x|)."""
    return chi_top - sum((p.correction for p in points), Fraction(0))


def c1_squared(w: WeightVector, d: int) -> Fraction:
    """Chern number d * (|w| - d)^2 / (w0 w1 w2 w3); zero exactly at index zero."""
    if len(w) != 4:
        raise DimensionUnsupported(len(w), 4, "Chern number")
    return Fraction(d * (w.total - d) ** 2, math.prod(w.weights))


def tau_orb(c1_sq: Fraction, chi: Fraction) -> Fraction:
    """Orbifold signature from c1^2 = 2*chi_orb + 3*tau_orb."""
    return (Fraction(c1_sq) - 2 * Fraction(chi)) / 3


@dataclass(frozen=True)
class HitchinThorpeChecks:
    """Exact evaluation of the orbifold Einstein obstruction inequalities."""

    chi_top_dominates_local_terms: bool  # chi_top >= sum(1 - 1/|G|) >= N/2
    orbifold_signature_bound: bool  # chi_orb >= (3/2)|tau_orb|
    combined_chain: bool  # chi_top >= (3/2)|tau_orb| + sum(1 - 1/|G|)
    c1_sq_nonnegative: bool
    local_term_sum: Fraction
    signature_bound_margin: Fraction  # chi_orb - (3/2)|tau_orb|

    @property
    def all_ok(self) -> bool:
        return (
            self.chi_top_dominates_local_terms
            and self.orbifold_signature_bound
            and self.combined_chain
            and self.c1_sq_nonnegative
        )


def hitchin_thorpe_checks(
    chi_top: int,
    chi: Fraction,
    tau: Fraction,
    c1_sq: Fraction,
    points: Sequence[SingularPoint],
) -> HitchinThorpeChecks:
    local = sum((p.correction for p in points), Fraction(0))
    n_points = len(points)
    signature_term = Fraction(3, 2) * abs(Fraction(tau))
    return HitchinThorpeChecks(
        chi_top_dominates_local_terms=(chi_top >= local >= Fraction(n_points, 2)),
        orbifold_signature_bound=(chi >= signature_term),
        combined_chain=(chi_top >= signature_term + local),
        c1_sq_nonnegative=(c1_sq >= 0),
        local_term_sum=local,
        signature_bound_margin=Fraction(chi) - signature_term,
    )


@dataclass(frozen=True)
class OrbifoldReport:
    """Aggregated exact orbifold invariants of the quotient surface."""

    b2_surface: int
    chi_top: int
    tau_top: int
    chi_orb: Fraction
    tau_orb: Fraction
    c1_sq: Fraction
    singular_points: tuple[SingularPoint, ...]
    checks: HitchinThorpeChecks

    def __post_init__(self):
        assert self.c1_sq == 2 * self.chi_orb + 3 * self.tau_orb
        assert self.chi_top == 2 + self.b2_surface
        assert self.tau_top == 2 - self.b2_surface


def orbifold_report(f: QhPolynomial, b2_link: int, offset: int = 1) -> OrbifoldReport:
    """Full orbifold block for a hypersurface: singular points, exact
    characteristic numbers, and the obstruction checks."""
    points = tuple(singular_points(f))
    b2 = surface_betti(b2_link, offset)
    top = top_invariants(b2)
    chi = chi_orb(top.chi_top, points)
    c1 = c1_squared(f.weights, f.degree)
    tau = tau_orb(c1, chi)
    checks = hitchin_thorpe_checks(top.chi_top, chi, tau, c1, points)
    return OrbifoldReport(b2, top.chi_top, top.tau_top, chi, tau, c1, points, checks)
