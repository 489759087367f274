"""Weighted graded polynomial rings.

Weight vectors, weighted-degree arithmetic, monomial enumeration for graded
pieces, the well-formedness test for the ambient weighted projective space,
and the monomial-existence conditions that screen a linear system for
quasi-smooth members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    DimensionUnsupported,
    NonCoprimeWeights,
    NonPositiveWeight,
)


@dataclass(frozen=True)
class WeightVector:
    """Positive integer weights (w0, ..., wn), n >= 2, with overall gcd 1."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) < 3:
            raise ValueError("need at least three weights")
        for w in self.weights:
            if not isinstance(w, int) or w < 1:
                raise NonPositiveWeight(w)
        if math.gcd(*self.weights) != 1:
            raise NonCoprimeWeights(math.gcd(*self.weights))

    @property
    def total(self) -> int:
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def validate_weights(raw: Sequence[int]) -> WeightVector:
    """Check positivity and overall coprimality; return the weight vector.

    Raises NonPositiveWeight or NonCoprimeWeights (with the shared factor).
    """
    ws = tuple(int(w) for w in raw)
    return WeightVector(ws)


def is_well_formed(w: WeightVector) -> tuple[bool, tuple[int, ...] | None]:
    """True iff every subset of n of the n+1 weights is coprime.

    For four weights this is exactly the triple condition gcd(wi, wj, wk) = 1.
    On failure, also return one offending subset of weights.
    """
    ws = w.weights
    for drop in range(len(ws)):
        rest = ws[:drop] + ws[drop + 1:]
        if math.gcd(*rest) != 1:
            return False, rest
    return True, None


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of z0^e0 ... zn^en."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    def weighted_degree(self, w: WeightVector) -> int:
        return sum(e * wi for e, wi in zip(self.exponents, w.weights))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e > 0)


@dataclass(frozen=True)
class GradedPiece:
    """All monomials of one weighted degree, in ascending lexicographic order."""

    weights: WeightVector
    degree: int
    basis: tuple[Monomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def monomial_basis(w: WeightVector, d: int) -> GradedPiece:
    """Enumerate every exponent vector e with sum(e_i * w_i) = d.

    The result is complete, duplicate free, and in ascending lexicographic
    order on exponent vectors, so downstream reports are byte stable.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    ws = w.weights
    last = len(ws) - 1
    out: list[Monomial] = []

    def extend(pos: int, remaining: int, prefix: tuple[int, ...]) -> None:
        if pos == last:
            q, r = divmod(remaining, ws[pos])
            if r == 0:
                out.append(Monomial(prefix + (q,)))
            return
        for e in range(remaining // ws[pos] + 1):
            extend(pos + 1, remaining - e * ws[pos], prefix + (e,))

    extend(0, d, ())
    return GradedPiece(w, d, tuple(out))


def index_of(w: WeightVector, d: int) -> int:
    """Anticanonical index |w| - d; positive on the Fano side, zero or negative otherwise."""
    return w.total - d


@dataclass(frozen=True)
class QhPolynomial:
    """Weighted homogeneous polynomial of one degree with exact rational coefficients."""

    weights: WeightVector
    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(m for m, _ in self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        for mono, c in self.terms:
            if mono == m:
                return c
        return Fraction(0)


def qh_polynomial(
    w: WeightVector,
    d: int,
    terms: Iterable[tuple[Sequence[int], Fraction | int | str]],
) -> QhPolynomial:
    """Build a polynomial, checking degree, non-zero coefficients and duplicates."""
    if d < 1:
        raise ValueError("degree must be a positive integer")
    seen: dict[Monomial, Fraction] = {}
    for exponents, coeff in terms:
        mono = Monomial(tuple(int(e) for e in exponents))
        if len(mono.exponents) != len(w):
            raise ValueError(
                f"monomial {mono.exponents} has {len(mono.exponents)} exponents, "
                f"expected {len(w)}"
            )
        deg = mono.weighted_degree(w)
        if deg != d:
            raise DegreeMismatch(mono.exponents, deg, d)
        c = Fraction(coeff)
        if c == 0:
            raise ValueError(f"zero coefficient for monomial {mono.exponents}")
        if mono in seen:
            raise ValueError(f"duplicate monomial {mono.exponents}")
        seen[mono] = c
    ordered = tuple(sorted(seen.items(), key=lambda mc: mc[0].exponents))
    return QhPolynomial(w, d, ordered)


@dataclass(frozen=True)
class ConditionClause:
    """One clause of a quasi-smoothness condition: its subject, verdict and witnesses."""

    subject: tuple[int, ...]
    passed: bool
    witnesses: tuple[Monomial, ...]


@dataclass(frozen=True)
class QuasiSmoothnessReport:
    """Per-condition results of the monomial-existence screen.

    vertex:       every variable z_i has a monomial z_i^m z_j in the support
                  (j = i allowed, giving a pure power of z_i)
    shared_edge:  every pair with gcd(w_i, w_j) > 1 has a monomial supported
                  on {z_i, z_j} alone
    pair_cover:   every pair has either a monomial supported on {z_i, z_j} or
                  two monomials z_i^c z_j^c' z_k and z_i^d z_j^d' z_l with
                  {k, l} != {i, j}
    """

    vertex: tuple[ConditionClause, ...]
    shared_edge: tuple[ConditionClause, ...]
    pair_cover: tuple[ConditionClause, ...]

    @property
    def vertex_ok(self) -> bool:
        return all(c.passed for c in self.vertex)

    @property
    def shared_edge_ok(self) -> bool:
        return all(c.passed for c in self.shared_edge)

    @property
    def pair_cover_ok(self) -> bool:
        return all(c.passed for c in self.pair_cover)

    @property
    def all_ok(self) -> bool:
        return self.vertex_ok and self.shared_edge_ok and self.pair_cover_ok

    def failing(self) -> list[tuple[str, tuple[int, ...]]]:
        out = []
        for name, clauses in (
            ("vertex", self.vertex),
            ("shared_edge", self.shared_edge),
            ("pair_cover", self.pair_cover),
        ):
            out.extend((name, c.subject) for c in clauses if not c.passed)
        return out


def _near_pure_power(m: Monomial, i: int) -> bool:
    # shape z_i^a z_j: at most one variable besides z_i, and that one linear
    others = [(k, e) for k, e in enumerate(m.exponents) if k != i and e > 0]
    if not others:
        return m.exponents[i] >= 1
    return len(others) == 1 and others[0][1] == 1


def _on_pair(m: Monomial, i: int, j: int) -> bool:
    return all(e == 0 for k, e in enumerate(m.exponents) if k not in (i, j))


def _single_extra_variables(m: Monomial, i: int, j: int) -> list[int]:
    # all k such that m = z_i^a z_j^b z_k; k inside {i, j} degenerates to a pair monomial
    others = [(k, e) for k, e in enumerate(m.exponents) if k not in (i, j) and e > 0]
    if not others:
        return [k for k in (i, j) if m.exponents[k] >= 1]
    if len(others) == 1 and others[0][1] == 1:
        return [others[0][0]]
    return []


def quasi_smooth_conditions(
    w: WeightVector, d: int, support: Iterable[Monomial]
) -> QuasiSmoothnessReport:
    """Run the three monomial-existence conditions on a support set.

    The conditions are stated for surfaces in a weighted projective 3-space,
    so exactly four weights are required.
    """
    if len(w) != 4:
        raise DimensionUnsupported(len(w), 4, "quasi-smoothness screen")
    monos = sorted(set(support), key=lambda m: m.exponents)
    for m in monos:
        deg = m.weighted_degree(w)
        if deg != d:
            raise DegreeMismatch(m.exponents, deg, d)

    vertex = []
    for i in range(4):
        hit = next((m for m in monos if _near_pure_power(m, i)), None)
        vertex.append(ConditionClause((i,), hit is not None, (hit,) if hit else ()))

    shared_edge = []
    pair_cover = []
    for i in range(4):
        for j in range(i + 1, 4):
            pair_hit = next((m for m in monos if _on_pair(m, i, j)), None)
            if math.gcd(w.weights[i], w.weights[j]) > 1:
                shared_edge.append(
                    ConditionClause((i, j), pair_hit is not None, (pair_hit,) if pair_hit else ())
                )
            if pair_hit is not None:
                pair_cover.append(ConditionClause((i, j), True, (pair_hit,)))
                continue
            tagged = [(m, k) for m in monos for k in _single_extra_variables(m, i, j)]
            found = None
            for a in range(len(tagged)):
                for b in range(a + 1, len(tagged)):
                    (m1, k), (m2, l) = tagged[a], tagged[b]
                    if m1 != m2 and {k, l} != {i, j}:
                        found = (m1, m2)
                        break
                if found:
                    break
            pair_cover.append(ConditionClause((i, j), found is not None, found or ()))

    return QuasiSmoothnessReport(tuple(vertex), tuple(shared_edge), tuple(pair_cover))
