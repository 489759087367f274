"""Monodromy invariants of weighted homogeneous links.

The middle Betti rank (Milnor number), the divisor of the characteristic
polynomial of the monodromy in the ring Z[C*] written in the basis of
root-of-unity divisors L(n) = div(t^n - 1), the factored characteristic
polynomial, its exact dense expansion, and the link Betti number.

All arithmetic is exact: rational during intermediate products, integral at
the end, arbitrary precision throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

from .errors import (
    DegenerateFactor,
    NonIntegralDivisor,
    NonIntegralMilnorNumber,
    NotAPolynomial,
    RemainderNonZero,
)
from .weights import WeightVector


def milnor_number(w: WeightVector, d: int) -> int:
    """Rank of the middle homology of the fiber: the product of (d/w_i - 1).

    Raises DegenerateFactor if some weight equals the degree (zero factor) and
    NonIntegralMilnorNumber if the product is not a positive integer; either
    signals an inadmissible pair.
    """
    value = Fraction(1)
    for wi in w.weights:
        if wi == d:
            raise DegenerateFactor(wi, d)
        value *= Fraction(d, wi) - 1
    if value.denominator != 1 or value <= 0:
        raise NonIntegralMilnorNumber(value)
    return int(value)


@dataclass(frozen=True)
class CyclicDivisor:
    """Element of Z[C*] spanned by 1 and the symbols L(j) = div(t^j - 1), j >= 2.

    L(1) is the divisor of t - 1, a single point, and is identified with the
    ring constant 1; construction folds it in. Coefficients are exact
    rationals; zero coefficients are never stored.
    """

    constant: Fraction
    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def make(
        constant: Fraction | int = 0,
        terms: Mapping[int, Fraction | int] | None = None,
    ) -> "CyclicDivisor":
        const = Fraction(constant)
        cleaned: dict[int, Fraction] = {}
        for j, c in (terms or {}).items():
            c = Fraction(c)
            if j < 1:
                raise ValueError(f"invalid symbol index {j}")
            if c == 0:
                continue
            if j == 1:
                const += c
            else:
                cleaned[j] = cleaned.get(j, Fraction(0)) + c
        kept = tuple(sorted((j, c) for j, c in cleaned.items() if c != 0))
        return CyclicDivisor(const, kept)

    @staticmethod
    def lam(j: int) -> "CyclicDivisor":
        """The divisor of t^j - 1."""
        return CyclicDivisor.make(terms={j: 1})

    def coefficient(self, j: int) -> Fraction:
        if j == 1:
            return self.constant
        for k, c in self.terms:
            if k == j:
                return c
        return Fraction(0)

    @property
    def is_integral(self) -> bool:
        return self.constant.denominator == 1 and all(
            c.denominator == 1 for _, c in self.terms
        )

    @property
    def degree(self) -> Fraction:
        """Total root count with multiplicity: constant + sum of j * coeff(j)."""
        return self.constant + sum((j * c for j, c in self.terms), Fraction(0))

    def __add__(self, other: "CyclicDivisor") -> "CyclicDivisor":
        acc = dict(self.terms)
        for j, c in other.terms:
            acc[j] = acc.get(j, Fraction(0)) + c
        return CyclicDivisor.make(self.constant + other.constant, acc)

    def __sub__(self, other: "CyclicDivisor") -> "CyclicDivisor":
        acc = dict(self.terms)
        for j, c in other.terms:
            acc[j] = acc.get(j, Fraction(0)) - c
        return CyclicDivisor.make(self.constant - other.constant, acc)

    def __mul__(self, other: "CyclicDivisor") -> "CyclicDivisor":
        return lambda_product(self, other)

    def __str__(self) -> str:
        parts = []
        for j, c in reversed(self.terms):
            parts.append(f"{c}*L({j})")
        if self.constant != 0 or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts).replace("+ -", "- ")


def lambda_product(x: CyclicDivisor, y: CyclicDivisor) -> CyclicDivisor:
    """Bilinear extension of L(a) * L(b) = gcd(a,b) * L(lcm(a,b))."""
    acc: dict[int, Fraction] = {}
    for j, cj in x.terms:
        acc[j] = acc.get(j, Fraction(0)) + y.constant * cj
    for k, ck in y.terms:
        acc[k] = acc.get(k, Fraction(0)) + x.constant * ck
    for j, cj in x.terms:
        for k, ck in y.terms:
            m = lcm(j, k)
            acc[m] = acc.get(m, Fraction(0)) + gcd(j, k) * cj * ck
    return CyclicDivisor.make(x.constant * y.constant, acc)


def divisor_of_delta(w: WeightVector, d: int) -> CyclicDivisor:
    """Divisor of the characteristic polynomial: product of (L(u_i)/v_i - 1).

    Here d/w_i = u_i/v_i in lowest terms. The result must come out integral;
    otherwise the pair is inadmissible. A weight equal to the degree would make
    one factor vanish identically, which is reported as DegenerateFactor
    rather than returned as the zero divisor.
    """
    result = CyclicDivisor.make(1)
    for wi in w.weights:
        g = gcd(d, wi)
        u, v = d // g, wi // g
        if u == 1 and v == 1:
            raise DegenerateFactor(wi, d)
        factor = CyclicDivisor.make(-1, {u: Fraction(1, v)})
        result = result * factor
    if not result.is_integral:
        raise NonIntegralDivisor(result)
    return result


@dataclass(frozen=True)
class FactoredCharPoly:
    """(t - 1)^c times a product of (t^j - 1)^(a_j) with integer exponents.

    Exponents of either sign are allowed as long as every root of unity ends
    up with non-negative multiplicity, so the product is a genuine polynomial.
    """

    one_exponent: int
    factors: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return self.one_exponent + sum(j * a for j, a in self.factors)

    def root_multiplicity(self, order: int) -> int:
        """Multiplicity of a primitive root of unity of the given order."""
        mult = sum(a for j, a in self.factors if j % order == 0)
        if order == 1:
            mult += self.one_exponent
        return mult


def factored_char_poly(div: CyclicDivisor) -> FactoredCharPoly:
    """Read the factored characteristic polynomial off an integral divisor."""
    if not div.is_integral:
        raise NonIntegralDivisor(div)
    c = int(div.constant)
    factors = tuple((j, int(a)) for j, a in div.terms)
    p = FactoredCharPoly(c, factors)
    orders = {1}
    for j, _ in factors:
        orders.update(m for m in range(2, j + 1) if j % m == 0)
    for m in sorted(orders):
        mult = p.root_multiplicity(m)
        if mult < 0:
            raise NotAPolynomial(m, mult)
    if p.degree < 0:
        raise NotAPolynomial(1, p.degree)
    return p


@dataclass(frozen=True)
class DensePoly:
    """Dense integer polynomial, coefficients in ascending degree."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be non-zero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def _mul_binomial(coeffs: list[int], j: int) -> list[int]:
    # multiply by (t^j - 1)
    out = [-c for c in coeffs] + [0] * j
    for i, c in enumerate(coeffs):
        out[i + j] += c
    return out


def _div_binomial(coeffs: list[int], j: int) -> list[int]:
    # exact division by (t^j - 1): p[i] = q[i-j] - q[i]
    n = len(coeffs) - 1
    if n < j:
        raise RemainderNonZero(f"degree {n} too small for division by t^{j} - 1")
    q = [0] * (n - j + 1)
    for i in range(n, j - 1, -1):
        q[i - j] = coeffs[i] + (q[i] if i <= n - j else 0)
    for i in range(j):
        low = q[i] if i <= n - j else 0
        if coeffs[i] != -low:
            raise RemainderNonZero(f"division by t^{j} - 1 left a remainder")
    return q


def expand(p: FactoredCharPoly) -> DensePoly:
    """Multiply the factored form out exactly.

    Positive-exponent factors are multiplied in first, then negative-exponent
    factors are divided out; every division must be remainder free.
    """
    coeffs = [1]
    all_factors = [(1, p.one_exponent)] + list(p.factors)
    for j, a in all_factors:
        for _ in range(max(a, 0)):
            coeffs = _mul_binomial(coeffs, j)
    for j, a in all_factors:
        for _ in range(max(-a, 0)):
            coeffs = _div_binomial(coeffs, j)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return DensePoly(tuple(coeffs))


def betti(div: CyclicDivisor) -> int:
    """Middle Betti number of the link: the multiplicity of 1 as a root.

    Each factor t^j - 1 contributes one root at t = 1, so the count is the
    divisor constant plus the sum of the symbol coefficients.
    """
    if not div.is_integral:
        raise NonIntegralDivisor(div)
    b = int(div.constant) + sum(int(a) for _, a in div.terms)
    if b < 0:
        raise NotAPolynomial(1, b)
    return b
