"""Exception hierarchy.

ValidationError covers malformed inputs (CLI exit code 2); AdmissibilityError
covers inputs that parse fine but are mathematically inadmissible (exit 3).
"""

from __future__ import annotations


class QhlinkError(Exception):
    """Base class for all package errors."""


class ValidationError(QhlinkError):
    """Input fails a structural precondition."""


class NonPositiveWeight(ValidationError):
    def __init__(self, weight: int):
        self.weight = weight
        super().__init__(f"weights must be positive integers, got {weight}")


class NonCoprimeWeights(ValidationError):
    def __init__(self, common_factor: int):
        self.common_factor = common_factor
        super().__init__(f"weights share the common factor {common_factor}")


class DegreeMismatch(ValidationError):
    def __init__(self, exponents, actual: int, expected: int):
        self.exponents = tuple(exponents)
        self.actual = actual
        self.expected = expected
        super().__init__(
            f"monomial {self.exponents} has weighted degree {actual}, expected {expected}"
        )


class DimensionUnsupported(ValidationError):
    def __init__(self, got: int, needed: int, what: str):
        self.got = got
        self.needed = needed
        super().__init__(f"{what} needs {needed} weights, got {got}")


class AdmissibilityError(QhlinkError):
    """Input is structurally fine but mathematically inadmissible."""


class NonIntegralMilnorNumber(AdmissibilityError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"middle Betti rank formula gives {value}, not a positive integer")


class DegenerateFactor(AdmissibilityError):
    def __init__(self, weight: int, degree: int):
        self.weight = weight
        self.degree = degree
        super().__init__(
            f"weight {weight} equals the degree {degree}: the monodromy divisor vanishes"
        )


class NonIntegralDivisor(AdmissibilityError):
    def __init__(self, divisor):
        self.divisor = divisor
        super().__init__(f"final divisor has non-integral coefficients: {divisor}")


class NotAPolynomial(AdmissibilityError):
    def __init__(self, order: int, multiplicity: int):
        self.order = order
        self.multiplicity = multiplicity
        super().__init__(
            f"root-of-unity order {order} would have multiplicity {multiplicity} < 0"
        )


class RemainderNonZero(QhlinkError):
    """Internal consistency failure: an exact polynomial division left a remainder."""


class ContainsSingularLine(AdmissibilityError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(
            f"restriction to the coordinate edge ({i},{j}) is identically zero; "
            "the singular locus is not isolated"
        )


class QuasiSmoothnessViolation(AdmissibilityError):
    def __init__(self, condition: str, subject):
        self.condition = condition
        self.subject = subject
        super().__init__(f"quasi-smoothness {condition} condition fails at {subject}")


class InfeasibleSystem(AdmissibilityError):
    def __init__(self, detail: str):
        super().__init__(f"coefficient inequality chain admits no non-negative solution: {detail}")


class NegativeModuliDimension(AdmissibilityError):
    def __init__(self, dim_graded: int, dim_aut: int):
        self.dim_graded = dim_graded
        self.dim_aut = dim_aut
        super().__init__(
            f"automorphism dimension {dim_aut} exceeds section-space dimension {dim_graded}"
        )


class MissingQuadraticPart(AdmissibilityError):
    def __init__(self):
        super().__init__("all three coefficients of the splitting quadratic vanish")
