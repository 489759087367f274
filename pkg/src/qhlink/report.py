"""Report assembly and exact-valued serialization.

The JSON form is canonical and byte stable: every rational is rendered as a
"p/q" string, every integer as a decimal string, and no floating point value
appears anywhere. The text form is derived and adds mixed-number rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .errors import (
    ContainsSingularLine,
    NegativeModuliDimension,
    QuasiSmoothnessViolation,
    ValidationError,
)
from .klt import KltCertificate, evaluate_certificate, klt_verdict, splitting_discriminant
from .moduli import ModuliReport, moduli_dimension
from .monodromy import (
    CyclicDivisor,
    DensePoly,
    FactoredCharPoly,
    betti,
    divisor_of_delta,
    expand,
    factored_char_poly,
    milnor_number,
)
from .orbifold import (
    HitchinThorpeChecks,
    OrbifoldReport,
    SingularPoint,
    orbifold_report,
)
from .topology import LinkClassification, classify_5d
from .weights import QhPolynomial, WeightVector, qh_polynomial, validate_weights

SCHEMA = "1"


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def mixed_number(x: Fraction) -> str:
    """Human rendering: integers plain, proper fractions as p/q, otherwise
    floor plus remainder (e.g. 158/15 -> "10 + 8/15", -314/45 -> "-7 + 1/45")."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    if abs(x) < 1:
        return frac_str(x)
    whole = x.numerator // x.denominator
    rest = x - whole
    return f"{whole} + {frac_str(rest)}"


# ---------------------------------------------------------------------------
# display strings for the factored characteristic polynomial


def _binomial_atoms(p: FactoredCharPoly) -> dict[tuple[int, int], int]:
    # split every t^j - 1 with j = m * 2^e (m odd) into
    # (t^m - 1) * (t^m + 1)(t^{2m} + 1) ... ; keys are (m, sign)
    atoms: dict[tuple[int, int], int] = {}

    def add(key, a):
        atoms[key] = atoms.get(key, 0) + a

    add((1, -1), p.one_exponent)
    for j, a in p.factors:
        m = j
        while m % 2 == 0:
            m //= 2
        add((m, -1), a)
        k = m
        while k < j:
            add((k, +1), a)
            k *= 2
    return {key: a for key, a in atoms.items() if a != 0}


def _atom_str(m: int, sign: int) -> str:
    op = "-" if sign < 0 else "+"
    return f"(t{op}1)" if m == 1 else f"(t^{m}{op}1)"


def factored_display(p: FactoredCharPoly) -> str:
    """Binomial-product rendering when all split multiplicities are
    non-negative, otherwise the raw (t^j - 1) power-product form."""
    atoms = _binomial_atoms(p)
    if atoms and all(a >= 0 for a in atoms.values()):
        ordered = sorted(atoms.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        return "".join(f"{_atom_str(m, s)}^{a}" for (m, s), a in ordered)
    parts = []
    if p.one_exponent != 0:
        parts.append(f"(t-1)^{p.one_exponent}")
    parts.extend(f"(t^{j}-1)^{a}" for j, a in p.factors)
    return "".join(parts) if parts else "1"


def divisor_display(div: CyclicDivisor) -> str:
    pieces: list[tuple[bool, str]] = []  # (negative, magnitude text)
    for j, c in reversed(div.terms):
        mag = "" if abs(c) == 1 else f"{frac_str(abs(c))}*"
        pieces.append((c < 0, f"{mag}L({j})"))
    if div.constant != 0 or not pieces:
        pieces.append((div.constant < 0, frac_str(abs(div.constant))))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, text in pieces[1:]:
        out += (" - " if negative else " + ") + text
    return out


# ---------------------------------------------------------------------------
# input description


@dataclass(frozen=True)
class KltInputs:
    gamma: Fraction
    generic_pencil_degree: int
    points: tuple[tuple[int, int], ...]  # (pencil_degree, group_order)
    splitting_class_degree: int
    component_curve_indices: tuple[int, int]
    meet_order: int


@dataclass(frozen=True)
class InputDescription:
    weights: tuple[int, ...]
    degree: int
    monomials: tuple[tuple[tuple[int, ...], Fraction], ...] | None = None
    assume_torsion_free: bool = False
    surface_betti_offset: int = 1
    klt: KltInputs | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValidationError(message)


def parse_input(data: Mapping[str, Any]) -> InputDescription:
    """Validate and convert a JSON input document."""
    _require(isinstance(data, Mapping), "input must be a JSON object")
    allowed = {
        "schema",
        "weights",
        "degree",
        "monomials",
        "assume_torsion_free",
        "surface_betti_offset",
        "klt",
    }
    unknown = set(data) - allowed
    _require(not unknown, f"unknown input fields: {sorted(unknown)}")
    _require(str(data.get("schema", SCHEMA)) == SCHEMA, "unsupported input schema")
    _require("weights" in data and "degree" in data, "weights and degree are required")
    weights = tuple(int(x) for x in data["weights"])
    degree = int(data["degree"])
    _require(degree >= 1, "degree must be a positive integer")

    monomials = None
    if data.get("monomials") is not None:
        entries = []
        for item in data["monomials"]:
            _require(
                isinstance(item, Mapping) and "exponents" in item and "coefficient" in item,
                "each monomial needs exponents and a coefficient",
            )
            entries.append(
                (tuple(int(e) for e in item["exponents"]), Fraction(str(item["coefficient"])))
            )
        monomials = tuple(entries)

    klt = None
    if data.get("klt") is not None:
        kd = data["klt"]
        needed = {
            "gamma",
            "generic_pencil_degree",
            "points",
            "splitting_class_degree",
            "component_curve_indices",
            "meet_order",
        }
        _require(isinstance(kd, Mapping), "klt inputs must be an object")
        missing = needed - set(kd)
        _require(not missing, f"klt inputs missing fields: {sorted(missing)}")
        points = tuple(
            (int(p["pencil_degree"]), int(p["group_order"])) for p in kd["points"]
        )
        _require(len(points) >= 1, "klt inputs need at least one orbifold point")
        klt = KltInputs(
            gamma=Fraction(str(kd["gamma"])),
            generic_pencil_degree=int(kd["generic_pencil_degree"]),
            points=points,
            splitting_class_degree=int(kd["splitting_class_degree"]),
            component_curve_indices=tuple(int(i) for i in kd["component_curve_indices"]),
            meet_order=int(kd["meet_order"]),
        )

    return InputDescription(
        weights=weights,
        degree=degree,
        monomials=monomials,
        assume_torsion_free=bool(data.get("assume_torsion_free", False)),
        surface_betti_offset=int(data.get("surface_betti_offset", 1)),
        klt=klt,
    )


def load_input(path: str) -> InputDescription:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"input file is not valid JSON: {exc}") from exc
    return parse_input(data)


def polynomial_from_input(desc: InputDescription) -> QhPolynomial | None:
    if desc.monomials is None:
        return None
    w = validate_weights(desc.weights)
    return qh_polynomial(w, desc.degree, desc.monomials)


# ---------------------------------------------------------------------------
# report blocks


@dataclass(frozen=True)
class LinkBlock:
    mu: int
    divisor: CyclicDivisor
    char_poly_factored: FactoredCharPoly
    char_poly_dense: DensePoly | None
    betti: int
    classification: LinkClassification | None


@dataclass(frozen=True)
class InvariantReport:
    weights: tuple[int, ...]
    degree: int
    link: LinkBlock
    orbifold: OrbifoldReport | None
    moduli: ModuliReport | None
    klt: KltCertificate | None
    warnings: tuple[str, ...]


def build_link_block(
    w: WeightVector, d: int, assume_torsion_free: bool, expand_dense: bool
) -> LinkBlock:
    div = divisor_of_delta(w, d)
    mu = milnor_number(w, d)
    fact = factored_char_poly(div)
    b2 = betti(div)
    dense = expand(fact) if expand_dense else None
    cls = classify_5d(b2, assume_torsion_free) if len(w) == 4 else None
    return LinkBlock(mu, div, fact, dense, b2, cls)


def build_report(desc: InputDescription, expand_dense: bool = False) -> InvariantReport:
    """Run the full pipeline on one input description.

    Blocks that turn out not to apply (no polynomial given, a non-isolated
    singular locus, a negative naive moduli count) are omitted with a warning
    rather than failing the whole report.
    """
    warnings: list[str] = []
    w = validate_weights(desc.weights)
    f = polynomial_from_input(desc)

    link = build_link_block(w, desc.degree, desc.assume_torsion_free, expand_dense)
    if len(w) == 4 and not desc.assume_torsion_free:
        warnings.append(
            "torsion in the middle homology not ruled out; no diffeomorphism type claimed"
        )

    orb_block: OrbifoldReport | None = None
    if len(w) != 4:
        warnings.append("orbifold block needs exactly four weights; omitted")
    elif f is None:
        warnings.append("no polynomial given; orbifold block omitted")
    else:
        try:
            orb_block = orbifold_report(f, link.betti, desc.surface_betti_offset)
            warnings.append(
                "surface Betti number derived as link Betti number "
                f"+ {desc.surface_betti_offset} (circle-bundle rule)"
            )
        except (ContainsSingularLine, QuasiSmoothnessViolation) as exc:
            warnings.append(f"orbifold block refused: {exc}")

    moduli_block: ModuliReport | None = None
    try:
        moduli_block = moduli_dimension(w, desc.degree)
    except NegativeModuliDimension as exc:
        warnings.append(f"moduli block omitted: {exc}")

    klt_block: KltCertificate | None = None
    if desc.klt is not None:
        if f is not None:
            try:
                disc = splitting_discriminant(f)
            except ValueError:
                warnings.append(
                    "splitting condition not checked (weights outside its scope); "
                    "component splitting taken as certified input"
                )
            else:
                if disc == 0:
                    warnings.append(
                        "splitting quadratic has a repeated root; klt block refused"
                    )
                    return InvariantReport(
                        desc.weights, desc.degree, link, orb_block, moduli_block,
                        None, tuple(warnings),
                    )
        else:
            warnings.append(
                "splitting condition not checked (no polynomial given); "
                "component splitting taken as certified input"
            )
        klt_block = evaluate_certificate(
            w,
            desc.degree,
            gamma=desc.klt.gamma,
            generic_pencil_degree=desc.klt.generic_pencil_degree,
            points=desc.klt.points,
            splitting_class_degree=desc.klt.splitting_class_degree,
            component_curve_indices=desc.klt.component_curve_indices,
            meet_order=desc.klt.meet_order,
        )

    return InvariantReport(
        desc.weights, desc.degree, link, orb_block, moduli_block, klt_block,
        tuple(warnings),
    )


# ---------------------------------------------------------------------------
# JSON serialization (canonical, byte stable, no numeric JSON values)


def divisor_to_json(div: CyclicDivisor) -> dict:
    return {
        "constant": frac_str(div.constant),
        "terms": [[str(j), frac_str(c)] for j, c in div.terms],
    }


def divisor_from_json(data: Mapping) -> CyclicDivisor:
    return CyclicDivisor.make(
        parse_frac(data["constant"]),
        {int(j): parse_frac(c) for j, c in data["terms"]},
    )


def factored_to_json(p: FactoredCharPoly) -> dict:
    return {
        "one_exponent": str(p.one_exponent),
        "factors": [[str(j), str(a)] for j, a in p.factors],
        "display": factored_display(p),
    }


def factored_from_json(data: Mapping) -> FactoredCharPoly:
    return FactoredCharPoly(
        int(data["one_exponent"]),
        tuple((int(j), int(a)) for j, a in data["factors"]),
    )


def classification_to_json(cls: LinkClassification) -> dict:
    return {
        "dimension": str(cls.dimension),
        "betti": str(cls.betti),
        "torsion_free_assumed": cls.torsion_free_assumed,
        "spin_assumed": cls.spin_assumed,
        "kind": cls.kind,
        "connect_sum_count": None
        if cls.connect_sum_count is None
        else str(cls.connect_sum_count),
        "reason": cls.reason,
        "label": cls.label,
    }


def classification_from_json(data: Mapping) -> LinkClassification:
    return LinkClassification(
        dimension=int(data["dimension"]),
        betti=int(data["betti"]),
        torsion_free_assumed=bool(data["torsion_free_assumed"]),
        kind=data["kind"],
        connect_sum_count=None
        if data["connect_sum_count"] is None
        else int(data["connect_sum_count"]),
        reason=data["reason"],
        spin_assumed=bool(data["spin_assumed"]),
    )


def singular_point_to_json(p: SingularPoint) -> dict:
    return {
        "kind": p.kind,
        "indices": [str(i) for i in p.indices],
        "group_order": str(p.group_order),
        "root_index": None if p.root_index is None else str(p.root_index),
    }


def singular_point_from_json(data: Mapping) -> SingularPoint:
    return SingularPoint(
        kind=data["kind"],
        indices=tuple(int(i) for i in data["indices"]),
        group_order=int(data["group_order"]),
        root_index=None if data["root_index"] is None else int(data["root_index"]),
    )


def checks_to_json(c: HitchinThorpeChecks) -> dict:
    return {
        "chi_top_dominates_local_terms": c.chi_top_dominates_local_terms,
        "orbifold_signature_bound": c.orbifold_signature_bound,
        "combined_chain": c.combined_chain,
        "c1_sq_nonnegative": c.c1_sq_nonnegative,
        "local_term_sum": frac_str(c.local_term_sum),
        "signature_bound_margin": frac_str(c.signature_bound_margin),
    }


def checks_from_json(data: Mapping) -> HitchinThorpeChecks:
    return HitchinThorpeChecks(
        chi_top_dominates_local_terms=bool(data["chi_top_dominates_local_terms"]),
        orbifold_signature_bound=bool(data["orbifold_signature_bound"]),
        combined_chain=bool(data["combined_chain"]),
        c1_sq_nonnegative=bool(data["c1_sq_nonnegative"]),
        local_term_sum=parse_frac(data["local_term_sum"]),
        signature_bound_margin=parse_frac(data["signature_bound_margin"]),
    )


def orbifold_to_json(o: OrbifoldReport) -> dict:
    return {
        "singular_points": [singular_point_to_json(p) for p in o.singular_points],
        "b2_surface": str(o.b2_surface),
        "chi_top": str(o.chi_top),
        "tau_top": str(o.tau_top),
        "two_chi_plus_three_tau_top": str(2 * o.chi_top + 3 * o.tau_top),
        "chi_orb": frac_str(o.chi_orb),
        "tau_orb": frac_str(o.tau_orb),
        "c1_sq": frac_str(o.c1_sq),
        "checks": checks_to_json(o.checks),
    }


def orbifold_from_json(data: Mapping) -> OrbifoldReport:
    return OrbifoldReport(
        b2_surface=int(data["b2_surface"]),
        chi_top=int(data["chi_top"]),
        tau_top=int(data["tau_top"]),
        chi_orb=parse_frac(data["chi_orb"]),
        tau_orb=parse_frac(data["tau_orb"]),
        c1_sq=parse_frac(data["c1_sq"]),
        singular_points=tuple(
            singular_point_from_json(p) for p in data["singular_points"]
        ),
        checks=checks_from_json(data["checks"]),
    )


def moduli_to_json(m: ModuliReport) -> dict:
    return {
        "dim_graded": str(m.dim_graded),
        "dim_aut": str(m.dim_aut),
        "dim_aut_projective": str(m.dim_aut_projective),
        "per_variable_counts": [str(c) for c in m.per_variable_counts],
        "moduli_dim": str(m.moduli_dim),
        "effective_caveat": m.effective_caveat,
    }


def moduli_from_json(data: Mapping) -> ModuliReport:
    return ModuliReport(
        dim_graded=int(data["dim_graded"]),
        dim_aut=int(data["dim_aut"]),
        dim_aut_projective=int(data["dim_aut_projective"]),
        per_variable_counts=tuple(int(c) for c in data["per_variable_counts"]),
        moduli_dim=int(data["moduli_dim"]),
        effective_caveat=bool(data["effective_caveat"]),
    )


def klt_to_json(k: KltCertificate) -> dict:
    return {
        "gamma": frac_str(k.gamma),
        "mult_cap": frac_str(k.mult_cap),
        "a_max": frac_str(k.a_max),
        "b_max": frac_str(k.b_max),
        "tangent_coeff_max": frac_str(k.tangent_coeff_max),
        "generic_mult_bound": frac_str(k.generic_mult_bound),
        "verdict": k.verdict,
        "tangent_product": frac_str(k.tangent_product),
        "generic_product": frac_str(k.generic_product),
        "margin": frac_str(k.margin),
    }


def klt_from_json(data: Mapping) -> KltCertificate:
    return klt_verdict(
        gamma=parse_frac(data["gamma"]),
        tangent_coeff_max=parse_frac(data["tangent_coeff_max"]),
        generic_mult_bound=parse_frac(data["generic_mult_bound"]),
        mult_cap=parse_frac(data["mult_cap"]),
        a_max=parse_frac(data["a_max"]),
        b_max=parse_frac(data["b_max"]),
    )


def link_to_json(link: LinkBlock) -> dict:
    return {
        "mu": str(link.mu),
        "divisor": divisor_to_json(link.divisor),
        "char_poly_factored": factored_to_json(link.char_poly_factored),
        "char_poly_dense": None
        if link.char_poly_dense is None
        else [str(c) for c in link.char_poly_dense.coefficients],
        "betti": str(link.betti),
        "classification": None
        if link.classification is None
        else classification_to_json(link.classification),
    }


def link_from_json(data: Mapping) -> LinkBlock:
    return LinkBlock(
        mu=int(data["mu"]),
        divisor=divisor_from_json(data["divisor"]),
        char_poly_factored=factored_from_json(data["char_poly_factored"]),
        char_poly_dense=None
        if data["char_poly_dense"] is None
        else DensePoly(tuple(int(c) for c in data["char_poly_dense"])),
        betti=int(data["betti"]),
        classification=None
        if data["classification"] is None
        else classification_from_json(data["classification"]),
    )


def report_to_json(report: InvariantReport) -> dict:
    return {
        "schema": SCHEMA,
        "weights": [str(w) for w in report.weights],
        "degree": str(report.degree),
        "link": link_to_json(report.link),
        "orbifold": None if report.orbifold is None else orbifold_to_json(report.orbifold),
        "moduli": None if report.moduli is None else moduli_to_json(report.moduli),
        "klt": None if report.klt is None else klt_to_json(report.klt),
        "warnings": list(report.warnings),
    }


def report_from_json(data: Mapping) -> InvariantReport:
    _require(str(data.get("schema")) == SCHEMA, "unsupported report schema")
    return InvariantReport(
        weights=tuple(int(w) for w in data["weights"]),
        degree=int(data["degree"]),
        link=link_from_json(data["link"]),
        orbifold=None if data["orbifold"] is None else orbifold_from_json(data["orbifold"]),
        moduli=None if data["moduli"] is None else moduli_from_json(data["moduli"]),
        klt=None if data["klt"] is None else klt_from_json(data["klt"]),
        warnings=tuple(data["warnings"]),
    )


def report_json_text(report: InvariantReport) -> str:
    return json.dumps(report_to_json(report), indent=2) + "\n"


# ---------------------------------------------------------------------------
# derived text rendering


def _point_label(p: SingularPoint) -> str:
    if p.kind == "vertex":
        return f"vertex z{p.indices[0]} (order {p.group_order})"
    i, j = p.indices
    return f"edge point {p.root_index} on (z{i}, z{j}) (order {p.group_order})"


def render_text(report: InvariantReport) -> str:
    lines: list[str] = []
    w = report.weights
    lines.append(
        f"weights {w}, degree {report.degree}, index {sum(w) - report.degree}"
    )
    link = report.link
    lines.append("")
    lines.append("link")
    lines.append(f"  milnor number = {link.mu}")
    lines.append(f"  monodromy divisor = {divisor_display(link.divisor)}")
    lines.append(
        f"  characteristic polynomial = {factored_display(link.char_poly_factored)}"
    )
    if link.char_poly_dense is not None:
        coeffs = ", ".join(str(c) for c in link.char_poly_dense.coefficients)
        lines.append(f"  dense coefficients (ascending) = {coeffs}")
    lines.append(f"  betti b2 = {link.betti}")
    if link.classification is not None:
        lines.append(f"  classification: {link.classification.label}")

    if report.orbifold is not None:
        o = report.orbifold
        lines.append("")
        lines.append("orbifold surface")
        pts = ", ".join(_point_label(p) for p in o.singular_points) or "none"
        lines.append(f"  singular points: {pts}")
        lines.append(f"  b2(surface) = {o.b2_surface}")
        lines.append(
            f"  chi_top = {o.chi_top}, tau_top = {o.tau_top}, "
            f"2*chi_top + 3*tau_top = {2 * o.chi_top + 3 * o.tau_top}"
        )
        lines.append(f"  chi_orb = {mixed_number(o.chi_orb)}")
        lines.append(f"  tau_orb = {mixed_number(o.tau_orb)}")
        lines.append(f"  c1^2 = {mixed_number(o.c1_sq)}")
        checks = checks_to_json(o.checks)
        verdicts = ", ".join(
            f"{name} {'pass' if value else 'FAIL'}"
            for name, value in checks.items()
            if isinstance(value, bool)
        )
        lines.append(f"  checks: {verdicts}")

    if report.moduli is not None:
        m = report.moduli
        lines.append("")
        lines.append("moduli")
        per_var = ", ".join(str(c) for c in m.per_variable_counts)
        lines.append(
            f"  dim sections = {m.dim_graded}, dim automorphisms = {m.dim_aut}"
            f" (per variable {per_var})"
        )
        lines.append(
            f"  moduli dimension = {m.moduli_dim}"
            + (" (parameters need not all be effective)" if m.effective_caveat else "")
        )

    if report.klt is not None:
        k = report.klt
        lines.append("")
        lines.append("klt certificate")
        lines.append(f"  gamma = {frac_str(k.gamma)}")
        lines.append(f"  generic multiplicity bound = {frac_str(k.generic_mult_bound)}")
        lines.append(f"  multiplicity cap at the binding point = {mixed_number(k.mult_cap)}")
        lines.append(
            f"  component coefficients a <= {frac_str(k.a_max)}, b <= {frac_str(k.b_max)}"
        )
        lines.append(f"  tangent direction coefficient <= {frac_str(k.tangent_coeff_max)}")
        verdict = "klt" if k.verdict else "NOT certified"
        lines.append(f"  verdict: {verdict} (margin {frac_str(k.margin)})")

    if report.warnings:
        lines.append("")
        lines.append("warnings")
        lines.extend(f"  - {msg}" for msg in report.warnings)
    return "\n".join(lines) + "\n"
