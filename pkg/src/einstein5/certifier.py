"""End-to-end certification of the Seifert bundles over blown-up quadrics.

Naming: ``k`` is the number of S^2 x S^3 summands.  The base surface is
P^1 x P^1 blown up at ``k - 1`` points, so its Picard rank is ``k + 1`` and
the connected-sum count read off from it is ``rank - 1 = k``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import jsonschema

from .exact_linalg import IntMatrix, format_fraction
from .kahler_einstein import (
    ConfigurationError,
    KltReport,
    PointConfig,
    default_parameters,
    ke_certificate,
    point_set_descriptor,
    symmetric_configuration,
)
from .picard import (
    DivisorClass,
    IntersectionLattice,
    blowup_lattice,
    canonical_class,
    fiber_class,
    graph_class,
)
from .seifert import (
    ClassificationReport,
    OrbitDivisor,
    SeifertData,
    SeifertFlags,
    classify,
    connected_sum_name,
)

CERTIFICATE_VERSION = 1

FAMILY_FLAGS = SeifertFlags(
    pi1_complement_abelian=True,
    divisors_rational_curves=True,
    divisors_smooth_transversal=True,
)

GENERIC = "generic"

ASSERTED_PROPERTIES = (
    "identity component of the isometry group is S^1",
    "the metric is Sasakian-Einstein",
    "two metrics are isometric iff (m1, m2) agree and the point sets agree up to "
    "the order 4 automorphism group fixing both curves and conjugation",
)


class InputError(ValueError):
    """A document does not match the expected schema."""


@dataclass(frozen=True)
class FamilyParams:
    k: int
    m1: int
    m2: int
    config: Union[PointConfig, str] = GENERIC
    # extra background class, as integer coordinates; the family itself uses 0
    background: tuple[int, ...] | None = None

    @property
    def points(self) -> int:
        return self.k - 1


def validate_parameters(k: int, m1: int, m2: int) -> list[str]:
    """Violated constraints on (k, m1, m2); empty when the triple is admissible."""
    out = []
    if k < 6:
        out.append(f"k >= 6: got k = {k}")
    for name, m in (("m1", m1), ("m2", m2)):
        if m % 2 == 0:
            out.append(f"{name} odd: got {name} = {m}")
        if m <= 2:
            out.append(f"{name} > 2: got {name} = {m}")
    g = math.gcd(m1, m2)
    if g != 1:
        out.append(f"gcd(m1, m2) = 1: gcd({m1}, {m2}) = {g}")
    bound = Fraction(k - 5, 2) * m1
    if not m2 > bound:
        out.append(f"m2 > ((k-5)/2)*m1: {m2} <= {format_fraction(Fraction(k - 5, 2))}*{m1}")
    return out


def _family_data(k: int, m1: int, m2: int, background=None, strict=True) -> SeifertData:
    points = k - 1
    L = blowup_lattice(points)
    B = L.zero() if background is None else DivisorClass(L, background)
    divisors = (OrbitDivisor(fiber_class(L), m1, 1), OrbitDivisor(graph_class(L), m2, 1))
    return SeifertData(L, divisors, B, FAMILY_FLAGS, canonical_class(points), strict)


def build_family(params: FamilyParams) -> tuple[IntersectionLattice, SeifertData]:
    """Lattice and bundle data: orbit invariants (m1, 1) on the fiber curve, (m2, 1) on the graph curve."""
    problems = validate_parameters(params.k, params.m1, params.m2)
    if problems:
        raise ValueError("invalid parameters: " + "; ".join(problems))
    sd = _family_data(params.k, params.m1, params.m2, params.background)
    return sd.lattice, sd


def enumerate_parameters(k: int, bound: int) -> list[tuple[int, int]]:
    """All admissible (m1, m2) with both entries at most ``bound``, lexicographic."""
    if k < 6:
        raise ValueError("k must be at least 6")
    return [(m1, m2) for m1 in range(3, bound + 1, 2) for m2 in range(3, bound + 1, 2)
            if not validate_parameters(k, m1, m2)]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    evidence: str


@dataclass(frozen=True)
class Certificate:
    params: FamilyParams
    classification: ClassificationReport | None
    klt: KltReport | None
    checks: tuple[Check, ...]
    violations: tuple[str, ...]
    einstein_status: str
    diffeo_type: str | None
    moduli_real_dimension: int | None
    isometry_invariants: dict = field(hash=False, compare=False)
    notes: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.einstein_status == "certified"

    @property
    def passed(self) -> bool:
        return self.einstein_status != "failed"

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _vec(c: DivisorClass) -> str:
    return "(" + ", ".join(format_fraction(x) for x in c.coords) + ")"


def certify(params: FamilyParams) -> Certificate:
    """Run every check for the family; bad input gives a failed certificate."""
    k, m1, m2 = params.k, params.m1, params.m2
    points = k - 1
    checks: list[Check] = []
    violations = validate_parameters(k, m1, m2)
    checks.append(Check(
        "parameters", not violations,
        f"k = {k} summands, {points} blown-up points, Picard rank {k + 1}"
        + ("" if not violations else "; violated: " + "; ".join(violations))))
    if params.background is not None and any(params.background):
        violations.append("background class trivial: got " + str(tuple(params.background)))
        checks.append(Check("background class trivial", False, str(tuple(params.background))))

    report = None
    if points >= 0 and m1 >= 1 and m2 >= 1:
        try:
            sd = _family_data(k, m1, m2, params.background, strict=False)
        except ValueError as exc:
            sd = None
            violations.append(f"family data: {exc}")
        if sd is not None:
            bad = sd.violations()
            checks.append(Check("orbit invariants", not bad, "; ".join(bad) or
                                f"(m1, 1) = ({m1}, 1) on fiber curve, (m2, 1) = ({m2}, 1) on graph curve"))
            violations.extend(bad)
            report = classify(sd)
            checks.extend(_classification_checks(sd, report, m1, m2))

    klt = None
    if points >= 5 and m1 >= 2 and m2 >= 2:
        ke = ke_certificate(points, m1, m2, distinct_fibers=True)
        klt = ke.report
        checks.append(Check(
            "ample", ke.ample,
            f"1/{m1} fiber + 1/{m2} graph on {points} points: {ke.positivity.value}"))
        for r in ke.report.records:
            v = ", ".join(format_fraction(x) for x in r.attaining_vertex)
            checks.append(Check(
                f"klt: {r.label}", r.passed,
                f"worst case {format_fraction(r.worst_case_value)} "
                f"{'<' if r.passed else '>='} {format_fraction(r.bound)} at (d1, d2) = ({v})"))
    else:
        checks.append(Check("klt", False, f"needs at least 5 blown-up points and m1, m2 >= 2 "
                                          f"(got {points} points, m = ({m1}, {m2}))"))

    config = params.config
    if isinstance(config, PointConfig):
        ok = config.points_count == points
        checks.append(Check(
            "symmetric configuration", ok,
            f"{config.points_count} points, second coordinates "
            + ", ".join(str(z) for z in config.second_coordinates())
            + ("" if ok else f"; expected {points} points")))
        descriptor = point_set_descriptor(config)
    else:
        descriptor = GENERIC

    for c in checks:
        if not c.passed and c.name not in ("parameters", "orbit invariants"):
            violations.append(f"check failed: {c.name}")

    notes = []
    # the ampleness bound written with the summand count instead of the point count
    if (m2 > Fraction(k - 5, 2) * m1) != (m2 > Fraction(k - 4, 2) * m1):
        notes.append(f"bound m2 > ((k-5)/2)*m1 uses {points} blown-up points; reading it with "
                     f"k = {k} summands, i.e. m2 > ((k-4)/2)*m1, gives the opposite answer")

    diffeo = report.diffeo_type if report is not None else None
    if violations or diffeo is None:
        status = "failed"
    elif isinstance(config, PointConfig):
        status = "certified"
    else:
        status = "open-neighborhood-claim"

    return Certificate(
        params=params,
        classification=report,
        klt=klt,
        checks=tuple(checks),
        violations=tuple(dict.fromkeys(violations)),
        einstein_status=status,
        diffeo_type=diffeo,
        moduli_real_dimension=2 * k - 2 if status != "failed" else None,
        isometry_invariants={"m1": m1, "m2": m2, "points": descriptor},
        notes=tuple(notes),
    )


def _classification_checks(sd: SeifertData, r: ClassificationReport, m1: int, m2: int) -> list[Check]:
    K = sd.canonical
    ac1 = r.integral_class
    parity = tuple(x % 2 for x in (K - ac1).integer_coords())
    delta = (1 - Fraction(1, m1)) * sd.divisors[0].dclass + (1 - Fraction(1, m2)) * sd.divisors[1].dclass
    proportional = r.c1 == -(K + delta)
    return [
        Check("H1 trivial", r.h1 is not None and r.h1.is_trivial, f"H1 = {r.h1}"),
        Check("a*c1 not divisible", not r.divisible,
              f"a = {r.a_lcm}, a*c1 = {_vec(ac1)}, gcd = {r.gcd}"),
        Check("divisors part of a basis", r.basis_ok, "fiber and graph curve classes"),
        Check("pi1 of complement abelian", sd.flags.pi1_complement_abelian, "holds for the family"),
        Check("simply connected", r.simply_connected, f"H1 = {r.h1}"),
        Check("w2 = 0", r.w2_zero,
              f"orbit multiplicities odd: {r.all_a_odd}; K - a*c1 mod 2 = {parity}"),
        Check("H3 torsion free", sd.flags.divisors_rational_curves, "both curves are rational"),
        Check("H3 rank", r.h3_rank == sd.lattice.rank - 1,
              f"rank H^3 = {r.h3_rank}, Picard rank {sd.lattice.rank}"),
        Check("c1 = -(K + boundary)", proportional, f"c1 = {_vec(r.c1)}"),
    ]


# --- documents -------------------------------------------------------------

def _reject_float(text):
    raise InputError(f"floating point literal {text} is not allowed; write rationals as \"p/q\"")


def load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed document: {exc}") from exc


_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

SEIFERT_INPUT_SCHEMA = {
    "type": "object",
    "required": ["lattice", "divisors", "background_class", "canonical_class", "flags"],
    "properties": {
        "lattice": {
            "type": "object",
            "required": ["rank", "gram"],
            "properties": {
                "rank": {"type": "integer", "minimum": 0},
                "gram": {"type": "array", "items": _INT_VECTOR},
                "labels": {"type": "array", "items": {"type": "string"}},
            },
        },
        "divisors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["class", "a", "b"],
                "properties": {
                    "class": _INT_VECTOR,
                    "a": {"type": "integer"},
                    "b": {"type": "integer"},
                },
            },
        },
        "background_class": _INT_VECTOR,
        "canonical_class": _INT_VECTOR,
        "flags": {
            "type": "object",
            "required": ["pi1_complement_abelian", "divisors_rational_curves",
                         "divisors_smooth_transversal"],
            "properties": {
                "pi1_complement_abelian": {"type": "boolean"},
                "divisors_rational_curves": {"type": "boolean"},
                "divisors_smooth_transversal": {"type": "boolean"},
            },
        },
    },
}


def parse_seifert_input(document: str | dict, strict: bool = True) -> SeifertData:
    """Build validated :class:`SeifertData` from a JSON document.

    Raises :class:`InputError` on schema problems and
    :class:`~einstein5.seifert.SeifertDataError` when the data violates the
    orbit-invariant requirements.
    """
    doc = load_json(document) if isinstance(document, str) else document
    try:
        jsonschema.validate(doc, SEIFERT_INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{where}: {exc.message}") from None
    lat = doc["lattice"]
    rank, gram = lat["rank"], lat["gram"]
    if len(gram) != rank or any(len(row) != rank for row in gram):
        raise InputError(f"lattice/gram: expected a {rank} x {rank} matrix")
    labels = lat.get("labels")
    if labels is not None and len(labels) != rank:
        raise InputError(f"lattice/labels: expected {rank} labels")
    try:
        L = IntersectionLattice.from_gram(IntMatrix.from_rows(gram, rank), labels)
    except ValueError as exc:
        raise InputError(f"lattice: {exc}") from None

    def cls(vec, where):
        if len(vec) != rank:
            raise InputError(f"{where}: expected {rank} coordinates, got {len(vec)}")
        return DivisorClass(L, vec)

    divisors = tuple(OrbitDivisor(cls(d["class"], f"divisors/{i}/class"), d["a"], d["b"])
                     for i, d in enumerate(doc["divisors"]))
    flags = SeifertFlags(**doc["flags"])
    return SeifertData(L, divisors, cls(doc["background_class"], "background_class"), flags,
                       cls(doc["canonical_class"], "canonical_class"), strict)


def seifert_document(sd: SeifertData) -> dict:
    """The input-schema form of ``sd``; all classes must be integral."""
    doc = {
        "lattice": {"rank": sd.lattice.rank, "gram": sd.lattice.gram.tolist(),
                    "labels": list(sd.lattice.labels)},
        "divisors": [{"class": list(d.dclass.integer_coords()), "a": d.a, "b": d.b}
                     for d in sd.divisors],
        "background_class": list(sd.background.integer_coords()),
        "flags": {
            "pi1_complement_abelian": sd.flags.pi1_complement_abelian,
            "divisors_rational_curves": sd.flags.divisors_rational_curves,
            "divisors_smooth_transversal": sd.flags.divisors_smooth_transversal,
        },
    }
    if sd.canonical is not None:
        doc["canonical_class"] = list(sd.canonical.integer_coords())
    return doc


def emit_seifert_input(sd: SeifertData) -> str:
    return json.dumps(seifert_document(sd), indent=2, sort_keys=True) + "\n"


def certificate_document(cert: Certificate) -> dict:
    p = cert.params
    r = cert.classification
    config = p.config
    doc = {
        "version": CERTIFICATE_VERSION,
        "params": {
            "k": p.k,
            "blown_up_points": p.points,
            "picard_rank": p.k + 1,
            "m1": p.m1,
            "m2": p.m2,
            "config": (GENERIC if not isinstance(config, PointConfig) else
                       {"kind": "symmetric", "c": [format_fraction(c) for c in config.c]}),
            "background_class": None if p.background is None else list(p.background),
        },
        "checks": [{"name": c.name, "pass": c.passed, "evidence": c.evidence} for c in cert.checks],
        "violations": list(cert.violations),
        "h1": (None if r is None or r.h1 is None else
               {"invariant_factors": list(r.h1.torsion), "free_rank": r.h1.free_rank,
                "group": str(r.h1)}),
        "chern_class": None if r is None else [format_fraction(x) for x in r.c1.coords],
        "integral_class": None if r is None else [format_fraction(x) for x in r.integral_class.coords],
        "klt": None if cert.klt is None else {
            "b1": format_fraction(cert.klt.b1),
            "b2": format_fraction(cert.klt.b2),
            "records": [{
                "label": rec.label,
                "worst_case_value": format_fraction(rec.worst_case_value),
                "bound": format_fraction(rec.bound),
                "pass": rec.passed,
                "attaining_vertex": [format_fraction(x) for x in rec.attaining_vertex],
            } for rec in cert.klt.records],
        },
        "diffeo_type": cert.diffeo_type,
        "einstein_status": cert.einstein_status,
        "moduli_real_dimension": cert.moduli_real_dimension,
        "isometry_invariants": dict(cert.isometry_invariants),
        "asserted_properties": list(ASSERTED_PROPERTIES) if cert.passed else [],
        "notes": list(cert.notes),
    }
    return doc


def emit_certificate(cert: Certificate, format: str = "text") -> str:
    """Serialize deterministically as ``"structured"`` (JSON) or ``"text"``."""
    doc = certificate_document(cert)
    if format == "structured":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    p = doc["params"]
    lines = [
        f"certificate v{doc['version']}",
        f"k = {p['k']} summands, {p['blown_up_points']} blown-up points, Picard rank {p['picard_rank']}",
        f"orbit multiplicities m1 = {p['m1']}, m2 = {p['m2']}",
        f"configuration: {p['config'] if p['config'] == GENERIC else 'symmetric c = ' + ', '.join(p['config']['c'])}",
        "",
        "checks:",
    ]
    width = max(len(c["name"]) for c in doc["checks"])
    for c in doc["checks"]:
        lines.append(f"  [{'PASS' if c['pass'] else 'FAIL'}] {c['name']:<{width}}  {c['evidence']}")
    if doc["violations"]:
        lines.append("")
        lines.append("violations:")
        lines.extend(f"  - {v}" for v in doc["violations"])
    lines += [
        "",
        f"H1 = {doc['h1']['group'] if doc['h1'] else 'not computed'}",
        f"diffeomorphism type: {doc['diffeo_type'] or 'undetermined'}",
        f"einstein status: {doc['einstein_status']}",
        f"moduli real dimension: {doc['moduli_real_dimension'] if doc['moduli_real_dimension'] is not None else '-'}",
        f"isometry invariants: m1 = {p['m1']}, m2 = {p['m2']}, points {doc['isometry_invariants']['points']}",
    ]
    lines.extend(f"note: {n}" for n in doc["notes"])
    if doc["asserted_properties"]:
        lines.append("asserted, not verified:")
        lines.extend(f"  - {a}" for a in doc["asserted_properties"])
    return "\n".join(lines) + "\n"


def load_certificate(text: str) -> dict:
    """Parse a structured certificate back into its document form."""
    doc = load_json(text)
    if not isinstance(doc, dict) or doc.get("version") != CERTIFICATE_VERSION:
        raise InputError("not a version 1 certificate document")
    return doc


def parse_config(document: str | dict, k: int) -> PointConfig | str:
    """Configuration file: ``{"kind": "generic"}`` or ``{"kind": "symmetric", "c": ["1/3", ...]}``."""
    doc = load_json(document) if isinstance(document, str) else document
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == GENERIC:
        return GENERIC
    if kind != "symmetric":
        raise InputError('config: "kind" must be "generic" or "symmetric"')
    c = doc.get("c")
    if c is None:
        c = default_parameters(k - 1)
    if not isinstance(c, list) or not all(isinstance(x, (str, int)) for x in c):
        raise InputError('config/c: expected a list of "p/q" strings')
    return symmetric_configuration(k - 1, c)


def family_params(k: int, m1: int, m2: int, c=None, generic: bool = False,
                  background=None) -> FamilyParams:
    """FamilyParams with the default symmetric configuration c_i = i/(m+1) when none is given."""
    if generic:
        config = GENERIC
    else:
        try:
            config = symmetric_configuration(k - 1, default_parameters(k - 1) if c is None else c)
        except ConfigurationError:
            if c is not None:
                raise
            config = GENERIC
    return FamilyParams(k, m1, m2, config, None if background is None else tuple(background))


def report_summary(report: ClassificationReport) -> str:
    return (f"H1 = {report.h1}; diffeomorphism type: {report.diffeo_type or 'undetermined'}; "
            f"smale count {connected_sum_name(report.h3_rank) if report.h3_rank is not None else '-'}")
