"""
Report records and renderers for classifications and grid scans.

JSON output is the pydantic record dumped with sorted keys, so parsing and
re-serializing a report reproduces it byte for byte. CSV and text outputs
carry no colour codes.
"""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field
from tabulate import tabulate

from .ambient_catalog import AmbientCatalog
from .constants import SCHEMA_VERSION
from .link_classifier import LinkCandidate, LinkClassification

CSV_HEADER = (
    "d",
    "g",
    "anticanonical_cube",
    "quadrisecants",
    "smallness",
    "verdict",
    "partner_d",
    "partner_g",
    "normalized_defect",
    "hypotheses",
)


class AmbientRecord(BaseModel):
    """A rank-one Fano threefold by label, index and (-K)^3."""
    label: str
    index: int
    anticanonical_degree: int


class ExclusionRecord(BaseModel):
    """One excluded (or not excluded) second contraction with its evidence."""
    family: str
    excluded: bool
    evidence: Dict[str, Any]
    summary: str
    note: str = ""


class PartnerRecord(BaseModel):
    """An E1 partner candidate on the X+ side."""
    ambient: AmbientRecord
    d_plus: int
    g_plus: int
    partner_exceptional: str
    alpha: str = Field(..., description="Coefficient of -K_X, exact rational")
    beta: str = Field(..., description="Coefficient of E, exact rational")
    flop_side_pairings: List[int]
    partner_hyperplane: Optional[str] = None
    hyperplane_cube_on_x: Optional[int] = None
    hyperplane_cube_on_partner: Optional[int] = None
    hyperplane_curve_degrees: List[int] = Field(default_factory=list)


class ClassificationRecord(BaseModel):
    """Machine record of one classification."""
    schema_version: int = SCHEMA_VERSION
    ambient: AmbientRecord
    d: int
    g: int
    verdict: str
    anticanonical_cube: int
    big: bool
    nef: str
    nef_reason: str
    ample: str
    quadrisecant_count: Optional[int] = None
    cubic_restriction_nef: Optional[bool] = None
    contracted_class: Optional[str] = None
    smallness: Optional[str] = None
    smallness_reason: Optional[str] = None
    k3_square: Optional[int] = None
    flopping_curves: Optional[int] = None
    defect: Optional[int] = None
    normalized_defect: Optional[str] = None
    exclusions: List[ExclusionRecord] = Field(default_factory=list)
    partners: List[PartnerRecord] = Field(default_factory=list)
    hypotheses: List[str] = Field(default_factory=list)
    reasons: List[str] = Field(default_factory=list)
    bounds: Dict[str, int] = Field(default_factory=dict)


class ScanRow(BaseModel):
    """One (d, g) cell of a grid scan."""
    d: int
    g: int
    anticanonical_cube: int
    quadrisecants: Optional[int] = None
    smallness: Optional[str] = None
    verdict: str
    partner_d: Optional[int] = None
    partner_g: Optional[int] = None
    normalized_defect: Optional[str] = None
    hypotheses: List[str] = Field(default_factory=list)


class ScanReport(BaseModel):
    """A full grid scan, rows in (d, g) order."""
    schema_version: int = SCHEMA_VERSION
    ambient: AmbientRecord
    d_range: List[int]
    g_range: List[int]
    bounds: Dict[str, int] = Field(default_factory=dict)
    rows: List[ScanRow] = Field(default_factory=list)


def _rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _ambient_record(ambient) -> AmbientRecord:
    return AmbientRecord(
        label=ambient.label, index=ambient.index, anticanonical_degree=ambient.anticanonical_degree
    )


def _partner_record(candidate: LinkCandidate) -> PartnerRecord:
    return PartnerRecord(
        ambient=_ambient_record(candidate.partner_ambient),
        d_plus=candidate.d_plus,
        g_plus=candidate.g_plus,
        partner_exceptional=str(candidate.partner_exceptional),
        alpha=str(candidate.alpha),
        beta=str(candidate.beta),
        flop_side_pairings=list(candidate.flop_side),
        partner_hyperplane=str(candidate.partner_hyperplane) if candidate.partner_hyperplane else None,
        hyperplane_cube_on_x=candidate.hyperplane_cube_on_x,
        hyperplane_cube_on_partner=candidate.hyperplane_cube_on_partner,
        hyperplane_curve_degrees=list(candidate.hyperplane_curve_degrees),
    )


def classification_record(result: LinkClassification) -> ClassificationRecord:
    weak_fano = result.weak_fano
    smallness = result.smallness
    return ClassificationRecord(
        ambient=_ambient_record(result.setup.ambient),
        d=result.setup.degree,
        g=result.setup.genus,
        verdict=result.verdict.value,
        anticanonical_cube=weak_fano.anticanonical_cube,
        big=weak_fano.big,
        nef=weak_fano.nef.value,
        nef_reason=weak_fano.nef_reason,
        ample=weak_fano.ample.value,
        quadrisecant_count=weak_fano.quadrisecant_count,
        cubic_restriction_nef=weak_fano.cubic_restriction_nef,
        contracted_class=str(smallness.contracted_class) if smallness and smallness.contracted_class else None,
        smallness=smallness.certificate.value if smallness else None,
        smallness_reason=smallness.reason if smallness else None,
        k3_square=smallness.k3_square if smallness else None,
        flopping_curves=result.flopping_curves,
        defect=result.flop_defect.e if result.flop_defect else None,
        normalized_defect=_rational(result.flop_defect.normalized) if result.flop_defect else None,
        exclusions=[
            ExclusionRecord(
                family=exclusion.family.value,
                excluded=exclusion.excluded,
                evidence=exclusion.evidence.to_dict(),
                summary=exclusion.evidence.describe(),
                note=exclusion.note,
            )
            for exclusion in result.exclusions
        ],
        partners=[_partner_record(candidate) for candidate in result.partners],
        hypotheses=[hypothesis.code for hypothesis in result.hypotheses],
        reasons=list(result.reasons),
        bounds=dict(result.bounds),
    )


def scan_row(result: LinkClassification) -> ScanRow:
    partner = result.partner
    return ScanRow(
        d=result.setup.degree,
        g=result.setup.genus,
        anticanonical_cube=result.weak_fano.anticanonical_cube,
        quadrisecants=result.weak_fano.quadrisecant_count,
        smallness=result.smallness.certificate.value if result.smallness else None,
        verdict=result.verdict.value,
        partner_d=partner.d_plus if partner else None,
        partner_g=partner.g_plus if partner else None,
        normalized_defect=_rational(result.flop_defect.normalized) if result.flop_defect else None,
        hypotheses=[hypothesis.code for hypothesis in result.hypotheses],
    )


def to_json(record: BaseModel) -> str:
    return json.dumps(record.model_dump(mode="json"), indent=2, sort_keys=True)


def _cell(value: Any) -> str:
    return "" if value is None else str(value)


def scan_to_csv(rows: Sequence[ScanRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.d,
                row.g,
                row.anticanonical_cube,
                _cell(row.quadrisecants),
                _cell(row.smallness),
                row.verdict,
                _cell(row.partner_d),
                _cell(row.partner_g),
                _cell(row.normalized_defect),
                ";".join(row.hypotheses),
            ]
        )
    return buffer.getvalue()


def scan_to_text(rows: Sequence[ScanRow]) -> str:
    table = [
        [
            row.d,
            row.g,
            row.anticanonical_cube,
            _cell(row.quadrisecants),
            _cell(row.smallness),
            row.verdict,
            _cell(row.partner_d),
            _cell(row.partner_g),
            _cell(row.normalized_defect),
            ";".join(row.hypotheses),
        ]
        for row in rows
    ]
    return tabulate(table, headers=list(CSV_HEADER), tablefmt="simple", disable_numparse=True)


def render_classification_text(result: LinkClassification) -> str:
    """Human-readable classification report."""
    setup = result.setup
    weak_fano = result.weak_fano
    lines = [
        f"curve: d={setup.degree} g={setup.genus} in {setup.ambient.label}",
        f"verdict: {result.verdict.label}",
        f"(-K_X)^3: {weak_fano.anticanonical_cube} ({'big' if weak_fano.big else 'not big'})",
        f"nef: {weak_fano.nef.value} ({weak_fano.nef_reason})",
        f"ample: {weak_fano.ample.value}",
    ]
    if weak_fano.quadrisecant_count is not None:
        lines.append(f"quadrisecants: {weak_fano.quadrisecant_count}")
    if result.smallness is not None:
        lines.append(
            f"contracted class: {result.smallness.contracted_class} "
            f"({result.smallness.certificate.value}: {result.smallness.reason})"
        )
    if result.flop is not None:
        lines.append(f"flopping curves: {result.flop.total_curves}")
    if result.flop_defect is not None:
        lines.append(f"defect: e={result.flop_defect.e}, e/r^3={result.flop_defect.normalized}")

    if result.exclusions:
        lines.append("exclusions:")
        lines.append(
            tabulate(
                [
                    [e.family.value, "yes" if e.excluded else "no", e.evidence.describe()]
                    for e in result.exclusions
                ],
                headers=["family", "excluded", "evidence"],
                tablefmt="simple",
            )
        )
    for candidate in result.partners:
        lines.append(
            f"partner d={candidate.d_plus} g={candidate.g_plus} ({candidate.partner_ambient.label})"
        )
        lines.append(
            f"  E+ = {candidate.partner_exceptional} = "
            f"{candidate.alpha}(-K) + {candidate.beta}E"
        )
        if candidate.partner_hyperplane is not None:
            lines.append(
                f"  H+ = {candidate.partner_hyperplane}, cube {candidate.hyperplane_cube_on_x} on X, "
                f"{candidate.hyperplane_cube_on_partner} on X+"
            )
    if result.hypotheses:
        lines.append("hypotheses: " + ", ".join(h.code for h in result.hypotheses))
    for reason in result.reasons:
        lines.append(f"note: {reason}")
    return "\n".join(lines)


def catalog_to_text(catalog: AmbientCatalog) -> str:
    rows = [[a.label, a.index, a.anticanonical_degree, a.hyperplane_cube] for a in catalog]
    return tabulate(rows, headers=["label", "index", "(-K)^3", "H^3"], tablefmt="simple")
