"""
Two-ray game on X = Bl_C(Y) through the anticanonical flop.

After the flop X --> X+ the second extremal contraction of X+ is one of:
a conic bundle, a del Pezzo fibration, a divisorial contraction to a point
(E2, E3/E4, E5) or a blowdown to a curve (E1). The first four are excluded
by arithmetic of the anticanonical form; the E1 case is solved for the
partner (Y+, d+, g+) inside a bounded box.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .ambient_catalog import AmbientCatalog
from .binary_forms import (
    IsotropyEvidence,
    RepresentabilityVerdict,
    VerdictStatus,
    is_square,
    isotropy_evidence,
    represents,
)
from .constants import (
    DEFAULT_MODULUS_SWEEP_MAX,
    DEFAULT_PARTNER_BOX,
    DEFAULT_PARTNER_DEGREE_MAX,
    DEFAULT_PARTNER_GENUS_MAX,
    DEFAULT_SEARCH_BOX,
)
from .divisor_lattice import (
    AmbientFano,
    BlowupSetup,
    DivisorClass,
    anticanonical_class,
    anticanonical_cube,
    anticanonical_quadratic_form,
    cube,
    to_anticanonical_basis,
)
from .errors import (
    DegeneratePairingError,
    FormulaDomainError,
    InvariantViolationError,
    SarkisovError,
    UnsupportedAmbientError,
)
from .flop_calculus import (
    FlopData,
    FlopDefect,
    FlopSidePairings,
    defect,
    flop_side_pairings,
    pairing_with_curve,
    strict_transform_cube,
)
from .k3_lattice import SmallnessCertificate
from .secant_calculus import flopping_profile
from .weak_fano_gate import (
    AmpleVerdict,
    Hypothesis,
    NefVerdict,
    SmallnessReport,
    WeakFanoReport,
    assess_smallness,
    assess_weak_fano,
)

logger = logging.getLogger(__name__)

# Value of (-K).D^2 for the fibre class of a conic bundle
CONIC_BUNDLE_TARGET = 2

POINT_TYPE_PROVENANCE = "derived from the extremal-contraction classification"


class ContractionFamily(Enum):
    CONIC_BUNDLE = "CONIC_BUNDLE"
    DEL_PEZZO = "DEL_PEZZO"
    E2 = "E2"
    E3_E4 = "E3_E4"
    E5 = "E5"


@dataclass(frozen=True)
class PointTypeInvariants:
    """Local invariants ((-K)^2 E+, (-K) E+^2, E+^3) of a point-type contraction."""

    family: ContractionFamily
    anticanonical_degree: int
    anticanonical_square: int
    cube: int
    provenance: str = POINT_TYPE_PROVENANCE

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.anticanonical_degree, self.anticanonical_square, self.cube)


POINT_TYPE_TABLE: Tuple[PointTypeInvariants, ...] = (
    PointTypeInvariants(ContractionFamily.E2, 4, -2, 1),
    PointTypeInvariants(ContractionFamily.E3_E4, 2, -2, 2),
    PointTypeInvariants(ContractionFamily.E5, 1, -2, 4),
)


@dataclass(frozen=True)
class BoxSearchEvidence:
    """Result of walking the line (-K)^2 T = target inside |x|, |y| <= box."""

    target: Tuple[int, int, int]
    box: int
    classes_checked: int
    witness: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        if self.witness is not None:
            x, y = self.witness
            return f"class {DivisorClass(x, y)} has flop-side invariants {self.target}"
        return (
            f"no class with flop-side invariants {self.target} in |x|,|y| <= {self.box} "
            f"({self.classes_checked} classes on the degree line)"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "box_search",
            "target": list(self.target),
            "box": self.box,
            "classes_checked": self.classes_checked,
            "witness": list(self.witness) if self.witness is not None else None,
        }


Evidence = Union[RepresentabilityVerdict, IsotropyEvidence, BoxSearchEvidence]


@dataclass(frozen=True)
class ExclusionResult:
    family: ContractionFamily
    excluded: bool
    evidence: Evidence
    note: str = ""

    @property
    def bounded(self) -> bool:
        return isinstance(self.evidence, BoxSearchEvidence) and self.excluded

    def describe(self) -> str:
        state = "excluded" if self.excluded else "not excluded"
        text = f"{self.family.value}: {state}; {self.evidence.describe()}"
        return f"{text} ({self.note})" if self.note else text


@dataclass(frozen=True)
class LinkCandidate:
    partner_ambient: AmbientFano
    d_plus: int
    g_plus: int
    partner_exceptional: DivisorClass
    alpha: Fraction
    beta: Fraction
    flop_side: FlopSidePairings
    partner_hyperplane: Optional[DivisorClass] = None
    hyperplane_cube_on_x: Optional[int] = None
    hyperplane_cube_on_partner: Optional[int] = None
    hyperplane_curve_degrees: Tuple[int, ...] = ()

    @property
    def alpha_beta(self) -> Tuple[Fraction, Fraction]:
        return (self.alpha, self.beta)

    def describe(self) -> str:
        return (
            f"d={self.d_plus} g={self.g_plus} ({self.partner_ambient.label}), "
            f"E+ = {self.partner_exceptional} = {self.alpha}(-K) + {self.beta}E"
        )


class LinkVerdict(Enum):
    E1_E1 = "E1_E1"
    E1_OTHER = "E1_OTHER"
    NOT_WEAK_FANO = "NOT_WEAK_FANO"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def label(self) -> str:
        return self.value.replace("_", "-") if self.value.startswith("E1") else self.value

    @property
    def is_conclusive(self) -> bool:
        return self != LinkVerdict.INCONCLUSIVE


@dataclass(frozen=True)
class ClassifierOptions:
    modulus_sweep_max: int = DEFAULT_MODULUS_SWEEP_MAX
    search_box: int = DEFAULT_SEARCH_BOX
    partner_box: int = DEFAULT_PARTNER_BOX
    partner_degree_max: int = DEFAULT_PARTNER_DEGREE_MAX
    partner_genus_max: int = DEFAULT_PARTNER_GENUS_MAX
    k3_hypothesis: bool = True
    general_curve: bool = True
    catalog: Optional[AmbientCatalog] = None
    point_types: Tuple[PointTypeInvariants, ...] = POINT_TYPE_TABLE

    def resolved_catalog(self) -> AmbientCatalog:
        return self.catalog if self.catalog is not None else AmbientCatalog.default()

    def bounds(self) -> Dict[str, int]:
        return {
            "modulus_sweep_max": self.modulus_sweep_max,
            "search_box": self.search_box,
            "partner_box": self.partner_box,
            "partner_degree_max": self.partner_degree_max,
            "partner_genus_max": self.partner_genus_max,
        }


@dataclass(frozen=True)
class LinkClassification:
    setup: BlowupSetup
    weak_fano: WeakFanoReport
    verdict: LinkVerdict
    smallness: Optional[SmallnessReport] = None
    flop: Optional[FlopData] = None
    flop_defect: Optional[FlopDefect] = None
    exclusions: Tuple[ExclusionResult, ...] = ()
    partners: Tuple[LinkCandidate, ...] = ()
    hypotheses: Tuple[Hypothesis, ...] = ()
    reasons: Tuple[str, ...] = ()
    bounds: Dict[str, int] = field(default_factory=dict)

    @property
    def partner(self) -> Optional[LinkCandidate]:
        return self.partners[0] if self.verdict == LinkVerdict.E1_E1 else None

    @property
    def flopping_curves(self) -> Optional[int]:
        return self.flop.total_curves if self.flop is not None else None


def exclude_conic_bundle(
    setup: BlowupSetup,
    modulus_sweep_max: int = DEFAULT_MODULUS_SWEEP_MAX,
    search_box: int = DEFAULT_SEARCH_BOX,
) -> ExclusionResult:
    """A conic bundle needs a class with (-K).D^2 = 2."""
    form = anticanonical_quadratic_form(setup)
    verdict = represents(form, CONIC_BUNDLE_TARGET, modulus_sweep_max, search_box)
    note = "representability undecided" if verdict.status == VerdictStatus.UNKNOWN else ""
    return ExclusionResult(
        ContractionFamily.CONIC_BUNDLE,
        verdict.status == VerdictStatus.NOT_REPRESENTED,
        verdict,
        note,
    )


def exclude_del_pezzo(setup: BlowupSetup) -> ExclusionResult:
    """A del Pezzo fibration needs a nonzero class with (-K).D^2 = 0."""
    evidence = isotropy_evidence(anticanonical_quadratic_form(setup))
    return ExclusionResult(ContractionFamily.DEL_PEZZO, not evidence.isotropic, evidence)


def _degree_line(
    sigma_h: int, sigma_e: int, target: int, box: int
) -> Iterator[Tuple[int, int]]:
    """Integral (x, y) in the box with sigma_h*x + sigma_e*y = target."""
    if sigma_h == 0 and sigma_e == 0:
        raise DegeneratePairingError("(-K)^2 pairs to zero with H and E")
    if sigma_e == 0:
        if target % sigma_h == 0 and abs(target // sigma_h) <= box:
            x = target // sigma_h
            for y in range(-box, box + 1):
                yield (x, y)
        return
    for x in range(-box, box + 1):
        remainder = target - sigma_h * x
        if remainder % sigma_e == 0:
            y = remainder // sigma_e
            if abs(y) <= box:
                yield (x, y)


def _search_point_type(
    setup: BlowupSetup, flop: FlopData, invariants: PointTypeInvariants, box: int
) -> BoxSearchEvidence:
    form = anticanonical_quadratic_form(setup)
    checked = 0
    for x, y in _degree_line(form.sigma_h, form.sigma, invariants.anticanonical_degree, box):
        checked += 1
        if form(x, y) != invariants.anticanonical_square:
            continue
        if strict_transform_cube(DivisorClass(x, y), setup, flop) == invariants.cube:
            return BoxSearchEvidence(invariants.triple, box, checked, witness=(x, y))
    return BoxSearchEvidence(invariants.triple, box, checked)


def exclude_point_type(
    setup: BlowupSetup,
    flop: FlopData,
    point_types: Sequence[PointTypeInvariants] = POINT_TYPE_TABLE,
    box: int = DEFAULT_PARTNER_BOX,
    modulus_sweep_max: int = DEFAULT_MODULUS_SWEEP_MAX,
) -> List[ExclusionResult]:
    """Exclude divisorial contractions to a point on the X+ side."""
    form = anticanonical_quadratic_form(setup)
    results = []
    obstructions: Dict[int, RepresentabilityVerdict] = {}

    for invariants in point_types:
        square = invariants.anticanonical_square
        if square not in obstructions:
            # The congruence sweep alone; a witness is found by the box walk below
            obstructions[square] = represents(form, square, modulus_sweep_max, search_box=1)
        verdict = obstructions[square]
        if verdict.status == VerdictStatus.NOT_REPRESENTED:
            results.append(
                ExclusionResult(invariants.family, True, verdict, note=invariants.provenance)
            )
            continue

        evidence = _search_point_type(setup, flop, invariants, box)
        logger.debug(
            "%s: point type %s checked %d classes", setup, invariants.family.value, evidence.classes_checked
        )
        results.append(
            ExclusionResult(
                invariants.family, evidence.witness is None, evidence, note=invariants.provenance
            )
        )
    return results


def _partner_hyperplane(
    setup: BlowupSetup, flop: FlopData, exceptional: DivisorClass, index: int
) -> Tuple[Optional[DivisorClass], Optional[int], Optional[int], Tuple[int, ...]]:
    # H+ = (-K + E+) / r+ on the partner side
    total = anticanonical_class(setup) + exceptional
    if total.h % index or total.e % index:
        return None, None, None, ()
    hyperplane = DivisorClass(total.h // index, total.e // index)
    degrees = tuple(pairing_with_curve(hyperplane, curve) for curve in flop.curves)
    return (
        hyperplane,
        cube(hyperplane, setup),
        strict_transform_cube(hyperplane, setup, flop),
        degrees,
    )


def e1_partner_search(
    setup: BlowupSetup,
    flop: FlopData,
    catalog: AmbientCatalog,
    box: int = DEFAULT_PARTNER_BOX,
    degree_max: int = DEFAULT_PARTNER_DEGREE_MAX,
    genus_max: int = DEFAULT_PARTNER_GENUS_MAX,
) -> List[LinkCandidate]:
    """Solve for blowdowns X+ -> Y+ of a divisor E+ onto a curve of degree d+ and genus g+.

    Args:
        setup: Blowup data of X
        flop: Flopping curves of X --> X+
        catalog: Candidate ambients Y+
        box: Bound on |x|, |y| for E+ = xH + yE
        degree_max: Largest partner degree d+
        genus_max: Largest partner genus g+

    Returns:
        Every candidate in the box, ordered by (x, y) and then catalog order
    """
    if len(catalog) == 0:
        raise ValueError("partner search needs a non-empty ambient catalog")
    if box < 1:
        raise ValueError(f"partner box must be positive, got {box}")
    flop.validate(setup)

    form = anticanonical_quadratic_form(setup)
    k_cube = anticanonical_cube(setup)
    by_degree = catalog.by_degree()
    candidates = []

    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            square = form(x, y)
            # (-K) E+^2 = 2g+ - 2
            if square < -2 or square % 2:
                continue
            g_plus = (square + 2) // 2
            if g_plus > genus_max:
                continue

            # (-K)^2 E+ = r+ d+ + 2 - 2g+ together with (-K)^3 = (-K_Y+)^3 - 2r+ d+ - 2 + 2g+
            # pins (-K_Y+)^3 = 2(-K)^2 E+ + (-K) E+^2 + (-K)^3
            degree = form.sigma_h * x + form.sigma * y
            ambients = by_degree.get(2 * degree + square + k_cube)
            if not ambients:
                continue

            exceptional = DivisorClass(x, y)
            flopped_cube = None
            for ambient in ambients:
                r_plus = ambient.index
                if (degree + square) % r_plus:
                    continue
                d_plus = (degree + square) // r_plus
                if not 1 <= d_plus <= degree_max:
                    continue
                if flopped_cube is None:
                    flopped_cube = strict_transform_cube(exceptional, setup, flop)
                if flopped_cube != 2 - 2 * g_plus - r_plus * d_plus:
                    continue

                alpha, beta = to_anticanonical_basis(exceptional, setup)
                hyperplane, cube_x, cube_plus, degrees = _partner_hyperplane(
                    setup, flop, exceptional, r_plus
                )
                candidates.append(
                    LinkCandidate(
                        partner_ambient=ambient,
                        d_plus=d_plus,
                        g_plus=g_plus,
                        partner_exceptional=exceptional,
                        alpha=alpha,
                        beta=beta,
                        flop_side=flop_side_pairings(exceptional, setup, flop),
                        partner_hyperplane=hyperplane,
                        hyperplane_cube_on_x=cube_x,
                        hyperplane_cube_on_partner=cube_plus,
                        hyperplane_curve_degrees=degrees,
                    )
                )

    logger.debug("%s: %d E1 partner candidate(s) in box %d", setup, len(candidates), box)
    return candidates


def check_exclusion_evidence(
    result: ExclusionResult,
    setup: Optional[BlowupSetup] = None,
    flop: Optional[FlopData] = None,
) -> bool:
    """Re-verify an exclusion from scratch; False for anything not excluded."""
    if not result.excluded:
        return False

    evidence = result.evidence
    if isinstance(evidence, RepresentabilityVerdict):
        if evidence.status != VerdictStatus.NOT_REPRESENTED or not evidence.modulus:
            return False
        m, form = evidence.modulus, evidence.form
        return all(
            (form(x, y) - evidence.target) % m != 0 for x in range(m) for y in range(m)
        )

    if isinstance(evidence, IsotropyEvidence):
        a, b, c = evidence.form.coefficients
        disc = b * b - 4 * a * c
        return disc == evidence.discriminant and a != 0 and c != 0 and not is_square(disc)

    if isinstance(evidence, BoxSearchEvidence):
        if setup is None or flop is None:
            raise ValueError("re-checking a box search needs the setup and flop data")
        degree, square, cube_value = evidence.target
        invariants = PointTypeInvariants(result.family, degree, square, cube_value)
        return _search_point_type(setup, flop, invariants, evidence.box).witness is None

    return False


def _append(hypotheses: List[Hypothesis], *items: Hypothesis) -> None:
    for item in items:
        if item not in hypotheses:
            hypotheses.append(item)


def classify(setup: BlowupSetup, options: Optional[ClassifierOptions] = None) -> LinkClassification:
    """Walk the weak Fano gate, the flop, the exclusions and the E1 partner search."""
    options = options or ClassifierOptions()
    hypotheses: List[Hypothesis] = []
    reasons: List[str] = []

    weak_fano = assess_weak_fano(setup, options.k3_hypothesis, options.general_curve)
    _append(hypotheses, *weak_fano.hypotheses)
    reasons.extend(weak_fano.warnings)

    smallness = None
    if setup.ambient.is_projective_space and options.k3_hypothesis and weak_fano.big:
        try:
            smallness = assess_smallness(setup)
        except (DegeneratePairingError, InvariantViolationError) as e:
            reasons.append(f"smallness: {e}")

    flop = None
    flop_defect = None
    try:
        flop = FlopData.from_profile(flopping_profile(setup))
        flop.validate(setup)
        flop_defect = defect(setup, flop)
        _append(hypotheses, Hypothesis.ATIYAH_FLOPS)
    except (FormulaDomainError, UnsupportedAmbientError, InvariantViolationError) as e:
        flop = None
        reasons.append(f"flop data: {e}")

    def finish(verdict: LinkVerdict, exclusions=(), partners=()) -> LinkClassification:
        if verdict == LinkVerdict.INCONCLUSIVE:
            logger.warning("%s is inconclusive: %s", setup, "; ".join(reasons))
        return LinkClassification(
            setup=setup,
            weak_fano=weak_fano,
            verdict=verdict,
            smallness=smallness,
            flop=flop,
            flop_defect=flop_defect,
            exclusions=tuple(exclusions),
            partners=tuple(partners),
            hypotheses=tuple(hypotheses),
            reasons=tuple(reasons),
            bounds=options.bounds(),
        )

    if not weak_fano.big:
        reasons.append(f"-K_X is not big: (-K_X)^3 = {weak_fano.anticanonical_cube}")
        return finish(LinkVerdict.NOT_WEAK_FANO)
    if weak_fano.nef == NefVerdict.REFUTED:
        reasons.append(weak_fano.nef_reason)
        return finish(LinkVerdict.NOT_WEAK_FANO)
    if weak_fano.nef != NefVerdict.CERTIFIED:
        reasons.append(f"nefness not certified: {weak_fano.nef_reason}")
        return finish(LinkVerdict.INCONCLUSIVE)
    if smallness is None or smallness.certificate != SmallnessCertificate.SMALL_CERTIFIED:
        reasons.append(f"smallness not certified: {smallness.reason if smallness else 'no certificate'}")
        return finish(LinkVerdict.INCONCLUSIVE)
    if weak_fano.ample == AmpleVerdict.POSSIBLY_AMPLE:
        reasons.append("no quadrisecant witness; X may be Fano")
        return finish(LinkVerdict.INCONCLUSIVE)
    if flop is None or not flop.curves:
        reasons.append("no usable flop data")
        return finish(LinkVerdict.INCONCLUSIVE)

    try:
        exclusions = [
            exclude_conic_bundle(setup, options.modulus_sweep_max, options.search_box),
            exclude_del_pezzo(setup),
        ]
        exclusions += exclude_point_type(
            setup, flop, options.point_types, options.partner_box, options.modulus_sweep_max
        )
        partners = e1_partner_search(
            setup,
            flop,
            options.resolved_catalog(),
            options.partner_box,
            options.partner_degree_max,
            options.partner_genus_max,
        )
    except (SarkisovError, ValueError) as e:
        reasons.append(f"link search failed: {e}")
        return finish(LinkVerdict.INCONCLUSIVE)

    # Every partner list is relative to the box
    _append(hypotheses, Hypothesis.BOUNDED_SEARCH)
    for result in exclusions:
        if not result.excluded:
            reasons.append(result.describe())

    if all(result.excluded for result in exclusions) and len(partners) == 1:
        return finish(LinkVerdict.E1_E1, exclusions, partners)
    if partners:
        if len(partners) > 1:
            reasons.append(f"{len(partners)} E1 partner candidates")
        return finish(LinkVerdict.E1_OTHER, exclusions, partners)

    reasons.append(f"no E1 partner with |x|,|y| <= {options.partner_box}")
    return finish(LinkVerdict.INCONCLUSIVE, exclusions, partners)
