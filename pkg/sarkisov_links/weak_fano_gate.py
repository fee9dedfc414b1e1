"""
Weak Fano gate for X = Bl_C(P^3).

-K_X is big when (-K_X)^3 > 0, nef when 4H_S - C is free on a quartic K3
containing C, and not ample as soon as C has a quadrisecant line. The
anticanonical morphism is small when the only class it could contract is
ruled out as a divisor on the K3.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .divisor_lattice import (
    BlowupSetup,
    DivisorClass,
    anticanonical_cube,
    anticanonical_quadratic_form,
)
from .errors import DegeneratePairingError, FormulaDomainError, UnsupportedAmbientError
from .k3_lattice import (
    K3LatticeData,
    SmallnessCertificate,
    is_free_kH_minus_C,
    is_nef_kH_minus_C,
    k3_self_intersection,
    smallness_certificate,
)
from .secant_calculus import flopping_profile

logger = logging.getLogger(__name__)


class Hypothesis(Enum):
    K3_QUARTIC = "curve lies on a smooth quartic K3 surface with Pic(S) = ZH_S + ZC"
    GENERAL_CURVE = "curve is general: finitely many quadrisecants, each a plain 4-secant line"
    NOT_ON_CUBIC = "curve lies on no cubic surface"
    ATIYAH_FLOPS = "flopping curves are disjoint (-1,-1)-curves"
    BOUNDED_SEARCH = "a conclusion relies on a finite search box"

    @property
    def code(self) -> str:
        return self.name


class NefVerdict(Enum):
    CERTIFIED = "CERTIFIED"
    REFUTED = "REFUTED"
    UNKNOWN = "UNKNOWN"


class AmpleVerdict(Enum):
    NOT_AMPLE = "NOT_AMPLE"
    POSSIBLY_AMPLE = "POSSIBLY_AMPLE"


@dataclass(frozen=True)
class WeakFanoReport:
    anticanonical_cube: int
    big: bool
    nef: NefVerdict
    nef_reason: str
    ample: AmpleVerdict
    quadrisecant_count: Optional[int]
    cubic_restriction_nef: Optional[bool]
    hypotheses: Tuple[Hypothesis, ...]
    warnings: Tuple[str, ...] = ()

    @property
    def is_weak_fano(self) -> bool:
        return self.big and self.nef == NefVerdict.CERTIFIED


@dataclass(frozen=True)
class ContractedRay:
    """Primitive class aH + bE with (-K)^2 D = 0, normalized to a > 0.

    When sigma_E vanishes no such class has a > 0 and the ray is E = (0, 1).
    """

    divisor: DivisorClass
    sigma_h: int
    sigma_e: int


@dataclass(frozen=True)
class SmallnessReport:
    """Smallness verdict for the contracted ray.

    contracted_class is primitive with a > 0, or exactly E when sigma_E = 0;
    E restricts to C on S, so that case is decided by the square of C.
    """

    contracted_class: Optional[DivisorClass]
    certificate: SmallnessCertificate
    reason: str
    k3_square: Optional[int] = None


def assess_weak_fano(
    setup: BlowupSetup,
    k3_hypothesis: bool = True,
    general_curve: bool = True,
) -> WeakFanoReport:
    """Run the bigness, nefness and non-ampleness checks for Bl_C(Y)."""
    cube = anticanonical_cube(setup)
    hypotheses = []
    warnings = []

    # Nefness through freeness of 4H_S - C on the quartic K3
    cubic_nef = None
    if not setup.ambient.is_projective_space:
        nef, nef_reason = NefVerdict.UNKNOWN, f"no nef certificate for ambient {setup.ambient.label}"
    elif not k3_hypothesis:
        nef, nef_reason = NefVerdict.UNKNOWN, "K3 quartic hypothesis disabled"
    else:
        hypotheses.append(Hypothesis.K3_QUARTIC)
        lattice = K3LatticeData.quartic(setup.degree, setup.genus)
        nef_check = is_nef_kH_minus_C(lattice, setup.index)
        free_check = is_free_kH_minus_C(lattice, setup.index)
        cubic_nef = bool(is_nef_kH_minus_C(lattice, setup.index - 1))
        if free_check:
            nef, nef_reason = NefVerdict.CERTIFIED, free_check.reason
        elif not nef_check:
            nef, nef_reason = NefVerdict.REFUTED, f"-K_X restricts to a non-nef class: {nef_check.reason}"
        else:
            nef, nef_reason = NefVerdict.UNKNOWN, f"4H_S - C is nef but {free_check.reason}"

    # Non-ampleness through quadrisecant lines
    count = None
    ample = AmpleVerdict.POSSIBLY_AMPLE
    try:
        count = flopping_profile(setup).quadrisecant_count
    except (FormulaDomainError, UnsupportedAmbientError) as e:
        warnings.append(str(e))
        logger.warning("Quadrisecant count unavailable for %s: %s", setup, e)

    if count is not None and general_curve:
        hypotheses.append(Hypothesis.GENERAL_CURVE)
        if count >= 1:
            ample = AmpleVerdict.NOT_AMPLE
        if cubic_nef is False:
            hypotheses.append(Hypothesis.NOT_ON_CUBIC)

    return WeakFanoReport(
        anticanonical_cube=cube,
        big=cube > 0,
        nef=nef,
        nef_reason=nef_reason,
        ample=ample,
        quadrisecant_count=count,
        cubic_restriction_nef=cubic_nef,
        hypotheses=tuple(hypotheses),
        warnings=tuple(warnings),
    )


def contracted_ray_class(setup: BlowupSetup) -> ContractedRay:
    """Primitive solution (a, b) of (-K)^2 (aH + bE) = 0 with a > 0, or (0, 1) if sigma_E = 0."""
    form = anticanonical_quadratic_form(setup)
    sigma_h, sigma_e = form.sigma_h, form.sigma
    if sigma_h == 0 and sigma_e == 0:
        raise DegeneratePairingError(f"(-K)^2 pairs to zero with H and E on {setup}")

    divisor = math.gcd(sigma_h, sigma_e)
    a, b = sigma_e // divisor, -sigma_h // divisor
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return ContractedRay(DivisorClass(a, b), sigma_h, sigma_e)


def assess_smallness(setup: BlowupSetup, lattice: Optional[K3LatticeData] = None) -> SmallnessReport:
    """Certify that the anticanonical morphism of X contracts no divisor.

    Args:
        setup: Blowup data
        lattice: K3 lattice to test against; the quartic through C by default
    """
    ray = contracted_ray_class(setup)
    lattice = lattice or K3LatticeData.quartic(setup.degree, setup.genus)

    # E restricts to C with the coefficient sign preserved
    a, b = ray.divisor.as_tuple()
    certificate, reason = smallness_certificate(lattice, (a, b), setup.index)
    return SmallnessReport(
        contracted_class=ray.divisor,
        certificate=certificate,
        reason=reason,
        k3_square=k3_self_intersection(lattice, a, b),
    )
