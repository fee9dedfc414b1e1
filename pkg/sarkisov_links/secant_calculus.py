"""Quadrisecant lines of space curves: the flopping curves of Bl_C(P^3)."""

from dataclasses import dataclass
from typing import Tuple

from .constants import MIN_SECANT_DEGREE, QUADRISECANT_CLASS
from .divisor_lattice import BlowupSetup
from .errors import FormulaDomainError, UnsupportedAmbientError


@dataclass(frozen=True)
class SecantProfile:
    quadrisecant_count: int
    curve_class_on_x: Tuple[int, int]
    anticanonical_degree_of_secant: int


def quadrisecant_count(d: int, g: int) -> int:
    """(d-2)(d-3)^2(d-4)/12 - (d^2-7d+13-g)g/2 for a general curve of degree d and genus g."""
    if d < MIN_SECANT_DEGREE:
        raise FormulaDomainError(
            f"quadrisecant formula needs d >= {MIN_SECANT_DEGREE}, got d = {d}"
        )
    if g < 0:
        raise FormulaDomainError(f"genus must be non-negative, got g = {g}")

    numerator = (d - 2) * (d - 3) ** 2 * (d - 4) - 6 * (d * d - 7 * d + 13 - g) * g
    count, remainder = divmod(numerator, 12)
    if remainder:
        raise FormulaDomainError(f"quadrisecant formula is not integral at (d, g) = ({d}, {g})")
    return count


def flopping_profile(setup: BlowupSetup) -> SecantProfile:
    if not setup.ambient.is_projective_space:
        raise UnsupportedAmbientError(
            f"flopping curves are only derived for P^3, not {setup.ambient.label}"
        )
    h_deg, e_deg = QUADRISECANT_CLASS
    return SecantProfile(
        quadrisecant_count=quadrisecant_count(setup.degree, setup.genus),
        curve_class_on_x=QUADRISECANT_CLASS,
        anticanonical_degree_of_secant=setup.index * h_deg - e_deg,
    )
