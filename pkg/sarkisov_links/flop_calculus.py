"""
Numerical transport of divisor classes across the anticanonical flop X --> X+.

Flopping curves are modelled as disjoint (-1,-1)-curves (Atiyah flops), so
for every triple of classes

    D1~ . D2~ . D3~ = D1.D2.D3 - sum mult * (D1.l)(D2.l)(D3.l).

Pairings against -K are unchanged because every flopped curve is K-trivial.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Tuple, Union

from .divisor_lattice import (
    BlowupSetup,
    DivisorClass,
    E_CLASS,
    Rational,
    anticanonical_class,
    anticanonical_cube,
    anticanonical_quadratic_form,
    intersection_table,
    triple_product,
)
from .errors import FormulaDomainError, InvariantViolationError
from .secant_calculus import SecantProfile


@dataclass(frozen=True)
class FlopCurve:
    h_deg: int
    e_deg: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be positive, got {self.multiplicity}")

    @property
    def profile(self) -> Tuple[int, int]:
        return (self.h_deg, self.e_deg)


CurveLike = Union[FlopCurve, Tuple[int, int]]


@dataclass(frozen=True)
class FlopData:
    curves: Tuple[FlopCurve, ...] = ()

    @classmethod
    def from_profile(cls, profile: SecantProfile) -> "FlopData":
        count = profile.quadrisecant_count
        if count < 0:
            raise FormulaDomainError(f"negative flopping-curve count {count}")
        if count == 0:
            return cls()
        h_deg, e_deg = profile.curve_class_on_x
        return cls((FlopCurve(h_deg, e_deg, count),))

    @classmethod
    def of(cls, curves: Iterable[Tuple[int, int, int]]) -> "FlopData":
        return cls(tuple(FlopCurve(h, e, m) for h, e, m in curves))

    @property
    def total_curves(self) -> int:
        return sum(curve.multiplicity for curve in self.curves)

    def __add__(self, other: "FlopData") -> "FlopData":
        return FlopData(self.curves + other.curves)

    def reversed(self) -> "FlopData":
        """The same flop seen from X+: every curve pairing changes sign."""
        return FlopData(tuple(FlopCurve(-c.h_deg, -c.e_deg, c.multiplicity) for c in self.curves))

    def validate(self, setup: BlowupSetup) -> None:
        for curve in self.curves:
            if setup.index * curve.h_deg - curve.e_deg != 0:
                raise InvariantViolationError(
                    f"curve with (H.l, E.l) = {curve.profile} is not K-trivial for index {setup.index}"
                )


class FlopDefect(NamedTuple):
    e: int
    normalized: Fraction


class FlopSidePairings(NamedTuple):
    anticanonical_degree: int
    anticanonical_square: int
    cube: int


def pairing_with_curve(divisor: DivisorClass, curve: CurveLike) -> int:
    if isinstance(curve, FlopCurve):
        h_deg, e_deg = curve.profile
    else:
        h_deg, e_deg = curve
    return divisor.h * h_deg + divisor.e * e_deg


def strict_transform_triple(
    d1: DivisorClass,
    d2: DivisorClass,
    d3: DivisorClass,
    setup: BlowupSetup,
    flop: FlopData,
) -> int:
    flop.validate(setup)
    correction = sum(
        curve.multiplicity
        * pairing_with_curve(d1, curve)
        * pairing_with_curve(d2, curve)
        * pairing_with_curve(d3, curve)
        for curve in flop.curves
    )
    return triple_product(d1, d2, d3, setup) - correction


def transport_cube(cube_value: int, divisor: DivisorClass, flop: FlopData) -> int:
    """Carry a cube across the flop given the class pairings with the flopped curves."""
    return cube_value - sum(
        curve.multiplicity * pairing_with_curve(divisor, curve) ** 3 for curve in flop.curves
    )


def strict_transform_cube(divisor: DivisorClass, setup: BlowupSetup, flop: FlopData) -> int:
    return strict_transform_triple(divisor, divisor, divisor, setup, flop)


def defect(setup: BlowupSetup, flop: FlopData) -> FlopDefect:
    """e = E^3 - E~^3, normalized by r^3."""
    e = intersection_table(setup).eee - strict_transform_cube(E_CLASS, setup, flop)
    return FlopDefect(e, Fraction(e, setup.index ** 3))


def flop_side_pairings(divisor: DivisorClass, setup: BlowupSetup, flop: FlopData) -> FlopSidePairings:
    anticanonical = anticanonical_class(setup)
    return FlopSidePairings(
        anticanonical_degree=strict_transform_triple(anticanonical, anticanonical, divisor, setup, flop),
        anticanonical_square=strict_transform_triple(anticanonical, divisor, divisor, setup, flop),
        cube=strict_transform_cube(divisor, setup, flop),
    )


def cube_in_anticanonical_basis(alpha: Rational, beta: Rational, setup: BlowupSetup) -> Fraction:
    """(alpha(-K) + beta E)^3 expanded through (-K)^3, sigma, tau and E^3."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    form = anticanonical_quadratic_form(setup)
    return (
        alpha ** 3 * anticanonical_cube(setup)
        + 3 * alpha ** 2 * beta * form.sigma
        + 3 * alpha * beta ** 2 * form.tau
        + beta ** 3 * intersection_table(setup).eee
    )


class FlopSideLattice:
    """Intersection numbers of strict transforms on X+."""

    def __init__(self, setup: BlowupSetup, flop: FlopData):
        flop.validate(setup)
        self.setup = setup
        self.flop = flop
        self.table = intersection_table(setup)

    def triple(self, d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> int:
        return strict_transform_triple(d1, d2, d3, self.setup, self.flop)

    def cube(self, divisor: DivisorClass) -> int:
        return strict_transform_cube(divisor, self.setup, self.flop)

    def pairings(self, divisor: DivisorClass) -> FlopSidePairings:
        return flop_side_pairings(divisor, self.setup, self.flop)
