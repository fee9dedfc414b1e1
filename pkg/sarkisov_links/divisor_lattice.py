"""
Intersection theory on the Picard lattice of X = Bl_C(Y).

Y is a Fano threefold of Picard rank one and index r with ample generator
H, C is a smooth curve of degree d and genus g, and E is the exceptional
divisor. Pic(X) = ZH + ZE; every triple product is derived from
(d, g, r, (-K_Y)^3).
"""

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .binary_forms import BinaryForm
from .errors import DivisorParseError, InvalidAmbientError, InvariantViolationError

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class AmbientFano:
    index: int
    anticanonical_degree: int
    label: str

    def __post_init__(self):
        if not 1 <= self.index <= 4:
            raise InvalidAmbientError(f"{self.label}: index must lie in [1, 4], got {self.index}")
        if self.anticanonical_degree <= 0:
            raise InvalidAmbientError(
                f"{self.label}: anticanonical degree must be positive, got {self.anticanonical_degree}"
            )
        if not self.label or any(ch.isspace() for ch in self.label):
            raise InvalidAmbientError(f"invalid ambient label {self.label!r}")

    @property
    def hyperplane_cube(self) -> int:
        """H^3 = (-K_Y)^3 / r^3."""
        quotient, remainder = divmod(self.anticanonical_degree, self.index ** 3)
        if remainder:
            raise InvalidAmbientError(
                f"{self.label}: (-K)^3 = {self.anticanonical_degree} is not divisible by r^3 = {self.index ** 3}"
            )
        return quotient

    @property
    def is_projective_space(self) -> bool:
        # P^3 is the only smooth Fano threefold of index 4
        return self.index == 4


P3 = AmbientFano(index=4, anticanonical_degree=64, label="P3")


@dataclass(frozen=True)
class BlowupSetup:
    ambient: AmbientFano
    degree: int
    genus: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"curve degree must be at least 1, got {self.degree}")
        if self.genus < 0:
            raise ValueError(f"curve genus must be non-negative, got {self.genus}")

    @classmethod
    def on_p3(cls, degree: int, genus: int) -> "BlowupSetup":
        return cls(P3, degree, genus)

    @property
    def index(self) -> int:
        return self.ambient.index

    def __str__(self):
        return f"Bl_C({self.ambient.label}), d={self.degree}, g={self.genus}"


@dataclass(frozen=True)
class DivisorClass:
    """The class h*H + e*E."""

    h: int
    e: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.h + other.h, self.e + other.e)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.h - other.h, self.e - other.e)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.h, -self.e)

    def __mul__(self, scalar: int) -> "DivisorClass":
        return DivisorClass(scalar * self.h, scalar * self.e)

    __rmul__ = __mul__

    def is_primitive(self) -> bool:
        return math.gcd(self.h, self.e) == 1

    def as_tuple(self) -> Tuple[int, int]:
        return (self.h, self.e)

    def __str__(self):
        sign = "-" if self.e < 0 else "+"
        return f"{self.h}H{sign}{abs(self.e)}E"


H_CLASS = DivisorClass(1, 0)
E_CLASS = DivisorClass(0, 1)


@dataclass(frozen=True)
class IntersectionTable:
    hhh: int
    hhe: int
    hee: int
    eee: int

    def by_exceptional_count(self) -> Tuple[int, int, int, int]:
        return (self.hhh, self.hhe, self.hee, self.eee)


@dataclass(frozen=True)
class AnticanonicalForm(BinaryForm):
    """q(x, y) = (-K_X).(xH + yE)^2 together with the (-K)^2 pairings.

    sigma_h = (-K)^2 H, sigma = (-K)^2 E, tau = (-K) E^2.
    """

    sigma_h: int
    sigma: int
    tau: int

    def degree(self, divisor: DivisorClass) -> int:
        """(-K)^2 . D"""
        return self.sigma_h * divisor.h + self.sigma * divisor.e

    def square(self, divisor: DivisorClass) -> int:
        """(-K) . D^2"""
        return self(divisor.h, divisor.e)


def intersection_table(setup: BlowupSetup) -> IntersectionTable:
    r, d, g = setup.index, setup.degree, setup.genus
    return IntersectionTable(
        hhh=setup.ambient.hyperplane_cube,
        hhe=0,
        hee=-d,
        eee=2 - 2 * g - r * d,
    )


def _trilinear(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass, table: IntersectionTable) -> int:
    by_count = table.by_exceptional_count()
    total = 0
    for (c1, k1), (c2, k2), (c3, k3) in itertools.product(
        ((d1.h, 0), (d1.e, 1)), ((d2.h, 0), (d2.e, 1)), ((d3.h, 0), (d3.e, 1))
    ):
        total += c1 * c2 * c3 * by_count[k1 + k2 + k3]
    return total


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass, setup: BlowupSetup) -> int:
    return _trilinear(d1, d2, d3, intersection_table(setup))


def cube(divisor: DivisorClass, setup: BlowupSetup) -> int:
    return triple_product(divisor, divisor, divisor, setup)


def anticanonical_class(setup: BlowupSetup) -> DivisorClass:
    return DivisorClass(setup.index, -1)


def anticanonical_cube(setup: BlowupSetup) -> int:
    """(-K_X)^3 = (-K_Y)^3 + 2K_Y.C - 2 + 2g."""
    r, d, g = setup.index, setup.degree, setup.genus
    return setup.ambient.anticanonical_degree - 2 * r * d - 2 + 2 * g


def anticanonical_quadratic_form(setup: BlowupSetup) -> AnticanonicalForm:
    r, d, g = setup.index, setup.degree, setup.genus
    hhh = setup.ambient.hyperplane_cube
    return AnticanonicalForm(
        a=r * hhh,
        b=2 * d,
        c=2 * g - 2,
        sigma_h=r * r * hhh - d,
        sigma=r * d + 2 - 2 * g,
        tau=2 * g - 2,
    )


def anticanonical_basis_form(setup: BlowupSetup) -> BinaryForm:
    """The same form written in the rational basis (-K_X, E)."""
    form = anticanonical_quadratic_form(setup)
    return BinaryForm(anticanonical_cube(setup), 2 * form.sigma, form.tau)


def to_anticanonical_basis(divisor: DivisorClass, setup: BlowupSetup) -> Tuple[Fraction, Fraction]:
    """Coordinates (alpha, beta) with D = alpha*(-K_X) + beta*E."""
    alpha = Fraction(divisor.h, setup.index)
    return alpha, divisor.e + alpha


def from_anticanonical_basis(alpha: Rational, beta: Rational, setup: BlowupSetup) -> DivisorClass:
    h = Fraction(alpha) * setup.index
    e = Fraction(beta) - Fraction(alpha)
    if h.denominator != 1 or e.denominator != 1:
        raise InvariantViolationError(
            f"{alpha}(-K) + {beta}E is not an integral class on {setup}"
        )
    return DivisorClass(int(h), int(e))


_TERM = re.compile(r"([+-]?)(\d*)([HE])")


def parse_divisor(text: str) -> DivisorClass:
    """Parse expressions such as '4H-1E', '24H - 7E' or '-E+3H'."""
    compact = "".join(text.split()).replace("−", "-")
    if not compact:
        raise DivisorParseError("empty divisor expression", text)

    coefficients = {"H": 0, "E": 0}
    position = 0
    terms: List[str] = []
    while position < len(compact):
        match = _TERM.match(compact, position)
        if match is None or match.end() == position:
            raise DivisorParseError("unexpected token", compact[position:])
        token = match.group(0)
        if terms and not match.group(1):
            raise DivisorParseError("missing sign before term", token)
        sign, digits, symbol = match.groups()
        value = int(digits) if digits else 1
        coefficients[symbol] += -value if sign == "-" else value
        terms.append(token)
        position = match.end()

    return DivisorClass(coefficients["H"], coefficients["E"])
