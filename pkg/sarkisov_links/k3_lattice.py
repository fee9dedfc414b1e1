"""
Decision procedures on a rank-2 K3 Picard lattice Pic(S) = ZH_S + ZC.

H_S^2 = 2n, C.H_S = d and C^2 = 2g - 2. Covers the nef/free criterion for
kH - C, self-intersections, and the 4Z obstruction to rational curves.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

from .binary_forms import BinaryForm, VerdictStatus, represents
from .constants import QUARTIC_K3_N
from .divisor_lattice import DivisorClass
from .errors import InvariantViolationError

logger = logging.getLogger(__name__)

ClassLike = Union[DivisorClass, Tuple[int, int]]


@dataclass(frozen=True)
class K3LatticeData:
    n: int
    d: int
    g: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.d <= 0:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")

    @classmethod
    def quartic(cls, d: int, g: int) -> "K3LatticeData":
        return cls(QUARTIC_K3_N, d, g)

    @property
    def gram(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((2 * self.n, self.d), (self.d, 2 * self.g - 2))

    @property
    def gram_form(self) -> BinaryForm:
        """(aH_S + bC)^2 as a binary form in (a, b)."""
        return BinaryForm(2 * self.n, 2 * self.d, 2 * self.g - 2)

    def pairing(self, first: ClassLike, second: ClassLike) -> int:
        (a1, b1), (a2, b2) = _coords(first), _coords(second)
        return (
            2 * self.n * a1 * a2
            + self.d * (a1 * b2 + a2 * b1)
            + (2 * self.g - 2) * b1 * b2
        )


@dataclass(frozen=True)
class CriterionResult:
    holds: bool
    reason: str

    def __bool__(self):
        return self.holds


class SmallnessCertificate(Enum):
    SMALL_CERTIFIED = "SMALL_CERTIFIED"
    UNKNOWN = "UNKNOWN"


def _coords(value: ClassLike) -> Tuple[int, int]:
    if isinstance(value, DivisorClass):
        return value.as_tuple()
    a, b = value
    return (a, b)


def k3_self_intersection(lattice: K3LatticeData, a: int, b: int) -> int:
    return 2 * lattice.n * a * a + 2 * a * b * lattice.d + (2 * lattice.g - 2) * b * b


def is_nef_kH_minus_C(lattice: K3LatticeData, k: int) -> CriterionResult:
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    n, d, g = lattice.n, lattice.d, lattice.g

    if not 2 * n * k > d:
        return CriterionResult(False, f"2nk = {2 * n * k} is not greater than d = {d}")
    quadratic = n * k * k - d * k + g - 1
    if quadratic < 0:
        return CriterionResult(False, f"nk^2 - dk + g - 1 = {quadratic} < 0")
    if (2 * n * k - d, n * k * k - d * k + g) == (2 * n + 1, n + 1):
        return CriterionResult(
            False, f"(2nk - d, nk^2 - dk + g) = ({2 * n + 1}, {n + 1}) is the excluded pair"
        )
    return CriterionResult(True, f"{k}H - C is nef")


def _divides(m: int, value: int) -> bool:
    # Non-positive m never divides
    return m > 0 and value % m == 0


def is_free_kH_minus_C(lattice: K3LatticeData, k: int) -> CriterionResult:
    nef = is_nef_kH_minus_C(lattice, k)
    if not nef:
        return CriterionResult(False, f"not nef: {nef.reason}")

    n, d, g = lattice.n, lattice.d, lattice.g
    if d * d - 4 * n * (g - 1) == 1:
        for m in (2 * n * k - d - 1, 2 * n * k - d + 1):
            if _divides(m, 2 * n):
                return CriterionResult(
                    False, f"d^2 - 4n(g-1) = 1 and {m} divides 2n = {2 * n}"
                )
    return CriterionResult(True, f"{k}H - C is free")


def _values_in_4z(form: BinaryForm) -> bool:
    # Same as q(1, 0), q(0, 1) and q(1, 1) all in 4Z
    return form.a % 4 == 0 and form.b % 4 == 0 and form.c % 4 == 0


def no_rational_curves_obstruction(lattice: K3LatticeData) -> bool:
    """True when every lattice value lies in 4Z, so no (-2)-class (and no rational curve) exists."""
    form = lattice.gram_form
    if not _values_in_4z(form):
        return False

    verdict = represents(form, -2, modulus_sweep_max=4, search_box=1)
    if verdict.status != VerdictStatus.NOT_REPRESENTED:
        raise InvariantViolationError(
            f"lattice values of {form} lie in 4Z but -2 was not obstructed mod 4"
        )
    return True


def smallness_certificate(
    lattice: K3LatticeData,
    contracted: ClassLike,
    r: int,
) -> Tuple[SmallnessCertificate, str]:
    """Certify that the class contracted by the anticanonical morphism spans no divisor.

    Args:
        lattice: K3 lattice of the surface containing the curve
        contracted: Primitive class (a, b) of aH + bE, read on S as aH_S + bC
        r: Ambient index; r*H_S - C is the restricted anticanonical class

    Returns:
        Tuple of (certificate, reason)
    """
    a, b = _coords(contracted)
    if math.gcd(a, b) != 1:
        raise InvariantViolationError(f"contracted class ({a}, {b}) is not primitive")

    anticanonical_pairing = lattice.pairing((r, -1), (a, b))
    if anticanonical_pairing != 0:
        reason = f"class pairs to {anticanonical_pairing} with {r}H_S - C, not a contracted class"
        logger.warning("Smallness not certified: %s", reason)
        return SmallnessCertificate.UNKNOWN, reason

    square = k3_self_intersection(lattice, a, b)
    if square > -4:
        return SmallnessCertificate.UNKNOWN, f"K3 square {square} > -4"

    if not no_rational_curves_obstruction(lattice):
        return SmallnessCertificate.UNKNOWN, "lattice values not all in 4Z; rational curves not ruled out"

    return (
        SmallnessCertificate.SMALL_CERTIFIED,
        f"K3 square {square} <= -4 would force rational components, and S has none",
    )
