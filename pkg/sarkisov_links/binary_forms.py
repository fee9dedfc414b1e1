"""
Integral binary quadratic forms.

Exact representability and isotropy decisions for forms
q(x, y) = a*x^2 + b*xy + c*y^2. Representability is decided by a
congruence sweep followed by an exact bounded search; the result is
UNKNOWN when neither succeeds, never a guess.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Any, FrozenSet, Iterator, Optional, Tuple

from .constants import DEFAULT_MODULUS_SWEEP_MAX, DEFAULT_SEARCH_BOX

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def coefficients(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def __str__(self):
        return f"{self.a}x^2 + {self.b}xy + {self.c}y^2"


class VerdictStatus(Enum):
    REPRESENTED = "REPRESENTED"
    NOT_REPRESENTED = "NOT_REPRESENTED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class RepresentabilityVerdict:
    """Outcome of a representability question q(x, y) = target."""

    status: VerdictStatus
    form: BinaryForm
    target: int
    witness: Optional[Tuple[int, int]] = None
    modulus: Optional[int] = None
    search_box: Optional[int] = None

    @property
    def is_conclusive(self) -> bool:
        return self.status != VerdictStatus.UNKNOWN

    def describe(self) -> str:
        if self.status == VerdictStatus.REPRESENTED:
            x, y = self.witness
            return f"{self.form} = {self.target} at (x, y) = ({x}, {y})"
        if self.status == VerdictStatus.NOT_REPRESENTED:
            return f"{self.form} = {self.target} has no solution mod {self.modulus}"
        return f"{self.form} = {self.target}: undecided within |x|,|y| <= {self.search_box}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "representability",
            "status": self.status.value,
            "form": list(self.form.coefficients),
            "target": self.target,
            "witness": list(self.witness) if self.witness is not None else None,
            "modulus": self.modulus,
            "search_box": self.search_box,
        }


@dataclass(frozen=True)
class IsotropyEvidence:
    """Checkable record of an isotropy decision: a root or a non-square discriminant."""

    form: BinaryForm
    discriminant: int
    isotropic: bool
    witness: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        if self.isotropic:
            x, y = self.witness
            return f"{self.form} vanishes at (x, y) = ({x}, {y})"
        return f"{self.form} is anisotropic over Q: discriminant {self.discriminant} is not a square"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "isotropy",
            "form": list(self.form.coefficients),
            "discriminant": self.discriminant,
            "isotropic": self.isotropic,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def evaluate(form: BinaryForm, x: int, y: int) -> int:
    return form.a * x * x + form.b * x * y + form.c * y * y


def is_square(n: int) -> bool:
    if n < 0:
        return False
    root = math.isqrt(n)
    return root * root == n


@lru_cache(maxsize=4096)
def _residues(a: int, b: int, c: int, modulus: int) -> FrozenSet[int]:
    values = set()
    for x in range(modulus):
        for y in range(modulus):
            values.add((a * x * x + b * x * y + c * y * y) % modulus)
            if len(values) == modulus:
                return frozenset(values)
    return frozenset(values)


def residue_values(form: BinaryForm, modulus: int) -> FrozenSet[int]:
    """Return every value q(x, y) mod m for (x, y) in (Z/m)^2."""
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    return _residues(form.a % modulus, form.b % modulus, form.c % modulus, modulus)


def congruence_obstructed(form: BinaryForm, target: int, modulus: int) -> bool:
    """True iff q(x, y) = target has no solution modulo `modulus`."""
    return target % modulus not in residue_values(form, modulus)


def _signed_range(bound: int) -> Iterator[int]:
    yield 0
    for value in range(1, bound + 1):
        yield value
        yield -value


def _row_solutions(form: BinaryForm, target: int, x: int, box: int) -> Iterator[int]:
    """Yield every y with |y| <= box and q(x, y) = target, smallest |y| first."""
    a, b, c = form.coefficients
    constant = a * x * x - target
    linear = b * x
    if c == 0:
        if linear == 0:
            if constant == 0:
                yield 0
            return
        if (-constant) % linear == 0:
            y = -constant // linear
            if abs(y) <= box:
                yield y
        return

    # c*y^2 + linear*y + constant = 0
    disc = linear * linear - 4 * c * constant
    if not is_square(disc):
        return
    root = math.isqrt(disc)
    roots = set()
    for numerator in (-linear + root, -linear - root):
        if numerator % (2 * c) == 0:
            y = numerator // (2 * c)
            if abs(y) <= box:
                roots.add(y)
    for y in sorted(roots, key=lambda v: (abs(v), v)):
        yield y


def find_witness(form: BinaryForm, target: int, search_box: int) -> Optional[Tuple[int, int]]:
    """Exhaustive search over |x|, |y| <= search_box, exact row by row."""
    for x in _signed_range(search_box):
        for y in _row_solutions(form, target, x, search_box):
            return (x, y)
    return None


def represents(
    form: BinaryForm,
    target: int,
    modulus_sweep_max: int = DEFAULT_MODULUS_SWEEP_MAX,
    search_box: int = DEFAULT_SEARCH_BOX,
) -> RepresentabilityVerdict:
    """Decide whether `form` takes the value `target` on Z^2.

    Args:
        form: The integral binary form
        target: Value to represent
        modulus_sweep_max: Largest modulus tried for a congruence obstruction
        search_box: Bound on |x| and |y| for the witness search

    Returns:
        REPRESENTED with a witness, NOT_REPRESENTED with an obstruction
        modulus, or UNKNOWN qualified by the search box
    """
    if modulus_sweep_max < 2:
        raise ValueError(f"modulus_sweep_max must be at least 2, got {modulus_sweep_max}")
    if search_box < 1:
        raise ValueError(f"search_box must be at least 1, got {search_box}")

    for modulus in range(2, modulus_sweep_max + 1):
        if congruence_obstructed(form, target, modulus):
            return RepresentabilityVerdict(
                VerdictStatus.NOT_REPRESENTED, form, target, modulus=modulus
            )

    witness = find_witness(form, target, search_box)
    if witness is not None:
        return RepresentabilityVerdict(VerdictStatus.REPRESENTED, form, target, witness=witness)

    logger.debug("No obstruction or witness for %s = %d (box %d)", form, target, search_box)
    return RepresentabilityVerdict(VerdictStatus.UNKNOWN, form, target, search_box=search_box)


def isotropic_witness(form: BinaryForm) -> Optional[Tuple[int, int]]:
    """Return a primitive nonzero integer root of the form, or None if anisotropic."""
    if form.is_zero():
        raise ValueError("the zero form has no isotropy decision")

    a, b, c = form.coefficients
    if a == 0:
        return (1, 0)
    if c == 0:
        return (0, 1)

    disc = form.discriminant
    if not is_square(disc):
        return None

    # x/y = (-b + sqrt(disc)) / 2a
    x = -b + math.isqrt(disc)
    y = 2 * a
    divisor = math.gcd(x, y)
    x, y = x // divisor, y // divisor
    if y < 0:
        x, y = -x, -y
    return (x, y)


def isotropic_over_rationals(form: BinaryForm) -> bool:
    return isotropic_witness(form) is not None


def isotropy_evidence(form: BinaryForm) -> IsotropyEvidence:
    witness = isotropic_witness(form)
    return IsotropyEvidence(form, form.discriminant, witness is not None, witness)
