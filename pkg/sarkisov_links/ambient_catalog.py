"""
Catalog of smooth Fano threefolds of Picard rank one.

Records are (label, index, anticanonical degree). A catalog file holds one
record per line, fields separated by whitespace or commas; '#' starts a
comment and blank lines are skipped.
"""

import logging
import os
import re
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .constants import CATALOG_ENV_VAR
from .divisor_lattice import AmbientFano
from .errors import CatalogError, InvalidAmbientError, UnknownAmbientError

logger = logging.getLogger(__name__)

# Index 1: every even (-K)^3 from 2 to 22
_INDEX_ONE_DEGREES = tuple(range(2, 23, 2))

_FIELD_SEPARATOR = re.compile(r"[\s,]+")


def _builtin_records() -> List[Tuple[str, int, int]]:
    records = [("P3", 4, 64), ("Q", 3, 54)]
    records += [(f"V{k}", 2, 8 * k) for k in range(1, 6)]
    records += [(f"X{degree}", 1, degree) for degree in _INDEX_ONE_DEGREES]
    return records


class AmbientCatalog:
    """Ordered, label-unique collection of ambient Fano threefolds."""

    def __init__(self, ambients: Iterable[AmbientFano], source: str = "builtin"):
        self.source = source
        self._ambients: Dict[str, AmbientFano] = {}
        for ambient in ambients:
            if ambient.label in self._ambients:
                raise CatalogError(f"duplicate label {ambient.label!r}")
            self._ambients[ambient.label] = ambient

    @classmethod
    def default(cls) -> "AmbientCatalog":
        return cls(
            (AmbientFano(index, degree, label) for label, index, degree in _builtin_records()),
            source="builtin",
        )

    @classmethod
    def from_text(cls, text: str, source: str = "<text>") -> "AmbientCatalog":
        """Parse catalog records; malformed lines abort with their line number."""
        ambients: List[AmbientFano] = []
        seen: Dict[str, int] = {}

        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            fields = [field for field in _FIELD_SEPARATOR.split(line) if field]
            if len(fields) != 3:
                raise CatalogError(
                    f"expected 'label index degree', got {len(fields)} field(s)", line_number
                )
            label, index_text, degree_text = fields
            try:
                index, degree = int(index_text), int(degree_text)
            except ValueError:
                raise CatalogError(
                    f"index and degree must be integers, got {index_text!r} and {degree_text!r}",
                    line_number,
                )

            if label in seen:
                raise CatalogError(
                    f"duplicate label {label!r} (first defined on line {seen[label]})", line_number
                )
            try:
                ambient = AmbientFano(index, degree, label)
                ambient.hyperplane_cube
            except InvalidAmbientError as e:
                raise CatalogError(str(e), line_number)

            seen[label] = line_number
            ambients.append(ambient)

        if not ambients:
            raise CatalogError(f"catalog {source} has no records")
        return cls(ambients, source=source)

    @classmethod
    def from_file(cls, path: str) -> "AmbientCatalog":
        file_path = Path(path)
        try:
            text = file_path.read_text()
        except OSError as e:
            raise CatalogError(f"cannot read catalog file {path}: {e}")
        catalog = cls.from_text(text, source=str(file_path))
        logger.info("Loaded %d ambients from %s", len(catalog), file_path)
        return catalog

    @classmethod
    def from_environment(cls, path: Optional[str] = None) -> "AmbientCatalog":
        """Explicit path, then SARKISOV_CATALOG, then the built-in catalog."""
        path = path or os.environ.get(CATALOG_ENV_VAR)
        if path:
            return cls.from_file(path)
        return cls.default()

    def get(self, label: str) -> AmbientFano:
        try:
            return self._ambients[label]
        except KeyError:
            known = ", ".join(self._ambients)
            raise UnknownAmbientError(f"unknown ambient label {label!r} (known: {known})")

    def restricted_to_index(self, index: int) -> "AmbientCatalog":
        return AmbientCatalog(
            (ambient for ambient in self if ambient.index == index),
            source=f"{self.source}[index={index}]",
        )

    @property
    def labels(self) -> List[str]:
        return list(self._ambients)

    def by_degree(self) -> Dict[int, List[AmbientFano]]:
        grouped: Dict[int, List[AmbientFano]] = {}
        for ambient in self:
            grouped.setdefault(ambient.anticanonical_degree, []).append(ambient)
        return grouped

    def to_text(self) -> str:
        lines = [f"# source: {self.source}", "# label index anticanonical_degree"]
        lines += [f"{a.label} {a.index} {a.anticanonical_degree}" for a in self]
        return "\n".join(lines) + "\n"

    def __contains__(self, label: str) -> bool:
        return label in self._ambients

    def __iter__(self) -> Iterator[AmbientFano]:
        return iter(self._ambients.values())

    def __len__(self) -> int:
        return len(self._ambients)

    def __repr__(self):
        return f"AmbientCatalog({self.source!r}, {len(self)} ambients)"
