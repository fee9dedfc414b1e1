"""
Grid scans over (d, g).

Cells are classified independently, serially or through joblib workers,
and always emitted in lexicographic (d, g) order.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from joblib import Parallel, delayed

from .constants import DEFAULT_AMBIENT_LABEL, MIN_SECANT_DEGREE
from .divisor_lattice import AmbientFano, BlowupSetup
from .errors import ScanRequestError
from .link_classifier import ClassifierOptions, classify
from .reports import (
    AmbientRecord,
    ScanReport,
    ScanRow,
    scan_row,
    scan_to_csv,
    scan_to_text,
    to_json,
)

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class ScanRequest:
    d_min: int
    d_max: int
    g_min: int
    g_max: int
    ambient_label: str = DEFAULT_AMBIENT_LABEL
    output_format: str = "csv"

    def __post_init__(self):
        if self.d_min < MIN_SECANT_DEGREE:
            raise ScanRequestError(f"d_min must be at least {MIN_SECANT_DEGREE}, got {self.d_min}")
        if self.d_min > self.d_max:
            raise ScanRequestError(f"empty degree range {self.d_min}..{self.d_max}")
        if self.g_min < 0:
            raise ScanRequestError(f"g_min must be non-negative, got {self.g_min}")
        if self.g_min > self.g_max:
            raise ScanRequestError(f"empty genus range {self.g_min}..{self.g_max}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ScanRequestError(f"unknown output format {self.output_format!r}")

    def cells(self) -> List[Tuple[int, int]]:
        return [
            (d, g)
            for d in range(self.d_min, self.d_max + 1)
            for g in range(self.g_min, self.g_max + 1)
        ]


def classify_cell(ambient: AmbientFano, d: int, g: int, options: ClassifierOptions) -> ScanRow:
    return scan_row(classify(BlowupSetup(ambient, d, g), options))


class ScanManager:
    """Runs grid scans with a fixed set of classifier options."""

    def __init__(self, options: Optional[ClassifierOptions] = None, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.options = options or ClassifierOptions()
        self.workers = workers

    def run(self, request: ScanRequest, ambient: AmbientFano) -> List[ScanRow]:
        cells = request.cells()
        logger.info("Scanning %d cells on %s with %d worker(s)", len(cells), ambient.label, self.workers)

        if self.workers == 1:
            rows = [classify_cell(ambient, d, g, self.options) for d, g in cells]
        else:
            rows = Parallel(n_jobs=self.workers)(
                delayed(classify_cell)(ambient, d, g, self.options) for d, g in cells
            )

        return sorted(rows, key=lambda row: (row.d, row.g))

    def report(self, request: ScanRequest, ambient: AmbientFano, rows: List[ScanRow]) -> ScanReport:
        return ScanReport(
            ambient=AmbientRecord(
                label=ambient.label,
                index=ambient.index,
                anticanonical_degree=ambient.anticanonical_degree,
            ),
            d_range=[request.d_min, request.d_max],
            g_range=[request.g_min, request.g_max],
            bounds=self.options.bounds(),
            rows=rows,
        )

    def render(self, request: ScanRequest, ambient: AmbientFano, rows: List[ScanRow]) -> str:
        if request.output_format == "json":
            return to_json(self.report(request, ambient, rows))
        if request.output_format == "text":
            return scan_to_text(rows)
        return scan_to_csv(rows)
