"""
CSV storage for bound curves and Monte Carlo tables.

Every file starts with its header row. Exact rationals are rendered with
12 significant digits; simulated rates and interval limits are plain
floats.
"""

import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import aiofiles
import structlog

from ..analysis.bounds import format_decimal
from ..analysis.monte_carlo import FailureEstimate

logger = structlog.get_logger(__name__)

CURVE_FIELDS = ["p", "fer_bound", "fer_exact", "fer_sim", "ci_low", "ci_high", "trials"]
FAILURE_FIELDS = [
    "f",
    "l",
    "bound",
    "exact",
    "estimate",
    "ci_low",
    "ci_high",
    "trials",
    "miscorrections",
]
FIG1_FIELDS = ["l", "p", "fer_bound", "fer_exact", "fer_independent"]


def _simulated(estimate: Optional[FailureEstimate]) -> Dict[str, Any]:
    if estimate is None:
        return {"fer_sim": "", "ci_low": "", "ci_high": "", "trials": 0}
    low, high = estimate.wilson_ci
    return {
        "fer_sim": repr(float(estimate.error_rate)),
        "ci_low": repr(low),
        "ci_high": repr(high),
        "trials": estimate.trials,
    }


def curve_row(
    p: Fraction,
    bound: Fraction,
    exact: Fraction,
    estimate: Optional[FailureEstimate] = None,
) -> Dict[str, Any]:
    row = {"p": format_decimal(p), "fer_bound": format_decimal(bound), "fer_exact": format_decimal(exact)}
    row.update(_simulated(estimate))
    return row


def failure_row(
    f: int, l: int, bound: Fraction, exact: Optional[Fraction], estimate: FailureEstimate
) -> Dict[str, Any]:
    """Failure table row; exact is left empty when no closed form is known."""
    low, high = estimate.wilson_ci
    return {
        "f": f,
        "l": l,
        "bound": format_decimal(bound),
        "exact": "" if exact is None else format_decimal(exact),
        "estimate": repr(float(estimate.error_rate)),
        "ci_low": repr(low),
        "ci_high": repr(high),
        "trials": estimate.trials,
        "miscorrections": estimate.miscorrections,
    }


def fig1_row(
    l: int, p: Fraction, bound: Fraction, exact: Fraction, independent: Fraction
) -> Dict[str, Any]:
    return {
        "l": l,
        "p": format_decimal(p),
        "fer_bound": format_decimal(bound),
        "fer_exact": format_decimal(exact),
        "fer_independent": format_decimal(independent),
    }


def render_csv(fieldnames: Sequence[str], rows: Sequence[Dict[str, Any]]) -> str:
    """Render rows with a header, using "\\n" line endings."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


class CSVStorage:
    """
    CSV file with a fixed header.

    Writes replace the whole file so repeated runs produce identical
    content.
    """

    def __init__(self, file_path: str, fieldnames: Sequence[str]):
        """
        Initialize CSV storage.

        Args:
            file_path: Path to the CSV file
            fieldnames: Header columns
        """
        self.file_path = Path(file_path)
        self.fieldnames = list(fieldnames)

    async def save_rows(self, rows: Sequence[Dict[str, Any]]) -> None:
        """
        Write the header and rows.

        Args:
            rows: Row dictionaries keyed by the header columns
        """
        try:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(self.file_path, "w", encoding="utf-8", newline="") as f:
                await f.write(render_csv(self.fieldnames, rows))
            logger.info("Saved rows to CSV storage", file_path=str(self.file_path), count=len(rows))
        except OSError as e:
            logger.error("Error saving rows to CSV storage", file_path=str(self.file_path), error=str(e))
            raise

    async def load_rows(self) -> List[Dict[str, str]]:
        """
        Load all rows as string dictionaries.

        Raises:
            ValueError: If the header does not match
        """
        async with aiofiles.open(self.file_path, "r", encoding="utf-8", newline="") as f:
            content = await f.read()
        reader = csv.DictReader(io.StringIO(content))
        if reader.fieldnames != self.fieldnames:
            raise ValueError(f"Unexpected CSV header {reader.fieldnames} in {self.file_path}")
        rows = list(reader)
        logger.debug("Loaded rows from CSV storage", file_path=str(self.file_path), count=len(rows))
        return rows
