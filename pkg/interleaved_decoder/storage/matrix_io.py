"""
Text matrix files.

One line per matrix row, symbols as lowercase hex separated by
whitespace. Blank lines are ignored.
"""

from pathlib import Path
from typing import Iterable, List, Optional, Union

import aiofiles
import numpy as np
import structlog

logger = structlog.get_logger(__name__)

PathLike = Union[str, Path]


class MatrixFormatError(ValueError):
    """Malformed matrix file content."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_matrix(matrix: Iterable[Iterable[int]]) -> str:
    lines = [" ".join(format(int(x), "x") for x in row) for row in matrix]
    return "".join(line + "\n" for line in lines)


def parse_matrix(
    text: str, order: Optional[int] = None, columns: Optional[int] = None
) -> np.ndarray:
    """
    Parse a hex matrix.

    Args:
        text: File content
        order: Field size; symbols must be smaller
        columns: Expected number of columns

    Returns:
        int64 matrix

    Raises:
        MatrixFormatError: With the 1-based line number of the first bad line
    """
    rows: List[List[int]] = []
    width = columns
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        try:
            row = [int(token, 16) for token in tokens]
        except ValueError:
            raise MatrixFormatError(f"invalid hex symbol in {line.strip()!r}", number)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(f"expected {width} symbols, found {len(row)}", number)
        if order is not None and any(x >= order for x in row):
            raise MatrixFormatError(f"symbol outside field of size {order}", number)
        rows.append(row)
    if not rows:
        return np.zeros((0, width or 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def decode_text(raw: bytes) -> str:
    """Decode UTF-8 file content, reporting the line of the first bad byte."""
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MatrixFormatError("invalid UTF-8 byte", raw.count(b"\n", 0, e.start) + 1) from e


async def read_matrix(
    path: PathLike, order: Optional[int] = None, columns: Optional[int] = None
) -> np.ndarray:
    """Read a matrix file; see parse_matrix."""
    async with aiofiles.open(path, "rb") as f:
        raw = await f.read()
    try:
        matrix = parse_matrix(decode_text(raw), order, columns)
    except MatrixFormatError as e:
        logger.error("Malformed matrix file", path=str(path), error=str(e))
        raise
    logger.debug("Matrix loaded", path=str(path), shape=matrix.shape)
    return matrix


async def write_matrix(path: PathLike, matrix: Iterable[Iterable[int]]) -> None:
    """Write a matrix file, creating parent directories as needed."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    async with aiofiles.open(target, "w", encoding="utf-8", newline="\n") as f:
        await f.write(format_matrix(matrix))
    logger.info("Matrix written", path=str(target))
