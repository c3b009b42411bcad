"""
Storage modules for the interleaved decoder.

Matrix text files, CSV tables and JSON documents, all written through
aiofiles.
"""

from .csv_storage import CSVStorage
from .json_storage import JSONStorage
from .matrix_io import MatrixFormatError, read_matrix, write_matrix

__all__ = [
    "CSVStorage",
    "JSONStorage",
    "MatrixFormatError",
    "read_matrix",
    "write_matrix",
]
