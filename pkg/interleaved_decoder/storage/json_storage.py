"""
JSON storage for code specs and decode reports.

Reports are written with a fixed key order and no timestamps so that
repeated runs produce identical files.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import aiofiles
import structlog

from ..utils.config import CodeSpec, parse_code_spec

logger = structlog.get_logger(__name__)


def render_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"


class JSONStorage:
    """
    JSON file holding a single document.

    Used for code specs (read) and decode reports (written).
    """

    def __init__(self, file_path: Union[str, Path]):
        """
        Initialize JSON storage.

        Args:
            file_path: Path to the JSON file
        """
        self.file_path = Path(file_path)

    async def load(self) -> Dict[str, Any]:
        """
        Load the document.

        Raises:
            OSError: If the file cannot be read
            ValueError: If the content is not a JSON object
        """
        try:
            async with aiofiles.open(self.file_path, "r", encoding="utf-8") as f:
                content = await f.read()
            data = json.loads(content)
        except (OSError, json.JSONDecodeError) as e:
            logger.error("Error loading JSON document", file_path=str(self.file_path), error=str(e))
            raise
        if not isinstance(data, dict):
            raise ValueError(f"Expected a JSON object in {self.file_path}")
        return data

    async def load_code_spec(self) -> CodeSpec:
        """Load and validate a code spec."""
        spec = parse_code_spec(await self.load())
        logger.debug("Code spec loaded", file_path=str(self.file_path), kind=type(spec).__name__)
        return spec

    async def save(self, document: Dict[str, Any]) -> None:
        """
        Write the document, replacing any previous content.

        Args:
            document: JSON-serializable dictionary
        """
        try:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(self.file_path, "w", encoding="utf-8", newline="\n") as f:
                await f.write(render_report(document))
            logger.info("Saved JSON document", file_path=str(self.file_path))
        except OSError as e:
            logger.error("Error saving JSON document", file_path=str(self.file_path), error=str(e))
            raise
