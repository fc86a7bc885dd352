"""JSON report writer."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from .meta import RunMeta, to_jsonable

logger = logging.getLogger(__name__)


class JSONOutput:
    """Writes ``{"meta": ..., **payload}`` with sorted keys."""

    def __init__(self, meta: RunMeta):
        self.meta = meta

    def dumps(self, payload: Dict[str, Any]) -> str:
        if "meta" in payload:
            raise ValueError("'meta' is reserved for the run provenance")
        document = {"meta": self.meta.to_dict(), **payload}
        return json.dumps(document, sort_keys=True, indent=2, default=to_jsonable) + "\n"

    def write(self, path: Union[str, Path], payload: Dict[str, Any]) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dumps(payload), encoding="utf-8")
        logger.info("JSON report written to %s", target)
        return target
