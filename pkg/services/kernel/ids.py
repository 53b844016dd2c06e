"""Zusammengesetzte Bezeichner für konstruierte Objekte und Morphismen."""

import json
from typing import List


def compound_id(*parts: str) -> str:
    """Eindeutiger, parsbarer Bezeichner aus mehreren Teilen (JSON-Liste)."""
    return json.dumps([str(p) for p in parts], ensure_ascii=False, separators=(",", ":"))


def split_id(identifier: str) -> List[str]:
    """Umkehrung von compound_id."""
    parts = json.loads(identifier)
    if not isinstance(parts, list):
        raise ValueError(f"kein zusammengesetzter Bezeichner: {identifier!r}")
    return [str(p) for p in parts]
