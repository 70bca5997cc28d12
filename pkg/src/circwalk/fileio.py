"""Small text-output helpers: 17-significant-digit floats, CSV, JSON."""
from __future__ import annotations

import json
import os


def fmt(x: float) -> str:
    """Format a float at 17 significant digits (exact double round-trip)."""
    return f"{x:.17g}"


def write_json(path, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def write_csv(path, header: list[str], rows) -> None:
    """Rows of str/int/float cells; floats rendered at 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = (
                c if isinstance(c, str) else str(c) if isinstance(c, (int,)) else fmt(c)
                for c in row
            )
            fh.write(",".join(cells) + "\n")


def ensure_dir(path) -> None:
    os.makedirs(path, exist_ok=True)
