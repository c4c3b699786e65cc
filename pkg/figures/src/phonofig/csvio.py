"""Reader for the simulation CLI's CSV contract.

Format: optional '#'-prefixed ``key = value`` metadata lines (``table``
names the table kind), one comma-separated header row, then float rows.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """The CSV exists and parses but does not match the panel's schema."""


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: np.ndarray  # (n, len(columns)) float
    meta: dict[str, str] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        """Column by name; SchemaError naming the column when absent."""
        try:
            return self.rows[:, self.columns.index(name)]
        except ValueError:
            raise SchemaError(
                f"missing column '{name}' (have: {', '.join(self.columns)})"
            ) from None

    def has(self, name: str) -> bool:
        return name in self.columns


def read_table(path: str | Path) -> Table:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input CSV not found: {path}")
    name = ""
    meta: dict[str, str] = {}
    columns: list[str] = []
    rows: list[list[float]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            key, value = key.strip(), value.strip()
            if key == "table":
                name = value
            else:
                meta[key] = value
        elif not columns:
            columns = [c.strip() for c in line.split(",")]
        elif line:
            try:
                parsed = [float(x) for x in line.split(",")]
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: non-numeric row: {exc}") from exc
            if len(parsed) != len(columns):
                raise SchemaError(
                    f"{path}:{lineno}: row has {len(parsed)} fields, "
                    f"header has {len(columns)}"
                )
            rows.append(parsed)
    if not columns:
        raise SchemaError(f"{path}: no header row found")
    arr = np.array(rows) if rows else np.empty((0, len(columns)))
    return Table(name=name, columns=columns, rows=arr, meta=meta)
