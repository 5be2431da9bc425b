"""Reading of decoherence run record files.

A records file is a plain CSV with an integer step column ``n`` first,
followed by one float column per recorded quantity.  Quantities that exist
once per coupling strength carry the coupling in the column name, e.g.
``purity_exact[0.005]``.  This module only parses; it never computes.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class RecordsError(ValueError):
    """Raised when a records file is missing, empty, or malformed."""


_PER_ALPHA = re.compile(r"^(?P<field>[A-Za-z0-9_]+)\[(?P<alpha>[^\]]+)\]$")


@dataclass(frozen=True)
class RecordTable:
    """One parsed records file: step axis plus named columns."""

    path: Path
    n: np.ndarray
    columns: dict[str, np.ndarray]

    def require(self, *names: str) -> list[np.ndarray]:
        """Return the named columns, or fail naming the first missing one."""
        missing = [name for name in names if name not in self.columns]
        if missing:
            raise RecordsError(
                f"records file {self.path} is missing column '{missing[0]}'"
            )
        return [self.columns[name] for name in names]

    def alphas_for(self, field: str) -> list[str]:
        """Coupling tokens recorded for a field, in file order."""
        out = []
        for name in self.columns:
            match = _PER_ALPHA.match(name)
            if match and match.group("field") == field:
                out.append(match.group("alpha"))
        return out


def load_records(path: str | Path) -> RecordTable:
    path = Path(path)
    try:
        fh = path.open("r", encoding="utf-8", newline="")
    except OSError as exc:
        raise RecordsError(f"cannot read records file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RecordsError(f"records file {path} is empty") from None
        if not header or header[0] != "n":
            raise RecordsError(f"records file {path} does not start with an 'n' column")
        rows = [row for row in reader if row]
    if not rows:
        raise RecordsError(f"records file {path} contains no data rows")
    width = len(header)
    values = []
    for lineno, row in enumerate(rows, start=2):
        if len(row) != width:
            raise RecordsError(f"{path}:{lineno}: expected {width} cells, found {len(row)}")
        try:
            values.append([float(cell) for cell in row])
        except ValueError as exc:
            raise RecordsError(f"{path}:{lineno}: {exc}") from None
    data = np.array(values)
    n = data[:, 0].astype(int)
    columns = {name: data[:, i + 1] for i, name in enumerate(header[1:])}
    for array in columns.values():
        array.flags.writeable = False
    n.flags.writeable = False
    return RecordTable(path=path, n=n, columns=columns)
