"""Linearized tables: parsing, serialization, transposition, and entry extraction.

A table is stored as a rectangular grid of trimmed text cells. The textual
form uses ``|`` between cells and newlines between rows; the first row holds
column headers and the first column holds row headers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmptyInputError

_NUMBER_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_CURRENCY = ("$", "€", "£")


@dataclass(frozen=True)
class Table:
    """Rectangular grid of text cells, row-major."""

    cells: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("table must have at least one row and one column")
        width = len(self.cells[0])
        if any(len(row) != width for row in self.cells):
            raise ValueError("all rows must have the same column count")

    @property
    def n_rows(self) -> int:
        return len(self.cells)

    @property
    def n_cols(self) -> int:
        return len(self.cells[0])


@dataclass(frozen=True)
class Entry:
    """A (row header, column header, value) triple extracted from a table."""

    row_header: str
    col_header: str
    value: str

    def key(self) -> str:
        """Row and column header joined by a single space, used for matching."""
        return f"{self.row_header} {self.col_header}"


def parse_table(text: str) -> Table:
    """Parse a linearized table.

    Cells are split on ``|`` and trimmed; blank lines are skipped; short rows
    are padded with empty cells to the width of the widest row.
    """
    # Rows are separated by \n only; splitlines() would also split on
    # exotic Unicode separators that belong inside cells.
    lines = [line.rstrip("\r") for line in text.split("\n") if line.strip()]
    if not lines:
        raise EmptyInputError("no non-blank line in table text")
    rows = [[cell.strip() for cell in line.split("|")] for line in lines]
    width = max(len(row) for row in rows)
    for row in rows:
        row.extend([""] * (width - len(row)))
    return Table(tuple(tuple(row) for row in rows))


def serialize_table(t: Table) -> str:
    """Render a table with `` | `` between cells and newlines between rows."""
    return "\n".join(" | ".join(row) for row in t.cells)


def transpose(t: Table) -> Table:
    return Table(tuple(zip(*t.cells)))


def extract_entries(t: Table) -> list[Entry]:
    """Decompose a table into its unordered (row, column, value) entries.

    The first row is read as column headers and the first column as row
    headers. Degenerate layouts: a single-column table yields one entry per
    data cell with an empty row header; a single-row table yields nothing
    (headers alone carry no data).
    """
    if t.n_rows < 2:
        return []
    if t.n_cols == 1:
        return [Entry("", t.cells[0][0], t.cells[i][0]) for i in range(1, t.n_rows)]
    return [
        Entry(t.cells[i][0], t.cells[0][j], t.cells[i][j])
        for i in range(1, t.n_rows)
        for j in range(1, t.n_cols)
    ]


def parse_number(cell: str) -> float | None:
    """Interpret a cell as a number, or return None for textual cells.

    Normalization: trim, drop one leading currency symbol, drop all
    thousands-separator commas, drop one trailing percent sign. A trailing
    ``%`` is stripped without rescaling, so "48%" and "48" compare equal.
    """
    s = cell.strip()
    for symbol in _CURRENCY:
        if s.startswith(symbol):
            s = s[len(symbol):].strip()
            break
    s = s.replace(",", "")
    if s.endswith("%"):
        s = s[:-1].strip()
    if _NUMBER_RE.fullmatch(s):
        return float(s)
    return None


def table_numbers(t: Table) -> list[float]:
    """Every numeric-parsing cell of the table, headers included, in grid order."""
    out = []
    for row in t.cells:
        for cell in row:
            value = parse_number(cell)
            if value is not None:
                out.append(value)
    return out
