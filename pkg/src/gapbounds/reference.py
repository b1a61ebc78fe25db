"""Published reference rows of large-gap events.

Each row is a gap event (k, p_k, gap) together with the published
3-decimal values of the two gap bounds at that event.  The bound columns
are reference strings for the match check only; the library always
recomputes f and l from (k, p_k), never reads them back from here.
"""

from __future__ import annotations

from typing import NamedTuple, Tuple


class ReferenceRow(NamedTuple):
    k: int
    p_k: int
    gap: int
    f_ref: str    # published p^(1+1/k) - p, 3 decimals
    ell_ref: str  # published ln^2 p - ln p, 3 decimals


REFERENCE_ROWS: Tuple[ReferenceRow, ...] = (
    ReferenceRow(6, 13, 4, "6.934", "4.014"),
    ReferenceRow(9, 23, 6, "9.586", "6.696"),
    ReferenceRow(30, 113, 14, "19.286", "17.621"),
    ReferenceRow(217, 1327, 34, "44.709", "44.515"),
    ReferenceRow(3385, 31397, 72, "96.188", "96.861"),
    ReferenceRow(31545, 370261, 112, "150.529", "151.581"),
    ReferenceRow(149689, 2010733, 148, "194.972", "196.142"),
    ReferenceRow(1319945, 20831323, 210, "265.959", "267.137"),
    ReferenceRow(1094330259, 25056082087, 456, "548.237", "549.389"),
    ReferenceRow(94906079600, 2614941710599, 652, "787.801", "788.925"),
    ReferenceRow(662221289043, 19581334192423, 766, "904.982", "906.097"),
    ReferenceRow(6822667965940, 218209405436543, 906, "1055.966", "1057.071"),
    ReferenceRow(49749629143526, 1693182318746371, 1132, "1193.418", "1194.516"),
)
