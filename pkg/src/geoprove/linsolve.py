"""Exact sparse linear systems over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Optional, Sequence


def solve_sparse(
    columns: Sequence[Mapping[Hashable, Fraction]], rhs: Mapping[Hashable, Fraction]
) -> Optional[list]:
    """Solve ``sum(x[j] * columns[j]) == rhs`` exactly.

    Columns and the right-hand side are sparse vectors keyed by arbitrary
    hashable row labels.  Returns one solution (free unknowns set to zero) or
    ``None`` when the system is inconsistent.  Gauss-Jordan elimination with
    shortest-row pivoting, so the result is deterministic for a fixed column
    order.
    """
    labels = {}
    rows = []  # row id -> {col: coeff}
    b = []
    for j, col in enumerate(columns):
        for lab, c in col.items():
            if not c:
                continue
            r = labels.get(lab)
            if r is None:
                r = labels[lab] = len(rows)
                rows.append({})
                b.append(Fraction(0))
            rows[r][j] = Fraction(c)
    for lab, c in rhs.items():
        if not c:
            continue
        r = labels.get(lab)
        if r is None:
            # an equation with no unknowns and a nonzero right-hand side
            return None
        b[r] = Fraction(c)

    col_rows = {}
    for r, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(r)

    pivot_of = {}  # col -> row
    used = set()

    def pivot(j, p):
        used.add(p)
        pivot_of[j] = p
        prow = rows[p]
        inv = 1 / prow[j]
        if inv != 1:
            for k in prow:
                prow[k] *= inv
            b[p] *= inv
        for r in list(col_rows[j]):
            if r == p:
                continue
            row = rows[r]
            f = row[j]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    if k not in row:
                        col_rows.setdefault(k, set()).add(r)
                    row[k] = nv
                elif k in row:
                    del row[k]
                    col_rows[k].discard(r)
            b[r] -= f * b[p]

    for j in range(len(columns)):
        cands = [r for r in col_rows.get(j, ()) if r not in used]
        if cands:
            pivot(j, min(cands, key=lambda r: (len(rows[r]), r)))
    # fill-in can land on columns skipped earlier; pivot those too
    while True:
        left = [r for r in range(len(rows)) if r not in used and rows[r]]
        if not left:
            break
        r = min(left, key=lambda r: (len(rows[r]), r))
        pivot(min(rows[r]), r)

    for r, row in enumerate(rows):
        if not row and b[r]:
            return None
    x = [Fraction(0)] * len(columns)
    for j, r in pivot_of.items():
        x[j] = b[r]
    return x
