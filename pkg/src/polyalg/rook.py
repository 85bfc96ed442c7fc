"""Non-attacking rook placements and the S-property."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .algebra import IntPolynomial
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    Cell,
    CellCollection,
    Interval,
    inner_intervals,
    maximal_blocks,
    maximal_runs,
)


class CellNotInPolyomino(ValueError):
    pass


class NotThin(ValueError):
    pass


def attacks(P: CellCollection, c1, c2) -> bool:
    """Two rooks attack iff the straight cell interval between them lies in P."""
    c1, c2 = Cell(*c1), Cell(*c2)
    for c in (c1, c2):
        if c not in P.cells:
            raise CellNotInPolyomino(f"cell {tuple(c)} is not in the polyomino")
    if c1 == c2:
        raise ValueError("attacks() needs two distinct cells")
    if c1.j == c2.j:
        lo, hi = sorted((c1.i, c2.i))
        return all(Cell(m, c1.j) in P.cells for m in range(lo, hi + 1))
    if c1.i == c2.i:
        lo, hi = sorted((c1.j, c2.j))
        return all(Cell(c1.i, m) in P.cells for m in range(lo, hi + 1))
    return False


def _run_index(P: CellCollection, orientation: str, see_through: bool = False) -> dict:
    if see_through:
        # whole rows / columns, gaps ignored
        key = 1 if orientation == HORIZONTAL else 0
        return {c: c[key] for c in P.cells}
    idx = {}
    for k, (first, last) in enumerate(maximal_runs(P, orientation)):
        for c in range(first.i, last.i + 1) if orientation == HORIZONTAL else range(first.j, last.j + 1):
            cell = Cell(c, first.j) if orientation == HORIZONTAL else Cell(first.i, c)
            idx[cell] = k
    return idx


def rook_polynomial(P: CellCollection, see_through: bool = False) -> IntPolynomial:
    """Count k-rook placements for every k.

    Rooks in the same maximal row run or column run attack, so a placement is
    a matching between row runs and column runs.  Row runs are processed in
    order; the memo key keeps only column runs that later rows can still use.
    ``see_through`` switches to the convention where rooks attack across gaps
    (kept only as a negative control).
    """
    row_of = _run_index(P, HORIZONTAL, see_through)
    col_of = _run_index(P, VERTICAL, see_through)
    rows: dict[int, list[int]] = {}
    for cell in P.sorted_cells:
        rows.setdefault(row_of[cell], []).append(col_of[cell])
    row_cols = [tuple(sorted(rows[k])) for k in sorted(rows)]
    future = [frozenset()] * (len(row_cols) + 1)
    for k in range(len(row_cols) - 1, -1, -1):
        future[k] = future[k + 1] | frozenset(row_cols[k])

    @lru_cache(maxsize=None)
    def count(k: int, used: frozenset) -> tuple[int, ...]:
        if k == len(row_cols):
            return (1,)
        nxt = future[k + 1]
        acc = list(count(k + 1, used & nxt))
        for col in row_cols[k]:
            if col in used:
                continue
            sub = count(k + 1, (used | {col}) & nxt)
            if len(acc) < len(sub) + 1:
                acc.extend([0] * (len(sub) + 1 - len(acc)))
            for deg, c in enumerate(sub):
                acc[deg + 1] += c
        return tuple(acc)

    return IntPolynomial(count(0, frozenset()))


def rook_polynomial_bruteforce(P: CellCollection) -> IntPolynomial:
    """Subset enumeration using ``attacks`` directly (test oracle, small P only)."""
    cells = P.sorted_cells
    counts = [0] * (len(cells) + 1)

    def extend(start: int, chosen: list) -> None:
        counts[len(chosen)] += 1
        for k in range(start, len(cells)):
            c = cells[k]
            if all(not attacks(P, c, d) for d in chosen):
                chosen.append(c)
                extend(k + 1, chosen)
                chosen.pop()

    extend(0, [])
    return IntPolynomial(counts)


def rook_number(P: CellCollection) -> int:
    return rook_polynomial(P).degree


def max_rook_configuration(P: CellCollection) -> list[Cell]:
    """One non-attacking placement of ``rook_number(P)`` rooks (lexicographically least)."""
    target = rook_number(P)
    cells = P.sorted_cells
    row_of = _run_index(P, HORIZONTAL)
    col_of = _run_index(P, VERTICAL)
    chosen: list[Cell] = []

    def place(start: int, rows: set, cols: set) -> bool:
        if len(chosen) == target:
            return True
        if len(chosen) + len(cells) - start < target:
            return False
        for k in range(start, len(cells)):
            c = cells[k]
            if row_of[c] in rows or col_of[c] in cols:
                continue
            chosen.append(c)
            if place(k + 1, rows | {row_of[c]}, cols | {col_of[c]}):
                return True
            chosen.pop()
        return False

    place(0, set(), set())
    return list(chosen)


def is_rook_configuration(P: CellCollection, cells) -> bool:
    cells = [Cell(*c) for c in cells]
    if len(set(cells)) != len(cells):
        return False
    return all(not attacks(P, a, b) for k, a in enumerate(cells) for b in cells[k + 1:])


def maximal_intervals(P: CellCollection) -> list[Interval]:
    """Inner intervals not properly contained in another inner interval."""
    ints = inner_intervals(P)
    return [
        I
        for I in ints
        if not any(
            J != I and J.lo.precedes(I.lo) and I.hi.precedes(J.hi) for J in ints
        )
    ]


def _is_thin(P: CellCollection) -> bool:
    cells = P.cells
    return not any(
        (i + 1, j) in cells and (i, j + 1) in cells and (i + 1, j + 1) in cells
        for i, j in cells
    )


def single_cells(P: CellCollection) -> list[Cell]:
    """Cells lying in exactly one maximal interval."""
    maxi = maximal_intervals(P)
    out = []
    for cell in P.sorted_cells:
        n = sum(1 for I in maxi if I.lo.precedes(cell) and cell[0] < I.hi.i and cell[1] < I.hi.j)
        if n == 1:
            out.append(cell)
    return out


def s_property(P: CellCollection, closed_path: Optional[bool] = None) -> tuple[bool, Optional[Interval]]:
    """Whether every maximal interval holds exactly one single cell.

    Returns ``(verdict, witness)`` where the witness is the first offending
    maximal interval.  For closed paths the block-rank shortcut is computed as
    well and the two verdicts must agree.
    """
    if not _is_thin(P):
        raise NotThin("the S-property is defined for thin polyominoes")
    singles = set(single_cells(P))
    verdict, witness = True, None
    for I in maximal_intervals(P):
        inside = [c for c in I.cells() if c in singles]
        if len(inside) != 1:
            verdict, witness = False, I
            break
    if closed_path is None:
        from .classify import is_closed_path

        closed_path = is_closed_path(P)
    if closed_path:
        short = all(
            b.rank == 3 for o in (HORIZONTAL, VERTICAL) for b in maximal_blocks(P, o)
        )
        if short != verdict:
            raise AssertionError("S-property shortcut disagrees with the general check")
    return verdict, witness
