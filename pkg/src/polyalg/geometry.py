"""Lattice primitives: points, intervals, cells, polyominoes, blocks, edge intervals.

A cell is identified with its lower-left corner.  All containers are immutable
and every enumeration is returned in lexicographic order so that reports and
snapshots are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
ORIENTATIONS = (HORIZONTAL, VERTICAL)


class GeometryError(ValueError):
    """Base class for malformed geometric input."""


class DegenerateInterval(GeometryError):
    pass


class EmptyCollection(GeometryError):
    pass


class Disconnected(GeometryError):
    pass


class GridPoint(NamedTuple):
    i: int
    j: int

    def precedes(self, other) -> bool:
        """Componentwise partial order (i,j) <= (k,l)."""
        return self.i <= other[0] and self.j <= other[1]

    def shift(self, di: int, dj: int) -> "GridPoint":
        return GridPoint(self.i + di, self.j + dj)


class Cell(NamedTuple):
    """Unit square ``[corner, corner + (1, 1)]`` stored by its lower-left corner."""

    i: int
    j: int

    @property
    def a(self) -> GridPoint:
        return GridPoint(self.i, self.j)

    @property
    def b(self) -> GridPoint:
        return GridPoint(self.i + 1, self.j + 1)

    @property
    def c(self) -> GridPoint:
        return GridPoint(self.i, self.j + 1)

    @property
    def d(self) -> GridPoint:
        return GridPoint(self.i + 1, self.j)

    def vertices(self) -> frozenset[GridPoint]:
        return frozenset(cell_vertices(self))

    def edges(self) -> frozenset[frozenset[GridPoint]]:
        a, b, c, d = self.a, self.b, self.c, self.d
        return frozenset(
            {frozenset((a, c)), frozenset((c, b)), frozenset((b, d)), frozenset((a, d))}
        )

    def shift(self, di: int, dj: int) -> "Cell":
        return Cell(self.i + di, self.j + dj)

    def neighbours(self) -> tuple["Cell", "Cell", "Cell", "Cell"]:
        i, j = self
        return Cell(i - 1, j), Cell(i + 1, j), Cell(i, j - 1), Cell(i, j + 1)


def cell_vertices(cell) -> tuple[GridPoint, GridPoint, GridPoint, GridPoint]:
    i, j = cell
    return (
        GridPoint(i, j),
        GridPoint(i + 1, j),
        GridPoint(i, j + 1),
        GridPoint(i + 1, j + 1),
    )


def share_vertex(c1, c2) -> bool:
    """Two cells share at least one vertex iff their Chebyshev distance is <= 1."""
    return abs(c1[0] - c2[0]) <= 1 and abs(c1[1] - c2[1]) <= 1


def edge_adjacent(c1, c2) -> bool:
    return abs(c1[0] - c2[0]) + abs(c1[1] - c2[1]) == 1


@dataclass(frozen=True, order=True)
class Interval:
    """Lattice interval ``[lo, hi]`` of Z^2."""

    lo: GridPoint
    hi: GridPoint

    def __post_init__(self):
        object.__setattr__(self, "lo", GridPoint(*self.lo))
        object.__setattr__(self, "hi", GridPoint(*self.hi))
        if not self.lo.precedes(self.hi):
            raise GeometryError(f"interval corners out of order: {self.lo}, {self.hi}")

    @property
    def proper(self) -> bool:
        return self.lo.i < self.hi.i and self.lo.j < self.hi.j

    @property
    def diagonal_corners(self) -> tuple[GridPoint, GridPoint]:
        return self.lo, self.hi

    @property
    def anti_diagonal_corners(self) -> tuple[GridPoint, GridPoint]:
        if not self.proper:
            raise DegenerateInterval(f"{self} has no anti-diagonal corners")
        return GridPoint(self.lo.i, self.hi.j), GridPoint(self.hi.i, self.lo.j)

    @property
    def corners(self) -> tuple[GridPoint, GridPoint, GridPoint, GridPoint]:
        return (*self.diagonal_corners, *self.anti_diagonal_corners)

    @property
    def width(self) -> int:
        return self.hi.i - self.lo.i

    @property
    def height(self) -> int:
        return self.hi.j - self.lo.j

    def __contains__(self, point) -> bool:
        return self.lo.i <= point[0] <= self.hi.i and self.lo.j <= point[1] <= self.hi.j

    def intersection_points(self, other: "Interval") -> set[GridPoint]:
        lo_i, hi_i = max(self.lo.i, other.lo.i), min(self.hi.i, other.hi.i)
        lo_j, hi_j = max(self.lo.j, other.lo.j), min(self.hi.j, other.hi.j)
        return {
            GridPoint(m, n) for m in range(lo_i, hi_i + 1) for n in range(lo_j, hi_j + 1)
        }

    def cells(self) -> list[Cell]:
        return interval_cells(self)


def interval_cells(interval: Interval) -> list[Cell]:
    """All unit cells inside a proper interval, in lexicographic order."""
    if not interval.proper:
        raise DegenerateInterval(f"{interval} is not a proper interval")
    lo, hi = interval.lo, interval.hi
    return [Cell(m, n) for m in range(lo.i, hi.i) for n in range(lo.j, hi.j)]


def cell_interval(first, last) -> list[Cell]:
    """Cell interval ``[A, B]`` between two cells (lower-left corners ordered)."""
    (i, j), (k, l) = first, last
    if i > k or j > l:
        (i, j), (k, l) = (k, l), (i, j)
    return [Cell(m, n) for m in range(i, k + 1) for n in range(j, l + 1)]


class CellCollection:
    """Finite non-empty set of distinct cells with derived vertex and edge sets."""

    __slots__ = ("cells", "__dict__")

    def __init__(self, cells: Iterable):
        cells = frozenset(Cell(*c) for c in cells)
        if not cells:
            raise EmptyCollection("a cell collection must be non-empty")
        self.cells = cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.sorted_cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __eq__(self, other) -> bool:
        if isinstance(other, CellCollection):
            return self.cells == other.cells
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.sorted_cells)})"

    @property
    def rank(self) -> int:
        return len(self.cells)

    @cached_property
    def sorted_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))

    @cached_property
    def vertices(self) -> frozenset[GridPoint]:
        return frozenset(v for c in self.cells for v in cell_vertices(c))

    @cached_property
    def sorted_vertices(self) -> tuple[GridPoint, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def edges(self) -> frozenset[frozenset[GridPoint]]:
        return frozenset(e for c in self.cells for e in c.edges())

    @cached_property
    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [c[0] for c in self.cells]
        ys = [c[1] for c in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def is_connected(self) -> bool:
        start = next(iter(self.cells))
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nb in Cell(*cur).neighbours():
                if nb in self.cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.cells)

    def neighbours_in(self, cell) -> list[Cell]:
        return [nb for nb in Cell(*cell).neighbours() if nb in self.cells]


class Polyomino(CellCollection):
    """Edge-connected cell collection."""

    def __init__(self, cells: Iterable):
        super().__init__(cells)
        if not self.is_connected():
            raise Disconnected("cells of a polyomino must be edge-connected")

    def translated(self) -> "Polyomino":
        """Copy moved so that the minimal x and y cell coordinates are 0."""
        mx, my, _, _ = self.bounding_box
        if mx == 0 and my == 0:
            return self
        return Polyomino(Cell(i - mx, j - my) for i, j in self.cells)

    def without(self, cells: Iterable) -> "Polyomino":
        """Sub-polyomino with ``cells`` removed (raises if result is disconnected)."""
        drop = {Cell(*c) for c in cells}
        missing = drop - self.cells
        if missing:
            raise GeometryError(f"cells {sorted(missing)} are not in the polyomino")
        return Polyomino(self.cells - drop)

    @classmethod
    def from_collection(cls, coll: CellCollection) -> "Polyomino":
        return cls(coll.cells)


def vertex_edge_sets(P: CellCollection) -> tuple[frozenset, frozenset]:
    return P.vertices, P.edges


def inner_intervals(P: CellCollection) -> list[Interval]:
    """Every proper interval whose cells all lie in ``P``, sorted by (lo, hi)."""
    cells = P.cells
    out = []
    for i, j in P.sorted_cells:
        width = 0
        while Cell(i + width, j) in cells:
            width += 1
        # max_w shrinks as we stack rows on top
        max_w = width
        h = 0
        while max_w > 0:
            w = 0
            while w < max_w and Cell(i + w, j + h) in cells:
                w += 1
            max_w = w
            if max_w == 0:
                break
            h += 1
            for ww in range(1, max_w + 1):
                out.append(Interval(GridPoint(i, j), GridPoint(i + ww, j + h)))
    out.sort()
    return out


@dataclass(frozen=True, order=True)
class Block:
    """Horizontal or vertical cell interval of rank >= 2 inside a polyomino."""

    first: Cell
    last: Cell
    orientation: str

    @property
    def rank(self) -> int:
        return (self.last.i - self.first.i) + (self.last.j - self.first.j) + 1

    @property
    def cells(self) -> tuple[Cell, ...]:
        return tuple(cell_interval(self.first, self.last))

    @property
    def extremal(self) -> tuple[Cell, Cell]:
        return self.first, self.last

    @cached_property
    def vertices(self) -> frozenset[GridPoint]:
        return frozenset(v for c in self.cells for v in cell_vertices(c))

    def __contains__(self, cell) -> bool:
        (i, j), (k, l) = self.first, self.last
        return i <= cell[0] <= k and j <= cell[1] <= l


def _runs(cells: frozenset, orientation: str) -> list[tuple[Cell, Cell]]:
    """Maximal straight runs of cells (including runs of length one)."""
    di, dj = (1, 0) if orientation == HORIZONTAL else (0, 1)
    runs = []
    for c in sorted(cells):
        prev = Cell(c[0] - di, c[1] - dj)
        if prev in cells:
            continue
        end = Cell(*c)
        while Cell(end.i + di, end.j + dj) in cells:
            end = Cell(end.i + di, end.j + dj)
        runs.append((Cell(*c), end))
    return runs


def maximal_runs(P: CellCollection, orientation: str) -> list[tuple[Cell, Cell]]:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    return _runs(P.cells, orientation)


def maximal_blocks(P: CellCollection, orientation: str) -> list[Block]:
    return [
        Block(a, b, orientation)
        for a, b in maximal_runs(P, orientation)
        if a != b
    ]


def all_maximal_blocks(P: CellCollection) -> list[Block]:
    return maximal_blocks(P, HORIZONTAL) + maximal_blocks(P, VERTICAL)


@dataclass(frozen=True, order=True)
class EdgeInterval:
    start: GridPoint
    end: GridPoint
    orientation: str

    @property
    def length(self) -> int:
        return (self.end.i - self.start.i) + (self.end.j - self.start.j)

    def __contains__(self, point) -> bool:
        return (
            self.start.i <= point[0] <= self.end.i
            and self.start.j <= point[1] <= self.end.j
        )

    def contains_segment(self, p, q) -> bool:
        return p in self and q in self


def maximal_edge_intervals(P: CellCollection, orientation: str) -> list[EdgeInterval]:
    """Maximal runs of collinear cell edges of ``P``."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    units = set()  # lower/left endpoint of each unit edge
    for i, j in P.cells:
        if orientation == HORIZONTAL:
            units.add((i, j))
            units.add((i, j + 1))
        else:
            units.add((i, j))
            units.add((i + 1, j))
    di, dj = (1, 0) if orientation == HORIZONTAL else (0, 1)
    out = []
    for p in sorted(units):
        if (p[0] - di, p[1] - dj) in units:
            continue
        q = p
        while (q[0] + di, q[1] + dj) in units:
            q = (q[0] + di, q[1] + dj)
        out.append(
            EdgeInterval(GridPoint(*p), GridPoint(q[0] + di, q[1] + dj), orientation)
        )
    return out


def edge_interval_containing(P: CellCollection, p, q) -> EdgeInterval | None:
    """Maximal edge interval of ``P`` containing both lattice points, if any."""
    if p[1] == q[1]:
        orient = HORIZONTAL
    elif p[0] == q[0]:
        orient = VERTICAL
    else:
        return None
    for e in maximal_edge_intervals(P, orient):
        if e.contains_segment(p, q):
            return e
    return None
