"""The dihedral group of the square acting on lattice points and cells.

Transform ids 0-3 are counter-clockwise rotations by 0, 90, 180, 270 degrees;
ids 4-7 are the same rotations applied after the reflection ``(x, y) -> (-x, y)``.
"""

from __future__ import annotations

from .geometry import Cell, GridPoint

# (a, b, c, d) encodes (x, y) -> (a x + b y, c x + d y)
_ROT = [(1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0)]
_REFLECT = (-1, 0, 0, 1)


def _compose(m, n):
    """Matrix product m @ n."""
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


MATRICES = tuple(_ROT) + tuple(_compose(r, _REFLECT) for r in _ROT)
IDENTITY = 0

NAMES = (
    "identity",
    "rotate-90",
    "rotate-180",
    "rotate-270",
    "reflect",
    "reflect+rotate-90",
    "reflect+rotate-180",
    "reflect+rotate-270",
)


def _cell_offset(m):
    a, b, c, d = m
    xs = (0, a, b, a + b)
    ys = (0, c, d, c + d)
    return min(xs), min(ys)


_OFFSETS = tuple(_cell_offset(m) for m in MATRICES)
INVERSE = tuple(
    next(k for k, n in enumerate(MATRICES) if _compose(n, m) == (1, 0, 0, 1))
    for m in MATRICES
)


def transform_point(t: int, p) -> GridPoint:
    a, b, c, d = MATRICES[t]
    x, y = p
    return GridPoint(a * x + b * y, c * x + d * y)


def transform_cell(t: int, cell) -> Cell:
    a, b, c, d = MATRICES[t]
    ox, oy = _OFFSETS[t]
    x, y = cell
    return Cell(a * x + b * y + ox, c * x + d * y + oy)


def transform_cells(t: int, cells) -> frozenset[Cell]:
    return frozenset(transform_cell(t, c) for c in cells)


def inverse(t: int) -> int:
    return INVERSE[t]


def compose(t1: int, t2: int) -> int:
    """Id of the transform ``t1 after t2``."""
    m = _compose(MATRICES[t1], MATRICES[t2])
    return MATRICES.index(m)


def normalized_key(cells) -> tuple[tuple[int, int], ...]:
    """Sorted cells translated to the origin."""
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return tuple(sorted((c[0] - mx, c[1] - my) for c in cells))


def canonical_form(cells) -> tuple[tuple[int, int], ...]:
    """Least normalized key over all eight dihedral images."""
    cells = tuple(cells)
    return min(normalized_key(transform_cells(t, cells)) for t in range(8))
