"""Structural recognition of polyominoes and the decompositions used by the
Hilbert-series formulas.

Decompositions are searched in a normalized frame: each of the eight dihedral
images of the polyomino is scanned for the pattern in its canonical
orientation, and the labels found there are mapped back to the caller's
coordinates.  The transform id is kept on the record so any labeling can be
audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from . import symmetry
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    Block,
    Cell,
    CellCollection,
    GridPoint,
    Interval,
    Polyomino,
    cell_vertices,
    edge_adjacent,
    inner_intervals,
    maximal_blocks,
    maximal_edge_intervals,
    share_vertex,
)


class ClassifyError(ValueError):
    pass


class NotAClosedPath(ClassifyError):
    pass


class NoDecomposition(ClassifyError):
    pass


class NotApplicable(ClassifyError):
    pass


# --------------------------------------------------------------------------
# holes, thinness


def holes(P: CellCollection) -> list[CellCollection]:
    """Bounded connected components of the complement, sorted by least cell."""
    x0, y0, x1, y1 = P.bounding_box
    x0, y0, x1, y1 = x0 - 1, y0 - 1, x1 + 1, y1 + 1
    cells = P.cells
    seen: set = set()
    comps = []
    for i in range(x0, x1 + 1):
        for j in range(y0, y1 + 1):
            start = (i, j)
            if start in cells or start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            bounded = True
            while stack:
                x, y = stack.pop()
                if x in (x0, x1) or y in (y0, y1):
                    bounded = False
                for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if (
                        x0 <= nb[0] <= x1
                        and y0 <= nb[1] <= y1
                        and nb not in cells
                        and nb not in seen
                    ):
                        seen.add(nb)
                        comp.append(nb)
                        stack.append(nb)
            if bounded:
                comps.append(CellCollection(comp))
    comps.sort(key=lambda h: h.sorted_cells[0])
    return comps


def is_simple(P: CellCollection) -> bool:
    return not holes(P)


def is_thin(P: CellCollection) -> bool:
    cells = P.cells
    return not any(
        (i + 1, j) in cells and (i, j + 1) in cells and (i + 1, j + 1) in cells
        for i, j in cells
    )


# --------------------------------------------------------------------------
# closed paths and weakly closed paths


@dataclass(frozen=True)
class ClosedPathSequence:
    cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.cells)


def closed_path_conditions_hold(seq) -> bool:
    """Re-check the four closed-path conditions on a cyclic cell sequence."""
    n = len(seq)
    if n <= 5 or len(set(seq)) != n:
        return False
    for i in range(n):
        if not edge_adjacent(seq[i], seq[(i + 1) % n]):
            return False
    for i in range(n):
        for j in range(i + 1, n):
            gap = min(j - i, n - (j - i))
            if gap > 2 and share_vertex(seq[i], seq[j]):
                return False
    return True


def closed_path_sequence(P: CellCollection) -> Optional[ClosedPathSequence]:
    """Witness cycle A_1..A_n for a closed path, or ``None``.

    The cycle starts at the least cell and proceeds toward its lesser
    neighbour, so the witness is canonical.
    """
    cells = P.cells
    if len(cells) <= 5:
        return None
    nbrs = {}
    for c in cells:
        nb = P.neighbours_in(c)
        if len(nb) != 2:
            return None
        nbrs[c] = sorted(nb)
    start = min(cells)
    seq = [start]
    prev, cur = start, nbrs[start][0]
    while cur != start:
        seq.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
        if len(seq) > len(cells):
            return None
    if len(seq) != len(cells) or not closed_path_conditions_hold(seq):
        return None
    return ClosedPathSequence(tuple(seq))


def is_closed_path(P: CellCollection) -> bool:
    return closed_path_sequence(P) is not None


def weakly_closed_path_sequence(P: CellCollection) -> Optional[tuple[Cell, ...]]:
    """Cell path A_1..A_n (with A_n = A_0) whose end cells share one vertex."""
    cells = P.cells
    n = len(cells)
    if n <= 6:
        return None
    deg = {c: P.neighbours_in(c) for c in cells}
    ends = sorted(c for c, nb in deg.items() if len(nb) == 1)
    if len(ends) != 2 or any(len(nb) not in (1, 2) for nb in deg.values()):
        return None
    seq = [ends[0]]
    prev, cur = None, ends[0]
    while True:
        nxt = [c for c in deg[cur] if c != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        seq.append(cur)
        if len(seq) > n:
            return None
    if len(seq) != n:
        return None
    # seq[0] = A_1, seq[-1] = A_n = A_0
    a1, a0 = seq[0], seq[-1]
    if len(set(cell_vertices(a1)) & set(cell_vertices(a0))) != 1:
        return None
    if share_vertex(seq[1], a0) or share_vertex(seq[-2], a1):
        return None
    for i in range(n):
        for j in range(i + 1, n):
            gap = min(j - i, n - (j - i))
            if gap > 2 and share_vertex(seq[i], seq[j]):
                return None
    return tuple(seq)


def is_weakly_closed_path(P: CellCollection) -> bool:
    return weakly_closed_path_sequence(P) is not None


# --------------------------------------------------------------------------
# L-configurations, ladders, weak ladders


@dataclass(frozen=True)
class LConfiguration:
    cells: tuple[Cell, Cell, Cell, Cell, Cell]

    @property
    def pivot(self) -> Cell:
        return self.cells[2]


def find_l_configurations(P: CellCollection) -> list[LConfiguration]:
    """All five-cell paths C1..C5 turning once at C3, one per unordered pair of arms."""
    cells = P.cells
    out = []
    for c in P.sorted_cells:
        for ux in (1, -1):
            for vy in (1, -1):
                arm_h = (Cell(c.i + 2 * ux, c.j), Cell(c.i + ux, c.j))
                arm_v = (Cell(c.i, c.j + vy), Cell(c.i, c.j + 2 * vy))
                if all(x in cells for x in arm_h + arm_v):
                    out.append(LConfiguration((*arm_h, c, *arm_v)))
    return out


def _shared_vertices(b1: Block, b2: Block) -> frozenset:
    return b1.vertices & b2.vertices


def _on_same_edge_interval(P: CellCollection, seg1, seg2, _cache=None) -> bool:
    """Whether two unit segments lie on a common maximal edge interval of P."""
    p1, q1 = seg1
    p2, q2 = seg2
    if p1[1] == q1[1] and p2[1] == q2[1] and p1[1] == p2[1]:
        orient = HORIZONTAL
    elif p1[0] == q1[0] and p2[0] == q2[0] and p1[0] == p2[0]:
        orient = VERTICAL
    else:
        return False
    intervals = _cache if _cache is not None else maximal_edge_intervals(P, orient)
    for e in intervals:
        if e.orientation == orient and all(pt in e for pt in (p1, q1, p2, q2)):
            return True
    return False


@dataclass(frozen=True)
class Ladder:
    blocks: tuple[Block, ...]
    steps: tuple[tuple[GridPoint, GridPoint], ...]  # (a_i, b_i)

    @property
    def n(self) -> int:
        return len(self.blocks)


def _ladder_graph(P: CellCollection, orientation: str):
    blocks = maximal_blocks(P, orientation)
    adj: dict[int, list[tuple[int, tuple]]] = {k: [] for k in range(len(blocks))}
    for x, y in combinations(range(len(blocks)), 2):
        shared = _shared_vertices(blocks[x], blocks[y])
        if len(shared) == 2:
            seg = tuple(sorted(shared))
            adj[x].append((y, seg))
            adj[y].append((x, seg))
    return blocks, adj


def _ladders_in_orientation(P: CellCollection, orientation: str) -> Iterator[Ladder]:
    """All ladders (as block sequences of length >= 2), each in both directions."""
    blocks, adj = _ladder_graph(P, orientation)
    edge_int = maximal_edge_intervals(P, HORIZONTAL) + maximal_edge_intervals(P, VERTICAL)

    def extend(path, segs):
        yield Ladder(tuple(blocks[k] for k in path), tuple(segs))
        last = path[-1]
        for nxt, seg in adj[last]:
            if nxt in path:
                continue
            if segs and _on_same_edge_interval(P, segs[-1], seg, edge_int):
                continue
            yield from extend(path + [nxt], segs + [seg])

    for k in range(len(blocks)):
        for nxt, seg in adj[k]:
            yield from extend([k, nxt], [seg])


def is_ladder(P: CellCollection, blocks: list[Block]) -> bool:
    """Check the ladder definition for an explicit ordered list of maximal blocks."""
    if len(blocks) < 2 or len({b.orientation for b in blocks}) != 1:
        return False
    maximal = set(maximal_blocks(P, blocks[0].orientation))
    if not all(b in maximal for b in blocks) or len(set(blocks)) != len(blocks):
        return False
    segs = []
    for b1, b2 in zip(blocks, blocks[1:]):
        shared = _shared_vertices(b1, b2)
        if len(shared) != 2:
            return False
        segs.append(tuple(sorted(shared)))
    return not any(_on_same_edge_interval(P, s, t) for s, t in zip(segs, segs[1:]))


def find_ladders(P: CellCollection) -> tuple[int, Optional[Ladder]]:
    """Maximum number of steps over all ladders, with one witness (0 if none)."""
    best: Optional[Ladder] = None
    for orient in (HORIZONTAL, VERTICAL):
        for lad in _ladders_in_orientation(P, orient):
            if best is None or lad.n > best.n:
                best = lad
    return (best.n, best) if best else (0, None)


@dataclass(frozen=True)
class WeakLadder:
    block: Block
    c: Cell
    d: Cell
    a1: GridPoint
    segment: tuple[GridPoint, GridPoint]


def find_weak_ladders(P: CellCollection) -> list[WeakLadder]:
    out = []
    for orient in (HORIZONTAL, VERTICAL):
        edge_int = maximal_edge_intervals(P, HORIZONTAL) + maximal_edge_intervals(P, VERTICAL)
        for blk in maximal_blocks(P, orient):
            bv = blk.vertices
            inside = set(blk.cells)
            singles, doubles = [], []
            for cell in P.sorted_cells:
                if cell in inside:
                    continue
                shared = bv & set(cell_vertices(cell))
                if len(shared) == 1:
                    singles.append((cell, next(iter(shared))))
                elif len(shared) == 2:
                    doubles.append((cell, tuple(sorted(shared))))
            for c, a1 in singles:
                for d, seg in doubles:
                    if c == d:
                        continue
                    same = any(
                        a1 in e and seg[0] in e and seg[1] in e for e in edge_int
                    )
                    if not same:
                        out.append(WeakLadder(blk, c, d, a1, seg))
    return out


# --------------------------------------------------------------------------
# zig-zag walks


@dataclass(frozen=True)
class ZigZagWalk:
    intervals: tuple[Interval, ...]
    v: tuple[GridPoint, ...]  # v_1..v_l
    z: tuple[GridPoint, ...]
    u: tuple[GridPoint, ...]

    def __len__(self) -> int:
        return len(self.intervals)


def _touch_only_at(I: Interval, J: Interval, p) -> bool:
    lo_i, hi_i = max(I.lo.i, J.lo.i), min(I.hi.i, J.hi.i)
    lo_j, hi_j = max(I.lo.j, J.lo.j), min(I.hi.j, J.hi.j)
    return lo_i == hi_i == p[0] and lo_j == hi_j == p[1]


def _opposite(I: Interval, v) -> GridPoint:
    return GridPoint(I.lo.i + I.hi.i - v[0], I.lo.j + I.hi.j - v[1])


def _adjacent_corners(I: Interval, v) -> tuple[GridPoint, GridPoint]:
    other_i = I.lo.i + I.hi.i - v[0]
    other_j = I.lo.j + I.hi.j - v[1]
    return GridPoint(other_i, v[1]), GridPoint(v[0], other_j)


def iter_zig_zag_walks(P: CellCollection, max_len: Optional[int] = None) -> Iterator[ZigZagWalk]:
    """Depth-first search over chains of distinct inner intervals.

    Each walk is yielded once per cyclic class: the search starts from the
    walk's least interval and a walk and its reversal are reported once.
    """
    ints = inner_intervals(P)
    if max_len is None:
        max_len = len(ints)
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    index = {I: k for k, I in enumerate(ints)}
    contains: dict = {}
    corner_of: dict = {}
    for k, I in enumerate(ints):
        for m in range(I.lo.i, I.hi.i + 1):
            for n in range(I.lo.j, I.hi.j + 1):
                contains[(m, n)] = contains.get((m, n), 0) | (1 << k)
        for v in I.corners:
            corner_of.setdefault(v, []).append(k)
    edges = maximal_edge_intervals(P, HORIZONTAL) + maximal_edge_intervals(P, VERTICAL)

    def same_edge_interval(p, q) -> bool:
        return any(p in e and q in e for e in edges)

    seen_keys = set()

    for first in range(len(ints)):
        I1 = ints[first]
        for v1 in I1.corners:
            z1 = _opposite(I1, v1)
            path = [first]
            vs = [v1]
            zs = [z1]
            us: list = []

            def dfs(cur: int, v_cur, used_mask: int):
                I = ints[cur]
                for v_next in _adjacent_corners(I, v_cur):
                    u_cur = _opposite(I, v_next)
                    if not same_edge_interval(v_cur, v_next):
                        continue
                    us.append(u_cur)
                    # closing the walk
                    if v_next == v1 and len(path) >= 3 and _touch_only_at(I, I1, v1):
                        key = _cycle_key(path)
                        if key not in seen_keys:
                            seen_keys.add(key)
                            yield ZigZagWalk(
                                tuple(ints[k] for k in path), tuple(vs), tuple(zs), tuple(us)
                            )
                    if len(path) < max_len:
                        for nxt in corner_of.get(v_next, ()):
                            if nxt <= first or used_mask >> nxt & 1:
                                continue
                            J = ints[nxt]
                            if not _touch_only_at(I, J, v_next):
                                continue
                            z_next = _opposite(J, v_next)
                            zmask = contains.get(z_next, 0)
                            if any(contains.get(z, 0) & zmask for z in zs):
                                continue
                            path.append(nxt)
                            vs.append(v_next)
                            zs.append(z_next)
                            yield from dfs(nxt, v_next, used_mask | (1 << nxt))
                            path.pop()
                            vs.pop()
                            zs.pop()
                    us.pop()

            yield from dfs(first, v1, 1 << first)
    del index


def _cycle_key(path: list[int]) -> tuple[int, ...]:
    n = len(path)
    best = None
    for seq in (path, path[::-1]):
        for r in range(n):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def find_zig_zag_walks(P: CellCollection, max_len: Optional[int] = None) -> list[ZigZagWalk]:
    return list(iter_zig_zag_walks(P, max_len))


def has_zig_zag_walk(P: CellCollection, max_len: Optional[int] = None) -> bool:
    return next(iter_zig_zag_walks(P, max_len), None) is not None


def is_zig_zag_walk(P: CellCollection, walk: ZigZagWalk) -> bool:
    """Verbatim re-check of the three zig-zag conditions for a given walk."""
    ints = walk.intervals
    inner = set(inner_intervals(P))
    ell = len(ints)
    if ell < 2 or len(set(ints)) != ell or not all(I in inner for I in ints):
        return False
    v = list(walk.v) + [walk.v[0]]
    for k, I in enumerate(ints):
        pair1 = {v[k], walk.z[k]}
        pair2 = {walk.u[k], v[k + 1]}
        diag = set(I.diagonal_corners)
        anti = set(I.anti_diagonal_corners)
        if not ((pair1 == diag and pair2 == anti) or (pair1 == anti and pair2 == diag)):
            return False
    if ints[0].intersection_points(ints[-1]) != {v[0]}:
        return False
    for k in range(ell - 1):
        if ints[k].intersection_points(ints[k + 1]) != {v[k + 1]}:
            return False
    edges = maximal_edge_intervals(P, HORIZONTAL) + maximal_edge_intervals(P, VERTICAL)
    for k in range(ell):
        if not any(v[k] in e and v[k + 1] in e for e in edges):
            return False
    for x, y in combinations(range(ell), 2):
        if any(walk.z[x] in J and walk.z[y] in J for J in inner):
            return False
    return True


def is_prime_closed_path(P: CellCollection) -> bool:
    """L-configuration or a ladder of at least three steps; cross-checked
    against an exhaustive zig-zag search."""
    if closed_path_sequence(P) is None:
        raise NotAClosedPath("input is not a closed path")
    verdict = bool(find_l_configurations(P)) or find_ladders(P)[0] >= 3
    zig = has_zig_zag_walk(P)
    if verdict == zig:
        raise AssertionError(
            "zig-zag equivalence violated: "
            f"L/ladder criterion={verdict}, zig-zag walk found={zig}"
        )
    return verdict


# --------------------------------------------------------------------------
# summary report


@dataclass
class ClassificationReport:
    rank: int
    n_vertices: int
    is_simple: bool
    holes: list
    is_thin: bool
    is_closed_path: bool
    is_weakly_closed_path: bool
    l_configurations: int
    max_ladder_steps: int
    has_weak_ladder: bool
    has_zig_zag: Optional[bool]
    is_prime_closed_path: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "n_vertices": self.n_vertices,
            "is_simple": self.is_simple,
            "holes": [[list(c) for c in h.sorted_cells] for h in self.holes],
            "is_thin": self.is_thin,
            "is_closed_path": self.is_closed_path,
            "is_weakly_closed_path": self.is_weakly_closed_path,
            "l_configurations": self.l_configurations,
            "max_ladder_steps": self.max_ladder_steps,
            "has_weak_ladder": self.has_weak_ladder,
            "has_zig_zag": self.has_zig_zag,
            "is_prime_closed_path": self.is_prime_closed_path,
        }


def classify_basic(P: CellCollection, zig_zag: bool = True) -> ClassificationReport:
    hs = holes(P)
    closed = closed_path_sequence(P) is not None
    n_l = len(find_l_configurations(P))
    steps, _ = find_ladders(P)
    zz = has_zig_zag_walk(P) if zig_zag else None
    prime = None
    if closed:
        prime = n_l > 0 or steps >= 3
        if zz is not None and prime == zz:
            raise AssertionError("zig-zag equivalence violated on a closed path")
    return ClassificationReport(
        rank=P.rank,
        n_vertices=len(P.vertices),
        is_simple=not hs,
        holes=hs,
        is_thin=is_thin(P),
        is_closed_path=closed,
        is_weakly_closed_path=is_weakly_closed_path(P),
        l_configurations=n_l,
        max_ladder_steps=steps,
        has_weak_ladder=bool(find_weak_ladders(P)),
        has_zig_zag=zz,
        is_prime_closed_path=prime,
    )


# --------------------------------------------------------------------------
# decompositions in a normalized frame


def _frame(P: CellCollection, t: int) -> tuple[frozenset, tuple[int, int]]:
    """Cells of the t-th dihedral image translated to the origin, and the shift."""
    img = symmetry.transform_cells(t, P.cells)
    mx = min(c.i for c in img)
    my = min(c.j for c in img)
    return frozenset(Cell(c.i - mx, c.j - my) for c in img), (mx, my)


class _Back:
    """Maps cells and points of a normalized frame back to the input frame."""

    def __init__(self, t: int, shift: tuple[int, int]):
        self.t = t
        self.inv = symmetry.inverse(t)
        self.dx, self.dy = shift

    def cell(self, c) -> Cell:
        return symmetry.transform_cell(self.inv, (c[0] + self.dx, c[1] + self.dy))

    def cells(self, cs) -> tuple[Cell, ...]:
        return tuple(self.cell(c) for c in cs)

    def point(self, p) -> GridPoint:
        return symmetry.transform_point(self.inv, (p[0] + self.dx, p[1] + self.dy))


def _vertex_set(cells) -> set:
    return {v for c in cells for v in cell_vertices(c)}


def _run_right(cells: frozenset, c: Cell) -> list[Cell]:
    out = []
    cur = Cell(c.i + 1, c.j)
    while cur in cells:
        out.append(cur)
        cur = Cell(cur.i + 1, cur.j)
    return out


def _run_up(cells: frozenset, c: Cell) -> list[Cell]:
    out = []
    cur = Cell(c.i, c.j + 1)
    while cur in cells:
        out.append(cur)
        cur = Cell(cur.i, cur.j + 1)
    return out


def _sub(P: CellCollection, drop) -> Polyomino:
    return Polyomino(P.cells - frozenset(drop))


@dataclass
class LCDecomposition:
    transform: int
    corner: Cell  # A
    horizontal_arm: tuple[Cell, ...]  # A_1..A_r
    vertical_arm: tuple[Cell, ...]  # B_1..B_s
    case: int
    complement: Polyomino  # C
    labels: dict  # corner symbol -> GridPoint (input frame)
    derived: dict  # P1, P2, P3, P4, P1', P2' -> Polyomino

    @property
    def r(self) -> int:
        return len(self.horizontal_arm)

    @property
    def s(self) -> int:
        return len(self.vertical_arm)

    @property
    def L(self) -> tuple[Cell, ...]:
        return (self.corner, *self.horizontal_arm, *self.vertical_arm)


def _lc_candidates(cells: frozenset) -> Iterator[tuple]:
    """(A, arm_h, arm_v, case, C) in a frame where arms go right and up."""
    for A in sorted(cells):
        right = _run_right(cells, A)
        up = _run_up(cells, A)
        for r in range(2, len(right) + 1):
            for s in range(2, len(up) + 1):
                arm_h, arm_v = right[:r], up[:s]
                L = {A, *arm_h, *arm_v}
                C = cells - L
                if not C:
                    continue
                x, y = A
                a = lambda i: GridPoint(x + 1, y + i + 1)  # upper right of B_i
                d = lambda i: GridPoint(x, y + i + 1)  # upper left of B_i
                b = lambda j: GridPoint(x + j + 1, y + 1)  # upper right of A_j
                c = lambda j: GridPoint(x + j + 1, y)  # lower right of A_j
                cases = {
                    1: {a(s - 1), a(s), b(r - 1), b(r)},
                    2: {a(s - 1), a(s), c(r - 1), c(r)},
                    3: {d(s - 1), d(s), b(r - 1), b(r)},
                    4: {d(s - 1), d(s), c(r - 1), c(r)},
                }
                inter = _vertex_set(L) & _vertex_set(C)
                hits = [k for k, v in cases.items() if v == inter]
                if len(hits) != 1 or not CellCollection(C).is_connected():
                    continue
                yield A, tuple(arm_h), tuple(arm_v), hits[0]


def iter_lc_decompositions(P: CellCollection) -> Iterator[LCDecomposition]:
    """Every (L, C) decomposition, frame by frame (transform ids 0..7)."""
    P = Polyomino(P.cells) if not isinstance(P, Polyomino) else P
    for t in range(8):
        cells, shift = _frame(P, t)
        back = _Back(t, shift)
        for A, arm_h, arm_v, case in _lc_candidates(cells):
            x, y = A
            r, s = len(arm_h), len(arm_v)
            labels = {
                "a": GridPoint(x, y),
                "b": GridPoint(x + 1, y + 1),
                "c": GridPoint(x, y + 1),
                "d": GridPoint(x + 1, y),
            }
            for i in range(1, s + 1):
                labels[f"a_{i}"] = GridPoint(x + 1, y + i + 1)
                labels[f"d_{i}"] = GridPoint(x, y + i + 1)
            for j in range(1, r + 1):
                labels[f"b_{j}"] = GridPoint(x + j + 1, y + 1)
                labels[f"c_{j}"] = GridPoint(x + j + 1, y)
            labels = {k: back.point(v) for k, v in labels.items()}
            A0, H, V = back.cell(A), back.cells(arm_h), back.cells(arm_v)
            L = {A0, *H, *V}
            derived = {
                "P1": _sub(P, {A0, *H}),
                "P2": _sub(P, {A0, *V}),
                "P3": _sub(P, L),
                "P4": _sub(P, {A0, H[0], V[0]}),
                "P1'": _sub(P, H),
                "P2'": _sub(P, V),
            }
            yield LCDecomposition(t, A0, H, V, case, derived["P3"], labels, derived)


def decompose_lc(P: CellCollection) -> LCDecomposition:
    """First (L, C) decomposition in frame order, least corner cell within a frame."""
    for dec in iter_lc_decompositions(P):
        return dec
    raise NoDecomposition("no L-shaped region satisfies any of the four cases")


# W-configuration ----------------------------------------------------------


@dataclass
class WConfiguration:
    transform: int
    cell_a: Cell  # A
    horizontal: tuple[Cell, ...]  # A_1..A_s (A_1 next to A)
    vertical: tuple[Cell, ...]  # B_1..B_r
    case: int  # 1 or 2
    labels: dict
    derived: dict  # Q, Q1, R1, R2, F1, F2

    @property
    def s(self) -> int:
        return len(self.horizontal)

    @property
    def r(self) -> int:
        return len(self.vertical)

    def anchors(self) -> tuple[frozenset, frozenset]:
        """Points forced into and out of Y for the Gröbner lex order."""
        lab = self.labels
        inside = frozenset({lab["a"], lab["d"]})
        outside = {lab["b"], lab["c"], lab["a_1"], lab["b_1"], lab["c_1"], lab["d_1"]}
        if self.case == 1:
            outside |= {lab[f"d_{j}"] for j in range(2, self.r + 1)}
        return inside, frozenset(outside)


def _w_candidates(cells: frozenset) -> Iterator[tuple]:
    for A in sorted(cells):
        x, y = A
        A1 = Cell(x, y - 1)
        B1 = Cell(x + 1, y)
        if A1 not in cells or B1 not in cells:
            continue
        # A meets the rest only through A_1 and B_1; A_1 ends its row
        if Cell(x + 1, y - 1) in cells or Cell(x, y + 1) in cells or Cell(x - 1, y) in cells:
            continue
        # [A_s, A_1]: maximal horizontal block with right end A_1
        hor = [A1]
        cur = Cell(x - 1, y - 1)
        while cur in cells:
            hor.append(cur)
            cur = Cell(cur.i - 1, cur.j)
        # [B_1, B_r]: maximal vertical block with bottom end B_1
        ver = [B1]
        cur = Cell(x + 1, y + 1)
        while cur in cells:
            ver.append(cur)
            cur = Cell(cur.i, cur.j + 1)
        s, r = len(hor), len(ver)
        if s < 2 or r < 2:
            continue
        W = {A, *hor, *ver}
        M = cells - W
        if not M:
            continue
        if _vertex_set(hor) & _vertex_set(ver) != {GridPoint(x + 1, y)}:
            continue
        b = lambda i: GridPoint(x - i + 1, y)  # upper left of A_i
        c = lambda i: GridPoint(x - i + 1, y - 1)  # lower left of A_i
        d = lambda j: GridPoint(x + 2, y + j)  # upper right of B_j
        inter = _vertex_set(W) & _vertex_set(M)
        if inter == {c(s - 1), c(s), d(r - 1), d(r)}:
            yield A, tuple(hor), tuple(ver), 1
        elif inter == {b(s - 1), b(s), d(r - 1), d(r)}:
            yield A, tuple(hor), tuple(ver), 2


def iter_w_configurations(P: CellCollection) -> Iterator[WConfiguration]:
    P = Polyomino(P.cells) if not isinstance(P, Polyomino) else P
    for t in range(8):
        cells, shift = _frame(P, t)
        back = _Back(t, shift)
        for A, hor, ver, case in _w_candidates(cells):
            x, y = A
            s, r = len(hor), len(ver)
            labels = {
                "a": GridPoint(x, y + 1),
                "b": GridPoint(x + 1, y),
                "c": GridPoint(x + 1, y - 1),
                "d": GridPoint(x + 2, y),
            }
            for i in range(1, s + 1):
                labels[f"b_{i}"] = GridPoint(x - i + 1, y)
                labels[f"c_{i}"] = GridPoint(x - i + 1, y - 1)
            for j in range(1, r + 1):
                labels[f"a_{j}"] = GridPoint(x + 1, y + j)
                labels[f"d_{j}"] = GridPoint(x + 2, y + j)
            labels = {k: back.point(v) for k, v in labels.items()}
            A0, H, V = back.cell(A), back.cells(hor), back.cells(ver)
            Q = _sub(P, {A0})
            derived = {
                "Q": Q,
                "Q1": _sub(P, {A0, H[0], V[0]}),
                "R1": _sub(Q, {V[0]}),
                "R2": _sub(Q, V),
                "F1": _sub(Q, H),
                "F2": _sub(Q, {H[0], *V}),
            }
            yield WConfiguration(t, A0, H, V, case, labels, derived)


def _require_no_l_ladder(P: CellCollection) -> None:
    if closed_path_sequence(P) is None:
        raise NotApplicable("input is not a closed path")
    if find_l_configurations(P):
        raise NotApplicable("closed path has an L-configuration")
    if find_ladders(P)[0] < 3:
        raise NotApplicable("closed path has no ladder of at least three steps")


def decompose_w(P: CellCollection) -> WConfiguration:
    _require_no_l_ladder(P)
    for w in iter_w_configurations(P):
        return w
    raise NotApplicable("no W-configuration found")


# both blocks of rank >= 3 --------------------------------------------------


@dataclass
class Ladder3Decomposition:
    transform: int
    cell_a: Cell  # A
    cell_b: Cell  # B
    lower: tuple[Cell, ...]  # B_1..B_r (B_r next to B)
    upper: tuple[Cell, ...]  # A_1..A_s
    labels: dict
    derived: dict  # K1..K4

    @property
    def r(self) -> int:
        return len(self.lower)

    @property
    def s(self) -> int:
        return len(self.upper)


def _is_three_step(P: CellCollection, blocks) -> bool:
    return is_ladder(P, list(blocks))


def _ladder3_candidates(cells: frozenset) -> Iterator[tuple]:
    coll = CellCollection(cells)
    horiz = maximal_blocks(coll, HORIZONTAL)
    by_cell = {c: blk for blk in horiz for c in blk.cells}
    for B in sorted(cells):
        x, y = B
        A = Cell(x, y + 1)
        if A not in cells:
            continue
        low, up = by_cell.get(B), by_cell.get(A)
        if low is None or up is None or low.last != B or up.first != A:
            continue
        if low.rank < 3 or up.rank < 3:
            continue
        lower = tuple(Cell(i, y) for i in range(low.first.i, x))  # B_1..B_r
        upper = tuple(Cell(i, y + 1) for i in range(x + 1, up.last.i + 1))  # A_1..A_s
        r = len(lower)
        c1, c2 = GridPoint(x - r, y), GridPoint(x - r + 1, y)
        rest = cells - set(low.cells)
        if {c1, c2} & _vertex_set(rest):
            continue
        # B1, B2 must open a ladder of three steps
        if not any(_is_three_step(coll, (low, up, third)) for third in horiz if third not in (low, up)):
            continue
        # standing filter: no K with {K, B1, B2} a three-step ladder
        if any(_is_three_step(coll, (K, low, up)) for K in horiz if K not in (low, up)):
            continue
        yield A, B, lower, upper


def iter_ladder3_decompositions(P: CellCollection) -> Iterator[Ladder3Decomposition]:
    P = Polyomino(P.cells) if not isinstance(P, Polyomino) else P
    for t in range(8):
        cells, shift = _frame(P, t)
        back = _Back(t, shift)
        for A, B, lower, upper in _ladder3_candidates(cells):
            x, y = B
            r, s = len(lower), len(upper)
            labels = {
                "a": GridPoint(x, y + 2),
                "c": GridPoint(x, y + 1),
                "b": GridPoint(x + 1, y + 2),
                "d": GridPoint(x + 1, y + 1),
                "f": GridPoint(x, y),
                "g": GridPoint(x + 1, y),
            }
            for i in range(1, s + 1):
                labels[f"a_{i}"] = GridPoint(x + i + 1, y + 2)
                labels[f"b_{i}"] = GridPoint(x + i + 1, y + 1)
            for i in range(1, r + 1):
                labels[f"c_{i}"] = GridPoint(x - r - 1 + i, y)
                labels[f"d_{i}"] = GridPoint(x - r - 1 + i, y + 1)
            labels = {k: back.point(v) for k, v in labels.items()}
            A0, B0 = back.cell(A), back.cell(B)
            low, upp = back.cells(lower), back.cells(upper)
            derived = {
                "K1": _sub(P, {*low, B0}),
                "K2": _sub(P, {A0, *upp, B0, low[-1]}),
                "K3": _sub(P, {*low, B0, A0}),
                "K4": _sub(P, {A0, B0, upp[0], low[-1]}),
            }
            yield Ladder3Decomposition(t, A0, B0, low, upp, labels, derived)


def decompose_ladder3(P: CellCollection) -> Ladder3Decomposition:
    _require_no_l_ladder(P)
    for k in iter_ladder3_decompositions(P):
        return k
    raise NotApplicable("no ladder with two blocks of at least three cells qualifies")


_FEATURES = {
    "lc": lambda cells: next(iter(_lc_candidates(cells)), None),
    "w": lambda cells: next(iter(_w_candidates(cells)), None),
    "ladder3": lambda cells: next(iter(_ladder3_candidates(cells)), None),
}


def normalize_orientation(P: CellCollection, feature: str) -> tuple[Polyomino, int]:
    """Dihedral image (translated to the origin) in which ``feature`` appears
    in its reference orientation, with the transform id used."""
    if feature not in _FEATURES:
        raise ValueError(f"unknown feature {feature!r}; expected one of {sorted(_FEATURES)}")
    for t in range(8):
        cells, _ = _frame(P, t)
        if _FEATURES[feature](cells) is not None:
            return Polyomino(cells), t
    raise NoDecomposition(f"feature {feature!r} does not occur")
