"""Enumeration of polyominoes up to translation and dihedral symmetry."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .classify import closed_path_conditions_hold, has_zig_zag_walk
from .geometry import Polyomino, share_vertex
from .symmetry import canonical_form


def _turns_l(c1, c2, c3, c4, c5) -> bool:
    """Five consecutive path cells forming two orthogonal straight triples."""
    d1 = (c2[0] - c1[0], c2[1] - c1[1])
    d2 = (c3[0] - c2[0], c3[1] - c2[1])
    d3 = (c4[0] - c3[0], c4[1] - c3[1])
    d4 = (c5[0] - c4[0], c5[1] - c4[1])
    return d1 == d2 and d3 == d4 and d1[0] * d3[0] + d1[1] * d3[1] == 0


def _closed_cycles(max_rank: int, forbid_l: bool = False) -> set[frozenset]:
    """Cell sets of all closed paths through the origin with the origin as least cell.

    With ``forbid_l`` the search never extends a path by a cell completing an
    L-configuration (in a closed path these are five consecutive cells).
    """
    start = (0, 0)
    found: set[frozenset] = set()
    path = [start]
    onpath = {start}

    def dfs(limit: int) -> None:
        m = len(path)
        x, y = path[-1]
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb == start:
                if m >= 6 and closed_path_conditions_hold(path):
                    if forbid_l and any(
                        _turns_l(*(path[(k + q) % m] for q in range(5))) for k in range(m)
                    ):
                        continue
                    found.add(frozenset(path))
                continue
            if nb in onpath or nb < start:
                continue
            # must still be able to walk home
            if abs(nb[0]) + abs(nb[1]) > max_rank - m:
                continue
            if any(share_vertex(nb, path[k]) for k in range(2, m - 2)):
                continue
            if forbid_l and m >= 4 and _turns_l(*path[-4:], nb):
                continue
            lim = limit
            # cells touching the start may only sit within cyclic distance 2 of it
            if m >= 3 and share_vertex(nb, path[0]):
                lim = min(lim, m + 2)
            if m >= 4 and share_vertex(nb, path[1]):
                lim = min(lim, m + 1)
            if m + 1 > lim:
                continue
            path.append(nb)
            onpath.add(nb)
            dfs(lim)
            path.pop()
            onpath.discard(nb)

    dfs(max_rank)
    return found


def closed_paths(max_rank: int, min_rank: int = 8, forbid_l: bool = False) -> list[Polyomino]:
    """Every closed path with ``min_rank <= rank <= max_rank`` up to symmetry.

    Output is sorted by (rank, canonical cell tuple) so it is reproducible.
    """
    shapes = {canonical_form(c) for c in _closed_cycles(max_rank, forbid_l)}
    keys = sorted((len(k), k) for k in shapes if min_rank <= len(k) <= max_rank)
    return [Polyomino(k) for _, k in keys]


def free_polyominoes(max_rank: int, min_rank: int = 1) -> list[Polyomino]:
    """All polyominoes up to symmetry, grown cell by cell with canonical dedup."""
    level = {canonical_form([(0, 0)])}
    out = []
    for n in range(1, max_rank + 1):
        if n >= min_rank:
            out.extend(Polyomino(k) for k in sorted(level))
        if n == max_rank:
            break
        nxt = set()
        for key in level:
            cells = set(key)
            for x, y in key:
                for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if nb not in cells:
                        nxt.add(canonical_form(cells | {nb}))
        level = nxt
    return out


def generate(
    max_rank: int = 14,
    closed_only: bool = True,
    skip_zig_zag: bool = False,
    count: Optional[int] = None,
    seed: int = 0,
) -> list[Polyomino]:
    """Corpus for testing: closed paths (or all polyominoes) up to ``max_rank``.

    ``skip_zig_zag`` drops shapes that admit a zig-zag walk.  When ``count``
    is given a reproducible random sample of that size is returned.
    """
    shapes = closed_paths(max_rank) if closed_only else free_polyominoes(max_rank)
    if skip_zig_zag:
        shapes = [P for P in shapes if not has_zig_zag_walk(P)]
    if count is not None and count < len(shapes):
        rng = random.Random(seed)
        picked = sorted(rng.sample(range(len(shapes)), count))
        shapes = [shapes[k] for k in picked]
    return shapes


def iter_closed_paths(max_rank: int) -> Iterator[Polyomino]:
    yield from closed_paths(max_rank)
