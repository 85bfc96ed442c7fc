from __future__ import annotations

import functools

import pytest

from polyalg.algebra import hilbert_series_oracle
from polyalg.classify import has_zig_zag_walk, holes, is_thin
from polyalg.enumerate import closed_paths, free_polyominoes
from polyalg.geometry import Polyomino

ACCEPTANCE_LINES: list[str] = []


def frame(width: int, height: int) -> Polyomino:
    """Boundary ring of a width x height rectangle of cells."""
    return Polyomino(
        (i, j)
        for i in range(width)
        for j in range(height)
        if i in (0, width - 1) or j in (0, height - 1)
    )


RING = frame(3, 3)
RING_4x3 = frame(4, 3)
L_TROMINO = Polyomino([(0, 0), (0, 1), (1, 1)])
SQUARE = Polyomino([(0, 0), (1, 0), (0, 1), (1, 1)])
STRIP_5 = Polyomino([(i, 0) for i in range(5)])


def naive_rook_counts(cells) -> list[int]:
    """Rook counts by subset search with its own attack test (independent of polyalg.rook)."""
    cells = sorted(set(map(tuple, cells)))
    s = set(cells)

    def attack(a, b):
        if a[1] == b[1]:
            lo, hi = sorted((a[0], b[0]))
            return all((m, a[1]) in s for m in range(lo, hi + 1))
        if a[0] == b[0]:
            lo, hi = sorted((a[1], b[1]))
            return all((a[0], m) in s for m in range(lo, hi + 1))
        return False

    counts: dict[int, int] = {}

    def grow(start, chosen):
        counts[len(chosen)] = counts.get(len(chosen), 0) + 1
        for q in range(start, len(cells)):
            if all(not attack(cells[q], d) for d in chosen):
                grow(q + 1, chosen + [cells[q]])

    grow(0, [])
    return [counts[k] for k in range(max(counts) + 1)]


@functools.lru_cache(maxsize=None)
def cached_oracle(cells: frozenset):
    return hilbert_series_oracle(Polyomino(cells))


def oracle(P):
    return cached_oracle(frozenset(P.cells))


@pytest.fixture(scope="session")
def closed_corpus():
    """Closed paths of rank <= 12 up to symmetry."""
    return closed_paths(12)


@pytest.fixture(scope="session")
def prime_closed_corpus(closed_corpus):
    return [P for P in closed_corpus if not has_zig_zag_walk(P)]


@pytest.fixture(scope="session")
def no_l_corpus():
    """Closed paths without L-configurations of rank <= 22."""
    return closed_paths(22, min_rank=13, forbid_l=True)


@pytest.fixture(scope="session")
def no_l_prime_corpus(no_l_corpus):
    return [P for P in no_l_corpus if not has_zig_zag_walk(P)]


@pytest.fixture(scope="session")
def small_polyominoes():
    return free_polyominoes(7)


@pytest.fixture(scope="session")
def simple_small(small_polyominoes):
    return [P for P in small_polyominoes if not holes(P)]


@pytest.fixture(scope="session")
def simple_thin_small(simple_small):
    return [P for P in simple_small if is_thin(P)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
