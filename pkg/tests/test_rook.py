import pytest
from hypothesis import given, settings, strategies as st

from polyalg.enumerate import free_polyominoes
from polyalg.geometry import Polyomino
from polyalg.rook import (
    CellNotInPolyomino,
    NotThin,
    attacks,
    is_rook_configuration,
    max_rook_configuration,
    rook_number,
    rook_polynomial,
    rook_polynomial_bruteforce,
    s_property,
)

from conftest import L_TROMINO, RING, RING_4x3, SQUARE, naive_rook_counts


def test_attacks():
    assert attacks(RING, (0, 0), (2, 0))
    assert not attacks(RING, (0, 1), (2, 1))
    P = Polyomino([(0, 0), (1, 0), (0, 1)])
    assert not attacks(P, (1, 0), (0, 1))
    with pytest.raises(CellNotInPolyomino):
        attacks(RING, (1, 1), (0, 0))
    with pytest.raises(ValueError):
        attacks(RING, (0, 0), (0, 0))


@pytest.mark.parametrize(
    "P, expected",
    [
        (Polyomino([(0, 0)]), [1, 1]),
        (SQUARE, [1, 4, 2]),
        (RING, [1, 8, 16, 8, 1]),
        (RING_4x3, [1, 10, 27, 20, 4]),
    ],
)
def test_rook_polynomial_values(P, expected):
    assert rook_polynomial(P).to_list() == expected
    assert naive_rook_counts(P.cells) == expected


def test_rook_numbers():
    assert rook_number(Polyomino([(0, 0)])) == 1
    assert rook_number(RING) == 4
    assert rook_number(Polyomino([(0, 0), (1, 0), (0, 1)])) == 2


def test_unique_max_configuration_of_ring():
    best = max_rook_configuration(RING)
    assert sorted(best) == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert rook_polynomial(RING).to_list()[-1] == 1
    assert is_rook_configuration(RING, best)
    assert not is_rook_configuration(RING, [(0, 0), (2, 0)])


def test_see_through_convention_breaks_palindromicity():
    h = rook_polynomial(RING, see_through=True)
    assert h.to_list() == [1, 8, 14, 4]
    assert not h.is_palindromic()
    assert rook_polynomial(RING).is_palindromic()


def test_s_property():
    assert s_property(L_TROMINO)[0] is True
    assert s_property(RING)[0] is True
    verdict, witness = s_property(RING_4x3)
    assert verdict is False and witness is not None
    with pytest.raises(NotThin):
        s_property(SQUARE)


def test_dp_matches_bruteforce_exhaustive_rank_8():
    for P in free_polyominoes(8):
        assert rook_polynomial(P) == rook_polynomial_bruteforce(P)


@st.composite
def polyominoes(draw, max_rank=10):
    cells = {(0, 0)}
    n = draw(st.integers(1, max_rank))
    while len(cells) < n:
        frontier = sorted(
            {(x + dx, y + dy) for x, y in cells for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))} - cells
        )
        cells.add(draw(st.sampled_from(frontier)))
    return Polyomino(cells)


@settings(max_examples=120, deadline=None)
@given(polyominoes())
def test_dp_matches_bruteforce_rank_10(P):
    h = rook_polynomial(P)
    assert h == rook_polynomial_bruteforce(P)
    coeffs = h.to_list()
    assert coeffs[0] == 1 and coeffs[1] == P.rank
