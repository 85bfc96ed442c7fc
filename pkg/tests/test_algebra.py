import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from polyalg.algebra import (
    ONE_MINUS_T,
    T,
    BudgetExceeded,
    HilbertSeries,
    IntPolynomial,
    LexOrderConfig,
    MonomialPacker,
    VertexBinomial,
    VertexMonomial,
    add,
    buchberger,
    find_groebner_lex_order,
    hilbert_series_oracle,
    hilbert_series_oracle_detail,
    inner_two_minors,
    is_groebner_basis,
    lex_compare,
    monomial_hilbert_series,
    scale_frac,
    shift,
    standard_monomial_counts,
)
from polyalg.geometry import GridPoint, Polyomino

from conftest import L_TROMINO, RING, RING_4x3

small_polys = st.lists(st.integers(-5, 5), max_size=6).map(IntPolynomial)


# --- integer polynomials -------------------------------------------------


def test_polynomial_basics():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.to_list() == [1, 2] and p.degree == 1
    assert IntPolynomial([]).degree == -1 and IntPolynomial([0, 0]).is_zero()
    assert (p * p).to_list() == [1, 4, 4]
    assert (p - p).is_zero()
    assert p(2) == 5
    assert (ONE_MINUS_T ** 3).to_list() == [1, -3, 3, -1]
    assert str(IntPolynomial([1, 8, 16, 8, 1])) == "1 + 8t + 16t^2 + 8t^3 + t^4"
    assert IntPolynomial([1, 8, 16, 8, 1]).is_palindromic()
    assert not IntPolynomial([1, 10, 27, 20, 4]).is_palindromic()


def test_exact_big_coefficients():
    # no wrapping: coefficients beyond 64 bits stay exact
    big = IntPolynomial([1, 1]) ** 80
    assert big[40] == 107507208733336176461620
    assert big(1) == 2 ** 80


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(small_polys)
def test_divide_by_one_minus_t(a):
    assert (a * ONE_MINUS_T).div_one_minus_t() == a


# --- Hilbert series ------------------------------------------------------


def test_series_canonical_form():
    hs = HilbertSeries(IntPolynomial([1, 0, -1]), 4)  # (1 - t^2)/(1 - t)^4
    assert hs.numerator.to_list() == [1, 1] and hs.denom_exponent == 3


@given(small_polys, st.integers(0, 6), st.integers(0, 3))
def test_canonicalization_idempotent(h, d, extra):
    assume(not h.is_zero())
    a = HilbertSeries(h * ONE_MINUS_T ** extra, d + extra)
    b = HilbertSeries(a.numerator, a.denom_exponent)
    assert a == b and a.numerator(1) != 0
    assert a == HilbertSeries(h, d)


def test_series_ops():
    one = HilbertSeries(IntPolynomial([1]), 1)
    tee = HilbertSeries(T, 1)
    s = add(one, tee)
    assert (s.numerator.to_list(), s.denom_exponent) == ([1, 1], 1)
    sh = shift(HilbertSeries(IntPolynomial([1, 1]), 3), 1)
    assert (sh.numerator.to_list(), sh.denom_exponent) == ([0, 1, 1], 3)
    sc = scale_frac(HilbertSeries(IntPolynomial([1]), 0), 3)
    assert (sc.numerator.to_list(), sc.denom_exponent) == ([1], 3)


def test_series_coefficients():
    # 1/(1-t)^2 = sum (k+1) t^k
    assert HilbertSeries(IntPolynomial([1]), 2).coefficients(4) == [1, 2, 3, 4, 5]


# --- vertex algebra and orders -------------------------------------------


def test_inner_two_minor_counts():
    assert len(inner_two_minors(Polyomino([(0, 0)]))) == 1
    assert len(inner_two_minors(L_TROMINO)) == 5
    assert len(inner_two_minors(RING)) == 20
    f, = inner_two_minors(Polyomino([(0, 0)]))
    assert f.plus == VertexMonomial.of((0, 0), (1, 1))
    assert f.minus == VertexMonomial.of((0, 1), (1, 0))


def _var(p):
    return VertexMonomial.of(p)


def test_lex_examples():
    empty = LexOrderConfig()
    assert lex_compare(empty, _var((0, 0)), _var((0, 1))) == -1
    assert lex_compare(empty, _var((0, 1)), _var((1, 0))) == -1
    assert lex_compare(LexOrderConfig({(1, 0)}), _var((5, 5)), _var((1, 0))) == -1
    assert lex_compare(LexOrderConfig({(1, 0), (0, 0)}), _var((0, 0)), _var((1, 0))) == -1


points = st.tuples(st.integers(0, 3), st.integers(0, 3))
monomials = st.dictionaries(points, st.integers(1, 3), max_size=4).map(lambda d: VertexMonomial.of(exps=d))
orders = st.sets(points, max_size=5).map(LexOrderConfig)


@settings(max_examples=200)
@given(orders, monomials, monomials, monomials)
def test_lex_total_order(order, a, b, c):
    ab, ba = lex_compare(order, a, b), lex_compare(order, b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    if ab < 0 and lex_compare(order, b, c) < 0:
        assert lex_compare(order, a, c) < 0
    if ab < 0:
        assert lex_compare(order, a * c, b * c) < 0


@settings(max_examples=200)
@given(orders, monomials, monomials)
def test_packing_preserves_order(order, a, b):
    pts = {GridPoint(i, j) for i in range(4) for j in range(4)}
    pk = MonomialPacker(order, pts)
    pa, pb = pk.pack(a), pk.pack(b)
    assert (pa > pb) - (pa < pb) == lex_compare(order, a, b)
    assert pk.unpack(pa) == a
    assert pk.divides(pa, pk.mul(pa, pb))


# --- Buchberger ----------------------------------------------------------


def test_single_cell_is_a_basis():
    gens = inner_two_minors(Polyomino([(0, 0)]))
    for order in (LexOrderConfig(), LexOrderConfig({(0, 1)})):
        res = buchberger(gens, order)
        (g,) = res.basis
        assert res.is_groebner_already
        assert {g.plus, g.minus} == {gens[0].plus, gens[0].minus}


def _x(k):
    return GridPoint(0, k)


def test_two_binomials_completion():
    # x1 x4 - x2 x3 and x3 x6 - x4 x5 with x4 the largest variable
    f1 = VertexBinomial(VertexMonomial.of(_x(1), _x(4)), VertexMonomial.of(_x(2), _x(3)))
    f2 = VertexBinomial(VertexMonomial.of(_x(4), _x(5)), VertexMonomial.of(_x(3), _x(6)))
    order = LexOrderConfig({_x(4)})
    assert not is_groebner_basis([f1, f2], order)
    res = buchberger([f1, f2], order)
    assert not res.is_groebner_already
    new = VertexBinomial(VertexMonomial.of(_x(1), _x(3), _x(6)), VertexMonomial.of(_x(2), _x(3), _x(5)))
    assert sorted(map(str, res.basis)) == sorted(map(str, [f1, f2, new]))


def test_budget_exceeded_carries_state():
    with pytest.raises(BudgetExceeded) as err:
        buchberger(inner_two_minors(RING_4x3), LexOrderConfig(), budget=1)
    assert err.value.partial_basis and err.value.pairs_left > 0


def test_search_finds_order_for_ring():
    assert find_groebner_lex_order(Polyomino([(0, 0)])).Y == frozenset()
    order = find_groebner_lex_order(RING)
    gens = inner_two_minors(RING)
    assert is_groebner_basis(gens, order)
    assert buchberger(gens, order).is_groebner_already


# --- monomial Hilbert series ---------------------------------------------


def test_monomial_series_examples():
    x, y, z = GridPoint(0, 0), GridPoint(0, 1), GridPoint(0, 2)
    hs = monomial_hilbert_series([VertexMonomial.of(x, y)], 4)
    assert (hs.numerator.to_list(), hs.denom_exponent) == ([1, 1], 3)
    hs = monomial_hilbert_series([VertexMonomial.of(x, y), VertexMonomial.of(y, z)], 3)
    assert (hs.numerator.to_list(), hs.denom_exponent) == ([1, 1, -1], 2)
    hs = monomial_hilbert_series([], 5)
    assert (hs.numerator.to_list(), hs.denom_exponent) == ([1], 5)


square_free_gens = st.lists(
    st.sets(st.integers(0, 7), min_size=1, max_size=3), min_size=1, max_size=9
).map(lambda gs: [VertexMonomial.of(*[GridPoint(0, k) for k in g]) for g in gs])


@settings(max_examples=80, deadline=None)
@given(square_free_gens)
def test_pivot_matches_inclusion_exclusion(gens):
    ie = monomial_hilbert_series(gens, 8, cutoff=100)
    pivot = monomial_hilbert_series(gens, 8, cutoff=0)
    assert ie == pivot
    counts = standard_monomial_counts(gens, [GridPoint(0, k) for k in range(8)], 4)
    assert ie.coefficients(4) == counts


# --- the oracle ------------------------------------------------------------


@pytest.mark.parametrize(
    "P, h, d",
    [
        (Polyomino([(0, 0)]), [1, 1], 3),
        (L_TROMINO, [1, 3, 1], 5),
        (RING, [1, 8, 16, 8, 1], 8),
        (RING_4x3, [1, 10, 27, 20, 4], 10),
    ],
)
def test_oracle_values(P, h, d):
    hs = hilbert_series_oracle(P)
    assert (hs.numerator.to_list(), hs.denom_exponent) == (h, d)


def test_oracle_order_independence():
    found = find_groebner_lex_order(RING)
    a = hilbert_series_oracle(RING)
    b = hilbert_series_oracle(RING, order=found)
    c = hilbert_series_oracle(RING, order=LexOrderConfig({(0, 0), (3, 3)}))
    assert a == b == c
    detail = hilbert_series_oracle_detail(RING, search=True)
    assert detail.order_found and detail.series == a


@st.composite
def polyominoes(draw, max_rank=8):
    cells = {(0, 0)}
    n = draw(st.integers(1, max_rank))
    while len(cells) < n:
        frontier = sorted(
            {(x + dx, y + dy) for x, y in cells for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))} - cells
        )
        cells.add(draw(st.sampled_from(frontier)))
    return Polyomino(cells)


@settings(max_examples=25, deadline=None)
@given(polyominoes())
def test_oracle_matches_standard_monomials(P):
    detail = hilbert_series_oracle_detail(P)
    counts = standard_monomial_counts(detail.groebner.leading_monomials, P.vertices, 6)
    assert detail.series.coefficients(6) == counts


def test_sympy_cross_check():
    sympy = pytest.importorskip("sympy")
    for P in (RING, RING_4x3):
        pts = sorted(P.vertices)
        xs = {p: sympy.Symbol(f"x_{p[0]}_{p[1]}") for p in pts}
        polys = []
        for f in inner_two_minors(P):
            polys.append(
                sympy.Mul(*[xs[p] ** e for p, e in f.plus.exps])
                - sympy.Mul(*[xs[p] ** e for p, e in f.minus.exps])
            )
        gens = [xs[p] for p in pts]
        G = sympy.groebner(polys, *gens, order="grevlex")
        leads = []
        for g in G.exprs:
            mono = sympy.Poly(g, *gens).monoms(order="grevlex")[0]
            leads.append(VertexMonomial.of(exps={p: e for p, e in zip(pts, mono) if e}))
        expected = standard_monomial_counts(leads, pts, 5)
        assert hilbert_series_oracle(P).coefficients(5) == expected
