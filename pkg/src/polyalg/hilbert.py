"""Hilbert-series formulas for closed paths and the invariants pipeline.

The h-polynomial is computed from rook placements and from the decomposition
formulas, and the Gröbner oracle is run as an independent check.  Reports
keep every route's answer so a disagreement shows up in the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    T,
    HilbertSeries,
    IntPolynomial,
    add,
    hilbert_series_oracle,
    scale_frac,
    shift,
)
from .classify import (
    LCDecomposition,
    Ladder3Decomposition,
    WConfiguration,
    closed_path_sequence,
    decompose_lc,
    decompose_ladder3,
    decompose_w,
    find_l_configurations,
    has_zig_zag_walk,
    holes,
    is_thin,
    NotApplicable,
)
from .geometry import CellCollection, Polyomino, all_maximal_blocks
from .rook import rook_number, rook_polynomial, s_property


class HilbertError(ValueError):
    code = "hilbert-error"


class NotSimpleThin(HilbertError):
    code = "not-simple-thin"


class ComplementNotSimple(HilbertError):
    code = "complement-not-simple"


class WrongCase(HilbertError):
    code = "wrong-case"


class HasZigZag(HilbertError):
    code = "has-zig-zag"


class NotFromWConfiguration(HilbertError):
    code = "not-from-w-configuration"


class OutOfScopeClass(HilbertError):
    code = "out-of-scope"


def _dim(P: CellCollection) -> int:
    return len(P.vertices) - P.rank


def h_simple_thin(P: CellCollection) -> IntPolynomial:
    """For simple thin polyominoes the h-polynomial is the rook polynomial."""
    if holes(P) or not is_thin(P):
        raise NotSimpleThin("input must be simple and thin")
    return rook_polynomial(P)


def component_h(P: CellCollection, oracle=hilbert_series_oracle) -> IntPolynomial:
    """h of a sub-polyomino: rook shortcut when simple and thin, oracle otherwise."""
    if not holes(P) and is_thin(P):
        return rook_polynomial(P)
    return oracle(P).numerator


# --------------------------------------------------------------------------
# (L, C) route


def hp_lc_general(
    P: CellCollection,
    dec: LCDecomposition,
    hp1: HilbertSeries,
    hp2: HilbertSeries,
    hp3: HilbertSeries,
    hp4: HilbertSeries,
) -> HilbertSeries:
    r, s = dec.r, dec.s
    bracket = add(
        add(scale_frac(hp1, r - 2), scale_frac(hp2, s - 2)),
        scale_frac(hp3, s + r - 3),
    )
    return add(scale_frac(hp4, 1), scale_frac(shift(bracket, 1), 1))


def h_lc_simple(
    P: CellCollection, dec: LCDecomposition, oracle=hilbert_series_oracle, _p3_sign: int = -1
) -> IntPolynomial:
    """``_p3_sign`` exists only so negative controls can inject a sign error."""
    if holes(dec.complement):
        raise ComplementNotSimple("the complement of the L-region has a hole")
    h = {k: component_h(dec.derived[k], oracle) for k in ("P1", "P2", "P3", "P4")}
    factor = IntPolynomial([1, _p3_sign])
    return h["P4"] + T * (h["P1"] + h["P2"] + factor * h["P3"])


def lc_component_series(dec: LCDecomposition, oracle=hilbert_series_oracle) -> dict:
    """Hilbert series of P1..P4, each h over (1-t)^(|V| - rank)."""
    return {
        k: HilbertSeries(component_h(dec.derived[k], oracle), _dim(dec.derived[k]))
        for k in ("P1", "P2", "P3", "P4")
    }


# --------------------------------------------------------------------------
# W-configuration and ladder routes


def h_1config(P: CellCollection, w: WConfiguration) -> IntPolynomial:
    if w.case != 1:
        raise WrongCase(f"expected a 1-Configuration, got case {w.case}")
    d = w.derived
    return h_simple_thin(d["R1"]) + T * (h_simple_thin(d["R2"]) + h_simple_thin(d["Q1"]))


def h_2config(P: CellCollection, w: WConfiguration) -> IntPolynomial:
    if w.case != 2:
        raise WrongCase(f"expected a 2-Configuration, got case {w.case}")
    d = w.derived
    return IntPolynomial([1, 1]) * h_simple_thin(d["Q1"]) + T * (
        h_simple_thin(d["F1"]) + h_simple_thin(d["F2"])
    )


def h_w(P: CellCollection, w: WConfiguration) -> IntPolynomial:
    return h_1config(P, w) if w.case == 1 else h_2config(P, w)


def h_ladder3(P: CellCollection, k: Ladder3Decomposition) -> IntPolynomial:
    if k.r < 2 or k.s < 2:
        raise WrongCase("both ladder blocks need at least three cells")
    d = k.derived
    return h_simple_thin(d["K4"]) + T * (
        h_simple_thin(d["K1"]) + 2 * h_simple_thin(d["K2"]) + h_simple_thin(d["K3"])
    )


def hp_q_relation_check(
    P: CellCollection,
    w: WConfiguration,
    oracle=hilbert_series_oracle,
    q1: Optional[CellCollection] = None,
) -> bool:
    """Whether HP(P) = HP(Q) + t/(1-t) HP(Q1) holds for oracle series.

    ``q1`` overrides the Q1 polyomino (used for negative controls).
    """
    Q1 = w.derived["Q1"] if q1 is None else q1
    lhs = oracle(P)
    rhs = add(oracle(w.derived["Q"]), scale_frac(shift(oracle(Q1), 1), 1))
    return lhs == rhs


# --------------------------------------------------------------------------
# reports


@dataclass
class InvariantsReport:
    h_rook: IntPolynomial
    h_formula: Optional[IntPolynomial]
    formula: Optional[str]
    h_oracle: Optional[IntPolynomial]
    hp: HilbertSeries
    krull_dim: int
    regularity: int
    gorenstein: bool
    methods_agree: bool
    oracle_dim: Optional[int] = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def poly(p):
            return None if p is None else p.to_list()

        return {
            "h_rook": poly(self.h_rook),
            "h_formula": poly(self.h_formula),
            "formula": self.formula,
            "h_oracle": poly(self.h_oracle),
            "hp": {"numerator": self.hp.numerator.to_list(), "denom_exponent": self.hp.denom_exponent},
            "krull_dim": self.krull_dim,
            "regularity": self.regularity,
            "gorenstein": self.gorenstein,
            "methods_agree": self.methods_agree,
            "oracle_dim": self.oracle_dim,
            "notes": list(self.notes),
        }


def formula_h(P: CellCollection, _p3_sign: int = -1) -> tuple[IntPolynomial, str]:
    """Dispatch: (L, C) route, then W-configuration, then ladder of large blocks."""
    if find_l_configurations(P):
        dec = decompose_lc(P)
        h = h_lc_simple(P, dec, _p3_sign=_p3_sign)
        return h, f"lc(case={dec.case},transform={dec.transform})"
    try:
        w = decompose_w(P)
        return h_w(P, w), f"w{w.case}(transform={w.transform})"
    except NotApplicable:
        pass
    k = decompose_ladder3(P)
    return h_ladder3(P, k), f"ladder3(transform={k.transform})"


def _agreed(polys: list) -> tuple[IntPolynomial, bool]:
    present = [p for p in polys if p is not None]
    return present[0], all(p == present[0] for p in present)


def closed_path_invariants(
    P: CellCollection,
    use_formula: bool = True,
    use_oracle: bool = True,
    oracle=hilbert_series_oracle,
) -> InvariantsReport:
    if closed_path_sequence(P) is None:
        raise OutOfScopeClass("input is not a closed path")
    if has_zig_zag_walk(P):
        raise HasZigZag("closed path has a zig-zag walk; only the oracle applies")
    h_rook = rook_polynomial(P)
    h_form, name = formula_h(P) if use_formula else (None, None)
    oracle_hp = oracle(P) if use_oracle else None
    h_orc = oracle_hp.numerator if oracle_hp is not None else None
    h, agree = _agreed([h_rook, h_form, h_orc])
    dim = _dim(P)
    if oracle_hp is not None and oracle_hp.denom_exponent != dim:
        agree = False
    s_prop, _ = s_property(P, closed_path=True)
    gor = h.is_palindromic()
    notes = []
    if s_prop != gor:
        agree = False
        notes.append("S-property and palindromicity disagree")
    return InvariantsReport(
        h_rook=h_rook,
        h_formula=h_form,
        formula=name,
        h_oracle=h_orc,
        hp=HilbertSeries(h, dim),
        krull_dim=dim,
        regularity=h.degree,
        gorenstein=gor,
        methods_agree=agree,
        oracle_dim=None if oracle_hp is None else oracle_hp.denom_exponent,
        notes=notes,
    )


def simple_thin_invariants(
    P: CellCollection, use_oracle: bool = True, oracle=hilbert_series_oracle
) -> InvariantsReport:
    h_rook = h_simple_thin(P)
    oracle_hp = oracle(P) if use_oracle else None
    h_orc = oracle_hp.numerator if oracle_hp is not None else None
    h, agree = _agreed([h_rook, h_orc])
    dim = _dim(P)
    if oracle_hp is not None and oracle_hp.denom_exponent != dim:
        agree = False
    s_prop, _ = s_property(P, closed_path=False)
    gor = h.is_palindromic()
    notes = []
    if s_prop != gor:
        agree = False
        notes.append("S-property and palindromicity disagree")
    return InvariantsReport(
        h_rook, None, "simple-thin", h_orc, HilbertSeries(h, dim), dim, h.degree, gor, agree,
        None if oracle_hp is None else oracle_hp.denom_exponent, notes,
    )


def oracle_invariants(P: CellCollection, oracle=hilbert_series_oracle) -> InvariantsReport:
    """Oracle-only report for inputs outside the classes with proven formulas."""
    hp = oracle(P)
    h_rook = rook_polynomial(P)
    notes = ["oracle only: no formula is claimed for this class"]
    if h_rook != hp.numerator:
        notes.append("h differs from the rook polynomial")
    return InvariantsReport(
        h_rook, None, None, hp.numerator, hp, hp.denom_exponent, hp.numerator.degree,
        hp.numerator.is_palindromic(), True, hp.denom_exponent, notes,
    )


def weakly_closed_invariants(
    Q: CellCollection,
    context: WConfiguration,
    h_p: Optional[IntPolynomial] = None,
    oracle=None,
) -> InvariantsReport:
    """Invariants of Q = P minus the cell A of a W-configuration.

    ``h_p`` defaults to the rook polynomial of P; when ``oracle`` is given the
    oracle series of Q is computed as an extra cross-check.
    """
    if Polyomino(Q.cells) != context.derived["Q"]:
        raise NotFromWConfiguration("Q is not P minus the cell A of this configuration")
    P = Polyomino(Q.cells | {context.cell_a})
    if h_p is None:
        h_p = rook_polynomial(P)
    Q1 = context.derived["Q1"]
    # HP(Q) = HP(P) - t/(1-t) HP(Q1), read off with the true denominators
    hp_q = add(
        HilbertSeries(h_p, _dim(P)),
        scale_frac(shift(HilbertSeries(-h_simple_thin(Q1), _dim(Q1)), 1), 1),
    )
    h_q = hp_q.numerator
    rook_q = rook_polynomial(Q)
    dim = _dim(Q)
    h_orc = None
    agree = h_q == rook_q and _dim(P) == dim == hp_q.denom_exponent
    oracle_dim = None
    if oracle is not None:
        hp = oracle(Q)
        h_orc, oracle_dim = hp.numerator, hp.denom_exponent
        agree = agree and h_orc == h_q and oracle_dim == dim
    s_prop, _ = s_property(Q, closed_path=False)
    gor = h_q.is_palindromic()
    notes = []
    if s_prop != gor:
        agree = False
        notes.append("S-property and palindromicity disagree")
    return InvariantsReport(
        rook_q, h_q, "HP(P) - t/(1-t) HP(Q1)", h_orc, hp_q, dim, h_q.degree, gor, agree,
        oracle_dim, notes,
    )


def gorenstein(P: CellCollection, h: Optional[IntPolynomial] = None) -> bool:
    """S-property verdict, checked against palindromicity of h."""
    closed = closed_path_sequence(P) is not None
    if closed:
        if has_zig_zag_walk(P):
            raise OutOfScopeClass("closed path with a zig-zag walk")
    elif holes(P) or not is_thin(P):
        raise OutOfScopeClass("input is neither a prime closed path nor simple thin")
    verdict, _ = s_property(P, closed_path=closed)
    if h is None:
        h = rook_polynomial(P)
    if verdict != h.is_palindromic():
        raise AssertionError("S-property and palindromicity of h disagree")
    return verdict


def all_blocks_rank_three(P: CellCollection) -> bool:
    return all(b.rank == 3 for b in all_maximal_blocks(P))


def lc_rook_relations_hold(P: CellCollection, dec: LCDecomposition) -> bool:
    """Rook numbers of the derived polyominoes of an (L, C) decomposition."""
    r = rook_number(P)
    rk = {k: rook_number(dec.derived[k]) for k in ("P1", "P2", "P3", "P4")}
    return rk["P1"] == rk["P2"] == r - 1 and rk["P3"] == r - 2 and r - 2 <= rk["P4"] <= r


def ladder3_rook_relations_hold(P: CellCollection, dec: Ladder3Decomposition) -> bool:
    r = rook_number(P)
    rk = {k: rook_number(dec.derived[k]) for k in ("K1", "K2", "K3", "K4")}
    return (
        rk["K1"] == rk["K3"] == r - 1
        and r - 2 <= rk["K2"] <= r - 1
        and r - 2 <= rk["K4"] <= r
    )
