"""Exact polynomial and series arithmetic, inner 2-minors, Y-restricted lex
orders, a binomial Buchberger engine and Hilbert series of monomial ideals.

Monomials inside the Gröbner engine are packed into Python ints: each
variable owns a 16-bit field (15 value bits and a guard bit) and the largest
variable sits in the most significant field, so comparing two packed
monomials as integers is exactly the lexicographic comparison.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .geometry import CellCollection, GridPoint, inner_intervals

# --------------------------------------------------------------------------
# integer polynomials


class CoefficientOverflow(ArithmeticError):
    pass


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def monomial(cls, deg: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * deg + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        other = _as_poly(other)
        n = max(len(self), len(other))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, m: int) -> "IntPolynomial":
        """Multiply by t^m."""
        if m < 0:
            raise ValueError("negative shift")
        return IntPolynomial([0] * m + list(self.coeffs)) if self.coeffs else self

    def div_one_minus_t(self) -> "IntPolynomial":
        """Exact quotient by (1 - t); raises if (1 - t) does not divide."""
        if self(1) != 0:
            raise ArithmeticError("polynomial is not divisible by 1 - t")
        # q_k = sum_{i<=k} p_i
        out, acc = [], 0
        for c in self.coeffs[:-1]:
            acc += c
            out.append(acc)
        return IntPolynomial(out)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ONE_MINUS_T = IntPolynomial([1, -1])
T = IntPolynomial([0, 1])


@dataclass(frozen=True)
class HilbertSeries:
    """Rational series ``numerator / (1 - t)^denom_exponent`` kept canonical."""

    numerator: IntPolynomial
    denom_exponent: int

    def __post_init__(self):
        h, d = self.numerator, self.denom_exponent
        if not isinstance(h, IntPolynomial):
            h = IntPolynomial(h)
        if h.is_zero():
            d = 0
        else:
            while h(1) == 0:
                h = h.div_one_minus_t()
                d -= 1
        object.__setattr__(self, "numerator", h)
        object.__setattr__(self, "denom_exponent", d)

    @property
    def h(self) -> IntPolynomial:
        return self.numerator

    @property
    def dim(self) -> int:
        return self.denom_exponent

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        return add(self, other)

    def __str__(self) -> str:
        return f"({self.numerator})/(1-t)^{self.denom_exponent}"

    def coefficients(self, upto: int) -> list[int]:
        """Hilbert function values H(0..upto)."""
        d = self.denom_exponent
        if d < 0:
            num = self.numerator * (ONE_MINUS_T ** (-d))
            return [num[k] for k in range(upto + 1)]
        # 1/(1-t)^d = sum binom(k+d-1, d-1) t^k
        from math import comb

        def inv(k):
            return 1 if d == 0 and k == 0 else (0 if d == 0 else comb(k + d - 1, d - 1))

        return [
            sum(self.numerator[i] * inv(k - i) for i in range(0, k + 1))
            for k in range(upto + 1)
        ]


def add(a: HilbertSeries, b: HilbertSeries) -> HilbertSeries:
    D = max(a.denom_exponent, b.denom_exponent)
    num = a.numerator * ONE_MINUS_T ** (D - a.denom_exponent) + b.numerator * ONE_MINUS_T ** (
        D - b.denom_exponent
    )
    return HilbertSeries(num, D)


def shift(a: HilbertSeries, m: int) -> HilbertSeries:
    return HilbertSeries(a.numerator.shift(m), a.denom_exponent)


def scale_frac(a: HilbertSeries, k: int) -> HilbertSeries:
    """Multiply by 1/(1-t)^k."""
    return HilbertSeries(a.numerator, a.denom_exponent + k)


def series(h, d: int) -> HilbertSeries:
    return HilbertSeries(_as_poly(h) if not isinstance(h, (list, tuple)) else IntPolynomial(h), d)


# --------------------------------------------------------------------------
# monomials and binomials over vertices


@dataclass(frozen=True)
class VertexMonomial:
    """Finitely supported exponent map on lattice points."""

    exps: tuple[tuple[GridPoint, int], ...]

    @classmethod
    def of(cls, *points, exps: Optional[dict] = None) -> "VertexMonomial":
        acc: dict = dict(exps or {})
        for p in points:
            p = GridPoint(*p)
            acc[p] = acc.get(p, 0) + 1
        return cls(tuple(sorted((p, e) for p, e in acc.items() if e)))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def as_dict(self) -> dict:
        return dict(self.exps)

    def __mul__(self, other: "VertexMonomial") -> "VertexMonomial":
        acc = self.as_dict()
        for p, e in other.exps:
            acc[p] = acc.get(p, 0) + e
        return VertexMonomial.of(exps=acc)

    def divides(self, other: "VertexMonomial") -> bool:
        o = other.as_dict()
        return all(o.get(p, 0) >= e for p, e in self.exps)

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for (i, j), e in self.exps:
            parts.append(f"x[{i},{j}]" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)


@dataclass(frozen=True)
class VertexBinomial:
    plus: VertexMonomial
    minus: VertexMonomial

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("a binomial needs two distinct terms")

    def __str__(self) -> str:
        return f"{self.plus} - {self.minus}"


def inner_two_minors(P: CellCollection) -> list[VertexBinomial]:
    """One binomial per inner interval: diagonal minus anti-diagonal product."""
    out = []
    for I in inner_intervals(P):
        a, b = I.diagonal_corners
        c, d = I.anti_diagonal_corners
        out.append(VertexBinomial(VertexMonomial.of(a, b), VertexMonomial.of(c, d)))
    return out


# --------------------------------------------------------------------------
# orders


def base_less(u, v) -> bool:
    """The total order on lattice points: by first coordinate, then second."""
    return (u[0], u[1]) < (v[0], v[1])


@dataclass(frozen=True)
class LexOrderConfig:
    """Lex order on variables x_v where members of ``Y`` dominate non-members
    and each group is ordered by the base point order."""

    Y: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "Y", frozenset(GridPoint(*p) for p in self.Y))

    def var_key(self, v) -> tuple:
        v = GridPoint(*v)
        return (v in self.Y, v.i, v.j)

    def var_less(self, u, v) -> bool:
        return self.var_key(u) < self.var_key(v)

    def variables(self, points: Iterable) -> list[GridPoint]:
        """Points sorted from the smallest variable to the largest."""
        return sorted((GridPoint(*p) for p in points), key=self.var_key)


def lex_compare(order: LexOrderConfig, m1: VertexMonomial, m2: VertexMonomial) -> int:
    """-1, 0 or 1 as m1 <, =, > m2 under the lex order of ``order``."""
    d1, d2 = m1.as_dict(), m2.as_dict()
    support = sorted(set(d1) | set(d2), key=order.var_key, reverse=True)
    for v in support:
        e1, e2 = d1.get(v, 0), d2.get(v, 0)
        if e1 != e2:
            return 1 if e1 > e2 else -1
    return 0


# --------------------------------------------------------------------------
# packed monomials

FIELD = 16
_VALUE_BITS = FIELD - 1
_FIELD_MASK = (1 << _VALUE_BITS) - 1


class BudgetExceeded(RuntimeError):
    """Raised when the S-pair budget runs out; carries the partial state."""

    def __init__(self, message: str, partial_basis=None, pairs_left: int = 0):
        super().__init__(message)
        self.partial_basis = partial_basis or []
        self.pairs_left = pairs_left


class NotFound(RuntimeError):
    pass


class MonomialPacker:
    """Packs vertex monomials into ints so that integer order = lex order."""

    def __init__(self, order: LexOrderConfig, points: Iterable):
        self.order = order
        self.vars = order.variables(points)  # smallest first
        self.n = len(self.vars)
        self.pos = {v: k for k, v in enumerate(self.vars)}
        self.guard = sum(1 << (FIELD * k + _VALUE_BITS) for k in range(self.n))
        self.values = sum(_FIELD_MASK << (FIELD * k) for k in range(self.n))
        self.nbytes = 2 * self.n

    def pack(self, m: VertexMonomial) -> int:
        out = 0
        for p, e in m.exps:
            if e > _FIELD_MASK:
                raise CoefficientOverflow("exponent too large to pack")
            out += e << (FIELD * self.pos[GridPoint(*p)])
        return out

    def unpack(self, x: int) -> VertexMonomial:
        exps = {}
        for k in range(self.n):
            e = (x >> (FIELD * k)) & _FIELD_MASK
            if e:
                exps[self.vars[k]] = e
        return VertexMonomial.of(exps=exps)

    def exponents(self, x: int) -> tuple[int, ...]:
        return tuple((x >> (FIELD * k)) & _FIELD_MASK for k in range(self.n))

    def degree(self, x: int) -> int:
        b = x.to_bytes(self.nbytes, "little")
        return sum(b[0::2]) + 256 * sum(b[1::2])

    def divides(self, a: int, b: int) -> bool:
        H = self.guard
        return ((b | H) - a) & H == H

    def lcm(self, a: int, b: int) -> int:
        H = self.guard
        ge = ((a | H) - b) & H
        mask = ge - (ge >> _VALUE_BITS)
        return (a & mask) | (b & ~mask & self.values)

    def mul(self, a: int, b: int) -> int:
        r = a + b
        if r & self.guard:
            raise CoefficientOverflow("exponent overflow in packed monomial")
        return r

    def coprime(self, a: int, b: int) -> bool:
        return self.lcm(a, b) == a + b


# --------------------------------------------------------------------------
# binomial Buchberger


@dataclass
class GroebnerResult:
    basis: list[VertexBinomial]
    is_groebner_already: bool
    leading_monomials: list[VertexMonomial]
    order: LexOrderConfig
    pairs_processed: int = 0


def _orient(x: int, y: int) -> Optional[tuple[int, int]]:
    if x == y:
        return None
    return (x, y) if x > y else (y, x)


class _Engine:
    def __init__(self, packer: MonomialPacker):
        self.pk = packer
        self.polys: list[tuple[int, int]] = []

    def reduce(self, f: Optional[tuple[int, int]], active: Sequence[int]) -> Optional[tuple[int, int]]:
        """Reduce the leading term of binomial ``f`` until it is irreducible."""
        pk = self.pk
        polys = self.polys
        while f is not None:
            lead, trail = f
            for k in active:
                L, Tm = polys[k]
                if pk.divides(L, lead):
                    f = _orient(lead - L + Tm, trail)
                    break
            else:
                return f
        return None

    def spoly(self, i: int, j: int) -> Optional[tuple[int, int]]:
        (L1, T1), (L2, T2) = self.polys[i], self.polys[j]
        l = self.pk.lcm(L1, L2)
        return _orient(l - L1 + T1, l - L2 + T2)


def _pack_binomials(gens: Sequence[VertexBinomial], packer: MonomialPacker) -> list[tuple[int, int]]:
    out = []
    for g in gens:
        f = _orient(packer.pack(g.plus), packer.pack(g.minus))
        if f is None:
            raise ValueError("zero generator")
        out.append(f)
    return out


def _unpack_binomial(f: tuple[int, int], pk: MonomialPacker) -> VertexBinomial:
    return VertexBinomial(pk.unpack(f[0]), pk.unpack(f[1]))


def _all_points(gens: Sequence[VertexBinomial]) -> set:
    pts = set()
    for g in gens:
        pts.update(p for p, _ in g.plus.exps)
        pts.update(p for p, _ in g.minus.exps)
    return pts


def s_pairs_reduce_to_zero(
    gens: Sequence[VertexBinomial], order: LexOrderConfig, points: Optional[Iterable] = None,
    stop_early: bool = True,
) -> tuple[bool, int]:
    """Check every S-pair of ``gens`` reduces to zero modulo ``gens``.

    Returns (verdict, number of pairs that failed).
    """
    pk = MonomialPacker(order, points if points is not None else _all_points(gens))
    eng = _Engine(pk)
    eng.polys = _pack_binomials(gens, pk)
    active = list(range(len(eng.polys)))
    failures = 0
    for i, j in combinations(active, 2):
        if eng.reduce(eng.spoly(i, j), active) is not None:
            failures += 1
            if stop_early:
                return False, failures
    return failures == 0, failures


def is_groebner_basis(gens: Sequence[VertexBinomial], order: LexOrderConfig) -> bool:
    return s_pairs_reduce_to_zero(gens, order)[0]


def buchberger(
    gens: Sequence[VertexBinomial],
    order: LexOrderConfig,
    budget: Optional[int] = 200_000,
    points: Optional[Iterable] = None,
) -> GroebnerResult:
    """Complete binomial generators to the reduced Gröbner basis.

    Pairs are pruned with the Gebauer-Möller criteria and chosen by the
    normal strategy.  ``budget`` caps the number of S-pairs reduced.
    """
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    pk = MonomialPacker(order, points if points is not None else _all_points(gens))
    eng = _Engine(pk)
    already = s_pairs_reduce_to_zero(gens, order, pk.vars)[0]

    G: list[int] = []
    B: list[tuple[int, int, int, int]] = []  # (deg lcm, lcm, i, j)
    polys = eng.polys

    def update(h: int) -> None:
        nonlocal G, B
        Lh = polys[h][0]
        C = [(g, pk.lcm(polys[g][0], Lh)) for g in G]
        D = []
        while C:
            g1, l1 = C.pop(0)
            if pk.coprime(polys[g1][0], Lh):
                D.append((g1, l1))
                continue
            if any(pk.divides(l2, l1) for _, l2 in C) or any(pk.divides(l2, l1) for _, l2 in D):
                continue
            D.append((g1, l1))
        E = [(g, l) for g, l in D if not pk.coprime(polys[g][0], Lh)]
        keep = []
        for item in B:
            _, l, i, j = item
            if (
                pk.divides(Lh, l)
                and pk.lcm(polys[i][0], Lh) != l
                and pk.lcm(polys[j][0], Lh) != l
            ):
                continue
            keep.append(item)
        keep.extend((pk.degree(l), l, g, h) for g, l in E)
        heapq.heapify(keep)
        B = keep
        G = [g for g in G if not pk.divides(Lh, polys[g][0])] + [h]

    for f in _pack_binomials(gens, pk):
        f = eng.reduce(f, G)
        if f is None:
            continue
        polys.append(f)
        update(len(polys) - 1)

    processed = 0
    while B:
        _, _, i, j = heapq.heappop(B)
        if budget is not None and processed >= budget:
            raise BudgetExceeded(
                f"S-pair budget of {budget} exhausted",
                [_unpack_binomial(polys[g], pk) for g in G],
                len(B) + 1,
            )
        processed += 1
        h = eng.reduce(eng.spoly(i, j), G)
        if h is None:
            continue
        polys.append(h)
        update(len(polys) - 1)

    # reduced basis: G already has minimal leads; tail-reduce
    final = []
    leads = [polys[g][0] for g in G]
    for g in G:
        L, Tm = polys[g]
        changed = True
        while changed:
            changed = False
            for k, g2 in enumerate(G):
                if g2 != g and pk.divides(leads[k], Tm):
                    L2, T2 = polys[g2]
                    Tm = Tm - L2 + T2
                    changed = True
                    break
        final.append((L, Tm))
    final.sort(reverse=True)
    for L, Tm in final:
        if L <= Tm:
            raise AssertionError("binomial closure violated during tail reduction")
    return GroebnerResult(
        basis=[_unpack_binomial(f, pk) for f in final],
        is_groebner_already=already,
        leading_monomials=[pk.unpack(L) for L, _ in final],
        order=order,
        pairs_processed=processed,
    )


# --------------------------------------------------------------------------
# searching for a lex order under which the generators already form a basis


def find_groebner_lex_order(
    P: CellCollection,
    anchors_in: Iterable = (),
    anchors_out: Iterable = (),
    budget: int = 1 << 12,
) -> LexOrderConfig:
    """Search Y with ``anchors_in ⊆ Y`` and ``anchors_out ∩ Y = ∅`` such that
    the inner 2-minors pass the S-pair test.

    Greedy descent on the number of failing S-pairs, with bounded
    backtracking; ``budget`` caps the number of candidate sets tested.
    """
    gens = inner_two_minors(P)
    pts = sorted(P.vertices)
    fixed_in = frozenset(GridPoint(*p) for p in anchors_in)
    fixed_out = frozenset(GridPoint(*p) for p in anchors_out)
    if fixed_in & fixed_out:
        raise ValueError("anchor sets overlap")
    free = [p for p in pts if p not in fixed_in and p not in fixed_out]
    tested = 0
    seen: dict[frozenset, int] = {}

    def score(Y: frozenset) -> int:
        nonlocal tested
        if Y in seen:
            return seen[Y]
        if tested >= budget:
            raise NotFound(f"no Gröbner lex order found within {budget} candidates")
        tested += 1
        s = s_pairs_reduce_to_zero(gens, LexOrderConfig(Y), pts, stop_early=False)[1]
        seen[Y] = s
        return s

    # depth-first greedy with backtracking over alternatives ranked by score
    def descend(Y: frozenset, depth: int) -> Optional[frozenset]:
        s = score(Y)
        if s == 0:
            return Y
        if depth == 0:
            return None
        moves = []
        for p in free:
            Z = Y - {p} if p in Y else Y | {p}
            if Z in seen and seen[Z] >= s:
                continue
            moves.append((score(Z), sorted(Z), Z))
        moves.sort(key=lambda m: (m[0], m[1]))
        for sz, _, Z in moves[:3]:
            if sz < s:
                found = descend(Z, depth - 1)
                if found is not None:
                    return found
        return None

    try:
        for start in (fixed_in, fixed_in | frozenset(free)):
            Y = descend(start, len(free) + 1)
            if Y is not None:
                return LexOrderConfig(Y)
    except NotFound:
        raise
    raise NotFound("greedy search exhausted without a Gröbner lex order")


# --------------------------------------------------------------------------
# Hilbert series of monomial quotients

IE_CUTOFF = 20


class _Lattice:
    """Packed-int monomial helpers for a fixed number of variables."""

    def __init__(self, nvars: int):
        self.n = nvars
        self.guard = sum(1 << (FIELD * k + _VALUE_BITS) for k in range(nvars))
        self.values = sum(_FIELD_MASK << (FIELD * k) for k in range(nvars))
        self.nbytes = max(2 * nvars, 2)

    def lcm(self, a: int, b: int) -> int:
        H = self.guard
        ge = ((a | H) - b) & H
        mask = ge - (ge >> _VALUE_BITS)
        return (a & mask) | (b & ~mask & self.values)

    def divides(self, a: int, b: int) -> bool:
        H = self.guard
        return ((b | H) - a) & H == H

    def degree(self, x: int) -> int:
        b = x.to_bytes(self.nbytes, "little")
        return sum(b[0::2]) + 256 * sum(b[1::2])

    def support(self, x: int) -> list[int]:
        out = []
        k = 0
        while x:
            if x & _FIELD_MASK:
                out.append(k)
            x >>= FIELD
            k += 1
        return out

    def exponent(self, x: int, k: int) -> int:
        return (x >> (FIELD * k)) & _FIELD_MASK


def _minimalize(gens: Iterable[int], lat: _Lattice) -> tuple[int, ...]:
    gens = sorted(set(gens), key=lambda g: (lat.degree(g), g))
    out: list[int] = []
    for g in gens:
        if not any(lat.divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _ie_numerator(gens: Sequence[int], lat: _Lattice) -> IntPolynomial:
    """Inclusion-exclusion over the lcm lattice: prod over generators of (1 - [g])."""
    terms: dict[int, int] = {0: 1}
    lcm = lat.lcm
    for g in gens:
        new = dict(terms)
        for m, c in terms.items():
            l = lcm(m, g)
            new[l] = new.get(l, 0) - c
        terms = {m: c for m, c in new.items() if c}
    coeffs: dict[int, int] = {}
    for m, c in terms.items():
        d = lat.degree(m)
        coeffs[d] = coeffs.get(d, 0) + c
    top = max(coeffs) if coeffs else 0
    return IntPolynomial(coeffs.get(k, 0) for k in range(top + 1))


def _components(gens: Sequence[int], lat: _Lattice) -> list[list[int]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    supports = [lat.support(g) for g in gens]
    for vs in supports:
        for v in vs:
            parent.setdefault(v, v)
        for v in vs[1:]:
            ra, rb = find(vs[0]), find(v)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for g, vs in zip(gens, supports):
        groups.setdefault(find(vs[0]), []).append(g)
    return list(groups.values())


def _numerator(gens: tuple[int, ...], lat: _Lattice, memo: dict, cutoff: int) -> IntPolynomial:
    """K-polynomial of S/(gens), i.e. the numerator over (1-t)^nvars."""
    if gens in memo:
        return memo[gens]
    if not gens:
        res = IntPolynomial([1])
    elif all(len(lat.support(g)) == 1 for g in gens):
        # pure powers of distinct variables (gens are minimal): a complete intersection
        res = IntPolynomial([1])
        for g in gens:
            res = res * (IntPolynomial([1]) - IntPolynomial.monomial(lat.degree(g)))
    elif len(gens) <= cutoff:
        res = _ie_numerator(gens, lat)
    else:
        comps = _components(gens, lat)
        if len(comps) > 1:
            res = IntPolynomial([1])
            for comp in comps:
                res = res * _numerator(_minimalize(comp, lat), lat, memo, cutoff)
        else:
            counts: dict[int, int] = {}
            for g in gens:
                for v in lat.support(g):
                    counts[v] = counts.get(v, 0) + 1
            x = max(counts, key=lambda v: (counts[v], -v))
            unit = 1 << (FIELD * x)
            # HS(S/I) = HS(S/(I + x)) + t HS(S/(I : x))
            plus = [g for g in gens if not lat.exponent(g, x)] + [unit]
            colon = [g - unit if lat.exponent(g, x) else g for g in gens]
            if 0 in colon:
                colon_num = IntPolynomial()
            else:
                colon_num = _numerator(_minimalize(colon, lat), lat, memo, cutoff)
            res = _numerator(_minimalize(plus, lat), lat, memo, cutoff) + colon_num.shift(1)
    memo[gens] = res
    return res


def monomial_hilbert_series(
    gens: Iterable[VertexMonomial], nvars: int, cutoff: int = IE_CUTOFF
) -> HilbertSeries:
    """Hilbert series of S/I for a monomial ideal I in ``nvars`` variables."""
    gens = list(gens)
    points = sorted({p for g in gens for p, _ in g.exps})
    if len(points) > nvars:
        raise ValueError("generators use more variables than nvars")
    index = {p: k for k, p in enumerate(points)}
    lat = _Lattice(max(len(points), 1))
    packed = []
    for g in gens:
        if g.degree == 0:
            raise ValueError("the unit ideal has no Hilbert series here")
        x = 0
        for p, e in g.exps:
            if e > _FIELD_MASK:
                raise CoefficientOverflow("exponent too large to pack")
            x += e << (FIELD * index[p])
        packed.append(x)
    return HilbertSeries(_numerator(_minimalize(packed, lat), lat, {}, cutoff), nvars)


def standard_monomial_counts(leads: Sequence[VertexMonomial], points: Iterable, upto: int) -> list[int]:
    """Count monomials not divisible by any lead, degree by degree (test oracle)."""
    pts = sorted(GridPoint(*p) for p in points)
    lead_dicts = [g.as_dict() for g in leads]
    counts = [0] * (upto + 1)

    def divisible(cur: dict) -> bool:
        return any(all(cur.get(p, 0) >= e for p, e in L.items()) for L in lead_dicts)

    def rec(start: int, deg: int, cur: dict) -> None:
        counts[deg] += 1
        if deg == upto:
            return
        for k in range(start, len(pts)):
            p = pts[k]
            cur[p] = cur.get(p, 0) + 1
            # multiples of a divisible monomial stay divisible
            if not divisible(cur):
                rec(k, deg + 1, cur)
            cur[p] -= 1
            if not cur[p]:
                del cur[p]

    rec(0, 0, {})
    return counts


# --------------------------------------------------------------------------
# the oracle


@dataclass
class OracleResult:
    series: HilbertSeries
    order: LexOrderConfig
    order_found: bool  # True if the generators already formed a basis
    groebner: GroebnerResult


def hilbert_series_oracle_detail(
    P: CellCollection,
    order: Optional[LexOrderConfig] = None,
    search: bool = False,
    anchors_in: Iterable = (),
    anchors_out: Iterable = (),
    budget: Optional[int] = 200_000,
    search_budget: int = 1 << 12,
) -> OracleResult:
    gens = inner_two_minors(P)
    found = False
    if order is None and search:
        try:
            order = find_groebner_lex_order(P, anchors_in, anchors_out, search_budget)
            found = True
        except NotFound:
            order = None
    if order is None:
        order = LexOrderConfig()
    res = buchberger(gens, order, budget=budget, points=P.vertices)
    hs = monomial_hilbert_series(res.leading_monomials, len(P.vertices))
    return OracleResult(hs, order, found or res.is_groebner_already, res)


def hilbert_series_oracle(P: CellCollection, **kw) -> HilbertSeries:
    """HP of K[P] read off the initial ideal of the polyomino ideal."""
    return hilbert_series_oracle_detail(P, **kw).series
