"""Symbolic octagon predicates  +/-x +/-y >= c  over a truncated constant window.

Constants live in the window [-C+1, C], which is closed under the
complement map c -> -c+1, so negation is a total involution on the
carrier.  The concrete side is a finite grid [-N, N]^2 with the guard
N >= 4C: every inclusion and incomparability that holds over the full
integer plane is then witnessed on the grid, and symbolic feasibility
agrees with grid nonemptiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .concrete import Abstraction, ConcreteUniverse, ConcretizationMap
from .errors import GridGuardViolated, UnknownElement, WindowOverflow
from .lattice import (
    FiniteLattice,
    UnaryOpTable,
    build_lattice,
    find_order_reversing_involutions,
    is_join_irreducible,
    is_meet_irreducible,
)

# slope order fixed for deterministic carriers and names
SLOPES: tuple[tuple[int, int], ...] = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _sgn(v: int) -> str:
    return "+" if v > 0 else "-"


@dataclass(frozen=True, order=True)
class OctPredicate:
    """The constraint  sx*x + sy*y >= c  with sx, sy in {+1, -1}."""

    sx: int
    sy: int
    c: int

    @property
    def name(self) -> str:
        return f"p:{_sgn(self.sx)}x{_sgn(self.sy)}y>={self.c}"

    def holds(self, x: int, y: int) -> bool:
        return self.sx * x + self.sy * y >= self.c


def window_constants(window_c: int) -> range:
    """The constant window [-C+1, C]."""
    return range(-window_c + 1, window_c + 1)


def oct_complement(p: OctPredicate, window_c: int) -> OctPredicate:
    """Pointwise set complement: flip both signs, send c to -c+1."""
    nc = -p.c + 1
    if nc not in window_constants(window_c):
        raise WindowOverflow(f"complement constant {nc} leaves the window")
    return OctPredicate(-p.sx, -p.sy, nc)


@dataclass
class OctLattice:
    """Top, bottom and four disjoint chains of half-plane predicates."""

    window_c: int
    predicates: tuple[OctPredicate, ...]

    @classmethod
    def build(cls, window_c: int) -> "OctLattice":
        if window_c < 1:
            raise WindowOverflow("the window parameter must be at least 1")
        preds = tuple(OctPredicate(sx, sy, c)
                      for (sx, sy) in SLOPES for c in window_constants(window_c))
        return cls(window_c, preds)

    @property
    def carrier(self) -> tuple[str, ...]:
        return ("bot", "top") + tuple(p.name for p in self.predicates)

    def by_name(self, name: str) -> OctPredicate:
        for p in self.predicates:
            if p.name == name:
                return p
        raise UnknownElement(f"unknown octagon element {name!r}")


def build_oct_lattice(window_c: int) -> OctLattice:
    return OctLattice.build(window_c)


def oct_leq(lat: OctLattice, a: OctPredicate | str, b: OctPredicate | str) -> bool:
    """bot below everything, top above; same slope compares by constant
    (a larger threshold cuts a smaller half-plane); distinct slopes are
    incomparable."""
    if a == "bot" or b == "top":
        return True
    if a == "top":
        return b == "top"
    if b == "bot":
        return a == "bot"
    pa = lat.by_name(a) if isinstance(a, str) else a
    pb = lat.by_name(b) if isinstance(b, str) else b
    return (pa.sx, pa.sy) == (pb.sx, pb.sy) and pa.c >= pb.c


@dataclass(frozen=True)
class OctRegion:
    """At most one constraint per slope class, in rotated coordinates
    u = x+y and w = x-y: interval bounds (None = unbounded)."""

    u_lo: int | None = None
    u_hi: int | None = None
    w_lo: int | None = None
    w_hi: int | None = None

    @classmethod
    def from_predicates(cls, preds) -> "OctRegion":
        u_lo = u_hi = w_lo = w_hi = None
        for p in preds:
            if (p.sx, p.sy) == (1, 1):        # x+y >= c
                u_lo = p.c if u_lo is None else max(u_lo, p.c)
            elif (p.sx, p.sy) == (-1, -1):    # x+y <= -c
                u_hi = -p.c if u_hi is None else min(u_hi, -p.c)
            elif (p.sx, p.sy) == (1, -1):     # x-y >= c
                w_lo = p.c if w_lo is None else max(w_lo, p.c)
            else:                             # x-y <= -c
                w_hi = -p.c if w_hi is None else min(w_hi, -p.c)
        return cls(u_lo, u_hi, w_lo, w_hi)


def _interval_size(lo: int | None, hi: int | None) -> int | None:
    """None for infinite, else the number of integers in [lo, hi]."""
    if lo is None or hi is None:
        return None
    return max(0, hi - lo + 1)


def meet_feasible(region: OctRegion) -> bool:
    """Nonemptiness over the integer plane.

    x = (u+w)/2 and y = (u-w)/2 must be integers, so a point exists iff
    both intervals are nonempty and admit u = w (mod 2); an interval with
    two or more integers contains both parities.
    """
    su = _interval_size(region.u_lo, region.u_hi)
    sw = _interval_size(region.w_lo, region.w_hi)
    if su == 0 or sw == 0:
        return False
    if su == 1 and sw == 1:
        return (region.u_lo - region.w_lo) % 2 == 0
    if su == 1:
        return True  # w-interval has >= 2 integers (or is infinite)
    if sw == 1:
        return True
    return True


def grid_universe(grid_n: int) -> ConcreteUniverse:
    return ConcreteUniverse.window(-grid_n, grid_n, dim=2)


def grid_gamma(lat: OctLattice, element: OctPredicate | str, grid_n: int) -> frozenset:
    pts = grid_universe(grid_n).point_set
    if element == "top":
        return pts
    if element == "bot":
        return frozenset()
    p = lat.by_name(element) if isinstance(element, str) else element
    return frozenset((x, y) for (x, y) in pts if p.holds(x, y))


def infeasible_pairs(lat: OctLattice) -> list[tuple[OctPredicate, OctPredicate]]:
    """All unordered predicate pairs with empty planar intersection."""
    out = []
    for p, q in combinations(lat.predicates, 2):
        if not meet_feasible(OctRegion.from_predicates((p, q))):
            out.append((p, q))
    return out


def hemisphere_negation(lat: OctLattice) -> UnaryOpTable:
    """Swap top/bottom and send each predicate to its set complement.

    Checked here to be an involution and order-reversing; grid agreement
    with the pointwise complement is exercised by the verification suite.
    """
    table = {"top": "bot", "bot": "top"}
    for p in lat.predicates:
        table[p.name] = oct_complement(p, lat.window_c).name
    for name, image in table.items():
        assert table[image] == name, "negation is not an involution"
    for a in lat.carrier:
        for b in lat.carrier:
            if oct_leq(lat, a, b):
                assert oct_leq(lat, table[b], table[a]), \
                    "negation is not order-reversing"
    return UnaryOpTable("negation", table)


def to_finite_lattice(lat: OctLattice) -> FiniteLattice:
    pairs = [(a, b) for a in lat.carrier for b in lat.carrier
             if a != b and oct_leq(lat, a, b)]
    return build_lattice(lat.carrier, pairs, closure_mode="full",
                         unary_ops={"negation": hemisphere_negation(lat)})


def export_abstraction(lat: OctLattice, grid_n: int) -> Abstraction:
    """Realize the octagon lattice over the finite grid for the generic
    pipeline, including one infeasibility axiom per infeasible pair."""
    if grid_n < 4 * lat.window_c:
        raise GridGuardViolated(
            f"grid N = {grid_n} violates the guard N >= 4C = {4 * lat.window_c}")
    finite = to_finite_lattice(lat)
    uni = grid_universe(grid_n)
    table = {name: uni.subset(grid_gamma(lat, name, grid_n))
             for name in lat.carrier}
    gamma = ConcretizationMap(finite, uni, table)
    axioms = []
    for i, (p, q) in enumerate(infeasible_pairs(lat)):
        axioms.append((f"axiom.{i:03d}", f"{p.name}(x,y), {q.name}(x,y) |- ff"))
    return Abstraction(f"octagon-c{lat.window_c}", finite, gamma,
                       var_names=("x", "y"), extra_axioms=tuple(axioms))


def verify_irreducibility(lat: OctLattice) -> bool:
    """Every element that is neither top nor bottom is both meet- and
    join-irreducible."""
    finite = to_finite_lattice(lat)
    return all(
        is_meet_irreducible(finite, p.name) and is_join_irreducible(finite, p.name)
        for p in lat.predicates)


@dataclass
class ConjunctionWitness:
    p: OctPredicate
    q: OctPredicate
    grid_n: int
    # candidate name -> a grid point separating gamma(candidate) from
    # gamma(p) & gamma(q)
    separations: dict[str, tuple[int, int]]

    @property
    def complete(self) -> bool:
        return bool(self.separations)


def conjunction_nonpreservation_witness(
        window_c: int,
        p: OctPredicate | None = None,
        q: OctPredicate | None = None) -> ConjunctionWitness:
    """No carrier element concretizes to gamma(p) & gamma(q).

    Defaults to the quarter-plane pair x+y >= 0, x-y >= 0; for every
    candidate element a distinguishing grid point (N = 4C) is produced.
    """
    lat = OctLattice.build(window_c)
    p = p or OctPredicate(1, 1, 0)
    q = q or OctPredicate(1, -1, 0)
    if (p.sx, p.sy) == (q.sx, q.sy):
        raise WindowOverflow(
            "same-slope pairs have representable meets; pick distinct slopes")
    grid_n = 4 * window_c
    target = grid_gamma(lat, p, grid_n) & grid_gamma(lat, q, grid_n)
    separations: dict[str, tuple[int, int]] = {}
    for name in lat.carrier:
        image = grid_gamma(lat, name, grid_n)
        diff = image ^ target
        if not diff:
            return ConjunctionWitness(p, q, grid_n, {})
        separations[name] = min(diff)
    return ConjunctionWitness(p, q, grid_n, separations)


@dataclass
class DegenerateModelReport:
    involution_ok: bool
    order_reversing_ok: bool
    distinct_from_octagons: bool
    swapped_model_found: bool

    @property
    def ok(self) -> bool:
        return (self.involution_ok and self.order_reversing_ok
                and self.distinct_from_octagons and self.swapped_model_found)


def degenerate_model_check() -> DegenerateModelReport:
    """The four-element lattice with self-negating middles satisfies the
    involution and order-reversal axioms, so negation-only logic admits it
    as a model; it is not the shape of any truncated octagon lattice."""
    dia = build_lattice(
        ["bot", "A", "B", "top"],
        [("bot", "A"), ("bot", "B"), ("A", "top"), ("B", "top")])
    neg = {"top": "bot", "bot": "top", "A": "A", "B": "B"}
    involution_ok = all(neg[neg[a]] == a for a in dia.elements)
    order_reversing_ok = all(
        dia.leq(neg[b], neg[a])
        for a in dia.elements for b in dia.elements if dia.leq(a, b))
    # carrier sizes 2 + 8C never equal 4 for C >= 1
    distinct = all(4 != 2 + 8 * c for c in range(1, 65))
    involutions = find_order_reversing_involutions(dia)
    tables = [t.table for t in involutions]
    swapped = {"top": "bot", "bot": "top", "A": "B", "B": "A"}
    return DegenerateModelReport(
        involution_ok, order_reversing_ok, distinct,
        neg in tables and swapped in tables)
