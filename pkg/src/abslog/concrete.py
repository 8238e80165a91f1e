"""Finite concrete powerset domains and concretization maps.

A universe is a finite ordered set of points: opaque atoms or integer
tuples drawn from a bounded window.  Concrete sets are plain frozensets
over those points; the connective-preservation analysis, order-embedding
check and left-adjoint construction all reduce to exhaustive set
comparisons at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import InvalidConcretization, UnknownElement, UnknownOperation
from .lattice import FiniteLattice, co_implication, heyting_implication, is_distributive


class ConcreteUniverse:
    """Finite ordered point set (atoms, or an integer window of some dimension)."""

    def __init__(self, points, kind: str, params):
        self.points: tuple = tuple(points)
        self.point_set: frozenset = frozenset(self.points)
        self.kind = kind          # "atoms" | "window"
        self.params = params      # tuple of atom names, or (lo, hi, dim)
        if not self.points:
            raise InvalidConcretization("empty universe")
        if len(self.point_set) != len(self.points):
            raise InvalidConcretization("duplicate points in universe")

    @classmethod
    def atoms(cls, names) -> "ConcreteUniverse":
        names = tuple(sorted(names))
        return cls(names, "atoms", names)

    @classmethod
    def window(cls, lo: int, hi: int, dim: int = 1) -> "ConcreteUniverse":
        if lo > hi:
            raise InvalidConcretization(f"empty window [{lo}, {hi}]")
        axis = range(lo, hi + 1)
        if dim == 1:
            pts = tuple(axis)
        else:
            pts = tuple(iproduct(axis, repeat=dim))
        return cls(pts, "window", (lo, hi, dim))

    def describe(self) -> str:
        if self.kind == "atoms":
            return "atoms " + " ".join(self.params)
        lo, hi, dim = self.params
        base = f"window {lo} {hi}"
        return base if dim == 1 else f"{base} dim {dim}"

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConcreteUniverse) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def full(self) -> "ConcreteSet":
        return ConcreteSet(self, self.point_set)

    def empty(self) -> "ConcreteSet":
        return ConcreteSet(self, frozenset())

    def subset(self, members) -> "ConcreteSet":
        return ConcreteSet(self, frozenset(members))


@dataclass(frozen=True)
class ConcreteSet:
    """Subset of a universe's points."""

    universe: ConcreteUniverse
    members: frozenset

    def __post_init__(self):
        if not self.members <= self.universe.point_set:
            bad = sorted(self.members - self.universe.point_set, key=repr)[0]
            raise InvalidConcretization(f"point {bad!r} is not in the universe")

    def _check(self, other: "ConcreteSet") -> None:
        if self.universe != other.universe:
            raise InvalidConcretization("operands live in different universes")

    def union(self, other: "ConcreteSet") -> "ConcreteSet":
        self._check(other)
        return ConcreteSet(self.universe, self.members | other.members)

    def intersection(self, other: "ConcreteSet") -> "ConcreteSet":
        self._check(other)
        return ConcreteSet(self.universe, self.members & other.members)

    def complement(self) -> "ConcreteSet":
        return ConcreteSet(self.universe, self.universe.point_set - self.members)

    def difference(self, other: "ConcreteSet") -> "ConcreteSet":
        self._check(other)
        return ConcreteSet(self.universe, self.members - other.members)

    def issubset(self, other: "ConcreteSet") -> bool:
        self._check(other)
        return self.members <= other.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_points(self) -> list:
        return sorted(self.members, key=lambda p: (str(type(p)), p))


def concrete_op(universe: ConcreteUniverse, op_name: str, *args: ConcreteSet) -> ConcreteSet:
    """Apply a named concrete (Boolean) operation over a universe."""
    if op_name == "full":
        return universe.full()
    if op_name == "empty":
        return universe.empty()
    if op_name == "complement":
        (x,) = args
        return x.complement()
    if op_name == "intersection":
        x, y = args
        return x.intersection(y)
    if op_name == "union":
        x, y = args
        return x.union(y)
    if op_name == "implication":
        x, y = args
        return x.complement().union(y)
    if op_name == "coimplication":
        x, y = args
        return x.difference(y)
    raise UnknownOperation(f"unknown concrete operation {op_name!r}")


class ConcretizationMap:
    """Total monotone map from lattice elements to concrete sets."""

    def __init__(self, source: FiniteLattice, target: ConcreteUniverse,
                 table: dict[str, ConcreteSet]):
        self.source = source
        self.target = target
        self.table = dict(table)
        for e in source.elements:
            if e not in self.table:
                raise InvalidConcretization(f"gamma missing entry for {e!r}")
            if self.table[e].universe != target:
                raise InvalidConcretization(f"gamma({e!r}) lives in the wrong universe")
        for e in self.table:
            if e not in source.index:
                raise UnknownElement(f"gamma defined on unknown element {e!r}")
        for a in source.elements:
            for b in source.elements:
                if source.leq(a, b) and not self.table[a].issubset(self.table[b]):
                    raise InvalidConcretization(
                        f"gamma is not monotone on ({a!r}, {b!r})")

    def __call__(self, element: str) -> ConcreteSet:
        try:
            return self.table[element]
        except KeyError:
            raise UnknownElement(f"unknown element {element!r}") from None


@dataclass
class Abstraction:
    """A finite lattice packaged with its concretization map.

    ``extra_axioms`` carries additional axiom sequents (name, sequent text)
    that the proof-system generator appends verbatim; the octagon export
    uses it for pairwise infeasibility axioms.
    """

    name: str
    lattice: FiniteLattice
    gamma: ConcretizationMap
    var_names: tuple[str, ...] = ("x",)
    extra_axioms: tuple[tuple[str, str], ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.gamma.source is not self.lattice:
            raise InvalidConcretization("gamma.source is not the packaged lattice")

    @property
    def universe(self) -> ConcreteUniverse:
        return self.gamma.target


CANDIDATE_CONNECTIVES = ("tt", "ff", "and", "or", "not", "impl", "coimpl")

PRESERVED = "preserved"
NOT_PRESERVED = "not_preserved"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PreservationStatus:
    connective: str
    state: str
    witness: tuple[str, ...] | None = None
    detail: str = ""


@dataclass
class PreservationReport:
    """Per-connective preservation verdicts for one abstraction."""

    statuses: dict[str, PreservationStatus]

    def preserved(self) -> frozenset[str]:
        return frozenset(c for c, s in self.statuses.items() if s.state == PRESERVED)

    def lines(self) -> list[str]:
        out = []
        for c in CANDIDATE_CONNECTIVES:
            s = self.statuses[c]
            if s.state == PRESERVED:
                out.append(f"{c}: preserved")
            elif s.state == NOT_PRESERVED:
                out.append(f"{c}: NOT preserved ({s.detail})")
            else:
                out.append(f"{c}: not applicable ({s.detail})")
        return out


def _binary_status(abs_: Abstraction, conn: str, abstract_op, concrete_name: str) -> PreservationStatus:
    gamma = abs_.gamma
    uni = abs_.universe
    for a in abs_.lattice.elements:
        for b in abs_.lattice.elements:
            lhs = gamma(abstract_op(a, b))
            rhs = concrete_op(uni, concrete_name, gamma(a), gamma(b))
            if lhs.members != rhs.members:
                diff = (lhs.members | rhs.members) - (lhs.members & rhs.members)
                pt = sorted(diff, key=repr)[0]
                return PreservationStatus(
                    conn, NOT_PRESERVED, (a, b),
                    f"witness a={a} b={b}, first differing point {pt!r}")
    return PreservationStatus(conn, PRESERVED)


def preservation_report(abs_: Abstraction) -> PreservationReport:
    """Exhaustively decide which candidate connectives gamma preserves."""
    lat = abs_.lattice
    gamma = abs_.gamma
    statuses: dict[str, PreservationStatus] = {}

    if gamma(lat.top).members == abs_.universe.point_set:
        statuses["tt"] = PreservationStatus("tt", PRESERVED)
    else:
        statuses["tt"] = PreservationStatus(
            "tt", NOT_PRESERVED, (lat.top,), f"gamma({lat.top}) is not the whole universe")
    if not gamma(lat.bottom).members:
        statuses["ff"] = PreservationStatus("ff", PRESERVED)
    else:
        statuses["ff"] = PreservationStatus(
            "ff", NOT_PRESERVED, (lat.bottom,), f"gamma({lat.bottom}) is nonempty")

    statuses["and"] = _binary_status(abs_, "and", lat.meet, "intersection")
    statuses["or"] = _binary_status(abs_, "or", lat.join, "union")

    neg = lat.unary_ops.get("negation")
    if neg is None:
        statuses["not"] = PreservationStatus(
            "not", NOT_APPLICABLE, None, "no negation operation declared")
    else:
        status = PreservationStatus("not", PRESERVED)
        for a in lat.elements:
            lhs = gamma(neg.table[a])
            rhs = gamma(a).complement()
            if lhs.members != rhs.members:
                diff = (lhs.members | rhs.members) - (lhs.members & rhs.members)
                pt = sorted(diff, key=repr)[0]
                status = PreservationStatus(
                    "not", NOT_PRESERVED, (a,),
                    f"witness a={a}, first differing point {pt!r}")
                break
        statuses["not"] = status

    if is_distributive(lat):
        statuses["impl"] = _binary_status(
            abs_, "impl", lambda a, b: heyting_implication(lat, a, b), "implication")
        statuses["coimpl"] = _binary_status(
            abs_, "coimpl", lambda a, b: co_implication(lat, a, b), "coimplication")
    else:
        statuses["impl"] = PreservationStatus(
            "impl", NOT_APPLICABLE, None, "lattice not distributive")
        statuses["coimpl"] = PreservationStatus(
            "coimpl", NOT_APPLICABLE, None, "lattice not distributive")

    return PreservationReport(statuses)


@dataclass(frozen=True)
class EmbeddingResult:
    is_embedding: bool
    witness: tuple[str, str] | None = None


def check_order_embedding(abs_: Abstraction) -> EmbeddingResult:
    """a <= b iff gamma(a) included in gamma(b), exhaustively over pairs.

    Monotonicity is a construction invariant of the map, so only the
    reflection direction can fail; the witness is a pair with
    gamma(a) included in gamma(b) but a not below b.
    """
    lat = abs_.lattice
    gamma = abs_.gamma
    for a in lat.elements:
        for b in lat.elements:
            if gamma(a).issubset(gamma(b)) and not lat.leq(a, b):
                return EmbeddingResult(False, (a, b))
    return EmbeddingResult(True)


@dataclass
class AdjointResult:
    total: bool
    alpha: object = None                 # callable ConcreteSet -> element name
    witness: ConcreteSet | None = None
    reason: str = ""


def compute_left_adjoint(abs_: Abstraction) -> AdjointResult:
    """Decide existence of the abstraction map and return it as a query function.

    Between finite lattices a monotone map is a right adjoint exactly when
    it preserves all meets, i.e. binary meets and the empty meet (top maps
    to the whole universe).  When either fails, a concrete set with no
    least over-approximation is returned as witness.
    """
    lat = abs_.lattice
    gamma = abs_.gamma
    uni = abs_.universe
    if gamma(lat.top).members != uni.point_set:
        return AdjointResult(
            False, witness=uni.full(),
            reason=f"gamma({lat.top}) is not the whole universe, so the full "
                   "set has no over-approximation")
    for a in lat.elements:
        for b in lat.elements:
            inter = gamma(a).intersection(gamma(b))
            if gamma(lat.meet(a, b)).members != inter.members:
                return AdjointResult(
                    False, witness=inter,
                    reason=f"gamma does not preserve meet({a}, {b}); that "
                           "intersection has no least over-approximation")

    def alpha(s: ConcreteSet) -> str:
        if s.universe != uni:
            raise InvalidConcretization("alpha queried outside the universe")
        best = lat.top
        for e in lat.elements:
            if s.issubset(gamma(e)):
                best = lat.meet(best, e)
        return best

    return AdjointResult(True, alpha=alpha)
