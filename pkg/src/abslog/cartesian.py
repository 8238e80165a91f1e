"""Products of abstractions and the tuple-of-sets to set-of-tuples embedding.

``iota`` sends an axis-wise tuple of sets to its Cartesian product;
``rectangle_closure`` (axis-wise projections) is its left adjoint, so
``iota`` preserves all meets.  Exhaustive small-window checks of the
adjunction, meet preservation and injectivity-off-empty-axes live here
alongside the product construction itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as iproduct

from .concrete import Abstraction, ConcreteSet, ConcreteUniverse, ConcretizationMap
from .errors import CarrierTooLarge, InvalidConcretization
from .lattice import FiniteLattice
from .specfile import default_var_names

ELEMENT_SEP = "*"


@dataclass(frozen=True)
class Rectangle:
    """One concrete set per axis."""

    axes: tuple[ConcreteSet, ...]

    def componentwise_leq(self, other: "Rectangle") -> bool:
        return all(a.issubset(b) for a, b in zip(self.axes, other.axes))

    def meet(self, other: "Rectangle") -> "Rectangle":
        return Rectangle(tuple(a.intersection(b)
                               for a, b in zip(self.axes, other.axes)))


def tuple_universe(axis_universes) -> ConcreteUniverse:
    """The product universe; all axes must share one integer window."""
    windows = set()
    for u in axis_universes:
        if u.kind != "window" or u.params[2] != 1:
            raise InvalidConcretization(
                "product axes must be one-dimensional integer windows")
        windows.add(u.params[:2])
    if len(windows) != 1:
        raise InvalidConcretization(f"axis windows differ: {sorted(windows)}")
    lo, hi = windows.pop()
    return ConcreteUniverse.window(lo, hi, dim=len(list(axis_universes)))


def iota(rect: Rectangle, target: ConcreteUniverse) -> ConcreteSet:
    """Cartesian product of the axes, as a set of tuples."""
    members = frozenset(iproduct(*(a.members for a in rect.axes)))
    return ConcreteSet(target, members)


def rectangle_closure(r: ConcreteSet) -> Rectangle:
    """Axis-wise projections: the smallest rectangle containing r."""
    uni = r.universe
    if uni.kind != "window" or uni.params[2] < 2:
        raise InvalidConcretization("rectangle closure needs a tuple universe")
    lo, hi, dim = uni.params
    axis = ConcreteUniverse.window(lo, hi)
    return Rectangle(tuple(
        axis.subset(frozenset(p[k] for p in r.members)) for k in range(dim)))


@dataclass
class ProductAbstraction:
    components: tuple[Abstraction, ...]
    abstraction: Abstraction  # composite, over the tuple universe

    def gamma_prime(self, element: str) -> Rectangle:
        """Componentwise concretization of a product element."""
        parts = element.split(ELEMENT_SEP)
        return Rectangle(tuple(c.gamma(p)
                               for c, p in zip(self.components, parts)))


def product(components, name: str | None = None,
            max_carrier: int = 4096, max_points: int = 10_000) -> ProductAbstraction:
    """Componentwise product lattice with composite gamma = iota after gamma'."""
    components = tuple(components)
    if not components:
        raise InvalidConcretization("a product needs at least one component")
    size = 1
    for c in components:
        size *= len(c.lattice.elements)
    if size > max_carrier:
        raise CarrierTooLarge(f"product carrier {size} exceeds {max_carrier}")
    uni = tuple_universe([c.universe for c in components])
    if len(uni) > max_points:
        raise CarrierTooLarge(f"tuple universe {len(uni)} exceeds {max_points}")

    lattices = [c.lattice for c in components]
    tuples = list(iproduct(*(l.elements for l in lattices)))
    names = [ELEMENT_SEP.join(t) for t in tuples]
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)

    def cw_leq(s, t):
        return all(l.leq(a, b) for l, a, b in zip(lattices, s, t))

    leq = [[cw_leq(s, t) for t in tuples] for s in tuples]
    meet_idx = [[index[tuple(l.meet(a, b) for l, a, b in zip(lattices, s, t))]
                 for t in tuples] for s in tuples]
    join_idx = [[index[tuple(l.join(a, b) for l, a, b in zip(lattices, s, t))]
                 for t in tuples] for s in tuples]
    top = ELEMENT_SEP.join(l.top for l in lattices)
    bottom = ELEMENT_SEP.join(l.bottom for l in lattices)
    lattice = FiniteLattice(names, leq, meet_idx, join_idx, top, bottom)

    table = {}
    for t, nm in zip(tuples, names):
        rect = Rectangle(tuple(c.gamma(p) for c, p in zip(components, t)))
        table[nm] = iota(rect, uni)
    gamma = ConcretizationMap(lattice, uni, table)
    pname = name or ELEMENT_SEP.join(c.name for c in components)
    abs_ = Abstraction(pname, lattice, gamma,
                       var_names=default_var_names(len(components)))
    return ProductAbstraction(components, abs_)


# --- exhaustive / sampled checks ---------------------------------------------


def _all_rectangles(axis_universes):
    axes_subsets = []
    for u in axis_universes:
        pts = list(u.points)
        subs = []
        for mask in range(1 << len(pts)):
            subs.append(u.subset(p for i, p in enumerate(pts) if mask >> i & 1))
        axes_subsets.append(subs)
    for combo in iproduct(*axes_subsets):
        yield Rectangle(tuple(combo))


@dataclass
class CheckResult:
    ok: bool
    checked: int
    witness: object = None
    note: str = ""


def check_galois(axis_windows=((0, 4), (0, 4)), sample: int | None = None,
                 rng_seed: int = 20240811) -> CheckResult:
    """rectangle_closure(R) <= X iff R included in iota(X), exhaustively on
    small axes or sampled for larger spaces."""
    axes = [ConcreteUniverse.window(lo, hi) for lo, hi in axis_windows]
    target = tuple_universe(axes)
    rng = random.Random(rng_seed)
    checked = 0
    pts = list(target.points)
    if sample is None:
        regions = [target.subset(p for i, p in enumerate(pts) if mask >> i & 1)
                   for mask in range(1 << len(pts))] if len(pts) <= 12 else None
        if regions is None:
            raise CarrierTooLarge("exhaustive Galois check needs <= 12 points; "
                                  "pass sample=")
        rects = list(_all_rectangles(axes))
        for r in regions:
            closure = rectangle_closure(r)
            for x in rects:
                checked += 1
                lhs = closure.componentwise_leq(x)
                rhs = r.issubset(iota(x, target))
                if lhs != rhs:
                    return CheckResult(False, checked, (r, x))
        return CheckResult(True, checked)
    for _ in range(sample):
        r = target.subset(p for p in pts if rng.random() < 0.4)
        x = Rectangle(tuple(u.subset(p for p in u.points if rng.random() < 0.5)
                            for u in axes))
        checked += 1
        if rectangle_closure(r).componentwise_leq(x) != r.issubset(iota(x, target)):
            return CheckResult(False, checked, (r, x))
    return CheckResult(True, checked)


def check_iota_preserves_meets(axis_windows=((0, 4), (0, 4)),
                               sample: int | None = None,
                               rng_seed: int = 20240811) -> CheckResult:
    """iota(X meet Y) = iota(X) & iota(Y); exhaustive for two small axes,
    sampled otherwise."""
    axes = [ConcreteUniverse.window(lo, hi) for lo, hi in axis_windows]
    target = tuple_universe(axes)
    checked = 0
    if sample is None:
        sizes = [len(u) for u in axes]
        if sum(sizes) > 10 or len(axes) != 2:
            raise CarrierTooLarge("exhaustive meet check is for two axes of "
                                  "<= 5 points; pass sample=")
        rects = list(_all_rectangles(axes))
        for x in rects:
            ix = iota(x, target)
            for y in rects:
                checked += 1
                lhs = iota(x.meet(y), target)
                if lhs.members != ix.intersection(iota(y, target)).members:
                    return CheckResult(False, checked, (x, y))
        return CheckResult(True, checked)
    rng = random.Random(rng_seed)
    for _ in range(sample):
        x = Rectangle(tuple(u.subset(p for p in u.points if rng.random() < 0.5)
                            for u in axes))
        y = Rectangle(tuple(u.subset(p for p in u.points if rng.random() < 0.5)
                            for u in axes))
        checked += 1
        lhs = iota(x.meet(y), target)
        if lhs.members != iota(x, target).intersection(iota(y, target)).members:
            return CheckResult(False, checked, (x, y))
    return CheckResult(True, checked)


def check_iota_injective_on_nonempty(axis_window=(0, 3)) -> CheckResult:
    """iota is injective on tuples of nonempty axes; every collision
    involves an empty axis (everything collapses to the empty set)."""
    lo, hi = axis_window
    axes = [ConcreteUniverse.window(lo, hi), ConcreteUniverse.window(lo, hi)]
    target = tuple_universe(axes)
    seen: dict[frozenset, Rectangle] = {}
    checked = 0
    collisions = 0
    for rect in _all_rectangles(axes):
        checked += 1
        image = iota(rect, target).members
        if image in seen:
            other = seen[image]
            nonempty = all(a.members for a in rect.axes) and \
                all(a.members for a in other.axes)
            if nonempty:
                return CheckResult(False, checked, (rect, other))
            collisions += 1
        else:
            seen[image] = rect
    return CheckResult(True, checked, note=f"{collisions} empty-axis collisions")


def product_embedding_criterion(pa: ProductAbstraction) -> CheckResult:
    """Composite gamma reflects the componentwise order on the guarded
    sublattice (all component images nonempty); an empty component image
    collapses the whole tuple to the empty set, which is surfaced as a
    witness rather than an embedding failure."""
    abs_ = pa.abstraction
    lat = abs_.lattice
    guarded = []
    for name in lat.elements:
        rect = pa.gamma_prime(name)
        guarded.append(all(a.members for a in rect.axes))
    checked = 0
    for i, a in enumerate(lat.elements):
        for j, b in enumerate(lat.elements):
            if not (guarded[i] and guarded[j]):
                continue
            checked += 1
            if abs_.gamma(a).issubset(abs_.gamma(b)) != lat.leq(a, b):
                return CheckResult(False, checked, (a, b))
    collapsed = [lat.elements[i] for i in range(len(lat.elements))
                 if not guarded[i]]
    return CheckResult(True, checked,
                       note=f"{len(collapsed)} elements collapse through an "
                            f"empty axis" if collapsed else "")
