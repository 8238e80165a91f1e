"""Finite lattices with fully materialized meet/join tables.

Carriers are small (desk scale), so every table is computed eagerly at
construction and validated: the order must be a partial order, every pair
of elements must have a unique glb and lub, and a top and bottom must
exist.  Instances are immutable after construction and every operation is
pure, so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import (
    CarrierTooLarge,
    NotALattice,
    NotAPartialOrder,
    NotDistributive,
    UnknownElement,
)


@dataclass(frozen=True)
class UnaryOpTable:
    """A named total unary operation on a lattice carrier."""

    name: str
    table: dict[str, str]


@dataclass(frozen=True)
class BinaryOpTable:
    """A named total binary operation on a lattice carrier."""

    name: str
    table: dict[tuple[str, str], str]


class FiniteLattice:
    """A finite bounded lattice over named elements.

    The carrier keeps declaration order (used for deterministic iteration
    and rendering).  ``unary_ops`` / ``binary_ops`` hold user-declared
    extra operation tables; a table named ``negation`` is the one the
    logic pipeline treats as the abstract negation candidate.
    """

    def __init__(self, elements, leq, meet_idx, join_idx, top, bottom,
                 unary_ops=None, binary_ops=None):
        self.elements: tuple[str, ...] = tuple(elements)
        self.index: dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        self._leq: tuple[tuple[bool, ...], ...] = tuple(tuple(row) for row in leq)
        self._meet: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in meet_idx)
        self._join: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in join_idx)
        self.top: str = top
        self.bottom: str = bottom
        self.unary_ops: dict[str, UnaryOpTable] = dict(unary_ops or {})
        self.binary_ops: dict[str, BinaryOpTable] = dict(binary_ops or {})
        self._distributive: bool | None = None
        for op in self.unary_ops.values():
            self._check_unary_total(op)
        for op in self.binary_ops.values():
            self._check_binary_total(op)

    def _check_unary_total(self, op: UnaryOpTable) -> None:
        for e in self.elements:
            if e not in op.table:
                raise UnknownElement(f"operation {op.name!r} missing entry for {e!r}")
            if op.table[e] not in self.index:
                raise UnknownElement(
                    f"operation {op.name!r} maps {e!r} outside the carrier")

    def _check_binary_total(self, op: BinaryOpTable) -> None:
        for a, b in iproduct(self.elements, self.elements):
            if (a, b) not in op.table:
                raise UnknownElement(
                    f"operation {op.name!r} missing entry for ({a!r}, {b!r})")
            if op.table[(a, b)] not in self.index:
                raise UnknownElement(
                    f"operation {op.name!r} maps ({a!r}, {b!r}) outside the carrier")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def _i(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return self._leq[self._i(a)][self._i(b)]

    def meet(self, a: str, b: str) -> str:
        return self.elements[self._meet[self._i(a)][self._i(b)]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self._join[self._i(a)][self._i(b)]]

    def order_pairs(self) -> list[tuple[str, str]]:
        """All pairs (a, b) with a <= b, in declaration order."""
        out = []
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if self._leq[i][j]:
                    out.append((a, b))
        return out


def build_lattice(elements, order_pairs, closure_mode: str = "hasse",
                  unary_ops=None, binary_ops=None) -> FiniteLattice:
    """Build and validate a :class:`FiniteLattice`.

    ``order_pairs`` are covering edges when ``closure_mode`` is ``hasse``
    (reflexive-transitive closure is taken), or the full order relation
    when ``full`` (reflexive pairs may be omitted; transitivity must
    already hold).
    """
    elements = tuple(elements)
    if not elements:
        raise NotALattice("empty carrier")
    if len(set(elements)) != len(elements):
        dup = next(e for e in elements if elements.count(e) > 1)
        raise NotALattice(f"duplicate element name {dup!r}")
    if closure_mode not in ("hasse", "full"):
        raise ValueError(f"unknown closure mode {closure_mode!r}")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
    for a, b in order_pairs:
        if a not in index:
            raise UnknownElement(f"unknown element {a!r} in order pair")
        if b not in index:
            raise UnknownElement(f"unknown element {b!r} in order pair")
        leq[index[a]][index[b]] = True

    if closure_mode == "hasse":
        # Warshall closure over the declared covering edges.
        for k in range(n):
            lk = leq[k]
            for i in range(n):
                if leq[i][k]:
                    li = leq[i]
                    for j in range(n):
                        if lk[j]:
                            li[j] = True
    else:
        for i, j, k in iproduct(range(n), repeat=3):
            if leq[i][j] and leq[j][k] and not leq[i][k]:
                raise NotAPartialOrder(
                    f"transitivity violated: {elements[i]!r} <= {elements[j]!r} <= "
                    f"{elements[k]!r} but not {elements[i]!r} <= {elements[k]!r}")

    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise NotAPartialOrder(
                    f"antisymmetry violated on ({elements[i]!r}, {elements[j]!r})")

    meet_idx = [[0] * n for _ in range(n)]
    join_idx = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lows = [k for k in range(n) if leq[k][i] and leq[k][j]]
            glb = [k for k in lows if all(leq[m][k] for m in lows)]
            if len(glb) != 1:
                raise NotALattice(
                    f"({elements[i]!r}, {elements[j]!r}) has no unique "
                    f"greatest lower bound")
            ups = [k for k in range(n) if leq[i][k] and leq[j][k]]
            lub = [k for k in ups if all(leq[k][m] for m in ups)]
            if len(lub) != 1:
                raise NotALattice(
                    f"({elements[i]!r}, {elements[j]!r}) has no unique "
                    f"least upper bound")
            meet_idx[i][j] = meet_idx[j][i] = glb[0]
            join_idx[i][j] = join_idx[j][i] = lub[0]

    bot = 0
    top = 0
    for i in range(1, n):
        bot = meet_idx[bot][i]
        top = join_idx[top][i]

    return FiniteLattice(elements, leq, meet_idx, join_idx,
                         elements[top], elements[bot],
                         unary_ops=unary_ops, binary_ops=binary_ops)


def leq(lattice: FiniteLattice, a: str, b: str) -> bool:
    return lattice.leq(a, b)


def is_distributive(lattice: FiniteLattice) -> bool:
    """Exhaustive check of a /\\ (b \\/ c) = (a /\\ b) \\/ (a /\\ c)."""
    if lattice._distributive is None:
        n = len(lattice)
        meet, join = lattice._meet, lattice._join
        result = True
        for a, b, c in iproduct(range(n), repeat=3):
            if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                result = False
                break
        lattice._distributive = result
    return lattice._distributive


def heyting_implication(lattice: FiniteLattice, a: str, b: str) -> str:
    """Relative pseudo-complement: the greatest c with a /\\ c <= b."""
    if not is_distributive(lattice):
        raise NotDistributive(
            "heyting_implication requires a distributive lattice")
    ai, bi = lattice._i(a), lattice._i(b)
    n = len(lattice)
    best = None
    for c in range(n):
        if lattice._leq[lattice._meet[ai][c]][bi]:
            best = c if best is None else lattice._join[best][c]
    # In a finite distributive lattice the join of all candidates is itself
    # a candidate; guard against silent misuse anyway.
    if best is None or not lattice._leq[lattice._meet[ai][best]][bi]:
        raise NotDistributive(
            f"no relative pseudo-complement for ({a!r}, {b!r})")
    return lattice.elements[best]


def co_implication(lattice: FiniteLattice, a: str, b: str) -> str:
    """Dual relative pseudo-complement: the least c with a <= b \\/ c."""
    if not is_distributive(lattice):
        raise NotDistributive("co_implication requires a distributive lattice")
    ai, bi = lattice._i(a), lattice._i(b)
    n = len(lattice)
    best = None
    for c in range(n):
        if lattice._leq[ai][lattice._join[bi][c]]:
            best = c if best is None else lattice._meet[best][c]
    if best is None or not lattice._leq[ai][lattice._join[bi][best]]:
        raise NotDistributive(f"no co-implication for ({a!r}, {b!r})")
    return lattice.elements[best]


def is_meet_irreducible(lattice: FiniteLattice, a: str) -> bool:
    """True iff a != top and no pair strictly above a meets to a."""
    ai = lattice._i(a)
    if a == lattice.top:
        return False
    n = len(lattice)
    above = [b for b in range(n) if lattice._leq[ai][b] and b != ai]
    for x in above:
        for y in above:
            if x < y and lattice._meet[x][y] == ai:
                return False
    return True


def is_join_irreducible(lattice: FiniteLattice, a: str) -> bool:
    """True iff a != bottom and no pair strictly below a joins to a."""
    ai = lattice._i(a)
    if a == lattice.bottom:
        return False
    n = len(lattice)
    below = [b for b in range(n) if lattice._leq[b][ai] and b != ai]
    for x in below:
        for y in below:
            if x < y and lattice._join[x][y] == ai:
                return False
    return True


def hasse_edges(lattice: FiniteLattice) -> list[tuple[str, str]]:
    """Covering pairs (transitive reduction of the strict order)."""
    n = len(lattice)
    out = []
    for i in range(n):
        for j in range(n):
            if i == j or not lattice._leq[i][j]:
                continue
            if any(lattice._leq[i][k] and lattice._leq[k][j]
                   for k in range(n) if k not in (i, j)):
                continue
            out.append((lattice.elements[i], lattice.elements[j]))
    return out


def find_order_reversing_involutions(lattice: FiniteLattice,
                                     max_size: int = 12) -> list[UnaryOpTable]:
    """Enumerate all order-reversing involutions of the carrier.

    Such a map is automatically an order anti-automorphism, which prunes
    the backtracking hard enough for desk-scale carriers.  Raises
    :class:`CarrierTooLarge` above ``max_size`` elements.
    """
    n = len(lattice)
    if n > max_size:
        raise CarrierTooLarge(
            f"involution enumeration capped at {max_size} elements, got {n}")
    lq = lattice._leq
    found: list[tuple[int, ...]] = []
    assign: list[int | None] = [None] * n

    def consistent(i: int) -> bool:
        # anti-automorphism: i <= j iff n(j) <= n(i), for every assigned j
        x = assign[i]
        for j in range(n):
            y = assign[j]
            if y is None or j == i:
                continue
            if lq[i][j] != lq[y][x] or lq[j][i] != lq[x][y]:
                return False
        return True

    def extend(i: int) -> None:
        if i == n:
            found.append(tuple(assign))  # type: ignore[arg-type]
            return
        if assign[i] is not None:
            extend(i + 1)
            return
        for x in range(n):
            if x == i:
                assign[i] = i
                if consistent(i):
                    extend(i + 1)
                assign[i] = None
            elif assign[x] is None:
                # involution pairs i and x
                assign[i], assign[x] = x, i
                if consistent(i) and consistent(x):
                    extend(i + 1)
                assign[i] = assign[x] = None

    extend(0)
    tables = []
    for images in sorted(set(found)):
        tables.append(UnaryOpTable(
            name="involution",
            table={lattice.elements[i]: lattice.elements[images[i]]
                   for i in range(n)}))
    return tables
