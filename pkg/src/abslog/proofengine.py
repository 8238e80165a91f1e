"""Derivability, normalization, Lindenbaum-Tarski construction and the
machine-checked soundness / isomorphism / completeness verifications.

Derivability is decided by saturation: every formula is first normalized
to a predicate using the abstract operation tables (sound by the
operation axioms plus cut), and the derivable relation over
predicate-set sequents is then closed under the structural and
introduction rules.  Weakening makes that relation upward closed, so the
engine stores a subsumption-reduced generating set (sequents as bitmask
pairs) whose upward closure is the saturated set; queries are membership
checks against that closure and support early exit while saturation is
still running.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .concrete import Abstraction, concrete_op
from .errors import AbslogError, CarrierTooLarge, UnknownSymbol
from .lattice import co_implication, heyting_implication
from .logicgen import (
    KIND_OPERATION,
    KIND_ORDER,
    ProofSystem,
    _STRUCTURAL_SCHEMAS,
)
from .syntax import Bin, Const, Formula, Not, Pred, Sequent, render_sequent

DEFAULT_SATURATION_BOUND = 14


# --- formula evaluation ------------------------------------------------------


def normalize(ps: ProofSystem, formula: Formula) -> str:
    """Rewrite a formula to the predicate it is interderivable with.

    Bottom-up replacement through the signature's operation tables; total
    because every signature connective has a total abstract table.
    """
    abs_ = ps.abstraction
    if abs_ is None:
        raise AbslogError("normalization needs the source abstraction")
    conns = ps.signature.connectives
    lat = abs_.lattice

    def walk(f: Formula) -> str:
        if isinstance(f, Pred):
            if f.name not in lat.index:
                raise UnknownSymbol(f"unknown predicate {f.name!r}")
            return f.name
        if isinstance(f, Const):
            if f.kind not in conns:
                raise UnknownSymbol(f"constant {f.kind!r} is not in the signature")
            return lat.top if f.kind == "tt" else lat.bottom
        if isinstance(f, Not):
            if "not" not in conns:
                raise UnknownSymbol("negation is not in the signature")
            return lat.unary_ops["negation"].table[walk(f.arg)]
        if isinstance(f, Bin):
            if f.op not in conns:
                raise UnknownSymbol(f"connective {f.op!r} is not in the signature")
            a, b = walk(f.lhs), walk(f.rhs)
            if f.op == "and":
                return lat.meet(a, b)
            if f.op == "or":
                return lat.join(a, b)
            if f.op == "impl":
                return heyting_implication(lat, a, b)
            return co_implication(lat, a, b)
        raise UnknownSymbol(f"cannot normalize {f!r}")

    return walk(formula)


def eval_abstract(abs_: Abstraction, formula: Formula) -> str:
    """Homomorphic evaluation into the lattice (predicates to elements)."""
    lat = abs_.lattice

    def walk(f: Formula) -> str:
        if isinstance(f, Pred):
            if f.name not in lat.index:
                raise UnknownSymbol(f"unknown predicate {f.name!r}")
            return f.name
        if isinstance(f, Const):
            return lat.top if f.kind == "tt" else lat.bottom
        if isinstance(f, Not):
            neg = lat.unary_ops.get("negation")
            if neg is None:
                raise UnknownSymbol("the lattice declares no negation operation")
            return neg.table[walk(f.arg)]
        if isinstance(f, Bin):
            a, b = walk(f.lhs), walk(f.rhs)
            if f.op == "and":
                return lat.meet(a, b)
            if f.op == "or":
                return lat.join(a, b)
            if f.op == "impl":
                return heyting_implication(lat, a, b)
            return co_implication(lat, a, b)
        raise UnknownSymbol(f"cannot evaluate {f!r}")

    return walk(formula)


def eval_concrete(abs_: Abstraction, formula: Formula):
    """Evaluate in the concrete powerset (predicates through gamma)."""
    gamma = abs_.gamma
    uni = abs_.universe

    def walk(f: Formula):
        if isinstance(f, Pred):
            return gamma(f.name)
        if isinstance(f, Const):
            return uni.full() if f.kind == "tt" else uni.empty()
        if isinstance(f, Not):
            return walk(f.arg).complement()
        if isinstance(f, Bin):
            ops = {"and": "intersection", "or": "union",
                   "impl": "implication", "coimpl": "coimplication"}
            return concrete_op(uni, ops[f.op], walk(f.lhs), walk(f.rhs))
        raise UnknownSymbol(f"cannot evaluate {f!r}")

    return walk(formula)


def holds_concrete(abs_: Abstraction, s: Sequent) -> bool:
    """Intersection of antecedents included in union of succedents."""
    inter = abs_.universe.full()
    for f in s.ante:
        inter = inter.intersection(eval_concrete(abs_, f))
    union = abs_.universe.empty()
    for f in s.succ:
        union = union.union(eval_concrete(abs_, f))
    return inter.issubset(union)


# --- the saturation engine ---------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class DerivabilityEngine:
    """Saturates the predicate-sequent derivability relation of one system.

    Sequents are ``(antecedent_mask, succedent_mask)`` pairs over the
    signature predicates.  The engine keeps a subsumption-reduced
    generating set: a sequent is derivable iff some stored sequent is a
    componentwise subset.  Rule application only instantiates designated
    formulas that are present in stored premises; instances that weaken a
    designated formula in always yield subsumed conclusions.
    """

    def __init__(self, ps: ProofSystem,
                 max_predicates: int = DEFAULT_SATURATION_BOUND):
        abs_ = ps.abstraction
        if abs_ is None:
            raise AbslogError("the derivability engine needs the source abstraction")
        names = ps.rule_names()
        missing = set(_STRUCTURAL_SCHEMAS) - names
        if missing:
            raise AbslogError(f"structural rules missing: {sorted(missing)}")
        self.ps = ps
        self.abs_ = abs_
        lat = abs_.lattice
        preds = ps.signature.predicates
        self.n = len(preds)
        if self.n > max_predicates:
            raise CarrierTooLarge(
                f"|A| = {self.n} exceeds the saturation bound {max_predicates}")
        self.idx = {p: i for i, p in enumerate(preds)}
        self.preds = preds

        conns = ps.signature.connectives
        self.f_and = "intro.and.l" in names
        self.f_or = "intro.or.l" in names
        self.f_impl = "intro.impl.l" in names
        self.f_coimpl = "intro.coimpl.l" in names
        self.f_not_prim = "intro.not.contraposition" in names
        self.f_not_def = "intro.not.def.l" in names
        self.f_tt = "intro.tt.r" in names

        self.meet = self.join = self.hey = self.coi = None
        if self.f_and:
            self.meet = [[self.idx[lat.meet(a, b)] for b in preds] for a in preds]
        if self.f_or:
            self.join = [[self.idx[lat.join(a, b)] for b in preds] for a in preds]
        if self.f_impl or self.f_not_def:
            self.hey = [[self.idx[heyting_implication(lat, a, b)] for b in preds]
                        for a in preds]
        if self.f_coimpl:
            self.coi = [[self.idx[co_implication(lat, a, b)] for b in preds]
                        for a in preds]
        self.neg = None
        if ("not" in conns) and "negation" in lat.unary_ops:
            t = lat.unary_ops["negation"].table
            self.neg = [self.idx[t[p]] for p in preds]
        self.top_i = self.idx[lat.top]
        self.bot_i = self.idx[lat.bottom]

        self.members: set[tuple[int, int]] = set()
        self.gen_list: list[tuple[int, int]] = []
        self.by_ante: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        self.by_succ: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        self.queue: deque[tuple[int, int]] = deque()
        self._target: tuple[int, int] | None = None
        self._hit = False

        self._seed()

    # seeding ---------------------------------------------------------------

    def _seed(self) -> None:
        names = self.ps.rule_names()
        if "identity" in names:
            for i in range(self.n):
                self._add(1 << i, 1 << i)
        for r in self.ps.rules:
            if r.axiom is not None:
                g = 0
                for f in r.axiom.ante:
                    g |= 1 << self._norm(f)
                d = 0
                for f in r.axiom.succ:
                    d |= 1 << self._norm(f)
                self._add(g, d)
        if self.f_tt:
            self._add(0, 1 << self.top_i)
        if self.f_not_def and self.neg is not None:
            for a in range(self.n):
                na, ha = self.neg[a], self.hey[a][self.bot_i]
                if "intro.not.def.l" in names:
                    self._add(1 << na, 1 << ha)
                if "intro.not.def.r" in names:
                    self._add(1 << ha, 1 << na)
        if self.f_not_prim and self.neg is not None:
            for a in range(self.n):
                nna = self.neg[self.neg[a]]
                self._add(1 << nna, 1 << a)
                self._add(1 << a, 1 << nna)

    def _norm(self, f: Formula) -> int:
        return self.idx[normalize(self.ps, f)]

    # core set maintenance ----------------------------------------------------

    def _subsumed(self, g: int, d: int) -> bool:
        members = self.members
        total_bits = bin(g).count("1") + bin(d).count("1")
        if total_bits <= 16:
            gs = g
            while True:
                ds = d
                while True:
                    if ds and (gs, ds) in members:
                        return True
                    if ds == 0:
                        break
                    ds = (ds - 1) & d
                if gs == 0:
                    break
                gs = (gs - 1) & g
            return False
        ng, nd = ~g, ~d
        return any((g0 & ng) == 0 and (d0 & nd) == 0 for g0, d0 in self.gen_list)

    def _add(self, g: int, d: int) -> None:
        if d == 0:
            return
        key = (g, d)
        if key in self.members or self._subsumed(g, d):
            return
        self.members.add(key)
        self.gen_list.append(key)
        for b in _bits(g):
            self.by_ante[b].append(key)
        for b in _bits(d):
            self.by_succ[b].append(key)
        self.queue.append(key)
        if self._target is not None:
            tg, td = self._target
            if (g & ~tg) == 0 and (d & ~td) == 0:
                self._hit = True

    # saturation ----------------------------------------------------------

    def saturate(self) -> None:
        while self.queue:
            if self._target is not None and self._hit:
                return  # early exit: the pending query is already subsumed
            self._step(self.queue.popleft())

    def _step(self, item: tuple[int, int]) -> None:
        g, d = item
        n = self.n
        add = self._add
        by_ante, by_succ = self.by_ante, self.by_succ

        # cut, with this sequent as either premise
        for b in _bits(d):
            bb = 1 << b
            for g2, d2 in by_ante[b]:
                add(g | (g2 & ~bb), (d & ~bb) | d2)
        for b in _bits(g):
            bb = 1 << b
            for g1, d1 in by_succ[b]:
                add(g1 | (g & ~bb), (d1 & ~bb) | d)

        if self.f_and:
            meet = self.meet
            for i in range(n):
                bi = 1 << i
                for j in range(i, n):
                    pair = bi | (1 << j)
                    if pair & g:
                        add((g & ~pair) | (1 << meet[i][j]), d)
            for a in _bits(d):
                da = d & ~(1 << a)
                row = meet[a]
                for j in range(n):
                    bj = 1 << j
                    c = 1 << row[j]
                    for g2, d2 in by_succ[j]:
                        add(g | g2, da | (d2 & ~bj) | c)

        if self.f_or:
            join = self.join
            for i in range(n):
                bi = 1 << i
                for j in range(i, n):
                    pair = bi | (1 << j)
                    if pair & d:
                        add(g, (d & ~pair) | (1 << join[i][j]))
            for a in _bits(g):
                ga = g & ~(1 << a)
                row = join[a]
                for j in range(n):
                    bj = 1 << j
                    c = 1 << row[j]
                    for g2, d2 in by_ante[j]:
                        add(ga | (g2 & ~bj) | c, d | d2)

        if self.f_impl:
            hey = self.hey
            for a in _bits(d):
                da = d & ~(1 << a)
                row = hey[a]
                for b in range(n):
                    bb = 1 << b
                    h = 1 << row[b]
                    for g2, d2 in by_ante[b]:
                        add(g | (g2 & ~bb) | h, da | d2)
            for b in _bits(g):
                gb = g & ~(1 << b)
                for a in range(n):
                    ba = 1 << a
                    h = 1 << hey[a][b]
                    for g1, d1 in by_succ[a]:
                        add(g1 | gb | h, (d1 & ~ba) | d)
            if d and d & (d - 1) == 0:  # exactly one succedent
                b = d.bit_length() - 1
                for a in _bits(g):
                    add(g & ~(1 << a), 1 << hey[a][b])

        if self.f_coimpl:
            coi = self.coi
            for a in _bits(d):
                da = d & ~(1 << a)
                row = coi[a]
                for b in range(n):
                    bb = 1 << b
                    c = 1 << row[b]
                    for g2, d2 in by_ante[b]:
                        add(g | (g2 & ~bb), da | d2 | c)
            for b in _bits(g):
                gb = g & ~(1 << b)
                for a in range(n):
                    ba = 1 << a
                    c = 1 << coi[a][b]
                    for g1, d1 in by_succ[a]:
                        add(g1 | gb, (d1 & ~ba) | d | c)
            if g == 0 or g & (g - 1) == 0:  # at most one antecedent
                for b in _bits(d):
                    rest = d & ~(1 << b)
                    if not rest:
                        continue
                    if g:
                        a = g.bit_length() - 1
                        add(1 << coi[a][b], rest)
                    else:
                        for a in range(n):
                            add(1 << coi[a][b], rest)

        if self.f_not_prim and self.neg is not None:
            if d and d & (d - 1) == 0 and (g == 0 or g & (g - 1) == 0):
                b = d.bit_length() - 1
                nb = 1 << self.neg[b]
                if g:
                    a = g.bit_length() - 1
                    add(nb, 1 << self.neg[a])
                else:
                    for a in range(n):
                        add(nb, 1 << self.neg[a])

    # queries ---------------------------------------------------------------

    def masks(self, s: Sequent) -> tuple[int, int]:
        g = 0
        for f in s.ante:
            g |= 1 << self._norm(f)
        d = 0
        for f in s.succ:
            d |= 1 << self._norm(f)
        return g, d

    def derivable_masks(self, g: int, d: int) -> bool:
        if self._subsumed(g, d):
            return True
        if not self.queue:
            return False
        self._target = (g, d)
        self._hit = False
        try:
            self.saturate()
        finally:
            self._target = None
        return self._hit or self._subsumed(g, d)

    def derivable(self, s: Sequent) -> bool:
        g, d = self.masks(s)
        return self.derivable_masks(g, d)

    def generators(self) -> list[Sequent]:
        self.saturate()
        return [self.mask_sequent(g, d) for g, d in self.gen_list]

    def mask_sequent(self, g: int, d: int) -> Sequent:
        return Sequent(tuple(Pred(self.preds[i]) for i in _bits(g)),
                       tuple(Pred(self.preds[i]) for i in _bits(d)))

    def closure_rows(self, max_n: int = 12) -> list[int]:
        """Full upward closure as one bitset of succedent masks per
        antecedent mask.  Exponential in the carrier; guarded."""
        self.saturate()
        n = self.n
        if n > max_n:
            raise CarrierTooLarge(f"closure materialization capped at {max_n}")
        size = 1 << n
        rows = [0] * size
        for g, d in self.gen_list:
            rows[g] |= 1 << d
        for b in range(n):
            bit = 1 << b
            for g in range(size):
                if g & bit:
                    rows[g] |= rows[g ^ bit]
        spreads = []
        for b in range(n):
            chunk = (1 << (1 << b)) - 1
            step = 1 << (b + 1)
            m = 0
            pos = 0
            while pos < size:
                m |= chunk << pos
                pos += step
            spreads.append((m, 1 << b))
        for g in range(size):
            row = rows[g]
            if row:
                for m, shift in spreads:
                    row |= (row & m) << shift
                rows[g] = row
        return rows


def derivable(ps: ProofSystem, s: Sequent,
              max_predicates: int = DEFAULT_SATURATION_BOUND) -> bool:
    """Decide derivability of a sequent in a generated proof system."""
    return DerivabilityEngine(ps, max_predicates=max_predicates).derivable(s)


# --- Lindenbaum-Tarski -----------------------------------------------------


@dataclass
class LindenbaumAlgebra:
    """Interderivability classes of predicate formulas with induced order
    and operations; ``embedding`` maps each element name to its class."""

    classes: tuple[frozenset[str], ...]
    reps: tuple[str, ...]
    class_of: dict[str, int]
    leq: tuple[tuple[bool, ...], ...]
    unary_ops: dict[str, tuple[int, ...]]
    binary_ops: dict[str, tuple[tuple[int, ...], ...]]
    constants: dict[str, int]

    def embedding(self, element: str) -> int:
        return self.class_of[element]


def build_lindenbaum(ps: ProofSystem, abs_: Abstraction | None = None,
                     max_predicates: int = DEFAULT_SATURATION_BOUND) -> LindenbaumAlgebra:
    """Quotient the predicates by interderivability and induce the algebra.

    Every formula normalizes to a predicate, so predicate classes exhaust
    the Lindenbaum-Tarski algebra; class-independence of each induced
    operation is re-verified exhaustively.
    """
    abs_ = abs_ or ps.abstraction
    engine = DerivabilityEngine(ps, max_predicates=max_predicates)
    engine.saturate()
    n = engine.n
    der = [[engine.derivable_masks(1 << i, 1 << j) for j in range(n)]
           for i in range(n)]

    cls_of_idx = [-1] * n
    classes: list[list[int]] = []
    for i in range(n):
        if cls_of_idx[i] >= 0:
            continue
        group = [j for j in range(n) if der[i][j] and der[j][i]]
        k = len(classes)
        for j in group:
            cls_of_idx[j] = k
        classes.append(group)

    # canonical ordering: classes sorted by their least member name
    named = sorted((sorted(engine.preds[j] for j in grp), grp)
                   for grp in classes)
    classes = [grp for _, grp in named]
    cls_of_idx = [-1] * n
    for k, grp in enumerate(classes):
        for j in grp:
            cls_of_idx[j] = k
    reps = tuple(min(engine.preds[j] for j in grp) for grp in classes)
    class_of = {engine.preds[j]: cls_of_idx[j] for j in range(n)}
    m = len(classes)
    leq = tuple(tuple(der[classes[i][0]][classes[j][0]] for j in range(m))
                for i in range(m))

    # order must be class-independent and a partial order
    for i in range(m):
        for a in classes[i]:
            for j in range(m):
                for b in classes[j]:
                    if der[a][b] != leq[i][j]:
                        raise AbslogError(
                            "derivability is not class-independent "
                            f"({engine.preds[a]} |- {engine.preds[b]})")
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    raise AbslogError("class order is not transitive")

    conns = ps.signature.connectives
    lat = abs_.lattice
    unary_ops: dict[str, tuple[int, ...]] = {}
    binary_ops: dict[str, tuple[tuple[int, ...], ...]] = {}
    constants: dict[str, int] = {}

    def check_unary(conn: str, table) -> tuple[int, ...]:
        out = []
        for i in range(m):
            img = {cls_of_idx[engine.idx[table(engine.preds[a])]]
                   for a in classes[i]}
            if len(img) != 1:
                raise AbslogError(f"{conn} is not class-independent")
            out.append(img.pop())
        return tuple(out)

    def check_binary(conn: str, table) -> tuple[tuple[int, ...], ...]:
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                img = {cls_of_idx[engine.idx[table(engine.preds[a], engine.preds[b])]]
                       for a in classes[i] for b in classes[j]}
                if len(img) != 1:
                    raise AbslogError(f"{conn} is not class-independent")
                row.append(img.pop())
            out.append(tuple(row))
        return tuple(out)

    if "and" in conns:
        binary_ops["and"] = check_binary("and", lat.meet)
    if "or" in conns:
        binary_ops["or"] = check_binary("or", lat.join)
    if "impl" in conns:
        binary_ops["impl"] = check_binary(
            "impl", lambda a, b: heyting_implication(lat, a, b))
    if "coimpl" in conns:
        binary_ops["coimpl"] = check_binary(
            "coimpl", lambda a, b: co_implication(lat, a, b))
    if "not" in conns:
        unary_ops["not"] = check_unary("not", lat.unary_ops["negation"].table.__getitem__)
    if "tt" in conns:
        constants["tt"] = cls_of_idx[engine.idx[lat.top]]
    if "ff" in conns:
        constants["ff"] = cls_of_idx[engine.idx[lat.bottom]]

    return LindenbaumAlgebra(
        classes=tuple(frozenset(engine.preds[j] for j in grp) for grp in classes),
        reps=reps, class_of=class_of, leq=leq,
        unary_ops=unary_ops, binary_ops=binary_ops, constants=constants)


@dataclass
class IsoReport:
    ok: bool
    surjective: bool
    injective: bool
    order_preserving: bool
    order_reflecting: bool
    homomorphism: dict[str, bool]
    failures: list[str]

    def lines(self) -> list[str]:
        hom = " ".join(f"{c}={'yes' if v else 'NO'}"
                       for c, v in sorted(self.homomorphism.items()))
        return [
            f"surjective: {'yes' if self.surjective else 'NO'}",
            f"injective: {'yes' if self.injective else 'NO'}",
            f"order-preserving: {'yes' if self.order_preserving else 'NO'}",
            f"order-reflecting: {'yes' if self.order_reflecting else 'NO'}",
            f"homomorphism: {hom}" if hom else "homomorphism: (no connectives)",
        ]


def verify_isomorphism(abs_: Abstraction, lind: LindenbaumAlgebra,
                       connectives: frozenset[str] | None = None) -> IsoReport:
    """Check that e(a) = [a(x)] is an order isomorphism and homomorphism."""
    lat = abs_.lattice
    failures: list[str] = []

    surjective = all(cls for cls in lind.classes)  # classes are predicate classes
    injective = len(lind.classes) == len(lat.elements)
    if not injective:
        merged = [sorted(c) for c in lind.classes if len(c) > 1]
        failures.append(f"merged classes: {merged}")

    order_preserving = True
    order_reflecting = True
    for a in lat.elements:
        for b in lat.elements:
            lhs = lat.leq(a, b)
            rhs = lind.leq[lind.class_of[a]][lind.class_of[b]]
            if lhs and not rhs:
                order_preserving = False
                failures.append(f"order not preserved on ({a}, {b})")
            if rhs and not lhs:
                order_reflecting = False
                failures.append(f"order not reflected on ({a}, {b})")

    hom: dict[str, bool] = {}
    conns = connectives if connectives is not None else frozenset(
        list(lind.binary_ops) + list(lind.unary_ops) + list(lind.constants))
    for conn, table in (("and", lat.meet), ("or", lat.join)):
        if conn in conns and conn in lind.binary_ops:
            hom[conn] = _check_binary_hom(lat, lind, conn, table, failures)
    if "impl" in conns and "impl" in lind.binary_ops:
        hom["impl"] = _check_binary_hom(
            lat, lind, "impl", lambda a, b: heyting_implication(lat, a, b), failures)
    if "coimpl" in conns and "coimpl" in lind.binary_ops:
        hom["coimpl"] = _check_binary_hom(
            lat, lind, "coimpl", lambda a, b: co_implication(lat, a, b), failures)
    if "not" in conns and "not" in lind.unary_ops:
        ok = all(lind.class_of[lat.unary_ops["negation"].table[a]]
                 == lind.unary_ops["not"][lind.class_of[a]]
                 for a in lat.elements)
        hom["not"] = ok
        if not ok:
            failures.append("negation is not a homomorphism")
    if "tt" in conns and "tt" in lind.constants:
        hom["tt"] = lind.constants["tt"] == lind.class_of[lat.top]
    if "ff" in conns and "ff" in lind.constants:
        hom["ff"] = lind.constants["ff"] == lind.class_of[lat.bottom]

    ok = (surjective and injective and order_preserving and order_reflecting
          and all(hom.values()))
    return IsoReport(ok, surjective, injective, order_preserving,
                     order_reflecting, hom, failures)


def _check_binary_hom(lat, lind, conn, table, failures) -> bool:
    t = lind.binary_ops[conn]
    for a in lat.elements:
        for b in lat.elements:
            if lind.class_of[table(a, b)] != t[lind.class_of[a]][lind.class_of[b]]:
                failures.append(f"{conn} not a homomorphism on ({a}, {b})")
                return False
    return True


# --- soundness ---------------------------------------------------------------


@dataclass
class SoundnessResult:
    ok: bool
    counterexample: Sequent | None
    generators_checked: int = 0
    cells_checked: int = 0
    replays_checked: int = 0


def verify_soundness(abs_: Abstraction, ps: ProofSystem, depth_bound: int = 4,
                     max_predicates: int = DEFAULT_SATURATION_BOUND,
                     exhaustive_limit: int = 10, replays: int = 500,
                     rng_seed: int = 20240811) -> SoundnessResult:
    """Check every saturated-derivable sequent against the concrete semantics.

    The generating set is checked directly; for small carriers the entire
    upward closure is enumerated as well (``holds_concrete`` is monotone
    under weakening, so the generator check already covers the closure —
    the exhaustive pass re-verifies that).  Finally ``replays`` random
    formula-level derivations of bounded depth are replayed and their
    conclusions checked.
    """
    engine = DerivabilityEngine(ps, max_predicates=max_predicates)
    engine.saturate()
    gens = 0
    for g, d in engine.gen_list:
        s = engine.mask_sequent(g, d)
        if not holds_concrete(abs_, s):
            return SoundnessResult(False, s, gens)
        gens += 1

    cells = 0
    n = engine.n
    if n <= exhaustive_limit:
        rows = engine.closure_rows()
        pts = abs_.universe.points
        pt_bit = {p: 1 << i for i, p in enumerate(pts)}
        full = (1 << len(pts)) - 1
        gmask = []
        for p in engine.preds:
            mk = 0
            for q in abs_.gamma(p).members:
                mk |= pt_bit[q]
            gmask.append(mk)
        size = 1 << n
        inter = [full] * size
        for g in range(1, size):
            low = g & -g
            inter[g] = inter[g ^ low] & gmask[low.bit_length() - 1]
        uni = [0] * size
        for d in range(1, size):
            low = d & -d
            uni[d] = uni[d ^ low] | gmask[low.bit_length() - 1]
        for g in range(size):
            row = rows[g]
            ig = inter[g]
            while row:
                low = row & -row
                dmask = low.bit_length() - 1
                row ^= low
                cells += 1
                if ig & ~uni[dmask]:
                    return SoundnessResult(
                        False, engine.mask_sequent(g, dmask), gens, cells)

    rng = random.Random(rng_seed)
    replayed = 0
    for _ in range(replays):
        s = _random_derivation(abs_, ps, rng, depth_bound)
        if s is None:
            continue
        replayed += 1
        if not holds_concrete(abs_, s):
            return SoundnessResult(False, s, gens, cells, replayed)
    return SoundnessResult(True, None, gens, cells, replayed)


def _random_derivation(abs_, ps, rng, depth) -> Sequent | None:
    """Replay one random derivation and return its conclusion."""
    axioms = [r.axiom for r in ps.rules if r.axiom is not None]
    conns = ps.signature.connectives
    pool: list[Formula] = [Pred(p) for p in ps.signature.predicates]
    if "tt" in conns:
        pool.append(Const("tt"))
    if "ff" in conns:
        pool.append(Const("ff"))
    base = list(pool)
    for _ in range(6):  # shallow compound formulas over the signature
        f = rng.choice(base)
        if "not" in conns and rng.random() < 0.4:
            pool.append(Not(f))
        ops = [c for c in ("and", "or", "impl", "coimpl") if c in conns]
        if ops:
            pool.append(Bin(rng.choice(ops), f, rng.choice(base)))

    def leaf() -> Sequent:
        if axioms and rng.random() < 0.7:
            return rng.choice(axioms)
        f = rng.choice(pool)
        return Sequent((f,), (f,))

    def derive(k: int) -> Sequent:
        if k == 0 or rng.random() < 0.35:
            return leaf()
        s = derive(k - 1)
        step = rng.choice(("weaken.l", "weaken.r", "cut", "and.r", "or.l",
                           "or.r", "and.l", "impl.r", "contraposition"))
        if step == "weaken.l":
            return Sequent(s.ante + (rng.choice(pool),), s.succ)
        if step == "weaken.r":
            return Sequent(s.ante, s.succ + (rng.choice(pool),))
        if step == "cut":
            t = derive(k - 1)
            phi = rng.choice(s.succ)
            t = Sequent(t.ante + (phi,), t.succ)  # weakened into position
            rest = list(s.succ)
            rest.remove(phi)
            return Sequent(s.ante + t.ante, tuple(rest) + t.succ)
        if step == "and.r" and "and" in conns:
            t = derive(k - 1)
            phi, psi = rng.choice(s.succ), rng.choice(t.succ)
            rest_s = list(s.succ)
            rest_s.remove(phi)
            rest_t = list(t.succ)
            rest_t.remove(psi)
            return Sequent(s.ante + t.ante,
                           tuple(rest_s) + tuple(rest_t) + (Bin("and", phi, psi),))
        if step == "or.l" and "or" in conns and s.ante:
            t = derive(k - 1)
            if not t.ante:
                t = Sequent(t.ante + (rng.choice(pool),), t.succ)
            phi, psi = rng.choice(s.ante), rng.choice(t.ante)
            rest_s = list(s.ante)
            rest_s.remove(phi)
            rest_t = list(t.ante)
            rest_t.remove(psi)
            return Sequent(tuple(rest_s) + tuple(rest_t) + (Bin("or", phi, psi),),
                           s.succ + t.succ)
        if step == "or.r" and "or" in conns:
            phi = rng.choice(s.succ)
            psi = rng.choice(pool)
            rest = list(s.succ)
            rest.remove(phi)
            # weaken psi in, then introduce the disjunction
            return Sequent(s.ante, tuple(rest) + (Bin("or", phi, psi),))
        if step == "and.l" and "and" in conns and s.ante:
            phi = rng.choice(s.ante)
            psi = rng.choice(pool)
            rest = list(s.ante)
            rest.remove(phi)
            return Sequent(tuple(rest) + (Bin("and", phi, psi),), s.succ)
        if step == "impl.r" and "impl" in conns and len(s.succ) == 1 and s.ante:
            phi = rng.choice(s.ante)
            rest = list(s.ante)
            rest.remove(phi)
            return Sequent(tuple(rest), (Bin("impl", phi, s.succ[0]),))
        if step == "contraposition" and "not" in conns and "impl" not in conns \
                and len(s.ante) == 1 and len(s.succ) == 1:
            return Sequent((Not(s.succ[0]),), (Not(s.ante[0]),))
        return s

    try:
        return derive(depth)
    except UnknownSymbol:
        return None


# --- completeness ------------------------------------------------------------


@dataclass
class CompletenessResult:
    status: str  # "complete" | "incomplete" | "precondition_unmet"
    witness: tuple[str, str] | None = None
    pairs_checked: int = 0


def verify_completeness(abs_: Abstraction, ps: ProofSystem,
                        max_predicates: int = DEFAULT_SATURATION_BOUND) -> CompletenessResult:
    """gamma(a) included in gamma(b) implies a(x) |- b(x) derivable.

    Requires gamma to be an order embedding; otherwise reports the unmet
    precondition distinctly instead of failing.
    """
    from .concrete import check_order_embedding

    emb = check_order_embedding(abs_)
    if not emb.is_embedding:
        return CompletenessResult("precondition_unmet", emb.witness)
    engine = DerivabilityEngine(ps, max_predicates=max_predicates)
    checked = 0
    for a in abs_.lattice.elements:
        for b in abs_.lattice.elements:
            checked += 1
            if abs_.gamma(a).issubset(abs_.gamma(b)):
                if not engine.derivable(Sequent((Pred(a),), (Pred(b),))):
                    return CompletenessResult("incomplete", (a, b), checked)
    return CompletenessResult("complete", None, checked)
