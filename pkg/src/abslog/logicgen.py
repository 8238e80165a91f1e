"""Proof-system generation from an abstraction and its preservation report.

The generated system contains, in order: the structural rules; the
introduction rules for every preserved connective; one axiom pair per
abstract operation-table entry; one axiom per order pair; plus any extra
axioms carried by the abstraction (pairwise infeasibility axioms for the
octagon export travel this way).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .concrete import Abstraction, PreservationReport
from .errors import UnknownFormat, UnknownSymbol
from .lattice import co_implication, heyting_implication
from .syntax import (
    Bin,
    Const,
    Formula,
    Not,
    Pred,
    Sequent,
    parse_sequent,
    render_sequent,
)

CONNECTIVE_ORDER = ("tt", "ff", "and", "or", "not", "impl", "coimpl")

KIND_STRUCTURAL = "structural"
KIND_INTRODUCTION = "introduction"
KIND_OPERATION = "operation_axiom"
KIND_ORDER = "order_axiom"


@dataclass(frozen=True)
class Signature:
    """Predicate symbols (one per lattice element) and preserved connectives."""

    predicates: tuple[str, ...]
    connectives: frozenset[str]
    var_names: tuple[str, ...] = ("x",)

    @property
    def var(self) -> str:
        return ",".join(self.var_names)


@dataclass(frozen=True)
class Rule:
    """A named rule: either a schema (display strings) or an axiom sequent."""

    kind: str
    name: str
    premises_display: tuple[str, ...] = ()
    conclusion_display: str = ""
    axiom: Sequent | None = None

    def display(self) -> str:
        if self.premises_display:
            return " ;; ".join(self.premises_display) + " ==> " + self.conclusion_display
        return self.conclusion_display


# schema displays for the stock structural / introduction rules; `G`/`D` are
# context metavariables, `?phi`/`?psi` formula metavariables
_STRUCTURAL_SCHEMAS: dict[str, tuple[tuple[str, ...], str]] = {
    "identity": ((), "?phi |- ?phi"),
    "weaken.l": (("G |- D",), "G, ?phi |- D"),
    "weaken.r": (("G |- D",), "G |- D, ?phi"),
    "contract.l": (("G, ?phi, ?phi |- D",), "G, ?phi |- D"),
    "contract.r": (("G |- D, ?phi, ?phi",), "G |- D, ?phi"),
    "exchange.l": (("G, ?phi, ?psi, G' |- D",), "G, ?psi, ?phi, G' |- D"),
    "exchange.r": (("G |- D, ?phi, ?psi, D'",), "G |- D, ?psi, ?phi, D'"),
    "cut": (("G |- D, ?phi", "G', ?phi |- D'"), "G, G' |- D, D'"),
}

_INTRO_SCHEMAS: dict[str, tuple[tuple[str, ...], str]] = {
    "intro.and.l": (("G, ?phi, ?psi |- D",), "G, ?phi & ?psi |- D"),
    "intro.and.r": (("G |- D, ?phi", "G' |- D', ?psi"), "G, G' |- D, D', ?phi & ?psi"),
    "intro.or.l": (("G, ?phi |- D", "G', ?psi |- D'"), "G, G', ?phi | ?psi |- D, D'"),
    "intro.or.r": (("G |- D, ?phi, ?psi",), "G |- D, ?phi | ?psi"),
    "intro.impl.l": (("G |- D, ?phi", "G', ?psi |- D'"), "G, G', ?phi -> ?psi |- D, D'"),
    "intro.impl.r": (("G, ?phi |- ?psi",), "G |- D, ?phi -> ?psi"),
    "intro.coimpl.l": (("?phi |- D, ?psi",), "?phi <- ?psi |- D"),
    "intro.coimpl.r": (("G |- D, ?phi", "G', ?psi |- D'"), "G, G' |- D, D', ?phi <- ?psi"),
    "intro.tt.r": ((), "G |- D, tt"),
    "intro.ff.l": ((), "G, ff |- D"),
    "intro.not.def.l": ((), "~?phi |- ?phi -> ff"),
    "intro.not.def.r": ((), "?phi -> ff |- ~?phi"),
    "intro.not.involution.l": ((), "~~?phi |- ?phi"),
    "intro.not.involution.r": ((), "?phi |- ~~?phi"),
    "intro.not.contraposition": (("?phi |- ?psi",), "~?psi |- ~?phi"),
}

STOCK_SCHEMAS = {**_STRUCTURAL_SCHEMAS, **_INTRO_SCHEMAS}


def _stock_rule(name: str) -> Rule:
    kind = KIND_STRUCTURAL if name in _STRUCTURAL_SCHEMAS else KIND_INTRODUCTION
    prem, concl = STOCK_SCHEMAS[name]
    return Rule(kind, name, prem, concl)


@dataclass
class ProofSystem:
    signature: Signature
    rules: tuple[Rule, ...]
    source: str
    abstraction: Abstraction | None = field(default=None, repr=False, compare=False)

    def sorted_rules(self) -> list[Rule]:
        return sorted(self.rules, key=lambda r: (r.kind, r.name))

    def rule_names(self) -> frozenset[str]:
        return frozenset(r.name for r in self.rules)

    def without(self, names: set[str]) -> "ProofSystem":
        return ProofSystem(self.signature,
                           tuple(r for r in self.rules if r.name not in names),
                           self.source, self.abstraction)

    def __eq__(self, other):
        return (isinstance(other, ProofSystem)
                and self.signature == other.signature
                and self.sorted_rules() == other.sorted_rules()
                and self.source == other.source)


def generate_signature(abs_: Abstraction, report: PreservationReport) -> Signature:
    """Predicates are the element names; connectives exactly the preserved ones."""
    return Signature(
        predicates=abs_.lattice.elements,
        connectives=report.preserved(),
        var_names=abs_.var_names,
    )


def _intro_rules_for(connectives: frozenset[str]) -> list[Rule]:
    names: list[str] = []
    if "and" in connectives:
        names += ["intro.and.l", "intro.and.r"]
    if "or" in connectives:
        names += ["intro.or.l", "intro.or.r"]
    if "impl" in connectives:
        names += ["intro.impl.l", "intro.impl.r"]
    if "coimpl" in connectives:
        names += ["intro.coimpl.l", "intro.coimpl.r"]
    if "tt" in connectives:
        names += ["intro.tt.r"]
    if "ff" in connectives:
        names += ["intro.ff.l"]
    if "not" in connectives:
        if "impl" in connectives and "ff" in connectives:
            # classical-negation reading through implication-to-absurdity
            names += ["intro.not.def.l", "intro.not.def.r"]
        else:
            # a bare involutive, order-reversing negation carries nothing more
            names += ["intro.not.involution.l", "intro.not.involution.r",
                      "intro.not.contraposition"]
    return [_stock_rule(n) for n in names]


def _binary_table(abs_, conn: str):
    lat = abs_.lattice
    if conn == "and":
        return lat.meet
    if conn == "or":
        return lat.join
    if conn == "impl":
        return lambda a, b: heyting_implication(lat, a, b)
    if conn == "coimpl":
        return lambda a, b: co_implication(lat, a, b)
    raise UnknownSymbol(f"no abstract table for connective {conn!r}")


def generate_proof_system(abs_: Abstraction, report: PreservationReport) -> ProofSystem:
    """Run the full generation procedure for one abstraction."""
    sig = generate_signature(abs_, report)
    lat = abs_.lattice
    rules: list[Rule] = [_stock_rule(n) for n in _STRUCTURAL_SCHEMAS]
    rules += _intro_rules_for(sig.connectives)

    def axiom(kind: str, name: str, s: Sequent) -> Rule:
        return Rule(kind, name, (), render_sequent(s, sig.var), axiom=s)

    for conn in ("and", "or", "impl", "coimpl"):
        if conn not in sig.connectives:
            continue
        op = _binary_table(abs_, conn)
        for a, b in iproduct(lat.elements, lat.elements):
            c = op(a, b)
            compound = Bin(conn, Pred(a), Pred(b))
            rules.append(axiom(KIND_OPERATION, f"op.{conn}.{a}.{b}.l",
                               Sequent((compound,), (Pred(c),))))
            rules.append(axiom(KIND_OPERATION, f"op.{conn}.{a}.{b}.r",
                               Sequent((Pred(c),), (compound,))))
    if "not" in sig.connectives:
        neg = lat.unary_ops["negation"]
        for a in lat.elements:
            b = neg.table[a]
            rules.append(axiom(KIND_OPERATION, f"op.not.{a}.l",
                               Sequent((Not(Pred(a)),), (Pred(b),))))
            rules.append(axiom(KIND_OPERATION, f"op.not.{a}.r",
                               Sequent((Pred(b),), (Not(Pred(a)),))))
    if "tt" in sig.connectives:
        rules.append(axiom(KIND_OPERATION, "op.tt.l",
                           Sequent((Const("tt"),), (Pred(lat.top),))))
        rules.append(axiom(KIND_OPERATION, "op.tt.r",
                           Sequent((Pred(lat.top),), (Const("tt"),))))
    if "ff" in sig.connectives:
        rules.append(axiom(KIND_OPERATION, "op.ff.l",
                           Sequent((Const("ff"),), (Pred(lat.bottom),))))
        rules.append(axiom(KIND_OPERATION, "op.ff.r",
                           Sequent((Pred(lat.bottom),), (Const("ff"),))))

    for a, b in lat.order_pairs():
        name = f"ord.refl.{a}" if a == b else f"ord.{a}.{b}"
        rules.append(axiom(KIND_ORDER, name, Sequent((Pred(a),), (Pred(b),))))

    for name, text in abs_.extra_axioms:
        s = parse_sequent(text, expected_args=abs_.var_names)
        rules.append(axiom(KIND_OPERATION, name, s))

    return ProofSystem(sig, tuple(rules), abs_.name, abs_)


def minimize_proof_system(ps: ProofSystem, oracle) -> ProofSystem:
    """Shrink the axiom set while keeping the derivable-sequent closure.

    ``oracle(system, sequent) -> bool`` decides derivability.  Order axioms
    drop to the Hasse covering edges directly; the remaining operation
    axioms are removed greedily in name order whenever they stay derivable
    without themselves.  Every removed axiom is re-checked against the
    final system, which re-establishes closure equality.
    """
    from .lattice import hasse_edges  # local import keeps module deps one-way

    assert ps.abstraction is not None, "minimization needs the source abstraction"
    lat = ps.abstraction.lattice
    covers = set(hasse_edges(lat))
    removed: dict[str, Sequent] = {}
    for r in ps.rules:
        if r.kind == KIND_ORDER:
            a, b = r.axiom.ante[0].name, r.axiom.succ[0].name
            if a == b or (a, b) not in covers:
                removed[r.name] = r.axiom
    current = ps.without(set(removed))

    candidates = sorted((r for r in current.rules if r.kind == KIND_OPERATION),
                        key=lambda r: r.name)
    for r in candidates:
        trial = current.without({r.name})
        if oracle(trial, r.axiom):
            removed[r.name] = r.axiom
            current = trial

    for name, seq in sorted(removed.items()):
        if not oracle(current, seq):
            raise AssertionError(
                f"minimization broke the closure: {name} no longer derivable")
    return current


def render(ps: ProofSystem, format: str = "text") -> str:
    """Serialize a proof system deterministically."""
    if format == "text":
        return _render_text(ps)
    if format == "latex":
        return _render_latex(ps)
    if format == "machine":
        return _render_machine(ps)
    raise UnknownFormat(f"unknown render format {format!r}")


def _sig_lines(ps: ProofSystem) -> list[str]:
    conns = [c for c in CONNECTIVE_ORDER if c in ps.signature.connectives]
    return [
        "predicates " + " ".join(ps.signature.predicates),
        "connectives " + " ".join(conns),
        "var " + ps.signature.var,
    ]


def _render_text(ps: ProofSystem) -> str:
    lines = [f"proof system for {ps.source}"]
    lines += ["signature " + l for l in _sig_lines(ps)]
    rules = ps.sorted_rules()
    lines.append(f"rules ({len(rules)}):")
    for r in rules:
        lines.append(f"  [{r.kind}] {r.name}: {r.display()}")
    return "\n".join(lines) + "\n"


def _render_latex(ps: ProofSystem) -> str:
    def tex(s: str) -> str:
        return (s.replace("|-", r"\vdash ").replace("->", r"\rightarrow ")
                 .replace("<-", r"\leftarrow ").replace("&", r"\wedge ")
                 .replace("~", r"\neg ").replace("|", r"\vee ")
                 .replace("?phi", r"\varphi").replace("?psi", r"\psi"))

    lines = [f"% proof system for {ps.source}"]
    for r in ps.sorted_rules():
        prem = r" \quad ".join(tex(p) for p in r.premises_display)
        lines.append(f"% {r.kind}: {r.name}")
        lines.append(rf"\[ \frac{{{prem}}}{{{tex(r.conclusion_display)}}} \]")
    return "\n".join(lines) + "\n"


MACHINE_HEADER = "abslog-rules v1"


def _render_machine(ps: ProofSystem) -> str:
    lines = [MACHINE_HEADER, f"source {ps.source}"]
    lines += _sig_lines(ps)
    for r in ps.sorted_rules():
        if r.axiom is not None:
            lines.append(f"rule {r.kind} {r.name} | "
                         f"{render_sequent(r.axiom, ps.signature.var)}")
        else:
            lines.append(f"rule {r.kind} {r.name}")
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> ProofSystem:
    """Inverse of the machine render (up to the in-memory abstraction link)."""
    lines = text.splitlines()
    if not lines or lines[0] != MACHINE_HEADER:
        raise UnknownFormat(f"expected header {MACHINE_HEADER!r}")
    source = ""
    predicates: tuple[str, ...] = ()
    connectives: frozenset[str] = frozenset()
    var_names: tuple[str, ...] = ("x",)
    rules: list[Rule] = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        head, _, rest = ln.partition(" ")
        if head == "source":
            source = rest
        elif head == "predicates":
            predicates = tuple(rest.split())
        elif head == "connectives":
            connectives = frozenset(rest.split())
        elif head == "var":
            var_names = tuple(v.strip() for v in rest.split(","))
        elif head == "rule":
            body, _, seq_text = rest.partition(" | ")
            parts = body.split()
            kind, name = parts[0], parts[1]
            if seq_text:
                s = parse_sequent(seq_text)
                display = render_sequent(s, ",".join(var_names))
                rules.append(Rule(kind, name, (), display, axiom=s))
            else:
                rules.append(_stock_rule(name))
        else:
            raise UnknownFormat(f"unknown machine-format line {ln!r}")
    sig = Signature(predicates, connectives, var_names)
    return ProofSystem(sig, tuple(rules), source)
