"""Signature/proof-system generation, axiom minimization, render formats."""

import pytest

from abslog.concrete import preservation_report
from abslog.errors import UnknownFormat
from abslog.lattice import hasse_edges
from abslog.logicgen import (
    KIND_INTRODUCTION,
    KIND_OPERATION,
    KIND_ORDER,
    KIND_STRUCTURAL,
    generate_proof_system,
    generate_signature,
    minimize_proof_system,
    parse_machine,
    render,
)
from abslog.proofengine import derivable
from abslog.syntax import parse_sequent


def system(abs_):
    return generate_proof_system(abs_, preservation_report(abs_))


def test_parity_signature(parity):
    sig = generate_signature(parity, preservation_report(parity))
    assert sig.predicates == ("bot", "Even", "Odd", "top")
    assert sig.connectives == {"tt", "ff", "and", "or", "not", "impl", "coimpl"}


def test_signature_matches_preserved_exactly(builtins):
    for abs_ in builtins.values():
        report = preservation_report(abs_)
        sig = generate_signature(abs_, report)
        assert sig.connectives == report.preserved()


def test_structural_rules_present(threechain):
    ps = system(threechain)
    names = ps.rule_names()
    for r in ("identity", "cut", "weaken.l", "weaken.r", "contract.l",
              "contract.r", "exchange.l", "exchange.r"):
        assert r in names


def test_parity_operation_axioms(parity):
    ps = system(parity)
    by_name = {r.name: r for r in ps.rules}
    # Even(x) & Odd(x) -||- bot(x), read off the meet table
    l = by_name["op.and.Even.Odd.l"]
    assert l.axiom == parse_sequent("Even(x) & Odd(x) |- bot(x)")
    r = by_name["op.and.Even.Odd.r"]
    assert r.axiom == parse_sequent("bot(x) |- Even(x) & Odd(x)")
    assert by_name["op.or.Even.Odd.l"].axiom == \
        parse_sequent("Even(x) | Odd(x) |- top(x)")
    assert by_name["ord.bot.Even"].axiom == parse_sequent("bot(x) |- Even(x)")


def test_order_axiom_count_equals_order(builtins):
    for abs_ in builtins.values():
        ps = system(abs_)
        order_rules = [r for r in ps.rules if r.kind == KIND_ORDER]
        assert len(order_rules) == len(abs_.lattice.order_pairs())


def test_operation_axioms_instantiate_tables(parity):
    ps = system(parity)
    lat = parity.lattice
    for r in ps.rules:
        if r.name.startswith("op.and.") and r.name.endswith(".l"):
            _, _, a, b, _ = r.name.split(".")
            assert r.axiom.succ[0].name == lat.meet(a, b)


def test_negation_via_implication_for_parity(parity):
    names = system(parity).rule_names()
    assert "intro.not.def.l" in names and "intro.not.def.r" in names
    assert "intro.not.contraposition" not in names


def test_primitive_negation_without_impl(builtins):
    oct_ = builtins["octagon-c1"]
    names = system(oct_).rule_names()
    assert "intro.not.contraposition" in names
    assert "intro.not.involution.l" in names
    assert "intro.not.def.l" not in names


def test_extra_axioms_become_rules(builtins):
    oct_ = builtins["octagon-c1"]
    ps = system(oct_)
    by_name = {r.name: r for r in ps.rules}
    assert "axiom.001" in by_name
    assert by_name["axiom.001"].kind == KIND_OPERATION
    assert by_name["axiom.001"].axiom == parse_sequent(
        "p:+x+y>=1(x,y), p:-x-y>=0(x,y) |- ff")


ORACLE = lambda ps, s: derivable(ps, s)


def test_minimize_chain_order_axioms(threechain):
    ps = system(threechain)
    mini = minimize_proof_system(ps, ORACLE)
    order_rules = {(r.axiom.ante[0].name, r.axiom.succ[0].name)
                   for r in mini.rules if r.kind == KIND_ORDER}
    assert order_rules == {("bot", "mid"), ("mid", "top")}


def test_minimize_removes_table_axioms(parity):
    ps = system(parity)
    mini = minimize_proof_system(ps, ORACLE)
    names = mini.rule_names()
    assert "op.and.Even.top.l" not in names
    # the removed axiom stays derivable
    assert derivable(mini, parse_sequent("Even(x) & top(x) |- Even(x)"))
    assert derivable(mini, parse_sequent("Even(x) |- Even(x) & top(x)"))


def test_minimize_order_axioms_equal_hasse(builtins):
    for abs_ in builtins.values():
        mini = minimize_proof_system(system(abs_), ORACLE)
        order_rules = {(r.axiom.ante[0].name, r.axiom.succ[0].name)
                       for r in mini.rules if r.kind == KIND_ORDER}
        assert order_rules == set(hasse_edges(abs_.lattice))


def test_minimize_fixpoint(threechain):
    mini = minimize_proof_system(system(threechain), ORACLE)
    again = minimize_proof_system(mini, ORACLE)
    assert again == mini


def test_minimize_keeps_infeasibility_frontier(builtins):
    oct_ = builtins["octagon-c1"]
    mini = minimize_proof_system(system(oct_), ORACLE)
    kept = sorted(r.name for r in mini.rules if r.name.startswith("axiom."))
    # pairs with c1 + c2 >= 2 follow from the c1 + c2 = 1 frontier by cut
    assert kept == ["axiom.000", "axiom.001", "axiom.003", "axiom.004"]
    for r in (r for r in system(oct_).rules if r.name.startswith("axiom.")):
        assert derivable(mini, r.axiom)


def test_render_text_deterministic(parity):
    ps = system(parity)
    t1, t2 = render(ps, "text"), render(ps, "text")
    assert t1 == t2
    assert "op.and.Even.Odd.l: Even(x) & Odd(x) |- bot(x)" in t1


def test_render_latex_structure(parity):
    ps = system(parity)
    tex = render(ps, "latex")
    assert tex.count(r"\frac") == len(ps.rules)


def test_machine_roundtrip(builtins):
    for abs_ in builtins.values():
        ps = system(abs_)
        text = render(ps, "machine")
        assert text.startswith("abslog-rules v1\n")
        again = parse_machine(text)
        assert again == ps
        assert render(again, "machine") == text


def test_unknown_format(parity):
    with pytest.raises(UnknownFormat):
        render(system(parity), "yaml")


def test_rule_kinds_partition(parity):
    ps = system(parity)
    kinds = {r.kind for r in ps.rules}
    assert kinds == {KIND_STRUCTURAL, KIND_INTRODUCTION, KIND_OPERATION, KIND_ORDER}
    for r in ps.rules:
        if r.kind in (KIND_OPERATION, KIND_ORDER):
            assert r.axiom is not None and not r.premises_display
