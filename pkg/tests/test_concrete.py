"""Concrete universes, gamma maps, preservation analysis and the left adjoint."""

import random

import pytest

from abslog.concrete import (
    Abstraction,
    ConcreteUniverse,
    ConcretizationMap,
    check_order_embedding,
    compute_left_adjoint,
    concrete_op,
    preservation_report,
)
from abslog.errors import InvalidConcretization, UnknownOperation
from abslog.lattice import UnaryOpTable, build_lattice


def window(lo, hi):
    return ConcreteUniverse.window(lo, hi)


def parity_abstraction(lo=-8, hi=8):
    lat = build_lattice(
        ["bot", "Even", "Odd", "top"],
        [("bot", "Even"), ("bot", "Odd"), ("Even", "top"), ("Odd", "top")],
        unary_ops={"negation": UnaryOpTable("negation", {
            "bot": "top", "Even": "Odd", "Odd": "Even", "top": "bot"})},
    )
    uni = window(lo, hi)
    evens = uni.subset(p for p in uni.points if p % 2 == 0)
    odds = uni.subset(p for p in uni.points if p % 2 != 0)
    gamma = ConcretizationMap(lat, uni, {
        "bot": uni.empty(), "Even": evens, "Odd": odds, "top": uni.full()})
    return Abstraction("parity", lat, gamma)


def sign_abstraction():
    lat = build_lattice(
        ["bot", "Neg", "Zero", "Pos", "top"],
        [("bot", s) for s in ("Neg", "Zero", "Pos")]
        + [(s, "top") for s in ("Neg", "Zero", "Pos")])
    uni = window(-8, 8)
    gamma = ConcretizationMap(lat, uni, {
        "bot": uni.empty(),
        "Neg": uni.subset(p for p in uni.points if p < 0),
        "Zero": uni.subset([0]),
        "Pos": uni.subset(p for p in uni.points if p > 0),
        "top": uni.full()})
    return Abstraction("sign", lat, gamma)


def test_universe_windows_and_atoms():
    u = window(-2, 2)
    assert u.points == (-2, -1, 0, 1, 2)
    a = ConcreteUniverse.atoms(["q", "p"])
    assert a.points == ("p", "q")
    t = ConcreteUniverse.window(0, 1, dim=2)
    assert t.points == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_concrete_ops():
    u = window(-8, 8)
    evens = u.subset(p for p in u.points if p % 2 == 0)
    odds = u.subset(p for p in u.points if p % 2 != 0)
    assert concrete_op(u, "complement", evens).members == odds.members
    assert concrete_op(u, "intersection", evens, u.full()).members == evens.members
    assert concrete_op(u, "implication", evens, u.empty()).members == odds.members
    assert concrete_op(u, "coimplication", u.full(), evens).members == odds.members
    with pytest.raises(UnknownOperation):
        concrete_op(u, "xor", evens, odds)


def test_monotonicity_validated():
    lat = build_lattice(["bot", "top"], [("bot", "top")])
    u = window(0, 1)
    with pytest.raises(InvalidConcretization):
        ConcretizationMap(lat, u, {"bot": u.full(), "top": u.empty()})


def test_order_embedding_parity():
    assert check_order_embedding(parity_abstraction()).is_embedding


def test_order_embedding_failure_witnessed():
    lat = build_lattice(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    u = ConcreteUniverse.atoms(["p", "q"])
    s = u.subset(["p"])
    gamma = ConcretizationMap(lat, u, {
        "bot": u.empty(), "a": s, "b": s, "top": u.full()})
    res = check_order_embedding(Abstraction("dup", lat, gamma))
    assert not res.is_embedding
    a, b = res.witness
    assert a != b and gamma(a).issubset(gamma(b)) and not lat.leq(a, b)


def test_order_embedding_singleton():
    lat = build_lattice(["only"], [])
    u = window(0, 0)
    gamma = ConcretizationMap(lat, u, {"only": u.full()})
    assert check_order_embedding(Abstraction("one", lat, gamma)).is_embedding


def test_parity_preserves_everything():
    report = preservation_report(parity_abstraction())
    assert report.preserved() == {"tt", "ff", "and", "or", "not", "impl", "coimpl"}


def test_sign_join_not_preserved():
    report = preservation_report(sign_abstraction())
    assert "or" not in report.preserved()
    assert {"tt", "ff", "and"} <= report.preserved()
    status = report.statuses["or"]
    a, b = status.witness
    # the witness must actually violate the preservation equation
    abs_ = sign_abstraction()
    lhs = abs_.gamma(abs_.lattice.join(a, b))
    rhs = abs_.gamma(a).union(abs_.gamma(b))
    assert lhs.members != rhs.members
    # impl/coimpl are out of scope: the sign lattice is not distributive
    assert report.statuses["impl"].state == "not_applicable"


def test_bottom_preservation_trivial():
    report = preservation_report(sign_abstraction())
    assert report.statuses["ff"].state == "preserved"


def test_left_adjoint_parity():
    abs_ = parity_abstraction()
    res = compute_left_adjoint(abs_)
    assert res.total
    assert res.alpha(abs_.universe.subset([2, 4])) == "Even"
    assert res.alpha(abs_.universe.empty()) == "bot"
    assert res.alpha(abs_.universe.subset([1, 2])) == "top"


def test_left_adjoint_adjunction_law():
    abs_ = parity_abstraction()
    alpha = compute_left_adjoint(abs_).alpha
    rng = random.Random(7)
    pts = abs_.universe.points
    for _ in range(200):
        s = abs_.universe.subset(rng.sample(pts, rng.randrange(len(pts) + 1)))
        a_s = alpha(s)
        for a in abs_.lattice.elements:
            assert abs_.lattice.leq(a_s, a) == s.issubset(abs_.gamma(a))


def test_left_adjoint_absent_with_witness():
    # gamma(top) misses a point, so the full set has no over-approximation
    lat = build_lattice(["bot", "top"], [("bot", "top")])
    u = window(0, 1)
    gamma = ConcretizationMap(lat, u, {"bot": u.empty(), "top": u.subset([0])})
    res = compute_left_adjoint(Abstraction("gap", lat, gamma))
    assert not res.total
    s = res.witness
    over = [a for a in lat.elements if s.issubset(gamma(a))]
    assert not over or all(
        any(not lat.leq(m, a) for a in over) for m in over)  # no minimum


def test_left_adjoint_absent_on_meet_failure():
    # two incomparable over-approximations of their intersection, no least one
    lat = build_lattice(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    u = window(0, 2)
    gamma = ConcretizationMap(lat, u, {
        "bot": u.empty(), "a": u.subset([0, 1]), "b": u.subset([1, 2]),
        "top": u.full()})
    res = compute_left_adjoint(Abstraction("nomeet", lat, gamma))
    assert not res.total
    assert res.witness.members == frozenset([1])
