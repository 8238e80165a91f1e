"""Lattice construction, order algebra and (bi-)Heyting operations."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abslog.errors import (
    CarrierTooLarge,
    NotALattice,
    NotAPartialOrder,
    NotDistributive,
    UnknownElement,
)
from abslog.lattice import (
    build_lattice,
    co_implication,
    find_order_reversing_involutions,
    hasse_edges,
    heyting_implication,
    is_distributive,
    is_join_irreducible,
    is_meet_irreducible,
)

DIAMOND_EDGES = [("bot", "Even"), ("bot", "Odd"), ("Even", "top"), ("Odd", "top")]


@pytest.fixture
def diamond():
    return build_lattice(["bot", "Even", "Odd", "top"], DIAMOND_EDGES)


@pytest.fixture
def chain3():
    return build_lattice(["bot", "mid", "top"], [("bot", "mid"), ("mid", "top")])


@pytest.fixture
def m3():
    edges = [("bot", x) for x in "pqr"] + [(x, "top") for x in "pqr"]
    return build_lattice(["bot", "p", "q", "r", "top"], edges)


def test_two_chain():
    two = build_lattice(["bot", "top"], [("bot", "top")])
    assert two.top == "top" and two.bottom == "bot"
    assert two.meet("bot", "top") == "bot"
    assert two.join("bot", "top") == "top"


def test_diamond_tables(diamond):
    assert diamond.meet("Even", "Odd") == "bot"
    assert diamond.join("Even", "Odd") == "top"
    assert diamond.meet("Even", "top") == "Even"
    assert diamond.top == "top" and diamond.bottom == "bot"


def test_missing_lub_is_rejected():
    with pytest.raises(NotALattice) as exc:
        build_lattice(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert "b" in str(exc.value) and "c" in str(exc.value)


def test_antisymmetry_violation_named():
    with pytest.raises(NotAPartialOrder) as exc:
        build_lattice(["a", "b"], [("a", "b"), ("b", "a")])
    assert "antisymmetry" in str(exc.value)


def test_full_mode_requires_transitivity():
    with pytest.raises(NotAPartialOrder) as exc:
        build_lattice(["a", "b", "c"], [("a", "b"), ("b", "c")], closure_mode="full")
    assert "transitivity" in str(exc.value)


def test_unknown_element_in_pairs():
    with pytest.raises(UnknownElement):
        build_lattice(["a"], [("a", "zz")])


def test_leq(diamond):
    assert diamond.leq("bot", "Even")
    assert not diamond.leq("Even", "Odd")
    for e in diamond.elements:
        assert diamond.leq(e, e)
    with pytest.raises(UnknownElement):
        diamond.leq("Even", "nope")


def test_lattice_laws_exhaustive(diamond, chain3, m3):
    for lat in (diamond, chain3, m3):
        for a in lat.elements:
            for b in lat.elements:
                assert lat.meet(a, b) == lat.meet(b, a)
                assert lat.join(a, b) == lat.join(b, a)
                assert lat.join(a, lat.meet(a, b)) == a  # absorption
                assert lat.leq(a, b) == (lat.meet(a, b) == a)
                assert lat.leq(a, b) == (lat.join(a, b) == b)


def test_distributivity(diamond, chain3, m3):
    assert is_distributive(diamond)
    assert is_distributive(chain3)
    assert not is_distributive(m3)
    # independent oracle: locate a violating triple in M3 by brute force
    triples = [(a, b, c)
               for a in m3.elements for b in m3.elements for c in m3.elements
               if m3.meet(a, m3.join(b, c)) != m3.join(m3.meet(a, b), m3.meet(a, c))]
    assert triples


def test_heyting_on_diamond(diamond):
    # oracle: exhaustive max of the candidate set
    cands = [c for c in diamond.elements if diamond.leq(diamond.meet("Even", c), "bot")]
    assert set(cands) == {"bot", "Odd"}
    assert heyting_implication(diamond, "Even", "bot") == "Odd"
    for a in diamond.elements:
        assert heyting_implication(diamond, a, "top") == "top"
        assert heyting_implication(diamond, "bot", a) == "top"


def test_heyting_residuation(diamond, chain3):
    for lat in (diamond, chain3):
        for a in lat.elements:
            for b in lat.elements:
                h = heyting_implication(lat, a, b)
                assert lat.leq(lat.meet(a, h), b)
                for c in lat.elements:
                    if lat.leq(lat.meet(a, c), b):
                        assert lat.leq(c, h)


def test_co_implication(diamond):
    assert co_implication(diamond, "top", "Even") == "Odd"
    for a in diamond.elements:
        assert co_implication(diamond, "bot", a) == "bot"
        assert co_implication(diamond, a, a) == "bot"


def test_co_implication_residuation(diamond, chain3):
    for lat in (diamond, chain3):
        for a in lat.elements:
            for b in lat.elements:
                c = co_implication(lat, a, b)
                assert lat.leq(a, lat.join(b, c))
                for d in lat.elements:
                    if lat.leq(a, lat.join(b, d)):
                        assert lat.leq(c, d)


def test_heyting_refuses_m3(m3):
    with pytest.raises(NotDistributive):
        heyting_implication(m3, "p", "q")
    with pytest.raises(NotDistributive):
        co_implication(m3, "p", "q")


def test_irreducibility(diamond, chain3):
    assert is_meet_irreducible(diamond, "Even")
    assert not is_meet_irreducible(diamond, "bot")  # Even /\ Odd = bot
    assert not is_meet_irreducible(diamond, "top")
    assert is_join_irreducible(chain3, "mid")
    assert not is_join_irreducible(chain3, "bot")


def test_hasse_edges(diamond, chain3):
    assert set(hasse_edges(chain3)) == {("bot", "mid"), ("mid", "top")}
    assert len(hasse_edges(diamond)) == 4
    two = build_lattice(["bot", "top"], [("bot", "top")])
    assert hasse_edges(two) == [("bot", "top")]


def test_hasse_closure_reproduces_order(diamond, m3):
    for lat in (diamond, m3):
        rebuilt = build_lattice(lat.elements, hasse_edges(lat))
        for a in lat.elements:
            for b in lat.elements:
                assert rebuilt.leq(a, b) == lat.leq(a, b)


def test_involutions_of_diamond(diamond):
    invs = find_order_reversing_involutions(diamond)
    tables = [tuple(sorted(t.table.items())) for t in invs]
    keep = {("Even", "Even"), ("Odd", "Odd"), ("bot", "top"), ("top", "bot")}
    swap = {("Even", "Odd"), ("Odd", "Even"), ("bot", "top"), ("top", "bot")}
    assert tuple(sorted(keep)) in tables
    assert tuple(sorted(swap)) in tables
    # oracle: brute-force over all 4^4 maps
    names = diamond.elements
    brute = []
    from itertools import product
    for images in product(names, repeat=4):
        f = dict(zip(names, images))
        if all(f[f[a]] == a for a in names) and all(
                not diamond.leq(a, b) or diamond.leq(f[b], f[a])
                for a in names for b in names):
            brute.append(tuple(sorted(f.items())))
    assert sorted(tables) == sorted(brute)


def test_involutions_two_chain():
    two = build_lattice(["bot", "top"], [("bot", "top")])
    invs = find_order_reversing_involutions(two)
    assert len(invs) == 1
    assert invs[0].table == {"bot": "top", "top": "bot"}


def test_involution_properties_recheck(m3):
    for t in find_order_reversing_involutions(m3):
        f = t.table
        for a in m3.elements:
            assert f[f[a]] == a
            for b in m3.elements:
                if m3.leq(a, b):
                    assert m3.leq(f[b], f[a])


def test_involution_carrier_cap():
    elems = [f"c{i}" for i in range(13)]
    chain = build_lattice(elems, list(zip(elems, elems[1:])))
    with pytest.raises(CarrierTooLarge):
        find_order_reversing_involutions(chain)


@given(st.integers(min_value=2, max_value=7))
def test_chains_are_distributive(k):
    elems = [f"c{i}" for i in range(k)]
    chain = build_lattice(elems, list(zip(elems, elems[1:])))
    assert is_distributive(chain)
    assert chain.bottom == "c0" and chain.top == f"c{k - 1}"
