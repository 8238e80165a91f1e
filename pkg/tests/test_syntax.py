"""Formula/sequent parsing and deterministic rendering."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abslog.errors import ParseError
from abslog.syntax import (
    Bin,
    Const,
    Not,
    Pred,
    Sequent,
    parse_formula,
    parse_sequent,
    render_formula,
    render_sequent,
)


def test_parse_atoms():
    assert parse_formula("Even(x)") == Pred("Even")
    assert parse_formula("tt") == Const("tt")
    assert parse_formula("~Odd(x)") == Not(Pred("Odd"))


def test_octagon_style_names():
    f = parse_formula("p:+x+y>=1(x,y)")
    assert f == Pred("p:+x+y>=1")
    s = parse_sequent("p:+x+y>=1(x,y), p:-x-y>=0(x,y) |- ff")
    assert s.ante == (Pred("p:+x+y>=1"), Pred("p:-x-y>=0"))
    assert s.succ == (Const("ff"),)


def test_precedence():
    f = parse_formula("a(x) & b(x) | c(x) -> d(x)")
    assert f == Bin("impl", Bin("or", Bin("and", Pred("a"), Pred("b")), Pred("c")),
                    Pred("d"))
    g = parse_formula("~a(x) & b(x)")
    assert g == Bin("and", Not(Pred("a")), Pred("b"))


def test_arrows_right_associative():
    f = parse_formula("a(x) -> b(x) -> c(x)")
    assert f == Bin("impl", Pred("a"), Bin("impl", Pred("b"), Pred("c")))
    g = parse_formula("a(x) <- b(x) -> c(x)")
    assert g == Bin("coimpl", Pred("a"), Bin("impl", Pred("b"), Pred("c")))


def test_parens():
    f = parse_formula("(a(x) | b(x)) & c(x)")
    assert f == Bin("and", Bin("or", Pred("a"), Pred("b")), Pred("c"))


def test_sequent_shapes():
    s = parse_sequent("|- tt")
    assert s.ante == () and s.succ == (Const("tt"),)
    s = parse_sequent("a(x), b(x) |- c(x), d(x)")
    assert len(s.ante) == 2 and len(s.succ) == 2


def test_sequent_needs_succedent():
    with pytest.raises(ParseError):
        parse_sequent("a(x) |-")
    with pytest.raises(ParseError):
        Sequent((Pred("a"),), ())


def test_arg_validation():
    parse_sequent("a(x) |- b(x)", expected_args=("x",))
    with pytest.raises(ParseError):
        parse_sequent("a(y) |- b(y)", expected_args=("x",))
    with pytest.raises(ParseError):
        parse_formula("a(x) |- oops")


def test_parse_errors_position():
    with pytest.raises(ParseError) as exc:
        parse_formula("a(x) & $")
    assert "col" in str(exc.value)


names = st.sampled_from(["Even", "Odd", "bot", "top", "p:+x+y>=1", "[-1..0]"])


@st.composite
def formulas(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.integers(0, 2))
        if kind == 0:
            return Pred(draw(names))
        return Const(draw(st.sampled_from(["tt", "ff"])))
    op = draw(st.sampled_from(["and", "or", "impl", "coimpl", "not"]))
    if op == "not":
        return Not(draw(formulas(depth=depth - 1)))
    return Bin(op, draw(formulas(depth=depth - 1)), draw(formulas(depth=depth - 1)))


@given(formulas())
def test_formula_roundtrip(f):
    assert parse_formula(render_formula(f)) == f


@given(st.lists(formulas(), max_size=3), st.lists(formulas(), min_size=1, max_size=3))
def test_sequent_roundtrip(ante, succ):
    s = Sequent(tuple(ante), tuple(succ))
    assert parse_sequent(render_sequent(s)) == s
