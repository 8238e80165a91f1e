"""Formula and sequent syntax, text parsing and rendering.

Grammar (see README for the full EBNF): predicates are written applied to
the object variable(s), as in ``Even(x)`` or ``p:+x+y>=1(x,y)``; the
connectives are ``~  &  |  ->  <-`` plus the constants ``tt`` and ``ff``;
precedence is ``~ > & > | > -> = <-`` with right-associative arrows.
Sequents read ``Gamma |- Delta`` with comma-separated, meta-conjunctive
antecedents and meta-disjunctive (nonempty) succedents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

BINARY_SYMBOLS = {"and": "&", "or": "|", "impl": "->", "coimpl": "<-"}
SYMBOL_OPS = {v: k for k, v in BINARY_SYMBOLS.items()}


@dataclass(frozen=True)
class Pred:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    kind: str  # "tt" | "ff"

    def __str__(self):
        return self.kind


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Bin:
    op: str  # "and" | "or" | "impl" | "coimpl"
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Hole:
    """Schematic metavariable, used only in rule schema displays."""

    label: str


Formula = Pred | Const | Not | Bin | Hole

_PREC = {"impl": 0, "coimpl": 0, "or": 1, "and": 2}


def _prec(f: Formula) -> int:
    if isinstance(f, Bin):
        return _PREC[f.op]
    return 4


def render_formula(f: Formula, var: str = "x") -> str:
    """Deterministic text with minimal parentheses (round-trips via parse)."""
    if isinstance(f, Pred):
        return f"{f.name}({var})"
    if isinstance(f, Const):
        return f.kind
    if isinstance(f, Hole):
        return f"?{f.label}"
    if isinstance(f, Not):
        inner = render_formula(f.arg, var)
        if _prec(f.arg) < 3:
            inner = f"({inner})"
        return f"~{inner}"
    assert isinstance(f, Bin)
    sym = BINARY_SYMBOLS[f.op]
    p = _PREC[f.op]
    # & and | parse left-associatively, arrows right-associatively; a child at
    # the same precedence level needs parentheses on the non-associating side
    lhs = render_formula(f.lhs, var)
    if _prec(f.lhs) < p or (p == 0 and _prec(f.lhs) == 0):
        lhs = f"({lhs})"
    rhs = render_formula(f.rhs, var)
    if _prec(f.rhs) < p or (p > 0 and _prec(f.rhs) == p):
        rhs = f"({rhs})"
    return f"{lhs} {sym} {rhs}"


@dataclass(frozen=True)
class Sequent:
    """Antecedents read meta-conjunctively, succedents meta-disjunctively."""

    ante: tuple[Formula, ...]
    succ: tuple[Formula, ...]

    def __post_init__(self):
        if not self.succ:
            raise ParseError("a sequent needs at least one succedent")


def render_sequent(s: Sequent, var: str = "x") -> str:
    left = ", ".join(render_formula(f, var) for f in s.ante)
    right = ", ".join(render_formula(f, var) for f in s.succ)
    return f"{left} |- {right}" if left else f"|- {right}"


# --- tokenizer -------------------------------------------------------------

_PRED_RE = re.compile(r"([A-Za-z_\[][^\s(),&|~]*)\(([A-Za-z0-9_,\s]*)\)")
_WS_RE = re.compile(r"\s*")

_FIXED = ("|-", "->", "<-", "&", "|", "~", "(", ")", ",")


def _tokenize(text: str, line: int | None = None):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        pos = _WS_RE.match(text, pos).end()
        if pos >= n:
            break
        m = _PRED_RE.match(text, pos)
        if m:
            args = tuple(a.strip() for a in m.group(2).split(",")) if m.group(2).strip() else ()
            tokens.append(("pred", (m.group(1), args), pos))
            pos = m.end()
            continue
        if text.startswith("tt", pos) and not _is_name_char(text, pos + 2):
            tokens.append(("const", "tt", pos))
            pos += 2
            continue
        if text.startswith("ff", pos) and not _is_name_char(text, pos + 2):
            tokens.append(("const", "ff", pos))
            pos += 2
            continue
        for sym in _FIXED:
            if text.startswith(sym, pos):
                tokens.append((sym, sym, pos))
                pos += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
    return tokens


def _is_name_char(text: str, pos: int) -> bool:
    return pos < len(text) and re.match(r"[A-Za-z0-9_]", text[pos]) is not None


class _Parser:
    def __init__(self, text: str, line: int | None = None):
        self.text = text
        self.line = line
        self.tokens = _tokenize(text, line)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", self.line, tok[2] + 1)
        return tok

    def formula(self) -> Formula:
        return self._arrow()

    def _arrow(self) -> Formula:
        lhs = self._disj()
        kind, _, _ = self.peek()
        if kind in ("->", "<-"):
            self.next()
            rhs = self._arrow()
            return Bin(SYMBOL_OPS[kind], lhs, rhs)
        return lhs

    def _disj(self) -> Formula:
        f = self._conj()
        while self.peek()[0] == "|":
            self.next()
            f = Bin("or", f, self._conj())
        return f

    def _conj(self) -> Formula:
        f = self._unary()
        while self.peek()[0] == "&":
            self.next()
            f = Bin("and", f, self._unary())
        return f

    def _unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "~":
            self.next()
            return Not(self._unary())
        if kind == "pred":
            self.next()
            name, _args = value
            return Pred(name)
        if kind == "const":
            self.next()
            return Const(value)
        if kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError("expected a formula", self.line, pos + 1)


def _check_args(p: _Parser, expected_args) -> None:
    # argument lists are validated on the token stream before parsing so the
    # AST can stay variable-free (one fixed object variable per signature)
    if expected_args is None:
        return
    for kind, value, pos in p.tokens:
        if kind == "pred" and value[1] != tuple(expected_args):
            raise ParseError(
                f"predicate {value[0]!r} applied to ({','.join(value[1])}); "
                f"expected ({','.join(expected_args)})", p.line, pos + 1)


def parse_formula(text: str, line: int | None = None,
                  expected_args: tuple[str, ...] | None = None) -> Formula:
    """Parse a single formula; raises :class:`ParseError` on bad syntax."""
    p = _Parser(text, line)
    _check_args(p, expected_args)
    f = p.formula()
    if p.i != len(p.tokens):
        raise ParseError("trailing input after formula", line, p.peek()[2] + 1)
    return f


def parse_sequent(text: str, line: int | None = None,
                  expected_args: tuple[str, ...] | None = None) -> Sequent:
    """Parse ``Gamma |- Delta``; the antecedent may be empty."""
    p = _Parser(text, line)
    _check_args(p, expected_args)
    ante: list[Formula] = []
    if p.peek()[0] != "|-":
        ante.append(p.formula())
        while p.peek()[0] == ",":
            p.next()
            ante.append(p.formula())
    p.expect("|-")
    succ = [p.formula()]
    while p.peek()[0] == ",":
        p.next()
        succ.append(p.formula())
    if p.i != len(p.tokens):
        raise ParseError("trailing input after sequent", line, p.peek()[2] + 1)
    return Sequent(tuple(ante), tuple(succ))


def formula_symbols(f: Formula) -> tuple[set[str], set[str]]:
    """Collect (predicate names, connective names) used in a formula."""
    preds: set[str] = set()
    conns: set[str] = set()

    def walk(g: Formula):
        if isinstance(g, Pred):
            preds.add(g.name)
        elif isinstance(g, Const):
            conns.add(g.kind)
        elif isinstance(g, Not):
            conns.add("not")
            walk(g.arg)
        elif isinstance(g, Bin):
            conns.add(g.op)
            walk(g.lhs)
            walk(g.rhs)

    walk(f)
    return preds, conns
