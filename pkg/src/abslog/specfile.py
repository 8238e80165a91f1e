"""Abstraction spec files: a line-oriented textual format.

Sections are ``ELEMENTS / ORDER / OPS / UNIVERSE / GAMMA / AXIOMS`` with
``#`` comments; ``ORDER`` lines are Hasse (covering) edges; ``GAMMA``
entries use the shorthands ``{}``, ``all``, ``evens``, ``odds``,
``range(lo,hi)``, ``union(...)`` or explicit point lists in braces.  The
optional ``AXIOMS`` section holds extra axiom sequents, one per line
(the octagon export stores its pairwise infeasibility axioms there).
Errors are positioned by line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .concrete import Abstraction, ConcreteSet, ConcreteUniverse, ConcretizationMap
from .errors import AbslogError, ParseError, SpecError
from .lattice import BinaryOpTable, FiniteLattice, UnaryOpTable, build_lattice, hasse_edges
from .syntax import formula_symbols, parse_sequent

SECTIONS = ("ELEMENTS", "ORDER", "OPS", "UNIVERSE", "GAMMA", "AXIOMS")


def default_var_names(dim: int) -> tuple[str, ...]:
    if dim == 1:
        return ("x",)
    if dim == 2:
        return ("x", "y")
    return tuple(f"x{i + 1}" for i in range(dim))


def load_path(path: str | Path) -> Abstraction:
    path = Path(path)
    return load(path.read_text(), name=path.stem)


def load(text: str, name: str = "spec") -> Abstraction:
    elements: list[str] = []
    order: list[tuple[str, str]] = []
    unary: dict[str, dict[str, str]] = {}
    binary: dict[str, dict[tuple[str, str], str]] = {}
    universe_line: tuple[int, str] | None = None
    gamma_lines: list[tuple[int, str, str]] = []
    axiom_lines: list[tuple[int, str]] = []
    section = None
    current_op: tuple[str, str] | None = None  # (kind, name)

    for ln_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in SECTIONS:
            section = line
            current_op = None
            continue
        if section is None:
            raise ParseError(f"content before any section: {line!r}", ln_no)
        if section == "ELEMENTS":
            for e in line.split():
                if e in elements:
                    raise SpecError(f"duplicate element {e!r}", ln_no)
                elements.append(e)
        elif section == "ORDER":
            if " < " not in line:
                raise ParseError(f"expected 'a < b', got {line!r}", ln_no)
            a, _, b = line.partition(" < ")
            a, b = a.strip(), b.strip()
            if a not in elements:
                raise SpecError(f"unknown element {a!r} in ORDER", ln_no)
            if b not in elements:
                raise SpecError(f"unknown element {b!r} in ORDER", ln_no)
            order.append((a, b))
        elif section == "OPS":
            words = line.split()
            if words[0] in ("unary", "binary"):
                if len(words) != 2:
                    raise ParseError(f"expected '{words[0]} NAME'", ln_no)
                current_op = (words[0], words[1])
                (unary if words[0] == "unary" else binary).setdefault(words[1], {})
            elif current_op is None:
                raise ParseError("operation entry before 'unary NAME' or "
                                 "'binary NAME'", ln_no)
            elif " = " in line:
                lhs, _, rhs = line.partition(" = ")
                args = lhs.split()
                rhs = rhs.strip()
                kind, opname = current_op
                for sym in args + [rhs]:
                    if sym not in elements:
                        raise SpecError(f"unknown element {sym!r} in OPS", ln_no)
                if kind == "unary":
                    if len(args) != 1:
                        raise ParseError("unary entry needs one argument", ln_no)
                    unary[opname][args[0]] = rhs
                else:
                    if len(args) != 2:
                        raise ParseError("binary entry needs two arguments", ln_no)
                    binary[opname][(args[0], args[1])] = rhs
            else:
                raise ParseError(f"malformed OPS line {line!r}", ln_no)
        elif section == "UNIVERSE":
            if universe_line is not None:
                raise ParseError("duplicate UNIVERSE declaration", ln_no)
            universe_line = (ln_no, line)
        elif section == "GAMMA":
            if " = " not in line:
                raise ParseError(f"expected 'element = expr', got {line!r}", ln_no)
            elt, _, expr = line.partition(" = ")
            elt = elt.strip()
            if elt not in elements:
                raise SpecError(f"unknown element {elt!r} in GAMMA", ln_no)
            gamma_lines.append((ln_no, elt, expr.strip()))
        elif section == "AXIOMS":
            axiom_lines.append((ln_no, line))

    if not elements:
        raise SpecError("no ELEMENTS declared")
    if universe_line is None:
        raise SpecError("no UNIVERSE declared")

    lattice = build_lattice(
        elements, order, closure_mode="hasse",
        unary_ops={n: UnaryOpTable(n, t) for n, t in unary.items()},
        binary_ops={n: BinaryOpTable(n, t) for n, t in binary.items()})

    uni = _parse_universe(*universe_line)

    table: dict[str, ConcreteSet] = {}
    for ln_no, elt, expr in gamma_lines:
        if elt in table:
            raise SpecError(f"duplicate GAMMA entry for {elt!r}", ln_no)
        try:
            table[elt] = _eval_set_expr(expr, uni)
        except AbslogError as e:
            raise SpecError(f"bad GAMMA entry for {elt!r}: {e}", ln_no) from e
    missing = [e for e in elements if e not in table]
    if missing:
        raise SpecError(f"GAMMA missing entries for {missing}")
    gamma = ConcretizationMap(lattice, uni, table)

    dim = uni.params[2] if uni.kind == "window" else 1
    var_names = default_var_names(dim)
    axioms = []
    for i, (ln_no, line) in enumerate(axiom_lines):
        seq = parse_sequent(line, line=ln_no, expected_args=var_names)
        for f in seq.ante + seq.succ:
            preds, _ = formula_symbols(f)
            for p in preds:
                if p not in lattice.index:
                    raise SpecError(f"axiom uses unknown predicate {p!r}", ln_no)
        axioms.append((f"axiom.{i:03d}", line))

    return Abstraction(name, lattice, gamma, var_names=var_names,
                       extra_axioms=tuple(axioms))


def _parse_universe(ln_no: int, line: str) -> ConcreteUniverse:
    words = line.split()
    if words[0] == "atoms":
        if len(words) < 2:
            raise SpecError("atoms universe needs at least one point", ln_no)
        if len(set(words[1:])) != len(words[1:]):
            raise SpecError("duplicate atoms", ln_no)
        return ConcreteUniverse.atoms(words[1:])
    if words[0] == "window":
        try:
            if len(words) == 3:
                return ConcreteUniverse.window(int(words[1]), int(words[2]))
            if len(words) == 5 and words[3] == "dim":
                return ConcreteUniverse.window(int(words[1]), int(words[2]),
                                               dim=int(words[4]))
        except ValueError:
            pass
        raise ParseError("expected 'window LO HI' or 'window LO HI dim N'", ln_no)
    raise ParseError(f"unknown universe kind {words[0]!r}", ln_no)


_TUPLE_RE = re.compile(r"\(\s*-?\d+\s*(?:,\s*-?\d+\s*)+\)|\S+")


def _parse_point(tok: str, uni: ConcreteUniverse):
    if tok.startswith("("):
        return tuple(int(x) for x in tok[1:-1].split(","))
    try:
        return int(tok)
    except ValueError:
        return tok


def _eval_set_expr(expr: str, uni: ConcreteUniverse) -> ConcreteSet:
    expr = expr.strip()
    if expr == "{}":
        return uni.empty()
    if expr == "all":
        return uni.full()
    if expr in ("evens", "odds"):
        if uni.kind != "window" or uni.params[2] != 1:
            raise SpecError(f"{expr!r} needs a one-dimensional integer window")
        parity = 0 if expr == "evens" else 1
        return uni.subset(p for p in uni.points if p % 2 == parity)
    m = re.fullmatch(r"range\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", expr)
    if m:
        if uni.kind != "window" or uni.params[2] != 1:
            raise SpecError("'range' needs a one-dimensional integer window")
        lo, hi = int(m.group(1)), int(m.group(2))
        return uni.subset(p for p in uni.points if lo <= p <= hi)
    if expr.startswith("union(") and expr.endswith(")"):
        inner = expr[len("union("):-1]
        parts = _split_top_level(inner)
        out = uni.empty()
        for part in parts:
            out = out.union(_eval_set_expr(part, uni))
        return out
    if expr.startswith("{") and expr.endswith("}"):
        toks = _TUPLE_RE.findall(expr[1:-1])
        pts = [_parse_point(t, uni) for t in toks]
        for p in pts:
            if p not in uni.point_set:
                raise SpecError(f"point {p!r} is outside the universe")
        return uni.subset(pts)
    raise SpecError(f"cannot parse set expression {expr!r}")


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _render_point(p) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(str(x) for x in p) + ")"
    return str(p)


def emit(abs_: Abstraction) -> str:
    """Serialize an abstraction deterministically (explicit point lists)."""
    lat = abs_.lattice
    lines = [f"# abstraction: {abs_.name}", "ELEMENTS"]
    lines += [" ".join(lat.elements)]
    lines.append("ORDER")
    for a, b in sorted(hasse_edges(lat)):
        lines.append(f"{a} < {b}")
    if lat.unary_ops or lat.binary_ops:
        lines.append("OPS")
        for opname in sorted(lat.unary_ops):
            lines.append(f"unary {opname}")
            for e in lat.elements:
                lines.append(f"{e} = {lat.unary_ops[opname].table[e]}")
        for opname in sorted(lat.binary_ops):
            lines.append(f"binary {opname}")
            for a in lat.elements:
                for b in lat.elements:
                    lines.append(f"{a} {b} = {lat.binary_ops[opname].table[(a, b)]}")
    lines.append("UNIVERSE")
    lines.append(abs_.universe.describe())
    lines.append("GAMMA")
    for e in lat.elements:
        pts = abs_.gamma(e).sorted_points()
        body = "{" + " ".join(_render_point(p) for p in pts) + "}" if pts else "{}"
        lines.append(f"{e} = {body}")
    if abs_.extra_axioms:
        lines.append("AXIOMS")
        for _, text in abs_.extra_axioms:
            lines.append(text)
    return "\n".join(lines) + "\n"
