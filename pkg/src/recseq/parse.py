"""Parsing of polynomial/function expressions and step sets.

Grammar (whitespace-insensitive, explicit ``*`` everywhere):

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ('+' | '-') factor | power
    power    := atom ('^' exponent)?
    atom     := NUMBER | NAME | '(' expr ')' | 'exp' '(' expr ')'
    exponent := NUMBER | '-' NUMBER | '(' ['+'|'-'] NUMBER ')'

NUMBER is an integer or a rational literal ``p/q``: a ``/`` directly
between digit sequences always means a rational literal, never division
(matching the canonical rendering, e.g. ``3/2*x^2 - x + 1/3``).

The same syntax tree lowers two ways: to a plain polynomial (integer
powers only, division only by constants) or to a hyperexponential
function description, where fractional powers become factor exponents and
``exp(...)`` feeds the exponential part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .oracle import HyperexpSpec, StepSet
from .poly import MPoly


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_PUNCT = set("+-*/^()[]{},")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num" | "name" | one of the punctuation chars | "end"
    value: object
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                toks.append(_Tok("num", Fraction(int(text[i:j]), int(text[j + 1:k])), i))
                i = k
            else:
                toks.append(_Tok("num", Fraction(int(text[i:j])), i))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


# ---------------------------------------------------------------------------
# Syntax tree
# ---------------------------------------------------------------------------
# Nodes: ("num", Fraction, pos) ("var", name, pos) ("exp", node, pos)
#        ("pow", node, Fraction, pos) ("neg", node, pos)
#        ("add"|"sub"|"mul"|"div", left, right, pos)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.kind!r}", t.pos)
        return self.next()

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            rhs = self.parse_term()
            node = ("add" if op.kind == "+" else "sub", node, rhs, op.pos)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            op = self.next()
            rhs = self.parse_factor()
            node = ("mul" if op.kind == "*" else "div", node, rhs, op.pos)
        return node

    def parse_factor(self):
        t = self.peek()
        if t.kind in ("+", "-"):
            self.next()
            inner = self.parse_factor()
            return inner if t.kind == "+" else ("neg", inner, t.pos)
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.next()
            expo = self.parse_exponent()
            return ("pow", base, expo, caret.pos)
        return base

    def parse_exponent(self) -> Fraction:
        t = self.peek()
        if t.kind == "(":
            self.next()
            sign = 1
            if self.peek().kind in ("+", "-"):
                sign = -1 if self.next().kind == "-" else 1
            num = self.expect("num")
            self.expect(")")
            return sign * num.value
        if t.kind == "-":
            self.next()
            num = self.expect("num")
            return -num.value
        if t.kind == "num":
            return self.next().value
        raise ParseError("expected an exponent", t.pos)

    def parse_atom(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return ("num", t.value, t.pos)
        if t.kind == "name":
            self.next()
            if t.value == "exp" and self.peek().kind == "(":
                self.next()
                arg = self.parse_expr()
                self.expect(")")
                return ("exp", arg, t.pos)
            return ("var", t.value, t.pos)
        if t.kind == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise ParseError("expected a number, variable or '('", t.pos)


def _collect_vars(node, out: set[str]) -> None:
    kind = node[0]
    if kind == "var":
        out.add(node[1])
    elif kind == "num":
        pass
    elif kind in ("neg", "exp"):
        _collect_vars(node[1], out)
    elif kind == "pow":
        _collect_vars(node[1], out)
    else:  # add/sub/mul/div
        _collect_vars(node[1], out)
        _collect_vars(node[2], out)


# ---------------------------------------------------------------------------
# Lowering to polynomials
# ---------------------------------------------------------------------------

def _to_mpoly(node, vars: tuple[str, ...]) -> MPoly:
    kind = node[0]
    if kind == "num":
        return MPoly.const(vars, node[1])
    if kind == "var":
        if node[1] not in vars:
            raise ParseError(f"unknown variable {node[1]!r}", node[2])
        return MPoly.var(vars, node[1])
    if kind == "neg":
        return -_to_mpoly(node[1], vars)
    if kind == "add":
        return _to_mpoly(node[1], vars) + _to_mpoly(node[2], vars)
    if kind == "sub":
        return _to_mpoly(node[1], vars) - _to_mpoly(node[2], vars)
    if kind == "mul":
        return _to_mpoly(node[1], vars) * _to_mpoly(node[2], vars)
    if kind == "div":
        rhs = _to_mpoly(node[2], vars)
        if rhs.total_degree() > 0:
            raise ParseError("polynomial division by a non-constant", node[3])
        c = rhs.constant_term()
        if c == 0:
            raise ParseError("division by zero", node[3])
        return _to_mpoly(node[1], vars).scale(Fraction(1, 1) / c)
    if kind == "pow":
        e = node[2]
        if e.denominator != 1 or e < 0:
            raise ParseError(
                "polynomial powers must be nonnegative integers", node[3]
            )
        return _to_mpoly(node[1], vars) ** int(e)
    if kind == "exp":
        raise ParseError("exp(...) is not allowed in a polynomial", node[2])
    raise AssertionError(f"unknown node {kind}")


def parse_mpoly(text: str, vars: Sequence[str]) -> MPoly:
    """Parse canonical polynomial text over the given variables."""
    p = _Parser(text)
    node = p.parse_expr()
    end = p.peek()
    if end.kind != "end":
        raise ParseError("trailing input after polynomial", end.pos)
    return _to_mpoly(node, tuple(vars))


# ---------------------------------------------------------------------------
# Lowering to hyperexponential specs
# ---------------------------------------------------------------------------

def _is_plain_poly(node) -> bool:
    kind = node[0]
    if kind in ("num", "var"):
        return True
    if kind == "neg":
        return _is_plain_poly(node[1])
    if kind == "exp":
        return False
    if kind == "pow":
        return node[2].denominator == 1 and node[2] >= 0 and _is_plain_poly(node[1])
    if kind == "div":
        return _is_plain_poly(node[1]) and node[2][0] == "num"
    return _is_plain_poly(node[1]) and _is_plain_poly(node[2])


def _to_spec_parts(node, vars: tuple[str, ...]):
    """Return (factors, exp_part) for the multiplicative structure."""
    kind = node[0]
    if _is_plain_poly(node):
        p = _to_mpoly(node, vars)
        if p.is_zero():
            raise ParseError("the zero function has no expansion", node[-1])
        return [(p, Fraction(1))], MPoly.zero(vars)
    if kind == "neg":
        factors, ep = _to_spec_parts(node[1], vars)
        return factors + [(MPoly.const(vars, -1), Fraction(1))], ep
    if kind == "exp":
        arg = _to_mpoly(node[1], vars)
        return [], arg
    if kind == "mul":
        f1, e1 = _to_spec_parts(node[1], vars)
        f2, e2 = _to_spec_parts(node[2], vars)
        return f1 + f2, e1 + e2
    if kind == "div":
        f1, e1 = _to_spec_parts(node[1], vars)
        f2, e2 = _to_spec_parts(node[2], vars)
        return f1 + [(b, -e) for b, e in f2], e1 - e2
    if kind == "pow":
        r = node[2]
        f1, e1 = _to_spec_parts(node[1], vars)
        return [(b, e * r) for b, e in f1], e1.scale(r)
    raise ParseError(
        "sums are only allowed inside polynomials and exp(...)", node[-1]
    )


def parse_hyperexp(text: str, vars: Sequence[str] | None = None) -> HyperexpSpec:
    """Parse a hyperexponential function description.

    Variables default to the sorted set of names appearing in the text.
    """
    p = _Parser(text)
    node = p.parse_expr()
    end = p.peek()
    if end.kind != "end":
        raise ParseError("trailing input after expression", end.pos)
    if vars is None:
        names: set[str] = set()
        _collect_vars(node, names)
        if not names:
            raise ParseError("expression mentions no variables", 0)
        vars = tuple(sorted(names))
    else:
        vars = tuple(vars)
    factors, exp_part = _to_spec_parts(node, vars)
    merged: list[tuple[MPoly, Fraction]] = []
    for base, e in factors:
        if e == 0 or base.total_degree() == 0 and base.constant_term() == 1:
            continue
        merged.append((base, e))
    return HyperexpSpec(vars, tuple(merged), exp_part)


# ---------------------------------------------------------------------------
# Step sets
# ---------------------------------------------------------------------------

def parse_steps(text: str) -> StepSet:
    """Parse a step set like ``[[1,0],[0,1],[1,1]]`` (braces also allowed)."""
    toks = _tokenize(text)
    i = 0

    def expect(kind):
        nonlocal i
        if toks[i].kind != kind:
            raise ParseError(f"expected {kind!r}", toks[i].pos)
        t = toks[i]
        i += 1
        return t

    def integer() -> int:
        nonlocal i
        sign = 1
        if toks[i].kind == "-":
            sign = -1
            i += 1
        t = expect("num")
        if t.value.denominator != 1:
            raise ParseError("step coordinates must be integers", t.pos)
        return sign * int(t.value)

    opener = toks[i].kind
    if opener not in ("[", "{"):
        raise ParseError("expected '[' or '{'", toks[i].pos)
    closer = "]" if opener == "[" else "}"
    i += 1
    steps = []
    if toks[i].kind == closer:
        raise ParseError("empty step set", toks[i].pos)
    while True:
        expect("[")
        a = integer()
        expect(",")
        b = integer()
        expect("]")
        steps.append((a, b))
        if toks[i].kind == ",":
            i += 1
            continue
        break
    expect(closer)
    expect("end")
    try:
        return StepSet.of(steps)
    except ValueError as e:
        raise ParseError(str(e), 0) from None
