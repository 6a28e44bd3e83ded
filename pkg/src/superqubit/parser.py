"""Bra-ket expression parser for superqubit states.

Surface syntax:

    state  := term (('+'|'-') term)*
    term   := coeff? ( '|' ketlabel '>' | '(' state ')' )
    ketlabel := [01*]+          one character per slot, '*' is the odd symbol
    coeff  := product of factors; factors multiply by juxtaposition or '*',
              divide with '/'
    factor := number | 'i' | 'sqrt(' expr ')' | '(' expr ')' | g<k> | g<k>#

Grassmann symbols 'g<k>' and 'g<k>#' are registered as superconjugate pairs:
the distinct symbols used, ordered by their numeric index, take the first
generator pairs of a fresh context, followed by one reserve pair per
superqubit slot.  Arithmetic inside parentheses also admits '+'/'-'.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .grassmann import AlgebraContext, GrassmannNumber
from .states import SuperState, ket_from_text, ket_text


class ParseError(ValueError):
    """Syntax error with position and expected-token information."""

    def __init__(self, message: str, pos: int, expected: list[str] | None = None):
        self.pos = pos
        self.expected = expected or []
        suffix = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {pos}{suffix}")


_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_GSYM = re.compile(r"g(\d+)(#?)")
_KET = re.compile(r"\|([01*]+)>")


@dataclass
class _Term:
    coeff_ast: object  # nested tuples, evaluated once the context exists
    kets: list[tuple[str, object, int]]  # (label, coeff_ast, sign)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"unexpected {self.peek()!r}", self.pos, [repr(ch)])
        self.pos += 1

    def group_contains_ket(self) -> bool:
        """From an opening '(', does the balanced group contain a ket bar?"""
        depth = 0
        for i in range(self.pos, len(self.text)):
            c = self.text[i]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth == 0:
                    return False
            elif c == "|" and depth >= 1:
                return True
        return False


class _Parser:
    """Recursive-descent parser producing coefficient ASTs plus ket labels."""

    def __init__(self, text: str):
        self.s = _Scanner(text)
        self.gsyms: set[int] = set()

    # coefficient AST node shapes:
    #   ("num", float) ("i",) ("g", k, sharp) ("neg", x) ("sqrt", x)
    #   ("mul", x, y) ("div", x, y) ("add", x, y) ("sub", x, y) ("one",)

    def parse_state(self) -> list[tuple[str, object, int]]:
        terms: list[tuple[str, object, int]] = []
        sign = 1
        ch = self.s.peek()
        if ch == "+":
            self.s.expect("+")
        elif ch == "-":
            self.s.expect("-")
            sign = -1
        terms.extend(self.parse_term(sign))
        while not self.s.at_end() and self.s.peek() in "+-":
            op = self.s.peek()
            self.s.expect(op)
            terms.extend(self.parse_term(1 if op == "+" else -1))
        return terms

    def parse_term(self, sign: int) -> list[tuple[str, object, int]]:
        coeff = self.parse_coeff_opt()
        ch = self.s.peek()
        if ch == "|":
            label = self.parse_ket()
            return [(label, coeff, sign)]
        if ch == "(":
            self.s.expect("(")
            inner = self.parse_state()
            self.s.expect(")")
            return [
                (label, ("mul", coeff, c2), sign * s2) for (label, c2, s2) in inner
            ]
        raise ParseError("expected a ket or a parenthesized state", self.s.pos, ["'|'", "'('"])

    def parse_ket(self) -> str:
        self.s.skip_ws()
        m = _KET.match(self.s.text, self.s.pos)
        if not m:
            raise ParseError("malformed ket", self.s.pos, ["|<slots of 0, 1, *>"])
        self.s.pos = m.end()
        return m.group(1)

    def parse_coeff_opt(self) -> object:
        ch = self.s.peek()
        if ch == "|":
            return ("one",)
        if ch == "(" and self.s.group_contains_ket():
            return ("one",)
        return self.parse_product(stop_at_group=True)

    def parse_product(self, stop_at_group: bool = False) -> object:
        node = self.parse_unary()
        while True:
            ch = self.s.peek()
            if ch == "*":
                self.s.expect("*")
                node = ("mul", node, self.parse_unary())
            elif ch == "/":
                self.s.expect("/")
                node = ("div", node, self.parse_unary())
            elif ch and (ch.isdigit() or ch in ".gis" or ch == "("):
                if ch == "(" and stop_at_group and self.s.group_contains_ket():
                    break
                node = ("mul", node, self.parse_unary())
            else:
                break
        return node

    def parse_unary(self) -> object:
        ch = self.s.peek()
        if ch == "-":
            self.s.expect("-")
            return ("neg", self.parse_unary())
        if ch == "+":
            self.s.expect("+")
            return self.parse_unary()
        return self.parse_factor()

    def parse_expr(self) -> object:
        node = self.parse_product()
        while self.s.peek() in "+-":
            op = self.s.peek()
            self.s.expect(op)
            rhs = self.parse_product()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_factor(self) -> object:
        self.s.skip_ws()
        text, pos = self.s.text, self.s.pos
        m = _NUMBER.match(text, pos)
        if m:
            self.s.pos = m.end()
            return ("num", float(m.group(0)))
        if text.startswith("sqrt", pos):
            self.s.pos = pos + 4
            self.s.expect("(")
            inner = self.parse_expr()
            self.s.expect(")")
            return ("sqrt", inner)
        m = _GSYM.match(text, pos)
        if m:
            self.s.pos = m.end()
            k = int(m.group(1))
            self.gsyms.add(k)
            return ("g", k, m.group(2) == "#")
        if text.startswith("i", pos):
            self.s.pos = pos + 1
            return ("i",)
        if text.startswith("(", pos):
            self.s.expect("(")
            inner = self.parse_expr()
            self.s.expect(")")
            return inner
        raise ParseError(
            f"unexpected {text[pos] if pos < len(text) else 'end of input'!r}",
            pos,
            ["number", "'i'", "sqrt(", "g<k>", "'('"],
        )


def _eval_coeff(node: object, ctx: AlgebraContext, pair_of: dict[int, int]) -> GrassmannNumber:
    kind = node[0]  # type: ignore[index]
    if kind == "one":
        return ctx.one()
    if kind == "num":
        return ctx.scalar(node[1])  # type: ignore[index]
    if kind == "i":
        return ctx.scalar(1j)
    if kind == "g":
        _, k, sharp = node  # type: ignore[misc]
        pair = pair_of[k]
        return ctx.theta_sharp(pair) if sharp else ctx.theta(pair)
    if kind == "neg":
        return -_eval_coeff(node[1], ctx, pair_of)  # type: ignore[index]
    if kind == "sqrt":
        inner = _eval_coeff(node[1], ctx, pair_of)  # type: ignore[index]
        if not inner.soul.is_zero():
            raise ParseError("sqrt of a Grassmann-odd expression is not supported", 0)
        value = inner.body
        return ctx.scalar(complex(value) ** 0.5)
    if kind in ("mul", "div", "add", "sub"):
        left = _eval_coeff(node[1], ctx, pair_of)  # type: ignore[index]
        right = _eval_coeff(node[2], ctx, pair_of)  # type: ignore[index]
        if kind == "mul":
            return left * right
        if kind == "add":
            return left + right
        if kind == "sub":
            return left - right
        return left / right
    raise AssertionError(f"unknown coefficient node {node!r}")


def parse_state(text: str, n: int | None = None) -> SuperState:
    """Parse a ket expression into a validated state.

    The context is sized to the distinct Grassmann symbols used plus one
    reserve pair per superqubit slot; symbol g<k> takes the pair given by the
    rank of k among the used symbols.
    """
    parser = _Parser(text)
    terms = parser.parse_state()
    parser.s.skip_ws()
    if not parser.s.at_end():
        raise ParseError(f"trailing input {parser.s.text[parser.s.pos:]!r}", parser.s.pos)
    if not terms:
        raise ParseError("empty state", 0)
    lengths = {len(label) for label, _, _ in terms}
    if len(lengths) != 1:
        raise ParseError(f"ket labels of mixed lengths {sorted(lengths)}", 0)
    width = lengths.pop()
    if n is not None and width != n:
        raise ParseError(f"ket labels have {width} slots, expected {n}", 0)
    n = width
    pair_of = {k: rank for rank, k in enumerate(sorted(parser.gsyms))}
    ctx = AlgebraContext(len(pair_of) + n)
    coeffs: dict[tuple[int, ...], GrassmannNumber] = {}
    for label, ast, sign in terms:
        ket = ket_from_text(label)
        value = _eval_coeff(ast, ctx, pair_of) * sign
        coeffs[ket] = coeffs.get(ket, ctx.zero()) + value
    return SuperState(n, ctx, coeffs)


def _format_complex(z: complex) -> str:
    re_part, im_part = z.real, z.imag
    if im_part == 0:
        return _format_real(re_part)
    if re_part == 0:
        return f"{_format_real(im_part)}*i"
    op = "+" if im_part >= 0 else "-"
    return f"({_format_real(re_part)}{op}{_format_real(abs(im_part))}*i)"


def _format_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _format_coeff(coeff: GrassmannNumber) -> str:
    parts = []
    for rec in coeff.to_records():
        z = complex(rec["re"], rec["im"])
        factors = [_format_complex(z)]
        for idx in rec["monomial"]:
            pair, member = divmod(idx, 2)
            factors.append(f"g{pair}#" if member else f"g{pair}")
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0"


def state_to_text(state: SuperState) -> str:
    """Render a state in the surface syntax; reparsing yields an equal state."""
    pieces = []
    for ket in sorted(state.coeffs):
        coeff = state.coeffs[ket]
        pieces.append(f"({_format_coeff(coeff)})|{ket_text(ket)}>")
    return " + ".join(pieces) if pieces else "0|" + "0" * state.n + ">"
