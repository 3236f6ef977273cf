"""Expression and vector-field grammar.

  expr   := '-'? term (('+'|'-') term)*
  term   := factor (('*'|'/') factor)*
  factor := base ('^' posint)?
  base   := rational | coord | '(' expr ')'
  coord  := 'x[' int ']' | 'u[' int ']' | 'u[' int ';' int (',' int)* ']'
  rational := int ('/' posint)?

  field  := entry (';' entry)*
  entry  := ('x[' int ']' | 'u[' int ']') ':' expr

Whitespace is insignificant.  u[a; j1,...,jk] is the derivative coordinate
u_{a,J}; the multi-index is canonicalized (sorted) on the fly.  The printer
emits the canonical form: terms in descending graded-lex order, so
parse(print(e)) == e on normal forms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IndexOutOfRange, JetCoordinateInBase, ParseError
from .jetspace import (
    JetSpec,
    canonicalize_index,
    coord_str,
    coord_u,
    coord_ud,
    coord_x,
    is_ud,
    validate_coord,
)
from .ratexpr import Poly, RatExpr, sorted_terms
from .vfield import VectorField

__all__ = ["parse_expr", "parse_field", "expr_to_str", "poly_to_str", "field_to_str"]


class _Lexer:
    SYMBOLS = "+-*/^()[];,:"

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
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
                self.tokens.append(("int", text[i:j], i))
                i = j
                continue
            if ch in ("x", "u"):
                self.tokens.append(("name", ch, i))
                i += 1
                continue
            if ch in self.SYMBOLS:
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", "", n))

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        t = self.tokens[self.idx]
        if t[0] != "end":
            self.idx += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t


class _Parser:
    def __init__(self, text: str, spec: JetSpec):
        self.lex = _Lexer(text)
        self.spec = spec

    # coordinate -------------------------------------------------------------

    def parse_coord(self):
        name = self.lex.expect("name")
        self.lex.expect("[")
        first = int(self.lex.expect("int")[1])
        if name[1] == "x":
            self.lex.expect("]")
            c = coord_x(first)
        else:
            t = self.lex.peek()
            if t[0] == ";":
                self.lex.next()
                index = [int(self.lex.expect("int")[1])]
                while self.lex.peek()[0] == ",":
                    self.lex.next()
                    index.append(int(self.lex.expect("int")[1]))
                self.lex.expect("]")
                try:
                    index = canonicalize_index(index, self.spec.n, self.spec.r)
                except IndexOutOfRange as exc:
                    raise IndexOutOfRange(f"{exc} (at position {name[2]})") from None
                c = coord_ud(first, index)
            else:
                self.lex.expect("]")
                c = coord_u(first)
        try:
            validate_coord(c, self.spec)
        except IndexOutOfRange as exc:
            raise IndexOutOfRange(f"{exc} (at position {name[2]})") from None
        return c

    # expression grammar -------------------------------------------------------

    def parse_expr(self) -> RatExpr:
        negate = False
        if self.lex.peek()[0] == "-":
            self.lex.next()
            negate = True
        e = self.parse_term()
        if negate:
            e = -e
        while self.lex.peek()[0] in ("+", "-"):
            op = self.lex.next()[0]
            t = self.parse_term()
            e = e + t if op == "+" else e - t
        return e

    def parse_term(self) -> RatExpr:
        e = self.parse_factor()
        while self.lex.peek()[0] in ("*", "/"):
            op = self.lex.next()[0]
            f = self.parse_factor()
            if op == "*":
                e = e * f
            else:
                if f.is_zero:
                    t = self.lex.peek()
                    raise ParseError("division by zero", t[2])
                e = e / f
        return e

    def parse_factor(self) -> RatExpr:
        e = self.parse_base()
        if self.lex.peek()[0] == "^":
            self.lex.next()
            t = self.lex.expect("int")
            p = int(t[1])
            if p < 1:
                raise ParseError("exponent must be a positive integer", t[2])
            e = e ** p
        return e

    def parse_base(self) -> RatExpr:
        t = self.lex.peek()
        if t[0] == "int":
            self.lex.next()
            return RatExpr.const(int(t[1]))
        if t[0] == "name":
            return RatExpr.coord(self.parse_coord())
        if t[0] == "(":
            self.lex.next()
            e = self.parse_expr()
            self.lex.expect(")")
            return e
        raise ParseError(f"expected a value, found {t[1]!r}", t[2])

    def expect_end(self):
        t = self.lex.peek()
        if t[0] != "end":
            raise ParseError(f"trailing input {t[1]!r}", t[2])


def parse_expr(text: str, spec: JetSpec) -> RatExpr:
    p = _Parser(text, spec)
    e = p.parse_expr()
    p.expect_end()
    return e


def parse_field(text: str, spec: JetSpec) -> VectorField:
    p = _Parser(text, spec)
    components = {}
    while True:
        c = p.parse_coord()
        if is_ud(c):
            raise JetCoordinateInBase(
                f"{coord_str(c)} cannot be a field component target"
            )
        p.lex.expect(":")
        e = p.parse_expr()
        for cc in e.coords():
            if is_ud(cc):
                raise JetCoordinateInBase(
                    f"component expression mentions {coord_str(cc)}"
                )
        if c in components:
            raise ParseError(f"duplicate component {coord_str(c)}", 0)
        components[c] = e
        t = p.lex.peek()
        if t[0] == ";":
            p.lex.next()
            continue
        p.expect_end()
        break
    return VectorField.from_components(spec.n, spec.m, components)


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------

def _frac_str(c) -> str:
    return str(Fraction(c))


def poly_to_str(p: Poly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for mono, coeff in sorted_terms(p.terms):
        factors = [
            coord_str(k) + (f"^{e}" if e > 1 else "") for k, e in mono
        ]
        c = Fraction(coeff)
        neg = c < 0
        c = -c if neg else c
        if factors and c == 1:
            body = "*".join(factors)
        elif factors:
            body = _frac_str(c) + "*" + "*".join(factors)
        else:
            body = _frac_str(c)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def expr_to_str(e: RatExpr) -> str:
    if e.den.is_constant:
        return poly_to_str(e.num)
    return f"({poly_to_str(e.num)})/({poly_to_str(e.den)})"


def field_to_str(v: VectorField) -> str:
    parts = []
    for i, comp in enumerate(v.xi, start=1):
        if not comp.is_zero:
            parts.append(f"x[{i}]: {expr_to_str(comp)}")
    for a, comp in enumerate(v.eta, start=1):
        if not comp.is_zero:
            parts.append(f"u[{a}]: {expr_to_str(comp)}")
    return "; ".join(parts) if parts else "x[1]: 0"
