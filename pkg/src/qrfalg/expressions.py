"""Surface syntax for operators and scalars: tokenizer, parser, printers.

Grammar (whitespace-insensitive)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

Names resolve to the four phase variables ``x_A p_A x_B p_B``, the imaginary
unit ``i``, or any registered coefficient symbol.  Juxtaposition order of
noncommuting factors is preserved and then normal-ordered.  Division requires
a scalar (degree-zero) divisor.  The printers emit canonical forms that
re-parse to the identical polynomial.
"""

from __future__ import annotations

import re

from . import scalar, weyl
from .scalar import Poly, Scalar
from .weyl import WeylPoly

__all__ = [
    "OperatorSyntaxError",
    "parse_operator",
    "parse_scalar",
    "format_operator",
    "format_scalar",
    "parse_basis_file",
]

MAX_SOURCE_BYTES = 64 * 1024

_VAR_INDEX = {name: i for i, name in enumerate(weyl.VAR_NAMES)}

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()+\-*/^]))")


class OperatorSyntaxError(Exception):
    """Parse failure, carrying 1-based line and column of the offense."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def _line_col(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    last_nl = text.rfind("\n", 0, pos)
    return line, pos - last_nl


class _Parser:
    def __init__(self, text: str):
        if len(text.encode()) > MAX_SOURCE_BYTES:
            raise OperatorSyntaxError("input too large", 1, 1)
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                raise OperatorSyntaxError(
                    f"unexpected character {stripped[0]!r}", *_line_col(text, pos)
                )
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.idx = 0

    def _peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise OperatorSyntaxError(
                "unexpected end of input", *_line_col(self.text, len(self.text))
            )
        self.idx += 1
        return tok

    def _error(self, message, tok=None):
        pos = tok[2] if tok else len(self.text)
        raise OperatorSyntaxError(message, *_line_col(self.text, pos))

    def parse(self) -> WeylPoly:
        out = self.expr()
        tok = self._peek()
        if tok is not None:
            self._error(f"trailing input {tok[1]!r}", tok)
        return out

    def expr(self) -> WeylPoly:
        tok = self._peek()
        negate = False
        if tok and tok[:2] == ("op", "-"):
            self._next()
            negate = True
        out = self.term()
        if negate:
            out = -out
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self._next()
                rhs = self.term()
                out = out + rhs if tok[1] == "+" else out - rhs
            else:
                return out

    def term(self) -> WeylPoly:
        out = self.factor()
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self._next()
                rhs = self.factor()
                if tok[1] == "*":
                    out = weyl.multiply(out, rhs)
                else:
                    if not rhs.is_scalar():
                        self._error("divisor must be a scalar expression", tok)
                    c = rhs.scalar_part()
                    if c.is_zero():
                        self._error("division by zero", tok)
                    out = out.scale(c.inv())
            else:
                return out

    def factor(self) -> WeylPoly:
        out = self.atom()
        tok = self._peek()
        if tok and tok[:2] == ("op", "^"):
            self._next()
            etok = self._next()
            if etok[0] != "int":
                self._error("exponent must be a nonnegative integer", etok)
            out = out ** int(etok[1])
        return out

    def atom(self) -> WeylPoly:
        tok = self._next()
        kind, value, _ = tok
        if kind == "int":
            return WeylPoly.from_scalar(scalar.integer(int(value)))
        if kind == "name":
            if value in _VAR_INDEX:
                return WeylPoly.variable(_VAR_INDEX[value])
            if value == "i":
                return WeylPoly.from_scalar(scalar.I)
            try:
                return WeylPoly.from_scalar(scalar.Scalar.from_symbol(value))
            except scalar.ScalarError:
                self._error(f"unknown name {value!r}", tok)
        if kind == "op" and value == "(":
            out = self.expr()
            closing = self._next()
            if closing[:2] != ("op", ")"):
                self._error("expected ')'", closing)
            return out
        self._error(f"unexpected token {value!r}", tok)


def parse_operator(text: str) -> WeylPoly:
    return _Parser(text).parse()


def parse_scalar(text: str) -> Scalar:
    poly = parse_operator(text)
    if not poly.is_scalar():
        raise OperatorSyntaxError("expected a scalar expression", 1, 1)
    return poly.scalar_part()


# ---------------------------------------------------------------------------
# printers

def _frac_str(f) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coeff_body(c) -> tuple[bool, str]:
    """(negative, magnitude string) for a Gaussian rational."""
    negative = not c.sign_positive()
    if negative:
        c = -c
    if not c.im:
        return negative, _frac_str(c.re)
    if not c.re:
        if c.im == 1:
            return negative, "i"
        return negative, f"{_frac_str(c.im)}*i"
    im_neg = c.im < 0
    im = -c.im if im_neg else c.im
    im_part = "i" if im == 1 else f"{_frac_str(im)}*i"
    return negative, f"({_frac_str(c.re)} {'-' if im_neg else '+'} {im_part})"


def _mono_str(mono, names) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if not e:
            continue
        name = names[idx]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _poly_terms(p: Poly):
    """Sorted (negative, body) pairs for the terms of a coefficient Poly."""
    names = scalar.symbol_names()
    out = []
    for mono in sorted(p.terms, key=scalar._mono_key, reverse=True):
        neg, coeff = _coeff_body(p.terms[mono])
        mono_s = _mono_str(mono, names)
        if not mono_s:
            body = coeff
        elif coeff == "1":
            body = mono_s
        else:
            body = f"{coeff}*{mono_s}"
        out.append((neg, body))
    return out


def _join_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (neg, body) in enumerate(terms):
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def _poly_str(p: Poly) -> str:
    return _join_terms(_poly_terms(p))


def _is_simple_factor(p: Poly) -> bool:
    """True when the poly prints as a single '/'-safe factor."""
    if not p.is_monomial():
        return False
    (mono, c), = p.terms.items()
    return c.is_one() and sum(1 for e in mono if e) <= 1


def format_scalar(s: Scalar) -> str:
    num = _poly_str(s.num)
    if s.den.is_one():
        return num
    if len(s.num.terms) > 1:
        num = f"({num})"
    den = _poly_str(s.den)
    if not _is_simple_factor(s.den):
        den = f"({den})"
    return f"{num}/{den}"


def _scalar_coeff_str(s: Scalar):
    """(negative, body) for a Scalar used as a multiplicative coefficient."""
    if s.den.is_one() and s.num.is_monomial():
        (terms,) = (_poly_terms(s.num),)
        return terms[0]
    _, lc = s.num.leading()
    if not lc.sign_positive():
        return True, f"({format_scalar(-s)})"
    return False, f"({format_scalar(s)})"


def format_operator(w: WeylPoly) -> str:
    if w.is_zero():
        return "0"
    terms = []
    for mono in sorted(w.terms, reverse=True):
        coeff = w.terms[mono]
        mono_s = _mono_str(mono, weyl.VAR_NAMES)
        neg, body = _scalar_coeff_str(coeff)
        if mono_s:
            if body == "1":
                body = mono_s
            else:
                body = f"{body}*{mono_s}"
        terms.append((neg, body))
    return _join_terms(terms)


# ---------------------------------------------------------------------------
# algebra definition files: `name := expr` lines, '#' comments

def parse_basis_file(text: str):
    """Parse generator definitions; returns a list of (name, WeylPoly)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise OperatorSyntaxError("expected 'name := expression'", lineno, 1)
        name, _, rhs = line.partition(":=")
        name = name.strip()
        if not name.isidentifier():
            raise OperatorSyntaxError(f"invalid generator name {name!r}", lineno, 1)
        try:
            poly = parse_operator(rhs)
        except OperatorSyntaxError as exc:
            raise OperatorSyntaxError(str(exc), lineno, exc.column) from exc
        out.append((name, poly))
    return out
