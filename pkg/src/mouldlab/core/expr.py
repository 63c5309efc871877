"""Expression grammar: parser for rational-function expressions.

Grammar (whitespace insignificant):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('+'|'-') unary | power
    power  := atom ['^' exponent]
    atom   := INTEGER | 'u1'..'u99' | 't' | 'x' | '(' expr ')'
    exponent := ['+'|'-'] INTEGER

Rationals are written with '/', e.g. 3/4.  Values are RatFuns; printing is
handled by the canonical RatFun/Polynomial renderers and round-trips exactly.
"""

from gmpy2 import mpq

from .poly import MAX_U, Polynomial, VarId
from .ratfun import RatFun


class ExprError(ValueError):
    """Syntax error with position information."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


_TOKEN_CHARS = set("+-*/^()")


def tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum()):
                j += 1
            name = text[i:j]
            try:
                VarId.from_name(name)
            except ValueError:
                raise ExprError("unknown symbol %r (expected u1..u%d, t or x)"
                                % (name, MAX_U), i)
            toks.append(("var", name, i))
            i = j
            continue
        raise ExprError("unexpected character %r" % ch, i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ExprError("expected %r, found %r" % (kind, t[1] or "end of input"),
                            t[2])
        return t

    def expr(self):
        v = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.next()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ZeroDivisionError(
                        "division by zero in expression (at position %d)" % pos
                    )
                v = v / w
        return v

    def unary(self):
        t = self.peek()
        if t[0] in ("+", "-"):
            self.next()
            v = self.unary()
            return v if t[0] == "+" else -v
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[0] == "^":
            self.next()
            e = self.exponent()
            if e < 0 and v.is_zero():
                raise ZeroDivisionError("zero raised to a negative power")
            v = v ** e
        return v

    def exponent(self):
        sign = 1
        t = self.peek()
        if t[0] in ("+", "-"):
            self.next()
            if t[0] == "-":
                sign = -1
            t = self.peek()
        t = self.expect("int")
        e = int(t[1])
        if e > 4096:
            raise ExprError("exponent too large", t[2])
        return sign * e

    def atom(self):
        t = self.next()
        if t[0] == "int":
            return RatFun.const(mpq(t[1]))
        if t[0] == "var":
            return RatFun(Polynomial.var(VarId.from_name(t[1])))
        if t[0] == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ExprError("expected a number, variable or '(', found %r"
                        % (t[1] or "end of input"), t[2])


def parse(text):
    """Parse an expression into a RatFun."""
    p = _Parser(tokenize(text))
    v = p.expr()
    p.expect("end")
    return v
