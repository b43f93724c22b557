"""Integer polynomials in x1..xr with a small expression parser.

These are the inputs of the counting engine: coefficients stay ordinary
Python integers, and evaluation is generic so a polynomial can be composed
with values from any commutative ring (numbers, residues, other polynomials).
"""

from __future__ import annotations

import re


class PolyError(ValueError):
    pass


class Poly:
    """Multivariate integer polynomial, stored as exponent tuple -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        nvars = int(nvars)
        if nvars < 1:
            raise PolyError("need at least one variable")
        clean = {}
        if terms:
            for mono, c in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars:
                    raise PolyError("monomial %r has wrong arity" % (mono,))
                if any(e < 0 for e in mono):
                    raise PolyError("negative exponent in %r" % (mono,))
                c = int(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
        clean = {m: c for m, c in clean.items() if c}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        """The variable x_i (1-based)."""
        if not 1 <= i <= nvars:
            raise PolyError("variable index %d out of range 1..%d" % (i, nvars))
        mono = tuple(1 if j == i - 1 else 0 for j in range(nvars))
        return cls(nvars, {mono: 1})

    def _check(self, other):
        if isinstance(other, int):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly) or other.nvars != self.nvars:
            raise PolyError("arity mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            raise PolyError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {sum(m) for m in self.terms}
        return len(degs) == 1

    def evaluate(self, values, one=1):
        """Evaluate at values[i] substituted for x_{i+1}.

        Works over any commutative ring: the values only need +, * and
        multiplication by Python ints; ``one`` is the ring identity.
        """
        if len(values) != self.nvars:
            raise PolyError("expected %d values, got %d" % (self.nvars, len(values)))
        total = None
        for mono, c in self.terms.items():
            prod = one * c
            for v, e in zip(values, mono):
                for _ in range(e):
                    prod = prod * v
            total = prod if total is None else total + prod
        if total is None:
            return one * 0
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), m)):
            c = self.terms[mono]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            syms = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                syms.append("x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e))
            if not syms:
                body = str(mag)
            elif mag == 1:
                body = "*".join(syms)
            else:
                body = "%d*%s" % (mag, "*".join(syms))
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "Poly(%d, %r)" % (self.nvars, self.terms)


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError("bad polynomial syntax at %r" % text[pos:])
        if m.group("int") is not None:
            out.append(("int", int(m.group("int"))))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("var")[1:])))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over +, -, *, ^ and parentheses; * binds tighter
    than + and -, ^ tighter than *, and only integer exponents are allowed."""

    def __init__(self, tokens, nvars):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise PolyError("unexpected end of expression")
        self.pos += 1
        return t

    def expr(self):
        sign = 1
        t = self.peek()
        if t == ("op", "+") or t == ("op", "-"):
            self.take()
            sign = -1 if t[1] == "-" else 1
        out = self.product() * sign
        while True:
            t = self.peek()
            if t == ("op", "+") or t == ("op", "-"):
                self.take()
                rhs = self.product()
                out = out + (rhs if t[1] == "+" else -rhs)
            else:
                return out

    def product(self):
        out = self.power()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                out = out * self.power()
            elif t is not None and t[0] in ("int", "var") or t == ("op", "("):
                # implicit multiplication, e.g. 2x1 or (x1+1)(x2+1)
                out = out * self.power()
            else:
                return out

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            t = self.take()
            if t[0] != "int":
                raise PolyError("exponent must be a nonnegative integer")
            return base ** t[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return Poly.const(self.nvars, t[1])
        if t[0] == "var":
            return Poly.var(self.nvars, t[1])
        if t == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise PolyError("missing closing parenthesis")
            return inner
        if t == ("op", "-"):
            return -self.atom()
        raise PolyError("unexpected token %r" % (t,))


def parse_poly(text, nvars=None):
    """Parse a polynomial in x1..xr; r defaults to the largest index used."""
    tokens = _tokenize(text)
    if nvars is None:
        nvars = max((t[1] for t in tokens if t[0] == "var"), default=1)
    p = _Parser(tokens, nvars)
    out = p.expr()
    if p.peek() is not None:
        raise PolyError("trailing input at token %r" % (p.peek(),))
    return out


def parse_system(texts, nvars=None):
    """Parse several polynomials over a shared variable set."""
    if nvars is None:
        nvars = 1
        for text in texts:
            nvars = max(nvars, max((t[1] for t in _tokenize(text) if t[0] == "var"),
                                   default=1))
    return [parse_poly(text, nvars) for text in texts]
