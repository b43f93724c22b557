"""Exact arithmetic in the symbol L (Laurent polynomials and their quotients).

Point counts of the classes used throughout the package are obtained by
substituting a prime power for L, so everything here is kept exact: integer
coefficients, Fraction specialization, no floating point.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction


class LaurentError(ValueError):
    pass


class LaurentMotive:
    """Laurent polynomial in L with integer coefficients, canonical form.

    Stored as a mapping exponent -> nonzero coefficient.  Instances are
    immutable; all operations return new values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                if c:
                    clean[int(e)] = int(c)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMotive is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def L(cls, exponent=1, coeff=1):
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentMotive(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentMotive({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentMotive(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise LaurentError("negative powers leave the Laurent ring; use RationalMotive")
        out = LaurentMotive.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RationalMotive):
            return other == self
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        if not self.terms:
            raise LaurentError("zero polynomial has no exponents")
        return min(self.terms)

    def specialize(self, q):
        """Exact value at L = q (q a nonzero rational)."""
        q = Fraction(q)
        if q == 0:
            raise LaurentError("cannot specialize at q = 0")
        return sum((c * q ** e for e, c in self.terms.items()), Fraction(0))

    def shift(self, k):
        """Multiply by L^k."""
        return LaurentMotive({e + k: c for e, c in self.terms.items()})

    # -- text form ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                sym = "L" if e == 1 else "L^%d" % e
                body = sym if mag == 1 else "%d*%s" % (mag, sym)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "LaurentMotive(%r)" % (self.terms,)


def _coerce(x):
    if isinstance(x, LaurentMotive):
        return x
    if isinstance(x, int):
        return LaurentMotive({0: x})
    raise TypeError("cannot coerce %r to LaurentMotive" % (x,))


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coeff>\d+)\s*(?:\*\s*(?P<lsym1>L)(?:\^(?P<exp1>-?\d+))?)?
          | (?P<lsym2>L)(?:\^(?P<exp2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text):
    """Parse the Laurent text grammar: e.g. ``L^3 - L``, ``1 + L^-2``, ``-5*L^2``."""
    text = text.strip()
    if not text:
        raise LaurentError("empty Laurent expression")
    pos = 0
    terms = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise LaurentError("bad Laurent syntax at %r" % text[pos:])
        sign = m.group("sign")
        if sign is None and not first:
            raise LaurentError("missing sign before %r" % text[pos:])
        s = -1 if sign == "-" else 1
        if m.group("coeff") is not None:
            c = int(m.group("coeff"))
            if m.group("lsym1"):
                e = int(m.group("exp1")) if m.group("exp1") is not None else 1
            else:
                e = 0
        else:
            c = 1
            e = int(m.group("exp2")) if m.group("exp2") is not None else 1
        terms[e] = terms.get(e, 0) + s * c
        pos = m.end()
        first = False
    return LaurentMotive(terms)


class RationalMotive:
    """Quotient of Laurent polynomials in L.

    Equality is decided by cross-multiplication; no factorization is ever
    attempted.  A cheap normalization (integer content and monomial factors)
    keeps intermediate results small.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _coerce_rm_part(num)
        den = LaurentMotive.one() if den is None else _coerce_rm_part(den)
        if den.is_zero():
            raise LaurentError("zero denominator")
        num, den = _reduce_pair(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMotive is immutable")

    @classmethod
    def zero(cls):
        return cls(LaurentMotive.zero())

    @classmethod
    def one(cls):
        return cls(LaurentMotive.one())

    def __add__(self, other):
        other = _coerce_rm(other)
        return RationalMotive(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalMotive(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rm(other))

    def __rsub__(self, other):
        return _coerce_rm(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rm(other)
        return RationalMotive(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rm(other)
        if other.num.is_zero():
            raise LaurentError("division by zero")
        return RationalMotive(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rm(other) / self

    def __eq__(self, other):
        try:
            other = _coerce_rm(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # Hash only the zero/nonzero distinction cheaply; full canonical
        # hashing would require factorization.
        return hash(self.num.is_zero())

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == LaurentMotive.one()

    def as_laurent(self):
        if not self.is_polynomial():
            raise LaurentError("not a Laurent polynomial: %s" % self)
        return self.num

    def specialize(self, q):
        d = self.den.specialize(q)
        if d == 0:
            raise LaurentError("denominator vanishes at q=%s" % q)
        return self.num.specialize(q) / d

    def __str__(self):
        if self.den == LaurentMotive.one():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RationalMotive(%r, %r)" % (self.num.terms, self.den.terms)


def _coerce_rm_part(x):
    if isinstance(x, LaurentMotive):
        return x
    if isinstance(x, int):
        return LaurentMotive({0: x})
    raise TypeError("cannot coerce %r into a Laurent polynomial" % (x,))


def _coerce_rm(x):
    if isinstance(x, RationalMotive):
        return x
    return RationalMotive(_coerce_rm_part(x))


def _gcd_all(values):
    g = 0
    for v in values:
        g = _gcd(g, abs(v))
    return g


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _reduce_pair(num, den):
    """Divide out the common integer content and a common power of L."""
    if num.is_zero():
        # normalize 0/den to 0/1
        return num, LaurentMotive.one()
    if len(den.terms) == 1:
        # monomials are units: absorb the whole power of L into the numerator
        shift = den.min_exp()
    else:
        shift = min(num.min_exp(), den.min_exp())
    if shift:
        num = num.shift(-shift)
        den = den.shift(-shift)
    g = _gcd(_gcd_all(num.terms.values()), _gcd_all(den.terms.values()))
    if g > 1:
        num = LaurentMotive({e: c // g for e, c in num.terms.items()})
        den = LaurentMotive({e: c // g for e, c in den.terms.items()})
    # fix sign of the denominator's leading coefficient
    if den.terms[max(den.terms)] < 0:
        num, den = -num, -den
    return num, den


# ---------------------------------------------------------------------------
# Named classes
# ---------------------------------------------------------------------------


L = LaurentMotive.L()
ONE = LaurentMotive.one()


def sl_class(r):
    """Point-count class of SL_r: L^(r^2-1) * prod_{2<=i<=r} (1 - L^-i)."""
    if r < 1:
        raise LaurentError("r must be >= 1")
    out = LaurentMotive({r * r - 1: 1})
    for i in range(2, r + 1):
        out = out * LaurentMotive({0: 1, -i: -1})
    return out


class Permutation:
    """A permutation of {1..r}, stored as the image sequence w(1), ..., w(r)."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise LaurentError("not a permutation of 1..%d: %r" % (len(images), images))
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __len__(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)

    @staticmethod
    def all(r):
        for p in itertools.permutations(range(1, r + 1)):
            yield Permutation(p)


def z_w_class(w, r):
    """The cell class (L-1)^(r-1) * L^(sum_i (r-1-m_i)) attached to a permutation.

    m_i counts the integers 1 <= k < w(i) not among w(1), ..., w(i-1).
    """
    if len(w) != r:
        raise LaurentError("permutation length %d != r=%d" % (len(w), r))
    exp = 0
    seen = set()
    for i in range(1, r + 1):
        wi = w(i)
        m_i = sum(1 for k in range(1, wi) if k not in seen)
        if m_i > r - 1:
            raise AssertionError("m_i=%d exceeds r-1 for w=%r" % (m_i, w))
        exp += r - 1 - m_i
        seen.add(wi)
    torus = LaurentMotive({1: 1, 0: -1}) ** (r - 1)
    return torus * LaurentMotive({exp: 1})


def zw_sum_identity(r):
    """True iff the cell classes over all permutations sum to sl_class(r)."""
    total = LaurentMotive.zero()
    for w in Permutation.all(r):
        total = total + z_w_class(w, r)
    return total == sl_class(r)


def compositions(total, parts):
    """All tuples e in N^parts with sum(e) == total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def partition_weight_sum(m, r, k):
    """Sum over e in N^r with |e| = k of prod_i L^(-(m+1-i) e_i)."""
    out = LaurentMotive.zero()
    for e in compositions(k, r):
        exp = -sum((m + 1 - i) * e[i - 1] for i in range(1, r + 1))
        out = out + LaurentMotive({exp: 1})
    return out


def fibration_factor(m, r, n, k):
    """L^(n(r^2-1) + k((m-r)r+1)) times the weighted sum over |e| = k."""
    if not (1 <= r <= m):
        raise LaurentError("need 1 <= r <= m")
    if n < 0 or k < 0:
        raise LaurentError("n, k must be >= 0")
    head = n * (r * r - 1) + k * ((m - r) * r + 1)
    return LaurentMotive({head: 1}) * partition_weight_sum(m, r, k)
