"""Rational generating series in T_1..T_l and their truncated expansions.

A series is a sum of factored terms coeff * T^a / prod_j (1 - L^-v_j T^N_j);
no common denominator is ever formed.  Identities are certified by expanding
both sides to a caller-chosen order, which is recorded by the CLI whenever it
reports one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .motive import LaurentMotive, RationalMotive, parse_laurent


class SeriesError(ValueError):
    pass


def multi_index(entries):
    t = tuple(int(x) for x in entries)
    if not t:
        raise SeriesError("multi-index must have length >= 1")
    if any(x < 0 for x in t):
        raise SeriesError("multi-index entries must be >= 0: %r" % (t,))
    return t


def mi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def mi_scale(k, a):
    return tuple(k * x for x in a)

def mi_total(a):
    return sum(a)


@dataclass(frozen=True)
class SeriesFactor:
    """One denominator factor (1 - L^-nu T^N)^-1."""
    nu: int
    N: tuple

    def __post_init__(self):
        if self.nu < 1:
            raise SeriesError("factor needs nu >= 1")
        if all(x == 0 for x in self.N):
            raise SeriesError("factor needs N != 0")


@dataclass(frozen=True)
class SeriesTerm:
    coeff: RationalMotive
    shift: tuple
    factors: tuple

    @property
    def nvars(self):
        return len(self.shift)


class RationalSeries:
    """Sum of factored terms, all in the same number of T variables."""

    def __init__(self, nvars, terms=()):
        self.nvars = int(nvars)
        if self.nvars < 1:
            raise SeriesError("need at least one T variable")
        self.terms = []
        for t in terms:
            if t.nvars != self.nvars:
                raise SeriesError("term has %d variables, series has %d"
                                  % (t.nvars, self.nvars))
            for f in t.factors:
                if len(f.N) != self.nvars:
                    raise SeriesError("factor multi-index length mismatch")
            if not t.coeff.is_zero():
                self.terms.append(t)

    @classmethod
    def zero(cls, nvars=1):
        return cls(nvars)

    @classmethod
    def term(cls, coeff, shift, factors=()):
        shift = tuple(int(x) for x in shift)
        fs = tuple(SeriesFactor(int(nu), tuple(int(x) for x in N)) for nu, N in factors)
        if not isinstance(coeff, RationalMotive):
            coeff = RationalMotive(coeff)
        return cls(len(shift), [SeriesTerm(coeff, shift, fs)])

    def __add__(self, other):
        if self.nvars != other.nvars:
            raise SeriesError("variable count mismatch")
        return RationalSeries(self.nvars, self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            if self.nvars != other.nvars:
                raise SeriesError("variable count mismatch")
            out = []
            for a in self.terms:
                for b in other.terms:
                    out.append(SeriesTerm(a.coeff * b.coeff,
                                          mi_add(a.shift, b.shift),
                                          a.factors + b.factors))
            return RationalSeries(self.nvars, out)
        # scalar (RationalMotive / LaurentMotive / int)
        if not isinstance(other, RationalMotive):
            other = RationalMotive(other)
        return RationalSeries(self.nvars,
                              [SeriesTerm(t.coeff * other, t.shift, t.factors)
                               for t in self.terms])

    __rmul__ = __mul__

    def shifted(self, delta):
        """Multiply by T^delta; delta entries may be negative if every term
        stays inside the series ring."""
        out = []
        for t in self.terms:
            s = tuple(x + d for x, d in zip(t.shift, delta))
            if any(x < 0 for x in s):
                raise SeriesError("monomial shift by %r leaves the series ring "
                                  "on term with shift %r" % (delta, t.shift))
            out.append(SeriesTerm(t.coeff, s, t.factors))
        return RationalSeries(self.nvars, out)

    def times_binomial(self, nu, N):
        """Multiply by the polynomial (1 - L^-nu T^N)."""
        N = tuple(int(x) for x in N)
        mono = RationalMotive(LaurentMotive({-nu: -1}))
        out = []
        for t in self.terms:
            out.append(t)
            out.append(SeriesTerm(t.coeff * mono, mi_add(t.shift, N), t.factors))
        return RationalSeries(self.nvars, out)

    def over_binomial(self, nu, N):
        """Divide by (1 - L^-nu T^N), i.e. append a geometric factor."""
        f = SeriesFactor(int(nu), tuple(int(x) for x in N))
        return RationalSeries(self.nvars,
                              [SeriesTerm(t.coeff, t.shift, t.factors + (f,))
                               for t in self.terms])

    def expand(self, order):
        """Exact truncated expansion: coefficients of all T^n with |n| <= order."""
        if order < 0:
            raise SeriesError("order must be >= 0")
        total = TruncatedSeries(self.nvars, order)
        for t in self.terms:
            if mi_total(t.shift) > order:
                continue
            part = TruncatedSeries(self.nvars, order, {t.shift: t.coeff})
            for f in t.factors:
                geom = {}
                k = 0
                while k * mi_total(f.N) <= order:
                    geom[mi_scale(k, f.N)] = RationalMotive(LaurentMotive({-f.nu * k: 1}))
                    k += 1
                part = part * TruncatedSeries(self.nvars, order, geom)
            total = total + part
        return total

    def limit_at_infinity(self):
        """Constant term of the T^-1 expansion (the genuine T -> infinity limit).

        Every term must satisfy shift <= sum of factor exponents componentwise.
        In several variables the reduction T_i -> S^alpha_i is applied for two
        distinct positive alpha and the results compared.
        """
        for t in self.terms:
            tot = tuple(0 for _ in range(self.nvars))
            for f in t.factors:
                tot = mi_add(tot, f.N)
            if any(a > b for a, b in zip(t.shift, tot)):
                raise SeriesError(
                    "limit undefined: term with shift %r exceeds factor total %r"
                    % (t.shift, tot))
        if self.nvars == 1:
            return self._limit_1d()
        alphas = [tuple(1 for _ in range(self.nvars)),
                  tuple(range(1, self.nvars + 1))]
        vals = [self._substitute_alpha(a)._limit_1d() for a in alphas]
        if vals[0] != vals[1]:
            raise SeriesError("limit depends on the substitution direction")
        return vals[0]

    def _substitute_alpha(self, alpha):
        out = []
        for t in self.terms:
            shift = (sum(a * x for a, x in zip(alpha, t.shift)),)
            fs = tuple(SeriesFactor(f.nu, (sum(a * x for a, x in zip(alpha, f.N)),))
                       for f in t.factors)
            out.append(SeriesTerm(t.coeff, shift, fs))
        return RationalSeries(1, out)

    def _limit_1d(self):
        out = RationalMotive.zero()
        for t in self.terms:
            tot = sum(f.N[0] for f in t.factors)
            if t.shift[0] < tot:
                continue
            sign = -1 if len(t.factors) % 2 else 1
            lsum = sum(f.nu for f in t.factors)
            out = out + t.coeff * RationalMotive(LaurentMotive({lsum: sign}))
        return out

    def specialize(self, q):
        """Numeric series (coefficients over Fraction is not possible in factored
        form; use expand().specialize(q) instead)."""
        raise SeriesError("specialize a truncated expansion, not the factored form")

    # -- text / JSON forms -------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        return "  +  ".join(_term_str(t) for t in self.terms)

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [
                {
                    "coeff_num": str(t.coeff.num),
                    "coeff_den": str(t.coeff.den),
                    "shift": list(t.shift),
                    "factors": [{"nu": f.nu, "N": list(f.N)} for f in t.factors],
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data):
        terms = []
        for t in data["terms"]:
            coeff = RationalMotive(parse_laurent(t["coeff_num"]),
                                   parse_laurent(t.get("coeff_den", "1")))
            terms.append(SeriesTerm(coeff, tuple(t["shift"]),
                                    tuple(SeriesFactor(f["nu"], tuple(f["N"]))
                                          for f in t["factors"])))
        return cls(data["nvars"], terms)

    @classmethod
    def parse(cls, text):
        """Parse the term-list text form produced by __str__."""
        text = text.strip()
        if text == "0":
            return cls(1)
        terms = []
        nvars = None
        for chunk in text.split("  +  "):
            term = _parse_term(chunk)
            if nvars is None:
                nvars = term.nvars
            terms.append(term)
        return cls(nvars, terms)


def _monomial_str(shift):
    parts = []
    for i, a in enumerate(shift):
        if a == 0:
            continue
        sym = "T%d" % (i + 1)
        parts.append(sym if a == 1 else "%s^%d" % (sym, a))
    return "*".join(parts)


def _term_str(t):
    head = "(%s)" % t.coeff
    mono = _monomial_str(t.shift)
    if mono:
        head += " * " + mono
    if not t.factors:
        return head
    dens = []
    for f in t.factors:
        dens.append("(1 - L^-%d * %s)" % (f.nu, _monomial_str(f.N) or "1"))
    return head + " / (" + "".join(dens) + ")"


def _parse_monomial(text, nvars_hint=None):
    """Parse T1^a1*...*Tl^al; returns a dict var->exp."""
    out = {}
    for piece in filter(None, (p.strip() for p in text.split("*"))):
        if piece == "1":
            continue
        if not piece.startswith("T"):
            raise SeriesError("bad T-monomial %r" % text)
        if "^" in piece:
            var, exp = piece[1:].split("^")
            out[int(var)] = int(exp)
        else:
            out[int(piece[1:])] = 1
    return out


def _parse_term(chunk):
    chunk = chunk.strip()
    if not chunk.startswith("("):
        raise SeriesError("term must start with a parenthesized coefficient: %r" % chunk)
    depth = 0
    for i, ch in enumerate(chunk):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                break
    coeff_text = chunk[1:i]
    rest = chunk[i + 1:].strip()
    if "/" in coeff_text:
        ntext, _, dtext = coeff_text.partition("/")
        coeff = RationalMotive(parse_laurent(ntext.strip().strip("()")),
                               parse_laurent(dtext.strip().strip("()")))
    else:
        coeff = RationalMotive(parse_laurent(coeff_text))
    if "/" in rest:
        mono_text, _, den = rest.partition("/")
        den = den.strip()
        if not (den.startswith("(") and den.endswith(")")):
            raise SeriesError("bad denominator %r" % den)
        den = den[1:-1]
        factor_texts = [p for p in den.replace(")(", ")|(").split("|") if p]
    else:
        mono_text, factor_texts = rest, []
    mono_text = mono_text.strip()
    if mono_text.startswith("*"):
        mono_text = mono_text[1:].strip()
    shift_map = _parse_monomial(mono_text) if mono_text else {}
    factors = []
    nvars = max(shift_map, default=1)
    parsed_factors = []
    for ft in factor_texts:
        ft = ft.strip()
        if not (ft.startswith("(") and ft.endswith(")")):
            raise SeriesError("bad factor %r" % ft)
        body = ft[1:-1].strip()
        if not body.startswith("1 - L^-"):
            raise SeriesError("bad factor body %r" % body)
        body = body[len("1 - L^-"):]
        nu_text, _, mono = body.partition("*")
        mono_map = _parse_monomial(mono)
        parsed_factors.append((int(nu_text), mono_map))
        nvars = max(nvars, max(mono_map, default=1))
    shift = tuple(shift_map.get(i + 1, 0) for i in range(nvars))
    for nu, mono_map in parsed_factors:
        factors.append(SeriesFactor(nu, tuple(mono_map.get(i + 1, 0) for i in range(nvars))))
    return SeriesTerm(coeff, shift, tuple(factors))


class TruncatedSeries:
    """Coefficients of T^n for |n| <= order, over any exact coefficient ring.

    The ring is whatever the coefficients are (Fraction or RationalMotive);
    operations only use +, * and equality.
    """

    def __init__(self, nvars, order, coeffs=None, zero=None):
        self.nvars = int(nvars)
        self.order = int(order)
        self.coeffs = {}
        if coeffs:
            for n, c in coeffs.items():
                n = tuple(int(x) for x in n)
                if len(n) != self.nvars:
                    raise SeriesError("multi-index length mismatch")
                if mi_total(n) > self.order:
                    raise SeriesError("index %r beyond order %d" % (n, self.order))
                if c:
                    self.coeffs[n] = c

    def coefficient(self, n):
        n = tuple(int(x) for x in n)
        if mi_total(n) > self.order:
            raise SeriesError("coefficient %r beyond truncation order %d" % (n, self.order))
        c = self.coeffs.get(n)
        if c is None:
            return Fraction(0) if not self.coeffs else _zero_like(next(iter(self.coeffs.values())))
        return c

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        out = {}
        for n, c in self.coeffs.items():
            if mi_total(n) <= order:
                out[n] = c
        for n, c in other.coeffs.items():
            if mi_total(n) <= order:
                out[n] = out.get(n, _zero_like(c)) + c
        return TruncatedSeries(self.nvars, order, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        out = {}
        for n1, c1 in self.coeffs.items():
            if mi_total(n1) > order:
                continue
            for n2, c2 in other.coeffs.items():
                n = mi_add(n1, n2)
                if mi_total(n) > order:
                    continue
                v = c1 * c2
                out[n] = out.get(n, _zero_like(v)) + v
        return TruncatedSeries(self.nvars, order, out)

    def scale(self, c):
        return TruncatedSeries(self.nvars, self.order,
                               {n: v * c for n, v in self.coeffs.items()})

    def times_binomial(self, c, d):
        """Multiply by (1 - c*T^d)."""
        d = tuple(int(x) for x in d)
        out = dict(self.coeffs)
        for n, v in self.coeffs.items():
            k = mi_add(n, d)
            if mi_total(k) > self.order:
                continue
            w = -(v * c)
            out[k] = out.get(k, _zero_like(w)) + w
        return TruncatedSeries(self.nvars, self.order, out)

    def over_binomial(self, c, d):
        """Multiply by the geometric expansion of (1 - c*T^d)^-1."""
        d = tuple(int(x) for x in d)
        if all(x == 0 for x in d):
            raise SeriesError("geometric factor needs T-degree > 0")
        geom = {}
        power = _one_like(c)
        k = 0
        while k * mi_total(d) <= self.order:
            geom[mi_scale(k, d)] = power
            power = power * c
            k += 1
        return self * TruncatedSeries(self.nvars, self.order, geom)

    def specialize(self, q):
        out = {}
        for n, c in self.coeffs.items():
            out[n] = c.specialize(q)
        return TruncatedSeries(self.nvars, self.order, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        order = min(self.order, other.order)
        keys = set(self.coeffs) | set(other.coeffs)
        for n in keys:
            if mi_total(n) > order:
                continue
            a = self.coeffs.get(n)
            b = other.coeffs.get(n)
            if a is None:
                if b:
                    return False
            elif b is None:
                if a:
                    return False
            elif a != b:
                return False
        return True

    def __repr__(self):
        return "TruncatedSeries(%d, %d, %r)" % (self.nvars, self.order, self.coeffs)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries) or self.nvars != other.nvars:
            raise SeriesError("incompatible truncated series")

    def to_json(self):
        return {
            "nvars": self.nvars,
            "order": self.order,
            "coeffs": {",".join(map(str, n)): str(c)
                       for n, c in sorted(self.coeffs.items())},
        }


def _zero_like(c):
    if isinstance(c, RationalMotive):
        return RationalMotive.zero()
    if isinstance(c, (Fraction, int)):
        return Fraction(0)
    return c * 0


def _one_like(c):
    if isinstance(c, RationalMotive):
        return RationalMotive.one()
    return Fraction(1)


def series_equal(a, b, order):
    """Coefficientwise equality of the expansions to the given order."""
    return a.expand(order) == b.expand(order)
