"""Transfer operators between castling partners, plus verification drivers.

A castling datum fixes m = r1 + r2 and the degrees d of the shared invariants;
the operators push each realization of the zeta data of one partner (series,
Milnor fiber class, spectrum, b-function roots, p-adic series) to the other.
All of them are exact and invertible by swapping r1 and r2.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .arcs import count_stratum
from .motive import LaurentMotive, RationalMotive, sl_class
from .series import RationalSeries, TruncatedSeries, mi_scale
from .spectrum import Spectrum, SpectrumError


class CastlingError(ValueError):
    pass


@dataclass(frozen=True)
class CastlingDatum:
    m: int
    r1: int
    r2: int
    l: int
    d: tuple

    def __post_init__(self):
        if self.r1 < 1 or self.r2 < 1:
            raise CastlingError("r1 and r2 must be >= 1")
        if self.m != self.r1 + self.r2:
            raise CastlingError("m must equal r1 + r2")
        if self.l < 1 or len(self.d) != self.l:
            raise CastlingError("need one degree per invariant")
        if any(x < 1 for x in self.d):
            raise CastlingError("degrees must be >= 1")

    def swapped(self):
        return CastlingDatum(self.m, self.r2, self.r1, self.l, self.d)

    @classmethod
    def from_json(cls, data):
        return cls(int(data["m"]), int(data["r1"]), int(data["r2"]),
                   int(data["l"]), tuple(int(x) for x in data["d"]))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {"m": self.m, "r1": self.r1, "r2": self.r2,
                "l": self.l, "d": list(self.d)}


def castle_zeta(Z1, c):
    """Transfer of the global zeta series: multiply by the ratio of special
    linear group classes and trade r1 binomials (1 - L^-j T^d) for r2
    geometric factors, T^d meaning the product of T_i^d_i."""
    if Z1.nvars != c.l:
        raise CastlingError("series has %d variables, datum says %d"
                            % (Z1.nvars, c.l))
    out = Z1 * RationalMotive(sl_class(c.r2), sl_class(c.r1))
    for j in range(1, c.r1 + 1):
        out = out.times_binomial(j, c.d)
    for j in range(1, c.r2 + 1):
        out = out.over_binomial(j, c.d)
    return out


def castle_local_zeta(Z1_0, c):
    """Transfer of the zeta series of the germ at the origin.

    Solving the displayed local relation for the second partner and clearing
    the T^-d factors by a global monomial multiplier gives
    Z2_0 = T^(d(r2-r1)) Z1_0 U prod_{j<=r1}(1 - L^-j T^d)
           / prod_{j<=r2}(1 - L^-j T^d)
    with U = prod_{j<=r2}(1 - L^-j) / prod_{j<=r1}(1 - L^-j); for r2 < r1 the
    monomial shift is negative and fails loudly if a term would leave the
    series ring (degree bookkeeping error).
    """
    if Z1_0.nvars != c.l:
        raise CastlingError("series has %d variables, datum says %d"
                            % (Z1_0.nvars, c.l))
    u_num = LaurentMotive.one()
    for j in range(1, c.r2 + 1):
        u_num = u_num * LaurentMotive({0: 1, -j: -1})
    u_den = LaurentMotive.one()
    for j in range(1, c.r1 + 1):
        u_den = u_den * LaurentMotive({0: 1, -j: -1})
    out = Z1_0 * RationalMotive(u_num, u_den)
    for j in range(1, c.r1 + 1):
        out = out.times_binomial(j, c.d)
    for j in range(1, c.r2 + 1):
        out = out.over_binomial(j, c.d)
    try:
        return out.shifted(mi_scale(c.r2 - c.r1, c.d))
    except ValueError as exc:
        raise CastlingError("degree bookkeeping failed: %s" % exc) from exc


def localize_by_degree(Z, c, side):
    """Lemma-style passage from the global series to the series of the germ:
    Z_{f,0} = L^(-m r) T^(r d) Z_f for the partner on side 1 or 2."""
    r = c.r1 if side == 1 else c.r2
    out = Z * RationalMotive(LaurentMotive({-c.m * r: 1}))
    return out.shifted(mi_scale(r, c.d))


def globalize_by_degree(Z0, c, side):
    """Inverse of localize_by_degree; errors if the series does not actually
    vanish to the required order."""
    r = c.r1 if side == 1 else c.r2
    out = Z0 * RationalMotive(LaurentMotive({c.m * r: 1}))
    try:
        return out.shifted(mi_scale(-r, c.d))
    except ValueError as exc:
        raise CastlingError("degree bookkeeping failed: %s" % exc) from exc


def castle_milnor(S1, c):
    """Transfer of the virtual Milnor fiber: multiply by
    prod_{j<=r2}(1 - L^j) / prod_{j<=r1}(1 - L^j); the optional spectrum
    channel does the same with t for L and must divide exactly."""
    counting, spectrum = S1 if isinstance(S1, tuple) else (S1, None)
    if not isinstance(counting, RationalMotive):
        counting = RationalMotive(counting)
    for j in range(1, c.r2 + 1):
        counting = counting * RationalMotive(LaurentMotive({0: 1, j: -1}))
    for j in range(1, c.r1 + 1):
        counting = counting / RationalMotive(LaurentMotive({0: 1, j: -1}))
    out_spec = None
    if spectrum is not None:
        num = spectrum
        for j in range(1, c.r2 + 1):
            num = num * Spectrum({0: 1, j: -1})
        den = Spectrum.one()
        for j in range(1, c.r1 + 1):
            den = den * Spectrum({0: 1, j: -1})
        try:
            out_spec = num.exact_div(den)
        except SpectrumError as exc:
            raise CastlingError("spectrum channel is not divisible: %s" % exc) from exc
    return (counting, out_spec) if spectrum is not None else counting


def castle_spectrum(h1, c):
    """Transfer of the Hodge spectrum at the origin: the displayed identity
    (1 + (-1)^(m r - 1) h) / prod_{j<=r}(1 - t^j) is equal on both sides; an
    inexact division means h1 is not the spectrum of a genuine partner."""
    s1 = -1 if (c.m * c.r1 - 1) % 2 else 1
    s2 = -1 if (c.m * c.r2 - 1) % 2 else 1
    num = Spectrum.one() + s1 * h1
    for j in range(1, c.r2 + 1):
        num = num * Spectrum({0: 1, j: -1})
    den = Spectrum.one()
    for j in range(1, c.r1 + 1):
        den = den * Spectrum({0: 1, j: -1})
    try:
        quotient = num.exact_div(den)
    except SpectrumError as exc:
        raise CastlingError("not a castling-partner spectrum: %s" % exc) from exc
    return s2 * (quotient - Spectrum.one())


@dataclass(frozen=True)
class BFunction:
    """A b-function through its multiset of root magnitudes: b(s) = prod (s + rho)."""

    roots: tuple  # sorted tuple of (Fraction rho, multiplicity)

    @classmethod
    def from_roots(cls, roots):
        count = Counter(Fraction(r) for r in roots)
        if any(r <= 0 for r in count):
            raise CastlingError("b-function roots must be positive rationals")
        return cls(tuple(sorted(count.items())))

    def as_counter(self):
        return Counter(dict(self.roots))

    def size(self):
        return sum(m for _r, m in self.roots)

    def __str__(self):
        parts = []
        for r, mult in self.roots:
            text = str(r)
            parts.extend([text] * mult)
        return "{" + ", ".join(parts) + "}"

    def to_json(self):
        return {"roots": [{"root": str(r), "multiplicity": m}
                          for r, m in self.roots]}


def castle_bfunction(b1, c):
    """Root multiset transfer: add {(i+j)/d : i <= r2, 0 <= j < d}, remove the
    same set with r1; removing a root that is not present means the input was
    not the b-function of a castling partner."""
    if c.l != 1:
        raise CastlingError("b-function transfer needs a single invariant")
    d = c.d[0]
    roots = b1.as_counter()
    for i in range(1, c.r2 + 1):
        for j in range(d):
            roots[Fraction(i + j, d)] += 1
    for i in range(1, c.r1 + 1):
        for j in range(d):
            rho = Fraction(i + j, d)
            if roots[rho] <= 0:
                raise CastlingError("cancellation failed at root %s" % rho)
            roots[rho] -= 1
    return BFunction.from_roots(
        [r for r, m in roots.items() for _ in range(m)])


def castle_igusa(Z1, q, c):
    """Transfer of the p-adic series in t = q^-s: multiply by
    prod_{j<=r2} (1 - q^-j)/(1 - q^-j t^d) and divide the r1 version out,
    with exact rational arithmetic at the input truncation order."""
    if c.l != 1:
        raise CastlingError("p-adic transfer needs a single invariant")
    q = Fraction(q)
    d = (c.d[0],)
    out = Z1
    for j in range(1, c.r2 + 1):
        out = out.scale(1 - q ** -j)
        out = out.over_binomial(q ** -j, d)
    for j in range(1, c.r1 + 1):
        out = out.scale(1 / (1 - q ** -j))
        out = out.times_binomial(q ** -j, d)
    return out


def castle_zeta_numeric(Z1, q, c):
    """castle_zeta on a q-specialized truncated series (L already replaced
    by the rational q)."""
    q = Fraction(q)
    ratio = Fraction(sl_class(c.r2).specialize(q)) / sl_class(c.r1).specialize(q)
    out = Z1.scale(ratio)
    for j in range(1, c.r1 + 1):
        out = out.times_binomial(q ** -j, c.d)
    for j in range(1, c.r2 + 1):
        out = out.over_binomial(q ** -j, c.d)
    return out


def counting_series(sys, q, order, leading, threads=1):
    """Numeric zeta series from exhaustive counts, including the order-zero
    boundary strata: coefficient at T^n is count(n) q^(-|n| r)."""
    coeffs = {}
    from itertools import product
    for n in product(range(order + 1), repeat=sys.l):
        if sum(n) > order:
            continue
        cnt = count_stratum(sys, n, q, leading=leading, threads=threads)
        if cnt:
            coeffs[n] = Fraction(cnt, q ** (sum(n) * sys.r))
    return TruncatedSeries(sys.l, order, coeffs)


def verify_castling(sys1, sys2, c, q, order, threads=1):
    """Count both partners, transfer the first series, and compare
    coefficientwise; returns a JSON-ready report."""
    if sys1.l != c.l or sys2.l != c.l:
        raise CastlingError("polynomial systems do not match the datum arity")
    if sys1.r != c.m * c.r1 or sys2.r != c.m * c.r2:
        raise CastlingError("ambient dimensions must be m*r1 and m*r2")
    for i in range(c.l):
        if sys1.degrees[i] != c.r1 * c.d[i] or sys2.degrees[i] != c.r2 * c.d[i]:
            raise CastlingError("invariant degrees must be r_j * d_i")
    leading = "one" if c.l == 1 else "any"
    Z1 = counting_series(sys1, q, order, leading, threads)
    Z2 = counting_series(sys2, q, order, leading, threads)
    predicted = castle_zeta_numeric(Z1, q, c)
    rows = []
    worst = order
    keys = sorted(set(Z2.coeffs) | set(predicted.coeffs))
    for n in keys:
        lhs = predicted.coefficient(n)
        rhs = Z2.coefficient(n)
        equal = lhs == rhs
        if not equal:
            worst = min(worst, sum(n) - 1)
        rows.append({"n": list(n), "lhs": str(lhs), "rhs": str(rhs),
                     "equal": equal})
    return {
        "q": q,
        "order": order,
        "leading": leading,
        "castling": c.to_json(),
        "coefficients": rows,
        "all_equal": all(row["equal"] for row in rows),
        "max_verified_order": worst,
    }
