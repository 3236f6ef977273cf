"""Exact multivariate rational expressions over an ordered coordinate set.

Values form a tower:

  Rational  arbitrary-precision rational scalar; this is fractions.Fraction,
            which already guarantees the reduced-form invariants
  Poly      sparse polynomial {monomial: coefficient} in canonical form
            (no zero coefficients, integral coefficients stored as int)
  RatExpr   quotient num/den of two Polys in normal form: den nonzero and
            integer-primitive with positive leading coefficient under the
            graded-lexicographic order, gcd(num, den) = 1, zero is 0/1

Structural equality of normal forms coincides with mathematical equality,
which the rest of the engine relies on for identity checks.  Coordinates are
opaque hashable, mutually sortable keys; their sort order is the global
coordinate enumeration and fixes the graded-lexicographic monomial order
(earlier coordinate = more significant).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import kernels
from .errors import (
    DivisionByZero,
    EvaluationPole,
    SubstitutionPole,
    UnboundCoordinate,
    ZeroPolynomial,
)

Rational = Fraction

__all__ = [
    "Rational",
    "Poly",
    "RatExpr",
    "mono_cmp",
    "differentiate",
    "substitute",
    "evaluate",
    "squarefree_factors",
    "poly_gcd",
    "try_divide",
]


# ---------------------------------------------------------------------------
# monomials: sorted tuples of (coordinate key, positive exponent)
# ---------------------------------------------------------------------------

def mono_degree(m) -> int:
    return sum(e for _, e in m)


def mono_cmp(m1, m2) -> int:
    """Graded lexicographic comparison; positive when m1 is the larger."""
    d1 = mono_degree(m1)
    d2 = mono_degree(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    i = j = 0
    while i < len(m1) and j < len(m2):
        k1, e1 = m1[i]
        k2, e2 = m2[j]
        if k1 != k2:
            # the monomial with a positive exponent on the earlier coordinate wins
            return 1 if k1 < k2 else -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
        i += 1
        j += 1
    return 0


def mono_div(m1, m2):
    """m1 / m2, or None when not divisible."""
    if not m2:
        return m1
    d = dict(m1)
    for k, e in m2:
        v = d.get(k)
        if v is None or v < e:
            return None
        if v == e:
            del d[k]
        else:
            d[k] = v - e
    return tuple(sorted(d.items()))


def mono_min(m1, m2):
    """Exponent-wise minimum (the gcd of two monomials)."""
    if not m1 or not m2:
        return ()
    d2 = dict(m2)
    out = []
    for k, e in m1:
        e2 = d2.get(k)
        if e2 is not None:
            out.append((k, min(e, e2)))
    return tuple(out)


def _mono_sort_key(m):
    # descending grlex via (degree, dense-ish pair walk) packed for sorted()
    return (mono_degree(m), tuple((_NegKey(k), e) for k, e in m))


class _NegKey:
    """Order-reversing wrapper so earlier coordinates sort as larger."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k

    def __eq__(self, other):
        return other.k == self.k

    def __hash__(self):
        return hash(self.k)


def sorted_terms(terms: Mapping) -> list:
    """Terms in descending graded-lexicographic order (leading term first)."""
    return sorted(terms.items(), key=lambda t: _mono_sort_key(t[0]), reverse=True)


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------

def _as_coeff(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not a rational coefficient: {c!r}")


class Poly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                c = _as_coeff(c)
                if c:
                    t[m] = c
        self._terms = t
        self._hash = None

    # construction ---------------------------------------------------------

    @staticmethod
    def _raw(terms: dict) -> "Poly":
        # internal: terms already canonical (kernel output)
        p = Poly.__new__(Poly)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "Poly":
        return _P_ZERO

    @classmethod
    def one(cls) -> "Poly":
        return _P_ONE

    @classmethod
    def const(cls, c) -> "Poly":
        c = _as_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def coord(cls, key, exp: int = 1) -> "Poly":
        if exp < 1:
            raise ValueError("exponent must be positive")
        return cls._raw({((key, exp),): 1})

    # inspection -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if self.is_constant:
            return Fraction(self._terms[()])
        raise ValueError("not a constant polynomial")

    def coords(self) -> frozenset:
        out = set()
        for m in self._terms:
            for k, _ in m:
                out.add(k)
        return frozenset(out)

    @property
    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(mono_degree(m) for m in self._terms)

    def degree_in(self, key) -> int:
        d = 0
        for m in self._terms:
            for k, e in m:
                if k == key and e > d:
                    d = e
        return d

    def __len__(self) -> int:
        return len(self._terms)

    def leading_term(self):
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        best = None
        for m in self._terms:
            if best is None or mono_cmp(m, best) > 0:
                best = m
        return best, self._terms[best]

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly._raw(kernels.poly_add(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly._raw(kernels.poly_sub(self._terms, other._terms))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Poly._raw(kernels.poly_sub(other._terms, self._terms))

    def __neg__(self):
        return Poly._raw(kernels.poly_neg(self._terms))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return _P_ZERO
            return Poly._raw(kernels.poly_scale(self._terms, other))
        if isinstance(other, Poly):
            return Poly._raw(kernels.poly_mul(self._terms, other._terms))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        return _poly_pow(self, n)

    # calculus and evaluation ------------------------------------------------

    def diff(self, key) -> "Poly":
        return Poly._raw(kernels.poly_diff(self._terms, key))

    def eval_at(self, point: Mapping) -> Fraction:
        try:
            v = kernels.poly_eval(self._terms, point)
        except KeyError as exc:
            raise UnboundCoordinate(exc.args[0]) from None
        return Fraction(v)

    def restrict(self, pins: Mapping) -> "Poly":
        """Set the given coordinates to constant rational values."""
        out: dict = {}
        for m, c in self._terms.items():
            rest = []
            scale = c
            for k, e in m:
                if k in pins:
                    scale = scale * (Fraction(pins[k]) ** e)
                else:
                    rest.append((k, e))
            if not scale:
                continue
            rm = tuple(rest)
            s = out.get(rm)
            s = scale if s is None else s + scale
            if s:
                out[rm] = s
            else:
                del out[rm]
        return Poly(out)

    def as_univariate(self, key) -> dict:
        """View as univariate in `key`: {degree: Poly coefficient}."""
        buckets: dict = {}
        for m, c in self._terms.items():
            deg = 0
            rest = []
            for k, e in m:
                if k == key:
                    deg = e
                else:
                    rest.append((k, e))
            buckets.setdefault(deg, {})[tuple(rest)] = c
        return {d: Poly._raw(t) for d, t in buckets.items()}

    def coefficient_of(self, key, power: int) -> "Poly":
        """Coefficient polynomial of key**power (key eliminated)."""
        out = {}
        for m, c in self._terms.items():
            deg = 0
            rest = []
            for k, e in m:
                if k == key:
                    deg = e
                else:
                    rest.append((k, e))
            if deg == power:
                out[tuple(rest)] = c
        return Poly._raw(out)

    # normalization helpers --------------------------------------------------

    def content_and_primitive(self):
        """(c, P) with self = c*P, P integer-primitive, positive leading coeff."""
        if not self._terms:
            return Fraction(0), _P_ZERO
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            num_gcd = math.gcd(num_gcd, c.numerator if isinstance(c, Fraction) else c)
            if isinstance(c, Fraction):
                den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        _, lc = self.leading_term()
        if lc < 0:
            content = -content
        inv = 1 / content
        prim = Poly._raw(kernels.poly_scale(self._terms, inv))
        return content, prim

    def primitive(self) -> "Poly":
        if not self._terms:
            return _P_ZERO
        return self.content_and_primitive()[1]

    def monomial_content(self):
        """Largest monomial dividing every term."""
        it = iter(self._terms)
        try:
            common = dict(next(it))
        except StopIteration:
            return ()
        for m in it:
            if not common:
                break
            md = dict(m)
            for k in list(common):
                e = md.get(k)
                if e is None:
                    del common[k]
                else:
                    common[k] = min(common[k], e)
        return tuple(sorted(common.items()))

    # equality ----------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            self._hash = h
        return h

    def __repr__(self):
        if not self._terms:
            return "Poly(0)"
        bits = []
        for m, c in sorted_terms(self._terms)[:8]:
            mono = "*".join(f"{k}^{e}" if e > 1 else f"{k}" for k, e in m) or "1"
            bits.append(f"{c}*{mono}")
        tail = " + ..." if len(self._terms) > 8 else ""
        return f"Poly({' + '.join(bits)}{tail})"


_P_ZERO = Poly._raw({})
_P_ONE = Poly._raw({(): 1})


@lru_cache(maxsize=4096)
def _poly_pow(p: Poly, n: int) -> Poly:
    if n == 0:
        return _P_ONE
    if n == 1:
        return p
    half = _poly_pow(p, n // 2)
    sq = half * half
    return sq * p if n % 2 else sq


# ---------------------------------------------------------------------------
# exact division, gcd, squarefree factorization
# ---------------------------------------------------------------------------

def try_divide(a: Poly, b: Poly):
    """Exact quotient a/b, or None when b does not divide a."""
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero:
        return _P_ZERO
    if b.is_constant:
        return a * (1 / Fraction(b.terms[()]))
    lm, lc = b.leading_term()
    rem = dict(a.terms)
    quot: dict = {}
    lc = Fraction(lc)
    while rem:
        # leading term of the remainder
        best = None
        for m in rem:
            if best is None or mono_cmp(m, best) > 0:
                best = m
        qm = mono_div(best, lm)
        if qm is None:
            return None
        qc = rem[best] / lc
        qc = qc.numerator if qc.denominator == 1 else qc
        quot[qm] = qc
        rem = kernels.poly_sub(rem, kernels.poly_mul_term(b.terms, qm, qc))
    return Poly._raw(quot)


def _exact_divide(a: Poly, b: Poly) -> Poly:
    q = try_divide(a, b)
    if q is None:
        raise ArithmeticError("division expected to be exact was not")
    return q


def _uni_prem(ua: dict, ub: dict, steps_guard: int = 10000) -> dict:
    """Pseudo-remainder of univariate views (coefficients are Polys)."""
    db = max(ub)
    lcb = ub[db]
    cur = dict(ua)
    n = max(ua) - db + 1
    while cur:
        dc = max(cur)
        if dc < db:
            break
        lcc = cur[dc]
        new = {}
        for d, coef in cur.items():
            if d != dc:
                new[d] = coef * lcb
        for d, coef in ub.items():
            if d != db:
                dd = d + dc - db
                t = lcc * coef
                prev = new.get(dd)
                s = -t if prev is None else prev - t
                if s.is_zero:
                    new.pop(dd, None)
                else:
                    new[dd] = s
        cur = new
        n -= 1
        steps_guard -= 1
        if steps_guard <= 0:
            raise ArithmeticError("pseudo-remainder did not terminate")
    if n > 0 and cur:
        f = lcb ** n
        cur = {d: coef * f for d, coef in cur.items()}
    return cur


def _uni_content_pp(u: dict):
    """Content (gcd of coefficients) and primitive part of a univariate view."""
    cont = _P_ZERO
    for coef in u.values():
        cont = _gcd_int_primitive(cont, coef.primitive())
        if cont == _P_ONE:
            break
    pp = {d: _exact_divide(coef, cont) for d, coef in u.items()}
    return cont, pp


def _uni_to_poly(u: dict, key) -> Poly:
    total = _P_ZERO
    for d, coef in u.items():
        if d == 0:
            total = total + coef
        else:
            total = total + Poly._raw(
                kernels.poly_mul_term(coef.terms, ((key, d),), 1)
            )
    return total


def _gcd_int_primitive(a: Poly, b: Poly) -> Poly:
    """gcd of integer-primitive polynomials; result primitive, positive lc."""
    if a.is_zero:
        return b if not b.is_zero else _P_ZERO
    if b.is_zero:
        return a
    if a.is_constant or b.is_constant:
        return _P_ONE
    if a._terms == b._terms:
        return a
    # factor out monomial contents first; they gcd coordinate-wise
    ma = a.monomial_content()
    mb = b.monomial_content()
    shared = mono_min(ma, mb)
    if ma:
        a = Poly._raw({mono_div(m, ma): c for m, c in a.terms.items()})
    if mb:
        b = Poly._raw({mono_div(m, mb): c for m, c in b.terms.items()})
    common = a.coords() & b.coords()
    if not common:
        g = _P_ONE
    else:
        v = min(common, key=lambda k: (min(a.degree_in(k), b.degree_in(k)),
                                       a.degree_in(k) + b.degree_in(k)))
        ca, ppa = _uni_content_pp(a.as_univariate(v))
        cb, ppb = _uni_content_pp(b.as_univariate(v))
        cg = _gcd_int_primitive(ca, cb)
        pg = _subresultant_gcd(ppa, ppb, v)
        g = (cg * pg).primitive()
    if shared:
        g = Poly._raw(kernels.poly_mul_term(g.terms, shared, 1))
    return g


def _subresultant_gcd(ua: dict, ub: dict, v) -> Poly:
    """gcd of two v-primitive univariate views via the subresultant PRS."""
    if max(ua) < max(ub):
        ua, ub = ub, ua
    g = _P_ONE
    h = _P_ONE
    while True:
        d = max(ua) - max(ub)
        ur = _uni_prem(ua, ub, steps_guard=10000)
        if not ur:
            cont, pp = _uni_content_pp(ub)
            return _uni_to_poly(pp, v).primitive()
        if max(ur) == 0:
            return _P_ONE
        divisor = g * (h ** d)
        ua = ub
        ub = {deg: _exact_divide(coef, divisor) for deg, coef in ur.items()}
        g = ua[max(ua)]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = _exact_divide(g ** d, h ** (d - 1))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Exact gcd over the rationals, integer-primitive with positive lc."""
    if a.is_zero and b.is_zero:
        return _P_ZERO
    pa = a.primitive() if not a.is_zero else _P_ZERO
    pb = b.primitive() if not b.is_zero else _P_ZERO
    return _gcd_int_primitive(pa, pb)


def squarefree_factors(p: Poly):
    """Squarefree decomposition [(factor, multiplicity)], up to a constant.

    Factors are integer-primitive with positive leading coefficient, pairwise
    coprime, each squarefree; their product with multiplicities equals p up to
    a nonzero rational constant.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    factors: dict = {}
    _squarefree_rec(p.primitive(), factors)
    return sorted(
        ((f, k) for f, k in factors.items()),
        key=lambda fk: (_mono_sort_key(fk[0].leading_term()[0]), -len(fk[0])),
        reverse=True,
    )


def _squarefree_rec(p: Poly, out: dict):
    if p.is_constant:
        return
    mc = p.monomial_content()
    if mc:
        for k, e in mc:
            f = Poly.coord(k)
            out[f] = out.get(f, 0) + e
        p = Poly._raw({mono_div(m, mc): c for m, c in p.terms.items()})
        if p.is_constant:
            return
    v = min(p.coords())
    cont, pp_u = _uni_content_pp(p.as_univariate(v))
    f = _uni_to_poly(pp_u, v)
    # Yun's algorithm with respect to v; multivariate gcds keep it exact
    df = f.diff(v)
    g = _gcd_int_primitive(f.primitive(), df.primitive())
    c = _exact_divide(f, g)
    w = _exact_divide(df, g)
    i = 1
    while c.degree_in(v) > 0:
        y = w - c.diff(v)
        q = _gcd_int_primitive(c.primitive(), y.primitive()) if not y.is_zero else c.primitive()
        if not q.is_constant:
            out[q] = out.get(q, 0) + i
            c = _exact_divide(c, q)
            w = _exact_divide(y, q) if not y.is_zero else y
        else:
            w = y
        i += 1
    _squarefree_rec(cont, out)


# ---------------------------------------------------------------------------
# RatExpr
# ---------------------------------------------------------------------------

class RatExpr:
    """Quotient of two polynomials in a unique normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _normalized: bool = False):
        if den is None:
            den = _P_ONE
        if _normalized:
            self.num = num
            self.den = den
            return
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        if num.is_zero:
            self.num = _P_ZERO
            self.den = _P_ONE
            return
        if den.is_constant:
            c = Fraction(den.terms[()])
            self.num = num * (1 / c)
            self.den = _P_ONE
            return
        g = poly_gcd(num, den)
        if not g.is_constant:
            num = _exact_divide(num, g)
            den = _exact_divide(den, g)
        cd, dprim = den.content_and_primitive()
        if dprim.is_constant:
            self.num = num * (1 / (cd * Fraction(dprim.terms[()])))
            self.den = _P_ONE
        else:
            self.num = num * (1 / cd)
            self.den = dprim

    # construction -----------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RatExpr":
        return cls(p, _P_ONE, _normalized=True)

    @classmethod
    def const(cls, c) -> "RatExpr":
        return cls.from_poly(Poly.const(c))

    @classmethod
    def coord(cls, key) -> "RatExpr":
        return cls.from_poly(Poly.coord(key))

    @classmethod
    def zero(cls) -> "RatExpr":
        return _R_ZERO

    @classmethod
    def one(cls) -> "RatExpr":
        return _R_ONE

    # inspection -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def coords(self) -> frozenset:
        return self.num.coords() | self.den.coords()

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatExpr):
            return other
        if isinstance(other, Poly):
            return RatExpr.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatExpr.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            return RatExpr(self.num + other.num, self.den)
        return RatExpr(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den is other.den or self.den == other.den:
            return RatExpr(self.num - other.num, self.den)
        return RatExpr(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        return RatExpr(-self.num, self.den, _normalized=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_constant and other.den.is_constant:
            return RatExpr.from_poly(self.num * other.num)
        return RatExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by the zero expression")
        return RatExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            if self.is_zero:
                raise DivisionByZero("zero expression to a negative power")
            return RatExpr(self.den ** (-n), self.num ** (-n))
        return RatExpr(self.num ** n, self.den ** n)

    # calculus -----------------------------------------------------------------

    def diff(self, key) -> "RatExpr":
        if self.den.is_constant:
            return RatExpr(self.num.diff(key), self.den)
        dn = self.num.diff(key)
        dd = self.den.diff(key)
        if dd.is_zero:
            return RatExpr(dn, self.den)
        return RatExpr(dn * self.den - self.num * dd, self.den * self.den)

    # substitution and evaluation ----------------------------------------------

    def subs(self, bindings: Mapping) -> "RatExpr":
        """Simultaneous substitution of coordinates by rational expressions."""
        norm = {}
        for k, v in bindings.items():
            if isinstance(v, RatExpr):
                norm[k] = v
            elif isinstance(v, Poly):
                norm[k] = RatExpr.from_poly(v)
            else:
                norm[k] = RatExpr.const(v)
        num = _subs_poly(self.num, norm)
        if self.den.is_constant:
            out = num
        else:
            den = _subs_poly(self.den, norm)
            if den.is_zero:
                raise SubstitutionPole("denominator vanished under substitution")
            out = num / den
        if out.den.is_zero:  # defensive; RatExpr() raises before this
            raise SubstitutionPole("denominator vanished under substitution")
        return out

    def eval_at(self, point: Mapping) -> Fraction:
        dv = self.den.eval_at(point) if not self.den.is_constant else self.den.constant_value()
        if dv == 0:
            raise EvaluationPole("denominator evaluates to zero")
        nv = self.num.eval_at(point)
        return nv / dv

    # equality -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatExpr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_constant:
            return f"RatExpr({self.num!r})"
        return f"RatExpr({self.num!r} / {self.den!r})"


_R_ZERO = RatExpr.from_poly(_P_ZERO)
_R_ONE = RatExpr.from_poly(_P_ONE)


def _subs_poly(p: Poly, bindings: Mapping) -> RatExpr:
    """Substitute into a polynomial, combining over one common denominator."""
    bound = p.coords() & set(bindings)
    if not bound:
        return RatExpr.from_poly(p)
    maxe = {k: p.degree_in(k) for k in bound}
    den = _P_ONE
    den_pows = {}
    for k in sorted(bound):
        d = bindings[k].den
        if not d.is_constant:  # normalized RatExpr: constant den means den == 1
            den_pows[k] = d
            den = den * _poly_pow(d, maxe[k])
    acc: dict = {}
    for m, c in p.terms.items():
        piece = None  # Poly product for this term
        rest = []
        seen = set()
        for k, e in m:
            if k in bound:
                seen.add(k)
                factor = _poly_pow(bindings[k].num, e)
                dk = den_pows.get(k)
                if dk is not None and maxe[k] > e:
                    factor = factor * _poly_pow(dk, maxe[k] - e)
                piece = factor if piece is None else piece * factor
            else:
                rest.append((k, e))
        for k, dk in den_pows.items():
            if k not in seen:
                f = _poly_pow(dk, maxe[k])
                piece = f if piece is None else piece * f
        if piece is None:
            piece = _P_ONE
        contrib = kernels.poly_mul_term(piece.terms, tuple(rest), c)
        acc = kernels.poly_add(acc, contrib)
    return RatExpr(Poly._raw(acc), den)


# ---------------------------------------------------------------------------
# spec-facing convenience wrappers
# ---------------------------------------------------------------------------

def differentiate(e: RatExpr, key) -> RatExpr:
    return e.diff(key)


def substitute(e: RatExpr, bindings: Mapping) -> RatExpr:
    return e.subs(bindings)


def evaluate(e: RatExpr, point: Mapping) -> Fraction:
    return e.eval_at(point)
