"""Exact coefficient arithmetic.

``GaussRat`` is a Gaussian rational ``re + im*i``.  ``ParamScalar`` is a
rational function in the two operator parameters ``a0`` and ``b0`` with
Gaussian-rational coefficients, always kept in canonical form: numerator and
denominator coprime and the denominator's leading coefficient (lex order on
the exponent pair) equal to one.  Two values are equal iff their canonical
forms coincide.

Polynomials are sparse dicts mapping ``(i, j)`` to the coefficient of
``a0**i * b0**j``.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Tuple, Union

from .errors import DegenerateParameters, DegenerateScalar, PoleAtSample

__all__ = [
    "GaussRat",
    "ParamScalar",
    "Params",
    "SYMBOLIC",
    "A0",
    "B0",
    "I",
    "coerce",
    "poly_gcd",
    "param_add",
    "param_mul",
    "param_div",
    "param_eval",
]


class GaussRat:
    """Gaussian rational number; immutable by convention."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str, "GaussRat"] = 0, im: Union[int, Fraction, str] = 0):
        if isinstance(re, GaussRat):
            self.re, self.im = re.re, re.im + Fraction(im)
            return
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _make(re: Fraction, im: Fraction) -> "GaussRat":
        g = object.__new__(GaussRat)
        g.re = re
        g.im = im
        return g

    @staticmethod
    def of(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat._make(Fraction(x), _ZERO_F)
        if isinstance(x, complex):
            raise TypeError("floating point values are not accepted")
        return GaussRat(x)

    def __add__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussRat._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat._make(self.re * o.re, _ZERO_F)
        return GaussRat._make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "GaussRat":
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE_G
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return GaussRat._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> "GaussRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._make(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussRat":
        return GaussRat._make(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return _coef_text(self)


_ZERO_F = Fraction(0)
_ONE_G = GaussRat._make(Fraction(1), _ZERO_F)
_ZERO_G = GaussRat._make(_ZERO_F, _ZERO_F)


def _as_gr(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat._make(Fraction(x), _ZERO_F)
    return NotImplemented


# --------------------------------------------------------------------------
# sparse bivariate polynomials

Mono = Tuple[int, int]
Poly = Dict[Mono, GaussRat]

_ONE_POLY: Poly = {(0, 0): _ONE_G}


def _padd(p: Poly, q: Poly, sign: int = 1) -> Poly:
    r = dict(p)
    for m, c in q.items():
        if sign < 0:
            c = -c
        s = r.get(m)
        if s is None:
            r[m] = c
        else:
            t = s + c
            if t:
                r[m] = t
            else:
                del r[m]
    return r


def _pmul(p: Poly, q: Poly) -> Poly:
    if len(p) == 1 and len(q) == 1:
        (m1, c1), = p.items()
        (m2, c2), = q.items()
        return {(m1[0] + m2[0], m1[1] + m2[1]): c1 * c2}
    r: Poly = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            m = (i1 + i2, j1 + j2)
            t = r.get(m)
            r[m] = c1 * c2 if t is None else t + c1 * c2
    return {m: c for m, c in r.items() if c}


def _pscale(p: Poly, c: GaussRat) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def _pshift(p: Poly, d: Mono) -> Poly:
    return {(m[0] + d[0], m[1] + d[1]): c for m, c in p.items()}


def _mono_content(p: Poly) -> Mono:
    return (min(m[0] for m in p), min(m[1] for m in p))


def _pdivexact(p: Poly, q: Poly) -> Poly:
    """Exact quotient p / q (lex division); raises if q does not divide p."""
    lm = max(q)
    inv = q[lm].inverse()
    r = dict(p)
    quo: Poly = {}
    while r:
        m = max(r)
        e = (m[0] - lm[0], m[1] - lm[1])
        if e[0] < 0 or e[1] < 0:
            raise ArithmeticError("inexact polynomial division")
        c = r[m] * inv
        quo[e] = c
        r = _padd(r, {(e[0] + k[0], e[1] + k[1]): c * v for k, v in q.items()}, -1)
    return quo


def _pmonic(p: Poly) -> Poly:
    lc = p[max(p)]
    if lc == _ONE_G:
        return p
    return _pscale(p, lc.inverse())


# univariate helpers over Q(i); coefficient lists indexed by degree


def _utrim(a: List[GaussRat]) -> List[GaussRat]:
    while a and not a[-1]:
        a.pop()
    return a


def _umul(a, b):
    if not a or not b:
        return []
    r = [_ZERO_G] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            r[i + j] = r[i + j] + x * y
    return _utrim(r)


def _usub(a, b):
    n = max(len(a), len(b))
    r = [(a[k] if k < len(a) else _ZERO_G) - (b[k] if k < len(b) else _ZERO_G) for k in range(n)]
    return _utrim(r)


def _udivmod(a, b):
    a = list(a)
    inv = b[-1].inverse()
    q = [_ZERO_G] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        s = len(a) - len(b)
        c = a[-1] * inv
        q[s] = c
        for k, y in enumerate(b):
            a[s + k] = a[s + k] - c * y
        a.pop()
        _utrim(a)
    return _utrim(q), a


def _umonic(a):
    if not a or a[-1] == _ONE_G:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _ugcd(a, b):
    # monic remainders keep the rational coefficients from growing
    a, b = _umonic(list(a)), _umonic(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, _umonic(r)
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _to_rec(p: Poly) -> List[List[GaussRat]]:
    deg = max(m[0] for m in p)
    rec: List[List[GaussRat]] = [[] for _ in range(deg + 1)]
    for (i, j), c in p.items():
        row = rec[i]
        if len(row) <= j:
            row.extend([_ZERO_G] * (j + 1 - len(row)))
        row[j] = c
    return rec


def _from_rec(rec) -> Poly:
    return {(i, j): c for i, row in enumerate(rec) for j, c in enumerate(row) if c}


def _rec_trim(rec):
    while rec and not rec[-1]:
        rec.pop()
    return rec


def _rec_content(rec):
    g: List[GaussRat] = []
    for row in rec:
        if row:
            g = _ugcd(g, row) if g else _ugcd(row, [])
            if len(g) == 1:
                break
    return g


def _rec_primpart(rec, content):
    return [(_udivmod(row, content)[0] if row else []) for row in rec]


def _rec_prem(a, b):
    """Pseudo-remainder of a by b in the a0 variable (unscaled)."""
    r = [list(row) for row in a]
    n = len(b) - 1
    lcb = b[-1]
    while len(r) - 1 >= n and r:
        s = len(r) - 1 - n
        lr = r[-1]
        r = [_umul(lcb, row) for row in r]
        for k, row in enumerate(b):
            r[s + k] = _usub(r[s + k], _umul(lr, row))
        _rec_trim(r)
    return r


def _rec_gcd(p: Poly, q: Poly) -> Poly:
    a, b = _to_rec(p), _to_rec(q)
    ca, cb = _rec_content(a), _rec_content(b)
    cg = _ugcd(ca, cb)
    a, b = _rec_primpart(a, ca), _rec_primpart(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if len(b) == 1:
            return _from_rec([cg])
        r = _rec_prem(a, b)
        if not r:
            g = [_umul(cg, row) for row in b]
            return _from_rec(g)
        a, b = b, _rec_primpart(r, _rec_content(r))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd of two bivariate polynomials over Q(i).

    Monomial content is split off first; the remaining primitive parts are
    handled by a primitive pseudo-remainder sequence in ``a0`` over
    ``Q(i)[b0]``.
    """
    if not p:
        return _pmonic(q) if q else {}
    if not q:
        return _pmonic(p)
    mp, mq = _mono_content(p), _mono_content(q)
    m = (min(mp[0], mq[0]), min(mp[1], mq[1]))
    p1 = _pshift(p, (-mp[0], -mp[1]))
    q1 = _pshift(q, (-mq[0], -mq[1]))
    if len(p1) == 1 or len(q1) == 1:
        core = _ONE_POLY
    else:
        da, db = _gcd_degree_bound(p1, q1, 1), _gcd_degree_bound(p1, q1, 0)
        if da == 0 and db == 0:
            core = _ONE_POLY
        elif da == 0:
            # gcd lives in b0 alone: it divides the b0-content of both
            core = _pmonic(_from_rec([_ugcd(_rec_content(_to_rec(p1)), _rec_content(_to_rec(q1)))]))
        elif db == 0:
            swap = lambda f: {(j, i): c for (i, j), c in f.items()}
            g = _ugcd(_rec_content(_to_rec(swap(p1))), _rec_content(_to_rec(swap(q1))))
            core = _pmonic(swap(_from_rec([g])))
        else:
            core = _pmonic(_rec_gcd(p1, q1))
    return _pshift(core, m)


def _specialize(p: Poly, var: int, c: int) -> List[GaussRat]:
    """Coefficient list in the other variable after setting ``var`` to ``c``."""
    other = 1 - var
    out: List[GaussRat] = [_ZERO_G] * (max(m[other] for m in p) + 1)
    for m, x in p.items():
        out[m[other]] = out[m[other]] + x * c ** m[var]
    return _utrim(out)


def _gcd_degree_bound(p: Poly, q: Poly, var: int) -> int:
    """Upper bound on the degree of gcd(p, q) in the variable other than ``var``.

    Substituting an integer for ``var`` where neither leading coefficient
    vanishes cannot lower the degree of a common factor, so the degree of
    the specialized gcd bounds it from above.
    """
    other = 1 - var
    dp, dq = max(m[other] for m in p), max(m[other] for m in q)
    lp = {m: x for m, x in p.items() if m[other] == dp}
    lq = {m: x for m, x in q.items() if m[other] == dq}
    for c in range(1, 64):
        if _specialize(lp, var, c) and _specialize(lq, var, c):
            return len(_ugcd(_specialize(p, var, c), _specialize(q, var, c))) - 1
    return min(dp, dq)


# --------------------------------------------------------------------------


def _canonical(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise DegenerateScalar("zero denominator")
    if not num:
        return {}, _ONE_POLY
    if len(den) == 1:
        (dm, dc), = den.items()
        if dm != (0, 0):
            nm = _mono_content(num)
            s = (min(nm[0], dm[0]), min(nm[1], dm[1]))
            if s != (0, 0):
                num = _pshift(num, (-s[0], -s[1]))
                dm = (dm[0] - s[0], dm[1] - s[1])
        if dc != _ONE_G:
            num = _pscale(num, dc.inverse())
        return num, {dm: _ONE_G}
    g = poly_gcd(num, den)
    if g != _ONE_POLY:
        num = _pdivexact(num, g)
        den = _pdivexact(den, g)
    lc = den[max(den)]
    if lc != _ONE_G:
        inv = lc.inverse()
        num = _pscale(num, inv)
        den = _pscale(den, inv)
    return num, den


class ParamScalar:
    """Rational function in ``a0, b0`` over the Gaussian rationals.

    >>> (A0**2 - B0**2) / (A0 - B0)
    ParamScalar('a0 + b0')
    >>> I * I
    ParamScalar('-1')
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None):
        if num is None:
            num = {}
        elif not isinstance(num, dict):
            c = GaussRat.of(num)
            num = {(0, 0): c} if c else {}
        else:
            num = {m: GaussRat.of(c) for m, c in num.items() if c}
        den = _ONE_POLY if den is None else {m: GaussRat.of(c) for m, c in den.items() if c}
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @staticmethod
    def _raw(num: Poly, den: Poly) -> "ParamScalar":
        s = object.__new__(ParamScalar)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @staticmethod
    def _build(num: Poly, den: Poly) -> "ParamScalar":
        n, d = _canonical(num, den)
        return ParamScalar._raw(n, d)

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, c) -> "ParamScalar":
        return cls(c)

    @classmethod
    def a0(cls) -> "ParamScalar":
        return cls._raw({(1, 0): _ONE_G}, _ONE_POLY)

    @classmethod
    def b0(cls) -> "ParamScalar":
        return cls._raw({(0, 1): _ONE_G}, _ONE_POLY)

    @classmethod
    def parse(cls, text: str) -> "ParamScalar":
        """Inverse of :meth:`to_text`; accepts ``a0``, ``b0``, ``i``, integers,
        ``+ - * / ^`` and parentheses."""
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _eval_ast(tree.body)

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == _ONE_POLY

    def is_const(self) -> bool:
        return self.den == _ONE_POLY and (not self.num or list(self.num) == [(0, 0)])

    def const_value(self) -> GaussRat:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.num.get((0, 0), _ZERO_G)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == _ONE_POLY and o.den == _ONE_POLY:
            return ParamScalar._raw(_padd(self.num, o.num), _ONE_POLY)
        if self.den == o.den:
            return ParamScalar._build(_padd(self.num, o.num), self.den)
        # n1/d1 + n2/d2 with g = gcd(d1, d2): only g can share factors with the new numerator
        g = poly_gcd(self.den, o.den)
        if g == _ONE_POLY:
            num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
            return ParamScalar._raw(*_normalize_den(num, _pmul(self.den, o.den)))
        d1, d2 = _pdivexact(self.den, g), _pdivexact(o.den, g)
        num = _padd(_pmul(self.num, d2), _pmul(o.num, d1))
        if not num:
            return ZERO
        num, g2 = _cancel(num, g)
        return ParamScalar._raw(*_normalize_den(num, _pmul(_pmul(d1, d2), g2)))

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw({m: -c for m, c in self.num.items()}, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        if self.den == _ONE_POLY and o.den == _ONE_POLY:
            return ParamScalar._raw(_pmul(self.num, o.num), _ONE_POLY)
        if o.is_const():
            c = o.num[(0, 0)]
            return ParamScalar._raw(_pscale(self.num, c), self.den)
        if self.is_const():
            c = self.num[(0, 0)]
            return ParamScalar._raw(_pscale(o.num, c), o.den)
        n1, d2 = _cancel(self.num, o.den)
        n2, d1 = _cancel(o.num, self.den)
        return ParamScalar._build(_pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if not self.num:
            raise DegenerateScalar("division by the zero rational function")
        return ParamScalar._build(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "ParamScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ParamScalar":
        """Complex conjugation of the coefficients (a0, b0 treated as real)."""
        return ParamScalar._raw(
            {m: c.conjugate() for m, c in self.num.items()},
            {m: c.conjugate() for m, c in self.den.items()},
        )

    # evaluation -----------------------------------------------------------

    def eval(self, a, b) -> GaussRat:
        """Exact value at ``a0 = a, b0 = b`` (see :func:`param_eval`)."""
        a, b = GaussRat.of(a), GaussRat.of(b)
        if not (a * b):
            raise DegenerateParameters("a0 * b0 must be nonzero")
        d = _peval(self.den, a, b)
        if not d:
            raise PoleAtSample(f"denominator of {self} vanishes at a0={a}, b0={b}")
        return _peval(self.num, a, b) / d

    def subs(self, a0=None, b0=None) -> "ParamScalar":
        """Substitute ParamScalar-valued expressions for ``a0`` and/or ``b0``."""
        A = A0 if a0 is None else coerce(a0)
        B = B0 if b0 is None else coerce(b0)

        def ev(p: Poly) -> "ParamScalar":
            acc = ZERO
            for (i, j), c in p.items():
                acc = acc + ParamScalar(c) * A**i * B**j
            return acc

        return ev(self.num) / ev(self.den)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        o = coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # text -----------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical ASCII form ``P(a0,b0)`` or ``(P) / (Q)``."""
        n = _poly_text(self.num)
        if self.den == _ONE_POLY:
            return n
        return f"({n}) / ({_poly_text(self.den)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ParamScalar('{self.to_text()}')"


def _normalize_den(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Scale a coprime pair so the denominator is monic."""
    if not num:
        return {}, _ONE_POLY
    lc = den[max(den)]
    if lc == _ONE_G:
        return num, den
    inv = lc.inverse()
    return _pscale(num, inv), _pscale(den, inv)


def _cancel(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if den == _ONE_POLY:
        return num, den
    g = poly_gcd(num, den)
    if g == _ONE_POLY:
        return num, den
    return _pdivexact(num, g), _pdivexact(den, g)


def _peval(p: Poly, a: GaussRat, b: GaussRat) -> GaussRat:
    acc = _ZERO_G
    for (i, j), c in p.items():
        acc = acc + c * a**i * b**j
    return acc


ZERO = ParamScalar._raw({}, _ONE_POLY)
ONE = ParamScalar._raw(dict(_ONE_POLY), _ONE_POLY)
A0 = ParamScalar.a0()
B0 = ParamScalar.b0()
I = ParamScalar._raw({(0, 0): GaussRat._make(_ZERO_F, Fraction(1))}, _ONE_POLY)


def coerce_or_none(x):
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, (int, Fraction, GaussRat)):
        c = GaussRat.of(x)
        return ParamScalar._raw({(0, 0): c} if c else {}, _ONE_POLY)
    return None


def coerce(x) -> ParamScalar:
    """Convert ints, Fractions, GaussRats and canonical text to ParamScalar."""
    if isinstance(x, str):
        return ParamScalar.parse(x)
    o = coerce_or_none(x)
    if o is None:
        raise TypeError(f"cannot convert {type(x).__name__} to ParamScalar")
    return o


def param_add(x, y) -> ParamScalar:
    return coerce(x) + coerce(y)


def param_mul(x, y) -> ParamScalar:
    return coerce(x) * coerce(y)


def param_div(x, y) -> ParamScalar:
    return coerce(x) / coerce(y)


def param_eval(x, a, b) -> GaussRat:
    return coerce(x).eval(a, b)


# --------------------------------------------------------------------------
# text form


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coef_text(c: GaussRat) -> str:
    if not c.im:
        return _frac_text(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_text(c.im)}*i"
    sign = "+" if c.im > 0 else "-"
    im = abs(c.im)
    im_text = "i" if im == 1 else f"{_frac_text(im)}*i"
    return f"({_frac_text(c.re)}{sign}{im_text})"


def _mono_text(m: Mono) -> str:
    parts = []
    for name, e in (("a0", m[0]), ("b0", m[1])):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_text(m: Mono, c: GaussRat) -> Tuple[bool, str]:
    """(negative, text of |term|)."""
    mono = _mono_text(m)
    if c.im and c.re:
        body = _coef_text(c)
        return False, f"{body}*{mono}" if mono else body
    neg = (c.re < 0) if not c.im else (c.im < 0)
    a = GaussRat._make(abs(c.re), abs(c.im))
    if not mono:
        return neg, _coef_text(a)
    if a == _ONE_G:
        return neg, mono
    return neg, f"{_coef_text(a)}*{mono}"


def _poly_text(p: Poly) -> str:
    if not p:
        return "0"
    keys = sorted(p, key=lambda m: (-(m[0] + m[1]), -m[0]))
    out = []
    for k, m in enumerate(keys):
        neg, t = _term_text(m, p[m])
        if k == 0:
            out.append(f"-{t}" if neg else t)
        else:
            out.append(f" - {t}" if neg else f" + {t}")
    return "".join(out)


def _eval_ast(node) -> ParamScalar:
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponent must be an integer literal")
            return left ** node.right.value
        right = _eval_ast(node.right)
        ops = {ast.Add: ParamScalar.__add__, ast.Sub: ParamScalar.__sub__,
               ast.Mult: ParamScalar.__mul__, ast.Div: ParamScalar.__truediv__}
        fn = ops.get(type(node.op))
        if fn is None:
            raise ValueError(f"unsupported operator {type(node.op).__name__}")
        return fn(left, right)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ParamScalar(node.value)
    if isinstance(node, ast.Name):
        names = {"a0": A0, "b0": B0, "i": I}
        if node.id in names:
            return names[node.id]
    raise ValueError(f"cannot parse {ast.dump(node)}")


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Params:
    """Values of the two operator parameters; symbolic by default."""

    a0: ParamScalar = A0
    b0: ParamScalar = B0

    @classmethod
    def numeric(cls, a, b) -> "Params":
        a, b = GaussRat.of(a), GaussRat.of(b)
        if not (a * b):
            raise DegenerateParameters("a0 * b0 must be nonzero")
        return cls(ParamScalar(a), ParamScalar(b))

    @property
    def is_symbolic(self) -> bool:
        return self.a0 == A0 and self.b0 == B0

    def specialize(self, x: ParamScalar) -> ParamScalar:
        """Map a symbolic result to these parameter values."""
        if self.is_symbolic:
            return x
        return ParamScalar(x.eval(self.a0.const_value(), self.b0.const_value()))

    def label(self) -> str:
        return "symbolic" if self.is_symbolic else f"a0={self.a0}, b0={self.b0}"


SYMBOLIC = Params()


def lcm_den(values: Iterable[Fraction]) -> int:
    from math import lcm

    return reduce(lcm, (Fraction(v).denominator for v in values), 1)
