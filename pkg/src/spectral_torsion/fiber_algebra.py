"""Exterior algebra of R^n with exact matrices for the Clifford-type actions.

The fiber is Lambda*(R^n), dimension 2**n, with basis ``e_I`` for subsets
``I`` of ``{1..n}`` ordered by ``(|I|, lex)``.  The frame is orthonormal, so
the metric is the identity and interior multiplication is the transpose of
exterior multiplication.

A :class:`FiberEndo` is stored as a Laurent polynomial in ``(a0, b0)`` whose
coefficients are Gaussian-rational 16x16 matrices (:class:`RatMat`, integer
numerators over one positive denominator), divided by an optional monic
polynomial denominator.  Entries are therefore exact elements of the
``ParamScalar`` field, while products cost a handful of integer matrix
multiplications.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import SingularSymbol
from .scalar_ring import (
    ONE,
    SYMBOLIC,
    ZERO,
    GaussRat,
    ParamScalar,
    Params,
    Poly,
    _ONE_POLY,
    _mono_content,
    _pdivexact,
    _pmul,
    _pshift,
    coerce,
    poly_gcd,
)

__all__ = [
    "RatMat",
    "FiberEndo",
    "Covector",
    "e",
    "basis_subsets",
    "eps",
    "iota",
    "c",
    "c_hat",
    "c_tilde",
    "c_bar",
    "trace",
    "identity",
]


def _obj(a) -> np.ndarray:
    return np.array(a, dtype=object)


class RatMat:
    """Square Gaussian-rational matrix ``(re + i*im) / den`` with int entries."""

    __slots__ = ("re", "im", "den")

    def __init__(self, re: np.ndarray, im=None, den: int = 1, reduce: bool = True):
        self.re = re
        self.im = im
        self.den = den
        if reduce:
            self._reduce()

    def _reduce(self) -> None:
        flat = self.re.ravel().tolist()
        if self.im is not None:
            gi = math.gcd(*self.im.ravel().tolist())
            if gi == 0:
                self.im = None
            else:
                flat.append(gi)
        g0 = math.gcd(*flat)
        if g0 == 0:
            self.den = 1
            return
        if self.den < 0:
            self.den = -self.den
            self.re = -self.re
            if self.im is not None:
                self.im = -self.im
        g = math.gcd(g0, self.den)
        if g > 1:
            self.re = self.re // g
            if self.im is not None:
                self.im = self.im // g
            self.den //= g

    @property
    def dim(self) -> int:
        return self.re.shape[0]

    @classmethod
    def zeros(cls, dim: int) -> "RatMat":
        return cls(_obj(np.zeros((dim, dim), dtype=np.int64)), None, 1, reduce=False)

    @classmethod
    def eye(cls, dim: int) -> "RatMat":
        return cls(_obj(np.eye(dim, dtype=np.int64)), None, 1, reduce=False)

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> "RatMat":
        g = [[GaussRat.of(x) for x in row] for row in rows]
        den = 1
        for row in g:
            for x in row:
                den = math.lcm(den, x.re.denominator, x.im.denominator)
        re = _obj([[int(x.re * den) for x in row] for row in g])
        im = _obj([[int(x.im * den) for x in row] for row in g])
        return cls(re, im, den)

    def is_zero(self) -> bool:
        return self.im is None and not any(self.re.ravel().tolist())

    def entry(self, r: int, c: int) -> GaussRat:
        im = 0 if self.im is None else self.im[r, c]
        return GaussRat(Fraction(self.re[r, c], self.den), Fraction(im, self.den))

    def __neg__(self):
        return RatMat(-self.re, None if self.im is None else -self.im, self.den, reduce=False)

    def __add__(self, other: "RatMat") -> "RatMat":
        L = math.lcm(self.den, other.den)
        f1, f2 = L // self.den, L // other.den
        re = self.re * f1 + other.re * f2 if (f1 != 1 or f2 != 1) else self.re + other.re
        if self.im is None and other.im is None:
            im = None
        else:
            im = (self.im * f1 if self.im is not None else 0) + (other.im * f2 if other.im is not None else 0)
        return RatMat(re, im, L)

    def __sub__(self, other: "RatMat") -> "RatMat":
        return self + (-other)

    def __matmul__(self, other: "RatMat") -> "RatMat":
        re = self.re @ other.re
        im = None
        if self.im is not None and other.im is not None:
            re = re - self.im @ other.im
        if self.im is not None:
            im = self.im @ other.re
        if other.im is not None:
            t = self.re @ other.im
            im = t if im is None else im + t
        return RatMat(re, im, self.den * other.den)

    def scale(self, c) -> "RatMat":
        c = GaussRat.of(c)
        D = math.lcm(c.re.denominator, c.im.denominator)
        cr, ci = int(c.re * D), int(c.im * D)
        re = self.re * cr if cr else None
        im = self.re * ci if ci else None
        if self.im is not None:
            if ci:
                re = -self.im * ci if re is None else re - self.im * ci
            if cr:
                t = self.im * cr
                im = t if im is None else im + t
        if re is None:
            re = self.re * 0
        return RatMat(re, im, self.den * D)

    def trace(self) -> GaussRat:
        tr = int(sum(self.re.diagonal().tolist()))
        ti = 0 if self.im is None else int(sum(self.im.diagonal().tolist()))
        return GaussRat(Fraction(tr, self.den), Fraction(ti, self.den))

    def trace_product(self, other: "RatMat") -> GaussRat:
        """trace(self @ other) without forming the product."""
        bt = other.re.T
        tr = int((self.re * bt).sum())
        ti = 0
        if self.im is not None and other.im is not None:
            tr -= int((self.im * other.im.T).sum())
        if self.im is not None:
            ti += int((self.im * bt).sum())
        if other.im is not None:
            ti += int((self.re * other.im.T).sum())
        d = self.den * other.den
        return GaussRat(Fraction(tr, d), Fraction(ti, d))

    def __eq__(self, other):
        if not isinstance(other, RatMat):
            return NotImplemented
        return (self - other).is_zero()


# --------------------------------------------------------------------------
# basis and elementary matrices


@lru_cache(maxsize=None)
def basis_subsets(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Subsets of {1..n} ordered by (size, lex); index = basis position."""
    out = []
    for k in range(n + 1):
        out.extend(itertools.combinations(range(1, n + 1), k))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(n: int) -> Dict[Tuple[int, ...], int]:
    return {s: k for k, s in enumerate(basis_subsets(n))}


@lru_cache(maxsize=None)
def _eps_int(n: int, k: int) -> np.ndarray:
    """Integer matrix of exterior multiplication by e_k (1-based)."""
    subs = basis_subsets(n)
    idx = _index(n)
    m = np.zeros((2**n, 2**n), dtype=np.int64)
    for col, s in enumerate(subs):
        if k in s:
            continue
        sign = -1 if sum(1 for j in s if j < k) % 2 else 1
        row = idx[tuple(sorted(s + (k,)))]
        m[row, col] = sign
    return m


def _laurent_poly_to_scalar(coeffs: Dict[Tuple[int, int], GaussRat], den: Poly) -> ParamScalar:
    coeffs = {m: c for m, c in coeffs.items() if c}
    if not coeffs:
        return ZERO
    e0, e1 = _mono_content(coeffs)
    s0, s1 = min(e0, 0), min(e1, 0)
    num = _pshift(coeffs, (-s0, -s1))
    d = den if (s0, s1) == (0, 0) else _pmul(den, {(-s0, -s1): GaussRat.of(1)})
    return ParamScalar._build(num, d)


class FiberEndo:
    """Endomorphism of Lambda*(R^n) with ParamScalar entries.

    Internally ``sum_m a0**m[0] b0**m[1] * num[m] / den`` where ``m`` may have
    negative components and ``den`` is a monic polynomial without monomial
    factors (usually 1).  ``*`` and ``@`` both compose; ``*`` with a scalar
    scales.
    """

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: Dict[Tuple[int, int], RatMat], den: Poly = _ONE_POLY):
        self.n = n
        self.num = {m: M for m, M in num.items() if not M.is_zero()}
        self.den = den
        if den != _ONE_POLY:
            self._reduce_den()

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int = 4) -> "FiberEndo":
        return cls(n, {})

    @classmethod
    def identity(cls, n: int = 4) -> "FiberEndo":
        return cls(n, {(0, 0): RatMat.eye(2**n)})

    @classmethod
    def from_ratmat(cls, M: RatMat, n: int) -> "FiberEndo":
        return cls(n, {(0, 0): M})

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> "FiberEndo":
        dim = len(rows)
        n = dim.bit_length() - 1
        acc = cls.zero(n)
        for r, row in enumerate(rows):
            for col, x in enumerate(row):
                x = coerce(x)
                if x:
                    u = np.zeros((dim, dim), dtype=np.int64)
                    u[r, col] = 1
                    acc = acc + FiberEndo(n, {(0, 0): RatMat(_obj(u), None, 1, reduce=False)}) * x
        return acc

    @property
    def dim(self) -> int:
        return 2**self.n

    # internal -------------------------------------------------------------

    def _reduce_den(self) -> None:
        g = self.den
        for r in range(self.dim):
            for col in range(self.dim):
                p = self._entry_poly(r, col)
                if p:
                    g = poly_gcd(g, p)
                    if g == _ONE_POLY:
                        return
        if not self.num:
            self.den = _ONE_POLY
            return
        ents = [[self._entry_poly(r, col) for col in range(self.dim)] for r in range(self.dim)]
        den = _pdivexact(self.den, g)
        num: Dict[Tuple[int, int], RatMat] = {}
        for r in range(self.dim):
            for col in range(self.dim):
                p = ents[r][col]
                if not p:
                    continue
                for m, cval in _pdivexact(p, g).items():
                    M = num.get(m)
                    u = _unit(self.dim, r, col).scale(cval)
                    num[m] = u if M is None else M + u
        lc = den[max(den)]
        self.num = {m: M.scale(lc.inverse()) for m, M in num.items() if not M.is_zero()}
        self.den = {m: v * lc.inverse() for m, v in den.items()}

    def _entry_poly(self, r: int, col: int) -> Poly:
        """Entry numerator as a polynomial (Laurent keys shifted to >= 0)."""
        coeffs = {m: M.entry(r, col) for m, M in self.num.items()}
        coeffs = {m: x for m, x in coeffs.items() if x}
        if not coeffs:
            return {}
        e0 = min(0, min(m[0] for m in self.num))
        e1 = min(0, min(m[1] for m in self.num))
        return _pshift(coeffs, (-e0, -e1))

    def _mul_poly(self, p: Poly) -> Dict[Tuple[int, int], RatMat]:
        out: Dict[Tuple[int, int], RatMat] = {}
        for pm, pc in p.items():
            for m, M in self.num.items():
                k = (m[0] + pm[0], m[1] + pm[1])
                t = M.scale(pc)
                out[k] = t if k not in out else out[k] + t
        return out

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FiberEndo):
            if isinstance(other, (int, Fraction, GaussRat, ParamScalar)):
                return self + FiberEndo.identity(self.n) * other
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            num = dict(self.num)
            for m, M in other.num.items():
                num[m] = M if m not in num else num[m] + M
            return FiberEndo(self.n, num, self.den)
        a = self._mul_poly(other.den)
        b = other._mul_poly(self.den)
        for m, M in b.items():
            a[m] = M if m not in a else a[m] + M
        return FiberEndo(self.n, a, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return FiberEndo(self.n, {m: -M for m, M in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __matmul__(self, other: "FiberEndo") -> "FiberEndo":
        if not isinstance(other, FiberEndo):
            return NotImplemented
        num: Dict[Tuple[int, int], RatMat] = {}
        for m1, M1 in self.num.items():
            for m2, M2 in other.num.items():
                k = (m1[0] + m2[0], m1[1] + m2[1])
                t = M1 @ M2
                num[k] = t if k not in num else num[k] + t
        den = self.den if other.den == _ONE_POLY else _pmul(self.den, other.den)
        return FiberEndo(self.n, num, den)

    def __mul__(self, other):
        if isinstance(other, FiberEndo):
            return self @ other
        if isinstance(other, (int, Fraction, GaussRat)):
            c = GaussRat.of(other)
            if not c:
                return FiberEndo.zero(self.n)
            return FiberEndo(self.n, {m: M.scale(c) for m, M in self.num.items()}, self.den)
        if isinstance(other, ParamScalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat, ParamScalar)):
            return self * other
        return NotImplemented

    def scale(self, s: ParamScalar) -> "FiberEndo":
        if not s:
            return FiberEndo.zero(self.n)
        num = self._mul_poly(s.num)
        sd = s.den
        if sd != _ONE_POLY:
            m0 = _mono_content(sd)
            if m0 != (0, 0):
                num = {(k[0] - m0[0], k[1] - m0[1]): M for k, M in num.items()}
                sd = _pshift(sd, (-m0[0], -m0[1]))
        den = self.den if sd == _ONE_POLY else _pmul(self.den, sd)
        return FiberEndo(self.n, num, den)

    def __pow__(self, k: int) -> "FiberEndo":
        out = FiberEndo.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    # queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRat, ParamScalar)):
            other = FiberEndo.identity(self.n) * other
        if not isinstance(other, FiberEndo):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def trace(self) -> ParamScalar:
        coeffs = {m: M.trace() for m, M in self.num.items()}
        return _laurent_poly_to_scalar(coeffs, self.den)

    def trace_product(self, other: "FiberEndo") -> ParamScalar:
        """trace(self @ other), cheaper than forming the product."""
        coeffs: Dict[Tuple[int, int], GaussRat] = {}
        for m1, M1 in self.num.items():
            for m2, M2 in other.num.items():
                k = (m1[0] + m2[0], m1[1] + m2[1])
                t = M1.trace_product(M2)
                coeffs[k] = t if k not in coeffs else coeffs[k] + t
        den = self.den if other.den == _ONE_POLY else _pmul(self.den, other.den)
        return _laurent_poly_to_scalar(coeffs, den)

    def entry(self, r: int, col: int) -> ParamScalar:
        return _laurent_poly_to_scalar({m: M.entry(r, col) for m, M in self.num.items()}, self.den)

    def to_entries(self) -> List[List[ParamScalar]]:
        return [[self.entry(r, col) for col in range(self.dim)] for r in range(self.dim)]

    def scalar_value(self):
        """The scalar s if self == s * Id, else None."""
        s = self.entry(0, 0)
        return s if self == FiberEndo.identity(self.n) * s else None

    def column(self, subset: Sequence[int]) -> Dict[Tuple[int, ...], ParamScalar]:
        """Image of the basis element e_subset, as {subset: coefficient}."""
        col = _index(self.n)[tuple(sorted(subset))]
        out = {}
        for r, s in enumerate(basis_subsets(self.n)):
            v = self.entry(r, col)
            if v:
                out[s] = v
        return out

    def specialize(self, a, b) -> "FiberEndo":
        """Substitute numeric values for a0 and b0."""
        return FiberEndo.from_entries([[x.eval(a, b) for x in row] for row in self.to_entries()])

    def transpose(self) -> "FiberEndo":
        return FiberEndo(
            self.n,
            {m: RatMat(M.re.T.copy(), None if M.im is None else M.im.T.copy(), M.den, reduce=False)
             for m, M in self.num.items()},
            self.den,
        )

    def inverse(self) -> "FiberEndo":
        """Exact Gauss-Jordan inverse over the ParamScalar field."""
        a = self.to_entries()
        dim = self.dim
        inv = [[ONE if r == col else ZERO for col in range(dim)] for r in range(dim)]
        for col in range(dim):
            piv = next((r for r in range(col, dim) if a[r][col]), None)
            if piv is None:
                raise SingularSymbol("matrix is singular over the coefficient field")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col].inverse()
            a[col] = [x * p for x in a[col]]
            inv[col] = [x * p for x in inv[col]]
            for r in range(dim):
                f = a[r][col]
                if r != col and f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return FiberEndo.from_entries(inv)

    def __repr__(self):
        return f"FiberEndo(n={self.n}, terms={len(self.num)})"


def _unit(dim: int, r: int, col: int) -> RatMat:
    u = np.zeros((dim, dim), dtype=np.int64)
    u[r, col] = 1
    return RatMat(_obj(u), None, 1, reduce=False)


def identity(n: int = 4) -> FiberEndo:
    return FiberEndo.identity(n)


def trace(m: FiberEndo) -> ParamScalar:
    return m.trace()


# --------------------------------------------------------------------------
# covectors and the Clifford-type actions


@dataclass(frozen=True)
class Covector:
    """Components in an orthonormal frame."""

    components: Tuple[ParamScalar, ...]

    def __init__(self, components):
        object.__setattr__(self, "components", tuple(coerce(x) for x in components))

    @property
    def n(self) -> int:
        return len(self.components)

    def dot(self, other: "Covector") -> ParamScalar:
        acc = ZERO
        for x, y in zip(self.components, other.components):
            acc = acc + x * y
        return acc

    def __add__(self, other: "Covector") -> "Covector":
        return Covector([x + y for x, y in zip(self.components, other.components)])

    def __mul__(self, s) -> "Covector":
        s = coerce(s)
        return Covector([x * s for x in self.components])

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> ParamScalar:
        return self.components[k]

    def is_rational(self) -> bool:
        return all(x.is_const() and not x.const_value().im for x in self.components)

    def __str__(self):
        return "(" + ", ".join(x.to_text() for x in self.components) + ")"


def e(k: int, n: int = 4) -> Covector:
    """Unit covector e_k, 1-based."""
    return Covector([1 if j == k else 0 for j in range(1, n + 1)])


def _linear(v: Covector, transpose: bool) -> FiberEndo:
    n = v.n
    if v.is_rational():
        vals = [x.const_value().re for x in v.components]
        den = 1
        for x in vals:
            den = math.lcm(den, x.denominator)
        acc = np.zeros((2**n, 2**n), dtype=np.int64).astype(object)
        for k, x in enumerate(vals, start=1):
            if x:
                m = _eps_int(n, k)
                acc = acc + _obj(m.T if transpose else m) * int(x * den)
        return FiberEndo(n, {(0, 0): RatMat(acc, None, den)})
    out = FiberEndo.zero(n)
    for k, x in enumerate(v.components, start=1):
        if x:
            m = _eps_int(n, k)
            out = out + FiberEndo(n, {(0, 0): RatMat(_obj(m.T if transpose else m), None, 1, reduce=False)}) * x
    return out


def eps(v: Covector) -> FiberEndo:
    """Exterior multiplication by v."""
    return _linear(v, transpose=False)


def iota(v: Covector) -> FiberEndo:
    """Interior multiplication by the metric dual of v."""
    return _linear(v, transpose=True)


def c(v: Covector) -> FiberEndo:
    return eps(v) - iota(v)


def c_hat(v: Covector) -> FiberEndo:
    return eps(v) + iota(v)


def c_tilde(v: Covector, params: Params = SYMBOLIC) -> FiberEndo:
    return eps(v) * params.a0 - iota(v) * params.b0


def c_bar(v: Covector, params: Params = SYMBOLIC) -> FiberEndo:
    return eps(v) * params.b0 - iota(v) * params.a0
