"""Homogeneous matrix-valued symbols at a point in normal coordinates.

A symbol of order ``m`` is stored as ``N(xi) / |xi|^(2k)`` with ``N`` a
polynomial in ``xi_1..xi_n`` whose coefficients are :class:`FiberEndo`
(or plain :class:`ParamScalar` after a trace).  Every monomial of ``N`` has
degree ``m + 2k``.  All x-derivatives vanish at the working point, so the
composition of symbols reduces to plain products of their graded parts.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Iterable, Tuple

from .errors import NonInvertibleLeading, OddDenomPow
from .fiber_algebra import (
    Covector,
    FiberEndo,
    c,
    c_bar,
    c_tilde,
    e,
    eps,
    iota,
)
from .scalar_ring import I, ONE, SYMBOLIC, ZERO, GaussRat, ParamScalar, Params, coerce

__all__ = [
    "MonoPoly",
    "HomogSymbol",
    "GradedSymbol",
    "norm_sq",
    "xi_action",
    "symbol_of_operator",
    "laplacian_leading",
    "laplacian_from_composition",
    "invert_leading",
    "graded_product",
    "sigma_minus2",
    "sigma_minus4_sq",
    "printed_sigma_minus4",
    "sigma1_perturbation",
    "sigma_minus5_sq",
]

Exps = Tuple[int, ...]


def _nonzero(x) -> bool:
    return bool(x)


class MonoPoly:
    """Sparse polynomial in ``nvars`` commuting variables.

    Coefficients may be any ring elements supporting ``+`` and ``*``; for
    FiberEndo coefficients ``*`` is composition, so products keep the
    left/right order of their factors.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Dict[Exps, object] = None, nvars: int = 4):
        self.nvars = nvars
        self.terms = {m: x for m, x in (terms or {}).items() if _nonzero(x)}

    @classmethod
    def constant(cls, x, nvars: int = 4) -> "MonoPoly":
        return cls({(0,) * nvars: x}, nvars)

    @classmethod
    def linear(cls, coeffs: Iterable, nvars: int = 4) -> "MonoPoly":
        out = {}
        for k, x in enumerate(coeffs):
            m = [0] * nvars
            m[k] = 1
            out[tuple(m)] = x
        return cls(out, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    def __add__(self, other: "MonoPoly") -> "MonoPoly":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, x in other.terms.items():
            out[m] = x if m not in out else out[m] + x
        return MonoPoly(out, self.nvars)

    def __neg__(self):
        return MonoPoly({m: -x for m, x in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MonoPoly):
            out: Dict[Exps, object] = {}
            for m1, x1 in self.terms.items():
                for m2, x2 in other.terms.items():
                    m = tuple(p + q for p, q in zip(m1, m2))
                    t = x1 * x2
                    out[m] = t if m not in out else out[m] + t
            return MonoPoly(out, self.nvars)
        return MonoPoly({m: x * other for m, x in self.terms.items()}, self.nvars)

    def __rmul__(self, other):
        return MonoPoly({m: other * x for m, x in self.terms.items()}, self.nvars)

    def map(self, f: Callable) -> "MonoPoly":
        return MonoPoly({m: f(x) for m, x in self.terms.items()}, self.nvars)

    def pair(self, other: "MonoPoly", f: Callable) -> "MonoPoly":
        """Product with coefficient multiplication replaced by ``f(x, y)``."""
        out: Dict[Exps, object] = {}
        for m1, x1 in self.terms.items():
            for m2, x2 in other.terms.items():
                m = tuple(p + q for p, q in zip(m1, m2))
                t = f(x1, x2)
                out[m] = t if m not in out else out[m] + t
        return MonoPoly(out, self.nvars)

    def times_norm_sq(self, k: int) -> "MonoPoly":
        if k == 0:
            return self
        return self * norm_sq(self.nvars, k)

    def evaluate(self, point):
        """Sum of coefficient * monomial(point); point entries are scalars."""
        pt = [coerce(p) for p in point]
        acc = None
        for m, x in self.terms.items():
            s = ONE
            for p, k in zip(pt, m):
                if k:
                    s = s * p**k
            t = x * s
            acc = t if acc is None else acc + t
        return acc

    def derivative(self, var: int) -> "MonoPoly":
        out = {}
        for m, x in self.terms.items():
            k = m[var]
            if k:
                mm = list(m)
                mm[var] -= 1
                out[tuple(mm)] = x * k
        return MonoPoly(out, self.nvars)

    def split(self, var: int) -> Dict[int, "MonoPoly"]:
        """Group by the power of one variable; that variable is zeroed in the parts."""
        out: Dict[int, Dict[Exps, object]] = {}
        for m, x in self.terms.items():
            mm = list(m)
            p = mm[var]
            mm[var] = 0
            out.setdefault(p, {})[tuple(mm)] = x
        return {p: MonoPoly(t, self.nvars) for p, t in out.items()}

    def __eq__(self, other):
        if not isinstance(other, MonoPoly):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"MonoPoly({len(self.terms)} terms)"


@lru_cache(maxsize=None)
def _norm_sq_terms(nvars: int, k: int) -> Tuple[Tuple[Exps, int], ...]:
    """Monomials of (xi_1^2 + ... + xi_n^2)^k with multinomial weights."""
    out = []

    def rec(i, left, acc):
        if i == nvars - 1:
            acc = acc + [left]
            w = factorial(k)
            for a in acc:
                w //= factorial(a)
            out.append((tuple(2 * a for a in acc), w))
            return
        for a in range(left + 1):
            rec(i + 1, left - a, acc + [a])

    rec(0, k, [])
    return tuple(out)


def norm_sq(nvars: int = 4, k: int = 1, one=1) -> MonoPoly:
    """|xi|^(2k) with coefficient ``one`` (an int, scalar or identity matrix)."""
    return MonoPoly({m: one * w if w != 1 else one for m, w in _norm_sq_terms(nvars, k)}, nvars)


class HomogSymbol:
    """``numerator / |xi|^(2 denom_pow)``, homogeneous of degree ``order``."""

    __slots__ = ("order", "numerator", "denom_pow")

    def __init__(self, order: int, numerator: MonoPoly, denom_pow: int = 0, check: bool = True):
        if not isinstance(denom_pow, int) or denom_pow < 0:
            raise OddDenomPow(f"|xi| power must be a nonnegative even integer, got 2*{denom_pow}")
        self.order = order
        self.numerator = numerator
        self.denom_pow = denom_pow
        if check:
            want = order + 2 * denom_pow
            bad = [m for m in numerator.terms if sum(m) != want]
            if bad:
                raise ValueError(f"monomial {bad[0]} breaks homogeneity of order {order}")

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @classmethod
    def zero(cls, order: int, nvars: int = 4) -> "HomogSymbol":
        return cls(order, MonoPoly({}, nvars), 0, check=False)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def lifted(self, k: int) -> MonoPoly:
        """Numerator over |xi|^(2k), k >= denom_pow."""
        if k < self.denom_pow:
            raise ValueError("cannot lower the |xi| power")
        return self.numerator.times_norm_sq(k - self.denom_pow)

    def __add__(self, other: "HomogSymbol") -> "HomogSymbol":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.order != other.order:
            raise ValueError(f"cannot add orders {self.order} and {other.order}")
        k = max(self.denom_pow, other.denom_pow)
        return HomogSymbol(self.order, self.lifted(k) + other.lifted(k), k, check=False)

    def __neg__(self):
        return HomogSymbol(self.order, -self.numerator, self.denom_pow, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogSymbol):
            return HomogSymbol(
                self.order + other.order,
                self.numerator * other.numerator,
                self.denom_pow + other.denom_pow,
                check=False,
            )
        return HomogSymbol(self.order, self.numerator * other, self.denom_pow, check=False)

    def __rmul__(self, other):
        return HomogSymbol(self.order, other * self.numerator, self.denom_pow, check=False)

    def pair(self, other: "HomogSymbol", f: Callable) -> "HomogSymbol":
        return HomogSymbol(
            self.order + other.order,
            self.numerator.pair(other.numerator, f),
            self.denom_pow + other.denom_pow,
            check=False,
        )

    def trace(self) -> "HomogSymbol":
        return HomogSymbol(self.order, self.numerator.map(lambda m: m.trace()), self.denom_pow, check=False)

    def map(self, f: Callable) -> "HomogSymbol":
        return HomogSymbol(self.order, self.numerator.map(f), self.denom_pow, check=False)

    def at(self, point):
        """Value at a concrete (nonzero) covector given by its components."""
        pt = [coerce(p) for p in point]
        r2 = ZERO
        for p in pt:
            r2 = r2 + p * p
        val = self.numerator.evaluate(pt)
        if val is None:
            return None
        return val * (r2 ** self.denom_pow).inverse() if self.denom_pow else val

    def on_unit_sphere(self) -> MonoPoly:
        """Numerator with |xi|^(2k) set to 1; homogeneity is re-verified first."""
        want = self.order + 2 * self.denom_pow
        if any(sum(m) != want for m in self.numerator.terms):
            raise ValueError("symbol is not homogeneous")
        return self.numerator

    def __eq__(self, other):
        if not isinstance(other, HomogSymbol):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.order != other.order:
            return False
        k = max(self.denom_pow, other.denom_pow)
        return self.lifted(k) == other.lifted(k)

    __hash__ = None

    def __repr__(self):
        return f"HomogSymbol(order={self.order}, terms={len(self.numerator.terms)}, denom_pow={self.denom_pow})"


class GradedSymbol:
    """Finite sum of homogeneous parts, keyed by order."""

    def __init__(self, parts: Dict[int, HomogSymbol]):
        for k, s in parts.items():
            if s.order != k:
                raise ValueError(f"part keyed {k} has order {s.order}")
        self.parts = dict(parts)

    def __getitem__(self, order: int) -> HomogSymbol:
        return self.parts[order]

    def get(self, order: int, nvars: int = 4) -> HomogSymbol:
        return self.parts.get(order, HomogSymbol.zero(order, nvars))

    def orders(self):
        return sorted(self.parts, reverse=True)


def graded_product(a: GradedSymbol, b: GradedSymbol, target_order: int) -> HomogSymbol:
    """Order-``target_order`` part of the product, x-derivative terms dropped."""
    acc = None
    for p, sa in a.parts.items():
        q = target_order - p
        if q in b.parts:
            t = sa * b.parts[q]
            acc = t if acc is None else acc + t
    return acc if acc is not None else HomogSymbol.zero(target_order)


# --------------------------------------------------------------------------
# the operator family


def xi_action(builder: Callable[[Covector], FiberEndo], n: int = 4) -> MonoPoly:
    """The linear matrix polynomial xi -> builder(xi)."""
    return MonoPoly.linear([builder(e(k, n)) for k in range(1, n + 1)], n)


def _id_norm_sq(n: int = 4) -> MonoPoly:
    return norm_sq(n, 1, FiberEndo.identity(n))


@lru_cache(maxsize=None)
def _eps_iota_xi(n: int = 4) -> MonoPoly:
    return xi_action(eps, n) * xi_action(iota, n)


def symbol_of_operator(X: Covector, params: Params = SYMBOLIC, adjoint: bool = False) -> GradedSymbol:
    """Full symbol of a0 d + b0 delta + i c(X), or of its adjoint."""
    n = X.n
    if adjoint:
        top = xi_action(lambda v: c_bar(v, params), n)
    else:
        top = xi_action(lambda v: c_tilde(v, params), n)
    return GradedSymbol({
        1: HomogSymbol(1, top * I),
        0: HomogSymbol(0, MonoPoly.constant(c(X) * I, n)),
    })


@lru_cache(maxsize=None)
def laplacian_leading(params: Params = SYMBOLIC) -> HomogSymbol:
    """a0^2 |xi|^2 + (b0^2 - a0^2) eps(xi) iota(xi)."""
    a2, b2 = params.a0 * params.a0, params.b0 * params.b0
    num = _id_norm_sq() * a2 + _eps_iota_xi() * (b2 - a2)
    return HomogSymbol(2, num)


def laplacian_from_composition(params: Params = SYMBOLIC) -> HomogSymbol:
    """Leading part of sigma(D*) sigma(D), recomputed from the order-1 parts."""
    zero = Covector([0, 0, 0, 0])
    return graded_product(symbol_of_operator(zero, params, adjoint=True), symbol_of_operator(zero, params), 2)


def _leading_form(s: HomogSymbol):
    """(alpha, beta, m) with numerator == |xi|^(2m) (alpha |xi|^2 + beta E)."""
    n = s.nvars
    deg = s.order + 2 * s.denom_pow
    if deg < 2 or deg % 2:
        raise NonInvertibleLeading(f"numerator degree {deg} is not of the form |xi|^2m (alpha|xi|^2 + beta E)")
    m = (deg - 2) // 2
    M = s.numerator.evaluate([1] + [0] * (n - 1))
    if M is None:
        raise NonInvertibleLeading("zero symbol")
    alpha = M.entry(0, 0)            # the empty subset is killed by eps(e1) iota(e1)
    alpha_beta = M.entry(1, 1)       # e_1 is fixed by it
    beta = alpha_beta - alpha
    model = (_id_norm_sq(n) * alpha + _eps_iota_xi(n) * beta).times_norm_sq(m)
    if model != s.numerator:
        raise NonInvertibleLeading("symbol is not of the form alpha|xi|^2 + beta eps(xi)iota(xi)")
    return alpha, beta, m


def invert_leading(s: HomogSymbol) -> HomogSymbol:
    """Exact inverse of ``|xi|^(2m) (alpha|xi|^2 + beta E) / |xi|^(2k)``.

    Uses E^2 = |xi|^2 E: the inverse of alpha|xi|^2 + beta E is
    (x|xi|^2 + y E)/|xi|^4 with x = 1/alpha, y = -beta/(alpha(alpha+beta)).
    """
    alpha, beta, m = _leading_form(s)
    if not alpha or not (alpha + beta):
        raise NonInvertibleLeading("alpha or alpha + beta vanishes identically")
    x = alpha.inverse()
    y = -beta * (alpha * (alpha + beta)).inverse()
    n = s.nvars
    num = _id_norm_sq(n) * x + _eps_iota_xi(n) * y
    # total |xi| power: s ~ |xi|^(2m + 2 - 2k); inverse ~ |xi|^(2k - 2m - 2)
    shift = s.denom_pow - m - 2          # inverse = num * |xi|^(2 shift)
    if shift >= 0:
        return HomogSymbol(-s.order, num.times_norm_sq(shift), 0)
    return HomogSymbol(-s.order, num, -shift)


@lru_cache(maxsize=None)
def sigma_minus2(params: Params = SYMBOLIC) -> HomogSymbol:
    return invert_leading(laplacian_leading(params))


@lru_cache(maxsize=None)
def sigma_minus4_sq(params: Params = SYMBOLIC) -> HomogSymbol:
    """Square of sigma_minus2 (the leading symbol of the inverse square)."""
    q = sigma_minus2(params)
    return q * q


def printed_sigma_minus4(params: Params = SYMBOLIC) -> HomogSymbol:
    """(b0^4 |xi|^2 + (a0^4 - b0^4) E) / (a0^4 b0^4 |xi|^6), as printed."""
    a4, b4 = params.a0**4, params.b0**4
    scale = (a4 * b4).inverse()
    num = _id_norm_sq() * (b4 * scale) + _eps_iota_xi() * ((a4 - b4) * scale)
    return HomogSymbol(-4, num, 3)


def sigma1_perturbation(X: Covector, params: Params = SYMBOLIC) -> HomogSymbol:
    """-(c_bar(xi) c(X) + c(X) c_tilde(xi)), the X-dependent order-1 part of sigma(D* D)."""
    cx = c(X)
    n = X.n
    cb = xi_action(lambda v: c_bar(v, params), n)
    ct = xi_action(lambda v: c_tilde(v, params), n)
    return HomogSymbol(1, -(cb * cx + cx * ct))


@lru_cache(maxsize=None)
def _sigma_minus5_basis(k: int, params: Params) -> HomogSymbol:
    q = sigma_minus2(params)
    q2 = sigma_minus4_sq(params)
    p1 = sigma1_perturbation(e(k), params)
    return -(q * p1 * q2 + q2 * p1 * q)


def sigma_minus5_sq(X: Covector, params: Params = SYMBOLIC) -> HomogSymbol:
    """-(q p1 q^2 + q^2 p1 q) with q = sigma_minus2, p1 = sigma1_perturbation(X).

    The result is linear in X, so it is assembled from cached basis pieces.
    """
    acc = HomogSymbol.zero(-5)
    for k, x in enumerate(X.components, start=1):
        if x:
            acc = acc + _sigma_minus5_basis(k, params) * x
    return acc
