"""Brute-force ground truth for the closed-form trace identities.

Every registered identity pairs a brute-force evaluation (raw 16x16 matrix
products and a trace, nothing else) with the printed closed form.  Cases
are drawn from seeded random rational covectors; each (tag, trial) pair has
its own RNG stream, so filtering tags never changes a case.

When a closed form disagrees with brute force, :func:`fit_invariant_form`
recovers the true identity: it enumerates every metric contraction of the
slot vectors (plus volume-form terms), solves for the coefficients exactly
over the (a0, b0) function field, and confirms the fit on held-out trials.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import DegenerateParameters, UnknownFunctional, UnknownTag
from .fiber_algebra import Covector, FiberEndo, c, c_bar, c_hat, c_tilde, e, eps, identity, iota
from .results import SphereValue
from .sampling import DEFAULT_SEED, random_covector, random_tangential
from .scalar_ring import ONE, SYMBOLIC, ZERO, GaussRat, ParamScalar, Params, coerce

__all__ = [
    "IdentitySpec",
    "OracleCase",
    "TagSummary",
    "REGISTRY",
    "tags",
    "resolve_tags",
    "evaluate_case",
    "check_identity",
    "summarize",
    "fit_invariant_form",
    "invariant_monomials",
    "FitResult",
    "full_pipeline_numeric",
    "FUNCTIONALS",
]


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class IdentitySpec:
    tag: str
    kind: str                                  # "matrix" (scalar multiple of Id) or "trace"
    slots: Tuple[str, ...]                     # vectors entering, with multiplicity
    sample: Callable[[random.Random], Dict[str, Covector]]
    brute: Callable[[Dict[str, Covector], Params], object]
    closed: Callable[[Dict[str, Covector], Params], ParamScalar]
    printed: str
    unit: Tuple[str, ...] = ()                 # names with g(x, x) = 1
    orth: Tuple[Tuple[str, str], ...] = ()     # pairs with g = 0


REGISTRY: Dict[str, IdentitySpec] = {}


def _register(spec: IdentitySpec) -> None:
    REGISTRY[spec.tag] = spec


def tags() -> List[str]:
    return list(REGISTRY)


def resolve_tags(only: Optional[Sequence[str]] = None) -> List[str]:
    """Exact tag names, or every tag starting with ``name-`` / equal to it."""
    if not only:
        return tags()
    out = []
    for name in only:
        hit = [t for t in REGISTRY if t == name or t.startswith(name + "-")]
        if not hit:
            raise UnknownTag(name)
        out.extend(h for h in hit if h not in out)
    return out


def _sampler(*names: str, tangential: str = None):
    def draw(rng: random.Random) -> Dict[str, Covector]:
        inst = {n: random_covector(rng) for n in names}
        if tangential:
            inst[tangential] = random_tangential(rng)
            inst["n"] = e(4)
        return inst
    return draw


_T = None


def _trace_id() -> ParamScalar:
    global _T
    if _T is None:
        _T = identity().trace()
    return _T


def _g(a: Covector, b: Covector) -> ParamScalar:
    return a.dot(b)


def _br(d: Dict[str, Covector], xi: Covector) -> ParamScalar:
    """xi(u) g(v,w) - xi(v) g(u,w) + xi(w) g(u,v)."""
    u, v, w = d["u"], d["v"], d["w"]
    return _g(xi, u) * _g(v, w) - _g(xi, v) * _g(u, w) + _g(xi, w) * _g(u, v)


def _bx(d) -> ParamScalar:
    return _br(d, d["X"])


def _bn(d) -> ParamScalar:
    return _br(d, e(4))


def _ct(v, p):
    return c_tilde(v, p)


def _E(xi: Covector) -> FiberEndo:
    return eps(xi) @ iota(xi)


def _prod(*ms: FiberEndo) -> FiberEndo:
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def _tr(*ms: FiberEndo) -> ParamScalar:
    if len(ms) == 1:
        return ms[0].trace()
    return _prod(*ms[:-1]).trace_product(ms[-1])


def _anti(f, a, b):
    return f(a) @ f(b) + f(b) @ f(a)


def _build_registry() -> None:
    P2 = _sampler("u", "v")
    _register(IdentitySpec(
        "Eq2.2-hat", "matrix", ("u", "v"), P2,
        lambda d, p: _anti(c_hat, d["u"], d["v"]),
        lambda d, p: 2 * _g(d["u"], d["v"]),
        "c_hat(u)c_hat(v) + c_hat(v)c_hat(u) = 2 g(u,v)"))
    _register(IdentitySpec(
        "Eq2.2-c", "matrix", ("u", "v"), P2,
        lambda d, p: _anti(c, d["u"], d["v"]),
        lambda d, p: -2 * _g(d["u"], d["v"]),
        "c(u)c(v) + c(v)c(u) = -2 g(u,v)"))
    _register(IdentitySpec(
        "Eq2.2-mixed", "matrix", ("u", "v"), P2,
        lambda d, p: c(d["u"]) @ c_hat(d["v"]) + c_hat(d["v"]) @ c(d["u"]),
        lambda d, p: ZERO,
        "c(u)c_hat(v) + c_hat(v)c(u) = 0"))
    _register(IdentitySpec(
        "Lemma3.6-first", "matrix", ("u", "v"), P2,
        lambda d, p: _ct(d["u"], p) @ c(d["v"]) + c(d["v"]) @ _ct(d["u"], p),
        lambda d, p: -(p.a0 + p.b0) * _g(d["u"], d["v"]),
        "c_t(u)c(v) + c(v)c_t(u) = -(a0+b0) g(u,v)"))
    _register(IdentitySpec(
        "Lemma3.6-second", "matrix", ("u", "v"), P2,
        lambda d, p: _ct(d["u"], p) @ _ct(d["v"], p) + _ct(d["v"], p) @ _ct(d["u"], p),
        lambda d, p: -2 * p.a0 * p.b0 * _g(d["u"], d["v"]),
        "c_t(u)c_t(v) + c_t(v)c_t(u) = -2 a0 b0 g(u,v)"))
    _register(IdentitySpec(
        "Lemma3.6-third", "matrix", ("u", "v"), P2,
        lambda d, p: _ct(d["u"], p) @ c_hat(d["v"]) + c_hat(d["v"]) @ _ct(d["u"], p),
        lambda d, p: (p.a0 - p.b0) * _g(d["u"], d["v"]),
        "c_t(u)c_hat(v) + c_hat(v)c_t(u) = (a0-b0) g(u,v)"))

    T = _trace_id
    UVWX = _sampler("u", "v", "w", "X")
    UVWXXI = _sampler("u", "v", "w", "X", "xi")
    UVWXI = _sampler("u", "v", "w", "xi")
    UVXI = _sampler("u", "v", "xi")

    def ct3(d, p):
        return _prod(_ct(d["u"], p), _ct(d["v"], p), _ct(d["w"], p))

    _register(IdentitySpec(
        "Lemma3.7-1", "trace", ("u", "v", "w", "X"), UVWX,
        lambda d, p: _tr(ct3(d, p), c(d["X"])),
        lambda d, p: p.a0 * p.b0 * (p.a0 + p.b0) / 2 * _bx(d) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)c(X)) = a0 b0 (a0+b0)/2 [B_X] Tr(Id)"))
    _register(IdentitySpec(
        "Lemma3.7-2", "trace", ("u", "v", "w", "X", "xi", "xi"), UVWXXI,
        lambda d, p: _tr(ct3(d, p), c(d["X"]), _E(d["xi"])),
        lambda d, p: (p.a0 * p.b0 * _g(d["xi"], d["xi"]) * (p.a0 + p.b0) / 4 * _bx(d)
                      + (p.a0**2 * p.b0 - p.a0 * p.b0**2) / 4 * _g(d["xi"], d["X"]) * _br(d, d["xi"])) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)c(X)E) = [a0 b0 |xi|^2 (a0+b0)/4 B_X + (a0^2 b0 - a0 b0^2)/4 xi(X) B_xi] Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.29-first", "trace", ("u", "v", "xi", "xi"), UVXI,
        lambda d, p: _tr(_ct(d["u"], p), _ct(d["v"], p), _E(d["xi"])),
        lambda d, p: -p.a0 * p.b0 / 2 * _g(d["xi"], d["xi"]) * _g(d["u"], d["v"]) * T(),
        "Tr(c_t(u)c_t(v)E) = -a0 b0/2 |xi|^2 g(u,v) Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.29-middle", "trace", ("u", "v", "w", "xi"), UVWXI,
        lambda d, p: _tr(ct3(d, p), iota(d["xi"])),
        lambda d, p: -p.a0**2 * p.b0 / 4 * _br(d, d["xi"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)iota(xi)) = -a0^2 b0/4 B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.29-last", "trace", ("u", "v", "w", "xi"), UVWXI,
        lambda d, p: _tr(ct3(d, p), eps(d["xi"])),
        lambda d, p: p.a0 * p.b0**2 / 4 * _br(d, d["xi"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)eps(xi)) = a0 b0^2/4 B_xi Tr(Id)"))

    def p1(d, p):
        cx, xi = c(d["X"]), d["xi"]
        return c_bar(xi, p) @ cx + cx @ _ct(xi, p)

    def lhs38(d, p, mid):
        return _tr(ct3(d, p), _ct(d["xi"], p), mid)

    S8 = ("u", "v", "w", "X")
    _register(IdentitySpec(
        "Lemma3.8-1", "trace", S8 + ("xi",) * 2, UVWXXI,
        lambda d, p: lhs38(d, p, p1(d, p)),
        lambda d, p: -p.a0**2 * p.b0**2 * (p.a0 + p.b0) * _g(d["xi"], d["X"]) * _br(d, d["xi"]) * T(),
        "= -a0^2 b0^2 (a0+b0) xi(X) B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Lemma3.8-2", "trace", S8 + ("xi",) * 4, UVWXXI,
        lambda d, p: lhs38(d, p, p1(d, p) @ _E(d["xi"])),
        lambda d, p: ((p.a0**4 * p.b0 - 5 * p.a0**2 * p.b0**3) / 4 * _g(d["xi"], d["xi"]) * _g(d["xi"], d["X"]) * _br(d, d["xi"])
                      - p.a0**2 * p.b0 * (p.a0 + p.b0) * (p.a0 - p.b0) / 4 * _g(d["xi"], d["xi"])**2 * _bx(d)) * T(),
        "= [(a0^4 b0 - 5 a0^2 b0^3)/4 |xi|^2 xi(X) B_xi - a0^2 b0 (a0+b0)(a0-b0)/4 |xi|^4 B_X] Tr(Id)"))
    _register(IdentitySpec(
        "Lemma3.8-3", "trace", S8 + ("xi",) * 4, UVWXXI,
        lambda d, p: lhs38(d, p, _E(d["xi"]) @ p1(d, p)),
        lambda d, p: -p.a0**2 * p.b0**3 * _g(d["xi"], d["xi"]) * _g(d["xi"], d["X"]) * _br(d, d["xi"]) * T(),
        "= -a0^2 b0^3 |xi|^2 xi(X) B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Lemma3.8-4", "trace", S8 + ("xi",) * 6, UVWXXI,
        lambda d, p: lhs38(d, p, _E(d["xi"]) @ p1(d, p) @ _E(d["xi"])),
        lambda d, p: -p.a0**2 * p.b0**3 * _g(d["xi"], d["xi"])**2 * _g(d["xi"], d["X"]) * _br(d, d["xi"]) * T(),
        "= -a0^2 b0^3 |xi|^4 xi(X) B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.39-first", "trace", ("u", "v", "w", "xi"), UVWXI,
        lambda d, p: _tr(ct3(d, p), _ct(d["xi"], p)),
        lambda d, p: p.a0**2 * p.b0**2 * _br(d, d["xi"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)c_t(xi)) = a0^2 b0^2 B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.39-second", "trace", ("u", "v", "xi", "xi"), UVXI,
        lambda d, p: _tr(_ct(d["u"], p), _ct(d["v"], p), _ct(d["xi"], p), iota(d["xi"])),
        lambda d, p: -p.a0**2 * p.b0 / 2 * _g(d["xi"], d["xi"]) * _g(d["u"], d["v"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(xi)iota(xi)) = -a0^2 b0/2 |xi|^2 g(u,v) Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.39-last", "trace", ("u", "v", "w", "xi"), UVWXI,
        lambda d, p: _tr(ct3(d, p), iota(d["xi"])),
        lambda d, p: -p.a0**2 * p.b0 / 2 * _br(d, d["xi"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)iota(xi)) = -a0^2 b0/2 B_xi Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.40", "trace", S8 + ("xi",) * 2, UVWXXI,
        lambda d, p: _tr(ct3(d, p), _ct(d["xi"], p), c(d["X"]), iota(d["xi"])),
        lambda d, p: (p.a0**2 * p.b0 * (p.a0 + 3 * p.b0) / 4 * _g(d["xi"], d["X"]) * _br(d, d["xi"])
                      - p.a0**2 * p.b0 * (p.a0 + p.b0) / 4 * _g(d["xi"], d["xi"]) * _bx(d)) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)c_t(xi)c(X)iota(xi)) = [a0^2 b0 (a0+3b0)/4 xi(X) B_xi - a0^2 b0 (a0+b0)/4 |xi|^2 B_X] Tr(Id)"))
    _register(IdentitySpec(
        "Eq3.41", "trace", ("u", "v", "w", "xi", "xi", "xi"), UVWXI,
        lambda d, p: _tr(ct3(d, p), _ct(d["xi"], p), _E(d["xi"])),
        lambda d, p: p.a0**2 * p.b0**2 / 2 * _g(d["xi"], d["xi"]) * _br(d, d["xi"]) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)c_t(xi)E) = a0^2 b0^2/2 |xi|^2 B_xi Tr(Id)"))

    UX = _sampler("u", "X")
    UXXI = _sampler("u", "X", "xi")
    _register(IdentitySpec(
        "Lemma4.2-1", "trace", ("u", "X"), UX,
        lambda d, p: _tr(_ct(d["u"], p), c(d["X"])),
        lambda d, p: -(p.a0 + p.b0) / 2 * _g(d["u"], d["X"]) * T(),
        "Tr(c_t(u)c(X)) = -(a0+b0)/2 g(u,X) Tr(Id)"))
    _register(IdentitySpec(
        "Lemma4.2-2", "trace", ("u", "X", "xi", "xi"), UXXI,
        lambda d, p: _tr(_ct(d["u"], p), c(d["X"]), _E(d["xi"])),
        lambda d, p: (-p.a0 * _g(d["xi"], d["X"]) * _g(d["xi"], d["u"]) + p.b0 * _g(d["xi"], d["X"]) * _g(d["xi"], d["u"])
                      - (p.a0 + p.b0) * _g(d["xi"], d["xi"]) * _g(d["u"], d["X"])) / 4 * T(),
        "Tr(c_t(u)c(X)E) = 1/4 (-a0 xi(X)xi(u) + b0 xi(X)xi(u) - (a0+b0)|xi|^2 g(u,X)) Tr(Id)"))

    def lhs43(d, p, mid):
        return _tr(_ct(d["u"], p), _ct(d["xi"], p), mid)

    def xx(d):
        return _g(d["xi"], d["X"]) * _g(d["xi"], d["u"])

    _register(IdentitySpec(
        "Lemma4.3-1", "trace", ("u", "X", "xi", "xi"), UXXI,
        lambda d, p: lhs43(d, p, p1(d, p)),
        lambda d, p: p.a0 * p.b0 * (p.a0 + p.b0) * xx(d) * T(),
        "= a0 b0 (a0+b0) xi(X) xi(u) Tr(Id)"))
    _register(IdentitySpec(
        "Lemma4.3-2", "trace", ("u", "X") + ("xi",) * 4, UXXI,
        lambda d, p: lhs43(d, p, p1(d, p) @ _E(d["xi"])),
        lambda d, p: (p.a0 * (3 * p.b0**2 - p.a0**2) / 2 * _g(d["xi"], d["xi"]) * xx(d)
                      + p.a0 * (p.a0**2 - p.b0**2) / 2 * _g(d["xi"], d["xi"]) * _g(d["u"], d["X"])) * T(),
        "= [a0(3b0^2 - a0^2)/2 |xi|^2 xi(X)xi(u) + a0(a0^2 - b0^2)/2 |xi|^2 g(u,X)] Tr(Id), printed g(u,v) read as g(u,X)"))
    _register(IdentitySpec(
        "Lemma4.3-3", "trace", ("u", "X") + ("xi",) * 4, UXXI,
        lambda d, p: lhs43(d, p, _E(d["xi"]) @ p1(d, p)),
        lambda d, p: ((p.a0**3 * p.b0 - p.a0 * p.b0**3 + 2 * p.a0 * p.b0**2) / 2 * _g(d["xi"], d["xi"]) * xx(d)
                      - p.b0 * (p.a0**2 - p.b0**2) / 4 * _g(d["xi"], d["xi"]) * _g(d["u"], d["X"])) * T(),
        "= [(a0^3 b0 - a0 b0^3 + 2 a0 b0^2)/2 |xi|^2 xi(X)xi(u) - b0(a0^2 - b0^2)/4 |xi|^2 g(u,X)] Tr(Id), printed g(u,v) read as g(u,X)"))
    _register(IdentitySpec(
        "Lemma4.3-4", "trace", ("u", "X") + ("xi",) * 6, UXXI,
        lambda d, p: lhs43(d, p, _E(d["xi"]) @ p1(d, p) @ _E(d["xi"])),
        lambda d, p: p.a0 * p.b0**2 * (p.a0 + p.b0) * _g(d["xi"], d["xi"])**2 * xx(d) * T(),
        "= a0 b0^2 (a0+b0) |xi|^4 xi(X) xi(u) Tr(Id)"))

    # boundary identities: xi' is a rational unit vector orthogonal to dx_n = e_4
    BND = _sampler("u", "v", "w", tangential="xi'")
    bkw = dict(unit=("n", "xi'"), orth=(("n", "xi'"),))
    en, in_ = eps(e(4)), iota(e(4))

    def eq55(d, p):
        x, a0 = d["xi'"], p.a0
        tr2 = lambda a, b: _tr(_ct(a, p), _ct(b, p), eps(x), en)
        u, v, w = d["u"], d["v"], d["w"]
        val = (-_g(x, x) * _tr(ct3(d, p), en)
               + a0 * _g(x, u) * tr2(v, w) - a0 * _g(x, v) * tr2(u, w) + a0 * _g(x, w) * tr2(u, v))
        return val / 2

    _register(IdentitySpec(
        "Eq5.5", "trace", ("u", "v", "w", "xi'", "n", "xi'"), BND,
        lambda d, p: _tr(ct3(d, p), eps(d["xi'"]), en, iota(d["xi'"])),
        eq55,
        "2 Tr(c_t(u)c_t(v)c_t(w)eps(xi')eps(dx_n)iota(xi')) = -|xi'|^2 Tr(c_t^3 eps(dx_n)) + a0 xi'(u) Tr(c_t(v)c_t(w)eps(xi')eps(dx_n)) - ...",
        **bkw))
    _register(IdentitySpec(
        "Eq5.6", "trace", ("u", "v", "w", "xi'", "n", "xi'"), BND,
        lambda d, p: _tr(ct3(d, p), eps(d["xi'"]), en, iota(d["xi'"])),
        lambda d, p: -p.a0 * p.b0**2 / 4 * _g(d["xi'"], d["xi'"]) * _bn(d),
        "Tr(c_t(u)c_t(v)c_t(w)eps(xi')eps(dx_n)iota(xi')) = -a0 b0^2/4 |xi'|^2 B_n (printed without Tr(Id))",
        **bkw))
    _register(IdentitySpec(
        "Eq5.7", "trace", ("u", "v", "w", "xi'", "xi'", "n"), BND,
        lambda d, p: _tr(ct3(d, p), iota(d["xi'"]), eps(d["xi'"]), in_),
        lambda d, p: -p.a0**2 * p.b0 / 4 * _g(d["xi'"], d["xi'"]) * _bn(d),
        "Tr(c_t(u)c_t(v)c_t(w)iota(xi')eps(xi')iota(dx_n)) = -a0^2 b0/4 |xi'|^2 B_n (printed without Tr(Id))",
        **bkw))
    _register(IdentitySpec(
        "Eq5.8-1", "trace", ("u", "v", "w", "n"), BND,
        lambda d, p: _tr(ct3(d, p), en),
        lambda d, p: p.a0 * p.b0**2 / 2 * _bn(d) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)eps(dx_n)) = a0 b0^2/2 B_n Tr(Id)", **bkw))
    _register(IdentitySpec(
        "Eq5.8-2", "trace", ("u", "v", "w", "n"), BND,
        lambda d, p: _tr(ct3(d, p), in_),
        lambda d, p: -p.a0**2 * p.b0 / 2 * _bn(d) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)iota(dx_n)) = -a0^2 b0/2 B_n Tr(Id)", **bkw))
    _register(IdentitySpec(
        "Eq5.8-3", "trace", ("u", "v", "w", "n", "n", "n"), BND,
        lambda d, p: _tr(ct3(d, p), in_, en, in_),
        lambda d, p: -p.a0**2 * p.b0 / 2 * _bn(d) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)iota(dx_n)eps(dx_n)iota(dx_n)) = -a0^2 b0/2 |dx_n|^2 B_n Tr(Id)", **bkw))
    _register(IdentitySpec(
        "Eq5.8-4", "trace", ("u", "v", "w", "n", "xi'", "xi'"), BND,
        lambda d, p: _tr(ct3(d, p), in_, eps(d["xi'"]), iota(d["xi'"])),
        lambda d, p: -p.a0**2 * p.b0 / 4 * _g(d["xi'"], d["xi'"]) * _bn(d) * T(),
        "Tr(c_t(u)c_t(v)c_t(w)iota(dx_n)eps(xi')iota(xi')) = -a0^2 b0/4 |xi'|^2 B_n Tr(Id)", **bkw))


_build_registry()


# --------------------------------------------------------------------------
# cases


@dataclass
class OracleCase:
    tag: str
    trial: int
    instantiation: Dict[str, Tuple[str, ...]]
    closed_form: ParamScalar
    brute_force: Optional[ParamScalar]       # None: matrix is not a multiple of Id
    verdict: str
    delta: Optional[ParamScalar] = None

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "trial": self.trial,
            "instantiation": {k: list(v) for k, v in self.instantiation.items()},
            "closed_form": self.closed_form.to_text(),
            "brute_force": None if self.brute_force is None else self.brute_force.to_text(),
            "verdict": self.verdict,
            "delta": None if self.delta is None else self.delta.to_text(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OracleCase":
        opt = lambda t: None if t is None else ParamScalar.parse(t)
        return cls(d["tag"], int(d["trial"]), {k: tuple(v) for k, v in d["instantiation"].items()},
                   ParamScalar.parse(d["closed_form"]), opt(d["brute_force"]), d["verdict"], opt(d["delta"]))


def _inst_text(inst: Dict[str, Covector]) -> Dict[str, Tuple[str, ...]]:
    return {k: tuple(x.to_text() for x in v.components) for k, v in sorted(inst.items())}


def evaluate_case(tag: str, inst: Dict[str, Covector], params: Params = SYMBOLIC, trial: int = -1) -> OracleCase:
    spec = REGISTRY.get(tag)
    if spec is None:
        raise UnknownTag(tag)
    closed = coerce(spec.closed(inst, params))
    raw = spec.brute(inst, params)
    if spec.kind == "matrix":
        brute = raw.scalar_value()
    else:
        brute = coerce(raw)
    if brute is not None and brute == closed:
        return OracleCase(tag, trial, _inst_text(inst), closed, brute, "Match")
    delta = None if brute is None else brute - closed
    return OracleCase(tag, trial, _inst_text(inst), closed, brute, "Mismatch", delta)


def _trial_rng(seed: int, tag: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{tag}:{trial}")


def check_identity(tag: str, trials: int = 100, seed: int = DEFAULT_SEED, params: Params = SYMBOLIC) -> List[OracleCase]:
    """Run ``trials`` seeded cases for ``tag`` (or every tag under a prefix)."""
    out = []
    for t in resolve_tags([tag]):
        spec = REGISTRY[t]
        for k in range(trials):
            out.append(evaluate_case(t, spec.sample(_trial_rng(seed, t, k)), params, k))
    return out


# --------------------------------------------------------------------------
# invariant fit


def _matchings(items: Tuple[int, ...]):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        pair = (first, rest[k])
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield (pair,) + m


def _det4(rows: List[List[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(4):
        piv = next((r for r in range(col, 4) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, 4):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def invariant_monomials(spec: IdentitySpec):
    """Distinct metric contractions of the slot vectors, plus volume-form terms.

    Each monomial is (pairs, det) with pairs a sorted tuple of name pairs and
    det a sorted 4-tuple of distinct names or None.
    """
    names = spec.slots
    idx = tuple(range(len(names)))
    orth = {tuple(sorted(p)) for p in spec.orth}
    seen = {}

    def norm(pairs, det):
        ps = []
        for a, b in pairs:
            key = tuple(sorted((names[a], names[b])))
            if key in orth:
                return None
            if key[0] == key[1] and key[0] in spec.unit:
                continue
            ps.append(key)
        return tuple(sorted(ps)), det

    for m in _matchings(idx):
        k = norm(m, None)
        if k is not None:
            seen.setdefault(k, None)
    for quad in itertools.combinations(idx, 4):
        qn = tuple(sorted(names[i] for i in quad))
        if len(set(qn)) < 4:
            continue
        rest = tuple(i for i in idx if i not in quad)
        for m in _matchings(rest):
            k = norm(m, qn)
            if k is not None:
                seen.setdefault(k, None)
    return list(seen)


def _mono_value(mono, inst: Dict[str, Covector]) -> Fraction:
    pairs, det = mono
    val = Fraction(1)
    for a, b in pairs:
        val *= inst[a].dot(inst[b]).const_value().re
    if det is not None:
        val *= _det4([[x.const_value().re for x in inst[n].components] for n in det])
    return val


def _pair_text(a: str, b: str) -> str:
    if a == b:
        return f"|{a}|^2"
    if "n" in (a, b):
        other = b if a == "n" else a
        return f"{other}_n"
    if a.startswith("xi"):
        return f"{a}({b})"
    if b.startswith("xi"):
        return f"{b}({a})"
    return f"g({a},{b})"


def monomial_text(mono) -> str:
    pairs, det = mono
    counts: Dict[str, int] = {}
    for a, b in pairs:
        t = _pair_text(a, b)
        counts[t] = counts.get(t, 0) + 1
    parts = []
    for t, k in counts.items():
        if k == 1:
            parts.append(t)
        elif t.endswith("|^2"):
            parts.append(f"{t[:-2]}^{2 * k}")
        else:
            parts.append(f"{t}^{k}")
    if det is not None:
        parts.append("vol(" + ",".join(det) + ")")
    return "*".join(parts) if parts else "1"


@dataclass
class FitResult:
    terms: Dict[str, ParamScalar]
    rows_used: int
    verified_rows: int
    reconstruction_ok: bool

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.to_text()})*{m}" for m, c in self.terms.items())


def fit_invariant_form(tag: str, trials: int = 40, seed: int = DEFAULT_SEED, params: Params = SYMBOLIC) -> FitResult:
    """Exact fit of brute-force traces on the invariant monomial basis."""
    spec = REGISTRY[tag]
    if spec.kind != "trace":
        raise ValueError("fits apply to trace identities")
    monos = invariant_monomials(spec)
    rows, rhs = [], []
    for k in range(trials):
        inst = spec.sample(_trial_rng(seed, "fit:" + tag, k))
        rows.append([_mono_value(m, inst) for m in monos])
        rhs.append(coerce(spec.brute(inst, params)))
    # row reduction over Q, tracking the (a0, b0)-valued right-hand side
    A = [list(r) for r in rows]
    b = list(rhs)
    pivots = []
    r = 0
    for col in range(len(monos)):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        b[r], b[piv] = b[piv], b[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        b[r] = b[r] * inv
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
                b[i] = b[i] - b[r] * f
        pivots.append(col)
        r += 1
    ok = all(not b[i] for i in range(r, len(A)))
    terms = {monomial_text(monos[col]): b[i] for i, col in enumerate(pivots) if b[i]}
    return FitResult(terms, r, len(A) - r, ok and len(A) > r)


# --------------------------------------------------------------------------
# summaries


@dataclass
class TagSummary:
    tag: str
    printed: str
    trials: int
    matches: int
    mismatches: int
    first_mismatch: Optional[OracleCase] = None
    oracle_form: Optional[str] = None
    reconstruction: Optional[str] = None

    @property
    def verdict(self) -> str:
        return "Match" if self.mismatches == 0 else "Mismatch"

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "printed": self.printed,
            "trials": self.trials,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "verdict": self.verdict,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_dict(),
            "oracle_form": self.oracle_form,
            "reconstruction": self.reconstruction,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TagSummary":
        first = d["first_mismatch"]
        return cls(d["tag"], d["printed"], d["trials"], d["matches"], d["mismatches"],
                   None if first is None else OracleCase.from_dict(first), d["oracle_form"], d["reconstruction"])


def summarize(tag: str, trials: int = 100, seed: int = DEFAULT_SEED, fit_trials: int = 40) -> TagSummary:
    spec = REGISTRY[tag]
    cases = check_identity(tag, trials, seed)
    bad = [x for x in cases if x.verdict != "Match"]
    s = TagSummary(tag, spec.printed, len(cases), len(cases) - len(bad), len(bad), bad[0] if bad else None)
    if bad:
        if spec.kind == "trace":
            fit = fit_invariant_form(tag, fit_trials, seed)
            s.oracle_form = fit.text()
            s.reconstruction = (f"ok ({fit.verified_rows} held-out rows)" if fit.reconstruction_ok
                                else "failed")
        else:
            s.oracle_form = "not a scalar multiple of Id" if bad[0].brute_force is None else None
    return s


# --------------------------------------------------------------------------
# end-to-end numeric pipeline

FUNCTIONALS = ("torsion", "one-form", "boundary", "sanity")


def full_pipeline_numeric(a, b, functional: str) -> SphereValue:
    """Rerun a pipeline with numeric a0 = a, b0 = b from scratch."""
    if functional not in FUNCTIONALS:
        raise UnknownFunctional(functional)
    params = Params.numeric(a, b)
    from . import boundary_residue, interior_residue

    if functional == "torsion":
        tc, _ = interior_residue.spectral_torsion(params, trials=2)
        return SphereValue(tc.k1, tc.pi_power)
    if functional == "one-form":
        k, _ = interior_residue.spectral_one_form(params, trials=2)
        return k
    if functional == "boundary":
        bd, _ = boundary_residue.boundary_torsion(params, trials=2)
        return SphereValue(bd.k_u, bd.pi_power)
    return interior_residue.wres_laplacian_sanity(params).derived
