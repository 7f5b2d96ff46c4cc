import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy

from spectral_torsion.boundary_residue import (
    CLAIMED_BOUNDARY, XiNRational, _xi_prime_action, boundary_torsion, boundary_value,
    boundary_value_direct, check_inverse_adjoint, d_xi_n_sigma_minus2, decompose_blocks, integrate_xi_n,
    pi_plus, printed_d_xi_n_sigma_minus2, printed_pi_plus_inverse_adjoint, scalar_partial_fractions,
    sigma_minus1_inverse_adjoint, sphere2_integrate, surviving_indices,
)
from spectral_torsion.errors import NonIntegrable
from spectral_torsion.fiber_algebra import c, c_bar, c_tilde, e, eps, identity, iota
from spectral_torsion.results import SphereValue
from spectral_torsion.sampling import random_covector
from spectral_torsion.scalar_ring import A0, B0, I, ONE, GaussRat, ParamScalar, Params
from spectral_torsion.symbol_calculus import MonoPoly

IU = GaussRat(0, 1)
BOUNDARY_KU = -(A0**4 + 6 * A0**2 * B0**2 + B0**4) / (A0**2 * B0**2)


def _frac(numer, p, q):
    return XiNRational.from_fraction({k: GaussRat.of(v) for k, v in numer.items()}, p, q)


def test_pi_plus_worked_examples():
    assert pi_plus(XiNRational.pole(IU ** 0, 1, 1)) == XiNRational.pole(IU ** 0, 1, 1)
    assert pi_plus(XiNRational.pole(IU ** 0, -1, 1)).is_zero()
    assert pi_plus(_frac({0: 1}, 1, 1)) == XiNRational.pole(-IU / 2, 1, 1)


def _random_rational_fn(rng, decay=2):
    p, q = rng.randint(0, 3), rng.randint(0, 3)
    if p + q < decay:
        p += decay
    top = p + q - decay
    numer = {j: GaussRat(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
             for j in range(top + 1)}
    return _frac(numer, p, q), numer, p, q


def test_pi_plus_idempotent_and_complementary():
    rng = random.Random(3)
    for _ in range(100):
        r, *_ = _random_rational_fn(rng, decay=0)
        rp = pi_plus(r)
        assert pi_plus(rp) == rp
        assert pi_plus(r - rp).is_zero()
        assert rp + (r - rp) == r


def test_partial_fractions_match_sympy():
    x = sympy.symbols("x")
    for j in range(5):
        for p in range(3):
            for q in range(3):
                if not p and not q:
                    continue
                poly, poles = scalar_partial_fractions(j, p, q)
                ours = sum(complex(c) * x**k for k, c in poly.items()) if poly else 0
                ours = sympy.nsimplify(ours) if ours else 0
                expr = sum(sympy.nsimplify(complex(c)) / (x - s * sympy.I) ** k for (s, k), c in poles.items()) + ours
                ref = x**j / ((x - sympy.I) ** p * (x + sympy.I) ** q)
                assert sympy.simplify(expr - ref) == 0


def test_integrals_exact():
    assert integrate_xi_n(_frac({0: 1}, 1, 1)) == (GaussRat(1), 1)
    assert integrate_xi_n(_frac({0: 1}, 2, 2)) == (GaussRat(Fraction(1, 2)), 1)
    val, _ = integrate_xi_n(_frac({1: 1}, 2, 2))
    assert not val
    with pytest.raises(NonIntegrable):
        integrate_xi_n(_frac({1: 1}, 1, 1))
    with pytest.raises(NonIntegrable):
        integrate_xi_n(_frac({2: 1}, 0, 0))


def test_integrals_against_quadrature():
    rng = random.Random(20)
    mpmath.mp.dps = 30
    T = 10**4
    for _ in range(20):
        r, numer, p, q = _random_rational_fn(rng, decay=3)
        val, _ = integrate_xi_n(r)
        exact = complex(val) * math.pi if val is not None else 0j

        def f(x):
            num = sum(mpmath.mpc(float(c.re), float(c.im)) * x**j for j, c in numer.items())
            return num / ((x - 1j) ** p * (x + 1j) ** q)

        num = mpmath.quad(f, [-T, -10, 0, 10, T])
        scale = float(mpmath.quad(lambda x: abs(f(x)), [-T, -10, 0, 10, T]))
        assert abs(complex(num) - exact) <= 1e-6 * max(abs(exact), scale)


def test_sphere2_exact():
    assert sphere2_integrate(MonoPoly({(0, 0, 0, 0): 1})) == SphereValue(4, 1)
    assert sphere2_integrate(MonoPoly({(2, 0, 0, 0): 1})) == SphereValue(Fraction(4, 3), 1)
    assert sphere2_integrate(MonoPoly({(1, 1, 0, 0): 1})).is_zero()


def test_derivative_two_ways():
    d = d_xi_n_sigma_minus2()
    from spectral_torsion.boundary_residue import to_boundary
    from spectral_torsion.symbol_calculus import sigma_minus2
    s = to_boundary(sigma_minus2())
    assert s.derivative() == s.derivative_by_quotient_rule() == d


SPHERE_POINTS = [(Fraction(3, 5), Fraction(4, 5), 0), (Fraction(2, 7), Fraction(3, 7), Fraction(6, 7)), (1, 0, 0)]


def test_derivative_scalar_case():
    # numerators keep |xi'|^2 unreduced, so compare values on the unit sphere
    d = d_xi_n_sigma_minus2(Params.numeric(1, 1))
    for pt in SPHERE_POINTS:
        for x in (Fraction(0), Fraction(1, 3), Fraction(-5, 2)):
            got = d.evaluate(x).evaluate(list(pt) + [0])
            want = identity() * ParamScalar(-2 * x / (1 + x * x) ** 2)
            if got is None:  # empty polynomial
                assert x == 0
            else:
                assert got == want
    blocks = decompose_blocks(d_xi_n_sigma_minus2())
    assert not blocks["Id"].evaluate(0)


def test_inverse_adjoint():
    assert check_inverse_adjoint(samples=3) == 3
    plus = pi_plus(sigma_minus1_inverse_adjoint(Params.numeric(1, 1)))
    want = (_xi_prime_action(c) + MonoPoly.constant(c(e(4)) * I)) * ParamScalar(Fraction(1, 2))
    assert plus == XiNRational.pole(want, 1, 1)


def test_printed_forms():
    assert printed_pi_plus_inverse_adjoint() == pi_plus(sigma_minus1_inverse_adjoint())
    derived, printed = decompose_blocks(d_xi_n_sigma_minus2()), decompose_blocks(printed_d_xi_n_sigma_minus2())
    differing = sorted(k for k in derived if derived[k] != printed[k])
    assert differing == ["eps(dx_n)iota(dx_n)", "eps(xi')iota(xi')"]
    # the printed labels of those two blocks are exchanged relative to the derivation
    beta = (A0**2 - B0**2) / (A0**2 * B0**2)
    assert derived["eps(xi')iota(xi')"] == _frac({1: -4}, 3, 3).scale(beta)


def test_surviving_tuple():
    (tup, pref), = surviving_indices()
    assert tup == (-1, -2, 0, 0, 0) and pref == -IU


def test_boundary_coefficients():
    bd, rep = boundary_torsion(trials=5)
    assert bd.k_u == BOUNDARY_KU
    assert bd.has_bracket_pattern()
    assert [c.verdict for c in rep.comparisons] == ["Mismatch"] * 4
    assert rep.checks["vanishes at a0 = b0"] == "no"
    assert rep.checks["claimed numerator vanishes at a0 = b0"] == "yes"


def test_direct_route_agrees():
    rng = random.Random(2)
    for _ in range(2):
        u, v, w = (random_covector(rng) for _ in range(3))
        assert boundary_value(u, v, w) == boundary_value_direct(u, v, w)


def test_eq58_worked_example():
    A = c_tilde(e(4)) @ c_tilde(e(1)) @ c_tilde(e(1))
    assert (A @ eps(e(4))).trace() == 8 * A0 * B0**2


# independent floating-point pipeline --------------------------------------

def _np(m):
    return np.array([[complex(x.const_value()) for x in row] for row in m.to_entries()])


def _float_boundary(a, b, u, v, w, n_x=400, n_theta=16, n_phi=32):
    p = Params.numeric(a, b)
    E = [_np(eps(e(k))) for k in range(1, 5)]
    Io = [_np(iota(e(k))) for k in range(1, 5)]
    A = _np(c_tilde(u, p) @ c_tilde(v, p) @ c_tilde(w, p))
    ct = lambda xi: sum(xi[k] * (a * E[k] - b * Io[k]) for k in range(4))
    cb = lambda xi: sum(xi[k] * (b * E[k] - a * Io[k]) for k in range(4))
    t, wt = np.polynomial.legendre.leggauss(n_x)
    t, wt = t * math.pi / 2, wt * math.pi / 2
    xs, jac = np.tan(t), 1 / np.cos(t) ** 2
    z, wz = np.polynomial.legendre.leggauss(n_theta)
    total = 0j
    for zc, wzc in zip(z, wz):
        s = math.sqrt(1 - zc * zc)
        for phi in np.arange(n_phi) * 2 * math.pi / n_phi:
            xp = [s * math.cos(phi), s * math.sin(phi), zc]
            # residue at xi_n = i of (i c_bar(xi))^-1 = i c_bar(xi) / (a b |xi|^2)
            P = cb(xp + [1j]) / (2 * a * b)
            acc = 0j
            for x, jw in zip(xs, wt * jac):
                xi = xp + [x]
                L = -cb(xi) @ ct(xi)
                q = np.linalg.inv(L)
                dL = -(cb([0, 0, 0, 1]) @ ct(xi) + cb(xi) @ ct([0, 0, 0, 1]))
                dq = -q @ dL @ q
                acc += jw * np.trace(A @ P @ dq) / (x - 1j)
            total += wzc * (2 * math.pi / n_phi) * acc
    return -1j * total


@pytest.mark.parametrize("ab", [(1, 1), (2, 1)])
def test_boundary_against_float_pipeline(ab):
    a, b = ab
    u, v, w = e(4), e(1), e(1)
    exact = boundary_value(u, v, w, Params.numeric(a, b))
    ref = complex(exact.coeff.const_value()) * math.pi ** exact.pi_power
    num = _float_boundary(a, b, u, v, w, n_x=200, n_theta=8, n_phi=12)
    assert abs(num - ref) <= 1e-8 * abs(ref)
