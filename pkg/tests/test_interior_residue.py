import math
import random
from fractions import Fraction

import numpy as np
import pytest

from spectral_torsion.errors import DegenerateParameters
from spectral_torsion.fiber_algebra import Covector, c, c_tilde, e
from spectral_torsion.interior_residue import (
    CLAIMED, extract_torsion_coefficients, one_form_value, one_form_value_direct, sphere3_integrate,
    sphere_monomial, spectral_one_form, spectral_torsion, torsion_density, torsion_value,
    torsion_value_direct, wres_laplacian_sanity,
)
from spectral_torsion.results import SphereValue
from spectral_torsion.sampling import random_covector
from spectral_torsion.scalar_ring import A0, B0, I, ParamScalar, Params
from spectral_torsion.symbol_calculus import MonoPoly

TORSION_K1 = -12 * I * (A0 - B0) * (A0**4 - B0**4) / (A0**3 * B0**3)
ONE_FORM_K = 12 * I * (A0 - B0) * (A0**4 - B0**4) / (A0**4 * B0**4)


def _mono(alpha):
    return MonoPoly({tuple(alpha): 1})


def test_sphere3_exact():
    assert sphere3_integrate(_mono((0, 0, 0, 0))) == SphereValue(2, 2)
    assert sphere3_integrate(_mono((2, 0, 0, 0))) == SphereValue(Fraction(1, 2), 2)
    assert sphere3_integrate(_mono((1, 1, 0, 0))).is_zero()
    assert sphere_monomial((0, 0, 0)) == (4, 1)


def _hopf_grid(n_eta=24, n_phi=24):
    eta, w = np.polynomial.legendre.leggauss(n_eta)
    eta = (eta + 1) * math.pi / 4
    w = w * math.pi / 4 * np.sin(eta) * np.cos(eta)
    phi = np.arange(n_phi) * 2 * math.pi / n_phi
    E, P1, P2 = np.meshgrid(eta, phi, phi, indexing="ij")
    W = np.broadcast_to(w[:, None, None], E.shape) * (2 * math.pi / n_phi) ** 2
    pts = np.stack([np.cos(E) * np.cos(P1), np.cos(E) * np.sin(P1), np.sin(E) * np.cos(P2), np.sin(E) * np.sin(P2)])
    return pts.reshape(4, -1), W.ravel()


def _numeric_integral(poly: MonoPoly):
    pts, W = _hopf_grid()
    acc = np.zeros(W.shape, dtype=complex)
    for alpha, cf in poly.terms.items():
        acc += complex(cf.const_value()) * np.prod([pts[k] ** alpha[k] for k in range(4)], axis=0)
    return complex((acc * W).sum())


@pytest.mark.parametrize("alpha", [(0, 0, 0, 0), (2, 0, 0, 0), (2, 2, 0, 0), (4, 0, 2, 0), (1, 1, 0, 0)])
def test_sphere3_against_quadrature(alpha):
    exact = sphere3_integrate(_mono(alpha))
    num = _numeric_integral(MonoPoly({alpha: ParamScalar(1)}))
    ref = float(exact.coeff.const_value().re) * math.pi ** exact.pi_power
    assert abs(num - ref) < 1e-10


def test_torsion_integral_against_quadrature():
    params = Params.numeric(2, 1)
    rng = random.Random(4)
    u, v, w, X = (random_covector(rng) for _ in range(4))
    density = torsion_density(u, v, w, X, params).trace().on_unit_sphere()
    exact = torsion_value(u, v, w, X, params)
    ref = complex(exact.coeff.const_value()) * math.pi ** exact.pi_power
    num = _numeric_integral(density)
    assert abs(num - ref) <= 1e-9 * max(1.0, abs(ref))


def test_frozen_coefficients():
    tc, rep = spectral_torsion()
    assert tc.k1 == TORSION_K1 and tc.pi_power == 2
    assert tc.has_bracket_pattern()
    assert rep.checks["vanishes at a0 = b0"] == "yes"
    k, rep1 = spectral_one_form(lemma_trials=2)
    assert k == SphereValue(ONE_FORM_K, 2)
    assert rep1.checks["vanishes at a0 = b0"] == "yes"


def test_verdicts_against_printed_values():
    _, rep = spectral_torsion()
    assert [c.verdict for c in rep.comparisons] == ["Mismatch", "Mismatch"]
    theorem = ParamScalar.parse(CLAIMED["torsion_theorem"])
    assert theorem.eval(2, 1) == I.const_value() * Fraction(-135, 16)
    ratio = theorem * 2 / TORSION_K1
    assert ratio == (3 * A0**2 + A0 * B0 - 2 * B0**2) / (8 * (A0**2 - A0 * B0))


def test_direct_route_agrees_with_kernel_route():
    rng = random.Random(8)
    for _ in range(3):
        u, v, w, X = (random_covector(rng) for _ in range(4))
        assert torsion_value(u, v, w, X) == torsion_value_direct(u, v, w, X)
        assert one_form_value(u, X) == one_form_value_direct(u, X)


def test_reconstruction_fifty_tuples():
    tc = extract_torsion_coefficients()
    rng = random.Random(50)
    for _ in range(50):
        args = [random_covector(rng) for _ in range(4)]
        assert torsion_value(*args) == tc.value(*args)


def test_swap_pattern():
    rng = random.Random(9)
    u, v, w, X = (random_covector(rng) for _ in range(4))
    base = torsion_value(u, v, w, X)
    k = SphereValue(TORSION_K1, 2)
    # only the term symmetric in the swapped pair survives the sum
    assert torsion_value(v, u, w, X) + base == k * (2 * w.dot(X) * u.dot(v))
    assert torsion_value(u, w, v, X) + base == k * (2 * u.dot(X) * v.dot(w))


def test_scale_covariance():
    rng = random.Random(10)
    u, v, w, X = (random_covector(rng) for _ in range(4))
    dens = torsion_density(u, v, w, X)
    lam = Fraction(3, 2)
    for _ in range(3):
        p = list(random_covector(rng).components)
        assert dens.at([x * lam for x in p]) == dens.at(p) * ParamScalar(lam) ** -4


def test_density_vanishes_without_x():
    assert torsion_density(e(1), e(2), e(3), Covector([0, 0, 0, 0])).is_zero()


def test_lemma42_worked_example():
    assert (c_tilde(e(1)) @ c(e(1))).trace() == -8 * (A0 + B0)


def test_sanity_residue():
    rep = wres_laplacian_sanity(Params.numeric(1, 1))
    assert rep.derived == SphereValue(32, 2)
    assert wres_laplacian_sanity(Params.numeric(1, 2)).derived == SphereValue(17, 2)
    sym = wres_laplacian_sanity().derived.coeff
    assert sym == sym.subs(a0=B0, b0=A0)
    assert all(c.verdict == "Match" for c in wres_laplacian_sanity().comparisons)


def test_numeric_parameters_match_symbolic():
    rng = random.Random(77)
    for _ in range(3):
        a, b = Fraction(rng.randint(1, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, -1), rng.randint(1, 9))
        tc, _ = spectral_torsion(Params.numeric(a, b), trials=2)
        assert tc.k1 == TORSION_K1.eval(a, b)


def test_degenerate_parameters():
    with pytest.raises(DegenerateParameters):
        spectral_torsion(Params.numeric(0, 1))
