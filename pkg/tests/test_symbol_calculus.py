import random

import pytest

from spectral_torsion.errors import NonInvertibleLeading, OddDenomPow
from spectral_torsion.fiber_algebra import Covector, FiberEndo, c, c_bar, c_tilde, e, eps, identity, iota
from spectral_torsion.sampling import random_covector
from spectral_torsion.scalar_ring import A0, B0, I, ONE, ZERO, Params, SYMBOLIC
from spectral_torsion.symbol_calculus import (
    GradedSymbol, HomogSymbol, MonoPoly, graded_product, invert_leading, laplacian_from_composition,
    laplacian_leading, norm_sq, printed_sigma_minus4, sigma1_perturbation, sigma_minus2,
    sigma_minus4_sq, sigma_minus5_sq, symbol_of_operator, xi_action,
)

ONE11 = Params.numeric(1, 1)
ZERO_X = Covector([0, 0, 0, 0])


def _points(n, seed=21):
    rng = random.Random(seed)
    return [list(random_covector(rng).components) for _ in range(n)]


def _id_sym(order=0):
    return HomogSymbol(order, MonoPoly.constant(identity()))


def test_homogeneity_enforced():
    with pytest.raises(ValueError):
        HomogSymbol(1, norm_sq(4, 1, 1))
    with pytest.raises(OddDenomPow):
        HomogSymbol(-1, MonoPoly.linear([1, 0, 0, 0]), -1)


def test_lifting_preserves_value():
    s = sigma_minus2()
    t = HomogSymbol(s.order, s.lifted(s.denom_pow + 2), s.denom_pow + 2)
    assert s == t
    for p in _points(3):
        assert s.at(p) == t.at(p)


def test_operator_symbol_specializations():
    sym = symbol_of_operator(ZERO_X, ONE11)
    for p in _points(3):
        assert sym[1].at(p) == c(Covector(p)) * I
    assert sym[0].is_zero()
    adj, op = symbol_of_operator(ZERO_X, adjoint=True), symbol_of_operator(ZERO_X)
    for p in _points(3):
        xi = Covector(p)
        assert adj[1].at(p) - op[1].at(p) == (eps(xi) + iota(xi)) * ((B0 - A0) * I)


def test_laplacian():
    assert laplacian_leading(ONE11) == HomogSymbol(2, norm_sq(4, 1, identity()))
    assert laplacian_leading() == laplacian_from_composition()
    assert laplacian_leading().at([1, 0, 0, 0]).trace() == 16 * A0**2 + 8 * (B0**2 - A0**2)


def test_claimed_inverse_numerator():
    E = xi_action(eps) * xi_action(iota)
    claimed = norm_sq(4, 1, identity()) * B0**2 + E * (A0**2 - B0**2)
    prod = laplacian_leading().numerator * claimed
    assert prod == norm_sq(4, 2, identity()) * (A0**2 * B0**2)


def test_invert_leading():
    q = sigma_minus2()
    L = laplacian_leading()
    assert graded_product(GradedSymbol({2: L}), GradedSymbol({-2: q}), 0) == _id_sym()
    assert graded_product(GradedSymbol({-2: q}), GradedSymbol({2: L}), 0) == _id_sym()
    assert graded_product(GradedSymbol({2: L}), GradedSymbol({-2: q}), 1).is_zero()
    assert invert_leading(q) == L
    assert invert_leading(HomogSymbol(2, norm_sq(4, 1, identity()))) == HomogSymbol(-2, MonoPoly.constant(identity()), 1)
    for p in _points(3):
        assert q.at(p) == L.at(p).inverse()


def test_invert_rejects_other_shapes():
    with pytest.raises(NonInvertibleLeading):
        invert_leading(HomogSymbol(1, xi_action(c)))
    with pytest.raises(NonInvertibleLeading):
        invert_leading(HomogSymbol(2, xi_action(eps) * xi_action(iota)))


def test_graded_product_basics():
    a = symbol_of_operator(ZERO_X)
    b = GradedSymbol({-2: sigma_minus2()})
    assert graded_product(a, b, -1) == a[1] * b[-2]
    assert graded_product(a, GradedSymbol({}), -1).is_zero()


def test_sigma_minus4():
    q = sigma_minus2()
    assert sigma_minus4_sq() == q * q
    assert printed_sigma_minus4() == sigma_minus4_sq()
    assert sigma_minus4_sq(ONE11) == HomogSymbol(-4, MonoPoly.constant(identity()), 2)
    assert sigma_minus4_sq().at([0, 1, 0, 0]).trace() == 8 * (A0**4 + B0**4) / (A0**4 * B0**4)


def test_sigma1_perturbation():
    assert sigma1_perturbation(ZERO_X).is_zero()
    X = Covector([2, -1, 3, 1])
    for p in _points(3):
        assert sigma1_perturbation(X, ONE11).at(p) == identity() * (2 * X.dot(Covector(p)))


def test_sigma_minus5_zero_and_linear():
    assert sigma_minus5_sq(ZERO_X).is_zero()
    X, Y = Covector([1, 2, 0, -1]), Covector([0, 1, 1, 3])
    assert sigma_minus5_sq(X + Y) == sigma_minus5_sq(X) + sigma_minus5_sq(Y)


def test_sigma_minus5_signature_case():
    X = Covector([1, -2, 3, 5])
    for p in _points(3):
        r2 = sum(x * x for x in p)
        assert sigma_minus5_sq(X, ONE11).at(p) == identity() * (-4 * X.dot(Covector(p)) / r2**3)


def test_symbols_match_direct_matrices():
    rng = random.Random(5)
    X = random_covector(rng)
    s5 = sigma_minus5_sq(X)
    for p in _points(20, seed=99):
        xi = Covector(p)
        L = -(c_bar(xi) @ c_tilde(xi))      # (i c_bar)(i c_tilde)
        q = L.inverse()
        p1 = -(c_bar(xi) @ c(X) + c(X) @ c_tilde(xi))
        assert sigma_minus2().at(p) == q
        assert sigma_minus4_sq().at(p) == q @ q
        assert s5.at(p) == -(q @ p1 @ q @ q + q @ q @ p1 @ q)
