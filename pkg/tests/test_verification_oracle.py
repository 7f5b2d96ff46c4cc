import random
from fractions import Fraction

import pytest

from spectral_torsion.errors import UnknownFunctional, UnknownTag
from spectral_torsion.fiber_algebra import e
from spectral_torsion.results import SphereValue
from spectral_torsion.scalar_ring import A0, B0, I
from spectral_torsion.verification_oracle import (
    REGISTRY, FUNCTIONALS, TagSummary, check_identity, evaluate_case, fit_invariant_form, full_pipeline_numeric,
    resolve_tags, summarize, tags,
)

MISMATCHED = {
    "Eq3.29-middle", "Eq3.29-last", "Lemma3.8-1", "Lemma3.8-3",
    "Lemma4.3-1", "Lemma4.3-2", "Lemma4.3-3", "Lemma4.3-4", "Eq5.6", "Eq5.7",
}


def test_registry_covers_expected_families():
    assert len(tags()) == 33
    for fam in ("Eq2.2", "Lemma3.6", "Lemma3.7", "Eq3.29", "Lemma3.8", "Eq3.39", "Lemma4.2", "Lemma4.3", "Eq5.8"):
        assert resolve_tags([fam])
    assert resolve_tags(["Eq3.40"]) == ["Eq3.40"]
    # a prefix must stop at a dash, so Lemma3.8 does not pull in Lemma3.80-style tags by accident
    assert all(t.startswith("Lemma3.8-") for t in resolve_tags(["Lemma3.8"]))


def test_unknown_tag():
    with pytest.raises(UnknownTag):
        resolve_tags(["Lemma9.9"])
    with pytest.raises(UnknownTag):
        evaluate_case("nope", {})


def test_anticommutator_example():
    case = evaluate_case("Lemma3.6-first", {"u": e(1), "v": e(1)})
    assert case.verdict == "Match"
    assert case.brute_force == -(A0 + B0)


def test_orthogonal_trace_example():
    case = evaluate_case("Eq3.29-last", {"u": e(1), "v": e(2), "w": e(2), "xi": e(3)})
    assert case.verdict == "Match"
    assert case.brute_force.is_zero()


def test_verdict_table():
    for tag in tags():
        cases = check_identity(tag, trials=15)
        verdicts = {c.verdict for c in cases}
        if tag in MISMATCHED:
            assert "Mismatch" in verdicts, tag
        else:
            assert verdicts == {"Match"}, tag


def test_runs_are_deterministic():
    a = [c.to_dict() for c in check_identity("Lemma3.7", trials=10, seed=99)]
    b = [c.to_dict() for c in check_identity("Lemma3.7", trials=10, seed=99)]
    c = [c.to_dict() for c in check_identity("Lemma3.7", trials=10, seed=100)]
    assert a == b and a != c


def test_mismatch_delta_is_brute_minus_closed():
    cases = [c for c in check_identity("Eq5.6", trials=10) if c.verdict == "Mismatch"]
    assert cases
    for c in cases:
        assert c.delta == c.brute_force - c.closed_form


def test_eq56_off_by_trace_of_identity():
    for c in check_identity("Eq5.6", trials=10):
        assert c.brute_force == 16 * c.closed_form


@pytest.mark.parametrize("tag", sorted(t for t in MISMATCHED if REGISTRY[t].kind == "trace"))
def test_fits_reconstruct(tag):
    fit = fit_invariant_form(tag, trials=40)
    assert fit.reconstruction_ok and fit.terms


def test_middle_term_fit_has_half_not_quarter():
    # -a0^2 b0/2 * bracket * 16, identical to the later restatement of the same trace
    fit = fit_invariant_form("Eq3.29-middle")
    assert fit.terms == fit_invariant_form("Eq3.39-last").terms
    assert fit.terms["g(u,v)*xi(w)"] == -(A0**2 * B0) / 2 * 16
    assert fit_invariant_form("Eq3.29-last").terms["g(u,v)*xi(w)"] == A0 * B0**2 / 2 * 16


def test_summary_round_trip():
    s = summarize("Lemma4.3-4", trials=5, fit_trials=30)
    assert s.verdict == "Mismatch" and s.reconstruction.startswith("ok")
    assert TagSummary.from_dict(s.to_dict()).to_dict() == s.to_dict()


def test_numeric_pipeline_examples():
    assert full_pipeline_numeric(1, 1, "torsion").is_zero()
    assert full_pipeline_numeric(1, 1, "one-form").is_zero()
    assert full_pipeline_numeric(1, 1, "sanity") == SphereValue(32, 2)
    assert full_pipeline_numeric(2, 1, "torsion") == SphereValue(Fraction(-45, 2) * I, 2)
    assert full_pipeline_numeric(2, 1, "one-form") == SphereValue(Fraction(45, 4) * I, 2)
    assert full_pipeline_numeric(2, 1, "boundary") == SphereValue(Fraction(-41, 4), 2)
    assert full_pipeline_numeric(2, 1, "sanity") == SphereValue(17, 2)
    with pytest.raises(UnknownFunctional):
        full_pipeline_numeric(1, 1, "volume")


SYMBOLIC_FORMS = {
    "torsion": -12 * I * (A0 - B0) * (A0**4 - B0**4) / (A0**3 * B0**3),
    "one-form": 12 * I * (A0 - B0) * (A0**4 - B0**4) / (A0**4 * B0**4),
    "boundary": -(A0**4 + 6 * A0**2 * B0**2 + B0**4) / (A0**2 * B0**2),
    "sanity": 16 * (A0**4 + B0**4) / (A0**4 * B0**4),
}


@pytest.mark.parametrize("functional", FUNCTIONALS)
def test_numeric_reruns_agree_with_symbolic(functional):
    rng = random.Random(f"pipeline:{functional}")
    for _ in range(6):
        a = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        b = Fraction(rng.randint(1, 9), rng.randint(1, 5)) * rng.choice((1, -1))
        got = full_pipeline_numeric(a, b, functional)
        want = SYMBOLIC_FORMS[functional].subs(a0=a, b0=b)
        assert got == SphereValue(want, 2), (a, b)
