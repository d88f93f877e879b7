"""Tests for Galois parameters, bounds, counting, and specialization search."""

from fractions import Fraction
from math import sqrt

import pytest

from fqpencil.field import make_field
from fqpencil.parsing import parse_poly
from fqpencil.counting import (
    application_bound,
    check_hypotheses,
    count_irreducible_pairs,
    find_specialization,
    galois_parameters,
    genus_closed_form,
    geyer_jarden_rhs,
    geyer_jarden_rhs_bounds,
    verify_application,
)
from fqpencil.errors import DegreeTooSmall, HypothesisViolation
from fqpencil.intervals import (
    fourth_root_bounds,
    mul_bounds,
    q_pow_half_bounds,
    q_pow_quarter_bounds,
    sqrt_bounds,
)
from fqpencil.unipoly import is_irreducible


F5 = make_field(5, 1)
F7 = make_field(7, 1)


# ---------------------------------------------------------------------------
# Interval arithmetic


def test_sqrt_bounds_enclose():
    for x in [2, 3, 7, 331, Fraction(10, 3), 10**12 + 7]:
        lo, hi = sqrt_bounds(x)
        assert lo * lo <= Fraction(x) <= hi * hi
        assert hi - lo < Fraction(1, 10**20)


def test_sqrt_bounds_exact_square():
    lo, hi = sqrt_bounds(49)
    assert lo <= 7 <= hi


def test_sqrt_bounds_negative_raises():
    with pytest.raises(ValueError):
        sqrt_bounds(-1)


def test_fourth_root_bounds_enclose():
    for x in [5, 81, 14641]:
        lo, hi = fourth_root_bounds(x)
        assert lo**4 <= x <= hi**4


def test_q_pow_bounds():
    lo, hi = q_pow_half_bounds(7, 2)
    assert lo == hi == 7
    lo, hi = q_pow_half_bounds(7, 3)
    assert lo * lo <= 7**3 <= hi * hi
    lo, hi = q_pow_quarter_bounds(7, 4)
    assert lo == hi == 7
    lo, hi = q_pow_quarter_bounds(7, 1)
    assert lo**4 <= 7 <= hi**4


def test_mul_bounds_signs():
    lo, hi = mul_bounds((Fraction(-2), Fraction(3)), (Fraction(-5), Fraction(4)))
    assert lo == -15 and hi == 12


# ---------------------------------------------------------------------------
# Galois parameters


def test_galois_parameters_conic():
    gd = galois_parameters([2])
    assert gd.N == 2
    assert gd.genus_closure == 1
    assert gd.genus_sanity == 0
    assert gd.discrepancy
    assert gd.branch_degrees == (2,)


def test_galois_parameters_cubic():
    gd = galois_parameters([3])
    assert gd.N == 6
    assert gd.genus_closure == 13
    assert gd.genus_sanity is None
    assert not gd.discrepancy
    assert gd.branch_degrees == (6,)


def test_galois_parameters_pair():
    gd = galois_parameters([2, 3])
    assert gd.N == 12
    assert gd.genus_closure == 37
    assert gd.branch_degrees == (2, 6)


def test_galois_parameters_rejects_small_degree():
    with pytest.raises(HypothesisViolation):
        galois_parameters([1])
    with pytest.raises(HypothesisViolation):
        galois_parameters([])


def test_genus_closed_form_matches_closure_track():
    for d in (2, 3, 4, 5):
        gd = galois_parameters([d])
        assert genus_closed_form(d, gd.N) == gd.genus_closure


# ---------------------------------------------------------------------------
# Bounds


def test_geyer_jarden_rhs_values():
    assert geyer_jarden_rhs(7, 1, 2, 1) == pytest.approx(-6.418079, abs=1e-5)
    assert geyer_jarden_rhs(331, 1, 2, 1) == pytest.approx(121.847816, abs=1e-5)


def test_geyer_jarden_bounds_enclose_float():
    for (q, s, N, g) in [(7, 1, 2, 1), (7, 3, 2, 1), (331, 1, 2, 1),
                         (7, 2, 6, 13), (7, 5, 12, 37)]:
        lo, hi = geyer_jarden_rhs_bounds(q, s, N, g)
        ref = (q**s - (N + 2 * g) * q ** (s / 2) - N * q ** (s / 4)
               - 2 * (g + N)) / N
        assert float(lo) <= ref + 1e-9 and ref - 1e-9 <= float(hi)
        assert float(hi - lo) < 1e-9 * max(1.0, abs(ref))


def test_application_bound_values():
    b = application_bound(331, 2)
    assert b.app_threshold_ok
    assert b.positive
    assert b.app_bound == pytest.approx(245.270506, abs=1e-5)
    # independent float evaluation of the displayed formula
    ref = (331 - 2**4 / 2) * (331 - 3 * 6 * sqrt(331) - 2) / 2
    assert b.app_bound == pytest.approx(ref, abs=1e-6)


def test_application_bound_threshold_not_met():
    b = application_bound(7, 2)
    assert not b.app_threshold_ok


def test_application_bound_degree_guard():
    with pytest.raises(DegreeTooSmall):
        application_bound(331, 1)


# ---------------------------------------------------------------------------
# Exhaustive counting


def _brute_count(f, E):
    """Independent oracle: scalar restriction plus general irreducibility."""
    d = f.total_degree()
    full = incl = 0
    for ai in range(E.q):
        for bi in range(E.q):
            g = f.restrict_to_line(E.element_at(ai), E.element_at(bi))
            if g.degree() < 1:
                continue
            if g.degree() == 1 or is_irreducible(g):
                incl += 1
                if g.degree() == d:
                    full += 1
    return full, incl


def test_count_conic_f7():
    rep = count_irreducible_pairs(parse_poly("x^2+x-t", F7), F7)
    assert (rep.count_full_degree, rep.count_inclusive) == (18, 25)
    assert rep.total_pairs == 49


def test_count_cubic_f7():
    rep = count_irreducible_pairs(parse_poly("t^3+x^3+1", F7), F7)
    assert (rep.count_full_degree, rep.count_inclusive) == (6, 15)


def test_count_conic_f9():
    F9 = make_field(3, 2)
    rep = count_irreducible_pairs(parse_poly("x^2+x-t", F9), F9)
    assert (rep.count_full_degree, rep.count_inclusive) == (32, 41)


def test_counts_match_brute_force():
    for text, E in [("x^2+x-t", F7), ("t^3+x^3+1", F7), ("x^2+x-t", F5),
                    ("x^2+t^3+t+1", F5), ("x^2+x-t", make_field(3, 2))]:
        f = parse_poly(text, E)
        rep = count_irreducible_pairs(f, E)
        assert (rep.count_full_degree, rep.count_inclusive) == _brute_count(f, E)


def test_counts_thread_invariant():
    f = parse_poly("x^2+x-t", make_field(31, 1))
    base = count_irreducible_pairs(f, f.field, threads=1)
    for threads in (4, 8):
        rep = count_irreducible_pairs(f, f.field, threads=threads)
        assert rep.count_full_degree == base.count_full_degree
        assert rep.count_inclusive == base.count_inclusive


def test_count_rejects_bad_characteristic():
    F3 = make_field(3, 1)
    with pytest.raises(HypothesisViolation):
        count_irreducible_pairs(parse_poly("t^3+x^3+1", F3), F3)


def test_count_rejects_constants():
    with pytest.raises(HypothesisViolation):
        count_irreducible_pairs(parse_poly("x+t", F7), F7)


# ---------------------------------------------------------------------------
# Hypothesis checks


def test_check_hypotheses_accepts_pair():
    fs = [parse_poly("x^2+x-t", F7), parse_poly("t^3+x^3+1", F7)]
    check_hypotheses(fs, F7)


def test_check_hypotheses_rejects_char_two():
    F4 = make_field(2, 2)
    with pytest.raises(HypothesisViolation):
        check_hypotheses([parse_poly("x^2+x+t", F4)], F4)


def test_check_hypotheses_rejects_singular():
    with pytest.raises(HypothesisViolation):
        check_hypotheses([parse_poly("x^2-t^3", F7)], F7)


def test_check_hypotheses_rejects_proportional():
    fs = [parse_poly("x^2+x-t", F7), parse_poly("2*x^2+2*x-2*t", F7)]
    with pytest.raises(HypothesisViolation):
        check_hypotheses(fs, F7)


# ---------------------------------------------------------------------------
# Specialization search


def test_find_specialization_pair():
    fs = [parse_poly("x^2+x-t", F7), parse_poly("t^3+x^3+1", F7)]
    res = find_specialization(fs, F7, s_max=3)
    assert res.s == 2
    assert res.a == (1, 0)
    assert res.b == (3, 1)
    assert len(res.witnesses) == 2
    # re-verify the witness independently
    E = make_field(7, 2)
    for f, w in zip(fs, res.witnesses):
        g = f.map_to(E).restrict_to_line(res.a, res.b)
        assert g.degree() == f.total_degree()
        assert is_irreducible(g)
        assert w["degree"] == g.degree()


def test_find_specialization_single_curve():
    res = find_specialization(parse_poly("x^2+x-t", F7), F7, s_max=1)
    assert res.s == 1
    E = F7
    g = parse_poly("x^2+x-t", F7).restrict_to_line(res.a, res.b)
    assert g.degree() == 2 and is_irreducible(g)


# ---------------------------------------------------------------------------
# End-to-end verdicts


def test_verify_application_pass():
    F331 = make_field(331, 1)
    report = verify_application(parse_poly("x^2+x-t", F331), F331)
    assert report["verdict"] == "PASS"
    assert report["count_inclusive"] == 54781
    assert report["count_full_degree"] == 54450


def test_verify_application_threshold_not_met():
    report = verify_application(parse_poly("x^2+x-t", F7), F7)
    assert report["verdict"] == "THRESHOLD_NOT_MET"


def test_verify_application_hypothesis_fail():
    report = verify_application(parse_poly("x^2-t^3", F7), F7)
    assert report["verdict"] == "HYPOTHESIS_FAIL"
