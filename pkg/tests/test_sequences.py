import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NORTHSHIELD_TABLE, gamma_values, stern_integers
from qreg.certificate import check, seed_is_fixed, verify_reversal
from qreg.digits import reverse
from qreg.rings import BiPoly, QuadExt, poly_eval
from qreg.sequences import (GROWTH_EXPONENT, ExcludedParameterError, ParametricFamily, RunLengths,
                            binary_runs, cf_numerator, gamma_certificate, gamma_empirical,
                            gamma_rep, growth_blocks, growth_ratio, northshield_certificate,
                            northshield_rep, northshield_symmetry, northshield_table,
                            parametric_certificate, parametric_rep, reversed_cf_same_numerator,
                            stern_certificate, stern_number, stern_numeric_rep, stern_poly,
                            stern_poly_rep, stern_rep, symbolic_parametric)

R2 = QuadExt(2, 0, 1)
HALF = Fraction(1, 2)
X, Y = BiPoly.gens()


# ------------------------------------------------------------ parametric

def test_parametric_at_sqrt2_is_northshield():
    rep = parametric_rep(R2, R2)
    assert [rep.eval(n) for n in range(28)] == [QuadExt(2, r, i) for r, i in NORTHSHIELD_TABLE]


def test_parametric_family_object():
    fam = ParametricFamily(Fraction(1, 3), 2)
    assert fam.omega == 1 - 4 + Fraction(2, 3)
    assert check(fam.rep(), fam.certificate()).passed


def test_parametric_certificate_examples():
    cert = parametric_certificate(5, 5)
    assert (cert.c, cert.d) == (-HALF, HALF)
    rep, cert = symbolic_parametric()
    assert cert.det() == 1
    report = check(rep, cert)
    assert report.passed
    assert all(r == BiPoly({}, ("tau", "sigma")) for r in report.residuals)


@pytest.mark.parametrize("seed", range(20))
def test_random_parametric_pairs(seed):
    rng = random.Random(1000 + seed)
    tau = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
    sigma = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
    rep = parametric_rep(tau, sigma)
    assert check(rep, parametric_certificate(tau, sigma)).passed
    assert verify_reversal(rep, 3 ** 6) is None


# ------------------------------------------------------------------ Stern

def test_stern_rep_examples():
    assert stern_numeric_rep().eval(11) == 5
    assert stern_poly_rep().eval(5) == X + X * Y + Y ** 2
    assert stern_rep(Fraction(2, 7), -3).eval(1) == 1


def test_stern_rep_rejects_zero_x():
    with pytest.raises(ExcludedParameterError):
        stern_rep(0, 2)


def test_stern_certificate_examples():
    cert = stern_certificate(2, 3)
    g = QuadExt(3, 0, HALF)
    assert cert.a == g and cert.b == 1 and cert.c == -HALF
    assert cert.d * 2 * g == 1
    assert cert.det() == 1
    assert stern_certificate(Fraction(3, 7), Fraction(3, 7)).a == HALF
    # u = gamma, v = -1/2, w = -1/(4 gamma): u w = v (v + 1)
    u, v, w = cert.a * cert.b, cert.b * cert.c, cert.c * cert.d
    assert u * w == v * (v + 1)


@pytest.mark.parametrize("x, y", [(0, 2), (1, 2), (2, 0), (2, 1), (1, 1)])
def test_stern_certificate_excluded(x, y):
    with pytest.raises(ExcludedParameterError):
        stern_certificate(x, y)


def test_stern_number_examples():
    assert stern_number(11) == stern_number(13) == 5
    assert stern_number(0) == 0
    assert stern_poly(3) == X + Y
    assert all(stern_poly(2 ** k) == 1 for k in range(12))
    with pytest.raises(ValueError):
        stern_poly(0)


def test_stern_poly_specializes_to_numbers():
    expected = stern_integers(2 ** 12)
    assert all(poly_eval(stern_poly(n), 1, 1) == stern_number(n) == expected[n]
               for n in range(1, 2 ** 12))


def test_stern_numeric_reversal_to_2_16():
    assert verify_reversal(stern_numeric_rep(), 2 ** 16) is None


# ------------------------------------------------------------------ gamma

def test_gamma_examples():
    rep = gamma_rep(2, 0.3)
    assert rep.eval(0).close(1, 1e-15)
    for q in (2, 3):
        zero = gamma_rep(q, 0.0)
        assert all(zero.eval(t).close(1, 1e-12) for t in range(100))
    for q, theta in [(2, 0.25), (5, 0.7)]:
        report = check(gamma_rep(q, theta), gamma_certificate(q, theta), tol=1e-9)
        assert report.passed and report.det_is_one


def test_gamma_seed_denominator_bounded_away_from_zero():
    # |q e(-theta) - e(-theta q)| >= q - 1, so the degenerate case never triggers
    for q in (2, 3, 7):
        for i in range(200):
            theta = i / 200
            assert abs(gamma_rep(q, theta).beta) > 0


def test_gamma_empirical_trivial_cases():
    assert gamma_empirical(3, 0.4, 0, 17).close(1, 0)
    assert gamma_empirical(2, 0.0, 5, 1000).close(1, 0)
    with pytest.raises(ValueError):
        gamma_empirical(2, 0.3, 1, 0)


def test_gamma_empirical_example():
    est = gamma_empirical(2, 0.5, 1, 10 ** 6)
    assert est.close(gamma_rep(2, 0.5).eval(1), 1e-2)
    assert gamma_empirical(3, 1 / 3, 5, 10 ** 6).close(gamma_rep(3, 1 / 3).eval(5), 1e-2)


@pytest.mark.parametrize("q", [2, 3])
def test_gamma_cross_validation(q):
    rng = random.Random(q)
    theta = 0.37
    rep = gamma_rep(q, theta)
    for t in rng.sample(range(q ** 5), 20):
        assert rep.eval(t).close(gamma_empirical(q, theta, t, 10 ** 6), 1e-2)


def test_gamma_reversal_against_recurrence():
    g = gamma_values(3, 0.1, 3 ** 6)
    assert all(g[t].close(g[reverse(t, 3)], 1e-9) for t in range(1, 3 ** 6))


def test_builtin_seeds_are_fixed_by_first_matrix():
    reps = [northshield_rep(), parametric_rep(3, -2), stern_rep(2, 3), stern_poly_rep()]
    assert all(seed_is_fixed(r) for r in reps)
    assert seed_is_fixed(gamma_rep(3, 0.3), tol=1e-12)


# ------------------------------------------------------ continued fractions

def test_binary_runs_orientation():
    assert binary_runs(5).runs == (1, 1, 1)
    assert binary_runs(11).runs == (1, 1, 2)
    assert binary_runs(19).runs == (1, 2, 2)
    for n in (5, 11, 19):
        assert cf_numerator(binary_runs(n)) == stern_number(n)
    assert binary_runs(1).runs == (1,)
    assert RunLengths((1, 1, 2)).to_int() == 11


def test_cf_numerator_examples():
    assert cf_numerator([1, 1, 1]) == 3
    assert cf_numerator([1, 1, 2]) == cf_numerator([2, 1, 1]) == 5
    assert reversed_cf_same_numerator([7])


@pytest.mark.parametrize("n", [0, 2, 64, -3])
def test_binary_runs_rejects(n):
    with pytest.raises(ValueError):
        binary_runs(n)


def test_runs_validation():
    with pytest.raises(ValueError):
        cf_numerator([])
    with pytest.raises(ValueError):
        RunLengths((1, 0, 2))
    with pytest.raises(ValueError):
        RunLengths((1, 2)).to_int()


def test_cf_bridge_sweep():
    s = stern_integers(2 ** 14)
    assert all(cf_numerator(binary_runs(n)) == s[n] for n in range(1, 2 ** 14, 2))


def test_random_reversed_runs():
    rng = random.Random(20170101)
    for _ in range(500):
        runs = [rng.randint(1, 5) for _ in range(rng.randint(1, 8))]
        assert reversed_cf_same_numerator(runs)


@given(st.lists(st.integers(1, 12), min_size=1, max_size=10).filter(lambda r: len(r) % 2))
def test_runs_roundtrip_and_reversal(runs):
    n = RunLengths(tuple(runs)).to_int()
    assert binary_runs(n).runs == tuple(runs)
    assert stern_number(reverse(n, 2)) == stern_number(n) == cf_numerator(runs)


# --------------------------------------------------- symmetry and growth

def test_symmetry_examples():
    b = northshield_rep()
    assert b.eval(5) == b.eval(7) == 3
    assert northshield_symmetry(2) is None
    assert all(b.eval(3 ** k) == b.eval(3 ** (k + 1)) == 1 for k in range(6))
    with pytest.raises(ValueError):
        northshield_symmetry(-1)


def test_symmetry_up_to_8():
    assert all(northshield_symmetry(k) is None for k in range(9))


def test_symmetry_detects_a_broken_sequence():
    # tau != sigma breaks the mirror symmetry while keeping reversal
    rep = parametric_rep(1, 2)
    assert verify_reversal(rep, 3 ** 5) is None
    assert northshield_symmetry(2, rep) is not None


def test_northshield_table_matches_eval():
    R, I = northshield_table(3 ** 7)
    b = northshield_rep()
    assert all(b.eval(n) == QuadExt(2, int(R[n]), int(I[n])) for n in range(3 ** 7))


def test_growth_ratio_two_ways():
    direct = 2 * 1 / 2 ** math.log(math.sqrt(2) + 1, 3)
    via_logs = math.exp(math.log(2) - GROWTH_EXPONENT * math.log(2))
    assert abs(growth_ratio(1, 1, 0) - direct) <= 1e-12
    assert abs(growth_ratio(1, 1, 0) - via_logs) <= 1e-12


@pytest.fixture(scope="module")
def growth():
    return growth_blocks(12)


def test_growth_blocks_shape(growth):
    assert [b.k for b in growth.blocks] == list(range(2, 13))
    assert all(3 ** b.k <= b.argmax < 3 ** (b.k + 1) for b in growth.blocks)
    assert growth.to_json()["blocks"][0]["argmax"] == 13


def test_growth_maxima_decrease_towards_one(growth):
    m = growth.maxima
    assert all(a > b for a, b in zip(m, m[1:]))
    assert all(v > 1 for v in m)
    assert 0.8 <= m[-1] <= 1.001


def test_growth_argmax_pattern(growth):
    # the maximum of each block sits at (3^(k+1) - 1) / 2 = (11...1)_3
    assert all(b.argmax == (3 ** (b.k + 1) - 1) // 2 for b in growth.blocks)


def test_growth_rejects_small_kmax():
    with pytest.raises(ValueError):
        growth_blocks(1)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3 ** 8 - 1))
def test_growth_ratio_matches_exact_value(n):
    R, I = northshield_table(3 ** 8)
    exact = northshield_rep().eval(n)
    assert growth_ratio(n, int(R[n]), int(I[n])) == pytest.approx(
        2 * float(exact) / (2 * n) ** GROWTH_EXPONENT, rel=1e-14)


def test_northshield_certificate_matches_family():
    assert northshield_certificate() == parametric_certificate(R2, R2)
