import math

import pytest

from quadrep.dirichlet import (
    DEFAULT_RESIDUE_B,
    SeriesEval,
    chi_table,
    euler_factor_ramified,
    euler_factor_unramified,
    l_truncated,
    residue_at_2,
    series_lhs,
    series_rhs,
    verify_theorem,
    zeta_truncated,
)
from quadrep.arith import primes_upto
from quadrep.ideals import genus_fingerprint, genus_representatives, unit_ideal
from quadrep.quadfield import Discriminant
from quadrep.repnum import g_rep

from conftest import VALID_DISCS

d5 = Discriminant(5)
d21 = Discriminant(21)

# Apery's constant and L(4, chi_5), frozen to full double precision
ZETA_3 = 1.2020569031595943
L4_CHI5 = 0.9293369564949103


def fp_unit(disc):
    return genus_fingerprint(unit_ideal(disc))


def test_series_eval_validation():
    with pytest.raises(ValueError):
        SeriesEval(1.0, 10, -0.5)


def test_euler_factor_pinned():
    assert euler_factor_unramified(d5, 2, 1, 3.0) == 1.5
    got = euler_factor_ramified(d5, 5, 1, 1, 3.0)
    assert abs(got - 25 / 12) < 1e-15
    assert euler_factor_ramified(d5, 5, 1, -1, 3.0) == 0.0


def test_euler_factor_limits():
    # unramified factors tend to 1 as s grows; the ramified one tends to
    # 1 + sigma, which only collapses to 1 when p divides m
    for p, m in ((2, 1), (3, 4), (7, 0)):
        assert abs(euler_factor_unramified(d5, p, m, 40.0) - 1) < 1e-10
    assert abs(euler_factor_ramified(d5, 5, 1, 1, 40.0) - 2) < 1e-10
    assert abs(euler_factor_ramified(d5, 5, 5, 1, 40.0) - 1) < 1e-10


def test_euler_factor_validation():
    with pytest.raises(ValueError):
        euler_factor_unramified(d5, 2, 1, 1.0)
    with pytest.raises(ValueError):
        euler_factor_unramified(d5, 5, 1, 3.0)  # 5 ramifies
    with pytest.raises(ValueError):
        euler_factor_ramified(d5, 2, 1, 1, 3.0)  # 2 does not
    with pytest.raises(ValueError):
        euler_factor_ramified(d5, 5, 1, 0, 3.0)


def test_zeta_truncated():
    ev = zeta_truncated(2.0, 100_000)
    assert abs(ev.value + ev.tail_bound - math.pi**2 / 6) < 1e-9
    one = zeta_truncated(4.0, 1)
    assert one.value == 1.0 and abs(one.tail_bound - 1 / 3) < 1e-15
    a = zeta_truncated(3.0, 10**5)
    b = zeta_truncated(3.0, 10**6)
    assert abs((a.value + a.tail_bound) - (b.value + b.tail_bound)) < 1e-9
    assert abs(b.value + b.tail_bound - ZETA_3) < 1e-12
    with pytest.raises(ValueError):
        zeta_truncated(1.0, 10)
    with pytest.raises(ValueError):
        zeta_truncated(2.0, 0)


def test_chi_table_period_sums_to_zero():
    for D in VALID_DISCS:
        table = chi_table(Discriminant(D))
        assert table.sum() == 0.0
        assert table[0] == 0.0


def test_l_truncated_against_euler_product():
    B = 10**6
    got = l_truncated(d5, 4.0, B).value
    prod = 1.0
    for p in primes_upto(B):
        chi = chi_table(d5)[p % 5]
        prod /= 1.0 - chi * float(p) ** (-4.0)
    assert abs(got - prod) < 1e-8
    assert abs(got - L4_CHI5) < 1e-12


def test_l_at_one_matches_class_number_formula():
    # L(1, chi_5) = 2 log((1+sqrt 5)/2) / sqrt 5
    want = 2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5)
    ev = l_truncated(d5, 1.0, 10**6)
    assert abs(ev.value - want) < ev.tail_bound
    assert abs(ev.value - want) < 5e-6


def test_l_truncated_validation():
    with pytest.raises(ValueError):
        l_truncated(d5, 0.0, 10)
    with pytest.raises(ValueError):
        l_truncated(d5, 2.0, 0)


def test_series_lhs_first_term():
    for disc in (d5, d21):
        for m in (0, 1, 2):
            ev = series_lhs(unit_ideal(disc), m, 4.0, 1)
            assert ev.value == float(g_rep(unit_ideal(disc), m, 1))


def test_series_lhs_oracle_mode():
    for m in (1, 2):
        series_lhs(unit_ideal(d5), m, 4.0, 40, oracle=True)
    series_lhs(unit_ideal(d21), 1, 4.0, 40, oracle=True)


def test_series_lhs_monotone_tail():
    small = series_lhs(unit_ideal(d5), 1, 3.0, 5_000)
    big = series_lhs(unit_ideal(d5), 1, 3.0, 50_000)
    assert big.value >= small.value  # nonnegative terms
    assert big.value - small.value <= small.tail_bound


def test_series_domain_validation():
    with pytest.raises(ValueError):
        series_lhs(unit_ideal(d5), 1, 2.0, 10)
    with pytest.raises(ValueError):
        series_lhs(unit_ideal(d5), 1, 3.0, 0)
    with pytest.raises(ValueError):
        series_rhs(fp_unit(d5), 1, 2.0, 10)


def test_vanishing_sigma_kills_every_term():
    # D = 5, m = 2: the series is identically zero, term by term
    ev = series_lhs(unit_ideal(d5), 2, 4.0, 60, oracle=True)
    assert ev.value == 0.0 and ev.tail_bound == 0.0
    for b in range(1, 61):
        assert g_rep(unit_ideal(d5), 2, b) == 0
    assert series_rhs(fp_unit(d5), 2, 4.0, 10**4) == 0.0


def test_series_rhs_pinned():
    got = series_rhs(fp_unit(d5), 1, 4.0, 10**5)
    assert abs(got - 2 * ZETA_3 / L4_CHI5) < 1e-8
    m0 = series_rhs(fp_unit(d5), 0, 4.0, 10**5)
    l3 = l_truncated(d5, 3.0, 10**5).value
    assert abs(m0 - ZETA_3 * l3 / L4_CHI5) < 1e-8


def test_sides_agree_at_s_4():
    for disc in (d5, d21):
        for rep in genus_representatives(disc):
            fp = genus_fingerprint(rep)
            for m in (-2, -1, 0, 1, 2, 3, 4):
                lhs = series_lhs(rep, m, 4.0, 4000).value
                rhs = series_rhs(fp, m, 4.0, 4000)
                assert abs(lhs - rhs) <= 1e-3 * max(1.0, abs(rhs)), (disc.D, m)


def test_residue_pinned():
    res = residue_at_2(fp_unit(d5), 1)
    want = 2.0 / l_truncated(d5, 2.0, DEFAULT_RESIDUE_B).value
    assert abs(res - want) < 1e-12
    assert abs(res - 2.8320131773125854) < 1e-10
    assert residue_at_2(fp_unit(d5), 2) == 0.0
    m0 = residue_at_2(fp_unit(d5), 0)
    l1 = l_truncated(d5, 1.0, DEFAULT_RESIDUE_B).value
    l2 = l_truncated(d5, 2.0, DEFAULT_RESIDUE_B).value
    assert abs(m0 - l1 / l2) < 1e-12


def test_residue_by_richardson_extrapolation():
    # h f(2+h) -> residue as h -> 0; two Richardson steps from h = 1/2
    for m in (1, 4):
        f = {h: h * series_rhs(fp_unit(d5), m, 2.0 + h, 200_000) for h in (0.5, 0.25, 0.125)}
        t1 = 2 * f[0.25] - f[0.5]
        t2 = 2 * f[0.125] - f[0.25]
        rich = (4 * t2 - t1) / 3
        res = residue_at_2(fp_unit(d5), m)
        assert abs(rich - res) <= 0.01 * abs(res)


def test_verify_theorem_report():
    rep = verify_theorem(unit_ideal(d5), 1, 4.0, 5000)
    assert rep.passed
    assert rep.abs_err <= rep.tol * max(1.0, abs(rep.rhs))
    assert all(fc.ok for fc in rep.factors)
    assert [fc.p for fc in rep.factors][:4] == [2, 3, 5, 7]
    rep3 = verify_theorem(unit_ideal(d5), 1, 3.0, 2000)
    p2 = next(fc for fc in rep3.factors if fc.p == 2)
    assert abs(p2.lhs - 1.5) < 1e-12 and abs(p2.rhs - 1.5) < 1e-12


def test_verify_theorem_vanishing_case():
    rep = verify_theorem(unit_ideal(d21), 3, 4.0, 2000)
    assert rep.passed
    assert rep.lhs.value == 0.0 and rep.rhs == 0.0
