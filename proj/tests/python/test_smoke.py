import math

import pytest

import beattylab as bl

SQRT2 = "(0+1*sqrt(2))/1"
SQRT3 = "(0+1*sqrt(3))/1"
GOLDEN = "(1+1*sqrt(5))/2"


def test_floor_and_membership():
    assert bl.floor_linear(3, SQRT2) == 4
    assert bl.floor_linear(5, SQRT2, "1/2") == 7
    assert bl.is_member("4", SQRT2)
    assert not bl.is_member("3", SQRT2)
    assert bl.is_member("4", SQRT2) == bl.member_witness("4", SQRT2)
    assert bl.enumerate_members("12", SQRT2) == [1, 2, 4, 5, 7, 8, 9, 11, 12]


def test_contfrac():
    cf = bl.cf_expand(SQRT2, 5)
    assert cf["quotients"] == [1, 2, 2, 2, 2]
    assert cf["convergents"][2] == (7, 5)
    assert bl.dirichlet_approx(SQRT2, "10") == (7, 5)
    assert bl.dirichlet_approx(GOLDEN, "50") == (55, 34)
    t = bl.type_estimate(SQRT2, 20)
    assert abs(t["t_lower"] - 1.0) <= 0.05


def test_primes():
    assert bl.primes(90, 100) == [97]
    assert bl.chebyshev_theta(10) == pytest.approx(math.log(210))
    assert bl.von_mangoldt(8) == pytest.approx(math.log(2))
    rep = bl.check_explicit_constants(100)
    assert rep["all_ok"]


def test_expsums():
    # l = 0 term is psi(N)
    z = bl.inner_sum(10, 1, 0, SQRT2, 0)
    assert z.real == pytest.approx(bl.chebyshev_psi(10))
    s = bl.s_theta(50, 3, 3, 2, SQRT2)
    assert s <= 2 * 3 * bl.chebyshev_psi(50, 3, 2) + 1e-9
    vp = bl.vaughan_pieces(1000, 10, 1, 0, SQRT2, 1)
    assert abs(vp["residual"] - vp["head"]) <= 1e-9
    assert abs(vp["residual"]) <= vp["residual_cap"]


def test_theorem_reports():
    r = bl.thm3_experiment(SQRT3, "1.3", 7, 3, 300000)
    assert r["rel_deviation"] < 0.05
    b = bl.thm2_bound("0,0,1", SQRT2)
    assert b["m"] == 1
    assert b["bound"] == pytest.approx(8 * math.sqrt(7))
    assert bl.least_prime_search("0,0,1", SQRT2) == 2
    rb = bl.remark1_bound(SQRT2, "0", 5, 2)
    assert rb["p_m"] == "239"


def test_errors_are_typed():
    with pytest.raises(bl.PreconditionViolated):
        bl.is_member("4", "3/2")  # rational alpha rejected
    with pytest.raises(bl.PrecisionExhausted):
        bl.cf_expand("1.414+-0.001", 10)
