from fractions import Fraction

import pytest

from ffdioph import (
    Fq,
    SeriesMatrix,
    check_bz,
    check_dirichlet_bound,
    check_dyson,
    check_mult_dominance,
    estimate,
    parse_series_literal,
    profile,
)
from ffdioph.generators import cf_series, derive_rng, lacunary_series, random_series

F2 = Fq(2)


def single(entry):
    return SeriesMatrix([[entry]])


def rand_matrix(m, n, seed, floor=-50):
    return SeriesMatrix(
        [
            [random_series(F2, floor, derive_rng(seed, "Y", i, j)) for j in range(n)]
            for i in range(m)
        ]
    )


def test_dirichlet_bound_golden_equality():
    prof = profile(single(cf_series(F2, [1], -40)), None, 8, "standard")
    rep = check_dirichlet_bound(prof)
    assert rep.holds and rep.exact
    # equality at every horizon for the all-degree-one quotient series
    assert all(-e.B.value == e.T for e in prof.entries)


@pytest.mark.parametrize("dims", [(1, 1), (1, 2), (2, 1)])
def test_dirichlet_bound_random(dims):
    m, n = dims
    for i in range(6):
        prof = profile(rand_matrix(m, n, 1000 + i), None, 10, "standard")
        assert check_dirichlet_bound(prof).holds


def test_dirichlet_bound_requires_standard():
    prof = profile(single(random_series(F2, -40, derive_rng(1, "x"))), None, 6, "multiplicative")
    with pytest.raises(ValueError):
        check_dirichlet_bound(prof)


def test_mult_dominance_random():
    for i in range(4):
        Y = rand_matrix(1, 2, 2000 + i, floor=-40)
        ps = profile(Y, None, 7, "standard", "brute")
        pm = profile(Y, None, 7, "multiplicative")
        rep = check_mult_dominance(ps, pm)
        assert rep.holds and rep.exact and rep.details["compared"] == 7


def test_mult_dominance_kind_check():
    Y = single(random_series(F2, -40, derive_rng(3, "k")))
    ps = profile(Y, None, 6, "standard")
    with pytest.raises(ValueError):
        check_mult_dominance(ps, ps)


def test_bz_zero_shift_zero_tol_structural():
    # with theta = 0 and tol = 0 the bound collapses onto the pigeonhole
    # floor, so it must hold for any uncensored finite profile
    for i in range(5):
        Y = rand_matrix(1, 2, 3000 + i)
        rep = check_bz(Y, None, 16, Fraction(0))
        assert rep.holds


def test_bz_infinite_short_circuit():
    Y = single(parse_series_literal("X^-1", F2))
    rep = check_bz(Y, None, 12, Fraction(3, 10))
    assert rep.holds and "infinite" in rep.note


def test_bz_inhomogeneous_diagnostic():
    for i in range(4):
        Y = rand_matrix(1, 2, 4000 + i)
        theta = (random_series(F2, -50, derive_rng(4000 + i, "th")),)
        rep = check_bz(Y, theta, 20, Fraction(3, 10))
        assert rep.holds
        assert rep.details["margin_lower"] >= 0


def test_dyson_square_one_symmetric():
    Y = single(random_series(F2, -50, derive_rng(7, "d")))
    rep = check_dyson(Y, 16, Fraction(1, 4))
    assert rep.holds  # Y equals its own transpose when m = n = 1


def test_dyson_biconditional_far_side():
    # lacunary series: proxy well above 1 on both orientations
    Y = single(lacunary_series(F2, 3, -80))
    rep = check_dyson(Y, 20, Fraction(1, 4))
    assert rep.holds
    assert rep.details == {} or not rep.details.get("near_one", True)


def test_dyson_inconclusive_when_censored():
    Y = single(random_series(F2, -24, derive_rng(8, "c")))
    rep = check_dyson(Y, 12, Fraction(1, 4))
    assert rep.holds in (True, None)


def test_chain_mult_above_standard_proxy():
    # multiplicative proxy >= standard proxy >= 1 - tol whenever the
    # transposed uniform proxy sits near 1
    tol = Fraction(3, 10)
    for i in range(3):
        Y = rand_matrix(1, 2, 5000 + i, floor=-40)
        theta = (random_series(F2, -40, derive_rng(5000 + i, "th")),)
        ps = profile(Y, theta, 8, "standard", "brute")
        pm = profile(Y, theta, 8, "multiplicative")
        es, em = estimate(ps), estimate(pm)
        if es.infinite or em.infinite:
            continue
        assert em.omega_proxy >= es.omega_proxy
        et = estimate(profile(Y.transpose(), None, 16, "standard"))
        if not et.infinite and et.omega_hat_proxy <= 1 + tol:
            assert es.omega_proxy >= 1 - tol


def test_mult_dominance_exact_hits_on_both_sides():
    from ffdioph import LaurentSeries

    Y = single(LaurentSeries.zero(F2))
    ps = profile(Y, None, 6, "standard", "brute")
    pm = profile(Y, None, 6, "multiplicative")
    rep = check_mult_dominance(ps, pm)
    assert rep.holds  # both sides exactly zero error
