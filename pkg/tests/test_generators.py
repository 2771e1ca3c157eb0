from fractions import Fraction

import pytest

from ffdioph import (
    ConfigError,
    Fq,
    LaurentSeries,
    NEG_INF,
    parse_poly_literal,
    parse_series_literal,
)
from ffdioph.generators import (
    PlantParams,
    cf_series,
    derive_rng,
    generate_matrix,
    generate_series,
    generate_theta,
    lacunary_series,
    plant_membership_pair,
    plant_witness,
    random_series,
    rational_series,
)

F2 = Fq(2)
F3 = Fq(3)


def test_rational_multiply_back():
    num = parse_poly_literal("1", F2)
    den = parse_poly_literal("X + 1", F2)
    r = rational_series(F2, num, den, -4)
    assert r.to_literal() == "X^-4 + X^-3 + X^-2 + X^-1"
    back = r * LaurentSeries.from_poly(den)
    assert back.coeff(0) == 1
    assert all(back.coeff(e) == 0 for e in range(back.floor, 0))


def test_rational_monomial_denominator_exact():
    r = rational_series(F2, parse_poly_literal("X^2 + 1", F2), parse_poly_literal("X", F2), -40)
    assert r.is_exact()
    assert r.to_literal() == "X^-1 + X"


def test_lacunary_example():
    assert lacunary_series(F2, 3, -10).to_literal() == "X^-9 + X^-3 + X^-1"
    assert lacunary_series(F2, 3, -27).to_literal() == "X^-27 + X^-9 + X^-3 + X^-1"


def test_cf_golden_satisfies_quadratic():
    g = cf_series(F2, [1], -50)
    X = parse_series_literal("X", F2)
    rel = g * g + X * g + LaurentSeries.one(F2)
    assert rel.is_known_zero()


def test_cf_prescribed_quotient_degrees():
    # quotients X, X^2 -> convergent denominator degrees 1, 3, 4, 6, ...
    g = cf_series(F2, [1, 2], -30)
    assert g.top == -1
    from ffdioph import SeriesMatrix, best_error

    Y = SeriesMatrix([[g]])
    # first leap: denominator X costs 1 and earns error -(1+2)
    assert best_error(Y, None, 2, "brute").B.value == -3


def test_random_series_determinism():
    a = random_series(F2, -20, derive_rng(5, "x"))
    b = random_series(F2, -20, derive_rng(5, "x"))
    c = random_series(F2, -20, derive_rng(6, "x"))
    assert a == b
    assert a != c
    assert a.floor == -20


def test_generate_series_dispatch():
    assert generate_series("X^-1 + X^-3", F2, -10).is_exact()
    assert generate_series({"kind": "lacunary", "base": 2}, F2, -8).to_literal() == (
        "X^-8 + X^-4 + X^-2 + X^-1"
    )
    with pytest.raises(ConfigError):
        generate_series({"kind": "bogus"}, F2, -8)
    with pytest.raises(ConfigError):
        generate_series({"kind": "random"}, F2, -8)  # rng required


def test_generate_matrix_grid_and_random():
    M = generate_matrix(
        {"kind": "grid", "entries": [["X^-1", {"kind": "lacunary", "base": 2}]]},
        F2,
        1,
        2,
        -8,
        0,
    )
    assert M.entry(0, 0).to_literal() == "X^-1"
    R1 = generate_matrix({"kind": "random"}, F3, 2, 2, -12, 7)
    R2 = generate_matrix({"kind": "random"}, F3, 2, 2, -12, 7)
    assert R1 == R2
    with pytest.raises(ConfigError):
        generate_matrix({"kind": "lacunary", "base": 2}, F2, 2, 2, -8, 0)


def test_generate_theta_forms():
    assert all(t.is_exact_zero() for t in generate_theta("0", F2, 2, -8, 0))
    th = generate_theta(["X^-1", "X^-2"], F2, 2, -8, 0)
    assert th[1].to_literal() == "X^-2"
    with pytest.raises(ConfigError):
        generate_theta(["X^-1"], F2, 2, -8, 0)
    rnd = generate_theta({"kind": "random"}, F2, 2, -8, 3)
    assert rnd == generate_theta({"kind": "random"}, F2, 2, -8, 3)


def test_plant_witness_reverifies_and_repeats():
    params = PlantParams(F2, 1, 2, Fraction(1), Fraction(1), 5, -80)
    a = plant_witness(params, 42)
    b = plant_witness(params, 42)
    assert a.Y == b.Y and a.alpha == b.alpha and a.theta == b.theta
    assert all(not q.is_zero() for q in a.alpha.q)


def test_plant_witness_dim_requirement():
    with pytest.raises(ValueError):
        PlantParams(F2, 2, 2, Fraction(1), Fraction(1), 4, -60)


def test_plant_exact_hit():
    inst = plant_witness(
        PlantParams(F2, 1, 1, Fraction(1), Fraction(1), 3, -60, exact_hit=True), 9
    )
    assert inst.target_err_degs == (NEG_INF,)


def test_membership_pair_determinism():
    a = plant_membership_pair(F3, Fraction(3, 2), 21, -80)
    b = plant_membership_pair(F3, Fraction(3, 2), 21, -80)
    assert a.Y == b.Y and a.alpha == b.alpha and a.alpha2 == b.alpha2
    assert a.alpha.q != a.alpha2.q
