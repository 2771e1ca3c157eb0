import pytest
from hypothesis import given, strategies as st

from ffdioph import Fq, NEG_INF, Poly, parse_poly_literal, poly_divmod

F2 = Fq(2)
F3 = Fq(3)


def P(text, field=F3):
    return parse_poly_literal(text, field)


def test_divmod_examples():
    q, r = poly_divmod(P("X^3 + 2*X + 1"), P("X^2 + 1"))
    assert q == P("X") and r == P("X + 1")
    q, r = poly_divmod(P("X", F2), P("X", F2))
    assert q == P("1", F2) and r.is_zero()
    q, r = poly_divmod(P("1", F2), P("X", F2))
    assert q.is_zero() and r == P("1", F2)


def test_divmod_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(P("X"), Poly.zero(F3))


def coeff_lists(p, max_len=6):
    return st.lists(st.integers(0, p - 1), min_size=0, max_size=max_len)


@given(coeff_lists(3), coeff_lists(3, 4))
def test_divmod_reconstruction(ac, bc):
    a, b = Poly(F3, ac), Poly(F3, bc)
    if b.is_zero():
        return
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.deg < b.deg


@given(coeff_lists(2), coeff_lists(2))
def test_degree_multiplicative(ac, bc):
    a, b = Poly(F2, ac), Poly(F2, bc)
    prod = a * b
    if a.is_zero() or b.is_zero():
        assert prod.is_zero()
    else:
        assert prod.deg == a.deg + b.deg


def test_zero_degree_is_minus_infinity():
    assert Poly.zero(F2).deg == NEG_INF
    assert Poly.one(F2).deg == 0


def test_literal_roundtrip():
    for text in ("0", "1", "X", "2*X^2 + 1", "X^3 + X"):
        p = P(text)
        assert parse_poly_literal(p.to_literal(), F3) == p


def test_extension_coefficient_literals():
    F4 = Fq(2, 2)
    p = parse_poly_literal("[0,1]*X^2 + 1", F4)
    assert p.coeff(2) == F4.from_coords([0, 1])
    assert parse_poly_literal(p.to_literal(), F4) == p


def test_negative_exponent_rejected():
    from ffdioph import ParseError

    with pytest.raises(ParseError):
        parse_poly_literal("X^-1", F2)
