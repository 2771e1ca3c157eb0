"""Instance generators: series from structured specs, random matrices, and
planted premise witnesses.

All randomness is counter-based: every draw comes from a fresh
``random.Random`` seeded with a string derived from (seed, role tags), so
parallel generation is order-independent and runs reproduce byte-for-byte.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .approx import Witness, witness_error_degs
from .errors import ConfigError
from .field import Fq
from .matrix import SeriesMatrix, prod_plus_deg, zero_theta
from .poly import NEG_INF, Poly
from .series import LaurentSeries, deg_lt, deg_max, deg_sum, parse_series_literal


def derive_rng(seed: int, *tags) -> random.Random:
    key = f"{seed}|" + "/".join(str(t) for t in tags)
    return random.Random(key)


def random_series(field: Fq, floor: int, rng: random.Random) -> LaurentSeries:
    """Digits uniform over F_q on exponents -1 down to floor."""
    if floor >= 0:
        raise ConfigError("random series need a negative floor")
    coeffs = [rng.randrange(field.q) for _ in range(-1, floor - 1, -1)]
    return LaurentSeries(field, -1, coeffs, floor)


def random_poly(field: Fq, deg: int, rng: random.Random) -> Poly:
    """Uniform polynomial of degree exactly deg (deg < 0 gives zero)."""
    if deg < 0:
        return Poly.zero(field)
    coeffs = [rng.randrange(field.q) for _ in range(deg)]
    coeffs.append(rng.randrange(1, field.q))
    return Poly(field, coeffs)


def lacunary_series(field: Fq, base: int, floor: int) -> LaurentSeries:
    """Sum of X^(-base^k) for all base^k within the floor."""
    if base < 2:
        raise ConfigError("lacunary base must be >= 2")
    if floor >= -1:
        raise ConfigError("lacunary series need floor <= -2")
    terms = {}
    e = 1
    while e <= -floor:
        terms[-e] = 1
        e *= base
    return LaurentSeries.from_terms(field, terms, floor)


def cf_series(field: Fq, degrees, floor: int) -> LaurentSeries:
    """Series with prescribed partial-quotient degrees (quotients X^d).

    Built by the convergent recurrence; the degree list cycles if it runs
    out before the requested depth is reached.
    """
    degrees = [int(d) for d in degrees]
    if not degrees or any(d < 1 for d in degrees):
        raise ConfigError("quotient degrees must be positive integers")
    if floor >= 0:
        raise ConfigError("cf series need a negative floor")
    p_prev, p_cur = Poly.one(field), Poly.zero(field)
    q_prev, q_cur = Poly.zero(field), Poly.one(field)
    deg_cur = 0
    deg_prev = None
    i = 0
    while deg_prev is None or deg_prev + deg_cur < -floor + 1:
        d = degrees[i % len(degrees)]
        i += 1
        a = Poly.x_power(field, d)
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        deg_prev, deg_cur = deg_cur, deg_cur + d
    num = LaurentSeries.from_poly(p_cur)
    inv_floor = floor - max(0, p_cur.deg if p_cur.deg != NEG_INF else 0) - 1
    den_inv = LaurentSeries.from_poly(q_cur).inverse(inv_floor)
    return (num * den_inv).truncate(floor)


def rational_series(field: Fq, num: Poly, den: Poly, floor: int) -> LaurentSeries:
    if den.is_zero():
        raise ConfigError("rational series denominator is zero")
    if num.is_zero():
        return LaurentSeries.zero(field)
    dseries = LaurentSeries.from_poly(den)
    if len(dseries.coeffs) == 1:
        # monomial denominator: the quotient is an exact Laurent polynomial
        return LaurentSeries.from_poly(num) * dseries.inverse(0)
    inv_floor = floor - max(0, num.deg) - 1
    out = LaurentSeries.from_poly(num) * dseries.inverse(inv_floor)
    return out.truncate(floor)


def generate_series(spec, field: Fq, floor: int, rng: random.Random | None = None):
    """Build one series from a structured spec (dict or literal string)."""
    from .poly import parse_poly_literal

    if isinstance(spec, str):
        return parse_series_literal(spec, field)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"bad series spec: {spec!r}")
    kind = spec["kind"]
    if kind == "literal":
        return parse_series_literal(spec["text"], field)
    if kind == "rational":
        num = parse_poly_literal(spec["num"], field)
        den = parse_poly_literal(spec["den"], field)
        return rational_series(field, num, den, floor)
    if kind == "lacunary":
        return lacunary_series(field, int(spec["base"]), floor)
    if kind == "cf":
        return cf_series(field, spec["degrees"], floor)
    if kind == "random":
        if rng is None:
            raise ConfigError("random series spec needs an rng")
        return random_series(field, floor, rng)
    raise ConfigError(f"unknown series kind {kind!r}")


def generate_matrix(
    spec, field: Fq, m: int, n: int, floor: int, seed: int, tag: str = "Y"
) -> SeriesMatrix:
    """Matrix of series; random entries draw independent substreams."""
    if isinstance(spec, dict) and spec.get("kind") == "grid":
        entries = spec["entries"]
        if len(entries) != m or any(len(r) != n for r in entries):
            raise ConfigError("grid entries must be an m x n array")
        rows = [
            [
                generate_series(
                    entries[i][j], field, floor, derive_rng(seed, tag, i, j)
                )
                for j in range(n)
            ]
            for i in range(m)
        ]
        return SeriesMatrix(rows)
    if isinstance(spec, (str, dict)):
        kind = spec.get("kind") if isinstance(spec, dict) else "literal"
        if kind == "random":
            rows = [
                [
                    random_series(field, floor, derive_rng(seed, tag, i, j))
                    for j in range(n)
                ]
                for i in range(m)
            ]
            return SeriesMatrix(rows)
        if m == 1 and n == 1:
            return SeriesMatrix([[generate_series(spec, field, floor)]])
        raise ConfigError(
            "matrix specs beyond 1x1 need kind='random' or kind='grid'"
        )
    raise ConfigError(f"bad matrix spec: {spec!r}")


def generate_theta(spec, field: Fq, m: int, floor: int, seed: int):
    if spec in (None, 0, "0", "zero"):
        return zero_theta(field, m)
    if isinstance(spec, dict) and spec.get("kind") == "random":
        return tuple(
            random_series(field, floor, derive_rng(seed, "theta", i))
            for i in range(m)
        )
    if isinstance(spec, list):
        if len(spec) != m:
            raise ConfigError("theta literal list must have one entry per row")
        return tuple(generate_series(s, field, floor) for s in spec)
    if isinstance(spec, str):
        if m != 1:
            raise ConfigError("single theta literal needs m = 1")
        return (generate_series(spec, field, floor),)
    raise ConfigError(f"bad theta spec: {spec!r}")


# ---------------------------------------------------------------------------
# planted premise witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlantParams:
    field: Fq
    m: int
    n: int
    eta: Fraction
    eps: Fraction
    T: int
    floor: int
    err_margin: int = 2
    theta_random: bool = True
    exact_hit: bool = False

    def __post_init__(self):
        if self.m != 1 and self.n != 1:
            raise ValueError("planting needs m = 1 (row) or n = 1 (column)")
        object.__setattr__(self, "eta", Fraction(self.eta))
        object.__setattr__(self, "eps", Fraction(self.eps))


@dataclass(frozen=True)
class PlantedInstance:
    Y: SeriesMatrix
    theta: tuple
    alpha: Witness
    T: int
    eta: Fraction
    eps: Fraction
    target_err_degs: tuple


def _noise_series(field: Fq, top: int, floor: int, rng: random.Random):
    """Series with exact leading exponent `top` and random tail."""
    coeffs = [rng.randrange(1, field.q)]
    coeffs.extend(rng.randrange(field.q) for _ in range(top - 1, floor - 1, -1))
    return LaurentSeries(field, top, coeffs, floor)


def solve_matrix_for_residual(
    field: Fq, q, p, theta, deltas, floor: int, seed: int, tag: str = "solve"
) -> SeriesMatrix:
    """Matrix Y with Y q + p + theta = delta row by row.

    The highest-degree coordinate of q is the pivot column; all other
    entries are random, and each row's pivot entry is solved by one series
    division.  Exact down to the requested floor.
    """
    m, n = len(p), len(q)
    qs = [LaurentSeries.from_poly(qj) for qj in q]
    pivot = max(range(n), key=lambda j: (q[j].deg, j))
    if q[pivot].is_zero():
        raise ValueError("q must have a nonzero coordinate")
    inv_floor = floor - 8 - 2 * max(0, q[pivot].deg)
    q_inv = qs[pivot].inverse(inv_floor)
    rows = []
    for i in range(m):
        others = {
            j: random_series(field, floor, derive_rng(seed, tag, i, j))
            for j in range(n)
            if j != pivot
        }
        acc = deltas[i] - LaurentSeries.from_poly(p[i]) - theta[i]
        for j, s in others.items():
            if not q[j].is_zero():
                acc = acc - s * qs[j]
        pivot_entry = (acc * q_inv).truncate(floor)
        rows.append([pivot_entry if j == pivot else others[j] for j in range(n)])
    return SeriesMatrix(rows)


def plant_witness(params: PlantParams, seed: int) -> PlantedInstance:
    """Construct (Y, theta, alpha, T) satisfying the product premises.

    One matrix entry per row is solved exactly so that Y q + p + theta
    equals a noise series of prescribed degree; the premise inequalities
    are re-verified before returning.
    """
    F = params.field
    m, n, T = params.m, params.n, params.T
    rng = derive_rng(seed, "plant")
    floor = params.floor
    cutoff = (params.eta + params.eps) * T  # errors must beat e^-cutoff

    # q: all coordinates nonzero, plus-product within the horizon
    budget = T - 1
    degs = []
    remaining = budget
    for _ in range(n):
        d = rng.randrange(0, remaining + 1)
        degs.append(d)
        remaining -= d
    q = tuple(random_poly(F, d, rng) for d in degs)
    p = tuple(random_poly(F, rng.randrange(0, 3), rng) for _ in range(m))
    if params.theta_random:
        theta = tuple(
            random_series(F, floor, derive_rng(seed, "plant-theta", i))
            for i in range(m)
        )
    else:
        theta = zero_theta(F, m)

    # target error rows: degrees summing strictly below -cutoff
    per_row = -(math.floor(cutoff / m) + 1 + params.err_margin)
    targets = []
    for i in range(m):
        targets.append(NEG_INF if params.exact_hit else per_row - rng.randrange(0, 3))
    deltas = [
        LaurentSeries.zero(F)
        if d == NEG_INF
        else _noise_series(F, d, floor, derive_rng(seed, "plant-noise", i))
        for i, d in enumerate(targets)
    ]

    Y = solve_matrix_for_residual(F, q, p, theta, deltas, floor, seed, "plant-Y")
    alpha = Witness(p, q)

    # re-verify the premises exactly on the truncated data
    err = witness_error_degs(Y, theta, alpha)
    if not deg_lt(deg_sum(err), -cutoff):
        raise AssertionError("planted witness misses the product premise")
    if not prod_plus_deg(q) < T:
        raise AssertionError("planted witness exceeds the size premise")
    if not deg_lt(deg_max(err), 0):
        raise AssertionError("planted witness rows exceed 1/e")
    return PlantedInstance(Y, theta, alpha, T, params.eta, params.eps, tuple(targets))


# ---------------------------------------------------------------------------
# paired membership witnesses (for the intersection property)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipPair:
    Y: SeriesMatrix
    theta: tuple
    t: object  # IndexTuple
    tau: Fraction
    alpha: Witness
    alpha2: Witness


def plant_membership_pair(
    field: Fq,
    eta: Fraction,
    seed: int,
    floor: int = -80,
    theta_random: bool = True,
) -> MembershipPair:
    """A 1 x 2 instance where two distinct witnesses share a member cell.

    Both witness equations Y q = delta - p - theta are solved at once by
    Cramer's rule in the two unknown entries of Y, so both cell memberships
    hold exactly by construction.
    """
    from .limsup import TsetParams, delta_membership, tau0, xi_and_t

    eta = Fraction(eta)
    rng = derive_rng(seed, "pair")
    params = TsetParams(1, 2, eta)
    # a comfortably accepted (u, v): xi >= 3 leaves room for the degree bump
    v = (rng.randrange(0, 2), rng.randrange(0, 2))
    need = math.ceil(eta * sum(v) + 3 * (1 + 2 * eta))
    u = (need + rng.randrange(0, 3),)
    got = xi_and_t(u, v, params)
    assert got is not None
    _, it = got
    tau = tau0(Fraction(1), params) / 2
    sigma = it.sigma

    # q2 bumps the second coordinate's degree by one: the two determinant
    # terms then have distinct degrees, so det != 0 by the ultrametric
    q1 = tuple(random_poly(field, v[i], rng) for i in range(2))
    q2 = (random_poly(field, v[0], rng), random_poly(field, v[1] + 1, rng))
    det = q1[0] * q2[1] - q1[1] * q2[0]
    assert not det.is_zero()
    p1 = (random_poly(field, rng.randrange(0, 2), rng),)
    p2 = (random_poly(field, rng.randrange(0, 2), rng),)
    # work below the requested floor: the division by det can cost digits
    work = floor - 24
    if theta_random:
        theta = (random_series(field, work, derive_rng(seed, "pair-theta")),)
    else:
        theta = zero_theta(field, 1)
    depth = it.t[0] + math.ceil(tau * sigma) + 3
    d1 = _noise_series(field, -depth - rng.randrange(0, 3), work, derive_rng(seed, "pair-d1"))
    d2 = _noise_series(field, -depth - rng.randrange(0, 3), work, derive_rng(seed, "pair-d2"))
    rhs1 = d1 - LaurentSeries.from_poly(p1[0]) - theta[0]
    rhs2 = d2 - LaurentSeries.from_poly(p2[0]) - theta[0]
    det_inv = LaurentSeries.from_poly(det).inverse(
        work - 8 - 2 * max(0, det.deg)
    )
    q2s = [LaurentSeries.from_poly(x) for x in q2]
    q1s = [LaurentSeries.from_poly(x) for x in q1]
    y11 = ((rhs1 * q2s[1] - rhs2 * q1s[1]) * det_inv).truncate(floor)
    y12 = ((rhs2 * q1s[0] - rhs1 * q2s[0]) * det_inv).truncate(floor)
    Y = SeriesMatrix([[y11, y12]])
    a1, a2 = Witness(p1, q1), Witness(p2, q2)
    for a in (a1, a2):
        res = delta_membership(Y, theta, it, a, tau, "standard")
        if not res.member:
            raise AssertionError("constructed pair misses its membership")
    return MembershipPair(Y, theta, it, tau, a1, a2)
