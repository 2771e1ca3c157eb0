"""Truncated Laurent series in 1/X over F_q, with exact precision tracking.

A series carries its known digits for exponents ``top`` down to ``floor``.
``floor = NEG_INF`` marks an exact element (a Laurent polynomial: every digit
below the stored range is exactly zero).  A finite floor means digits below
it are unknown, and every operation propagates that ignorance so that no
exact-looking digit is ever fabricated.

All absolute values are handled in the degree domain: an element of size
e^k is represented by the integer k (see ``DegValue``), never by a float.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, PrecisionExhaustedError
from .field import Fq
from .poly import NEG_INF, Poly, format_terms, parse_terms


@dataclass(frozen=True)
class DegValue:
    """A degree (log-absolute-value) that may be censored by a precision floor.

    ``value`` is an integer, or NEG_INF for an exactly-zero quantity.
    ``censored=True`` means "the true degree is <= value; digits below are
    unknown".  Exactly-zero values are never censored.
    """

    value: int | float
    censored: bool = False

    @classmethod
    def exact(cls, v) -> "DegValue":
        return cls(v, False)

    @classmethod
    def censored_at(cls, v: int) -> "DegValue":
        return cls(v, True)

    def is_neg_inf(self) -> bool:
        return self.value == NEG_INF

    def shift(self, k: int) -> "DegValue":
        if self.value == NEG_INF:
            return self
        return DegValue(self.value + k, self.censored)

    def scale(self, m: int) -> "DegValue":
        if self.value == NEG_INF:
            return self
        return DegValue(self.value * m, self.censored)

    def __repr__(self) -> str:
        tag = "<=" if self.censored else ""
        return f"DegValue({tag}{self.value})"


def deg_max(values) -> DegValue:
    """Supremum of degrees.  Exact when an uncensored entry attains the max."""
    values = list(values)
    if not values:
        raise ValueError("deg_max of empty sequence")
    m = max(v.value for v in values)
    exact_hit = any(v.value == m and not v.censored for v in values)
    if m == NEG_INF:
        return DegValue(NEG_INF, False)
    return DegValue(m, not exact_hit)


def deg_sum(values) -> DegValue:
    """Degree of a product.  An exact zero factor wins over censoring."""
    values = list(values)
    if any(v.value == NEG_INF for v in values):
        return DegValue(NEG_INF, False)
    total = sum(v.value for v in values)
    return DegValue(total, any(v.censored for v in values))


def deg_lt(d: DegValue, threshold) -> bool:
    """Decide ``true degree < threshold`` or raise if censoring prevents it.

    threshold may be an int or Fraction (a formal exponent of e).
    """
    if d.value < threshold:
        return True  # even if censored: true value <= d.value < threshold
    if not d.censored:
        return False
    raise PrecisionExhaustedError(
        f"cannot compare censored degree <={d.value} against threshold {threshold}"
    )


class LaurentSeries:
    """Immutable element of F_q((1/X)) known down to a precision floor."""

    __slots__ = ("field", "top", "coeffs", "floor")

    def __init__(self, field: Fq, top, coeffs, floor):
        # normalize: strip leading zeros, detect known-zero, trim exact tails
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            top -= 1
        if not coeffs:
            top = NEG_INF
        if floor == NEG_INF:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                top = NEG_INF
        else:
            if top != NEG_INF:
                want = top - floor + 1
                if len(coeffs) < want:
                    coeffs.extend([0] * (want - len(coeffs)))
                elif len(coeffs) > want:
                    raise ValueError("coefficients extend below the stated floor")
        if top != NEG_INF and floor != NEG_INF and floor > top:
            raise ValueError("floor must not exceed the leading exponent")
        self.field = field
        self.top = top
        self.coeffs = tuple(coeffs)
        self.floor = floor

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field: Fq, floor=NEG_INF) -> "LaurentSeries":
        return cls(field, NEG_INF, (), floor)

    @classmethod
    def one(cls, field: Fq) -> "LaurentSeries":
        return cls(field, 0, (1,), NEG_INF)

    @classmethod
    def monomial(cls, field: Fq, exp: int, coeff: int = 1) -> "LaurentSeries":
        return cls(field, exp, (coeff,), NEG_INF)

    @classmethod
    def from_terms(cls, field: Fq, terms: dict[int, int], floor=NEG_INF) -> "LaurentSeries":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls.zero(field, floor)
        top = max(terms)
        lo = min(terms) if floor == NEG_INF else floor
        if floor != NEG_INF and min(terms) < floor:
            raise ValueError("term below the stated floor")
        coeffs = [terms.get(e, 0) for e in range(top, lo - 1, -1)]
        return cls(field, top, coeffs, floor)

    @classmethod
    def from_poly(cls, poly: Poly) -> "LaurentSeries":
        if poly.is_zero():
            return cls.zero(poly.field)
        coeffs = list(reversed(poly.coeffs))
        return cls(poly.field, poly.deg, coeffs, NEG_INF)

    # -- queries -----------------------------------------------------------

    def is_exact(self) -> bool:
        return self.floor == NEG_INF

    def is_known_zero(self) -> bool:
        """All known digits vanish (exactly zero iff also exact)."""
        return self.top == NEG_INF

    def is_exact_zero(self) -> bool:
        return self.top == NEG_INF and self.floor == NEG_INF

    def deg(self) -> DegValue:
        """Degree as a DegValue; censored when only a zero prefix is known."""
        if self.top != NEG_INF:
            return DegValue(self.top, False)
        if self.floor == NEG_INF:
            return DegValue(NEG_INF, False)
        return DegValue(self.floor - 1, True)

    def _stored_lo(self):
        if self.top == NEG_INF:
            return self.floor
        return self.top - len(self.coeffs) + 1

    def known_lo(self):
        """Lowest exponent with a known digit (NEG_INF when exact)."""
        return self.floor

    def coeff(self, e: int) -> int:
        """Digit at exponent e; raises if e is below the floor."""
        if self.floor != NEG_INF and e < self.floor:
            raise PrecisionExhaustedError(
                f"digit at exponent {e} is below the floor {self.floor}"
            )
        if self.top == NEG_INF or e > self.top:
            return 0
        idx = self.top - e
        if idx < len(self.coeffs):
            return self.coeffs[idx]
        return 0  # exact series, below stored range

    def terms(self) -> dict[int, int]:
        if self.top == NEG_INF:
            return {}
        return {
            self.top - i: c for i, c in enumerate(self.coeffs) if c
        }

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "LaurentSeries") -> None:
        if self.field != other.field:
            raise ValueError("mixed-field series arithmetic")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        floor = max(self.floor, other.floor)
        tops = [t for t in (self.top, other.top) if t != NEG_INF]
        if not tops:
            return LaurentSeries.zero(self.field, floor)
        top = max(tops)
        if floor != NEG_INF:
            lo = floor
        else:
            lo = min(
                s._stored_lo() for s in (self, other) if s.top != NEG_INF
            )
        F = self.field
        coeffs = [
            F.add(self.coeff(e), other.coeff(e)) for e in range(top, lo - 1, -1)
        ]
        return LaurentSeries(F, top, coeffs, floor)

    def __neg__(self) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(
            F, self.top, [F.neg(c) for c in self.coeffs], self.floor
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def _effective_top(self):
        """Largest exponent that may carry a nonzero digit."""
        if self.top != NEG_INF:
            return self.top
        if self.floor == NEG_INF:
            return NEG_INF
        return self.floor - 1

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        F = self.field
        et_s, et_o = self._effective_top(), other._effective_top()
        # unknown digits of one factor meet the other factor's top digits
        floor = NEG_INF
        if self.floor != NEG_INF and et_o != NEG_INF:
            floor = max(floor, self.floor + et_o)
        if other.floor != NEG_INF and et_s != NEG_INF:
            floor = max(floor, other.floor + et_s)
        if self.is_known_zero() or other.is_known_zero():
            return LaurentSeries.zero(F, floor)
        top = self.top + other.top
        lo = floor if floor != NEG_INF else self._stored_lo() + other._stored_lo()
        out = [0] * (top - lo + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ea = self.top - i
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                e = ea + (other.top - j)
                if e < lo:
                    break
                idx = top - e
                out[idx] = F.add(out[idx], F.mul(a, b))
        return LaurentSeries(F, top, out, floor)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            return LaurentSeries.zero(F, self.floor)
        return LaurentSeries(
            F, self.top, [F.mul(c, x) for x in self.coeffs], self.floor
        )

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by X^k."""
        top = self.top + k if self.top != NEG_INF else NEG_INF
        floor = self.floor + k if self.floor != NEG_INF else NEG_INF
        return LaurentSeries(self.field, top, self.coeffs, floor)

    def truncate(self, new_floor: int) -> "LaurentSeries":
        """Forget digits below new_floor (which must not deepen knowledge)."""
        if self.floor != NEG_INF and new_floor < self.floor:
            raise PrecisionExhaustedError(
                f"cannot extend floor {self.floor} down to {new_floor}"
            )
        if self.top == NEG_INF:
            return LaurentSeries.zero(self.field, new_floor)
        if new_floor > self.top:
            return LaurentSeries.zero(self.field, new_floor)
        coeffs = [self.coeff(e) for e in range(self.top, new_floor - 1, -1)]
        return LaurentSeries(self.field, self.top, coeffs, new_floor)

    def inverse(self, floor: int) -> "LaurentSeries":
        """Multiplicative inverse with digits down to ``floor``.

        The result's digit at exponent -deg(f)-j needs f's digits down to
        deg(f)-j, so a truncated input supports floors >= floor(f) - 2*deg(f)
        only; anything deeper raises PrecisionExhaustedError.
        """
        if self.is_known_zero():
            if self.is_exact_zero():
                raise ZeroDivisionError("inverse of zero series")
            raise PrecisionExhaustedError(
                "cannot invert a series with no known nonzero digit"
            )
        F = self.field
        a = self.top
        if self.floor != NEG_INF:
            deepest = self.floor - 2 * a
            if floor < deepest:
                raise PrecisionExhaustedError(
                    f"inverse floor {floor} needs input digits below {self.floor}"
                )
        if len(self.coeffs) == 1 and self.is_exact():
            # exact monomial: inverse is exact
            return LaurentSeries.monomial(F, -a, F.inv(self.coeffs[0]))
        if floor > -a:
            raise ValueError("inverse floor must reach the leading exponent")
        lead_inv = F.inv(self.coeffs[0])
        top = -a
        out = [0] * (top - floor + 1)
        out[0] = lead_inv
        # digit-by-digit long division: (f * g) must vanish at a+e for e < top
        for idx in range(1, len(out)):
            e = top - idx
            acc = 0
            # sum f_{a-s} * g_{e+s} over s >= 1
            for s in range(1, min(idx, len(self.coeffs) - 1) + 1):
                fc = self.coeffs[s]
                if fc:
                    acc = F.add(acc, F.mul(fc, out[idx - s]))
            out[idx] = F.neg(F.mul(lead_inv, acc))
        return LaurentSeries(F, top, out, floor)

    # -- structure -----------------------------------------------------------

    def split_parts(self) -> tuple[Poly, "LaurentSeries"]:
        """Split into polynomial part (exponents >= 0) and fractional part."""
        if self.floor != NEG_INF and self.floor > 0:
            raise PrecisionExhaustedError(
                "polynomial part not fully known above the floor"
            )
        if self.top == NEG_INF or self.top < 0:
            return Poly.zero(self.field), self
        poly = Poly(
            self.field, [self.coeff(e) for e in range(0, self.top + 1)]
        )
        frac_terms = {
            e: c for e, c in self.terms().items() if e < 0
        }
        frac = LaurentSeries.from_terms(self.field, frac_terms, self.floor)
        return poly, frac

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality on the digits both sides know."""
        self._check(other)
        lo = max(self.floor, other.floor)
        tops = [t for t in (self.top, other.top) if t != NEG_INF]
        if not tops:
            return True
        hi = max(tops)
        if lo == NEG_INF:
            lo = min(
                s._stored_lo() for s in (self, other) if s.top != NEG_INF
            )
        return all(self.coeff(e) == other.coeff(e) for e in range(hi, lo - 1, -1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.top == other.top
            and self.coeffs == other.coeffs
            and self.floor == other.floor
        )

    def __hash__(self) -> int:
        return hash((self.field, self.top, self.coeffs, self.floor))

    def __repr__(self) -> str:
        body = self.to_literal()
        if self.floor == NEG_INF:
            return f"Series({body!r})"
        return f"Series({body!r}, floor={self.floor})"

    def to_literal(self) -> str:
        return format_terms(self.terms(), self.field)


def parse_series_literal(text: str, field: Fq, floor=NEG_INF) -> LaurentSeries:
    terms = parse_terms(text, field, allow_negative=True)
    if floor != NEG_INF:
        below = [e for e in terms if e < floor]
        if below:
            raise ParseError(f"term exponent {min(below)} below floor {floor}")
    return LaurentSeries.from_terms(field, terms, floor)
