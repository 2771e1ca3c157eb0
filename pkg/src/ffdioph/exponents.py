"""Finite-horizon profiles of best-approximation degrees and the rational
proxies they induce for the growth exponents.

A profile records (T, B(T)) for T = 1..T_max.  The estimate takes the tail
window [ceil(T_max/2), T_max] and reports max and min of -B(T)/T as exact
fractions; the max plays the role of the limsup exponent, the min of the
liminf one.  Censored entries never contribute to either proxy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .approx import BestError, best_error, best_error_mult
from .errors import FFDiophError, PrecisionExhaustedError
from .matrix import SeriesMatrix
from .poly import NEG_INF
from .series import DegValue


@dataclass(frozen=True)
class ProfileEntry:
    T: int
    B: DegValue

    @property
    def censored(self) -> bool:
        return self.B.censored


@dataclass(frozen=True)
class ExponentProfile:
    kind: str  # "standard" | "multiplicative"
    m: int
    n: int
    T_max: int
    entries: tuple[ProfileEntry, ...]
    theta: tuple | None = None
    witnesses: tuple = ()

    def entry(self, T: int) -> ProfileEntry:
        return self.entries[T - 1]

    def window(self) -> tuple[int, int]:
        return (self.T_max + 1) // 2, self.T_max


class EstimateWindowError(FFDiophError):
    """Too few usable entries in the tail window to form an estimate."""


@dataclass(frozen=True)
class ExponentEstimate:
    omega_proxy: Fraction | None
    omega_hat_proxy: Fraction | None
    window: tuple[int, int]
    infinite: bool
    censored: bool


def profile(
    Y: SeriesMatrix,
    theta,
    T_max: int,
    kind: str = "standard",
    method: str = "kernel",
) -> ExponentProfile:
    """Best-error degrees for all horizons up to T_max.

    Precision exhaustion in a single entry is recorded as a censored value
    rather than aborting the whole profile.
    """
    if T_max < 1:
        raise ValueError("T_max must be >= 1")
    if kind not in ("standard", "multiplicative"):
        raise ValueError(f"unknown profile kind {kind!r}")
    entries = []
    witnesses = []
    for T in range(1, T_max + 1):
        try:
            if kind == "standard":
                be: BestError = best_error(Y, theta, T, method=method)
            else:
                be = best_error_mult(Y, theta, T)
            entries.append(ProfileEntry(T, be.B))
            witnesses.append(be.witness)
        except PrecisionExhaustedError:
            # the trivial bound deg <= -1 per row survives any truncation
            entries.append(ProfileEntry(T, DegValue(-Y.m, True)))
            witnesses.append(None)
    return ExponentProfile(
        kind,
        Y.m,
        Y.n,
        T_max,
        tuple(entries),
        None if theta is None else tuple(theta),
        tuple(witnesses),
    )


def estimate(prof: ExponentProfile) -> ExponentEstimate:
    """Window extremes of -B(T)/T as exact rationals."""
    lo, hi = prof.window()
    tail = [e for e in prof.entries if lo <= e.T <= hi]
    usable = [e for e in tail if not e.censored]
    censored = len(usable) < len(tail)
    if not usable:
        raise EstimateWindowError("estimate window is fully censored")
    if len(usable) < 4:
        raise EstimateWindowError(
            f"need at least 4 uncensored window entries, have {len(usable)}"
        )
    if any(e.B.value == NEG_INF for e in usable):
        return ExponentEstimate(None, None, (lo, hi), True, censored)
    ratios = [Fraction(-e.B.value, e.T) for e in usable]
    return ExponentEstimate(max(ratios), min(ratios), (lo, hi), False, censored)
