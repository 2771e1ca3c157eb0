"""Dirichlet systems and best-approximation errors.

Everything here minimizes degrees of rows of Y q + p + theta over integer
vectors q (polynomials) with p chosen optimally per row.  Two independent
routes are provided: a linear-algebra kernel path (the fractional digits of
Y q are F_q-linear in the coefficients of q) and a brute-force enumeration
used as an oracle.  They must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PrecisionExhaustedError
from .field import Fq
from .linalg import nullspace, solve_affine
from .matrix import SeriesMatrix, matvec_affine, prod_plus_deg
from .poly import NEG_INF, Poly
from .series import DegValue, LaurentSeries, deg_max, deg_sum


@dataclass(frozen=True)
class DirichletTarget:
    """Exponent tuple (t_1..t_{m+n}) with balanced row/column halves."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.m + self.n:
            raise ValueError("target length must be m + n")
        if any(v < 0 or not isinstance(v, int) for v in self.values):
            raise ValueError("target entries must be nonnegative integers")
        if sum(self.values[: self.m]) != sum(self.values[self.m :]):
            raise ValueError("row and column halves of the target must balance")

    @property
    def row_part(self) -> tuple[int, ...]:
        return self.values[: self.m]

    @property
    def col_part(self) -> tuple[int, ...]:
        return self.values[self.m :]


@dataclass(frozen=True)
class Witness:
    """An approximation pair (p, q) with q a nonzero polynomial vector."""

    p: tuple[Poly, ...]
    q: tuple[Poly, ...]

    def __post_init__(self):
        if all(qi.is_zero() for qi in self.q):
            raise ValueError("witness q vector must be nonzero")


@dataclass(frozen=True)
class DirichletResult:
    witness: Witness
    mode: str
    strict_also: bool
    error_degs: tuple[DegValue, ...]


@dataclass(frozen=True)
class BestError:
    """Minimized degree functional at horizon T, with its witness."""

    T: int
    B: DegValue
    witness: Witness
    method: str

    @property
    def censored(self) -> bool:
        return self.B.censored


def _optimal_p(rows) -> tuple[list[Poly], list[LaurentSeries]]:
    """Per-row p that cancels the polynomial part; returns (p, residuals)."""
    ps, resid = [], []
    for r in rows:
        poly_part, frac = r.split_parts()
        ps.append(-poly_part)
        resid.append(frac)
    return ps, resid


def _row_series(Y: SeriesMatrix, q: list[Poly], theta) -> list[LaurentSeries]:
    qs = [LaurentSeries.from_poly(qi) for qi in q]
    out = []
    for i in range(Y.m):
        acc = LaurentSeries.zero(Y.field)
        for j in range(Y.n):
            if not q[j].is_zero():
                acc = acc + Y.entry(i, j) * qs[j]
        if theta is not None:
            acc = acc + theta[i]
        out.append(acc)
    return out


class _ColumnProductCache:
    """Memoizes Y[:, j] * q_j across brute-force candidates."""

    def __init__(self, Y: SeriesMatrix, theta):
        self.Y = Y
        self.base = (
            list(theta)
            if theta is not None
            else [LaurentSeries.zero(Y.field)] * Y.m
        )
        self.cache: dict = {}

    def rows(self, q: list[Poly]) -> list[LaurentSeries]:
        out = list(self.base)
        for j, qj in enumerate(q):
            if qj.is_zero():
                continue
            key = (j, qj.coeffs)
            col = self.cache.get(key)
            if col is None:
                qs = LaurentSeries.from_poly(qj)
                col = [self.Y.entry(i, j) * qs for i in range(self.Y.m)]
                self.cache[key] = col
            out = [a + b for a, b in zip(out, col)]
        return out


def witness_error_degs(Y: SeriesMatrix, theta, w: Witness) -> tuple[DegValue, ...]:
    """Exact degrees of the rows of Y q + p + theta for a stored witness."""
    rows = matvec_affine(Y, w.q, w.p, theta)
    return tuple(r.deg() for r in rows)


# ---------------------------------------------------------------------------
# Dirichlet solver
# ---------------------------------------------------------------------------


def _dirichlet_nullspace(Y: SeriesMatrix, t: DirichletTarget, degree_bounds):
    """Nullspace of the map q -> (fractional digits of Y_i q down to -t_i)."""
    layout = []  # (coordinate j, coefficient s) per unknown column
    for j, dj in enumerate(degree_bounds):
        for s in range(dj + 1):
            layout.append((j, s))
    ncols = len(layout)
    if ncols == 0:
        return [], layout
    rows = []
    for i in range(Y.m):
        for c in range(1, t.row_part[i] + 1):
            row = [Y.entry(i, j).coeff(-c - s) for (j, s) in layout]
            rows.append(row)
    return nullspace(Y.field, rows, ncols), layout


def _vector_to_q(field: Fq, vec, layout, n: int) -> list[Poly]:
    coeffs: list[list[int]] = [[] for _ in range(n)]
    for (j, s), v in zip(layout, vec):
        while len(coeffs[j]) <= s:
            coeffs[j].append(0)
        coeffs[j][s] = v
    return [Poly(field, cs) for cs in coeffs]


def dirichlet_solve(
    Y: SeriesMatrix, t: DirichletTarget, mode: str = "relaxed"
) -> DirichletResult | None:
    """Solve |Y_i q + p_i| < e^{-t_i} with |q_j| bounded by e^{t_{m+j}}.

    In strict mode the q-bound is a strict inequality (degree <= t_{m+j}-1)
    and the pigeonhole count is square, so there may be no solution (None).
    In relaxed mode the q-bound allows equality, a nonzero kernel vector is
    guaranteed, and the result notes whether the strict system was also
    solvable.  The error-side inequality is strict in both modes.
    """
    if mode not in ("strict", "relaxed"):
        raise ValueError(f"unknown mode {mode!r}")
    if t.m != Y.m or t.n != Y.n:
        raise ValueError("target dimensions do not match the matrix")

    def attempt(bounds):
        basis, layout = _dirichlet_nullspace(Y, t, bounds)
        if not basis:
            return None
        q = _vector_to_q(Y.field, basis[0], layout, Y.n)
        rows = _row_series(Y, q, None)
        ps, resid = _optimal_p(rows)
        return Witness(tuple(ps), tuple(q)), tuple(r.deg() for r in resid)

    strict_bounds = [b - 1 for b in t.col_part]
    if mode == "strict":
        got = attempt(strict_bounds)
        if got is None:
            return None
        w, degs = got
        _verify_dirichlet(Y, t, w, degs, strict=True)
        return DirichletResult(w, "strict", True, degs)

    relaxed_bounds = list(t.col_part)
    got = attempt(relaxed_bounds)
    if got is None:  # cannot happen: unknowns always exceed equations
        raise AssertionError("relaxed Dirichlet system had empty kernel")
    w, degs = got
    _verify_dirichlet(Y, t, w, degs, strict=False)
    strict_also = attempt(strict_bounds) is not None
    return DirichletResult(w, "relaxed", strict_also, degs)


def _verify_dirichlet(Y, t, w: Witness, degs, strict: bool):
    for i, d in enumerate(degs):
        if not (d.value < -t.row_part[i]):
            raise AssertionError(f"row {i} misses its error bound")
        if d.censored and d.value >= -t.row_part[i]:
            raise PrecisionExhaustedError("error bound undecidable at this floor")
    for j, qj in enumerate(w.q):
        bound = t.col_part[j] - 1 if strict else t.col_part[j]
        if qj.deg != NEG_INF and qj.deg > bound:
            raise AssertionError(f"coordinate {j} exceeds its size bound")


# ---------------------------------------------------------------------------
# Best approximation error, kernel path
# ---------------------------------------------------------------------------


def _kernel_feasible(Y, theta, D: int, k: int):
    """Is there q != 0 with deg q_j <= D and all row digits -1..-k zero?"""
    layout = [(j, s) for j in range(Y.n) for s in range(D + 1)]
    ncols = len(layout)
    if k == 0:
        vec = [0] * ncols
        vec[0] = 1
        return vec, layout
    rows, rhs = [], []
    homogeneous = theta is None or all(th.is_exact_zero() for th in theta)
    for i in range(Y.m):
        for c in range(1, k + 1):
            rows.append([Y.entry(i, j).coeff(-c - s) for (j, s) in layout])
            rhs.append(0 if homogeneous else Y.field.neg(theta[i].coeff(-c)))
    if homogeneous:
        basis = nullspace(Y.field, rows, ncols)
        return (basis[0], layout) if basis else (None, layout)
    x, basis = solve_affine(Y.field, rows, rhs, ncols)
    if x is None:
        return None, layout
    if any(x):
        return x, layout
    if basis:
        combined = [Y.field.add(a, b) for a, b in zip(x, basis[0])]
        return combined, layout
    return None, layout  # only solution is q = 0, which is not allowed


def _search_caps(Y: SeriesMatrix, theta, D: int):
    """(cap, exact) where cap is the deepest searchable digit depth.

    With any truncated entry, cap is the deepest depth whose constraints are
    decidable and exact=False.  With all-exact entries, cap is one past the
    depth any nonzero residual could survive, and exact=True: feasibility at
    cap certifies an exact hit.
    """
    caps = []
    stored_lo = []
    for row in Y.rows:
        for s in row:
            if s.floor != NEG_INF:
                caps.append(-s.floor - D)
            elif not s.is_exact_zero():
                stored_lo.append(s.top - len(s.coeffs) + 1)
    if theta is not None:
        for th in theta:
            if th.floor != NEG_INF:
                caps.append(-th.floor)
            elif not th.is_exact_zero():
                stored_lo.append(th.top - len(th.coeffs) + 1)
    if caps:
        return max(0, min(caps)), False
    lo = min(stored_lo) if stored_lo else 0
    return max(1, -lo + 1), True


def _best_error_kernel(Y: SeriesMatrix, theta, T: int) -> BestError:
    D = (T - 1) // Y.n
    cap, exact_inputs = _search_caps(Y, theta, D)
    solutions: dict[int, list[int]] = {}
    layout = None

    def feasible(k: int) -> bool:
        nonlocal layout
        vec, layout = _kernel_feasible(Y, theta, D, k)
        if vec is not None:
            solutions[k] = vec
            return True
        return False

    # bracket the deepest feasible depth, then bisect
    lo = 0
    feasible(0)
    hi = None
    step = 1
    while hi is None:
        k = min(lo + step, cap)
        if feasible(k):
            lo = k
            if k == cap:
                break
            step *= 2
        else:
            hi = k
    if hi is not None:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if feasible(mid):
                lo = mid
            else:
                hi = mid
    K = lo

    vec = solutions.get(K)
    if vec is None:
        feasible(K)
        vec = solutions[K]
    q = _vector_to_q(Y.field, vec, layout, Y.n)
    rows = _row_series(Y, q, theta)
    ps, resid = _optimal_p(rows)
    w = Witness(tuple(ps), tuple(q))
    obj = deg_max(r.deg() for r in resid)

    if K == cap:
        if exact_inputs:
            if not all(r.is_exact_zero() for r in resid):
                raise AssertionError("exact-depth solution left a nonzero residual")
            B = DegValue(NEG_INF, False)
        else:
            bound = min(obj.value, -K - 1)
            B = DegValue(bound * Y.m, True)
    else:
        if obj.value != -K - 1 or obj.censored:
            raise AssertionError("kernel witness does not attain its depth")
        B = obj.scale(Y.m)
    return BestError(T, B, w, "kernel")


# ---------------------------------------------------------------------------
# Best approximation error, brute-force oracle
# ---------------------------------------------------------------------------


def _poly_tiebreak_key(q: list[Poly], max_deg: int) -> tuple[int, ...]:
    # coefficients ordered by degree then coordinate index
    return tuple(
        q[j].coeff(s) for s in range(max_deg + 1) for j in range(len(q))
    )


def _iter_coordinate_polys(field: Fq, max_deg: int):
    """All polynomials of degree <= max_deg (including zero), low-deg first."""
    yield Poly.zero(field)
    for deg in range(max_deg + 1):
        base = field.q**deg
        for lead in range(1, field.q):
            for rest in range(base):
                coeffs = []
                v = rest
                for _ in range(deg):
                    coeffs.append(v % field.q)
                    v //= field.q
                coeffs.append(lead)
                yield Poly(field, coeffs)


class _BruteBest:
    """Tracks the minimum objective with lexicographic witness tie-break."""

    def __init__(self, max_deg: int):
        self.max_deg = max_deg
        self.value = None
        self.key = None
        self.witness = None
        self.censored_bound = None
        self.censored_witness = None

    def offer(self, obj: DegValue, q: list[Poly], ps: list[Poly]):
        if obj.censored:
            if self.censored_bound is None or obj.value < self.censored_bound:
                self.censored_bound = obj.value
                self.censored_witness = Witness(tuple(ps), tuple(q))
            return
        key = _poly_tiebreak_key(q, self.max_deg)
        if (
            self.value is None
            or obj.value < self.value
            or (obj.value == self.value and key < self.key)
        ):
            self.value = obj.value
            self.key = key
            self.witness = Witness(tuple(ps), tuple(q))

    def result(self) -> tuple[DegValue, Witness]:
        if self.value is None and self.censored_bound is None:
            raise AssertionError("no candidates offered")
        if self.censored_bound is not None:
            # any censored candidate may hide a lower true value, so the
            # minimum itself is only known as an upper bound
            if self.value is None or self.censored_bound <= self.value:
                return DegValue(self.censored_bound, True), self.censored_witness
            return DegValue(self.value, True), self.witness
        return DegValue(self.value, False), self.witness


def _best_error_brute(Y: SeriesMatrix, theta, T: int) -> BestError:
    D = (T - 1) // Y.n
    field = Y.field
    best = _BruteBest(D)
    coords = list(_iter_coordinate_polys(field, D))
    idx = [0] * Y.n
    cache = _ColumnProductCache(Y, theta)

    def candidates():
        # odometer over coordinate polynomials, skipping the zero vector
        while True:
            q = [coords[i] for i in idx]
            if not all(p.is_zero() for p in q):
                yield q
            pos = 0
            while pos < Y.n:
                idx[pos] += 1
                if idx[pos] < len(coords):
                    break
                idx[pos] = 0
                pos += 1
            if pos == Y.n:
                return

    for q in candidates():
        rows = cache.rows(q)
        ps, resid = _optimal_p(rows)
        obj = deg_max(r.deg() for r in resid)
        best.offer(obj, q, ps)
    B_deg, w = best.result()
    return BestError(T, B_deg.scale(Y.m), w, "brute")


def best_error(
    Y: SeriesMatrix, theta, T: int, method: str = "kernel"
) -> BestError:
    """Minimum of max-row degree over q != 0 with n*deg(q) <= T-1, times m.

    theta=None means the homogeneous problem.  Censored results signal that
    the true value sits below what the precision floor can certify.
    """
    if T < 1:
        raise ValueError("horizon T must be >= 1")
    if theta is not None and len(theta) != Y.m:
        raise ValueError("shift vector length must match row count")
    if method == "kernel":
        return _best_error_kernel(Y, theta, T)
    if method == "brute":
        return _best_error_brute(Y, theta, T)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Multiplicative variant (brute force only: the objective is not linear)
# ---------------------------------------------------------------------------


def _iter_mult_q(field: Fq, n: int, budget: int):
    """All q vectors with plus-product degree <= budget, excluding zero."""

    def extend(prefix: list[Poly], j: int, remaining: int):
        if j == n:
            if not all(p.is_zero() for p in prefix):
                yield list(prefix)
            return
        yield from extend(prefix + [Poly.zero(field)], j + 1, remaining)
        for deg in range(remaining + 1):
            base = field.q**deg
            for lead in range(1, field.q):
                for rest in range(base):
                    coeffs = []
                    v = rest
                    for _ in range(deg):
                        coeffs.append(v % field.q)
                        v //= field.q
                    coeffs.append(lead)
                    yield from extend(
                        prefix + [Poly(field, coeffs)], j + 1, remaining - deg
                    )

    yield from extend([], 0, budget)


def best_error_mult(Y: SeriesMatrix, theta, T: int) -> BestError:
    """Multiplicative analogue: minimize the product degree of the rows over
    q != 0 with plus-product degree <= T-1."""
    if T < 1:
        raise ValueError("horizon T must be >= 1")
    budget = T - 1
    best = _BruteBest(budget)
    cache = _ColumnProductCache(Y, theta)
    for q in _iter_mult_q(Y.field, Y.n, budget):
        if prod_plus_deg(q) > budget:
            raise AssertionError("enumerator produced an inadmissible vector")
        rows = cache.rows(q)
        ps, resid = _optimal_p(rows)
        obj = deg_sum(r.deg() for r in resid)
        best.offer(obj, q, ps)
    B_deg, w = best.result()
    return BestError(T, B_deg, w, "brute")
