"""Suite runner: builds instances from a config, executes them (optionally
across worker processes), and assembles deterministic reports.

Instance work is keyed by (seed, suite, index), never by worker identity or
execution order, so reports are byte-identical at any worker count.  Wall
clock goes to stderr only; the report's timing slot stays null to keep the
bytes reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .approx import DirichletTarget, Witness, dirichlet_solve, witness_error_degs
from .config import ExperimentConfig
from .errors import PrecisionExhaustedError
from .exponents import (
    EstimateWindowError,
    ExponentProfile,
    estimate,
    profile,
)
from .generators import (
    MembershipPair,
    PlantParams,
    derive_rng,
    generate_matrix,
    generate_theta,
    plant_membership_pair,
    plant_witness,
    random_series,
    solve_matrix_for_residual,
)
from .limsup import (
    IndexTuple,
    TsetParams,
    audit_grid,
    cell_plane_identity_check,
    intersection_check,
    prop_backward_check,
    prop_forward_check,
    tau0,
    tset_enumerate,
)
from .matrix import SeriesMatrix
from .poly import NEG_INF, Poly
from .series import DegValue, LaurentSeries
from .transference import (
    CheckReport,
    check_bz,
    check_dirichlet_bound,
    check_dyson,
    check_mult_dominance,
)

# ---------------------------------------------------------------------------
# JSON-able serialization of result objects
# ---------------------------------------------------------------------------


def jsonable(obj):
    """Exact, float-free rendering of result objects for reports."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if obj == NEG_INF:
            return "-inf"
        raise TypeError("refusing to serialize a float into a report")
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, DegValue):
        out = {"deg": "-inf" if obj.value == NEG_INF else int(obj.value)}
        if obj.censored:
            out["censored"] = True
        return out
    if isinstance(obj, Poly):
        return obj.to_literal()
    if isinstance(obj, LaurentSeries):
        return {
            "literal": obj.to_literal(),
            "floor": "-inf" if obj.floor == NEG_INF else obj.floor,
        }
    if isinstance(obj, SeriesMatrix):
        return [[jsonable(s) for s in row] for row in obj.rows]
    if isinstance(obj, Witness):
        return {"p": [x.to_literal() for x in obj.p], "q": [x.to_literal() for x in obj.q]}
    if isinstance(obj, IndexTuple):
        return {"t": list(obj.t), "sigma": obj.sigma}
    if isinstance(obj, CheckReport):
        return {
            "name": obj.name,
            "holds": obj.holds,
            "exact": obj.exact,
            "tolerance": jsonable(obj.tolerance),
            "lhs": jsonable(obj.lhs),
            "rhs": jsonable(obj.rhs),
            "details": jsonable(obj.details),
            "note": obj.note,
        }
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {
            k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__
        }
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def decimal_str(fr: Fraction, places: int = 6) -> str:
    """Fixed-point rendering for humans, by integer math (no float round)."""
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    scaled = fr.numerator * 10**places // fr.denominator
    whole, part = divmod(scaled, 10**places)
    return f"{sign}{whole}.{str(part).zfill(places)}"


def profile_rows(prof: ExponentProfile) -> list[dict]:
    rows = []
    for e in prof.entries:
        if e.B.value == NEG_INF:
            num = den = None
        else:
            r = Fraction(-int(e.B.value), e.T)
            num, den = r.numerator, r.denominator
        rows.append(
            {
                "T": e.T,
                "B": "-inf" if e.B.value == NEG_INF else int(e.B.value),
                "minus_B_over_T_num": num,
                "minus_B_over_T_den": den,
                "censored": e.censored,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# per-suite instance tasks
# ---------------------------------------------------------------------------


def _estimate_instance(cfg: ExperimentConfig, idx: int) -> dict:
    F = cfg.fq()
    Y = generate_matrix(
        cfg.Y_spec, F, cfg.m, cfg.n, cfg.floor, cfg.seed, f"estimate/{idx}/Y"
    )
    theta = generate_theta(cfg.theta_spec, F, cfg.m, cfg.floor, cfg.seed * 1000003 + idx)
    prof = profile(Y, theta, cfg.T_max, cfg.profile_kind, cfg.method)
    out = {
        "index": idx,
        "profile": profile_rows(prof),
    }
    hard = False
    if cfg.profile_kind == "standard":
        hom = (
            prof
            if all(th.is_exact_zero() for th in theta)
            else profile(Y, None, cfg.T_max, "standard", cfg.method)
        )
        bound = check_dirichlet_bound(hom)
        out["dirichlet_bound"] = jsonable(bound)
        hard = hard or bound.holds is False
    try:
        est = estimate(prof)
        out["estimate"] = jsonable(est)
        if not est.infinite:
            out["estimate"]["omega_decimal"] = decimal_str(est.omega_proxy)
            out["estimate"]["omega_hat_decimal"] = decimal_str(est.omega_hat_proxy)
    except EstimateWindowError as exc:
        out["estimate"] = {"error": str(exc)}
    out["hard_failure"] = hard
    return out


def _random_balanced_target(m: int, n: int, sigma_bound: int, rng) -> DirichletTarget:
    k = rng.randrange(0, sigma_bound // 2 + 1)

    def split(total, parts):
        vals = []
        rest = total
        for _ in range(parts - 1):
            v = rng.randrange(0, rest + 1)
            vals.append(v)
            rest -= v
        vals.append(rest)
        return vals

    return DirichletTarget(m, n, tuple(split(k, m) + split(k, n)))


def _dirichlet_instance(cfg: ExperimentConfig, idx: int) -> dict:
    F = cfg.fq()
    rng = derive_rng(cfg.seed, "dirichlet", idx)
    m = rng.randrange(1, cfg.m + 1)
    n = rng.randrange(1, cfg.n + 1)
    t = _random_balanced_target(m, n, cfg.sigma_bound, rng)
    Y = SeriesMatrix(
        [
            [
                random_series(F, cfg.floor, derive_rng(cfg.seed, "dirichlet", idx, i, j))
                for j in range(n)
            ]
            for i in range(m)
        ]
    )
    res = dirichlet_solve(Y, t, "relaxed")
    # independent re-verification of both inequality blocks
    degs = witness_error_degs(Y, None, res.witness)
    err_ok = all(
        (not d.censored) and d.value < -t.values[i] for i, d in enumerate(degs)
    )
    q_ok = all(
        q.deg == NEG_INF or q.deg <= t.values[m + j]
        for j, q in enumerate(res.witness.q)
    )
    return {
        "index": idx,
        "m": m,
        "n": n,
        "t": list(t.values),
        "witness": jsonable(res.witness),
        "error_degs": jsonable(list(degs)),
        "strict_also": res.strict_also,
        "reverified": err_ok and q_ok,
        "hard_failure": not (err_ok and q_ok),
    }


def _transference_instance(cfg: ExperimentConfig, idx: int) -> dict:
    F = cfg.fq()
    Y = generate_matrix(
        {"kind": "random"}, F, cfg.m, cfg.n, cfg.floor, cfg.seed, f"transference/{idx}/Y"
    )
    theta = generate_theta(
        cfg.theta_spec if cfg.theta_spec != "0" else {"kind": "random"},
        F,
        cfg.m,
        cfg.floor,
        cfg.seed * 7919 + idx,
    )
    hom = profile(Y, None, cfg.T_max, "standard", cfg.method)
    bound = check_dirichlet_bound(hom)
    std_small = profile(Y, theta, cfg.mult_T_max, "standard", cfg.method)
    mult_small = profile(Y, theta, cfg.mult_T_max, "multiplicative")
    dominance = check_mult_dominance(std_small, mult_small)
    bz = check_bz(Y, theta, cfg.T_max, cfg.tol_bz, cfg.method)
    dyson = check_dyson(Y, cfg.T_max, cfg.tol_dyson, cfg.method)
    return {
        "index": idx,
        "dirichlet_bound": jsonable(bound),
        "mult_dominance": jsonable(dominance),
        "bz": jsonable(bz),
        "dyson": jsonable(dyson),
        "hard_failure": bound.holds is False or dominance.holds is False,
    }


def _limsup_instance(cfg: ExperimentConfig, idx: int) -> dict:
    F = cfg.fq()
    params = TsetParams(cfg.m, cfg.n, cfg.eta)
    t0 = tau0(cfg.eps, params)
    tau = cfg.tau if cfg.tau is not None else t0 / 2
    plant = plant_witness(
        PlantParams(F, cfg.m, cfg.n, cfg.eta, cfg.eps, cfg.plant_T, cfg.floor),
        cfg.seed * 15485863 + idx,
    )
    fwd = prop_forward_check(
        plant.Y,
        plant.theta,
        plant.alpha,
        plant.T,
        plant.eta,
        plant.eps,
        tau,
        cfg.sigma_threshold,
    )
    hard = fwd.holds is False
    bwd_json = None
    # the backward direction consumes plain-diagonal memberships; a
    # shifted-only forward success is a recorded marginal case, not a failure
    if fwd.details.get("member_standard"):
        bwd = prop_backward_check(
            plant.Y, plant.theta, fwd.details["t"], plant.alpha, tau, plant.eta
        )
        bwd_json = jsonable(bwd)
        hard = hard or bwd.holds is False
    pair = plant_membership_pair(F, cfg.eta, cfg.seed * 32452843 + idx, cfg.floor)
    inter = intersection_check(
        pair.Y, pair.theta, pair.t, pair.alpha, pair.alpha2, pair.tau
    )
    hard = hard or inter.holds is False
    plane = _plane_block(cfg, F, pair, idx)
    hard = hard or not plane["all_agree"]
    return {
        "index": idx,
        "forward": jsonable(fwd),
        "backward": bwd_json,
        "intersection": jsonable(inter),
        "plane": plane,
        "hard_failure": hard,
    }


def _plane_block(cfg: ExperimentConfig, F, pair: MembershipPair, idx: int) -> dict:
    """Identity between a cell and its plane neighbourhood over sampled Y.

    Even indices keep the pair's own gate-passing tuple; odd indices shrink
    the q-side scales so the gate fails and the cell must come out empty.
    """
    t = pair.t
    alpha = pair.alpha
    theta = pair.theta
    tau = pair.tau
    pm, pn = pair.Y.m, pair.Y.n
    gate_breaker = idx % 2 == 1
    if gate_breaker:
        degs = [q.deg if q.deg != NEG_INF else 0 for q in alpha.q]
        t = IndexTuple.of(tuple(t.t[:pm]) + tuple(int(d) for d in degs))
    agree = 0
    total = 0
    members_seen = 0
    for s in range(cfg.plane_samples):
        if s % 2 == 0 and not gate_breaker:
            depth = max(t.t[:pm]) + 4
            deltas = [
                random_series(F, cfg.floor, derive_rng(cfg.seed, "plane-d", idx, s, i)).shift(
                    -depth
                )
                for i in range(pm)
            ]
            Y = solve_matrix_for_residual(
                F,
                alpha.q,
                alpha.p,
                theta,
                deltas,
                cfg.floor,
                cfg.seed * 49979687 + idx * 1009 + s,
                "plane-Y",
            )
        else:
            Y = SeriesMatrix(
                [
                    [
                        random_series(
                            F, cfg.floor, derive_rng(cfg.seed, "plane-rand", idx, s, i, j)
                        )
                        for j in range(pn)
                    ]
                    for i in range(pm)
                ]
            )
        rep = cell_plane_identity_check(Y, theta, t, alpha, tau)
        total += 1
        if rep.holds:
            agree += 1
        if rep.details["cell_member"]:
            members_seen += 1
    return {
        "gate_breaker": gate_breaker,
        "samples": total,
        "agreements": agree,
        "members_seen": members_seen,
        "all_agree": agree == total,
    }


def _audit_tset_payload(cfg: ExperimentConfig) -> dict:
    params = TsetParams(cfg.m, cfg.n, cfg.eta, cfg.mode)
    tau = cfg.tau if cfg.tau is not None else Fraction(1, 8)
    en = tset_enumerate(params, cfg.sigma_bound, tau)
    grid = audit_grid(params, cfg.uv_budget)
    collisions = {
        str(k): v for k, v in sorted(en.multiplicity.items()) if v > 1
    }
    return {
        "levels": {str(k): v for k, v in en.partial_sum_terms()},
        "tuple_count": len(en.tuples),
        "collisions": collisions,
        "grid_audit": jsonable(grid),
        "hard_failure": grid.holds is False,
    }


_SUITE_TASKS = {
    "estimate": _estimate_instance,
    "dirichlet": _dirichlet_instance,
    "transference": _transference_instance,
    "limsup": _limsup_instance,
}


def _run_one(args: tuple[str, int]) -> dict:
    cfg_json, idx = args
    cfg = ExperimentConfig.from_dict(json.loads(cfg_json))
    task = _SUITE_TASKS[cfg.suite]
    try:
        return task(cfg, idx)
    except PrecisionExhaustedError as exc:
        return {"index": idx, "precision_exhausted": str(exc), "hard_failure": False}


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------


def run_config(cfg: ExperimentConfig) -> tuple[dict, int]:
    """Execute the configured suite; returns (report dict, exit code)."""
    started = time.monotonic()
    if cfg.suite == "audit-tset":
        results = [_audit_tset_payload(cfg)]
    else:
        cfg_json = cfg.to_json()
        args = [(cfg_json, i) for i in range(cfg.instances)]
        if cfg.workers > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(_run_one, args))
        else:
            results = [_run_one(a) for a in args]
        results.sort(key=lambda r: r.get("index", 0))
    hard = sum(1 for r in results if r.get("hard_failure"))
    precision = sum(1 for r in results if "precision_exhausted" in r)
    summary = {
        "instances": len(results),
        "hard_failures": hard,
        "precision_exhausted": precision,
    }
    if cfg.suite == "transference":
        summary["bz_holds"] = sum(1 for r in results if r.get("bz", {}).get("holds"))
        summary["dyson_holds"] = sum(
            1 for r in results if r.get("dyson", {}).get("holds")
        )
    if cfg.suite == "dirichlet":
        summary["strict_also"] = sum(1 for r in results if r.get("strict_also"))
    report = {
        "config": cfg.echo_dict(),
        "suite": cfg.suite,
        "results": results,
        "summary": summary,
        "seed": cfg.seed,
        "versions": {
            "ffdioph": __version__,
            "python": f"{sys.version_info[0]}.{sys.version_info[1]}",
        },
        "timing_s": None,
    }
    elapsed = time.monotonic() - started
    print(f"[{cfg.suite}] {len(results)} instance(s) in {elapsed:.2f}s", file=sys.stderr)
    exit_code = 1 if hard else (2 if precision else 0)
    return report, exit_code


def report_json_bytes(report: dict) -> bytes:
    return (
        json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    ).encode("ascii")


def profile_csv_bytes(rows: list[dict]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["T", "B", "minus_B_over_T_num", "minus_B_over_T_den", "censored"])
    for r in rows:
        writer.writerow(
            [
                r["T"],
                r["B"],
                "" if r["minus_B_over_T_num"] is None else r["minus_B_over_T_num"],
                "" if r["minus_B_over_T_den"] is None else r["minus_B_over_T_den"],
                "true" if r["censored"] else "false",
            ]
        )
    return buf.getvalue().encode("ascii")


def write_outputs(report: dict, out_dir, fmt: str = "json") -> list[str]:
    """Write report.json (always) plus CSV profile tables when fmt='csv'."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    written = []
    path = os.path.join(out_dir, "report.json")
    with open(path, "wb") as fh:
        fh.write(report_json_bytes(report))
    written.append(path)
    if fmt == "csv":
        for r in report.get("results", []):
            rows = r.get("profile")
            if rows:
                cpath = os.path.join(out_dir, f"profile_{r['index']:04d}.csv")
                with open(cpath, "wb") as fh:
                    fh.write(profile_csv_bytes(rows))
                written.append(cpath)
    return written
