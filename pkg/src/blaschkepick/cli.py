"""Command line interface: analyze, crosscheck, fuzz.

Problem files are JSON objects of the form

    {
      "blaschke": {"zeros": [[re, im], ...], "u": [re, im]},
      "points":   [[re, im], {"angle": 1.5707963}, ...],
      "orders":   [3, 1],
      "tolerances": {"rank": 1e-8, "pd": 1e-10}
    }

`analyze` reads `orders` as contact orders m_i; `crosscheck` reads them as
derivative orders k_i.  Reports carry a top-level "schema": 1 and encode
complex numbers as [re, im] pairs.  Exit codes: 0 success, 2 validation
error, 3 rank mismatch, 4 cross-route residual breach, 5 fuzz
counterexample found.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .blaschke import BlaschkeProduct, blaschke_from_json, blaschke_to_json, make_blaschke, taylor_jet
from .errors import BlaschkePickError, RankMismatch
from .hermitian import HermitianReport, make_report, numerical_rank
from .pick import admissible, extract_data
from .realization import realize, sp_via_realization
from .schwarz_pick import sp_boundary_radial, sp_boundary_structured
from .serialize import complex_to_pair, matrix_to_json
from .uniqueness import (
    ContactProblem,
    NonUniqueCertificate,
    Tolerances,
    UniqueCertificate,
    Verdict,
    decide,
)

ROUTE_RESIDUAL_LIMIT = 1e-8
POINT_MODULUS_SLACK = 1e-6

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RANK_MISMATCH = 3
EXIT_RESIDUAL = 4
EXIT_COUNTEREXAMPLE = 5


class ProblemFileError(Exception):
    """Problem file is missing, malformed, or semantically invalid."""


# ---------------------------------------------------------------- parsing


def _parse_point(obj, where: str) -> complex:
    if isinstance(obj, dict):
        if set(obj.keys()) != {"angle"}:
            raise ProblemFileError(f"{where}: point objects must be {{\"angle\": radians}}")
        theta = float(obj["angle"])
        return complex(math.cos(theta), math.sin(theta))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        t = complex(float(obj[0]), float(obj[1]))
        if abs(abs(t) - 1.0) > POINT_MODULUS_SLACK:
            raise ProblemFileError(f"{where}: |t| = {abs(t)} is not within {POINT_MODULUS_SLACK} of 1")
        return t / abs(t)
    raise ProblemFileError(f"{where}: points must be [re, im] or {{\"angle\": radians}}")


def _load_problem(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ProblemFileError("problem file must be a JSON object")
    for key in ("blaschke", "points", "orders"):
        if key not in obj:
            raise ProblemFileError(f"missing required key {key!r}")
    braw = obj["blaschke"]
    if not isinstance(braw, dict) or "zeros" not in braw or "u" not in braw:
        raise ProblemFileError("\"blaschke\" must contain \"zeros\" and \"u\"")
    try:
        b = blaschke_from_json(braw)
    except (BlaschkePickError, ValueError, TypeError, IndexError) as exc:
        raise ProblemFileError(f"invalid blaschke description: {exc}") from exc
    raw_points = obj["points"]
    if not isinstance(raw_points, list) or not raw_points:
        raise ProblemFileError("\"points\" must be a nonempty list")
    points = [_parse_point(p, f"points[{i}]") for i, p in enumerate(raw_points)]
    raw_orders = obj["orders"]
    if not isinstance(raw_orders, list) or len(raw_orders) != len(points):
        raise ProblemFileError("\"orders\" must be a list matching \"points\" in length")
    try:
        orders = [int(m) for m in raw_orders]
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f"orders must be integers: {exc}") from exc
    tol = obj.get("tolerances", {})
    if not isinstance(tol, dict):
        raise ProblemFileError("\"tolerances\" must be an object")
    return b, points, orders, tol


def _tolerances(args, file_tol: dict) -> Tolerances:
    rank = args.tol_rank if args.tol_rank is not None else file_tol.get("rank")
    pd = args.tol_pd if args.tol_pd is not None else file_tol.get("pd")
    base = Tolerances()
    return Tolerances(
        rank=float(rank) if rank is not None else base.rank,
        pd=float(pd) if pd is not None else base.pd,
    )


# ---------------------------------------------------------------- reports


def _report_json(report: HermitianReport) -> dict:
    return {
        "matrix": matrix_to_json(report.matrix),
        "eigenvalues": [float(w) for w in report.eigenvalues],
        "numerical_rank": report.numerical_rank,
        "psd": report.psd,
        "pd": report.pd,
        "rank_tolerance": report.rank_tol,
        "pd_tolerance": report.pd_tol,
        "hermitian_defect": report.defect,
    }


def _certificate_json(verdict: Verdict) -> dict:
    cert = verdict.certificate
    if isinstance(cert, UniqueCertificate):
        return {
            "type": "singular_pick",
            "rank": cert.rank,
            "order_total": cert.order_total,
            "degree": verdict.degree,
        }
    assert isinstance(cert, NonUniqueCertificate)
    comp = cert.completion
    return {
        "type": "completed_extension",
        "diagonal_shift": comp.shift,
        "margin": comp.margin,
        "complementary_indices": list(comp.complementary),
        "corner_values": [
            {"point_index": i, "value": complex_to_pair(v)} for i, v in comp.corner_targets
        ],
        "supplementary_values": [
            {
                "point_index": i,
                "coefficient_index": 2 * verdict.derivative_orders[i] + 1,
                "value": complex_to_pair(v),
            }
            for i, v in cert.supplementary
        ],
        "partition": {"odd": list(cert.odd_points), "even": list(cert.even_points)},
        "roundtrip_residual": cert.roundtrip_residual,
        "extended": _report_json(cert.extended_report),
    }


def _route_residuals(b: BlaschkeProduct, points, ks) -> dict:
    jets = [taylor_jet(b, t, 2 * k - 1) for t, k in zip(points, ks)]
    structured = sp_boundary_structured(jets, points, ks).flat
    via_real = sp_via_realization(realize(b), points, ks)
    diff = float(np.max(np.abs(structured - via_real))) if structured.size else 0.0
    norm = float(np.max(np.abs(structured))) if structured.size else 0.0
    return {
        "structured_vs_realization_max_abs": diff,
        "structured_vs_realization": diff / (1.0 + norm),
    }


def _render_text(value, indent: int = 0, label: str | None = None) -> list[str]:
    pad = "  " * indent
    head = f"{pad}{label}: " if label is not None else pad
    if isinstance(value, dict):
        lines = [f"{pad}{label}:"] if label is not None else []
        for key, sub in value.items():
            lines.extend(_render_text(sub, indent + (1 if label is not None else 0), key))
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [head + json.dumps(value)]
        lines = [f"{pad}{label}:"] if label is not None else []
        for idx, sub in enumerate(value):
            lines.extend(_render_text(sub, indent + 1, f"[{idx}]"))
        return lines
    return [head + json.dumps(value)]


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_render_text(report)))


# ---------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    try:
        b, points, orders, file_tol = _load_problem(args.problem)
        for m in orders:
            if m < 1:
                raise ProblemFileError(f"contact orders must be >= 1, got {m}")
    except ProblemFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    tol = _tolerances(args, file_tol)
    start = time.perf_counter()
    try:
        problem = ContactProblem(b=b, points=tuple(points), contact_orders=tuple(orders))
        verdict = decide(problem, tol)
    except RankMismatch as exc:
        print(f"rank mismatch: {exc}", file=sys.stderr)
        return EXIT_RANK_MISMATCH
    except (BlaschkePickError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    elapsed = time.perf_counter() - start
    report = {
        "schema": 1,
        "command": "analyze",
        "verdict": verdict.tag,
        "contact_orders": list(problem.contact_orders),
        "derivative_orders": list(verdict.derivative_orders),
        "order_total": verdict.order_total,
        "degree": verdict.degree,
        "points": [complex_to_pair(t) for t in problem.points],
        "pick": _report_json(verdict.pick),
        "certificate": _certificate_json(verdict),
        "route_residuals": _route_residuals(b, list(problem.points), list(verdict.derivative_orders)),
        "wall_time_seconds": elapsed,
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    try:
        b, points, orders, _ = _load_problem(args.problem)
        for k in orders:
            if k < 1:
                raise ProblemFileError(f"derivative orders must be >= 1, got {k}")
    except ProblemFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    depth = args.radial_depth
    schedule = tuple(1.0 - 2.0 ** -m for m in range(4, depth + 1))
    start = time.perf_counter()
    try:
        jets = [taylor_jet(b, t, 2 * k - 1) for t, k in zip(points, orders)]
        structured = sp_boundary_structured(jets, points, orders)
        via_real = sp_via_realization(realize(b), points, orders)
        radial, diags = sp_boundary_radial(b, points, orders, schedule)
    except (BlaschkePickError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    elapsed = time.perf_counter() - start
    norm = float(np.max(np.abs(structured.flat))) if structured.flat.size else 0.0
    diff_real = float(np.max(np.abs(structured.flat - via_real))) if structured.flat.size else 0.0
    residual = diff_real / (1.0 + norm)
    radial_gap = float(np.max(np.abs(structured.flat - radial.flat))) if structured.flat.size else 0.0
    report = {
        "schema": 1,
        "command": "crosscheck",
        "degree": b.degree,
        "points": [complex_to_pair(t) for t in structured.points],
        "orders": list(structured.orders),
        "structured": matrix_to_json(structured.flat),
        "realization": matrix_to_json(via_real),
        "radial": matrix_to_json(radial.flat),
        "structured_vs_realization_max_abs": diff_real,
        "structured_vs_realization": residual,
        "residual_limit": ROUTE_RESIDUAL_LIMIT,
        "radial_gap_max_abs": radial_gap,
        "radial_converged": diags.converged,
        "radial_depth": depth,
        "radial_final_radius": schedule[-1],
        "wall_time_seconds": elapsed,
    }
    _emit(report, args.format)
    return EXIT_OK if residual <= ROUTE_RESIDUAL_LIMIT else EXIT_RESIDUAL


# ---------------------------------------------------------------- fuzzing


def _random_instance(rng, degree_max: int, points_max: int, order_max: int) -> dict:
    d = int(rng.integers(0, degree_max + 1))
    zeros = []
    for _ in range(d):
        radius = 0.75 * math.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * math.pi)
        zeros.append(radius * complex(math.cos(theta), math.sin(theta)))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    u = complex(math.cos(phi), math.sin(phi))
    n = int(rng.integers(1, points_max + 1))
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        wrap = np.concatenate([np.diff(angles), [angles[0] + 2.0 * math.pi - angles[-1]]])
        if n == 1 or float(np.min(wrap)) >= 0.35:
            break
    points = [complex(math.cos(a), math.sin(a)) for a in angles]
    orders = [int(rng.integers(1, order_max + 1)) for _ in range(n)]
    return {"zeros": zeros, "u": u, "points": points, "orders": orders}


def _check_instance(inst) -> tuple[str, str] | None:
    b = make_blaschke(inst["zeros"], inst["u"])
    points = inst["points"]
    ks = inst["orders"]
    jets = [taylor_jet(b, t, 2 * k - 1) for t, k in zip(points, ks)]
    structured = sp_boundary_structured(jets, points, ks).flat
    norm = float(np.max(np.abs(structured))) if structured.size else 0.0

    defect = float(np.max(np.abs(structured - structured.conj().T))) if structured.size else 0.0
    if defect > 1e-9 * max(1.0, norm):
        return ("hermitian", f"defect {defect} exceeds {1e-9 * max(1.0, norm)}")

    expected = min(sum(ks), b.degree)
    report = make_report(structured, strict=False)
    if report.numerical_rank != expected:
        # A spectrum can straddle any single cutoff when sum(ks) and the
        # degree collide, so call the law broken only when no cutoff in a
        # wide band reads the expected rank.
        certain = numerical_rank(structured, 1e-6)
        plausible = numerical_rank(structured, 1e-10)
        if not certain <= expected <= plausible:
            return (
                "rank_law",
                f"rank {report.numerical_rank}, expected {expected}, "
                f"bracket [{certain}, {plausible}]",
            )

    via_real = sp_via_realization(realize(b), points, ks)
    diff = float(np.max(np.abs(structured - via_real))) if structured.size else 0.0
    if diff > 1e-8 * (1.0 + norm):
        return ("route_agreement", f"max abs diff {diff} exceeds {1e-8 * (1.0 + norm)}")

    data = extract_data(b, points, [2 * k - 1 for k in ks])
    verdict = admissible(data, ks)
    if not verdict:
        return ("admissibility", f"modulus_ok={verdict.modulus_ok} psd_ok={verdict.psd_ok}")
    return None


def _shrink_candidates(inst):
    n = len(inst["points"])
    if n > 1:
        for i in range(n):
            yield {
                "zeros": inst["zeros"],
                "u": inst["u"],
                "points": inst["points"][:i] + inst["points"][i + 1 :],
                "orders": inst["orders"][:i] + inst["orders"][i + 1 :],
            }
    for i in range(n):
        if inst["orders"][i] > 1:
            orders = list(inst["orders"])
            orders[i] -= 1
            yield {**inst, "orders": orders}
    for j in range(len(inst["zeros"])):
        yield {**inst, "zeros": inst["zeros"][:j] + inst["zeros"][j + 1 :]}


def _minimize(inst, failure):
    while True:
        for cand in _shrink_candidates(inst):
            cand_failure = _check_instance(cand)
            if cand_failure is not None:
                inst, failure = cand, cand_failure
                break
        else:
            return inst, failure


def _instance_json(inst) -> dict:
    return {
        "blaschke": blaschke_to_json(make_blaschke(inst["zeros"], inst["u"])),
        "points": [complex_to_pair(t) for t in inst["points"]],
        "orders": list(inst["orders"]),
    }


def cmd_fuzz(args) -> int:
    rng = np.random.default_rng(args.seed)
    start = time.perf_counter()
    for trial in range(args.trials):
        inst = _random_instance(rng, args.degree_max, args.points_max, args.order_max)
        failure = _check_instance(inst)
        if failure is not None:
            inst, failure = _minimize(inst, failure)
            report = {
                "schema": 1,
                "command": "fuzz",
                "seed": args.seed,
                "trials_run": trial + 1,
                "property": failure[0],
                "detail": failure[1],
                "counterexample": _instance_json(inst),
                "wall_time_seconds": time.perf_counter() - start,
            }
            _emit(report, args.format)
            return EXIT_COUNTEREXAMPLE
    report = {
        "schema": 1,
        "command": "fuzz",
        "seed": args.seed,
        "trials": args.trials,
        "failures": 0,
        "properties": ["hermitian", "rank_law", "route_agreement", "admissibility"],
        "wall_time_seconds": time.perf_counter() - start,
    }
    _emit(report, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="report format")
    common.add_argument("--tol-rank", type=float, default=None, help="numerical rank cutoff")
    common.add_argument("--tol-pd", type=float, default=None, help="positive definiteness cutoff")
    common.add_argument(
        "--radial-depth",
        type=int,
        default=20,
        help="last exponent m of the radial schedule r = 1 - 2^-m",
    )
    parser = argparse.ArgumentParser(
        prog="blaschkepick",
        description="Boundary Schwarz-Pick and Pick matrices for finite Blaschke products",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser(
        "analyze",
        parents=[common],
        help="decide uniqueness of a boundary contact problem (orders are contact orders m)",
    )
    p_analyze.add_argument("problem", help="path to a JSON problem file")
    p_analyze.set_defaults(func=cmd_analyze)

    p_cross = sub.add_parser(
        "crosscheck",
        parents=[common],
        help="compare the three boundary routes (orders are derivative orders k)",
    )
    p_cross.add_argument("problem", help="path to a JSON problem file")
    p_cross.set_defaults(func=cmd_crosscheck)

    p_fuzz = sub.add_parser(
        "fuzz", parents=[common], help="randomized self-checks of the matrix laws"
    )
    p_fuzz.add_argument("--trials", type=int, default=100)
    p_fuzz.add_argument("--degree-max", type=int, default=6)
    p_fuzz.add_argument("--points-max", type=int, default=3)
    p_fuzz.add_argument("--order-max", type=int, default=3)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "crosscheck" and args.radial_depth < 5:
        print("error: --radial-depth must be at least 5", file=sys.stderr)
        return EXIT_VALIDATION
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())
