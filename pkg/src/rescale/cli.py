"""Command-line front end.

Subcommands ingest measured series (CSV or JSON), orchestrate the library
pipelines, and emit deterministic JSON reports: fit-extrapolate,
check-scalable, oracle, fib-poly, and compose-coeffs. Reports serialize
with sorted keys; --deterministic (or RESCALE_DETERMINISTIC=1) drops the
timestamp so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import platform
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .data import bundled_series_path
from .errors import ParseError, RescaleError, UnknownSelector
from .oracle import additivity_probe, bell_diagonal_state, isotropic_state
from .osd import check_sqrtn_scalable
from .scal1 import (
    SeriesPoly1S,
    additive_family,
    check_1s,
    first_order_exponent,
    maclaurin_coeffs,
    multiplicative_family,
    triangular_family,
)
from .scal2 import extrapolate_2s, fit_2s, superactivation_check
from .types import CopyLattice, ResourceSeries, UncertainValue

SQRTN_PROBE_PAIRS = ((0.5, 1.0), (1.0, 2.5), (1.002, 3.696), (2.0, 5.0))


# ---------------------------------------------------------------------------
# series file ingestion


def _parse_meta_value(key: str, raw: str):
    if key in ("base", "ratio"):
        return int(raw)
    if key == "per_copy":
        low = raw.strip().lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise ValueError(f"bad boolean {raw!r}")
    return raw


def _series_from_records(meta: dict, records: list[tuple[int, float, float]]):
    for key in ("base", "ratio"):
        if key not in meta:
            raise ParseError(f"metadata key {key!r} is required")
    meta.setdefault("per_copy", False)
    meta.setdefault("units", "ebits")
    lattice = CopyLattice(meta["base"], meta["ratio"])
    points = {
        n: UncertainValue(value, sigma) for n, value, sigma in records
    }
    series = ResourceSeries.from_measurements(
        lattice, points, per_copy=meta["per_copy"]
    )
    return series, meta


def _parse_csv_series(text: str):
    meta: dict = {}
    data_lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped.lstrip("#").strip()
            if "=" in body:
                key, _, raw = body.partition("=")
                key = key.strip()
                try:
                    meta[key] = _parse_meta_value(key, raw.strip())
                except ValueError as exc:
                    raise ParseError(f"bad metadata line {line!r}: {exc}") from exc
            continue
        data_lines.append(line)
    if not data_lines:
        raise ParseError("no data rows found")
    reader = csv.DictReader(data_lines)
    if set(reader.fieldnames or []) != {"N", "value", "sigma"}:
        raise ParseError(
            f"CSV header must be N,value,sigma; got {reader.fieldnames}"
        )
    records = []
    for row in reader:
        try:
            records.append((int(row["N"]), float(row["value"]), float(row["sigma"])))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad data row {row!r}: {exc}") from exc
    return _series_from_records(meta, records)


def _parse_json_series(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "meta" not in doc or "points" not in doc:
        raise ParseError("JSON series needs top-level 'meta' and 'points'")
    meta = dict(doc["meta"])
    try:
        records = [
            (int(p["N"]), float(p["value"]), float(p["sigma"]))
            for p in doc["points"]
        ]
    except (TypeError, KeyError, ValueError) as exc:
        raise ParseError(f"bad points array: {exc}") from exc
    return _series_from_records(meta, records)


def parse_series_file(path: Path):
    """Load a measurement series; format picked by file extension only."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return _parse_csv_series(text)
    if suffix == ".json":
        return _parse_json_series(text)
    raise ParseError(f"unsupported extension {suffix!r}; use .csv or .json")


# ---------------------------------------------------------------------------
# report plumbing


def _uv(value: UncertainValue) -> dict:
    return {"value": value.value, "sigma": value.sigma}


def _digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _digest_params(params: dict) -> str:
    return _digest_bytes(json.dumps(params, sort_keys=True).encode())


def _deterministic(args) -> bool:
    return bool(args.deterministic) or os.environ.get("RESCALE_DETERMINISTIC") == "1"


def build_report(args, inputs: dict, outputs: dict, warning_messages=()) -> dict:
    report = {
        "command": args.command,
        "inputs": inputs,
        "outputs": outputs,
        "warnings": list(warning_messages),
        "versions": {
            "rescale": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
    }
    if not _deterministic(args):
        report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return report


def emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_fit_extrapolate(args) -> dict:
    path = Path(args.input) if args.input else bundled_series_path()
    series, meta = parse_series_file(path)
    targets = args.target or [series.lattice.base * 2**4]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        model = fit_2s(series)
        extrapolations = []
        for copies in targets:
            total = extrapolate_2s(model, copies)
            pipeline = extrapolate_2s(model, copies, sigma_method="pipeline")
            extrapolations.append(
                {
                    "N": copies,
                    "total": _uv(total),
                    "per_copy": {
                        "value": total.value / copies,
                        "sigma": total.sigma / copies,
                    },
                    "sigma_pipeline": {
                        "total": pipeline.sigma,
                        "per_copy": pipeline.sigma / copies,
                    },
                }
            )
        verdict = superactivation_check(model)
    knots = [
        {"N": n, "total": _uv(v), "per_copy": {"value": v.value / n, "sigma": v.sigma / n}}
        for n, v in model.knots.points.items()
    ]
    outputs = {
        "lattice": {"base": series.lattice.base, "ratio": series.lattice.ratio},
        "units": meta["units"],
        "model": {
            "e": _uv(model.e),
            "f": _uv(model.f),
            "x": _uv(model.x),
            "y": _uv(model.y),
        },
        "knots": knots,
        "residual_diagnostics": [
            {"N": n, "relative_residual": r} for n, r in model.residuals
        ],
        "extrapolations": extrapolations,
        "superactivation": {
            "additive_at_2": verdict.additive_at_2,
            "additive_at_4": verdict.additive_at_4,
            "gap": verdict.gap,
        },
    }
    inputs = {
        "path": str(path),
        "sha256": _digest_bytes(path.read_bytes()),
        "targets": list(targets),
    }
    return build_report(args, inputs, outputs, sorted({str(w.message) for w in caught}))


def _divisor_pairs(n_max: int) -> list[tuple[int, int]]:
    """(N, K) pairs on the base-1 ratio-2 lattice with K < N <= n_max."""
    pairs = []
    n = 4
    while n <= n_max:
        k = 2
        while k < n:
            pairs.append((n, k))
            k *= 2
        n *= 2
    return pairs


def cmd_check_scalable(args) -> dict:
    family = args.family
    if family in ("additive", "multiplicative", "triangular"):
        if family == "additive":
            measure = additive_family()
        elif family == "multiplicative":
            measure = multiplicative_family(args.lam)
        else:
            measure = triangular_family()
        checks = []
        for n, k in _divisor_pairs(args.n_max):
            report = check_1s(measure, n, k, rel_tol=args.rel_tol)
            checks.append(
                {
                    "N": n,
                    "K": k,
                    "passed": report.passed,
                    "max_violation": report.max_violation,
                    "max_abs_violation": report.max_abs_violation,
                }
            )
        params = {"family": family, "n_max": args.n_max, "rel_tol": args.rel_tol}
        if family == "multiplicative":
            params["lam"] = args.lam
    elif family == "sqrtn":
        checks = []
        for k in (2, 3, 4):
            for mult in (1, 2, 4):
                n = k * args.ref_hi * mult
                if n > args.n_max:
                    continue
                worst = 0.0
                for e, f in SQRTN_PROBE_PAIRS:
                    report = check_sqrtn_scalable(
                        args.ref_lo, args.ref_hi, n, k, e, f, rel_tol=args.rel_tol
                    )
                    worst = max(worst, report.violation)
                checks.append(
                    {
                        "L": args.ref_lo,
                        "M": args.ref_hi,
                        "K": k,
                        "N": n,
                        "passed": worst <= args.rel_tol,
                        "max_violation": worst,
                    }
                )
        params = {
            "family": family,
            "L": args.ref_lo,
            "M": args.ref_hi,
            "n_max": args.n_max,
            "rel_tol": args.rel_tol,
        }
    else:
        raise UnknownSelector(
            f"unknown family {family!r}; pick additive, multiplicative, "
            f"triangular, or sqrtn"
        )
    worst_first = sorted(checks, key=lambda c: -c["max_violation"])
    outputs = {
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
        "worst": worst_first[:5],
    }
    return build_report(args, {"params": params, "sha256": _digest_params(params)}, outputs)


def cmd_oracle(args) -> dict:
    if args.state == "bell":
        state = bell_diagonal_state(args.p)
        described = {"state": "bell", "p": args.p}
    elif args.state == "isotropic":
        state = isotropic_state(args.d, args.fidelity)
        described = {"state": "isotropic", "d": args.d, "fidelity": args.fidelity}
    else:
        raise UnknownSelector(f"unknown state {args.state!r}; pick bell or isotropic")
    probe = additivity_probe(state, args.n_max)
    outputs = {
        "state": described,
        "values": [{"n": n, "log_negativity": v} for n, v in probe.values],
        "max_deviation_from_linear": probe.max_deviation_from_linear,
    }
    params = dict(described, n_max=args.n_max)
    return build_report(args, {"params": params, "sha256": _digest_params(params)}, outputs)


def cmd_fib_poly(args) -> dict:
    from .comb import eval_poly, fibonacci_poly_coeffs

    coeffs = fibonacci_poly_coeffs(args.n)
    outputs = {"n": args.n, "coefficients": coeffs, "degree": max(0, args.n - 1)}
    if args.xi is not None:
        outputs["xi"] = args.xi
        outputs["value"] = eval_poly(coeffs, args.xi)
    params = {"n": args.n, "xi": args.xi}
    return build_report(args, {"params": params, "sha256": _digest_params(params)}, outputs)


def cmd_compose_coeffs(args) -> dict:
    try:
        coeffs = [float(tok) for tok in args.coeffs.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"bad coefficient list {args.coeffs!r}: {exc}") from exc
    if not coeffs:
        raise ParseError("need at least one coefficient")
    base = SeriesPoly1S(args.ratio, tuple(coeffs))
    order = args.order if args.order else len(coeffs)
    result = maclaurin_coeffs(base, args.steps, order)
    outputs = {
        "base_copies": args.ratio,
        "base_coefficients": list(base.coeffs),
        "steps": args.steps,
        "copies": result.copies,
        "coefficients": list(result.coeffs),
    }
    if coeffs[0] > 0:
        outputs["first_order_exponent"] = first_order_exponent(coeffs[0], args.ratio)
    params = {"ratio": args.ratio, "coeffs": coeffs, "steps": args.steps, "order": order}
    return build_report(args, {"params": params, "sha256": _digest_params(params)}, outputs)


# ---------------------------------------------------------------------------
# parser wiring


def _add_common(sub) -> None:
    sub.add_argument("--output", help="write the JSON report here instead of stdout")
    sub.add_argument(
        "--deterministic",
        action="store_true",
        help="omit the timestamp so identical runs emit identical bytes "
        "(RESCALE_DETERMINISTIC=1 does the same)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rescale",
        description="Self-similar scaling toolkit for copy-count resource data.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    fit = subs.add_parser(
        "fit-extrapolate",
        help="fit (x, y) to the first four lattice knots and extrapolate",
    )
    fit.add_argument(
        "--input",
        help="series file (.csv or .json); defaults to the bundled dataset",
    )
    fit.add_argument(
        "--target",
        action="append",
        type=int,
        help="copy count to extrapolate to (repeatable); defaults to base*2**4",
    )
    _add_common(fit)
    fit.set_defaults(handler=cmd_fit_extrapolate)

    chk = subs.add_parser(
        "check-scalable",
        help="run regrouping-consistency checks over divisor pairs",
    )
    chk.add_argument(
        "family", help="additive | multiplicative | triangular | sqrtn"
    )
    chk.add_argument("--lam", type=float, default=2.0, help="multiplicative scale")
    chk.add_argument("--ref-lo", dest="ref_lo", type=int, default=6, help="sqrtn L")
    chk.add_argument("--ref-hi", dest="ref_hi", type=int, default=12, help="sqrtn M")
    chk.add_argument("--n-max", dest="n_max", type=int, default=64)
    chk.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-10)
    _add_common(chk)
    chk.set_defaults(handler=cmd_check_scalable)

    orc = subs.add_parser(
        "oracle", help="brute-force log-negativity additivity table"
    )
    orc.add_argument("state", help="bell | isotropic")
    orc.add_argument("--p", type=float, default=0.8, help="bell mixing weight")
    orc.add_argument("--d", type=int, default=3, help="isotropic local dimension")
    orc.add_argument(
        "--fidelity", type=float, default=0.9, help="isotropic fidelity weight"
    )
    orc.add_argument("--n-max", dest="n_max", type=int, default=3)
    _add_common(orc)
    orc.set_defaults(handler=cmd_oracle)

    fib = subs.add_parser("fib-poly", help="print Fibonacci-polynomial coefficients")
    fib.add_argument("--n", type=int, required=True)
    fib.add_argument("--xi", type=float, help="also evaluate at this point")
    _add_common(fib)
    fib.set_defaults(handler=cmd_fib_poly)

    cc = subs.add_parser(
        "compose-coeffs",
        help="transport series coefficients up the lattice by composition",
    )
    cc.add_argument(
        "--coeffs", required=True, help="comma-separated d_1,d_2,... at N=ratio"
    )
    cc.add_argument("--ratio", type=int, default=2)
    cc.add_argument("--steps", type=int, required=True, help="lattice steps to climb")
    cc.add_argument("--order", type=int, help="truncation order (default: len(coeffs))")
    _add_common(cc)
    cc.set_defaults(handler=cmd_compose_coeffs)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except RescaleError as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(json.dumps(error, sort_keys=True, indent=2) + "\n")
        return 1
    emit(report, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
