"""Command-line interface: ``quiverreps <command> [options]``.

Every command prints a report {command, inputs, result, status, version} as
JSON (default) or CSV. Rationals are written as "p/q" strings. Negative
vector arguments must be attached with '=', e.g. ``--lambda=-1/2,1``.

Exit codes: 0 success, 2 bad input, 3 resource cap, 4 unsupported case.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import yaml

from . import __version__
from .errors import DomainError, QuiverRepsError
from .fock import heis_filtration_dims
from .integral import CONJECTURAL, grassmannian_singular_count, predicted_count
from .partitions import as_partition, m_adic_row_decompose, mullineux, wallcross_map
from .quiver import cb_flat, load_quiver, quiver_from_dict
from .rational import fmt, fmt_vector, parse_int_vector, parse_rational, parse_rational_vector
from .walls import (
    chambers,
    classical_walls,
    perverse_profile,
    quantum_walls,
    singular_hyperplanes,
    slice_data,
    translation_bad_hyperplanes,
)
from .weights import freudenthal_mult

EXACT = "exact"


# --------------------------------------------------------------------------- #
# job execution (pure functions of a JSON-able inputs dict)


def _quiver(inputs):
    source = _field(inputs, "quiver")
    return quiver_from_dict(source) if isinstance(source, dict) else load_quiver(source)


def _field(inputs, key):
    if inputs.get(key) is None:
        raise DomainError(f"missing required input {key!r}")
    return inputs[key]


def _vec(inputs, key):
    return parse_int_vector(_field(inputs, key))


def _lam(inputs, key="lambda"):
    return parse_rational_vector(_field(inputs, key))


def _job_count(inputs):
    q = _quiver(inputs)
    res = predicted_count(q, _vec(inputs, "v"), _vec(inputs, "w"), _lam(inputs), inputs.get("slack"))
    return res.to_dict(), res.status


def _job_mult(inputs):
    q = _quiver(inputs)
    return {"mult": freudenthal_mult(q, _vec(inputs, "w"), _vec(inputs, "v"))}, EXACT


def _job_flat(inputs):
    q = _quiver(inputs)
    res = cb_flat(q, _vec(inputs, "v"), _vec(inputs, "w"), inputs.get("flat_cap"))
    return {
        "flat": res.flat,
        "margin": res.margin,
        "witness": res.witness.to_dict() if res.witness else None,
    }, EXACT


def _job_walls(inputs):
    q = _quiver(inputs)
    kind = inputs.get("kind", "classical")
    v = _vec(inputs, "v")
    w = _vec(inputs, "w")
    if kind == "classical":
        walls = classical_walls(q, v, w)
        out = {"walls": [h.to_dict() for h in walls]}
        if inputs.get("chambers"):
            out["chambers"] = [
                {"signs": list(c.signs), "point": fmt_vector(c.point)} for c in chambers(walls, q.n)
            ]
        return out, EXACT
    if kind == "quantum":
        roots = quantum_walls(q, v, _lam(inputs))
        return {"roots": [r.to_dict() for r in roots]}, EXACT
    if kind == "translation":
        hyps = translation_bad_hyperplanes(q, v, w, _vec(inputs, "alpha"), _vec(inputs, "chi"))
        return {"hyperplanes": [h.to_dict() for h in hyps]}, CONJECTURAL
    raise DomainError(f"unknown wall kind {kind!r}")


def _job_singular(inputs):
    q = _quiver(inputs)
    v = _vec(inputs, "v")
    w = _vec(inputs, "w")
    if inputs.get("lambda") is not None:
        if q.n != 1 or q.arrows:
            raise DomainError("--lambda with singular is only defined for the one-vertex quiver")
        lam = _lam(inputs)[0]
        return {"count": grassmannian_singular_count(v[0], w[0], lam)}, CONJECTURAL
    res = singular_hyperplanes(q, v, w)
    unknown = [
        {"root": list(e.root), "k": e.k, "loops": e.loops, "hat_w": e.hat_w} for e in res.unknown
    ]
    status = "unknown-oracle" if unknown else CONJECTURAL
    return {"hyperplanes": [h.to_dict() for h in res.hyperplanes], "unknown": unknown}, status


def _job_slice(inputs):
    q = _quiver(inputs)
    summands = []
    for item in _field(inputs, "summands"):
        vec, _, mult = str(item).partition(":")
        summands.append((parse_int_vector(vec), int(mult or 1)))
    res = slice_data(q, _vec(inputs, "v"), _vec(inputs, "w"), _vec(inputs, "v0"), summands)
    return res.to_dict(), EXACT


def _job_wallcross(inputs):
    p = as_partition(parse_int_vector(inputs["partition"]))
    m = int(inputs["m"])
    p1, p2 = m_adic_row_decompose(p, m)
    return {
        "image": list(wallcross_map(p, m)),
        "decomposition": {"quotient": list(p1), "remainder": list(p2)},
    }, EXACT


def _job_mullineux(inputs):
    p = as_partition(parse_int_vector(inputs["partition"]))
    return {"image": list(mullineux(p, int(inputs["e"])))}, EXACT


def _job_fock_filtration(inputs):
    m, r, n = int(inputs["m"]), int(inputs["r"]), int(inputs["n"])
    return {"m": m, "r": r, "degree": n, "dims": heis_filtration_dims(m, r, n)}, EXACT


def _job_perverse(inputs):
    return perverse_profile(int(inputs["n"]), int(inputs["m"])).to_dict(), EXACT


JOBS = {
    "count": _job_count,
    "mult": _job_mult,
    "flat": _job_flat,
    "walls": _job_walls,
    "singular": _job_singular,
    "slice": _job_slice,
    "wallcross": _job_wallcross,
    "mullineux": _job_mullineux,
    "fock-filtration": _job_fock_filtration,
    "perverse": _job_perverse,
}


def run_job(command: str, inputs: dict) -> dict:
    """Run one command on normalized inputs and wrap the result in a report."""
    result, status = JOBS[command](inputs)
    return {"command": command, "inputs": inputs, "result": result, "status": status, "version": __version__}


def _sweep_row(args):
    command, inputs = args
    try:
        rep = run_job(command, inputs)
        return {"inputs": inputs, "result": rep["result"], "status": rep["status"]}
    except QuiverRepsError as exc:
        return {"inputs": inputs, "result": None, "status": exc.reason, "error": str(exc)}


def run_sweep(command: str, base: dict, grid: dict, jobs: int = 1) -> dict:
    """Cartesian product over ``grid`` (key -> list of values), rows in grid order."""
    keys = list(grid)
    points = []
    if keys and all(grid[k] for k in keys):
        for combo in itertools.product(*(grid[k] for k in keys)):
            inputs = dict(base)
            inputs.update(zip(keys, combo))
            points.append((command, inputs))
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, points))
    else:
        rows = [_sweep_row(p) for p in points]
    return {
        "command": "sweep",
        "inputs": {"command": command, "base": base, "grid": grid},
        "result": {"rows": rows},
        "status": "partial" if any("error" in r for r in rows) else EXACT,
        "version": __version__,
    }


# --------------------------------------------------------------------------- #
# output


# result columns of a sweep table; other commands use the union of result keys
SWEEP_COLUMNS = {
    "count": ("count", "branch"),
    "mult": ("mult",),
    "flat": ("flat", "margin", "witness"),
    "wallcross": ("image",),
    "mullineux": ("image",),
}


def _canonical(obj):
    return json.dumps(obj, sort_keys=False, separators=(",", ":"))


def _flatten(value):
    if isinstance(value, (dict, list, bool)):
        return _canonical(value)
    if value is None:
        return ""
    return str(value)


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    result = report["result"]
    if report["command"] == "sweep":
        rows = result["rows"]
        keys = list(rows[0]["inputs"]) if rows else list(report["inputs"]["grid"])
        command = report["inputs"]["command"]
        res_keys = list(SWEEP_COLUMNS.get(command, ()))
        if not res_keys:
            for r in rows:
                for k in r["result"] or {}:
                    if k not in res_keys and k != "status":
                        res_keys.append(k)
        writer.writerow(keys + res_keys + ["status"])
        for r in rows:
            res = r["result"] or {}
            writer.writerow([_flatten(r["inputs"].get(k)) for k in keys] + [_flatten(res.get(k)) for k in res_keys] + [r["status"]])
    else:
        keys = [k for k in result if k != "status"]
        writer.writerow(keys + ["status", "version"])
        writer.writerow([_flatten(result[k]) for k in keys] + [report["status"], report["version"]])
    return buf.getvalue()


def emit(report: dict, fmt_name: str, out) -> None:
    if fmt_name == "csv":
        out.write(to_csv(report))
    else:
        out.write(json.dumps(report, indent=2) + "\n")


# --------------------------------------------------------------------------- #
# argument parsing


def _add_common(p, *fields):
    if "quiver" in fields:
        p.add_argument("--quiver", required=True, help="built-in name (vertex, a2, d4, jordan, cyclic:3, ...) or a YAML/JSON file")
    if "v" in fields:
        p.add_argument("--v", required=True, help="dimension vector, comma separated")
    if "w" in fields:
        p.add_argument("--w", required=True, help="framing vector, comma separated")
    if "lambda" in fields:
        p.add_argument("--lambda", dest="lam", required=True, help="parameter, comma separated p/q values")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverreps", description="Counting and combinatorics for quantized quiver varieties.")
    parser.add_argument("--version", action="version", version=f"quiverreps {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="predicted number of finite-dimensional irreducibles")
    _add_common(p, "quiver", "v", "w", "lambda")
    p.add_argument("--slack", type=int, default=None, help="weight window slack for affine quivers")

    p = sub.add_parser("mult", help="weight multiplicity dim L_omega[nu]")
    _add_common(p, "quiver", "v", "w")

    p = sub.add_parser("flat", help="flatness of the moment map")
    _add_common(p, "quiver", "v", "w")
    p.add_argument("--flat-cap", type=int, default=None, help="cap on sum(v)")

    p = sub.add_parser("walls", help="classical, quantum or translation walls")
    _add_common(p, "quiver", "v", "w")
    p.add_argument("--kind", choices=("classical", "quantum", "translation"), default="classical")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--alpha", default=None, help="root for --kind translation")
    p.add_argument("--chi", default=None, help="translation vector for --kind translation")
    p.add_argument("--chambers", action="store_true", help="also list chambers (rank <= 4)")

    p = sub.add_parser("singular", help="conjectural singular hyperplanes, or the Grassmannian count with --lambda")
    _add_common(p, "quiver", "v", "w")
    p.add_argument("--lambda", dest="lam", default=None)

    p = sub.add_parser("slice", help="slice quiver data for a decomposition")
    _add_common(p, "quiver", "v", "w")
    p.add_argument("--v0", required=True)
    p.add_argument("--summand", action="append", required=True, help="root with multiplicity, e.g. 1,1:2")

    p = sub.add_parser("wallcross", help="combinatorial wall-crossing of a partition")
    p.add_argument("--partition", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("mullineux", help="Mullineux image of an e-regular partition")
    p.add_argument("--partition", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("fock-filtration", help="Heisenberg filtration dimensions on the level-r Fock space")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("perverse", help="perverse filtration constants q and d_i")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sweep", help="evaluate a command over a grid")
    p.add_argument("--grid", help="YAML/JSON file: {command, base: {...}, grid: {key: [values]}}")
    p.add_argument("--sweep-command", dest="sweep_command", default="count", choices=sorted(JOBS))
    p.add_argument("--quiver")
    p.add_argument("--w")
    p.add_argument("--v", action="append", default=None, help="repeatable; one grid value per flag")
    p.add_argument("--lambda", dest="lam", action="append", default=None, help="repeatable")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("rerun", help="re-run the inputs recorded in a JSON report")
    p.add_argument("report", help="path to a report, or - for stdin")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _norm_vec(text):
    return ",".join(str(x) for x in parse_int_vector(text))


def _norm_lam(text):
    return ",".join(fmt(x) for x in parse_rational_vector(text))


def inputs_from_args(args) -> dict:
    """Normalized, JSON-able inputs; this is what reports echo."""
    c = args.command
    d: dict = {}
    if getattr(args, "quiver", None) is not None:
        d["quiver"] = _quiver_input(args.quiver)
    for key in ("v", "w", "v0"):
        val = getattr(args, key, None)
        if val is not None and c != "sweep":
            d[key] = _norm_vec(val)
    if getattr(args, "lam", None) is not None and c != "sweep":
        d["lambda"] = _norm_lam(args.lam)
    if c == "count" and args.slack is not None:
        d["slack"] = args.slack
    if c == "flat" and args.flat_cap is not None:
        d["flat_cap"] = args.flat_cap
    if c == "walls":
        d["kind"] = args.kind
        if args.alpha is not None:
            d["alpha"] = _norm_vec(args.alpha)
        if args.chi is not None:
            d["chi"] = _norm_vec(args.chi)
        if args.chambers:
            d["chambers"] = True
    if c == "slice":
        d["summands"] = list(args.summand)
    if c in ("wallcross", "mullineux"):
        d["partition"] = _norm_vec(args.partition)
        d["m" if c == "wallcross" else "e"] = args.m if c == "wallcross" else args.e
    if c == "fock-filtration":
        d.update(m=args.m, r=args.r, n=args.n)
    if c == "perverse":
        d.update(n=args.n, m=args.m)
    return d


def _quiver_input(source: str):
    path = Path(source)
    if path.suffix.lower() in {".yaml", ".yml", ".json"} or path.is_file():
        return load_quiver(source).to_dict()
    load_quiver(source)  # validate the name early
    return source


def _sweep_from_args(args):
    if args.grid:
        try:
            source = yaml.safe_load(Path(args.grid).read_text())
        except (OSError, yaml.YAMLError) as exc:
            raise DomainError(f"cannot read grid file: {exc}") from exc
        command = source.get("command", "count")
        base = dict(source.get("base", {}))
        grid = {k: [str(x) for x in vals] for k, vals in (source.get("grid") or {}).items()}
    else:
        command = args.sweep_command
        base = {}
        if args.quiver:
            base["quiver"] = _quiver_input(args.quiver)
        if args.w:
            base["w"] = _norm_vec(args.w)
        grid = {}
        if args.v is not None:
            grid["v"] = [_norm_vec(x) for x in args.v]
        if args.lam is not None:
            grid["lambda"] = [_norm_lam(x) for x in args.lam]
    if command not in JOBS:
        raise DomainError(f"unknown sweep command {command!r}")
    if "quiver" in base and isinstance(base["quiver"], str):
        base["quiver"] = _quiver_input(base["quiver"])
    return command, base, grid


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.command == "sweep":
            command, base, grid = _sweep_from_args(args)
            report = run_sweep(command, base, grid, args.jobs)
        elif args.command == "rerun":
            text = sys.stdin.read() if args.report == "-" else Path(args.report).read_text()
            try:
                old = json.loads(text)
            except json.JSONDecodeError as exc:
                raise DomainError(f"report is not valid JSON: {exc}") from exc
            if old.get("command") == "sweep":
                inp = old["inputs"]
                report = run_sweep(inp["command"], inp["base"], inp["grid"])
            else:
                report = run_job(old["command"], old["inputs"])
        else:
            report = run_job(args.command, inputs_from_args(args))
    except QuiverRepsError as exc:
        err = {"error": exc.reason, "message": str(exc), "exit_code": exc.exit_code, "version": __version__}
        out.write(json.dumps(err) + "\n")
        print(f"quiverreps: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        out.write(json.dumps({"error": "io", "message": str(exc), "exit_code": 2}) + "\n")
        return 2
    emit(report, args.format, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
