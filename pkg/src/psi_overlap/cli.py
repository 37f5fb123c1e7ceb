"""Command-line front end.

Usage:
    psi-overlap table1 --format csv
    psi-overlap bound --dim 3
    psi-overlap triples --dim 4
    psi-overlap lp-omega --dim 3 --out witness.json
    psi-overlap lp-minoverlap --dim 3 --pair p,m
    psi-overlap noise-scan --dmin 3 --dmax 40
    psi-overlap validate witness.json

Exit status: 0 success, 1 a checked expectation failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import bounds, ontic, quantum, vertexlp
from .modelio import load_model, model_to_dict
from .ontic import ModelError

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
SIG_DIGITS = 12


class UsageError(Exception):
    pass


def fmt_number(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _cell(value: Any) -> Any:
    """Round floats to the printed precision; leave everything else alone."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return float(fmt_number(value))
    return value


def _text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_number(value)
    return str(value)


def emit(columns: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str, meta: dict | None = None) -> str:
    """Render a result table as ``table``, ``csv`` or ``json``."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_text(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        doc = {"columns": list(columns), "rows": [{c: _cell(v) for c, v in zip(columns, row)} for row in rows]}
        if meta:
            doc["meta"] = {k: _cell(v) for k, v in meta.items()}
        return json.dumps(doc, indent=1) + "\n"
    cells = [list(columns)] + [[_text(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for k, v in (meta or {}).items():
        lines.append(f"# {k}: {_text(v)}")
    return "\n".join(lines) + "\n"


def _parse_value(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse(text: str, fmt: str) -> tuple[list[str], list[list[Any]], dict]:
    """Inverse of :func:`emit` for ``csv`` and ``json``."""
    if fmt == "csv":
        reader = list(csv.reader(io.StringIO(text)))
        return reader[0], [[_parse_value(v) for v in row] for row in reader[1:]], {}
    if fmt == "json":
        doc = json.loads(text)
        cols = doc["columns"]
        return cols, [[row[c] for c in cols] for row in doc["rows"]], doc.get("meta", {})
    raise ValueError(f"cannot parse format {fmt!r}")


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError("expected two labels separated by a comma, e.g. p,m")
    return parts[0], parts[1]


def _family_dim(args) -> int:
    if args.dim is None or args.dim < 3:
        raise UsageError("--dim must be an integer >= 3")
    return args.dim


# each command returns (columns, rows, meta, exit_code, extra_file_text)

def cmd_table1(args):
    tables = quantum.table1()
    rows = []
    for meas, cols in quantum.TABLE1_COLUMNS.items():
        for prep, probs in zip(quantum.TABLE1_ROWS, tables[meas]):
            row = [meas, prep]
            for q, pr in zip(cols, probs):
                row += [q, float(pr)]
            rows.append(row)
    columns = ["measurement", "preparation", "outcome1", "prob1", "outcome2", "prob2", "outcome3", "prob3"]
    return columns, rows, None, EXIT_OK, None


def cmd_bound(args):
    d = _family_dim(args)
    row = [d, bounds.omega_bound(d), bounds.symmetric_full_overlap_cost(d), (1 - 2 / d) ** 2]
    return ["d", "omega_bound", "full_overlap_basis_cost", "overlap_mp"], [row], None, EXIT_OK, None


def cmd_triples(args):
    d = _family_dim(args)
    report = vertexlp.triple_intersection_report(d, cap=args.cap)
    rows = [[lab, empty] for lab, empty in report]
    code = EXIT_OK if all(e for _, e in report) else EXIT_FAILED
    return ["state", "empty"], rows, {"d": d}, code, None


def cmd_lp_omega(args):
    d = _family_dim(args)
    result = vertexlp.max_uniform_omega(d, cap=args.cap)
    rep = validate_witness(result.model, args.tol)
    ceiling = bounds.omega_bound(d)
    rows = [
        ["status", result.lp.status],
        ["certified upper bound", result.bound],
        ["closed-form bound", ceiling],
        ["iterations", result.lp.iterations],
        ["residual", result.lp.residual],
        ["variables", result.lp.n_variables],
        ["measurements", len(result.model.measurements)],
        ["witness max deviation", rep["max_deviation"]],
        ["witness support violations", rep["support_violations"]],
    ]
    ok = result.bound <= ceiling + args.tol and rep["passed"]
    extra = dumps_model_with_basis(result.model, d)
    return ["quantity", "value"], rows, None, EXIT_OK if ok else EXIT_FAILED, extra


def cmd_lp_minoverlap(args):
    d = _family_dim(args)
    if args.pair is None:
        raise UsageError("lp-minoverlap needs --pair A,B")
    phi, psi = args.pair
    fam = quantum.build_family(d)
    labels = [s.label for s in fam.preparations]
    for lab in (phi, psi):
        if lab not in labels:
            raise UsageError(f"unknown preparation {lab!r}; choose from {', '.join(labels)}")
    if phi == psi:
        raise UsageError("--pair needs two different preparations")
    value, model = vertexlp.max_pairwise_min_overlap(phi, psi, d, cap=args.cap)
    q = quantum.overlap(fam.preparation(phi), fam.preparation(psi))
    target = bounds.max_epistemic_target(q)
    rows = [
        ["pair", f"{phi},{psi}"],
        ["max min-overlap", value],
        ["maximally epistemic target", target],
        ["quantum overlap", q],
        ["ratio", value / target if target > 0 else None],
    ]
    ok = value <= target + args.tol
    return ["quantity", "value"], rows, None, EXIT_OK if ok else EXIT_FAILED, dumps_model_with_basis(model, d)


def cmd_noise_scan(args):
    if args.dmin is None or args.dmax is None:
        raise UsageError("noise-scan needs --dmin and --dmax")
    try:
        scan = bounds.noise_crossover_scan(args.dmin, args.dmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = [[r.d, r.ceiling, r.target, r.strict] for r in scan.rows]
    return ["d", "ceiling", "target", "strict"], rows, {"first_strict": scan.first_strict}, EXIT_OK, None


def cmd_validate(args):
    if args.model is None:
        raise UsageError("validate needs a model file")
    model = load_model(args.model)
    rep = validate_witness(model, args.tol)
    rows = [
        ["max deviation", rep["max_deviation"]],
        ["worst", rep["worst"]],
        ["support violations", rep["support_violations"]],
        ["passed", rep["passed"]],
    ]
    return ["quantity", "value"], rows, None, EXIT_OK if rep["passed"] else EXIT_FAILED, None


def validate_witness(model: ontic.OntologicalModel, tol: float) -> dict:
    report = ontic.validate_model(model, tol)
    violations = ontic.check_support_constraints(model, tol)
    return {
        "max_deviation": report.max_deviation,
        "worst": "/".join(report.worst) if report.worst else None,
        "support_violations": len(violations),
        "passed": report.passed and not violations,
    }


def dumps_model_with_basis(model: ontic.OntologicalModel, d: int) -> str:
    return json.dumps(model_to_dict(model, basis=quantum.basis_labels(d)), indent=1) + "\n"


COMMANDS = {
    "table1": cmd_table1,
    "bound": cmd_bound,
    "lp-omega": cmd_lp_omega,
    "lp-minoverlap": cmd_lp_minoverlap,
    "triples": cmd_triples,
    "noise-scan": cmd_noise_scan,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psi-overlap", description="Epistemic-overlap bounds for ontological models.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("model", nargs="?", help="model file (validate)")
    parser.add_argument("--dim", type=int)
    parser.add_argument("--dmin", type=int)
    parser.add_argument("--dmax", type=int)
    parser.add_argument("--pair", type=_pair)
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--tol", type=float, default=ontic.DEFAULT_TOL)
    parser.add_argument("--out", type=Path, help="output file; LP commands write the witness model here")
    parser.add_argument("--cap", type=int, default=vertexlp.DEFAULT_CAP)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        columns, rows, meta, code, extra = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except vertexlp.AssignmentCapError as exc:
        print(f"error: {exc}. Run `psi-overlap bound --dim {args.dim}` for the closed-form result.", file=stderr)
        return EXIT_USAGE
    except (ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    text = emit(columns, rows, args.format, meta)
    if args.out is not None and extra is not None:
        args.out.write_text(extra)
        stdout.write(text)
    elif args.out is not None:
        args.out.write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
