"""Command-line front end: norms, ratios, the acceptance suite and sweeps."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import acceptance, quantum, werner
from .composites import (
    CompositeModel,
    lift_matrix,
    min_base_norm,
    restricted_ratio,
    sep_norm,
)
from .errors import GptError, IntractableClassError
from .models import is_centrally_symmetric, model_from_id, parse_model_id
from .norms import base_norm, order_unit_norm

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "GPTHIDE_SEED"


class UsageError(Exception):
    pass


# --- parsing -----------------------------------------------------------------

def parse_seed(value) -> int:
    if value is None:
        value = os.environ.get(SEED_ENV)
    if value is None or value == "":
        return acceptance.DEFAULT_SEED
    try:
        seed = int(value)
    except ValueError:
        raise UsageError(f"seed must be an integer, got {value!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise UsageError("seed must fit in 64 unsigned bits")
    return seed


def read_matrix(path: str) -> np.ndarray:
    """Dense row-major CSV matrix; errors name the line and column."""
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        values = []
        for col, cell in enumerate(row, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise UsageError(f"{path}:{lineno}:{col}: cannot parse {cell.strip()!r} as a number") from None
        if rows and len(values) != len(rows[0]):
            raise UsageError(f"{path}:{lineno}:1: expected {len(rows[0])} columns, found {len(values)}")
        rows.append(values)
    if not rows:
        raise UsageError(f"{path}:1:1: empty tensor file")
    return np.array(rows)


def parse_pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected two comma-separated numbers, got {text!r}") from None
    return a, b


def parse_sizes(range_text: str | None, values_text: str | None, step: int) -> list[int]:
    if range_text and values_text:
        raise UsageError("use either --range or --values, not both")
    if values_text:
        try:
            return sorted({int(v) for v in values_text.split(",") if v.strip()})
        except ValueError:
            raise UsageError(f"malformed --values {values_text!r}") from None
    if not range_text:
        raise UsageError("sweep needs --range a..b or --values")
    try:
        lo, hi = (int(t) for t in range_text.split(".."))
    except ValueError:
        raise UsageError(f"malformed --range {range_text!r}; expected a..b") from None
    if step < 1:
        raise UsageError("--step must be positive")
    return list(range(lo, hi + 1, step))


def split_models(text: str) -> list[str]:
    ids = [t.strip() for t in text.split(",") if t.strip()]
    if not 1 <= len(ids) <= 2:
        raise UsageError("--model takes one id or two comma-separated ids")
    return ids


# --- output ------------------------------------------------------------------

def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r.get(c) for c in columns} for r in rows], indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c, "")) for c in columns])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------

def cmd_norm(args) -> int:
    ids = split_models(args.model)
    if args.werner is not None:
        family, n = parse_model_id(ids[0])
        if family not in ("quantum", "wtheory") or any(parse_model_id(i) != (family, n) for i in ids):
            raise UsageError("--werner needs a quantum:n or wtheory:n model")
        alpha, beta = parse_pair(args.werner)
        w = quantum.werner_class_norms(n, alpha, beta)
        rows = [{"norm": "trace", "value": w.trace}, {"norm": "sep", "value": w.sep}, {"norm": "w", "value": w.w}]
        emit(render(rows, ["norm", "value"], args.format), args.out)
        return EXIT_OK
    if args.tensor is None:
        raise UsageError("norm needs --tensor FILE or --werner alpha,beta")
    T = read_matrix(args.tensor)
    models = [model_from_id(i) for i in ids]
    if len(models) == 1:
        A = models[0]
        x = T.ravel()
        if x.size != A.dim:
            raise UsageError(f"{args.tensor}: expected {A.dim} entries for {ids[0]}, found {x.size}")
        rows = [{"norm": "base", "value": base_norm(A, x)}, {"norm": "order_unit", "value": order_unit_norm(A, x)}]
        emit(render(rows, ["norm", "value"], args.format), args.out)
        return EXIT_OK
    comp = CompositeModel(*models)
    dA, dB = comp.shape
    if T.shape == (dA - 1, dB - 1) and is_centrally_symmetric(comp.A) and is_centrally_symmetric(comp.B):
        T = lift_matrix(T)
    elif T.shape != (dA, dB):
        raise UsageError(f"{args.tensor}: tensor shape {T.shape} fits neither {(dA, dB)} nor {(dA - 1, dB - 1)}")
    rows = [{"norm": "base", "value": min_base_norm(comp, T)}, {"norm": "sep", "value": sep_norm(comp, T)}]
    emit(render(rows, ["norm", "value"], args.format), args.out)
    return EXIT_OK


def _werner_rows(model_id: str) -> list[dict]:
    sym = werner.model_from_cli_id(model_id)
    r = werner.werner_hiding_ratio(werner.constants_for(sym))
    return [{"quantity": "werner", "value": r.value}]


def _restricted_rows(ids: list[str]) -> list[dict]:
    models = [model_from_id(i) for i in ids]
    if len(models) == 1:
        models = models * 2
    if not all(is_centrally_symmetric(m) for m in models):
        return []
    r = restricted_ratio(*models)
    rows = [
        {"quantity": "restricted_lower", "value": r.guaranteed_lower},
        {"quantity": "restricted_witness", "value": r.lower},
        {"quantity": "restricted_upper", "value": r.upper},
        {"quantity": "restricted_exact", "value": r.exact},
        {"quantity": "sep_ratio_lower", "value": r.sep_lower},
        {"quantity": "lo_ratio_upper", "value": r.lo_upper},
    ]
    return rows


def cmd_ratio(args) -> int:
    ids = split_models(args.model)
    rows = []
    if len(ids) == 1 or ids[0] == ids[1]:
        rows += _werner_rows(ids[0])
        family, n = parse_model_id(ids[0])
        if family in ("quantum", "wtheory"):
            wr = quantum.werner_class_ratios(n)
            rows += [{"quantity": "werner_class_trace_sep", "value": wr.qm_sep},
                     {"quantity": "werner_class_w_sep", "value": wr.w_sep}]
    if all(parse_model_id(i)[0] in ("spherical", "cubic") for i in ids):
        rows += _restricted_rows(ids)
    emit(render(rows, ["quantity", "value"], args.format), args.out)
    return EXIT_OK


CHECK_COLUMNS = ["criterion", "key", "id", "reference", "expected", "measured", "tol", "relation", "pass", "heuristic"]


def cmd_verify(args) -> int:
    seed = parse_seed(args.seed)
    try:
        numbers = acceptance.select(args.only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results = []
    for number in numbers:
        res = acceptance.run_criterion(number, seed=seed, tolerance=args.tolerance)
        print(res.summary_line(), file=sys.stderr)
        results.append(res)
    rows = [
        {"criterion": r.number, "key": r.key, "heuristic": r.heuristic, **c.to_dict()}
        for r in results for c in r.checks
    ]
    if args.format == "csv":
        text = render(rows, CHECK_COLUMNS, "csv")
    else:
        report = {
            "seed": seed,
            "passed": all(r.passed for r in results),
            "checks": [{k: row[k] for k in CHECK_COLUMNS} for row in rows],
            "notes": {r.key: r.notes for r in results if r.notes},
        }
        text = json.dumps(report, indent=2) + "\n"
    emit(text, args.out)
    failing = [r for r in results if not r.passed]
    if failing:
        print(f"first failing criterion: {failing[0].number} {failing[0].key}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


SUBSPACE_FAMILIES = ("random-subspace", "appendix-c")
SYMMETRIC_COLUMNS = [
    "model", "size", "d", "m_plus", "m_minus", "m_plus_star", "m_minus_star",
    "k_plus", "k_minus", "k_plus_star", "k_minus_star", "werner_ratio",
]
SUBSPACE_COLUMNS = [
    "n", "k", "delta", "seed", "witness_bound", "nominal_bound", "overlap_estimate", "reference_scaling",
]


def cmd_sweep(args) -> int:
    sizes = parse_sizes(args.range, args.values, args.step)
    family = args.model
    if family in SUBSPACE_FAMILIES:
        seed = parse_seed(args.seed)
        rows = []
        for n in sizes:
            for rec in quantum.random_subspace_experiment(n, args.delta, trials=args.trials, seed=seed):
                rows.append({c: getattr(rec, c) for c in SUBSPACE_COLUMNS})
        rows.sort(key=lambda r: (r["n"], r["seed"]))
        emit(render(rows, SUBSPACE_COLUMNS, args.format), args.out)
        return EXIT_OK
    if family not in werner.CLI_FAMILIES:
        raise UsageError(f"unknown sweep family {family!r}")
    rows = []
    for size in sizes:
        try:
            sym = werner.model_from_cli_id(f"{family}:{size}")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        c = werner.constants_for(sym)
        row = {"model": family, "size": size, **{k: getattr(c, k) for k in SYMMETRIC_COLUMNS[2:-1]}}
        row["werner_ratio"] = werner.werner_hiding_ratio(c).value
        rows.append(row)
    rows.sort(key=lambda r: r["size"])
    emit(render(rows, SYMMETRIC_COLUMNS, args.format), args.out)
    return EXIT_OK


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpthide", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--format", choices=["json", "csv"], default=default_format)
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--seed", help=f"sampling seed (falls back to ${SEED_ENV})")

    p = sub.add_parser("norm", help="norms of a tensor or Werner-class operator")
    p.add_argument("--model", required=True, help="model id, or two ids for a composite")
    p.add_argument("--tensor", help="dense CSV matrix (lifted automatically when one size smaller)")
    p.add_argument("--werner", help="alpha,beta for alpha*rhoS + beta*rhoA")
    common(p, "csv")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("ratio", help="Werner and restricted data hiding ratios")
    p.add_argument("--model", required=True)
    common(p, "csv")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--only", help="comma-separated criterion numbers or key fragments")
    p.add_argument("--tolerance", type=float, help="override every check tolerance")
    common(p, "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="dimension sweeps")
    p.add_argument("--model", required=True, help="classical|quantum|wtheory|spherical|cubic|random-subspace (alias appendix-c)")
    p.add_argument("--range", help="inclusive a..b")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--values", help="comma-separated sizes")
    p.add_argument("--delta", type=float, default=0.25)
    p.add_argument("--trials", type=int, default=1)
    common(p, "csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gpthide: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntractableClassError as exc:
        print(f"gpthide: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (GptError, ValueError) as exc:
        print(f"gpthide: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
