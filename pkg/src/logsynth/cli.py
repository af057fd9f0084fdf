"""Command-line interface: ``logsynth <subcommand> ...``.

Exit codes: 0 success, 1 validation or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import secrets
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .advisor import advise
from .automaton import UNREACHABLE, compute_s_values, load_model_file
from .dataset import (
    FAILURE_PCT_LEVELS,
    MLSL_LEVELS,
    SIZE_LEVELS,
    Dataset,
    DatasetSpec,
    assemble,
    audit_dataset,
    compute_stats,
    oversample,
    prepare_real_world,
    read_dataset,
    read_labels_csv,
    read_records_csv,
    split,
    write_dataset,
)
from .errors import FormatError, LogSynthError
from .generator import derive_rng
from .patterns import PatternType, check_containment, load_patterns, load_patterns_file

OUT_ENV = "LOGSYNTH_OUT"
DEMO_SIZES = (200, 500, 1000)
DEMO_FAILURE_PCTS = (5, 50)


class Reporter:
    def __init__(self, args):
        self.quiet = getattr(args, "quiet", False)
        self.as_json = getattr(args, "json", False)

    def line(self, text=""):
        if not self.quiet and not self.as_json:
            print(text)

    def warn(self, text):
        if not self.as_json:
            print(f"warning: {text}", file=sys.stderr)

    def emit(self, obj):
        if self.as_json:
            print(json.dumps(obj, sort_keys=True))


def _stats_line(stats, duplicates=None):
    s = (
        f"records={stats.count} failures={stats.failure_count} ({stats.failure_pct:.2f}%) "
        f"avg_lsl={stats.avg_lsl:.2f} min_lsl={stats.min_lsl} max_lsl={stats.max_lsl} "
        f"unique_templates={stats.unique_templates}"
    )
    if duplicates is not None:
        s += f" duplicates={duplicates}"
    return s


def _model_ref(path):
    return Path(path).stem


def _resolve_seed(args, out):
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = secrets.randbits(63)
        out.line(f"seed={seed} (auto-generated)")
    return seed


# ---------------------------------------------------------------- subcommands


def cmd_model_validate(args, out):
    model, catalog = load_model_file(args.model)
    sv = compute_s_values(model, check_initial=False)
    s0 = sv[model.initial]
    unreachable = sv.unreachable()
    isolated = model.isolated_states()
    from_initial = set(model.reachable_states())
    not_reached = [s for s in model.states if s not in from_initial]
    out.line(f"states={len(model.states)} transitions={len(model.transitions)} sValue({model.initial})={s0}")
    out.line(f"alphabet={len(model.alphabet)} accepting={len(model.accepting)}")
    if unreachable:
        out.line(f"unreachable-acceptance: {' '.join(unreachable)}")
    for s in isolated:
        out.warn(f"isolated state {s}")
    if not_reached:
        out.line(f"not-reachable-from-initial: {' '.join(not_reached)}")
    out.emit({
        "states": len(model.states),
        "transitions": len(model.transitions),
        "alphabet": len(model.alphabet),
        "initial_svalue": None if s0 is UNREACHABLE else s0,
        "unreachable": unreachable,
        "isolated": isolated,
        "not_reachable_from_initial": not_reached,
    })
    if s0 is UNREACHABLE:
        print(f"error: initial state {model.initial} cannot reach an accepting state", file=sys.stderr)
        return 1
    return 0


def _pattern_entries(path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, str(path)) from exc
    return doc if isinstance(doc, list) else [doc]


def cmd_pattern_check(args, out):
    model, _ = load_model_file(args.model)
    status = 0
    results = []
    for entry in _pattern_entries(args.patterns):
        pid = entry.get("id", "?") if isinstance(entry, dict) else "?"
        try:
            (p,) = load_patterns(entry)
        except LogSynthError as exc:
            out.line(f"pattern {pid}: ERROR {exc}")
            results.append({"id": pid, "ok": False, "error": str(exc)})
            status = 1
            continue
        report = check_containment(p.ast, model)
        m = p.metrics
        out.line(
            f"pattern {p.id}: type={p.type_tag.value} length={m.length} alphabet={m.alphabet_size} "
            f"operators={m.operator_count} star_depth={m.star_depth} "
            f"included={'yes' if report.included else 'no'}"
        )
        res = {"id": p.id, "type": p.type_tag.value, "metrics": asdict(m), "included": report.included}
        if not report.included:
            out.line(f"  witness: {' '.join(report.witness) if report.witness else 'eps'}")
            res["witness"] = list(report.witness)
            status = 1
        elif report.proper is False:
            out.warn(f"pattern {p.id} covers the whole model language (inclusion is not strict)")
        res["proper"] = report.proper
        res["ok"] = report.included
        results.append(res)
    out.line("OK" if status == 0 else "FAILED")
    out.emit({"patterns": results, "ok": status == 0})
    return status


def _grid(args):
    sizes = SIZE_LEVELS if args.full else DEMO_SIZES
    pcts = FAILURE_PCT_LEVELS if args.full else DEMO_FAILURE_PCTS
    return itertools.product(sizes, MLSL_LEVELS, pcts, (PatternType.FINITE, PatternType.INFINITE))


def _generate_one(model, catalog, patterns, spec, args, dest, out):
    ds = assemble(
        model, catalog, patterns, spec,
        strict=args.strict, max_attempts=args.max_attempts, samples_per_pattern=args.samples,
    )
    splits = balanced = None
    if args.split or args.oversample:
        splits = split(ds, derive_rng(spec.seed, "split"))
        if args.oversample:
            balanced = oversample(splits.select(ds.records, "train"), derive_rng(spec.seed, "oversample"))
            ds.manifest["oversampled_train"] = {
                "records": len(balanced),
                "augmented": sum(r.augmented for r in balanced),
            }
    write_dataset(ds, splits, catalog, dest, rendered=args.render, csv_export=args.csv, oversampled=balanced)
    stats = compute_stats(ds)
    out.line(f"{dest}: {_stats_line(stats, ds.manifest['duplicate_count'])}")
    for w in ds.manifest["warnings"]:
        out.warn(w)
    return {"out": str(dest), "seed": spec.seed, "stats": asdict(stats),
            "splits": {k: len(v) for k, v in splits.to_json().items()} if splits else None}


def cmd_generate(args, out):
    model, catalog = load_model_file(args.model)
    patterns = load_patterns_file(args.patterns, set(model.alphabet))
    ref = _model_ref(args.model)
    # pattern files may name the model differently from the file stem
    if all(p.model_ref != ref for p in patterns):
        ref = ""
    seed = _resolve_seed(args, out)
    outdir = Path(args.out or os.environ.get(OUT_ENV) or "logsynth-out")
    filt = tuple(args.pattern) if args.pattern else None
    results = []
    if args.grid:
        for size, mlsl, pct, ptype in _grid(args):
            spec = DatasetSpec(size, mlsl, pct, ptype, ref, seed, filt)
            dest = outdir / f"{ref or 'model'}_{ptype.value}_n{size}_l{mlsl}_p{pct}"
            results.append(_generate_one(model, catalog, patterns, spec, args, dest, out))
        out.line(f"datasets={len(results)}")
    else:
        missing = [f for f in ("size", "mlsl", "failure_pct", "type") if getattr(args, f) is None]
        if missing:
            raise _Usage(f"generate needs --{', --'.join(m.replace('_', '-') for m in missing)} (or --grid)")
        spec = DatasetSpec(args.size, args.mlsl, args.failure_pct, args.type, ref, seed, filt)
        results.append(_generate_one(model, catalog, patterns, spec, args, outdir, out))
    out.emit({"seed": seed, "datasets": results})
    return 0


def cmd_audit(args, out):
    ds, _ = read_dataset(args.dataset)
    if ds.model is None or not ds.patterns or ds.spec is None:
        raise FormatError("dataset directory lacks model.json, patterns.json or a synthetic spec", source=args.dataset)
    positions = None
    if args.sample is not None:
        rng = derive_rng(ds.spec.seed if args.seed is None else args.seed, "audit-sample")
        k = max(1, round(args.sample * len(ds.records)))
        positions = sorted(rng.sample(range(len(ds.records)), min(k, len(ds.records))))
    problems = audit_dataset(ds, positions)
    for v in problems:
        out.line(f"violation {v}")
    checked = len(ds.records) if positions is None else len(positions)
    out.line(f"checked={checked} {len(problems)} violations")
    out.emit({"checked": checked, "violations": [{"position": v.position, "reason": v.reason} for v in problems]})
    return 1 if problems else 0


def cmd_ingest(args, out):
    records = read_records_csv(args.records)
    labels = read_labels_csv(args.labels)
    result = prepare_real_world(records, labels, cap=args.cap)
    for exc in result.dropped:
        out.line(f"dropped task {exc.task_id}: first message is a failure message")
    stats = compute_stats(result.sequences)
    out.line(f"{stats.count} sequences, {stats.failure_pct:.2f}% failures")
    out.line("count  failures  failure_pct  unique_templates  avg_lsl  min_lsl  max_lsl")
    out.line(
        f"{stats.count:<6} {stats.failure_count:<9} {stats.failure_pct:<12.2f} {stats.unique_templates:<17} "
        f"{stats.avg_lsl:<8.2f} {stats.min_lsl:<8} {stats.max_lsl}"
    )
    seed = 0 if args.seed is None else args.seed
    manifest = {
        "tool": "logsynth",
        "tool_version": __version__,
        "kind": "real-world",
        "seed": seed,
        "cap": args.cap,
        "dropped": [e.task_id for e in result.dropped],
        "truncated": result.truncated,
        "capped": result.capped,
        "stats": asdict(stats),
    }
    ds = Dataset(None, result.sequences, manifest)
    splits = split(ds, derive_rng(seed, "split")) if args.split else None
    if args.out:
        write_dataset(ds, splits, None, args.out)
    out.emit({"stats": asdict(stats), "failure_pct": round(stats.failure_pct, 2),
              "dropped": manifest["dropped"], "out": args.out})
    return 0


def cmd_advise(args, out):
    a = advise(args.size, args.failure_pct, args.mlsl)
    out.line(f"configuration: {a.config.value}")
    out.line(f"expected_f1: {a.expected_f1}")
    out.line(f"batch_size: {a.batch_size}")
    out.line(f"epochs: {a.epochs}")
    if a.extrapolated:
        out.warn("inputs lie outside the studied ranges; the estimate is extrapolated")
    out.emit(a.to_json())
    return 0


def cmd_stats(args, out):
    ds, splits = read_dataset(args.dataset)
    stats = compute_stats(ds)
    out.line(_stats_line(stats, ds.manifest.get("duplicate_count")))
    if splits is not None:
        for part in ("train", "validation", "test"):
            recs = splits.select(ds.records, part)
            out.line(f"{part}: records={len(recs)} failures={sum(r.is_failure for r in recs)}")
    out.emit({"stats": asdict(stats), "splits": {k: len(v) for k, v in splits.to_json().items()} if splits else None})
    return 0


# ---------------------------------------------------------------- parser


_COMPONENT = {
    "ParseError": "patterns",
    "UnknownSymbol": "patterns",
    "CapExceeded": "patterns",
    "SizeLimit": "patterns",
    "DegenerateModel": "automaton",
    "EmptyPool": "generator",
    "AttemptsExhausted": "generator",
    "DegenerateClass": "dataset",
    "FormatError": "dataset",
    "EmptyAfterTruncation": "dataset",
    "MissingMlsl": "advisor",
}


class _Usage(Exception):
    pass


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (64-bit unsigned)")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress report lines")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="logsynth", parents=[common], description="Synthetic failure-prediction log datasets."
    )
    parser.add_argument("--version", action="version", version=f"logsynth {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("model-validate", parents=[common], help="validate a behaviour model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_model_validate)

    p = sub.add_parser("pattern-check", parents=[common], help="type, metrics and inclusion of failure patterns")
    p.add_argument("patterns")
    p.add_argument("model")
    p.set_defaults(func=cmd_pattern_check)

    p = sub.add_parser(
        "generate", parents=[common], help="generate a labelled dataset",
        description=(
            "Generate one dataset, or a grid of datasets with --grid. The demo grid is "
            f"sizes {DEMO_SIZES} x max lengths {MLSL_LEVELS} x failure percentages {DEMO_FAILURE_PCTS} "
            "x both pattern types = 60 datasets; --full uses all 6 sizes and 6 failure percentages "
            "(360 datasets)."
        ),
    )
    p.add_argument("model")
    p.add_argument("patterns")
    p.add_argument("--size", type=int)
    p.add_argument("--mlsl", type=int)
    p.add_argument("--failure-pct", type=float)
    p.add_argument("--type", choices=["F", "I"])
    p.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./logsynth-out)")
    p.add_argument("--pattern", action="append", help="restrict failures to this pattern id (repeatable)")
    p.add_argument("--split", action="store_true", help="write stratified train/validation/test splits")
    p.add_argument("--oversample", action="store_true", help="also write a 50:50 oversampled training set")
    p.add_argument("--strict", action="store_true", help="normal records avoid every pattern of the model")
    p.add_argument("--render", action="store_true", help="write rendered.log with template text")
    p.add_argument("--csv", action="store_true", help="write records.csv")
    p.add_argument("--grid", action="store_true")
    p.add_argument("--full", action="store_true", help="with --grid: the full 360-dataset grid")
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("--samples", type=int, default=2500, help="pool samples per infinite pattern")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("audit", parents=[common], help="re-check every record of a dataset directory")
    p.add_argument("dataset")
    p.add_argument("--sample", type=float, help="audit only this fraction of records")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("ingest", parents=[common], help="turn task-partitioned logs into labelled sequences")
    p.add_argument("records", help="CSV task_id,timestamp,template_id,is_failure_message")
    p.add_argument("labels", help="CSV task_id,label")
    p.add_argument("--cap", type=int, default=1000, help="keep only the last CAP messages per task")
    p.add_argument("--out")
    p.add_argument("--split", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("advise", parents=[common], help="recommended configuration and hyperparameters")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--failure-pct", type=float, required=True)
    p.add_argument("--mlsl", type=int, required=True)
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("stats", parents=[common], help="statistics of a dataset directory")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    for name, default in (("seed", None), ("json", False), ("quiet", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    out = Reporter(args)
    try:
        return args.func(args, out)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"logsynth: error: {exc}", file=sys.stderr)
        return 2
    except (LogSynthError, ValueError, OSError) as exc:
        where = _COMPONENT.get(type(exc).__name__, "cli")
        print(f"error [{where}] {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
