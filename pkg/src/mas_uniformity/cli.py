"""Command-line front end.

Exit codes: 0 success, 1 golden or property failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import properties as props
from .errors import BoundViolation, UniformityError
from .experiments import (
    TABLE1_GOLDEN,
    TABLE2_GOLDEN,
    golden_mismatches,
    run_experiment1,
    run_experiment2,
    run_experiment3_sweep,
)
from .fileio import load_manifest
from .metrics import UNIFORMITY_SELECTORS, full_report
from .partition import LabelAssignment, partition_from_labels, partition_from_sizes
from .tables import FORMATS, TABLE_HEADERS, render

DOMINANCE_NS = (2, 3, 10, 100, 10_000, 1_000_000)
EPSILONS = (0.01, 0.1, 0.5)
# (sizes, active cluster indices) giving mu = 0.01, 0.25, 0.495, 0.9
CONFINED_CASES = (
    ((4950, 4950, 100), (2,)),
    ((2500, 2500, 2500, 2500), (0,)),
    ((4950, 4950, 100), (0,)),
    ((4500, 4500, 1000), (0, 1)),
)
SUITES = ("equal-max", "dominance", "single-move", "epsilon", "confined", "scale")


class InputError(Exception):
    pass


def _precision(text: str) -> int:
    value = int(text)
    if not 0 <= value <= 12:
        raise argparse.ArgumentTypeError("precision must be between 0 and 12")
    return value


def _add_output(p: argparse.ArgumentParser, default_format: str = "markdown"):
    p.add_argument("--format", choices=FORMATS, default=default_format)
    p.add_argument("--precision", type=_precision, default=4)
    p.add_argument("--output", "-o", type=Path, default=None,
                   help="write to this file instead of standard output")


def _emit(text: str, args) -> None:
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")


def _parse_sizes(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InputError(f"bad --sizes value: {exc}") from None


def cmd_metrics(args) -> int:
    if args.sizes is not None:
        p = partition_from_sizes(_parse_sizes(args.sizes))
        name = "[" + ", ".join(str(int(s)) if float(s).is_integer() else repr(float(s))
                               for s in p.sizes) + "]"
    else:
        p = partition_from_labels(LabelAssignment.from_file(args.labels))
        name = Path(args.labels).name
    row = (name,) + full_report(p).as_tuple()
    _emit(render(TABLE_HEADERS, [row], args.format, args.precision), args)
    return 0


def _cmd_table(rows, golden, args) -> int:
    _emit(render(TABLE_HEADERS, [r.cells() for r in rows], args.format, args.precision), args)
    if args.golden_check:
        bad = golden_mismatches(rows, golden)
        for config, col, got, expected in bad:
            print(f"golden mismatch: {config} / {col}: got {got}, expected {expected}",
                  file=sys.stderr)
        if bad:
            return 1
    return 0


def cmd_exp1(args) -> int:
    return _cmd_table(run_experiment1(), TABLE1_GOLDEN, args)


def cmd_exp2(args) -> int:
    return _cmd_table(run_experiment2(), TABLE2_GOLDEN, args)


def _scorers(values) -> list[str]:
    chosen = []
    for value in values or ["mas"]:
        for tok in value.split(","):
            tok = tok.strip()
            if tok == "all":
                chosen.extend(UNIFORMITY_SELECTORS)
            elif tok in UNIFORMITY_SELECTORS:
                chosen.append(tok)
            elif tok:
                raise InputError(f"unknown scorer {tok!r}; choose from "
                                 f"{', '.join(UNIFORMITY_SELECTORS)} or all")
    return list(dict.fromkeys(chosen))


def cmd_exp3(args) -> int:
    scorers = _scorers(args.scorer)
    manifest = load_manifest(args.manifest, label_column=True if args.label_column else None)
    standardize = manifest.standardize and not args.no_standardize
    results = run_experiment3_sweep(manifest.dataset, manifest.candidates, scorers,
                                    standardize_data=standardize)
    for cid, reason in results[0].skipped:
        print(f"skipped candidate {cid}: {reason}", file=sys.stderr)
    headers = ("Dataset", "Scorer", "PWRS", "Concordant", "Counted", "Tied excluded",
               "Selected", "Selected ARI")
    rows = []
    for r in results:
        cmp_ = r.comparison
        rows.append((
            manifest.candidates.dataset_id, r.label,
            cmp_.pwrs if cmp_ else "n/a",
            cmp_.concordant_pairs if cmp_ else 0,
            cmp_.counted_pairs if cmp_ else 0,
            cmp_.tied_pairs_excluded if cmp_ else len(r.evaluations) * (len(r.evaluations) - 1) // 2,
            r.selected_id, r.selected_ari,
        ))
    _emit(render(headers, rows, args.format, args.precision), args)
    return 0


def _suite_equal_max(args, rng):
    failures, worst_equal, best_unequal = [], 0.0, 0.0
    for _ in range(args.partitions):
        k = int(rng.integers(2, 51))
        c = int(rng.integers(1, 10_001))
        chk = props.check_equal_size_maximum([c] * k)
        worst_equal = max(worst_equal, abs(chk.mas - 1.0))
        if not chk:
            failures.append(f"[{c}]*{k}: MAS={chk.mas!r}")
        while True:
            p = props.random_integer_partition(rng)
            if not np.all(p.sizes == p.sizes[0]):
                break
        chk = props.check_equal_size_maximum(p)
        best_unequal = max(best_unequal, chk.mas)
        if not chk or chk.mas >= 1.0 - 1e-12:
            failures.append(f"{p!r}: MAS={chk.mas!r}")
    return [{
        "proposition": "equal-size-maximum",
        "bound": 1.0,
        "observed_max": best_unequal,
        "max_equal_error": worst_equal,
        "passed": not failures,
        "trials": 2 * args.partitions,
        "witnesses": failures[:5],
    }]


def _suite_dominance(args, rng):
    ns = [args.n] if args.n is not None else list(DOMINANCE_NS)
    out = []
    for n in ns:
        u = props.check_dominance_limit(n, strict=False)
        ok = abs(u - 2.0 / n) <= 1e-14 * (2.0 / n)
        out.append({"proposition": "dominance-limit", "n": n, "bound": 2.0 / n,
                    "observed": u, "passed": ok, "witnesses": [f"[{n - 1}, 1]"]})
    return out


def _suite_single_move(args, rng):
    if args.sizes:
        parts = [partition_from_sizes(_parse_sizes(args.sizes))]
    else:
        parts = [props.random_integer_partition(rng) for _ in range(args.partitions)]
    reports = [props.single_move_stability(p, strict=False) for p in parts]
    worst = max(reports, key=lambda r: r.max_observed_delta / r.bound)
    summary = worst.to_dict()
    summary.update(
        proposition="single-move",
        partitions=len(reports),
        passed=all(r.passed for r in reports),
        worst_ratio=worst.max_observed_delta / worst.bound,
        worst_partition=[int(s) for s in parts[reports.index(worst)].sizes],
    )
    return [summary]


def _suite_epsilon(args, rng):
    sizes = _parse_sizes(args.sizes) if args.sizes else [4950, 4950, 100]
    trials = args.trials or 100
    return [props.epsilon_reassignment_stability(sizes, e, trials, rng, strict=False).to_dict()
            | {"epsilon": e} for e in EPSILONS]


def _suite_confined(args, rng):
    trials = args.trials or 10_000
    if args.sizes:
        if not args.active:
            raise InputError("--active is required with --sizes for the confined suite")
        cases = [(_parse_sizes(args.sizes), [int(t) for t in args.active.split(",")])]
    else:
        cases = CONFINED_CASES
    out = []
    for sizes, active in cases:
        rep = props.confined_reassignment_stability(sizes, active, trials, rng, strict=False)
        mu = sum(sizes[i] for i in active) / sum(sizes)
        out.append(rep.to_dict() | {"mu": mu, "active": list(active)})
    return out


def _suite_scale(args, rng):
    worst, failures = 0.0, []
    for _ in range(args.partitions):
        p = props.random_integer_partition(rng)
        r = float(10.0 ** rng.uniform(-4.0, 6.0))
        d = props.check_scale_invariance(p, r, strict=False)
        worst = max(worst, d)
        if d > 1e-10:
            failures.append(f"{p!r} * {r!r}: delta={d!r}")
    return [{"proposition": "scale-invariance", "bound": 1e-10, "observed_max": worst,
             "passed": not failures, "trials": args.partitions, "witnesses": failures[:5]}]


_SUITE_FUNCS = {
    "equal-max": _suite_equal_max,
    "dominance": _suite_dominance,
    "single-move": _suite_single_move,
    "epsilon": _suite_epsilon,
    "confined": _suite_confined,
    "scale": _suite_scale,
}


def cmd_check(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    records = []
    for name in suites:
        rng = np.random.default_rng(args.seed)
        for rec in _SUITE_FUNCS[name](args, rng):
            records.append({"suite": name, "seed": args.seed} | rec)
    ok = all(r["passed"] for r in records)
    if args.format == "json":
        text = json.dumps({"passed": ok, "results": records}, indent=2) + "\n"
    else:
        headers = ("Suite", "Proposition", "Bound", "Observed max", "Passed")
        rows = [(r["suite"], r["proposition"], float(r["bound"]),
                 float(r.get("observed_max", r.get("observed", 0.0))),
                 "yes" if r["passed"] else "NO") for r in records]
        text = render(headers, rows, args.format, args.precision)
    _emit(text, args)
    for r in records:
        if not r["passed"]:
            print(f"bound violated in {r['suite']}: {json.dumps(r.get('witnesses'))}",
                  file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mas-uniformity",
        description="Cluster-size uniformity measures and the Mass Agreement Score.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="all uniformity measures for one partition")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sizes", help="comma-separated cluster sizes, e.g. 4950,4950,100")
    src.add_argument("--labels", type=Path, help="file with one label per line")
    _add_output(p)
    p.set_defaults(func=cmd_metrics)

    for name, func, text in (("exp1", cmd_exp1, "fragmentation of the small cluster"),
                             ("exp2", cmd_exp2, "bulk cluster splits")):
        p = sub.add_parser(name, help=f"reproduce the {text} table")
        _add_output(p)
        p.add_argument("--golden-check", action="store_true",
                       help="exit 1 if any 4-decimal cell differs from the reference table")
        p.set_defaults(func=func)

    p = sub.add_parser("exp3", help="rank candidate partitions with composite scorers")
    p.add_argument("manifest", type=Path)
    p.add_argument("--scorer", action="append",
                   help="uniformity selector(s), comma separated, or 'all' (default: mas)")
    p.add_argument("--label-column", action="store_true",
                   help="the dataset's final CSV column holds the ground-truth labels")
    p.add_argument("--no-standardize", action="store_true")
    _add_output(p)
    p.set_defaults(func=cmd_exp3)

    p = sub.add_parser("check", help="run the MAS property checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None, help="N for the dominance suite")
    p.add_argument("--partitions", type=int, default=200,
                   help="random partitions for equal-max, single-move and scale")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--sizes", help="fixed partition for single-move, epsilon or confined")
    p.add_argument("--active", help="comma-separated active cluster indices (confined)")
    _add_output(p, default_format="json")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoundViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UniformityError, InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
