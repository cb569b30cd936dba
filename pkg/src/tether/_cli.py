"""Tether CLI — tether stats / predict / cv / classify / compare.

Entry point for the ``tether`` command-line interface.  Flags left unset
fall through to ``tether.toml`` / ``tether.yaml`` and then to the
``TetherConfig`` defaults.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tether._errors import TetherError

# CLI spellings of the similarity sources; the library names are accepted too
SIMILARITY_NAMES: dict[str, str] = {
    "chem-seq": "chem_seq",
    "network": "network_based",
    "hybrid": "hybrid",
    "chem_seq": "chem_seq",
    "network_based": "network_based",
}


def _dataset_args(parser: argparse.ArgumentParser, *, many: bool = False) -> None:
    group = parser.add_argument_group("dataset")
    group.add_argument("--interactions", type=Path, help="Interaction matrix TSV (drugs x targets)")
    group.add_argument("--drug-sim", dest="drug_similarity", type=Path, help="Drug similarity TSV")
    group.add_argument("--target-sim", dest="target_similarity", type=Path, help="Target similarity TSV")
    group.add_argument("--dataset-dir", type=Path, help="Directory with the published benchmark files")
    group.add_argument(
        "--name",
        dest="names",
        action="append" if many else "store",
        help="Benchmark name: nr, gpcr, ic or e" + (" (repeatable)" if many else ""),
    )


def _predictor_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("predictor")
    group.add_argument("--hybrid-weight", type=float, help="Weight on chem/seq similarity in a hybrid")
    group.add_argument("--gip-scale", dest="gip_bandwidth_scale", type=float, help="Network kernel γ₀")
    group.add_argument(
        "--per-mask-similarity",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="Recompute network similarities for every masked pair",
    )
    group.add_argument("--bgm-bandwidth", type=float, help="BGM graph kernel bandwidth h")
    group.add_argument("--embedding-dim", type=int, help="BGM eigencomponents kept")
    group.add_argument("--bgm-ridge", type=float, help="BGM ridge weight")
    group.add_argument("--local-classifier", help="Local model for BLM/BLMN (default: rls)")
    group.add_argument("--delta", type=float, help="RLS regularization δ")
    group.add_argument("-C", dest="C", type=float, help="SVM penalty weight")
    group.add_argument("--combine", choices=["max", "mean"], help="Combination of directional scores")
    group.add_argument("--inferring-mode", choices=["linear", "exponential"], help="BLMN neighbour weights")
    group.add_argument("--beta", type=float, help="β of exponential inferring")
    group.add_argument("--neighbor-threshold", type=float, help="Minimum neighbour similarity")


def _run_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", dest="config_file", type=Path, help="Explicit tether.toml/yaml file")
    parser.add_argument("--seed", type=int, help="Seed for every random choice")
    parser.add_argument("--workers", type=int, help="Worker threads (1 = sequential)")
    parser.add_argument("--output", type=Path, help="Output directory")
    parser.add_argument("--verbose", action="store_true", default=None, help="Print per-stage timing")


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for the tether CLI."""
    parser = argparse.ArgumentParser(
        prog="tether",
        description="Drug-target interaction prediction and LOOCV benchmarks.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {_get_version()}",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # tether stats
    stats_parser = subparsers.add_parser("stats", help="Print dataset statistics")
    _dataset_args(stats_parser, many=True)
    _run_args(stats_parser)

    # tether predict
    predict_parser = subparsers.add_parser("predict", help="Score every pair of the full dataset")
    _dataset_args(predict_parser)
    predict_parser.add_argument("--method", choices=["bgm", "blm", "blmn"])
    predict_parser.add_argument("--similarity", choices=SIMILARITY_NAMES)
    _predictor_args(predict_parser)
    _run_args(predict_parser)

    # tether cv
    cv_parser = subparsers.add_parser("cv", help="Leave-one-out cross validation over all pairs")
    _dataset_args(cv_parser)
    cv_parser.add_argument("--method", choices=["bgm", "blm", "blmn"])
    cv_parser.add_argument("--similarity", choices=SIMILARITY_NAMES)
    cv_parser.add_argument("--aupr-method", choices=["average_precision", "trapezoid"])
    _predictor_args(cv_parser)
    _run_args(cv_parser)

    # tether compare
    compare_parser = subparsers.add_parser("compare", help="LOOCV for several methods and similarities")
    _dataset_args(compare_parser, many=True)
    compare_parser.add_argument("--methods", nargs="+", choices=["bgm", "blm", "blmn"])
    compare_parser.add_argument("--similarities", nargs="+", choices=SIMILARITY_NAMES)
    compare_parser.add_argument("--aupr-method", choices=["average_precision", "trapezoid"])
    _predictor_args(compare_parser)
    _run_args(compare_parser)

    # tether classify
    classify_parser = subparsers.add_parser("classify", help="Fit a classifier on a CSV table")
    source = classify_parser.add_mutually_exclusive_group()
    source.add_argument("table", nargs="?", type=Path, help="CSV file with a header row")
    source.add_argument("--weather", action="store_true", default=None, help="Use the Weather table")
    classify_parser.add_argument("--algo", dest="algorithm", help="Classifier (default: decision_tree)")
    classify_parser.add_argument("--label-column", help="Label column (default: last)")
    classify_parser.add_argument("--kinds", type=Path, help="TOML file with a [kinds] table overriding feature kinds")
    classify_parser.add_argument("--holdout", type=float, help="Held-out share for accuracy")
    classify_parser.add_argument("--delta", type=float, help="RLS regularization δ")
    classify_parser.add_argument("-C", dest="C", type=float, help="SVM penalty weight")
    _run_args(classify_parser)

    return parser


def _get_version() -> str:
    """Get the package version."""
    from tether import __version__

    return __version__


def _overrides(args: argparse.Namespace) -> dict[str, object]:
    """Flags the user actually set."""
    skip = {"command", "config_file"}
    out = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    if isinstance(out.get("names"), str):
        out["names"] = (out["names"],)
    if (similarity := getattr(args, "similarity", None)) is not None:
        out["similarity"] = SIMILARITY_NAMES[similarity]
    if (similarities := getattr(args, "similarities", None)) is not None:
        out["similarities"] = tuple(SIMILARITY_NAMES[s] for s in similarities)
    return out


def _diagnostic(exc: TetherError) -> str:
    notes = "; ".join(getattr(exc, "__notes__", ()))
    kind = type(exc).__name__
    return f"tether: {kind}: {exc}" + (f" ({notes})" if notes else "")


def main(argv: list[str] | None = None) -> None:
    """CLI entry point."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        sys.exit(0)

    from tether.app import run
    from tether.banner import print_notices
    from tether.config_loader import load_config
    from tether.observability import RunCollector, use_collector

    with use_collector(RunCollector()) as collector:
        try:
            config = load_config(
                Path.cwd(), config_file=args.config_file, command=args.command, **_overrides(args)
            )
            run(config)
        except TetherError as exc:
            print_notices(collector.notices())
            print(_diagnostic(exc), file=sys.stderr)
            sys.exit(exc.exit_code)
        print_notices(collector.notices())


if __name__ == "__main__":
    main()
