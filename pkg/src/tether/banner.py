"""Run banner — short, command-aware status output.

Prints what a run is about to do (dataset, method, workers, output) and,
at the end, any notices the library recorded.  Detects ``NO_COLOR`` /
``TERM`` for safe fallback.  Everything goes to stderr so result tables
on stdout stay clean.
"""

from __future__ import annotations

import os
import sys
from collections.abc import Sequence
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from tether.config import TetherConfig
    from tether.datasets.dti import DtiDataset
    from tether.observability import Notice, SweepStats


# ---------------------------------------------------------------------------
# ANSI helpers: respect NO_COLOR (https://no-color.org)
# ---------------------------------------------------------------------------


def _supports_color() -> bool:
    """Return True if the terminal supports ANSI colors."""
    if os.environ.get("NO_COLOR"):
        return False
    if os.environ.get("TERM") == "dumb":
        return False
    return hasattr(sys.stderr, "isatty") and sys.stderr.isatty()


_COLOR = _supports_color()

_RESET = "\033[0m" if _COLOR else ""
_BOLD = "\033[1m" if _COLOR else ""
_DIM = "\033[2m" if _COLOR else ""
_CYAN = "\033[36m" if _COLOR else ""
_GREEN = "\033[32m" if _COLOR else ""
_YELLOW = "\033[33m" if _COLOR else ""
_MAGENTA = "\033[35m" if _COLOR else ""


# ---------------------------------------------------------------------------
# Command badges
# ---------------------------------------------------------------------------

_COMMAND_STYLES: dict[str, tuple[str, str]] = {
    "stats": (_DIM, "stats"),
    "predict": (_GREEN, "predict"),
    "cv": (_CYAN, "cv"),
    "classify": (_MAGENTA, "classify"),
    "compare": (_YELLOW, "compare"),
}


def _command_badge(command: str) -> str:
    """Return a styled [command] badge."""
    color, label = _COMMAND_STYLES.get(command, (_DIM, command))
    return f"{color}[{label}]{_RESET}"


def _method_line(config: TetherConfig) -> str:
    runs = config.runs()
    if len(runs) > 1:
        methods = ", ".join(dict.fromkeys(m for m, _ in runs))
        kinds = ", ".join(dict.fromkeys(s for _, s in runs))
        return f"methods: {methods} {_DIM}x{_RESET} similarities: {kinds}"
    method, kind = runs[0]
    detail = f"h={config.bgm_bandwidth}" if method == "bgm" else f"{config.local_classifier}, {config.combine}"
    return f"method: {method} {_DIM}({detail}){_RESET}  similarity: {kind}"


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def print_banner(
    config: TetherConfig,
    *,
    datasets: Sequence[DtiDataset] = (),
    load_ms: float = 0.0,
) -> None:
    """Print the tether run banner to stderr.

    Args:
        config: Resolved TetherConfig.
        datasets: Datasets loaded for the run.
        load_ms: Time spent loading them in milliseconds.

    """
    from tether import __version__

    header = f"  {_BOLD}tether{_RESET} {_DIM}v{__version__}{_RESET}  {_command_badge(config.command)}"
    lines: list[str] = ["", header, f"  {_DIM}{'─' * 43}{_RESET}"]

    timing = f" {_DIM}in {load_ms:.0f}ms{_RESET}" if load_ms > 0 else ""
    for ds in datasets:
        n_int = int(ds.interactions.sum())
        lines.append(
            f"  {_DIM}├─{_RESET} {ds.name}: {ds.n_drugs} drugs x {ds.n_targets} targets, "
            f"{n_int} interactions{timing}"
        )

    if config.command == "classify":
        source = "weather" if config.weather else str(config.table_path)
        lines.append(f"  {_DIM}├─{_RESET} table: {_DIM}{source}{_RESET}")
        lines.append(f"  {_DIM}├─{_RESET} algorithm: {config.algorithm}")
    elif config.command != "stats":
        lines.append(f"  {_DIM}├─{_RESET} {_method_line(config)}")

    lines.append(f"  {_DIM}├─{_RESET} workers: {config.workers}  seed: {config.seed}")
    if config.command in ("predict", "cv", "compare"):
        lines.append(f"  {_DIM}└─{_RESET} output: {_DIM}{config.output_path}{_RESET}")
    lines.append("")

    print("\n".join(lines), file=sys.stderr)


def print_notices(notices: Sequence[Notice]) -> None:
    """Echo recorded warnings and info notices to stderr."""
    if not notices:
        return
    lines = [
        f"  {_YELLOW}!{_RESET} {n.message}" if n.level == "warning" else f"  {_DIM}i {n.message}{_RESET}"
        for n in notices
    ]
    print("\n".join(["", *lines, ""]), file=sys.stderr)


def print_sweep_stats(stats: SweepStats | None) -> None:
    """One stderr line summarizing every LOOCV sweep of the run."""
    if stats is None:
        return
    sweeps = "sweep" if stats.count == 1 else "sweeps"
    stages = ", ".join(f"{name} {ms:.0f}ms" for name, ms in stats.avg_stage_ms.items())
    print(
        f"  {_DIM}{stats.count} {sweeps}, {stats.pairs} pairs: p50 {stats.p50_ms:.0f}ms, "
        f"p95 {stats.p95_ms:.0f}ms, max {stats.max_ms:.0f}ms (avg {stages}){_RESET}",
        file=sys.stderr,
    )
