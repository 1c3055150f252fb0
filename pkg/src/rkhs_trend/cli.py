"""Command-line entry point: ``rkhs-trend <command> [options]``.

Exit codes are 0 on success, 2 for invalid input or usage and 1 for any
other failure.
"""

import argparse
import json
import logging
import math
import os
from pathlib import Path
import sys
import typing as tp

import numpy as np
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler

from rkhs_trend.__about__ import __version__
from rkhs_trend.analysis import (
    mspe_ratio,
    porcupine,
    revision_report,
    turning_report,
)
from rkhs_trend.bandwidth import (
    bandwidth_frame,
    builtin_table,
    optimize,
)
from rkhs_trend.config import (
    OptimizerConfig,
    SmoothingConfig,
)
from rkhs_trend.errors import ValidationError
from rkhs_trend.series import (
    TimeSeries,
    build_bank,
    ingest_csv,
    realtime_estimates,
    resolve_length,
    smooth,
)
from rkhs_trend.simulate import calibrated_series
from rkhs_trend.spectral import (
    to_frame,
    transfer,
)
from rkhs_trend.types import (
    CRITERIA,
    FAMILIES,
    OUTPUT_FORMATS,
    OutputFormat,
)

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "RKHS_TREND_OUTPUT_DIR"
FLOAT_FORMAT = "%.12g"
SIGNIFICANT_DIGITS = 12


class UsageError(ValidationError):
    pass


def _length(text: str) -> tp.Optional[int]:
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected an integer or 'auto': {text!r}"
        ) from None


def _output_args() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="csv")
    parser.add_argument(
        "--output",
        type=Path,
        default=None,
        help=f"file to write; relative paths resolve against ${OUTPUT_DIR_ENV}",
    )
    parser.add_argument("--verbose", action="store_true")
    return parser


def _filter_args(m_default: tp.Optional[str] = "auto") -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--family", choices=FAMILIES, default="rkhs")
    parser.add_argument("--criterion", choices=CRITERIA, default=None)
    parser.add_argument(
        "--m",
        type=_length,
        default=m_default,
        required=m_default is None,
        help="filter half-length, or 'auto' to select it from the I/C ratio",
    )
    parser.add_argument("--ic", type=float, default=None, help="Musgrave I/C ratio")
    parser.add_argument("--grid-size", type=int, default=2001)
    parser.add_argument(
        "--no-builtin",
        action="store_true",
        help="optimise the bandwidths even when published values exist",
    )
    parser.add_argument("--global-bandwidth", action="store_true")
    return parser


def _input_args(corpus: bool = False) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    if corpus:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("input", nargs="?", type=Path, default=None)
        group.add_argument("--input-dir", type=Path, default=None)
    else:
        parser.add_argument("input", type=Path)
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkhs-trend",
        description="Trend-cycle filters from reproducing kernels, with revision "
        "and turning-point analysis.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    output = _output_args()

    weights = sub.add_parser(
        "weights", parents=[output, _filter_args(None)], help="filter weights"
    )
    weights.add_argument("--q", type=int, default=None)

    bandwidth = sub.add_parser("bandwidth", parents=[output], help="bandwidths")
    bandwidth.add_argument("--m", type=int, required=True)
    bandwidth.add_argument("--criterion", choices=CRITERIA, required=True)
    bandwidth.add_argument("--use-builtin", action="store_true")
    bandwidth.add_argument("--grid-size", type=int, default=2001)
    bandwidth.add_argument("--step", type=float, default=0.01)

    sub.add_parser(
        "smooth",
        parents=[output, _filter_args(), _input_args()],
        help="trend-cycle estimate of a series",
    )

    revisions = sub.add_parser(
        "revisions",
        parents=[output, _filter_args(), _input_args(corpus=True)],
        help="revisions of the last-point estimates",
    )
    revisions.add_argument(
        "--detail", action="store_true", help="one row per date instead of a summary"
    )

    sub.add_parser(
        "turning",
        parents=[output, _filter_args(), _input_args(corpus=True)],
        help="turning points of the final trend and their detection lags",
    )

    fan = sub.add_parser(
        "porcupine",
        parents=[output, _filter_args(), _input_args()],
        help="trailing estimates of successive vintages",
    )
    fan.add_argument("--target", required=True, help="date of the first vintage")
    fan.add_argument("--horizon", type=int, required=True)
    fan.add_argument("--window", type=int, default=None)

    spectrum = sub.add_parser(
        "spectrum", parents=[output, _filter_args(None)], help="gain and phase"
    )
    spectrum.add_argument("--q", type=int, default=0)

    simulate = sub.add_parser(
        "simulate", parents=[output], help="synthetic series in the input format"
    )
    simulate.add_argument("--seed", type=int, default=123)
    simulate.add_argument("--n", type=int, default=240)
    simulate.add_argument("--ic", type=float, default=1.0)
    simulate.add_argument("--start", default="1990-01")
    return parser


def smoothing_config(args: argparse.Namespace) -> SmoothingConfig:
    criterion = args.criterion
    if args.family == "rkhs" and criterion is None:
        if not args.global_bandwidth:
            raise UsageError("--criterion is required for RKHS filters.")
        criterion = "gain"
    return SmoothingConfig(
        m=args.m,
        family=args.family,
        criterion=criterion or "gain",
        ic_ratio=args.ic,
        use_builtin=not args.no_builtin,
        global_bandwidth=args.global_bandwidth,
        optimizer=OptimizerConfig(grid_size=args.grid_size),
    )


def _round(value: tp.Any) -> tp.Any:
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render(df: pd.DataFrame, fmt: OutputFormat) -> str:
    if fmt == "json":
        records = [
            {key: _round(value) for key, value in row.items()}
            for row in df.to_dict(orient="records")
        ]
        return json.dumps(records, indent=2) + "\n"
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def output_path(path: tp.Optional[Path]) -> tp.Optional[Path]:
    if path is None:
        return None
    root = os.environ.get(OUTPUT_DIR_ENV)
    if root and not path.is_absolute():
        return Path(root) / path
    return path


def write(df: pd.DataFrame, args: argparse.Namespace) -> None:
    text = render(df, args.format)
    path = output_path(args.output)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.debug("Wrote %d rows to %s", len(df), path)


def _read(path: Path) -> TimeSeries:
    if str(path) == "-":
        return ingest_csv(sys.stdin, label="stdin")
    return ingest_csv(path, label=path.stem)


def _corpus(args: argparse.Namespace) -> tp.List[TimeSeries]:
    if args.input_dir is None:
        return [_read(args.input)]
    files = sorted(args.input_dir.glob("*.csv"))
    if not files:
        raise ValidationError(f"No CSV files in {args.input_dir}.")
    return [_read(path) for path in files]


def cmd_weights(args: argparse.Namespace) -> pd.DataFrame:
    if args.m is None:
        raise UsageError("weights needs an explicit --m.")
    config = smoothing_config(args)
    bank = build_bank(args.m, config)
    if args.q is None:
        return bank.to_df()
    if not 0 <= args.q <= args.m:
        raise UsageError(f"--q must lie in [0, {args.m}].")
    return bank.for_future(args.q).to_df()


def cmd_bandwidth(args: argparse.Namespace) -> pd.DataFrame:
    if args.use_builtin:
        bandwidths = builtin_table(args.m, args.criterion)
    else:
        config = OptimizerConfig(grid_size=args.grid_size, step=args.step)
        bandwidths = optimize(args.m, args.criterion, config, verbose=args.verbose)
    return bandwidth_frame(bandwidths)


def cmd_smooth(args: argparse.Namespace) -> pd.DataFrame:
    return smooth(_read(args.input), smoothing_config(args)).to_df()


def _labelled(df: pd.DataFrame, label: str, many: bool) -> pd.DataFrame:
    if not many:
        return df
    return df.assign(series=label)[["series", *df.columns]]


def cmd_revisions(args: argparse.Namespace) -> pd.DataFrame:
    config = smoothing_config(args)
    corpus = _corpus(args)
    frames = []
    for y in corpus:
        m = resolve_length(y, config)
        bank = build_bank(m, config, y.frequency)
        report = revision_report(realtime_estimates(y, config, bank=bank))
        if args.detail:
            frames.append(_labelled(report.to_df(), y.label, len(corpus) > 1))
            continue
        reference_bank = build_bank(m, SmoothingConfig(family="musgrave"))
        reference = revision_report(realtime_estimates(y, bank=reference_bank))
        frames.append(
            pd.DataFrame(
                [
                    {
                        "series": y.label,
                        "config": config.label,
                        "m": m,
                        "n_dates": report.n_defined,
                        "mspe": report.mspe,
                        "mspe_musgrave": reference.mspe,
                        "ratio": mspe_ratio(report, reference),
                    }
                ]
            )
        )
    return pd.concat(frames, ignore_index=True)


def cmd_turning(args: argparse.Namespace) -> pd.DataFrame:
    config = smoothing_config(args)
    corpus = _corpus(args)
    frames = [
        _labelled(turning_report(y, config).to_df(), y.label, len(corpus) > 1)
        for y in corpus
    ]
    return pd.concat(frames, ignore_index=True)


def cmd_porcupine(args: argparse.Namespace) -> pd.DataFrame:
    y = _read(args.input)
    result = porcupine(
        y,
        args.target,
        args.horizon,
        config=smoothing_config(args),
        window=args.window,
    )
    return result.to_df()


def cmd_spectrum(args: argparse.Namespace) -> pd.DataFrame:
    if args.m is None:
        raise UsageError("spectrum needs an explicit --m.")
    if not 0 <= args.q <= args.m:
        raise UsageError(f"--q must lie in [0, {args.m}].")
    bank = build_bank(args.m, smoothing_config(args))
    return to_frame(transfer(bank.for_future(args.q), grid_size=args.grid_size))


def cmd_simulate(args: argparse.Namespace) -> pd.DataFrame:
    y = calibrated_series(args.seed, args.ic, n_timepoints=args.n, start=args.start)
    return y.to_df()


COMMANDS: tp.Dict[str, tp.Callable[[argparse.Namespace], pd.DataFrame]] = {
    "weights": cmd_weights,
    "bandwidth": cmd_bandwidth,
    "smooth": cmd_smooth,
    "revisions": cmd_revisions,
    "turning": cmd_turning,
    "porcupine": cmd_porcupine,
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
}


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def main(argv: tp.Optional[tp.Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.verbose)
    try:
        write(COMMANDS[args.command](args), args)
    except ValidationError as exc:
        sys.stderr.write(f"rkhs-trend: error: {exc}\n")
        return 2
    except Exception as exc:
        logger.debug("Unhandled failure", exc_info=True)
        sys.stderr.write(f"rkhs-trend: internal error: {type(exc).__name__}: {exc}\n")
        return 1
    return 0
