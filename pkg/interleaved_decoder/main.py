"""
Main entry point for the interleaved decoder.

Provides the command-line interface tying codes, decoders and the failure
analysis together into file-based workflows. Command output goes to stdout,
log records to stderr.
"""

import argparse
import asyncio
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import structlog
import yaml
from pydantic import ValidationError

from .analysis.bounds import (
    BoundCurve,
    as_probability,
    fer_bound,
    fer_exact,
    format_decimal,
    format_power,
    p_dep_clipped,
    p_fail_bound_gab,
    p_fail_bound_irs,
)
from .analysis.monte_carlo import (
    concat_channel_sim,
    mc_gab_failure,
    mc_irs_failure,
    sample_rank_f,
)
from .analysis.rng import SplitMix64, for_trial
from .core.gabidulin import GabidulinCode, gab_decode, gab_encode
from .core.irs_collab import decode, f_max
from .core.linalg import rank
from .core.rs_codes import IRSCode, irs_encode
from .storage.csv_storage import (
    CURVE_FIELDS,
    FAILURE_FIELDS,
    FIG1_FIELDS,
    CSVStorage,
    curve_row,
    failure_row,
    fig1_row,
    render_csv,
)
from .storage.json_storage import JSONStorage, render_report
from .storage.matrix_io import MatrixFormatError, read_matrix, write_matrix
from .utils.config import (
    DEFAULT_CONFIG_PATH,
    CodeSpecModel,
    DecoderConfig,
    GabidulinSpecModel,
    RunConfig,
    create_default_config,
    load_config,
)
from .utils.logger import LogContext, setup_logging

logger = structlog.get_logger(__name__)

FIG1_N = 204
FIG1_Q = 256
FIG1_D = 17
FIG1_DEGREES = range(9, 16)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    """Invalid command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer: {text}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers: {text}")


def _probability_list(text: str) -> List[Fraction]:
    try:
        return [as_probability(item.strip()) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def create_argument_parser() -> argparse.ArgumentParser:
    """Create command line argument parser."""
    common = _Parser(add_help=False)
    common.add_argument("--config", type=str, help="Path to YAML defaults file")
    common.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level",
    )

    parser = _Parser(
        prog="irs-collab",
        description="Collaborative decoding of interleaved Reed-Solomon and Gabidulin codes",
    )
    parser.add_argument("--version", action="version", version="irs-collab 1.0.0")
    sub = parser.add_subparsers(dest="command", required=True)

    encode = sub.add_parser("encode", parents=[common], help="Encode a message matrix")
    encode.add_argument("--code", required=True, help="JSON code spec")
    encode.add_argument("--messages", required=True, help="k x l message matrix file")
    encode.add_argument("--output", required=True, help="Codeword matrix file")

    corrupt = sub.add_parser("corrupt", parents=[common], help="Add seeded errors to a matrix")
    corrupt.add_argument("--code", required=True)
    corrupt.add_argument("--input", required=True)
    corrupt.add_argument("--output", required=True)
    kind = corrupt.add_mutually_exclusive_group(required=True)
    kind.add_argument("--rows", type=int, help="Exactly f erroneous rows")
    kind.add_argument("--row-prob", type=str, help="Each row erroneous with probability p")
    kind.add_argument("--rank", type=int, help="Uniform rank-f error (Gabidulin codes)")
    corrupt.add_argument("--seed", type=_seed, default=0)
    corrupt.add_argument(
        "--independent",
        action="store_true",
        help="Resample until the erroneous rows are linearly independent",
    )

    dec = sub.add_parser("decode", parents=[common], help="Collaboratively decode a matrix")
    dec.add_argument("--code", required=True)
    dec.add_argument("--input", required=True)
    dec.add_argument("--output", help="Corrected matrix file")
    dec.add_argument("--report", help="JSON report file")
    dec.add_argument("--verify", action="store_true", default=None)

    fmax = sub.add_parser("fmax", parents=[common], help="Collaborative radius min(l, d-2)")
    fmax.add_argument("--l", type=int, required=True)
    fmax.add_argument("--d", type=int, required=True)

    bound = sub.add_parser("bound", parents=[common], help="Failure probability bound")
    family = bound.add_mutually_exclusive_group(required=True)
    family.add_argument("--irs", action="store_true")
    family.add_argument("--gab", action="store_true")
    bound.add_argument("--f", type=int, required=True)
    bound.add_argument("--l", type=int, required=True)
    bound.add_argument("--q", type=int, required=True)
    bound.add_argument("--m", type=int)
    bound.add_argument("--d", type=int)

    ferb = sub.add_parser("ferbound", parents=[common], help="Frame error rate bound curve")
    ferb.add_argument("--N", type=int, required=True)
    ferb.add_argument("--l", type=int, required=True)
    ferb.add_argument("--q", type=int, required=True)
    ferb.add_argument("--d", type=int, required=True)
    ferb.add_argument("--grid", type=_probability_list)
    ferb.add_argument("--sharp", action="store_true")
    ferb.add_argument("--output")

    simfail = sub.add_parser("simfail", parents=[common], help="Monte Carlo failure table")
    simfail.add_argument("--code", required=True)
    simfail.add_argument("--f", type=_int_list, required=True)
    simfail.add_argument("--l", type=int, help="Interleaving degree for Gabidulin specs")
    simfail.add_argument("--trials", type=int)
    simfail.add_argument("--seed", type=_seed)
    simfail.add_argument("--workers", type=int)
    simfail.add_argument("--output")

    concat = sub.add_parser("concat-sim", parents=[common], help="Concatenated channel curve")
    concat.add_argument("--code", required=True)
    concat.add_argument("--p", type=_probability_list, required=True)
    concat.add_argument("--trials", type=int)
    concat.add_argument("--seed", type=_seed)
    concat.add_argument("--workers", type=int)
    concat.add_argument("--output")

    fig1 = sub.add_parser("fig1", parents=[common], help="FER curves of the (204,188) code")
    fig1.add_argument("--grid", type=_probability_list)
    fig1.add_argument("--output")

    init = sub.add_parser("init-config", parents=[common], help="Write the default YAML file")
    init.add_argument("--output", default=DEFAULT_CONFIG_PATH)

    return parser


def _run_config(args: argparse.Namespace, config: DecoderConfig) -> RunConfig:
    sim = config.simulation
    seed = getattr(args, "seed", None)
    trials = getattr(args, "trials", None)
    workers = getattr(args, "workers", None)
    return RunConfig(
        command=args.command,
        code_spec=getattr(args, "code", None),
        input=getattr(args, "input", None) or getattr(args, "messages", None),
        output=getattr(args, "output", None),
        report=getattr(args, "report", None),
        seed=sim.seed if seed is None else seed,
        trials=sim.trials if trials is None else trials,
        workers=sim.workers if workers is None else workers,
    )


async def _emit_csv(
    fieldnames: Sequence[str], rows: List[Dict[str, Any]], output: Optional[str]
) -> None:
    if output is None:
        sys.stdout.write(render_csv(fieldnames, rows))
    else:
        await CSVStorage(output, fieldnames).save_rows(rows)


def _interleaving(spec: GabidulinSpecModel, matrix: np.ndarray) -> int:
    return spec.l if spec.l is not None else matrix.shape[1]


async def cmd_encode(run: RunConfig) -> int:
    spec = await JSONStorage(run.code_spec).load_code_spec()
    if isinstance(spec, GabidulinSpecModel):
        code = spec.build()
        messages = await read_matrix(run.input, code.tower.extension.order, spec.l)
        codeword = gab_encode(code, messages)
    else:
        irs = spec.build()
        messages = await read_matrix(run.input, irs.field.order, irs.l)
        codeword = irs_encode(irs, messages)
    await write_matrix(run.output, codeword)
    return EXIT_OK


def _row_errors(
    code: IRSCode, rows: Optional[int], row_prob: Optional[str], independent: bool, rng: SplitMix64
) -> np.ndarray:
    gf = code.field
    errors = np.zeros((code.n, code.l), dtype=np.int64)
    if row_prob is not None:
        p = as_probability(row_prob)
        for j in range(code.n):
            if rng.bernoulli(p):
                errors[j] = rng.nonzero_vector(code.l, gf.order)
        return errors
    assert rows is not None
    if independent and rows > code.l:
        raise ValueError(f"{rows} rows of length {code.l} cannot be linearly independent")
    positions = rng.sample_distinct(code.n, rows)
    while True:
        values = np.array(
            [rng.nonzero_vector(code.l, gf.order) for _ in positions], dtype=np.int64
        ).reshape(rows, code.l)
        if not independent or rank(gf, values) == rows:
            break
    errors[positions] = values
    return errors


async def cmd_corrupt(run: RunConfig, args: argparse.Namespace) -> int:
    spec = await JSONStorage(run.code_spec).load_code_spec()
    rng = for_trial(run.seed, 0)
    if isinstance(spec, GabidulinSpecModel):
        if args.rank is None:
            raise UsageError("Gabidulin codes are corrupted with --rank")
        code: Any = spec.build()
        ext = code.tower.extension
        received = await read_matrix(run.input, ext.order, spec.l)
        errors = sample_rank_f(code.n, _interleaving(spec, received), args.rank, code.tower, rng)
    else:
        if args.rank is not None:
            raise UsageError("--rank applies to Gabidulin codes only")
        code = spec.build()
        ext = code.field
        received = await read_matrix(run.input, ext.order, code.l)
        errors = _row_errors(code, args.rows, args.row_prob, args.independent, rng)
    if received.shape != errors.shape:
        raise ValueError(f"Input matrix has shape {received.shape}, expected {errors.shape}")
    await write_matrix(run.output, ext.add_array(received, errors))
    logger.info("Errors injected", seed=run.seed, rows=int(np.count_nonzero(errors.any(axis=1))))
    return EXIT_OK


async def cmd_decode(run: RunConfig, verify: bool) -> int:
    spec = await JSONStorage(run.code_spec).load_code_spec()
    if isinstance(spec, GabidulinSpecModel):
        code: GabidulinCode = spec.build()
        received = await read_matrix(run.input, code.tower.extension.order, spec.l)
        outcome = gab_decode(code, _interleaving(spec, received), received, verify=verify)
    else:
        irs = spec.build()
        received = await read_matrix(run.input, irs.field.order, irs.l)
        outcome = decode(irs, received, verify=verify)

    report = outcome.to_dict()
    if outcome.success and run.output is not None:
        await write_matrix(run.output, outcome.codeword)
    elif not outcome.success:
        logger.warning("Decoding failed", reason=outcome.reason, f_star=outcome.f_star)
    if run.report is not None:
        await JSONStorage(run.report).save(report)
    sys.stdout.write(render_report(report))
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    f, l, q = args.f, args.l, args.q
    if args.irs:
        value = p_fail_bound_irs(f, l, q, args.d)
        power = format_power(q, -(l + 1 - f))
    else:
        if args.m is None or args.d is None:
            raise UsageError("--gab requires --m and --d")
        value = p_fail_bound_gab(f, l, q, args.m, args.d)
        power = format_power(q**args.m, -(l + 1 - f), 4)
    print(format_decimal(value))
    print(power if 0 < value < 1 else format_decimal(value))
    return EXIT_OK


async def cmd_ferbound(args: argparse.Namespace, config: DecoderConfig) -> int:
    grid = args.grid or config.simulation.p_grid
    curve = BoundCurve.build(grid, args.N, args.l, args.q, args.d, "sharp" if args.sharp else "bound")
    exact = BoundCurve.build(grid, args.N, args.l, args.q, args.d, "exact")
    rows = [curve_row(p, b, e) for (p, b), e in zip(curve.points, exact.values())]
    await _emit_csv(CURVE_FIELDS, rows, args.output)
    return EXIT_OK


async def cmd_simfail(run: RunConfig, args: argparse.Namespace) -> int:
    spec = await JSONStorage(run.code_spec).load_code_spec()
    code = spec.build()
    l = code.l if isinstance(code, IRSCode) else args.l or spec.l
    if l is None:
        raise UsageError("Gabidulin specs need an interleaving degree (--l or spec l)")
    rows = []
    for f in args.f:
        with LogContext(command="simfail", f=f, seed=run.seed) as log:
            if isinstance(code, GabidulinCode):
                assert isinstance(spec, GabidulinSpecModel)
                estimate = mc_gab_failure(code, l, f, run.trials, run.seed, run.workers)
                bound = p_fail_bound_gab(f, l, spec.q, spec.m, code.d)
                rows.append(failure_row(f, l, bound, None, estimate))
            else:
                q = code.field.order
                estimate = mc_irs_failure(code, f, run.trials, run.seed, run.workers)
                bound = p_fail_bound_irs(f, l, q, code.d)
                rows.append(failure_row(f, l, bound, p_dep_clipped(f, l, q, code.d), estimate))
            log.info("Cell finished", failures=estimate.failures, trials=estimate.trials)
    await _emit_csv(FAILURE_FIELDS, rows, run.output)
    return EXIT_OK


async def cmd_concat(run: RunConfig, args: argparse.Namespace) -> int:
    spec = await JSONStorage(run.code_spec).load_code_spec()
    if not isinstance(spec, CodeSpecModel):
        raise UsageError("concat-sim needs an interleaved RS code spec")
    code = spec.build()
    q, n, l, d = code.field.order, code.n, code.l, code.d
    rows = []
    for p in args.p:
        estimate = concat_channel_sim(code, p, run.trials, run.seed, run.workers)
        rows.append(curve_row(p, fer_bound(p, n, l, q, d), fer_exact(p, n, l, q, d), estimate))
    await _emit_csv(CURVE_FIELDS, rows, run.output)
    return EXIT_OK


async def cmd_fig1(args: argparse.Namespace, config: DecoderConfig) -> int:
    grid = args.grid or config.simulation.p_grid
    rows = []
    for l in FIG1_DEGREES:
        curves = [
            BoundCurve.build(grid, FIG1_N, l, FIG1_Q, FIG1_D, kind)
            for kind in ("bound", "exact", "independent")
        ]
        for (p, b), e, i in zip(curves[0].points, curves[1].values(), curves[2].values()):
            rows.append(fig1_row(l, p, b, e, i))
    await _emit_csv(FIG1_FIELDS, rows, args.output)
    return EXIT_OK


async def dispatch(args: argparse.Namespace, config: DecoderConfig) -> int:
    """Run one subcommand."""
    command = args.command
    if command == "fmax":
        print(f_max(args.l, args.d))
        return EXIT_OK
    if command == "bound":
        return cmd_bound(args)
    if command == "ferbound":
        return await cmd_ferbound(args, config)
    if command == "fig1":
        return await cmd_fig1(args, config)
    if command == "init-config":
        create_default_config(args.output)
        print(f"Default configuration created at: {args.output}")
        return EXIT_OK

    run = _run_config(args, config)
    if command == "encode":
        return await cmd_encode(run)
    if command == "corrupt":
        return await cmd_corrupt(run, args)
    if command == "decode":
        verify = config.decoder.verify if args.verify is None else args.verify
        return await cmd_decode(run, verify)
    if command == "simfail":
        return await cmd_simfail(run, args)
    if command == "concat-sim":
        return await cmd_concat(run, args)
    raise UsageError(f"Unknown command: {command}")


def _load_defaults(config_path: Optional[str]) -> DecoderConfig:
    if config_path is None and not Path(DEFAULT_CONFIG_PATH).exists():
        return DecoderConfig()
    return load_config(config_path)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Execute the command line and map outcomes to exit codes.

    Returns:
        0 on success (including a detected decoding failure), 1 on usage
        or parameter errors, 2 on I/O and parse errors
    """
    try:
        args = create_argument_parser().parse_args(argv)
        setup_logging(log_level=args.log_level or "WARNING")
        config = _load_defaults(args.config)
        if args.log_level is None and (config.logging.level != "WARNING" or config.logging.file):
            setup_logging(
                log_level=config.logging.level,
                log_file=config.logging.file,
                log_format=config.logging.format,
            )
        return asyncio.run(dispatch(args, config))
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (
        ValidationError,
        MatrixFormatError,
        UnicodeDecodeError,
        json.JSONDecodeError,
        yaml.YAMLError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    """Console script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
