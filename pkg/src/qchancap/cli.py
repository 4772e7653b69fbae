"""Command-line front end.

Every command writes one deterministic JSON document to stdout (schema
"qchancap/1") and any progress chatter to stderr.  Exit codes: 0 success,
2 usage/parse error, 3 validation failure, 4 size-cap violation.  Sweep
commands can emit a CSV series with --csv PATH (or ``--csv -`` to replace
stdout entirely).
"""
from __future__ import annotations

import functools
import hashlib
import json
import os
import sys
from typing import Callable

import click
import numpy as np

from . import __version__
from .capacity import OptimizerConfig, channel_capacity, depolarizing_threshold
from .channels import QuantumChannel, channel_from_spec
from .coding import (
    basis_code,
    bell_code,
    overlap_report,
    projection_decode,
    purity_average_experiment,
    random_code,
    transmit,
)
from .errors import SizeCapError, ValidationError
from .info import coherent_information
from .states import DensityMatrix, maximally_mixed
from .typical import typical_set

SCHEMA = "qchancap/1"

_BUILTIN_X_IS_DIM = {"identity", "complete_dephasing"}
_BUILTIN_X_IS_PARAM = {"dephasing", "depolarizing"}


def _default_threads() -> int:
    return os.cpu_count() or 1


def _parse_channel(text: str) -> tuple[QuantumChannel, dict]:
    """Channel plus its canonical spec dict, from shorthand, inline JSON or a file."""
    text = text.strip()
    if text.startswith("builtin:"):
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise click.UsageError(f"bad channel shorthand {text!r}; use builtin:NAME[:X]")
        name = parts[1]
        spec: dict = {"builtin": name}
        if name in _BUILTIN_X_IS_DIM:
            spec["dim"] = int(parts[2]) if len(parts) == 3 else 2
        elif name in _BUILTIN_X_IS_PARAM:
            if len(parts) != 3:
                raise click.UsageError(f"builtin {name!r} needs a parameter: builtin:{name}:VALUE")
            spec["dim"] = 2
            spec["param"] = float(parts[2])
        else:
            raise click.UsageError(f"unknown builtin channel {name!r}")
    else:
        spec = _load_json_argument(text, "channel")
    try:
        channel = channel_from_spec(spec)
    except ValidationError:
        raise  # mapped to exit 3 by the command wrapper
    except (ValueError, TypeError) as exc:
        raise click.UsageError(f"channel spec: {exc}") from exc
    return channel, spec


def _load_json_argument(text: str, what: str) -> dict:
    if text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise click.UsageError(f"cannot read {what} file {text!r}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{what} is not valid JSON: {exc}") from exc


def _parse_input_state(text: str, dim: int) -> DensityMatrix:
    if text.strip() == "maximally-mixed":
        return maximally_mixed(dim)
    data = _load_json_argument(text, "input state")
    try:
        matrix = np.array(
            [[complex(entry[0], entry[1]) for entry in row] for row in data],
            dtype=np.complex128,
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise click.UsageError(f"input state is not a matrix of [re, im] pairs: {exc}") from exc
    return DensityMatrix(matrix)


def _jsonify(value):
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonify(value.tolist())
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _emit(command: str, params: dict, result: dict, csv_rows=None, csv_path=None) -> None:
    result = _jsonify(result)
    canonical = json.dumps(result, sort_keys=True, separators=(",", ":"))
    manifest = {
        "command": command,
        "params": _jsonify(params),
        "version": __version__,
        "output_checksum": hashlib.sha256(canonical.encode()).hexdigest(),
    }
    document = {"schema": SCHEMA, "result": result, "manifest": manifest}
    if csv_rows is not None and csv_path == "-":
        for row in csv_rows:
            click.echo(",".join(str(x) for x in row))
        return
    if csv_rows is not None and csv_path:
        with open(csv_path, "w", encoding="utf-8") as fh:
            for row in csv_rows:
                fh.write(",".join(str(x) for x in row) + "\n")
    click.echo(json.dumps(document, sort_keys=True, indent=2))


def _wrap_errors(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SizeCapError as exc:
            click.echo(f"size cap: {exc}", err=True)
            sys.exit(4)
        except ValidationError as exc:
            click.echo(f"validation: {exc}", err=True)
            sys.exit(3)

    return wrapper


threads_option = click.option(
    "--threads",
    type=int,
    default=_default_threads,
    envvar="QCHANCAP_THREADS",
    show_default="all cores",
    help="Worker threads for parallelizable stages; never changes output bytes.",
)


@click.group()
@click.version_option(version=__version__, prog_name="qchancap")
def main() -> None:
    """Coherent information and capacity of noisy quantum channels."""


@main.command()
@click.option("--channel", "channel_text", required=True, help="builtin:NAME[:X], JSON, or a JSON file path.")
@click.option("--input", "input_text", default="maximally-mixed", show_default=True, help="Input state: maximally-mixed or a JSON Hermitian matrix.")
@threads_option
@_wrap_errors
def entropy(channel_text: str, input_text: str, threads: int) -> None:
    """Input/output/joint entropies and coherent information."""
    channel, spec = _parse_channel(channel_text)
    rho = _parse_input_state(input_text, channel.dim_in)
    report = coherent_information(channel, rho)
    _emit(
        "entropy",
        {"channel": spec, "input": input_text, "threads": threads},
        {"s_in": report.s_in, "s_out": report.s_out, "s_joint": report.s_joint, "i_q": report.i_q},
    )


@main.command()
@click.option("--channel", "channel_text", required=True)
@click.option("--restarts", type=int, default=16, show_default=True)
@click.option("--max-iters", type=int, default=2000, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--sweep", default=None, help="START:STOP:COUNT sweep of the builtin channel parameter.")
@click.option("--csv", "csv_path", default=None, help="Write sweep CSV here ('-' replaces stdout).")
@threads_option
@_wrap_errors
def capacity(channel_text, restarts, max_iters, tol, seed, sweep, csv_path, threads) -> None:
    """Channel capacity by multi-restart search over input states."""
    channel, spec = _parse_channel(channel_text)
    cfg = OptimizerConfig(restarts=restarts, max_iters=max_iters, tol=tol, seed=seed)
    params = {
        "channel": spec,
        "restarts": restarts,
        "max_iters": max_iters,
        "tol": tol,
        "seed": seed,
        "sweep": sweep,
        "threads": threads,
    }
    if sweep is None:
        click.echo(f"maximizing coherent information ({restarts} restarts)...", err=True)
        res = channel_capacity(channel, cfg, threads=threads)
        _emit(
            "capacity",
            params,
            {
                "c_q": res.c_q,
                "rho_star": res.rho_star.matrix,
                "restarts_agreeing": res.restarts_agreeing,
                "iterations": len(res.objective_trace),
            },
        )
        return
    if spec.get("builtin") not in _BUILTIN_X_IS_PARAM:
        raise click.UsageError("--sweep needs a parametric builtin channel (dephasing/depolarizing)")
    try:
        start, stop, count = sweep.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except ValueError as exc:
        raise click.UsageError(f"bad --sweep {sweep!r}; use START:STOP:COUNT") from exc
    series = []
    for value in grid:
        swept = channel_from_spec({**spec, "param": float(value)})
        res = channel_capacity(swept, cfg, threads=threads)
        series.append((float(value), res.c_q))
        click.echo(f"param={value:.6g} c_q={res.c_q:.6g}", err=True)
    rows = [("param", "c_q")] + [(f"{p!r}", f"{c!r}") for p, c in series]
    _emit("capacity", params, {"series": series}, csv_rows=rows, csv_path=csv_path)


@main.command()
@click.option("--tol", type=float, default=1e-6, show_default=True)
@threads_option
@_wrap_errors
def threshold(tol: float, threads: int) -> None:
    """Depolarizing noise level where symmetric coherent information vanishes."""
    eta_star = depolarizing_threshold(tol)
    _emit("threshold", {"tol": tol, "threads": threads}, {"eta_star": eta_star})


@main.command()
@click.option("--probs", required=True, help="Comma-separated symbol probabilities, e.g. 0.7,0.3.")
@click.option("--n", "block", type=int, required=True, help="Block length.")
@click.option("--delta", type=float, default=0.1, show_default=True, help="Typicality tolerance (bits/symbol).")
@threads_option
@_wrap_errors
def typical(probs: str, block: int, delta: float, threads: int) -> None:
    """Exact typical-set mass and dimension by type-class enumeration."""
    try:
        values = [float(x) for x in probs.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise click.UsageError(f"bad --probs {probs!r}: {exc}") from exc
    if abs(sum(values) - 1.0) > 1e-12:
        raise click.UsageError(f"probabilities sum to {sum(values)!r}, not 1")
    ts = typical_set(values, block, delta)
    _emit(
        "typical",
        {"probs": values, "n": block, "delta": delta, "threads": threads},
        {
            "total_mass": ts.total_mass,
            "log2_dimension": ts.log2_dimension if ts.log2_dimension != -np.inf else None,
            "class_count": len(ts.classes),
            "entropy_bits_per_symbol": ts.entropy,
        },
    )


def _make_code(kind: str, n: int, k: int, seed: int):
    if kind == "random":
        return random_code(n, k, 2, seed)
    if kind == "bell":
        return bell_code(n)
    if kind == "basis":
        return basis_code(n, k, 2)
    raise click.UsageError(f"unknown code kind {kind!r}")


@main.command()
@click.option("--channel", "channel_text", required=True)
@click.option("--n", "block", type=int, default=4, show_default=True, help="Channel uses per codeword.")
@click.option("--k", type=int, default=2, show_default=True, help="Number of codewords.")
@click.option("--kind", type=click.Choice(["random", "bell", "basis"]), default="random", show_default=True)
@click.option("--trials", type=int, default=2000, show_default=True, help="Decoding trials.")
@click.option("--weight", type=float, default=0.99, show_default=True, help="Projector eigenvalue weight.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cq", type=float, default=None, help="Capacity used for the overlap prediction (computed when omitted).")
@click.option("--n-sweep", default=None, help="Comma-separated block lengths, e.g. 2,4,6.")
@click.option("--seeds", type=int, default=50, show_default=True, help="Seeds per sweep point.")
@click.option("--csv", "csv_path", default=None, help="Write sweep CSV here ('-' replaces stdout).")
@threads_option
@_wrap_errors
def simulate(channel_text, block, k, kind, trials, weight, seed, cq, n_sweep, seeds, csv_path, threads) -> None:
    """Transmit codewords and report output overlaps and decoding accuracy."""
    channel, spec = _parse_channel(channel_text)
    if trials < 1:
        raise click.UsageError("--trials must be >= 1")
    if cq is None:
        click.echo("estimating channel capacity for the overlap prediction...", err=True)
        cq = channel_capacity(
            channel, OptimizerConfig(restarts=4, max_iters=800, tol=1e-8, seed=0), threads=threads
        ).c_q
    params = {
        "channel": spec,
        "n": block,
        "k": k,
        "kind": kind,
        "trials": trials,
        "weight": weight,
        "seed": seed,
        "c_q": cq,
        "n_sweep": n_sweep,
        "seeds": seeds,
        "threads": threads,
    }
    if n_sweep is None:
        code = _make_code(kind, block, k, seed)
        outputs = transmit(code, channel)
        report = overlap_report(outputs, cq, block)
        decoding = projection_decode(code, channel, trials=trials, weight=weight, seed=seed)
        _emit(
            "simulate",
            params,
            {
                "code": {"kind": code.kind, "n": code.n, "k": code.k, "dim": code.dim, "seed": code.seed},
                "codewords": [c.amplitudes for c in code.codewords],
                "overlap_report": {
                    "n": report.n,
                    "purities": report.purities,
                    "overlaps": report.overlaps,
                    "normalized_overlaps": report.normalized_overlaps,
                    "predicted_log2_overlap": report.predicted_log2_overlap,
                },
                "decoding_report": {
                    "trials": decoding.trials,
                    "correct": decoding.correct,
                    "misidentification_rate": decoding.misidentification_rate,
                    "projector_rank_used": decoding.projector_rank_used,
                    "seed": decoding.seed,
                },
            },
        )
        return
    try:
        blocks = [int(x) for x in n_sweep.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise click.UsageError(f"bad --n-sweep {n_sweep!r}") from exc
    if kind != "random":
        raise click.UsageError("--n-sweep requires --kind random")
    series = []
    for nb in blocks:
        overlaps = []
        rates = []
        for i in range(seeds):
            code = random_code(nb, k, 2, seed + i)
            outputs = transmit(code, channel)
            overlaps.append(overlap_report(outputs, cq, nb).median_offdiagonal())
            rates.append(
                projection_decode(code, channel, trials=trials, weight=weight, seed=seed + i)
                .misidentification_rate
            )
        series.append(
            {
                "n": nb,
                "median_normalized_overlap": float(np.median(overlaps)),
                "median_misidentification_rate": float(np.median(rates)),
            }
        )
        click.echo(f"n={nb}: overlap={series[-1]['median_normalized_overlap']:.6g}", err=True)
    rows = [("n", "median_normalized_overlap", "median_misidentification_rate")] + [
        (s["n"], repr(s["median_normalized_overlap"]), repr(s["median_misidentification_rate"]))
        for s in series
    ]
    _emit("simulate", params, {"sweep": series}, csv_rows=rows, csv_path=csv_path)


@main.command("purity-check")
@click.option("--channel", "channel_text", required=True)
@click.option("--n", "block", type=int, default=3, show_default=True)
@click.option("--trials", type=int, default=5000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@threads_option
@_wrap_errors
def purity_check(channel_text, block, trials, seed, threads) -> None:
    """Sampled block purity against the closed-form identity."""
    channel, spec = _parse_channel(channel_text)
    if trials < 1:
        raise click.UsageError("--trials must be >= 1")
    exp = purity_average_experiment(channel, maximally_mixed(channel.dim_in), block, trials, seed)
    _emit(
        "purity-check",
        {"channel": spec, "n": block, "trials": trials, "seed": seed, "threads": threads},
        {
            "mc_mean": exp.mc_mean,
            "rhs": exp.rhs,
            "rel_err": exp.rel_err,
            "std_error": exp.std_error,
            "tolerance": exp.tolerance,
            "pass": exp.passed,
        },
    )


if __name__ == "__main__":
    main()
