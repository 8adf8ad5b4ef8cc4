"""
Command-line interface for conical-heat-trace.

Usage:
    conical-heat-trace coeffs --fprime0 0.5 --fsecond0 1        # heat and resolvent coefficients
    conical-heat-trace scan --alpha-min 0.05 --alpha-max 2 --steps 40
    conical-heat-trace asymptotics --alphas 0.05,0.1,0.2 --order 3
    conical-heat-trace irrationality --jmax 41
    conical-heat-trace profile --input profile.csv --degree 3
    conical-heat-trace hfun --k 0 --alpha 2 --z 0.5

Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence.
"""

import csv
import functools
import io
import json
import logging
import sys
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Any, TypeVar

import click
import numpy as np

from . import __version__
from .coefficients import asymptotic_f, b0, b1m_result, b_half_result, big_f, c1, c2m, clear_quadrature_cache
from .config import DEFAULT_CONFIG
from .exceptions import ConicalHeatTraceError, ConvergenceError
from .geometry import curvature_class, embedding, from_derivatives, from_profile_samples, read_profile_csv
from .hfun import ZPoint, h_direct, h_hat, h_reg_at_zero, h_sing, phi, phi_hat, phi_uses_series
from .irrationality import report
from .models import SCHEMA_VERSION, ConeData, EvalMethod, OutputRecord, Provenance, QuadResult

__all__ = [
    "cli",
]

logger = logging.getLogger(__name__)

EXIT_INVALID = 2
EXIT_NONCONVERGENCE = 3

F = TypeVar("F", bound=Callable[..., Any])
T = TypeVar("T")
R = TypeVar("R")


def handle_errors(func: F) -> F:
    """Map package errors to exit codes with the message on stderr."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ConvergenceError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NONCONVERGENCE)
        except ConicalHeatTraceError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INVALID)

    return wrapper  # type: ignore[return-value]


def require_converged(unconverged: Sequence[str]) -> None:
    if unconverged:
        raise ConvergenceError(f"not converged: {', '.join(unconverged)}")


def parallel_map(func: Callable[[T], R], items: Iterable[T], jobs: int) -> list[R]:
    """Order-preserving map, in a process pool when jobs > 1."""
    if jobs <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def write_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def emit_record(record: OutputRecord, fmt: str) -> None:
    if fmt == "json":
        click.echo(record.to_json())
        return
    rows: list[Sequence[Any]] = [("input", name, value, "", "") for name, value in record.inputs.items()]
    rows.extend(("result", name, value, err, prov) for name, value, err, prov in record.rows())
    click.echo(write_table(("kind", "name", "value", "err_est", "provenance"), rows), nl=False)


def emit_table(fmt: str, inputs: dict[str, Any], header: Sequence[str], rows: list[Sequence[Any]]) -> None:
    if fmt == "csv":
        click.echo(write_table(header, rows), nl=False)
        return
    payload = {
        "schema_version": SCHEMA_VERSION,
        "inputs": inputs,
        "rows": [dict(zip(header, row)) for row in rows],
    }
    click.echo(json.dumps(payload, indent=2))


def quad_provenance(result: QuadResult) -> Provenance:
    # Exact zeros (k_f = 0) never reach the integrator.
    return Provenance.CLOSED_FORM if result.n_evals == 0 else Provenance.QUADRATURE


def coefficient_record(cone: ConeData, m: int, tol: float) -> tuple[OutputRecord, list[str]]:
    """Every coefficient of the germ, plus embedding data when f'(0) <= 1."""
    record = OutputRecord(
        inputs={
            "fprime0": float(cone.fprime0),
            "fsecond0": float(cone.fsecond0),
            "alpha": cone.alpha,
            "k_f": cone.k_f,
            "m": m,
            "tol": tol,
            "curvature_class": curvature_class(cone).value,
        }
    )
    half = b_half_result(cone, tol)
    resolvent = b1m_result(cone, m, tol)

    record.add("b0", b0(cone))
    record.add("b_half", half.value, half.err_est, quad_provenance(half))
    record.add("c0", 0.0)
    record.add("c_half", 0.0)
    record.add("c1", c1(cone))
    record.add("b0m", b0(cone))
    record.add("b1m", resolvent.value, resolvent.err_est, quad_provenance(resolvent))
    record.add("c2m", c2m(cone, m))

    emb = embedding(cone)
    record.inputs["embeddable"] = emb.embeddable
    if emb.phi is not None:
        record.add("phi", emb.phi)
    if emb.kappa0 is not None:
        record.add("kappa0", emb.kappa0)

    unconverged = [name for name, result in (("b_half", half), ("b1m", resolvent)) if not result.converged]
    return record, unconverged


def scan_row(task: tuple[float, float]) -> tuple[float, float, float, bool]:
    alpha, tol = task
    result = big_f(alpha, tol)
    return alpha, result.value, result.err_est, result.converged


def asymptotics_row(task: tuple[float, int, float]) -> tuple[float, float, float, float, float, bool]:
    alpha, order, tol = task
    result = big_f(alpha, tol)
    approx = asymptotic_f(alpha, order, tol)
    return alpha, result.value, approx, result.value - approx, result.err_est, result.converged


def parse_alphas(ctx: click.Context, param: click.Parameter, value: str) -> list[float]:
    try:
        alphas = [float(item) for item in value.split(",") if item.strip()]
    except ValueError as e:
        raise click.BadParameter(f"not a comma-separated list of numbers: {value!r}") from e
    if not alphas:
        raise click.BadParameter("at least one alpha is required")
    if any(not a > 0 for a in alphas):
        raise click.BadParameter("every alpha must be positive")
    return alphas


def format_option(default: str) -> Callable[[F], F]:
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default=default,
        show_default=True,
        help="Output format",
    )


tol_option = click.option("--tol", type=float, default=DEFAULT_CONFIG.tol, show_default=True, help="Tolerance")
jobs_option = click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes")


@click.group()
@click.version_option(version=__version__, prog_name="conical-heat-trace")
@click.option("--verbose", "-v", is_flag=True, help="Log debug output to stderr")
def cli(verbose: bool) -> None:
    """
    Heat-trace coefficients of a conical singularity with metric dr^2 + f(r)^2 dtheta^2.

    Examples:

        conical-heat-trace coeffs --fprime0 0.5 --fsecond0 1

        conical-heat-trace scan --alpha-min 0.05 --alpha-max 2 --steps 40
    """
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.option("--fprime0", type=float, required=True, help="f'(0) > 0")
@click.option("--fsecond0", type=float, default=0.0, show_default=True, help="f''(0)")
@click.option("--m", "m", type=click.IntRange(min=2), default=2, show_default=True, help="Resolvent power")
@tol_option
@format_option("json")
@handle_errors
def coeffs(fprime0: float, fsecond0: float, m: int, tol: float, fmt: str) -> None:
    """
    Heat and resolvent coefficients of the germ (f'(0), f''(0)).

    Examples:

        conical-heat-trace coeffs --fprime0 0.3333333333 --fsecond0 0
    """
    cone = from_derivatives(fprime0, fsecond0)
    record, unconverged = coefficient_record(cone, m, tol)
    emit_record(record, fmt)
    require_converged(unconverged)


@cli.command()
@click.option("--alpha-min", type=float, required=True, help="Smallest alpha (> 0)")
@click.option("--alpha-max", type=float, required=True, help="Largest alpha")
@click.option("--steps", type=click.IntRange(min=2), required=True, help="Number of rows")
@click.option("--spacing", type=click.Choice(["linear", "geometric"]), default="linear", show_default=True)
@tol_option
@format_option("csv")
@jobs_option
@handle_errors
def scan(alpha_min: float, alpha_max: float, steps: int, spacing: str, tol: float, fmt: str, jobs: int) -> None:
    """Tabulate F(alpha) on a grid."""
    if not 0 < alpha_min < alpha_max:
        raise click.BadParameter("need 0 < alpha-min < alpha-max", param_hint="--alpha-min/--alpha-max")
    space = np.geomspace if spacing == "geometric" else np.linspace
    alphas = [float(a) for a in space(alpha_min, alpha_max, steps)]

    results = parallel_map(scan_row, [(a, tol) for a in alphas], jobs)
    clear_quadrature_cache()
    rows = [(alpha, value, err, Provenance.QUADRATURE.value) for alpha, value, err, _ in results]
    inputs = {"alpha_min": alpha_min, "alpha_max": alpha_max, "steps": steps, "spacing": spacing, "tol": tol}
    emit_table(fmt, inputs, ("alpha", "F", "err_est", "provenance"), rows)
    require_converged([f"F({alpha!r})" for alpha, _, _, ok in results if not ok])


@cli.command()
@click.option("--alphas", required=True, callback=parse_alphas, help="Comma-separated alphas")
@click.option("--order", type=click.IntRange(min=1), default=3, show_default=True, help="Expansion order r")
@tol_option
@format_option("csv")
@jobs_option
@handle_errors
def asymptotics(alphas: list[float], order: int, tol: float, fmt: str, jobs: int) -> None:
    """Compare F(alpha) with its small-alpha expansion of order r."""
    results = parallel_map(asymptotics_row, [(a, order, tol) for a in alphas], jobs)
    clear_quadrature_cache()
    rows = [
        (alpha, value, approx, residual, err, Provenance.QUADRATURE.value)
        for alpha, value, approx, residual, err, _ in results
    ]
    inputs = {"alphas": alphas, "order": order, "tol": tol}
    emit_table(fmt, inputs, ("alpha", "F", "F_asym", "residual", "err_est", "provenance"), rows)
    require_converged([f"F({row[0]!r})" for row in results if not row[-1]])


@cli.command()
@click.option("--jmax", type=int, default=DEFAULT_CONFIG.jmax, show_default=True, help="Largest odd j")
@format_option("csv")
@handle_errors
def irrationality(jmax: int, fmt: str) -> None:
    """Taylor-coefficient growth table of F at alpha = 0."""
    if jmax < 1 or jmax % 2 == 0 or jmax > DEFAULT_CONFIG.jmax:
        raise click.BadParameter(f"must be odd and between 1 and {DEFAULT_CONFIG.jmax}", param_hint="--jmax")
    table = report(jmax)
    header = [*asdict(table[0]).keys(), "err_est", "provenance"]
    rows = [[*asdict(row).values(), 0.0, Provenance.CLOSED_FORM.value] for row in table]
    emit_table(fmt, {"jmax": jmax}, header, rows)


@cli.command()
@click.option(
    "--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True, help="Profile CSV (r,f)"
)
@click.option("--degree", type=click.IntRange(2, 3), default=3, show_default=True, help="Fit degree")
@click.option("--m", "m", type=click.IntRange(min=2), default=2, show_default=True, help="Resolvent power")
@tol_option
@format_option("json")
@handle_errors
def profile(input_path: str, degree: int, m: int, tol: float, fmt: str) -> None:
    """Fit the germ to profile samples, then report all coefficients."""
    samples = read_profile_csv(input_path)
    cone = from_profile_samples(samples, degree)
    record, unconverged = coefficient_record(cone, m, tol)
    record.inputs.update({"input": input_path, "degree": degree, "samples": len(samples)})
    emit_record(record, fmt)
    require_converged(unconverged)


@cli.command()
@click.option("--k", "k", type=click.IntRange(0, 2), required=True, help="Derivative order")
@click.option("--alpha", type=float, required=True, help="alpha > 0")
@click.option("--z", "z", type=float, required=True, help="Point in [0, 1]")
@click.option(
    "--method", type=click.Choice(["auto", "direct", "series", "oracle"]), default="auto", show_default=True
)
@format_option("json")
@handle_errors
def hfun(k: int, alpha: float, z: float, method: str, fmt: str) -> None:
    """Inspect h_{k,alpha}, its parts and hat-h_{k,alpha} at one point."""
    result = h_hat(k, alpha, z, method=method)
    record = OutputRecord(
        inputs={
            "k": k,
            "alpha": alpha,
            "z": z,
            "method": result.method.value,
            "terms_used": result.terms_used,
            "truncated": result.truncated,
            "precision_loss": result.precision_loss,
        }
    )
    if 0.0 < z < 1.0:
        record.add("h", h_direct(k, alpha, z))
        record.add("h_sing", h_sing(k, alpha, z))
    record.add("h_reg0", h_reg_at_zero(k, alpha))
    provenance = Provenance.SERIES if result.method in (EvalMethod.SERIES, EvalMethod.ORACLE) else Provenance.CLOSED_FORM
    record.add("h_hat", result.value, result.err_est, provenance)
    phi_provenance = Provenance.SERIES if phi_uses_series(ZPoint.from_z(z)) else Provenance.CLOSED_FORM
    if z < 1.0:
        record.add("phi", phi(k, z), provenance=phi_provenance)
    record.add("phi_hat", phi_hat(k, z), provenance=phi_provenance)
    emit_record(record, fmt)
    require_converged(["h_hat"] if result.truncated else [])
