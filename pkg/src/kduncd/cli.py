"""Command-line surface: enumerate diagrams, classify states, run
verification suites, and emit witness states.

Exit codes: 0 success, 1 verification mismatch or engine disagreement,
2 usage error, 3 resource abort (Unknown points without --allow-partial).
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import __version__
from .diagram import (
    EngineDisagreementError,
    PointStatus,
    UncertaintyDiagram,
    diagram_to_csv,
    enumerate_diagram,
    load_diagram,
    point_exists,
    save_diagram,
    witness_state,
)
from .kd import (
    SupportThresholdError,
    classify_state,
    dft_matrix,
    load_state,
    predict_classicality_dft,
    save_state,
    support_profile,
    theorem5_sufficient,
)
from .plotting import diagram_svg
from .verify import verify_suite

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_ABORTED = 3


@dataclass(frozen=True)
class RunConfig:
    """Resolved run options shared by the commands."""

    dims: tuple[int, ...]
    engine: str
    sym_reduce: bool
    eps_support: float
    eps_classical: float
    rank_tol: float
    seed: int | None
    max_checks: int | None
    allow_partial: bool
    cache_dir: Path | None

    def __post_init__(self) -> None:
        if self.eps_support <= 0 or self.eps_classical <= 0 or self.rank_tol <= 0:
            raise click.UsageError("tolerances must be positive")


def _parse_dims(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if lo > hi:
            raise click.UsageError(f"empty dimension range {text!r}")
        return tuple(range(lo, hi + 1))
    return (int(text),)


def _cached_diagram(config: RunConfig, d: int) -> UncertaintyDiagram:
    if config.cache_dir is None:
        return enumerate_diagram(
            dft_matrix(d),
            engine=config.engine,
            rank_tol=config.rank_tol,
            sym_reduce=config.sym_reduce,
            max_checks=config.max_checks,
        )
    key_src = json.dumps(
        {
            "d": d,
            "engine": config.engine,
            "rank_tol": config.rank_tol,
            "sym_reduce": config.sym_reduce,
            "max_checks": config.max_checks,
            "version": __version__,
        },
        sort_keys=True,
    )
    key = hashlib.sha256(key_src.encode()).hexdigest()[:16]
    path = config.cache_dir / f"diagram-d{d}-{key}.json"
    if path.exists():
        return load_diagram(path)
    diag = enumerate_diagram(
        dft_matrix(d),
        engine=config.engine,
        rank_tol=config.rank_tol,
        sym_reduce=config.sym_reduce,
        max_checks=config.max_checks,
    )
    config.cache_dir.mkdir(parents=True, exist_ok=True)
    save_diagram(path, diag)
    return diag


def _common_options(fn):
    fn = click.option(
        "--engine",
        type=click.Choice(["auto", "exact", "numeric", "both"]),
        default="auto",
        show_default=True,
        help="Rank engine; auto picks exact for d <= 9, numeric above.",
    )(fn)
    fn = click.option("--sym-reduce/--no-sym-reduce", default=False, show_default=True)(fn)
    fn = click.option("--eps-support", type=float, default=1e-10, show_default=True)(fn)
    fn = click.option("--eps-classical", type=float, default=1e-10, show_default=True)(fn)
    fn = click.option("--rank-tol", type=float, default=1e-10, show_default=True)(fn)
    fn = click.option("--seed", type=int, default=None)(fn)
    fn = click.option("--max-checks", type=int, default=None, help="Per-point candidate budget.")(fn)
    fn = click.option("--allow-partial", is_flag=True, default=False)(fn)
    fn = click.option(
        "--cache",
        "cache_dir",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Directory for reusable diagram enumerations.",
    )(fn)
    return fn


def _config(dims: tuple[int, ...], engine, sym_reduce, eps_support, eps_classical,
            rank_tol, seed, max_checks, allow_partial, cache_dir) -> RunConfig:
    return RunConfig(
        dims=dims,
        engine=engine,
        sym_reduce=sym_reduce,
        eps_support=eps_support,
        eps_classical=eps_classical,
        rank_tol=rank_tol,
        seed=seed,
        max_checks=max_checks,
        allow_partial=allow_partial,
        cache_dir=cache_dir,
    )


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Kirkwood-Dirac nonclassicality and DFT uncertainty-diagram toolkit."""


@main.command("diagram")
@click.option("--d", "dim", type=str, required=True, help="Dimension.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False, path_type=Path), default=None)
@_common_options
def cmd_diagram(dim, out, csv_path, svg_path, **kwargs) -> None:
    """Enumerate the uncertainty diagram for one dimension."""
    dims = _parse_dims(dim)
    if len(dims) != 1:
        raise click.UsageError("diagram takes a single dimension")
    config = _config(dims, **kwargs)
    d = dims[0]
    try:
        diag = _cached_diagram(config, d)
    except EngineDisagreementError as exc:
        click.echo(f"engine disagreement: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    if out is not None:
        save_diagram(out, diag)
    if csv_path is not None:
        Path(csv_path).write_text(diagram_to_csv(diag), encoding="utf-8")
    if svg_path is not None:
        Path(svg_path).write_text(diagram_svg(diag), encoding="utf-8")
    n_present = len(diag.present_set())
    n_hole = len(diag.hole_set())
    n_unknown = len(diag.unknown_set())
    click.echo(
        f"d={d} engine={diag.engine} present={n_present} holes={n_hole} "
        f"unknown={n_unknown} rank_requests={diag.stats.get('rank_requests', 'n/a')}"
    )
    if out is None and csv_path is None and svg_path is None:
        click.echo(diagram_to_csv(diag), nl=False)
    if n_unknown and not config.allow_partial:
        click.echo("unresolved points present; rerun with --allow-partial to accept", err=True)
        sys.exit(EXIT_ABORTED)


@main.command("classify")
@click.argument("state_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--d", "dim", type=int, default=None, help="Expected dimension.")
@_common_options
def cmd_classify(state_file, dim, **kwargs) -> None:
    """Classify a state from a JSON file against the DFT basis pair."""
    config = _config((), **kwargs)
    try:
        psi = load_state(state_file)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"malformed state file: {exc}") from exc
    if dim is not None and psi.d != dim:
        raise click.UsageError(f"state has d={psi.d}, expected {dim}")
    u = dft_matrix(psi.d)
    profile = support_profile(psi, u, eps=config.eps_support)
    result = classify_state(psi, u, eps=config.eps_classical)
    try:
        t4 = predict_classicality_dft(profile).value
    except SupportThresholdError as exc:
        raise click.UsageError(str(exc)) from exc
    if profile.n_a > 1 and profile.n_b > 1:
        t5 = theorem5_sufficient(profile, u)
    else:
        t5 = None  # criterion is silent on basis vectors
    witness = None
    if result.witness is not None:
        i, j, q = result.witness
        witness = {"i": i, "j": j, "q": [q.real, q.imag]}
    report = {
        "d": psi.d,
        "n_a": profile.n_a,
        "n_b": profile.n_b,
        "product": profile.n_a * profile.n_b,
        "verdict": result.verdict.value,
        "witness": witness,
        "theorem4_prediction": t4,
        "theorem5_flag": t5,
    }
    click.echo(json.dumps(report, indent=2))


@main.command("verify")
@click.argument(
    "theorem", type=click.Choice(["T1", "C1", "T2", "T3", "T4", "T5", "L3"], case_sensitive=False)
)
@click.option("--d", "dim", type=str, required=True, help="Dimension or range A..B.")
@click.option("--samples", type=int, default=None, help="Sampled states per dimension.")
@click.option("--pairs", type=int, default=None, help="Random MUB pairs per dimension (T5).")
@_common_options
def cmd_verify(theorem, dim, samples, pairs, **kwargs) -> None:
    """Check one named prediction or property suite over a dimension range."""
    dims = _parse_dims(dim)
    config = _config(dims, **kwargs)
    try:
        rows = verify_suite(
            theorem,
            dims,
            lambda d: _cached_diagram(config, d),
            samples=samples,
            pairs=pairs,
            seed=config.seed if config.seed is not None else 0,
            rank_tol=config.rank_tol,
        )
    except EngineDisagreementError as exc:
        click.echo(f"engine disagreement: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    failed = False
    for row in rows:
        mark = "PASS" if row.passed else ("INFO" if row.passed is None else "FAIL")
        if row.passed is False:
            failed = True
        click.echo(f"{row.label:<3} d={row.d:<3} {mark}  {row.detail}")
    if failed:
        sys.exit(EXIT_MISMATCH)


@main.command("witness")
@click.option("--d", "dim", type=int, required=True)
@click.argument("n_a", type=int)
@click.argument("n_b", type=int)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@_common_options
def cmd_witness(dim, n_a, n_b, out, **kwargs) -> None:
    """Emit a state realizing a Present diagram point."""
    config = _config((dim,), **kwargs)
    u = dft_matrix(dim)
    try:
        point = point_exists(
            u,
            n_a,
            n_b,
            engine=config.engine,
            rank_tol=config.rank_tol,
            sym_reduce=config.sym_reduce,
            max_checks=config.max_checks,
        )
    except EngineDisagreementError as exc:
        click.echo(f"engine disagreement: {exc}", err=True)
        sys.exit(EXIT_MISMATCH)
    if point.status is PointStatus.UNKNOWN:
        click.echo(f"point ({n_a}, {n_b}) unresolved: {point.note}", err=True)
        sys.exit(EXIT_ABORTED)
    if point.status is PointStatus.HOLE:
        click.echo(f"point ({n_a}, {n_b}) is a hole for d={dim}", err=True)
        sys.exit(EXIT_MISMATCH)
    psi = witness_state(u, point, seed=config.seed, eps_support=config.eps_support)
    if out is not None:
        save_state(out, psi)
    profile = support_profile(psi, u, eps=config.eps_support)
    result = classify_state(psi, u, eps=config.eps_classical)
    click.echo(
        json.dumps(
            {
                "d": dim,
                "n_a": profile.n_a,
                "n_b": profile.n_b,
                "verdict": result.verdict.value,
                "rows": list(point.certificate.rows),
                "cols": list(point.certificate.cols),
            },
            indent=2,
        )
    )


if __name__ == "__main__":
    main()
