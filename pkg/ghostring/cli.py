"""
GhostRing command line: verification suites and searches.

Exit status is 0 when every asserted property holds, 1 on any failure, 2
for usage errors and 3 when a budget ran out before a verdict.
"""

import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import click

from .claim.parity import verify_claim
from .closure.certificates import check_certificate, read_certificates
from .closure.subring import build_D
from .core.config import Config, RunConfig
from .core.errors import BudgetExceeded, VerificationFailure
from .core.logger import level_from_name, setup_logging
from .core.parallel import resolve_workers
from .core.ring import verify_ring_identities
from .core.seeds import derive_rng
from .core.vectors import Window, verify_vector_identities
from .ghost.phi import non_evaluation_report
from .homs.classify import classify, verify_classification
from .homs.enumerate import enumerate_homs, enumerate_homs_additive, projection_hom, verify_hom
from .quadratic.search import (
    ABSENT, EXHAUSTED, FOUND, check_counterexample_certificate, check_q_implies_q3, counterexample_certificate,
    sindi_search,
)
from .report import Report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# random element pairs checked per hom on top of the exact basis check
HOM_SAMPLE_PAIRS = 50

# random quadratics whose solution sets must have Q3
Q3_SAMPLES = 100
Q3_SAMPLE_MAX_DIM = 5


def run_verify_ring(config: RunConfig) -> Report:
    report = Report("verify-ring")
    with report.timed("ring"):
        try:
            for name, value in verify_ring_identities().items():
                report.record(name, value)
        except VerificationFailure as e:
            report.fail(e.check, e.counterexample)
    with report.timed("generators"):
        try:
            for name, value in verify_vector_identities(int(config.options.get("span", 10))).items():
                report.record(name, value)
        except VerificationFailure as e:
            report.fail(e.check, e.counterexample)
    return report


def run_verify_claim(config: RunConfig) -> Report:
    opts = config.options
    report = verify_claim(
        config.window or Window(-6, 6),
        sum_length=opts["sum_length"],
        samples=opts["samples"],
        seed=config.seed,
        workers=config.workers,
        chunk_size=opts["chunk_size"],
        witness_window=opts["witness_window"],
        witness_indices=opts["witness_indices"],
        cap=opts["cap"],
        certificates=config.certificates,
    )
    return report


def run_enum_homs(config: RunConfig) -> Report:
    window = config.window or Window(-1, 1)
    report = Report("enum-homs")
    with report.timed("closure"):
        ring = build_D(window, cap=config.options.get("cap", 2_000_000))
    with report.timed("backtracking"):
        homs = enumerate_homs(ring, budget=config.budget, workers=config.workers)
    with report.timed("additive_basis"):
        additive = enumerate_homs_additive(ring, budget=config.budget)

    backtracked = {f.generator_images for f in homs}
    via_basis = {f.generator_images for f in additive}
    report.check("methods_agree", backtracked == via_basis, {
        "backtracking_only": sorted(backtracked - via_basis)[:3],
        "additive_only": sorted(via_basis - backtracked)[:3],
    })
    report.check("zero_map_listed", (0,) * len(ring.generators) in backtracked)

    projections = [projection_hom(ring, k) for k in range(3 * window.size)]
    missing = [k for k, p in enumerate(projections) if p.generator_images not in backtracked]
    report.check("projections_listed", not missing, missing)

    rng = derive_rng(config.seed, "homs/well-defined")
    with report.timed("well_defined"):
        bad = None
        for f in homs:
            bad = verify_hom(f, rng, HOM_SAMPLE_PAIRS)
            if bad is not None:
                break
        report.check("homs_well_defined", bad is None, bad)
    report.seeds["homs/well-defined"] = config.seed

    with report.timed("classification"):
        report.merge(verify_classification(ring, homs))

    report.data["window"] = str(window)
    report.data["ring_size"] = ring.size
    report.data["generators"] = [name for name, _ in ring.generators]
    report.data["hom_count"] = len(homs)
    report.data["homs"] = [
        {"images": list(f.generator_images), "classification": classify(f).to_json()} for f in homs
    ]
    return report


def run_ghost_demo(config: RunConfig) -> Report:
    window = config.window or Window(-2, 2)
    opts = config.options
    phi_report = non_evaluation_report(
        window,
        cap=opts.get("cap", 2_000_000),
        budget=config.budget,
        subset_size=opts.get("subset_size", 4),
        subset_samples=opts.get("subset_samples", 2_000),
        seed=config.seed,
        workers=config.workers,
    )
    report = phi_report.to_report()
    report.seeds["ghost/subsets"] = config.seed
    return report


def run_sindi(config: RunConfig) -> Report:
    opts = config.options
    n = opts["dim"]
    report = Report("sindi")
    with report.timed("search"):
        outcome = sindi_search(
            n,
            mode=opts["mode"],
            budget=config.budget,
            seed=config.seed,
            restarts=opts.get("restarts", 16),
            workers=config.workers,
            resume=config.resume,
        )
    report.seeds["sindi/restart"] = config.seed
    report.data["search"] = outcome.to_json()
    if n <= Q3_SAMPLE_MAX_DIM:
        with report.timed("q_implies_q3"):
            bad = check_q_implies_q3(n, Q3_SAMPLES, config.seed)
        report.check("q_implies_q3", bad is None, str(bad) if bad is not None else None)
        report.seeds["sindi/q-implies-q3"] = config.seed
    if outcome.status == FOUND and outcome.counterexample is not None:
        cert = counterexample_certificate(outcome.counterexample)
        report.check("certificate_rechecked", check_counterexample_certificate(cert))
        report.data["certificate"] = cert
        report.data["verdict"] = f"counterexample at dim {n}"
    elif outcome.status == ABSENT:
        report.data["verdict"] = f"no counterexample at dim {n}"
    elif outcome.status == EXHAUSTED:
        report.budget_exhausted = True
        report.data["verdict"] = f"budget exhausted at dim {n}"
    return report


def run_check_certificates(config: RunConfig) -> Report:
    report = Report("check-certificates")
    path = config.certificates
    if path is None:
        raise click.UsageError("--certificates is required")
    certs = read_certificates(path)
    failed = [c.get("label") for c in certs if not check_certificate(c)]
    report.check("certificates", not failed, failed)
    report.data["count"] = len(certs)
    return report


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    "verify-ring": run_verify_ring,
    "verify-claim": run_verify_claim,
    "enum-homs": run_enum_homs,
    "ghost-demo": run_ghost_demo,
    "sindi": run_sindi,
    "check-certificates": run_check_certificates,
}


def run(config: RunConfig) -> Tuple[int, Report]:
    """Dispatch one command and map its outcome to an exit status."""
    handler = COMMANDS.get(config.command)
    if handler is None:
        raise click.UsageError(f"Unknown command '{config.command}'")
    try:
        report = handler(config)
    except BudgetExceeded as e:
        report = Report(config.command, budget_exhausted=True)
        report.data["budget"] = {"message": str(e), "size": e.size, "frontier": e.frontier}
        return EXIT_BUDGET, report
    except VerificationFailure as e:
        report = Report(config.command)
        report.fail(e.check, e.counterexample)
        return EXIT_FAILURE, report
    if not report.passed:
        return EXIT_FAILURE, report
    if report.budget_exhausted:
        return EXIT_BUDGET, report
    return EXIT_OK, report


def emit(report: Report, json_output: bool) -> None:
    if json_output:
        click.echo(report.to_json())
    else:
        for line in report.summary_lines():
            click.echo(line)


def _window(text: Optional[str], fallback: str) -> Window:
    try:
        return Window.parse(text or fallback)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _execute(ctx: click.Context, command: str, seed: Optional[int] = None, json_flag: bool = False,
             window: Optional[Window] = None, budget: int = 0,
             resume: Optional[Path] = None, certificates: Optional[Path] = None, **options) -> None:
    cfg: Config = ctx.obj["config"]
    certs = certificates or (Path(cfg.execution.certificates) if cfg.execution.certificates else None)
    run_config = RunConfig(
        command=command,
        window=window,
        budget=budget,
        seed=ctx.obj["seed"] if seed is None else seed,
        workers=ctx.obj["workers"],
        json_output=ctx.obj["json"] or json_flag,
        resume=resume,
        certificates=certs,
        options=options,
    )
    logger.info(f"Running {command} (seed {run_config.seed}, {run_config.workers} workers)")
    status, report = run(run_config)
    emit(report, run_config.json_output)
    ctx.exit(status)


def run_options(f):
    """--seed and --json on a subcommand, overriding the group options."""
    f = click.option('--json', 'json_flag', is_flag=True, help='Emit the report as JSON')(f)
    f = click.option('--seed', type=int, default=None, help='Seed for every random stream')(f)
    return f


@click.group()
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False, path_type=Path),
              default=None, help='Configuration file path (TOML)')
@click.option('--seed', type=int, default=None, help='Seed for every random stream')
@click.option('--workers', type=click.IntRange(min=0), default=None, help='Worker processes (0 = one per core)')
@click.option('--json', 'json_output', is_flag=True, help='Emit the report as JSON')
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.version_option(package_name="ghostring")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[Path], seed: Optional[int], workers: Optional[int],
         json_output: bool, verbose: bool):
    """GhostRing - verification toolkit for the ghost-element argument over Z8"""
    try:
        cfg = Config.load(config_path)
    except ValueError as e:
        raise click.UsageError(str(e))
    setup_logging(cfg.logging, level_from_name(cfg.logging.level, verbose))
    if config_path:
        logging.info(f"Configuration loaded from {config_path}")
    ctx.ensure_object(dict)
    ctx.obj["config"] = cfg
    ctx.obj["seed"] = cfg.execution.seed if seed is None else seed
    ctx.obj["workers"] = resolve_workers(cfg.execution.workers if workers is None else workers)
    ctx.obj["json"] = json_output


@main.command('verify-ring')
@click.option('--span', type=click.IntRange(min=1), default=10, help='Index range for generator identities')
@run_options
@click.pass_context
def verify_ring_command(ctx: click.Context, span: int, seed: Optional[int], json_flag: bool):
    """Exhaustive identities of R and of the generators."""
    _execute(ctx, "verify-ring", seed, json_flag, span=span)


@main.command('verify-claim')
@click.option('--range', 'index_range', default=None, help='e-bar index range A:B')
@click.option('--sum-len', type=click.IntRange(min=1), default=None, help='Maximum members per random sum')
@click.option('--samples', type=click.IntRange(min=0), default=None, help='Number of random sums')
@click.option('--witness-window', default=None, help='Window A:B for constructive membership')
@click.option('--certificates', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Write membership certificates here')
@run_options
@click.pass_context
def verify_claim_command(ctx: click.Context, index_range: Optional[str], sum_len: Optional[int],
                         samples: Optional[int], witness_window: Optional[str], certificates: Optional[Path],
                         seed: Optional[int], json_flag: bool):
    """Parity check of the generating family, its sums and punctured ghosts."""
    cfg: Config = ctx.obj["config"]
    _execute(
        ctx, "verify-claim", seed, json_flag,
        window=_window(index_range, cfg.claim.range),
        certificates=certificates,
        sum_length=sum_len or cfg.claim.sum_length,
        samples=cfg.claim.samples if samples is None else samples,
        chunk_size=cfg.claim.chunk_size,
        witness_window=_window(witness_window, cfg.claim.witness_window),
        witness_indices=tuple(cfg.claim.witness_indices),
        cap=cfg.closure.cap,
    )


@main.command('enum-homs')
@click.option('--window', default=None, help='Window A:B')
@click.option('--budget', type=click.IntRange(min=1), default=None, help='Search node budget')
@run_options
@click.pass_context
def enum_homs_command(ctx: click.Context, window: Optional[str], budget: Optional[int],
                      seed: Optional[int], json_flag: bool):
    """Enumerate and classify homomorphisms into Z8 by two methods."""
    cfg: Config = ctx.obj["config"]
    _execute(ctx, "enum-homs", seed, json_flag, window=_window(window, cfg.homs.window),
             budget=budget or cfg.homs.budget, cap=cfg.closure.cap)


@main.command('ghost-demo')
@click.option('--window', default=None, help='Window A:B')
@click.option('--budget', type=click.IntRange(min=1), default=None, help='Search node budget')
@run_options
@click.pass_context
def ghost_demo_command(ctx: click.Context, window: Optional[str], budget: Optional[int],
                       seed: Optional[int], json_flag: bool):
    """The ghost map: witnesses, continuity and the non-evaluation verdict."""
    cfg: Config = ctx.obj["config"]
    _execute(ctx, "ghost-demo", seed, json_flag, window=_window(window, cfg.ghost.window),
             budget=budget or cfg.homs.budget, cap=cfg.closure.cap,
             subset_size=cfg.ghost.subset_size, subset_samples=cfg.ghost.subset_samples)


@main.command('sindi')
@click.option('--dim', type=click.IntRange(min=3), default=None, help='Dimension n of F2^n')
@click.option('--mode', type=click.Choice(['exhaustive', 'random']), default=None, help='Search mode')
@click.option('--budget', type=click.IntRange(min=1), default=None, help='Hill-climbing steps (random mode)')
@click.option('--restarts', type=click.IntRange(min=1), default=None, help='Random restarts')
@click.option('--resume', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='State file to resume from and checkpoint to')
@run_options
@click.pass_context
def sindi_command(ctx: click.Context, dim: Optional[int], mode: Optional[str], budget: Optional[int],
                  restarts: Optional[int], resume: Optional[Path], seed: Optional[int], json_flag: bool):
    """Search for a set with Q3 but without Q."""
    cfg: Config = ctx.obj["config"]
    mode = mode or cfg.sindi.mode
    dim = dim or cfg.sindi.dim
    if mode == "exhaustive" and dim > 4:
        raise click.BadParameter("exhaustive mode supports --dim up to 4", param_hint="--dim")
    _execute(ctx, "sindi", seed, json_flag, budget=budget or cfg.sindi.budget, resume=resume,
             dim=dim, mode=mode, restarts=restarts or cfg.sindi.restarts)


@main.command('check-certificates')
@click.argument('path', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@run_options
@click.pass_context
def check_certificates_command(ctx: click.Context, path: Path, seed: Optional[int], json_flag: bool):
    """Re-check exported membership certificates without the closure engine."""
    _execute(ctx, "check-certificates", seed, json_flag, certificates=path)


if __name__ == "__main__":
    sys.exit(main())
