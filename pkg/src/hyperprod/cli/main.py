"""Command line interface.

Exit codes: 0 verified (or sound), 1 refuted (or not sound), 2 unknown, 3 usage or
configuration error.
"""

import sys
from typing import Dict, Iterable, Optional

import click
from pydantic import ValidationError

from hyperprod.config.settings import Settings, get_settings
from hyperprod.core.exceptions import EXIT_REFUTED, EXIT_USAGE, EXIT_VERIFIED, ConfigError, HyperprodError
from hyperprod.core.logging import logger, setup_logging
from hyperprod.frontend.parser import parse_file
from hyperprod.models.verification import PRODUCT_MODES, RunConfig
from hyperprod.reductions.evaluate import Mode, ReductionEvaluator
from hyperprod.services.independence import check_independence
from hyperprod.services.verification import VerificationPipeline, compile_grammars, parse_reduction
from hyperprod.vpl.dump import dump_vpa, dump_vpg
from hyperprod.vpl.vpa import Vpa
from hyperprod.vpl.vpg import vpa_to_vpg, vpg_enumerate
from hyperprod.vpl.words import word_str


class HyperprodGroup(click.Group):
    """Click group that reports usage errors with exit code 3 instead of click's 2."""

    def main(self, *args, **kwargs):
        kwargs.pop("standalone_mode", None)
        try:
            code = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        sys.exit(code if isinstance(code, int) else 0)


def parse_entries(values: Iterable[str]) -> Dict[int, str]:
    """``component=procedure`` pairs."""
    entries: Dict[int, str] = {}
    for value in values:
        component, sep, procedure = value.partition("=")
        if not sep or not component.strip().isdigit() or not procedure.strip():
            raise ConfigError(f"Malformed entry {value!r} (expected component=procedure)")
        index = int(component)
        if index in entries:
            raise ConfigError(f"Entry for component {index} given twice")
        entries[index] = procedure.strip()
    return entries


def parse_solvers(values: Iterable[str], settings: Settings) -> Dict[str, str]:
    """``name=cmdline`` pairs; a bare name refers to a configured solver."""
    solvers: Dict[str, str] = {}
    known = settings.solver_commands
    for value in values:
        if "=" in value:
            try:
                solvers.update(Settings.parse_solver_commands(value))
            except ValueError as e:
                raise ConfigError(str(e)) from e
        elif value in known:
            solvers[value] = known[value]
        else:
            raise ConfigError(f"Unknown solver {value!r}; known: {', '.join(sorted(known))}")
    return solvers


def _fail(ctx: click.Context, error: Exception, code: int = EXIT_USAGE) -> None:
    click.echo(f"error: {error}", err=True)
    ctx.exit(code)


@click.group(cls=HyperprodGroup)
@click.option("--log-level", default=None, help="Log level (default: LOG_LEVEL or INFO)")
@click.option("--log-file", default=None, type=click.Path(dir_okay=False), help="Also log to this file")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], log_file: Optional[str]):
    """Hypersafety verification of recursive programs through visibly pushdown products."""
    try:
        settings = get_settings()
    except ValidationError as e:
        _fail(ctx, f"invalid settings: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}")
        return
    setup_logging(log_level or settings.log_level, log_file or settings.log_file)
    ctx.obj = settings


@cli.command()
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--property", "property_", required=True, help="Property file, or inline text with '|' between lines")
@click.option("--reduction", default=None, help="Reduction expression, e.g. '(1,1)-lockstep(P1, P2)'")
@click.option("--mode", default=None, help="aut, vpg, direct or baseline:seq|nocopies|copies")
@click.option("--solver", "solvers", multiple=True, help="name=cmdline, or a configured solver name (repeatable)")
@click.option("--timeout", type=int, default=None, help="Per-solver timeout in seconds")
@click.option("--emit-dir", default=None, type=click.Path(file_okay=False), help="Directory for the artifacts")
@click.option("--entry", "entries", multiple=True, help="component=procedure (repeatable)")
@click.option("--no-solve", is_flag=True, help="Only write the product and the Horn clauses")
@click.pass_context
def verify(ctx, source, property_, reduction, mode, solvers, timeout, emit_dir, entries, no_solve):
    """Verify a hyperproperty of SOURCE."""
    settings: Settings = ctx.obj
    try:
        config = RunConfig(
            source=source,
            hyperproperty=property_,
            reduction=reduction,
            mode=mode or settings.default_mode,
            entries=parse_entries(entries),
            solvers=parse_solvers(solvers, settings),
            timeout=timeout if timeout is not None else settings.solver_timeout,
            emit_dir=emit_dir or settings.emit_dir,
            solve=not no_solve,
        )
    except ConfigError as e:
        _fail(ctx, e.message)
        return
    except ValidationError as e:
        _fail(ctx, f"{e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}")
        return

    report = VerificationPipeline(config, settings).run()
    if report.error is not None:
        click.echo(f"error [{report.stage}]: {report.error}", err=True)
    elif config.solve:
        click.echo(report.verdict.value)
    else:
        click.echo(f"wrote {report.artifacts.get('smtlib')}")
        ctx.exit(0)
    ctx.exit(report.exit_code)


@cli.command("check-independence")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--annotation", default=None, type=click.Path(exists=True, dir_okay=False), help="JSON {letter: dep|indep}")
@click.option("--entry", "entries", multiple=True, help="component=procedure (repeatable)")
@click.pass_context
def check_independence_command(ctx, source, annotation, entries):
    """Check whether the well-nested shuffle of the components of SOURCE is sound."""
    try:
        report = check_independence(source, annotation, parse_entries(entries))
    except HyperprodError as e:
        _fail(ctx, e, e.exit_code)
        return
    click.echo(report.model_dump_json(indent=2))
    ctx.exit(EXIT_VERIFIED if report.sound else EXIT_REFUTED)


@cli.group()
def debug():
    """Inspect components and products."""


def _product_options(command):
    for option in reversed(
        [
            click.argument("source", type=click.Path(exists=True, dir_okay=False)),
            click.option("--copies", type=int, default=1, show_default=True, help="Number of program copies"),
            click.option("--entry", "entries", multiple=True, help="component=procedure (repeatable)"),
            click.option("--reduction", default=None, help="Reduction expression over the copies"),
            click.option("--mode", type=click.Choice(PRODUCT_MODES), default="direct", show_default=True),
        ]
    ):
        command = option(command)
    return command


def _product(source: str, copies: int, entries, reduction: Optional[str], mode: str):
    program = parse_file(source)
    _, grammars = compile_grammars(program, copies, parse_entries(entries))
    if copies == 1 and reduction is None:
        return grammars[0]
    expr = parse_reduction(reduction, copies)
    return ReductionEvaluator(dict(enumerate(grammars, start=1)), Mode(mode)).evaluate(expr).product


@debug.command("enumerate")
@_product_options
@click.option("--max-len", type=int, default=None, help="Word length bound (default: HYPERPROD_ORACLE_MAX_LEN)")
@click.pass_context
def enumerate_command(ctx, source, copies, entries, reduction, mode, max_len):
    """Print the words of bounded length of a component or product."""
    settings: Settings = ctx.obj
    try:
        product = _product(source, copies, entries, reduction, mode)
        grammar = vpa_to_vpg(product) if isinstance(product, Vpa) else product
        words = vpg_enumerate(grammar, max_len if max_len is not None else settings.oracle_max_len)
    except HyperprodError as e:
        _fail(ctx, e, e.exit_code)
        return
    for word in sorted(words, key=lambda w: (len(w), [a.id for a in w])):
        click.echo(word_str(word) or "ε")
    logger.info(f"{len(words)} word(s)")


@debug.command("dump")
@_product_options
@click.pass_context
def dump_command(ctx, source, copies, entries, reduction, mode):
    """Print a component or product in the debug format."""
    try:
        product = _product(source, copies, entries, reduction, mode)
    except HyperprodError as e:
        _fail(ctx, e, e.exit_code)
        return
    click.echo(dump_vpa(product) if isinstance(product, Vpa) else dump_vpg(product), nl=False)


if __name__ == "__main__":
    cli()
