# Modules
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Optional
import typer
from pydantic import BaseModel, Field, ValidationError
from chains import chain_report
from check_status import CheckStatus
from checks import Property, overall_status, run_checks
from config import configure_logging, settings
from errors import InvariantViolation, LatticeToolError
from expr_parser import run_scenario_file
from interval import IntervalLattice, Strategy, build_interval, lattice_to_dot
from jh import jh_report
from perm import GroupTable, close, format_group_file, is_transitive, load_group_file, orbits, regular_representation

logger = logging.getLogger(__name__)

app = typer.Typer(help='Interval lattices of permutation groups and decompositions of rational functions.')


class OutputFormat(str, Enum):
    TEXT = 'text'
    JSON = 'json'
    DOT = 'dot'


class Command(str, Enum):
    INFO = 'info'
    LATTICE = 'lattice'
    CHAINS = 'chains'
    CHECK = 'check'
    RATFUNC = 'ratfunc'
    REGULARIZE = 'regularize'


# Run configuration
class RunConfig(BaseModel):
    command: Command
    paths: list[Path]
    point: int = Field(default=settings.default_point, ge=1)
    strategy: Strategy = Strategy.AUTO
    cap: int = Field(default=settings.order_cap, ge=1)
    output: OutputFormat = OutputFormat.TEXT
    exhaustive: bool = False


def _config(command: Command, path: Path, point, strategy, cap, output, exhaustive=False) -> RunConfig:
    try:
        return RunConfig(
            command=command,
            paths=[path],
            point=settings.default_point if point is None else point,
            strategy=strategy,
            cap=settings.order_cap if cap is None else cap,
            output=output,
            exhaustive=exhaustive,
        )
    except ValidationError as exc:
        _fail('; '.join(f"--{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()))


def _fail(message: str, code: int = 2) -> None:
    typer.echo(f'error: {message}', err=True)
    raise typer.Exit(code)


def _run(action):
    """Map domain errors to exit codes: 2 for bad input, 1 for violated invariants."""
    try:
        return action()
    except FileNotFoundError as exc:
        _fail(f'no such file: {exc.filename}')
    except LatticeToolError as exc:
        _fail(str(exc))
    except InvariantViolation as exc:
        _fail(f'invariant violated: {exc} {exc.evidence}', code=1)


def _emit_json(payload: dict) -> None:
    typer.echo(json.dumps({'schema': settings.schema_version, **payload}, indent=2, default=str))


def _load(config: RunConfig) -> GroupTable:
    return close(load_group_file(config.paths[0]), cap=config.cap)


def _interval(config: RunConfig, G: GroupTable) -> IntervalLattice:
    return build_interval(G, config.point, config.strategy, config.cap)


# Options
PointOption = typer.Option(None, '--point', '-w', help='Point omega whose stabilizer is the bottom (default 1).')
StrategyOption = typer.Option(Strategy.AUTO, '--strategy', help='Interval construction strategy.')
CapOption = typer.Option(None, '--cap', help='Order cap for exhaustive closures.')
FormatOption = typer.Option(OutputFormat.TEXT, '--format', help='Output format.')


@app.callback()
def main(log_level: Optional[str] = typer.Option(None, '--log-level', help='Logging level.')):
    configure_logging(log_level or 'WARNING')


@app.command()
def info(path: Path, cap: Optional[int] = CapOption, output: OutputFormat = FormatOption):
    """Degree, order, transitivity and the two-orbit element of a group file."""
    config = _config(Command.INFO, path, None, Strategy.AUTO, cap, output)

    def action():
        G = _load(config)
        generators = [
            {'generator': str(g), 'orbit_lengths': sorted(len(o) for o in orbits([g], G.degree))[::-1]}
            for g in G.generators
        ]
        candidates = [g for g in G.generators if len(g.all_cycles()) == 2]
        candidates = candidates or [h for h in G.elements if len(h.all_cycles()) == 2]
        two_orbit = None
        if candidates:
            h = candidates[0]
            two_orbit = {'element': str(h), 'orbit_lengths': sorted((len(c) for c in h.all_cycles()), reverse=True)}
        return {
            'name': G.spec.name,
            'degree': G.degree,
            'order': G.order,
            'transitive': is_transitive(G),
            'generators': generators,
            'two_orbit_element': two_orbit,
            'different_lengths': bool(two_orbit and len(set(two_orbit['orbit_lengths'])) == 2),
            'single_orbit_element': any(len(h.all_cycles()) == 1 for h in G.elements),
        }

    report = _run(action)
    if output == OutputFormat.JSON:
        _emit_json(report)
        return
    typer.echo(f"{report['name']}: degree {report['degree']}, order {report['order']}")
    typer.echo(f"transitive: {'yes' if report['transitive'] else 'no'}")
    for item in report['generators']:
        typer.echo(f"  {item['generator']}  orbits {item['orbit_lengths']}")
    two_orbit = report['two_orbit_element']
    if two_orbit:
        flag = ' (different lengths)' if report['different_lengths'] else ''
        typer.echo(f"two-orbit element {two_orbit['element']} with orbit lengths {tuple(two_orbit['orbit_lengths'])}{flag}")
    else:
        typer.echo('no element with exactly two orbits')


@app.command()
def lattice(
    path: Path,
    point: Optional[int] = PointOption,
    strategy: Strategy = StrategyOption,
    cap: Optional[int] = CapOption,
    output: OutputFormat = FormatOption,
):
    """The interval lattice L(G_omega, G)."""
    config = _config(Command.LATTICE, path, point, strategy, cap, output)
    L = _run(lambda: _interval(config, _load(config)))
    if output == OutputFormat.DOT:
        typer.echo(lattice_to_dot(L, name=path.stem))
        return
    if output == OutputFormat.JSON:
        _emit_json({
            'point': L.point,
            'strategy': L.strategy.value,
            'nodes': [{'id': i, 'tag': tag, 'order': X.order} for i, (tag, X) in enumerate(zip(L.labels, L.nodes))],
            'covers': [list(c) for c in L.covers],
        })
        return
    typer.echo(f'{L.size} nodes, {len(L.covers)} covers ({L.strategy.value})')
    for i, (tag, X) in enumerate(zip(L.labels, L.nodes)):
        above = ', '.join(str(j) for j in L.upper_covers(i))
        typer.echo(f'  {i}: {tag} |{X.order}|  covered by [{above}]')


@app.command()
def chains(
    path: Path,
    point: Optional[int] = PointOption,
    strategy: Strategy = StrategyOption,
    cap: Optional[int] = CapOption,
    output: OutputFormat = FormatOption,
):
    """Maximal chains, r-equivalence classes and JH profiles from bottom to top."""
    config = _config(Command.CHAINS, path, point, strategy, cap, output)

    def action():
        L = _interval(config, _load(config))
        return chain_report(L), jh_report(L)

    report, profiles = _run(action)
    if output == OutputFormat.JSON:
        _emit_json({
            'chains': report.model_dump(mode='json'),
            'jh_profiles': [p.model_dump(mode='json') for p in profiles],
        })
        return
    histogram = ', '.join(f'{n} of length {k}' for k, n in report.length_histogram.items())
    typer.echo(f'{report.chain_count} maximal chains ({histogram}), {report.class_count} r-equivalence classes')
    for size, rep, profile in zip(report.class_sizes, report.representatives, profiles):
        chain = ' < '.join(rep.tags)
        factors = ', '.join(f'{tag} on {degree}' for degree, _, tag in profile.factors)
        typer.echo(f'  [{size}] {chain}   factors: {factors}')


@app.command()
def check(
    path: Path,
    properties: Optional[list[Property]] = typer.Argument(None, help='Properties to check (all when omitted).'),
    point: Optional[int] = PointOption,
    strategy: Strategy = StrategyOption,
    cap: Optional[int] = CapOption,
    output: OutputFormat = FormatOption,
    exhaustive: bool = typer.Option(False, '--exhaustive', help='Check every comparable pair, not only bottom to top.'),
):
    """Verdicts for lattice properties; exit code 1 on any failure."""
    config = _config(Command.CHECK, path, point, strategy, cap, output, exhaustive)

    def action():
        G = _load(config)
        return run_checks(G, config.point, properties or None, config.strategy, config.cap, config.exhaustive)

    results = _run(action)
    verdict = overall_status(results)
    if output == OutputFormat.JSON:
        _emit_json({'status': verdict.value, 'results': [r.model_dump(mode='json') for r in results]})
    else:
        for r in results:
            typer.echo(f'{r.property}: {r.status.value.upper()}  {r.reason}')
    if verdict == CheckStatus.FAIL:
        raise typer.Exit(1)


@app.command()
def ratfunc(path: Path, output: OutputFormat = FormatOption):
    """Run a VERIFY scenario file; exit code 1 when a line fails."""
    result = _run(lambda: run_scenario_file(path))
    if output == OutputFormat.JSON:
        _emit_json({'passed': result.passed, 'lines': [line.model_dump(mode='json') for line in result.lines]})
    else:
        for line in result.lines:
            verdict = 'PASS' if line.passed else 'FAIL'
            suffix = f'  ({line.message})' if line.message else ''
            typer.echo(f'line {line.line}: {verdict}{suffix}')
        typer.echo(f'{len(result.lines) - len(result.failures)}/{len(result.lines)} passed')
    if not result.passed:
        raise typer.Exit(1)


@app.command()
def regularize(
    path: Path,
    output_path: Optional[Path] = typer.Option(None, '--output', '-o', help='Write the group file here.'),
    cap: Optional[int] = CapOption,
):
    """The right-regular presentation of a group, as a group file."""
    config = _config(Command.REGULARIZE, path, None, Strategy.AUTO, cap, OutputFormat.TEXT)

    def action():
        G = _load(config)
        return regular_representation(G, name=f'{path.stem}_regular')

    spec = _run(action)
    text = format_group_file(spec, comment=f'right-regular action of {path.stem}')
    if output_path:
        output_path.write_text(text)
        logger.info('wrote %s', output_path)
    else:
        typer.echo(text, nl=False)


if __name__ == '__main__':
    app()
