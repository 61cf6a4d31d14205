"""
Command-line front end.

    asmbase step MACHINE STATE          update-set family of the main rule
    asmbase run MACHINE STATE           bounded runs, exhaustive or sampled
    asmbase eval FORMULAS STATE         truth of each formula of a file
    asmbase translate FORMULAS          formulas of the membership fragment
    asmbase check-axioms                random soundness checks of the schemas
    asmbase prove-check DERIVATION      line-by-line derivation checking

Every reporting command takes `--json`. Exit codes: 0 success, 1 a false
formula, a rejected derivation or a failed check, 2 malformed input, 3 an
exceeded resource limit. Logging goes to stderr, so stdout depends only on
the inputs and seeds.
"""

# Standard library
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

# Third-party dependencies
import click

# Internal dependencies
from asmbase.config import DEFAULT_LIMITS, Limits
from asmbase.constants.limits import DEFAULT_MAX_STEPS, DEFAULT_TRIALS
from asmbase.core.state import State
from asmbase.core.updates import format_update_set, is_consistent, sorted_family, sorted_updates
from asmbase.errors import AsmError, LineError, ResourceLimit
from asmbase.logic.evaluator import holds
from asmbase.logic.schemas import MUTATION_IDS
from asmbase.logic.validation import LEMMA_GENERATORS, validate_all, validate_lemma, validate_schema
from asmbase.parser.asm_parser import parse_formula_file, parse_machine
from asmbase.parser.state_file import parse_binding, read_state
from asmbase.proof.checker import check_file
from asmbase.semantics.families import delta, successors
from asmbase.semantics.runs import MODES, run
from asmbase.semantics.valuation import Valuation
from asmbase.syntax.printer import format_formula
from asmbase.translation.pipeline import translate as translate_formula

EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


# Plumbing


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    root = logging.getLogger("asmbase")
    for handler in list(root.handlers):
        if getattr(handler, "_asmbase_cli", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._asmbase_cli = True
    root.addHandler(handler)
    root.setLevel(level)


@contextmanager
def _exit_codes():
    """Map library errors to the documented exit codes."""
    try:
        yield
    except LineError as error:
        click.echo(f"rejected: {error}")
        raise SystemExit(EXIT_FALSE) from None
    except ResourceLimit as error:
        click.echo(f"Error: {error}", err=True)
        raise SystemExit(EXIT_LIMIT) from None
    except (AsmError, ValueError, OSError) as error:
        click.echo(f"Error: {error}", err=True)
        raise SystemExit(EXIT_INPUT) from None


def _limit_options(command):
    options = (
        click.option("--max-family", type=click.IntRange(min=0), help="Largest update-set family."),
        click.option("--max-set", type=click.IntRange(min=0), help="Largest single update set."),
        click.option("--max-pred-enum", type=click.IntRange(min=0), help="Largest predicate-sort domain walked."),
        click.option("--max-nodes", type=click.IntRange(min=0), help="Largest translated formula."),
    )
    for option in reversed(options):
        command = option(command)
    return command


def _limits(max_family, max_set, max_pred_enum, max_nodes) -> Limits:
    return DEFAULT_LIMITS.replace(
        max_family=max_family,
        max_set=max_set,
        max_pred_enum=max_pred_enum,
        max_nodes=max_nodes,
    )


def _emit(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


def _update_list(u, s: State) -> list:
    return [[x.function, list(x.argument), *x[2:]] for x in sorted_updates(u, s.atom_key)]


def _state_dict(s: State) -> dict:
    rows = {}
    for name, table in s.dynamic_rows().items():
        ordered = sorted(table.items(), key=lambda item: tuple(s.atom_key(a) for a in item[0]))
        rows[name] = [[list(argument), value] for argument, value in ordered]
    return rows


def _load_rules(machine_path: Path | None, signature) -> dict:
    if machine_path is None:
        return {}
    return parse_machine(machine_path.read_text(), signature).rules


# Commands


@click.group()
@click.option("-v", "--verbose", count=True, help="Log to stderr: -v for progress, -vv for detail.")
def cli(verbose: int) -> None:
    """Workbench for non-deterministic parallel abstract state machines."""
    _configure_logging(verbose)


@cli.command()
@click.argument("machine_file", type=_FILE)
@click.argument("state_file", type=_FILE)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def step(machine_file: Path, state_file: Path, as_json: bool, **caps) -> None:
    """List the update sets the main rule yields in a state."""
    with _exit_codes():
        limits = _limits(**caps)
        s = read_state(state_file)
        machine = parse_machine(machine_file.read_text(), s.signature)
        family = sorted_family(delta(machine.main, s, limits=limits), s.atom_key)
        count = len(successors(machine.main, s, limits))
    if as_json:
        _emit(
            {
                "family": [{"updates": _update_list(u, s), "consistent": is_consistent(u)} for u in family],
                "successors": count,
            }
        )
        return
    click.echo(f"update sets: {len(family)}")
    for index, u in enumerate(family, start=1):
        verdict = "consistent" if is_consistent(u) else "inconsistent"
        click.echo(f"  {index}. {format_update_set(u, s.atom_key)}  {verdict}")
    click.echo(f"successors: {count}")


@cli.command(name="run")
@click.argument("machine_file", type=_FILE)
@click.argument("state_file", type=_FILE)
@click.option("--max-steps", type=click.IntRange(min=0), default=DEFAULT_MAX_STEPS, show_default=True)
@click.option("--mode", type=click.Choice(MODES), default="all", show_default=True)
@click.option("--seed", type=int, default=None, help="Seed of the sampled run.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def run_command(machine_file: Path, state_file: Path, max_steps: int, mode: str, seed, as_json: bool, **caps) -> None:
    """Explore the runs of a machine from a start state."""
    with _exit_codes():
        limits = _limits(**caps)
        s0 = read_state(state_file)
        machine = parse_machine(machine_file.read_text(), s0.signature)
        report = run(machine, s0, max_steps, mode, seed, limits)
    if as_json:
        _emit(
            {
                "mode": report.mode,
                "steps": report.steps,
                "runs": report.trace_count,
                "terminal": [_state_dict(t) for t in report.terminal],
                "stuck": [_state_dict(t) for t in report.stuck],
                "non_terminating": report.non_terminating,
                "seed": report.seed,
                "traces": [[_state_dict(t) for t in trace] for trace in report.traces] if mode == "sample" else len(report.traces),
            }
        )
        return
    click.echo(f"mode: {report.mode}")
    if report.seed is not None:
        click.echo(f"seed: {report.seed}")
    click.echo(f"steps: {report.steps}")
    click.echo(f"runs: {report.trace_count}")
    click.echo(f"terminal states: {len(report.terminal)}")
    for index, t in enumerate(report.terminal, start=1):
        click.echo(f"  {index}. {t}")
    click.echo(f"stuck states: {len(report.stuck)}")
    for index, t in enumerate(report.stuck, start=1):
        click.echo(f"  {index}. {t}")
    click.echo(f"non-terminating: {'yes' if report.non_terminating else 'no'}")
    if mode == "sample" and report.traces:
        click.echo("trace:")
        for index, t in enumerate(report.traces[0]):
            click.echo(f"  {index}. {t}")


@cli.command(name="eval")
@click.argument("formula_file", type=_FILE)
@click.argument("state_file", type=_FILE)
@click.option("--machine", "machine_file", type=_FILE, help="Machine file whose rule definitions the formulas use.")
@click.option("--bind", "bindings", multiple=True, metavar="NAME=VALUE", help="Value of a free variable; repeatable.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def eval_command(formula_file: Path, state_file: Path, machine_file, bindings, as_json: bool, **caps) -> None:
    """Evaluate every formula of a file in a state.

    Free variables without a --bind value are read universally.
    """
    with _exit_codes():
        limits = _limits(**caps)
        s = read_state(state_file)
        rules = _load_rules(machine_file, s.signature)
        formulas = parse_formula_file(formula_file.read_text(), s.signature, rules)
        zeta = Valuation(dict(parse_binding(b, s) for b in bindings))
        verdicts = [holds(phi, s, zeta, limits) for phi in formulas]
    if as_json:
        _emit([{"formula": format_formula(phi), "value": v} for phi, v in zip(formulas, verdicts)])
    else:
        for index, value in enumerate(verdicts, start=1):
            click.echo(f"{index}: {'true' if value else 'false'}")
    if not all(verdicts):
        raise SystemExit(EXIT_FALSE)


@cli.command(name="translate")
@click.argument("formula_file", type=_FILE)
@click.option("--signature", "state_file", type=_FILE, required=True, help="State file whose signature types the formulas.")
@click.option("--machine", "machine_file", type=_FILE, help="Machine file whose rule definitions the formulas use.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def translate_command(formula_file: Path, state_file: Path, machine_file, as_json: bool, **caps) -> None:
    """Translate formulas into the membership fragment (no upd, no modality)."""
    with _exit_codes():
        limits = _limits(**caps)
        signature = read_state(state_file).signature
        rules = _load_rules(machine_file, signature)
        formulas = parse_formula_file(formula_file.read_text(), signature, rules)
        results = [translate_formula(phi, signature, limits) for phi in formulas]
    if as_json:
        _emit([{"formula": format_formula(out), "summary": summary.as_dict()} for out, summary in results])
        return
    for out, summary in results:
        click.echo(f"// {summary.input_nodes} -> {summary.output_nodes} nodes, {summary.iterations} rounds")
        click.echo(f"{format_formula(out)};")


@cli.command(name="check-axioms")
@click.option("--schema", "schemas", multiple=True, help="Schema id (repeatable); default every axiom.")
@click.option("--lemma", "lemmas", multiple=True, type=click.Choice(sorted(LEMMA_GENERATORS)), help="Derived lemma (repeatable).")
@click.option("--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mutations", is_flag=True, help="Also run the unsound mutation controls.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def check_axioms(schemas, lemmas, trials: int, seed: int, mutations: bool, as_json: bool, **caps) -> None:
    """Evaluate random instances of axiom schemas and derived lemmas.

    Mutation controls pass when they find a counterexample; every other
    schema passes when it finds none.
    """
    with _exit_codes():
        limits = _limits(**caps)
        if not schemas and not lemmas:
            reports = validate_all(trials, seed, limits, include_mutations=mutations)
        else:
            ids = list(schemas) + ([m for m in MUTATION_IDS if m not in schemas] if mutations else [])
            reports = [validate_schema(i, trials=trials, seed=seed, limits=limits) for i in ids]
            reports += [validate_lemma(i, trials=trials, seed=seed, limits=limits) for i in lemmas]
    failed = [r.schema for r in reports if r.ok == (r.schema in MUTATION_IDS)]
    if as_json:
        _emit({"reports": [r.as_dict() for r in reports], "failed": failed})
    else:
        click.echo("schema, trials, counterexamples, seed")
        for report in reports:
            click.echo(report.line())
        if failed:
            click.echo(f"failed: {', '.join(failed)}")
    if failed:
        raise SystemExit(EXIT_FALSE)


@cli.command(name="prove-check")
@click.argument("derivation_file", type=_FILE)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_limit_options
def prove_check(derivation_file: Path, as_json: bool, **caps) -> None:
    """Check a derivation; the first rejected line is reported with its reason."""
    with _exit_codes():
        report = check_file(derivation_file, limits=_limits(**caps))
    if as_json:
        _emit(report.as_dict())
        return
    for line in report.lines:
        click.echo(f"{line.number}. {line.justification}: {line.status}")
    click.echo(f"status: {report.status}")


if __name__ == "__main__":
    cli()
