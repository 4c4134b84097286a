"""Command line front end.

Exit codes: 0 success, 1 bad input or usage, 2 unsupported input for a
compiler, 3 simulation check failed, 4 check inconclusive (a limit was hit).
"""
from __future__ import annotations

import json
import sys

import click

from . import io
from .atam_compiler import compile_atam_system
from .duple_compiler import compile_datam_system
from .dynamics import LEX, LOWEST_Y_FIRST, RANDOM, SequencePolicy, explore, run
from .errors import TamError, UnsupportedInputError
from .render import render_ascii, render_svg
from .simulation import DEFAULT_STATE_LIMIT, check_simulation
from .windows import (Window, find_repeat, pumping_bound, record_movie, splice_pump_down,
                      splice_pump_up)

EXIT_OK, EXIT_ERROR, EXIT_UNSUPPORTED, EXIT_SIM_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

POLICIES = {"lex": LEX, "lowy": LOWEST_Y_FIRST, "random": RANDOM}

existing = click.Path(exists=True, dir_okay=False)


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _system(path):
    return io.parse_system(_read(path))


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Simulate, compile and check tile assembly systems."""


@cli.command("compile")
@click.option("--from", "source", type=click.Choice(["atam", "datam"]), required=True)
@click.option("--to", "target", type=click.Choice(["gtam"]), default="gtam", show_default=True)
@click.option("--rep", "rep_out", type=click.Path(dir_okay=False), help="Write the representation here.")
@click.argument("infile", type=existing)
@click.argument("outfile", type=click.Path(dir_okay=False))
def compile_cmd(source, target, rep_out, infile, outfile):
    """Compile a temperature-1 aTAM or DaTAM system into a two-glue GTAM system."""
    T = _system(infile)
    compiler = compile_atam_system if source == "atam" else compile_datam_system
    try:
        U, variants = compiler(T)
    except UnsupportedInputError as exc:
        click.echo(f"error: {exc}", err=True)
        raise _Exit(EXIT_UNSUPPORTED)
    _write(outfile, io.serialize_system(U))
    if rep_out:
        _write(rep_out, io.serialize_representation(variants.representation(T), U))
    click.echo(f"{len(U.tiles)} tiles, geometry length {U.geometry_length}", err=True)


@cli.command("run")
@click.argument("infile", type=existing)
@click.option("--policy", type=click.Choice(sorted(POLICIES)), default="lex", show_default=True)
@click.option("--seed", "rng_seed", type=int, default=0, show_default=True)
@click.option("--max-tiles", type=click.IntRange(1), default=1000, show_default=True)
@click.option("--trace", "trace_out", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-")
def run_cmd(infile, policy, rng_seed, max_tiles, trace_out, output):
    """Grow one assembly sequence and print the final assembly."""
    T = _system(infile)
    seq = run(T, SequencePolicy(POLICIES[policy], rng_seed), max_tiles)
    _write(output, io.serialize_assembly(T, seq.final))
    if trace_out:
        _write(trace_out, io.serialize_trace(seq))


@cli.command("enumerate")
@click.argument("infile", type=existing)
@click.option("--max-tiles", type=click.IntRange(1), required=True)
@click.option("--terminal-only", is_flag=True)
@click.option("--state-limit", type=click.IntRange(1), default=2_000_000, show_default=True)
def enumerate_cmd(infile, max_tiles, terminal_only, state_limit):
    """List producible (or terminal) assemblies within a tile bound."""
    T = _system(infile)
    ex = explore(T, max_tiles, state_limit)
    found = ex.terminal if terminal_only else ex.producible
    listing = sorted([[T.tiles[t].name, x, y] for x, y, t in a.canonical()] for a in found)
    _write("-", _json({"count": len(listing), "truncated": ex.truncated,
                       "terminal_only": terminal_only, "max_tiles": max_tiles,
                       "assemblies": listing}))


@cli.command("check-sim")
@click.argument("simulator", type=existing)
@click.argument("simulated", type=existing)
@click.option("--rep", "rep_file", type=existing, required=True)
@click.option("--bound", type=click.IntRange(1), required=True)
@click.option("--no-merge", is_flag=True, help="Explore every simulator assembly separately.")
@click.option("--state-limit", type=click.IntRange(1), default=DEFAULT_STATE_LIMIT, show_default=True,
              help="Stop exploring after this many states and report inconclusive.")
@click.option("--json", "as_json", is_flag=True)
def check_sim_cmd(simulator, simulated, rep_file, bound, no_merge, state_limit, as_json):
    """Check the simulation clauses up to BOUND simulated tiles."""
    S, T = _system(simulator), _system(simulated)
    rep = io.parse_representation(_read(rep_file), S, T)
    report = check_simulation(S, T, rep, bound, merge=not no_merge, state_limit=state_limit)
    _write("-", _json(report.to_dict()) if as_json else report.to_text())
    raise _Exit(report.exit_code())


def _parse_cuts(spec):
    """``5:50`` (inclusive range), ``5:50:3`` (with step) or ``5,8,11``."""
    try:
        if ":" in spec:
            parts = [int(p) for p in spec.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            return list(range(start, stop + 1, step))
        return [int(p) for p in spec.split(",")]
    except (ValueError, IndexError):
        raise click.BadParameter(f"cannot read cut list {spec!r}") from None


def _parse_pump(spec):
    if spec is None:
        return None
    if spec == "down":
        return ("down", 0)
    if spec.startswith("up:"):
        try:
            return ("up", int(spec[3:]))
        except ValueError:
            pass
    raise click.BadParameter(f"expected 'down' or 'up:N', got {spec!r}")


@cli.command("analyze-windows")
@click.argument("infile", type=existing)
@click.option("--trace", "trace_file", type=existing, required=True)
@click.option("--cuts", required=True, help="Vertical cut columns, e.g. 5:50 or 5,8,11.")
@click.option("--pump", default=None, help="'down' or 'up:N'.")
@click.option("--bond-forming", is_flag=True, help="Compare only bond-forming submovies.")
@click.option("--splice-out", type=click.Path(dir_okay=False), help="Write the spliced trace here.")
def analyze_windows_cmd(infile, trace_file, cuts, pump, bond_forming, splice_out):
    """Record window movies across vertical cuts, find a repeat and optionally pump."""
    T = _system(infile)
    seq = io.parse_trace(_read(trace_file), T)
    pump = _parse_pump(pump)
    xs = _parse_cuts(cuts)
    _, ymin, _, ymax = seq.final.bbox()
    windows = [Window.vertical(x, ymin, ymax) for x in xs]
    doc = {"cuts": xs, "movies": {}}
    for w in windows:
        m = record_movie(seq, w)
        doc["movies"][str(w.column)] = [
            [e.step, [list(e.edge[0]), list(e.edge[1])], e.left_label[0], e.right_label[0],
             e.strength, e.direction] for e in m.events]
    pair = find_repeat(seq, windows, bond_forming=bond_forming)
    doc["repeat"] = None if pair is None else [pair[0].column, pair[1].column]
    if pump and pair is not None:
        if pump[0] == "down":
            result = splice_pump_down(seq, *pair)
        else:
            result = splice_pump_up(seq, *pair, copies=pump[1])
        doc["splice"] = {"kind": pump[0], "copies": pump[1], "valid": result.valid,
                         "problem": result.problem,
                         "tiles": None if result.assembly is None else len(result.assembly),
                         "digest": None if result.assembly is None else result.assembly.digest()}
        if splice_out and result.valid:
            _write(splice_out, io.serialize_trace(result.sequence))
    _write("-", _json(doc))


def _load_drawing(infile, system_file):
    text = _read(infile)
    try:
        kind = json.loads(text).get("format")
    except (json.JSONDecodeError, AttributeError):
        raise click.BadParameter(f"{infile} is not a JSON document") from None
    if kind == "tamsim-system":
        T = io.parse_system(text)
        return T, T.seed
    if system_file is None:
        raise click.UsageError(f"rendering a {kind} document needs --system")
    T = _system(system_file)
    if kind == "tamsim-assembly":
        return T, io.parse_assembly(text, T)
    if kind == "tamsim-trace":
        return T, io.parse_trace(text, T).final
    raise click.BadParameter(f"cannot render a {kind!r} document")


@cli.command("render")
@click.argument("infile", type=existing)
@click.option("--system", "system_file", type=existing, help="System for assembly or trace input.")
@click.option("--format", "fmt", type=click.Choice(["svg", "ascii"]), default="svg", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-")
def render_cmd(infile, system_file, fmt, output):
    """Draw a system's seed, an assembly or the end of a trace."""
    T, a = _load_drawing(infile, system_file)
    _write(output, render_svg(T, a) if fmt == "svg" else render_ascii(T, a))


@cli.command("pump-bound")
@click.option("--glues", type=click.IntRange(0), required=True)
@click.option("--scale", type=click.IntRange(1), required=True)
def pump_bound_cmd(glues, scale):
    """Print the movie-variety bound B and the iteration count 3B+2."""
    B, n = pumping_bound(glues, scale)
    click.echo(f"B={B} n={n}")


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="tamsim", standalone_mode=False)
    except _Exit as exc:
        return exc.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except TamError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
