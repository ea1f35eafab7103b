"""Command-line front end: ``cutoffgame <subcommand> [options]``.

Exit codes: 0 success, 1 input error, 2 disagreement (sweep, catalog).
"""
from __future__ import annotations

import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

import click

from .classify import (
    Tag,
    Verdict,
    classify,
    closed_form_minimal_losing,
    minimal_losing_catalog,
)
from .coxeter import CoxeterGraph, Kind, build_family, graph_from_json
from .game import FiringTrace, Outcome, fire, is_dominant, is_forbidden, legal_moves, play
from .minuscule import extract_witness, verify_minuscule
from .oracle import Budgets, OracleTag, explore
from .roots import DEFAULT_DEPTH_BOUND, height, positive_roots
from .validation import as_configuration, format_configuration, parse_box, parse_rational_list

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


# ----------------------------------------------------------------- encoding


def enc(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [enc(y) for y in x]
    return x


def trace_json(trace: FiringTrace | None, graph: CoxeterGraph) -> list:
    if trace is None:
        return []
    configs = trace.configurations(graph)[1:]
    return [{"vertex": s.vertex, "amplitude": enc(s.amplitude), "after": enc(c)} for s, c in zip(trace.steps, configs)]


def emit(fmt: str, payload: dict, lines: Sequence[str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


# ------------------------------------------------------------ shared options


def _load_graph(family, graph_file) -> CoxeterGraph:
    if (family is None) == (graph_file is None):
        raise InputError("give exactly one of --family or --graph-file")
    try:
        if family is not None:
            return build_family(family)
        with open(graph_file) as fh:
            return graph_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _load_config(config, config_file, graph: CoxeterGraph):
    if (config is None) == (config_file is None):
        raise InputError("give exactly one of --config or --config-file")
    try:
        if config_file is not None:
            with open(config_file) as fh:
                text = fh.read().strip()
            if text.startswith("["):
                return as_configuration(json.loads(text), graph.rank)
            return as_configuration(parse_rational_list(text), graph.rank)
        return as_configuration(parse_rational_list(config), graph.rank)
    except (OSError, json.JSONDecodeError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def graph_options(f):
    f = click.option("--graph-file", type=click.Path(), help="JSON graph file.")(f)
    f = click.option("--family", help="Named family, e.g. A3, D4, E~8, D~5.")(f)
    return f


def config_options(f):
    f = click.option("--config-file", type=click.Path(), help="File holding a rational list or JSON array.")(f)
    f = click.option("--config", help="Amplitudes, e.g. -1,0,1/2.")(f)
    return f


def format_option(f):
    return click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)(f)


def budget_options(f):
    f = click.option("--max-depth", type=click.IntRange(min=1), default=10**4, show_default=True,
                     help="Oracle depth budget.")(f)
    f = click.option("--max-states", type=click.IntRange(min=1), default=10**6, show_default=True,
                     help="Oracle state budget.")(f)
    return f


def bound_option(f):
    return click.option("--depth-bound", type=click.IntRange(min=1), default=DEFAULT_DEPTH_BOUND, show_default=True,
                        help="Root enumeration depth on infinite root systems.")(f)


def _classify(v, graph: CoxeterGraph, bound: int, budgets: Budgets) -> Verdict:
    if graph.kind in (Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN):
        return classify(v, graph)
    return classify(v, graph, bound=bound, budgets=budgets)


# ------------------------------------------------------------------ commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Exact solver for the numbers game with a -1 cutoff."""


@cli.command("classify")
@graph_options
@config_options
@format_option
@budget_options
@bound_option
def classify_cmd(family, graph_file, config, config_file, fmt, max_states, max_depth, depth_bound):
    """Classify a configuration as Winning, Losing or Looping."""
    graph = _load_graph(family, graph_file)
    v = _load_config(config, config_file, graph)
    verdict = _classify(v, graph, depth_bound, Budgets(max_states, max_depth))
    lines = [verdict.tag.value]
    cert: dict
    trace = verdict.trace
    if verdict.tag is Tag.WINNING:
        cert = {"type": "witness", "script": list(trace.script), "end": enc(trace.end)}
        lines.append(f"witness script: {' '.join(map(str, trace.script)) or '(empty)'}")
        lines += trace.format_lines(graph)
    elif verdict.tag is Tag.LOSING:
        cert = {"type": "violated_root", "root": enc(verdict.root), "dot": enc(verdict.value)}
        lines.append(f"violated root: {format_configuration(verdict.root)}  dot {verdict.value}")
    elif verdict.tag is Tag.LOOPING:
        cert = {"type": "orbit_representative", "representative": enc(verdict.representative)}
        lines.append(f"orbit representative: {format_configuration(verdict.representative)}")
        res = play(v, graph)
        if res.outcome is Outcome.LOOP:
            lines.append("cycle: " + " -> ".join(format_configuration(c) for c in res.cycle + res.cycle[:1]))
    else:
        cert = {"type": "note", "note": verdict.note}
    if verdict.note and verdict.tag is not Tag.UNKNOWN:
        lines.append(f"note: {verdict.note}")
    elif verdict.tag is Tag.UNKNOWN:
        lines.append(f"note: {verdict.note}")
    payload = {
        "verdict": verdict.tag.value,
        "certificate": cert,
        "trace": trace_json(trace, graph),
        "stats": {"graph": graph.name, "kind": graph.kind.value, "rank": graph.rank, "moves": len(trace) if trace else 0},
    }
    emit(fmt, payload, lines)


@cli.command("play")
@graph_options
@config_options
@format_option
@click.option("--strategy", type=click.Choice(["lowest", "random", "scripted"]), default="lowest", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--script", help="Vertices to fire, e.g. 1,0,1.")
@click.option("--max-steps", type=click.IntRange(min=0), default=10_000, show_default=True)
@click.option("--no-cutoff", is_flag=True, help="Play the usual game without the -1 cutoff.")
def play_cmd(family, graph_file, config, config_file, fmt, strategy, seed, script, max_steps, no_cutoff):
    """Play one game and print the firing trace."""
    graph = _load_graph(family, graph_file)
    v = _load_config(config, config_file, graph)
    seq = None
    if script is not None:
        try:
            seq = [int(x) for x in parse_rational_list(script)]
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
        strategy = "scripted"
    elif strategy == "scripted":
        raise InputError("--strategy scripted needs --script")
    try:
        res = play(v, graph, strategy, seed=seed, script=seq, max_steps=max_steps, cutoff=not no_cutoff)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = res.trace.format_lines(graph) + [f"outcome: {res.outcome.value} after {len(res.trace)} moves"]
    payload = {
        "verdict": res.outcome.value,
        "certificate": {"type": "cycle", "cycle": enc(list(res.cycle))} if res.cycle else None,
        "trace": trace_json(res.trace, graph),
        "stats": {"graph": graph.name, "moves": len(res.trace), "strategy": strategy, "seed": seed,
                  "cutoff": not no_cutoff},
    }
    emit(fmt, payload, lines)


@cli.command("oracle")
@graph_options
@config_options
@format_option
@budget_options
def oracle_cmd(family, graph_file, config, config_file, fmt, max_states, max_depth):
    """Exhaustive game-tree search from a configuration."""
    graph = _load_graph(family, graph_file)
    v = _load_config(config, config_file, graph)
    e = explore(v, graph, Budgets(max_states, max_depth))
    o, vd = e.outcome, e.verdict
    fields = {
        "can_win": o.can_win,
        "can_reach_forbidden": o.can_reach_forbidden,
        "can_loop": o.can_loop,
        "min_moves_to_win": o.min_moves_to_win,
        "min_moves_to_forbidden": o.min_moves_to_forbidden,
        "exhausted": o.exhausted,
        "states": o.states,
    }
    scripts = {
        "win_script": vd.win_script,
        "forbidden_script": vd.forbidden_script,
        "cycle_prefix": vd.cycle_prefix,
        "cycle_script": vd.cycle_script,
    }
    lines = [f"{k}: {val}" for k, val in fields.items()]
    lines += [f"{k}: {' '.join(map(str, s))}" for k, s in scripts.items() if s is not None]
    lines.append(f"verdict: {e.tag.value}")
    witness = e.witness(graph)
    payload = {
        "verdict": e.tag.value,
        "certificate": {k: (list(s) if s is not None else None) for k, s in scripts.items()},
        "trace": trace_json(witness, graph),
        "stats": fields,
    }
    emit(fmt, payload, lines)


@cli.command("roots")
@graph_options
@format_option
@bound_option
@click.option("--show-order", is_flag=True, help="Print the vertex order and adjacency instead.")
def roots_cmd(family, graph_file, fmt, depth_bound, show_order):
    """List positive roots with height and depth."""
    graph = _load_graph(family, graph_file)
    if show_order:
        lines = [f"{graph.name}: {graph.rank} vertices ({graph.kind.value})"]
        for i in graph.vertices:
            nb = ", ".join(str(j) for j in graph.neighbors[i])
            extra = ""
            if graph.delta is not None:
                extra = f"  delta {graph.delta[i]}"
            lines.append(f"vertex {i}: neighbours {nb}{extra}")
        payload = {"verdict": "order", "certificate": None, "trace": [],
                   "stats": {"graph": graph.name, "neighbors": [list(graph.neighbors[i]) for i in graph.vertices]}}
        emit(fmt, payload, lines)
        return
    R = positive_roots(graph, depth_bound)
    lines = [f"{format_configuration(r)}  height {height(r)}  depth {R.depth(r)}" for r in R]
    footer = f"complete: {len(R)} roots" if R.complete else f"truncated at depth {depth_bound}: {len(R)} roots"
    lines.append(footer)
    payload = {
        "verdict": "complete" if R.complete else "truncated",
        "certificate": None,
        "trace": [],
        "stats": {"graph": graph.name, "count": len(R), "max_depth": R.max_depth,
                  "roots": [{"root": enc(r), "height": enc(height(r)), "depth": R.depth(r)} for r in R]},
    }
    emit(fmt, payload, lines)


@cli.command("witness")
@graph_options
@config_options
@format_option
@click.option("--non-integral", is_flag=True, help="Check amplitudes in [-1, 0) rather than exactly -1.")
def witness_cmd(family, graph_file, config, config_file, fmt, non_integral):
    """Print a minuscule witness word for a winning configuration."""
    graph = _load_graph(family, graph_file)
    v = _load_config(config, config_file, graph)
    try:
        word = extract_witness(v, graph)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    integral = not non_integral and all(isinstance(x, int) for x in v)
    check = verify_minuscule(word, v, graph, integral=integral)
    lines = [
        f"word: {word.format()}",
        f"firing order: {' '.join(map(str, word.firing_order)) or '(empty)'}",
        f"amplitudes: {' '.join(str(a) for a in word.amplitudes) or '(none)'}",
        f"end: {format_configuration(check.end) if check.end else '-'}",
        f"verified ({'integral' if integral else 'non-integral'}): {'yes' if check else 'no, step %s: %s' % (check.step, check.reason)}",
    ]
    trace = FiringTrace.from_script(v, word.firing_order, graph)
    payload = {
        "verdict": "verified" if check else "failed",
        "certificate": {"word": list(word.reflections), "firing_order": list(word.firing_order),
                        "amplitudes": enc(word.amplitudes), "end": enc(trace.end)},
        "trace": trace_json(trace, graph),
        "stats": {"graph": graph.name, "length": len(word), "integral": integral},
    }
    emit(fmt, payload, lines)
    if not check:
        sys.exit(EXIT_DISAGREE)


def _box(box, lo, hi, default=None):
    if box is not None:
        try:
            return parse_box(box)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if lo is None and hi is None and default is not None:
        return default
    if lo is None or hi is None:
        raise InputError("give --box lo..hi or both --box-low and --box-high")
    if lo > hi:
        raise InputError("empty box")
    return lo, hi


@cli.command("catalog")
@graph_options
@format_option
@click.option("--box", help="Integer box lo..hi.")
@click.option("--box-low", type=int)
@click.option("--box-high", type=int)
def catalog_cmd(family, graph_file, fmt, box, box_low, box_high):
    """Minimal losing configurations: enumeration vs closed form."""
    graph = _load_graph(family, graph_file)
    lo, hi = _box(box, box_low, box_high, default=(-1, 3))
    try:
        found = minimal_losing_catalog(graph, lo, hi)
        closed = closed_form_minimal_losing(graph, lo, hi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    only_enum, only_closed = sorted(found - closed), sorted(closed - found)
    lines = [f"{graph.name}, box {lo}..{hi}"]
    lines.append(f"enumerated ({len(found)}):")
    lines += [f"  {format_configuration(v)}" for v in sorted(found)]
    lines.append(f"closed form ({len(closed)}):")
    lines += [f"  {format_configuration(v)}" for v in sorted(closed)]
    lines.append("diff: none" if not (only_enum or only_closed) else "diff:")
    lines += [f"  enumerated only {format_configuration(v)}" for v in only_enum]
    lines += [f"  closed form only {format_configuration(v)}" for v in only_closed]
    payload = {
        "verdict": "equal" if not (only_enum or only_closed) else "differ",
        "certificate": {"enumerated_only": enc(only_enum), "closed_form_only": enc(only_closed)},
        "trace": [],
        "stats": {"graph": graph.name, "box": [lo, hi], "enumerated": enc(sorted(found)), "closed_form": enc(sorted(closed))},
    }
    emit(fmt, payload, lines)
    if only_enum or only_closed:
        sys.exit(EXIT_DISAGREE)


# sweep workers hold the graph in a module global so root caches survive between tasks
_WORKER: dict = {}


def _sweep_init(graph, bound, budgets):
    _WORKER.update(graph=graph, bound=bound, budgets=budgets)


def _sweep_one(v):
    g, bound, budgets = _WORKER["graph"], _WORKER["bound"], _WORKER["budgets"]
    verdict = _classify(v, g, bound, budgets)
    return v, verdict.tag.value, explore(v, g, budgets).tag.value


def agrees(classifier_tag: str, oracle_tag: str) -> bool:
    if classifier_tag == Tag.WINNING.value:
        return oracle_tag in (OracleTag.WINNING.value, OracleTag.MIXED.value)
    if classifier_tag == Tag.UNKNOWN.value:
        return False
    return classifier_tag == oracle_tag


def thread_count() -> int:
    raw = os.environ.get("CUTOFFGAME_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"CUTOFFGAME_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


@cli.command("sweep")
@graph_options
@format_option
@budget_options
@bound_option
@click.option("--box", default="-2..2", show_default=True, help="Integer box lo..hi.")
def sweep_cmd(family, graph_file, fmt, max_states, max_depth, depth_bound, box):
    """Compare the classifier with the oracle on every integral configuration in a box."""
    graph = _load_graph(family, graph_file)
    lo, hi = _box(box, None, None)
    budgets = Budgets(max_states, max_depth)
    configs = list(itertools.product(range(lo, hi + 1), repeat=graph.rank))
    threads = thread_count()
    if threads > 1 and len(configs) > 64:
        with ProcessPoolExecutor(threads, initializer=_sweep_init, initargs=(graph, depth_bound, budgets)) as ex:
            results = list(ex.map(_sweep_one, configs, chunksize=max(1, len(configs) // (8 * threads))))
    else:
        _sweep_init(graph, depth_bound, budgets)
        results = [_sweep_one(v) for v in configs]
    results.sort()
    ctags = [t.value for t in Tag]
    otags = [t.value for t in OracleTag]
    matrix = {c: {o: 0 for o in otags} for c in ctags}
    first = None
    agree = 0
    for v, c, o in results:
        matrix[c][o] += 1
        if agrees(c, o):
            agree += 1
        elif first is None:
            first = (v, c, o)
    width = max(len(t) for t in ctags + otags) + 2
    lines = [f"{graph.name}, box {lo}..{hi}: {len(results)} configurations"]
    lines.append("classifier \\ oracle".ljust(22) + "".join(t.rjust(width) for t in otags))
    for c in ctags:
        lines.append(c.ljust(22) + "".join(str(matrix[c][o]).rjust(width) for o in otags))
    lines.append(f"agreement: {agree}/{len(results)}")
    if first is None:
        lines.append("first counterexample: none")
    else:
        lines.append(f"first counterexample: {format_configuration(first[0])} classifier {first[1]}, oracle {first[2]}")
    payload = {
        "verdict": "agree" if first is None else "disagree",
        "certificate": None if first is None else {"config": enc(first[0]), "classifier": first[1], "oracle": first[2]},
        "trace": [],
        "stats": {"graph": graph.name, "box": [lo, hi], "total": len(results), "agreements": agree, "matrix": matrix},
    }
    emit(fmt, payload, lines)
    if first is not None:
        sys.exit(EXIT_DISAGREE)


@cli.command("repl")
@graph_options
@config_options
@click.option("--no-cutoff", is_flag=True)
def repl_cmd(family, graph_file, config, config_file, no_cutoff):
    """Fire vertices interactively; 'q' quits."""
    graph = _load_graph(family, graph_file)
    cur = _load_config(config, config_file, graph)
    seen = {cur}
    cutoff = not no_cutoff
    while True:
        if is_dominant(cur):
            click.echo(f"{format_configuration(cur)}\nWon")
            return
        if cutoff and is_forbidden(cur):
            click.echo(f"{format_configuration(cur)}\nForbidden")
            return
        line = click.prompt(format_configuration(cur), default="q", show_default=False, prompt_suffix=" > ")
        line = line.strip()
        if line in ("q", "quit", "exit"):
            return
        try:
            i = int(line)
        except ValueError:
            click.echo(f"not a vertex index: {line!r}")
            continue
        if i not in legal_moves(cur, graph, cutoff):
            click.echo(f"illegal move: vertex {i} (legal: {' '.join(map(str, legal_moves(cur, graph, cutoff))) or 'none'})")
            continue
        cur = fire(i, cur, graph)
        if cur in seen:
            click.echo(f"{format_configuration(cur)}\nLoop")
            return
        seen.add(cur)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the exit code."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="cutoffgame", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())
