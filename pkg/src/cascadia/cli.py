"""Command-line interface.

Subcommands::

    simulate     repeated cascades on one graph, per-trial CSV
    sweep        product-vs-budget sweep over graph sizes, CSVs + fit JSON
    game-matrix  strategy-pairing payoff matrix, JSON + equilibrium report
    bounds       dense-network closed-form probabilities vs their bounds
    graph-stats  structural metrics as JSON

Every run is reproducible: the seed defaults to a fixed constant (pass
``--seed random`` to opt into OS entropy), per-trial streams are derived
from seed + coordinates, and each emitted data file gets a sibling
``<name>.manifest.json`` recording the resolved parameters.  Outputs are
byte-identical regardless of ``--threads``.

Exit codes: 0 success, 1 I/O failure, 2 invalid usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    DenseNetworkConfig,
    GameMatrix,
    dense_first_step_probability,
    dense_probability_bounds,
    find_dominant_strategy_equilibrium,
    find_pure_nash,
    fit_linear,
)
from .engine import Player
from .errors import CascadiaError, InvalidParameterError
from .experiments import (
    TOPOLOGIES,
    ExperimentConfig,
    run_game_matrix,
    run_product_vs_budget,
    run_simulation_trials,
    write_means_csv,
    write_trials_csv,
)
from .graph import Graph, compute_metrics, load_edge_list
from .rng import fresh_entropy_seed
from .strategies import DEFAULT_DISCOUNT_P, STRATEGY_KINDS, parse_strategy

DEFAULT_SEED = 42
THREADS_ENV_VAR = "CASCADIA_THREADS"


# ---------------------------------------------------------------------------
# Flag parsing helpers


def _argtype(fn):
    """Convert package errors raised in a type= callable into argparse errors."""

    def wrapped(text):
        try:
            return fn(text)
        except CascadiaError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    wrapped.__name__ = fn.__name__
    return wrapped


def parse_graph_spec(text: str) -> tuple[str, str]:
    kind, sep, arg = text.partition(":")
    valid = "dense:N, ngon:N, tree:N, edgelist:PATH"
    if not sep or kind not in (*TOPOLOGIES, "edgelist"):
        raise InvalidParameterError(f"unknown graph source {text!r}; valid: {valid}")
    if kind != "edgelist":
        try:
            size = int(arg)
        except ValueError:
            raise InvalidParameterError(f"graph size must be an integer, got {arg!r}") from None
        if size < 1:
            raise InvalidParameterError("graph size must be >= 1")
    return kind, arg


def build_graph(spec: tuple[str, str], remap: bool = False) -> Graph:
    kind, arg = spec
    if kind == "edgelist":
        with open(arg, "r", encoding="utf-8") as fh:
            return load_edge_list(fh, remap=remap)
    return TOPOLOGIES[kind](int(arg))


def parse_player_spec(text: str) -> dict:
    fields = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or key not in ("budget", "score"):
            raise InvalidParameterError(
                f"bad player spec {text!r}; expected budget=K,score=P"
            )
        fields[key] = value
    if set(fields) != {"budget", "score"}:
        raise InvalidParameterError(f"player spec {text!r} needs both budget= and score=")
    try:
        return {"budget": int(fields["budget"]), "score": float(fields["score"])}
    except ValueError:
        raise InvalidParameterError(f"non-numeric value in player spec {text!r}") from None


def parse_sizes(text: str) -> tuple[int, ...]:
    """Accept 'start:stop:step' (inclusive) or a comma list of integers."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) != 3:
                raise InvalidParameterError(f"range spec {text!r} must be start:stop:step")
            start, stop, step = parts
            if step < 1:
                raise InvalidParameterError("size step must be >= 1")
            sizes = tuple(range(start, stop + 1, step))
        else:
            sizes = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InvalidParameterError(f"non-integer size in {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise InvalidParameterError(f"sizes must be positive, got {text!r}")
    return sizes


def parse_seed(text: str) -> int:
    if text == "random":
        return fresh_entropy_seed()
    try:
        value = int(text)
    except ValueError:
        raise InvalidParameterError(f"seed must be an integer or 'random', got {text!r}") from None
    if value < 0:
        raise InvalidParameterError("seed must be non-negative")
    return value


def parse_int_list(text: str) -> tuple[int, ...]:
    return parse_sizes(text)


def resolve_threads(flag_value: int | None) -> int:
    if flag_value is not None:
        value = flag_value
    elif os.environ.get(THREADS_ENV_VAR):
        try:
            value = int(os.environ[THREADS_ENV_VAR])
        except ValueError:
            raise InvalidParameterError(f"{THREADS_ENV_VAR} must be an integer") from None
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise InvalidParameterError("threads must be >= 1")
    return value


def write_manifest(data_path: Path, subcommand: str, parameters: dict, master_seed: int) -> Path:
    manifest_path = data_path.with_name(data_path.stem + ".manifest.json")
    payload = {
        "subcommand": subcommand,
        "parameters": parameters,
        "master_seed": master_seed,
        "version": __version__,
        "output": str(data_path),
    }
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return manifest_path


def _players_from_args(specs: list[dict]) -> tuple[Player, ...]:
    return tuple(
        Player(id=i + 1, budget=spec["budget"], product_score=spec["score"])
        for i, spec in enumerate(specs)
    )


# ---------------------------------------------------------------------------
# Subcommands


def cmd_simulate(args) -> int:
    g = build_graph(args.graph, remap=args.remap)
    players = _players_from_args(args.player)
    names = args.strategy or ["random"] * len(players)
    if len(names) != len(players):
        raise InvalidParameterError(
            f"{len(players)} players but {len(names)} --strategy flags"
        )
    strategies = [parse_strategy(name, args.dd_p) for name in names]
    records = run_simulation_trials(
        g,
        players,
        strategies,
        trials=args.trials,
        master_seed=args.seed,
        step_cap=args.step_cap,
        threads=resolve_threads(args.threads),
    )
    out = Path(args.output)
    write_trials_csv(records, out)
    write_manifest(
        out,
        "simulate",
        {
            "graph": ":".join(args.graph),
            "remap": args.remap,
            "players": args.player,
            "strategies": names,
            "dd_p": args.dd_p,
            "trials": args.trials,
            "step_cap": args.step_cap,
        },
        args.seed,
    )
    print(f"wrote {len(records)} rows to {out}")
    return 0


def cmd_sweep(args) -> int:
    cfg = ExperimentConfig(
        master_seed=args.seed,
        trials_per_point=args.trials,
        sizes=args.sizes,
        topology=args.topology,
        step_cap=args.step_cap,
    )
    result = run_product_vs_budget(cfg, threads=resolve_threads(args.threads))
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    params = {
        "topology": args.topology,
        "sizes": list(args.sizes),
        "trials": args.trials,
        "step_cap": args.step_cap,
    }
    trials_path = outdir / "sweep_trials.csv"
    means_path = outdir / "sweep_means.csv"
    fits_path = outdir / "sweep_fits.json"
    write_trials_csv(result.records, trials_path)
    write_means_csv(result.means(), means_path)
    fits = {}
    for label in result.labels:
        series = result.series(label)
        if len(series) >= 3:
            fit = fit_linear(series)
            fits[label] = {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
            }
        else:
            fits[label] = None
            print(f"warning: fewer than 3 sizes, skipping fit for {label}", file=sys.stderr)
    with open(fits_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(fits, fh, indent=2)
        fh.write("\n")
    for path in (trials_path, means_path, fits_path):
        write_manifest(path, "sweep", params, args.seed)
    print(f"wrote {trials_path}, {means_path}, {fits_path}")
    return 0


def _report_equilibria(matrix: GameMatrix) -> None:
    dominant = find_dominant_strategy_equilibrium(matrix)
    if dominant is None:
        print("dominant-strategy equilibrium: none")
    else:
        r, c = dominant
        print(
            "dominant-strategy equilibrium: "
            f"({matrix.row_strategies[r]}, {matrix.col_strategies[c]})"
        )
    nash = sorted(find_pure_nash(matrix))
    if not nash:
        print("pure Nash equilibria: none")
    else:
        cells = ", ".join(
            f"({matrix.row_strategies[r]}, {matrix.col_strategies[c]})" for r, c in nash
        )
        print(f"pure Nash equilibria: {cells}")


def cmd_game_matrix(args) -> int:
    if args.analyze_only:
        if not args.matrix_file:
            raise InvalidParameterError("--analyze-only requires --matrix-file")
        with open(args.matrix_file, "r", encoding="utf-8") as fh:
            matrix = GameMatrix.from_json(fh.read())
        _report_equilibria(matrix)
        return 0
    if args.graph is None or len(args.player) != 2:
        raise InvalidParameterError("game-matrix needs --graph and exactly two --player flags")
    g = build_graph(args.graph, remap=args.remap)
    players = _players_from_args(args.player)
    strategies = [parse_strategy(name, args.dd_p) for name in args.strategies]
    matrix = run_game_matrix(
        g,
        players,
        strategies,
        trials=args.trials,
        master_seed=args.seed,
        step_cap=args.step_cap,
        threads=resolve_threads(args.threads),
    )
    out = Path(args.output)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(matrix.to_json())
        fh.write("\n")
    write_manifest(
        out,
        "game-matrix",
        {
            "graph": ":".join(args.graph),
            "remap": args.remap,
            "players": args.player,
            "strategies": list(args.strategies),
            "dd_p": args.dd_p,
            "trials": args.trials,
            "step_cap": args.step_cap,
        },
        args.seed,
    )
    print(f"wrote {out}")
    _report_equilibria(matrix)
    return 0


def cmd_bounds(args) -> int:
    cfg = DenseNetworkConfig(n=args.n[0], c=args.c, m=args.m, p1=args.p1, p2=args.p2)
    bounds = dense_probability_bounds(cfg, args.player)
    print(f"player {args.player}: lower={bounds.lower:.9f} upper={bounds.upper:.9f}")
    print("n,closed_form,lower,upper,within")
    violations = 0
    for n in args.n:
        value = dense_first_step_probability(
            DenseNetworkConfig(n=n, c=args.c, m=args.m, p1=args.p1, p2=args.p2), args.player
        )
        within = bounds.lower <= value <= bounds.upper
        violations += not within
        print(f"{n},{value:.9f},{bounds.lower:.9f},{bounds.upper:.9f},{str(within).lower()}")
    if violations:
        print(f"warning: {violations} value(s) outside bounds", file=sys.stderr)
    return 0


def cmd_graph_stats(args) -> int:
    g = build_graph(args.graph, remap=args.remap)
    metrics = compute_metrics(g, exact=args.exact)
    text = metrics.to_json()
    print(text)
    if args.output:
        out = Path(args.output)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.write("\n")
        write_manifest(
            out,
            "graph-stats",
            {"graph": ":".join(args.graph), "remap": args.remap, "exact": args.exact},
            0,
        )
    return 0


# ---------------------------------------------------------------------------
# Parser wiring


def _add_common(sub, graph: bool = True) -> None:
    if graph:
        sub.add_argument("--graph", type=_argtype(parse_graph_spec), help="dense:N | ngon:N | tree:N | edgelist:PATH")
        sub.add_argument("--remap", action="store_true", help="densely renumber edge-list node ids")
    sub.add_argument("--seed", type=_argtype(parse_seed), default=DEFAULT_SEED, help="integer or 'random' (default: %(default)s)")
    sub.add_argument("--threads", type=int, default=None, help=f"worker threads (default: ${THREADS_ENV_VAR} or CPU count); never affects results")
    sub.add_argument("--step-cap", type=int, default=None, help="max cascade steps (default: 100*|V|)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascadia",
        description="Competitive influence cascades: simulation, analysis, and experiments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    sim = commands.add_parser("simulate", help="repeated cascades on one graph")
    _add_common(sim)
    sim.add_argument("--player", type=_argtype(parse_player_spec), action="append", required=True, help="budget=K,score=P (repeat per player)")
    sim.add_argument("--strategy", action="append", choices=STRATEGY_KINDS, help="seed policy per player, in --player order (default: random)")
    sim.add_argument("--dd-p", type=float, default=DEFAULT_DISCOUNT_P, help="degree-discount propagation constant")
    sim.add_argument("--trials", type=int, default=10)
    sim.add_argument("--output", default="simulate.csv")
    sim.set_defaults(func=cmd_simulate)

    sweep = commands.add_parser("sweep", help="product-vs-budget sweep over sizes")
    _add_common(sweep, graph=False)
    sweep.add_argument("--topology", choices=sorted(TOPOLOGIES), required=True)
    sweep.add_argument("--sizes", type=_argtype(parse_sizes), default=tuple(range(1000, 9001, 1000)), help="start:stop:step (inclusive) or comma list")
    sweep.add_argument("--trials", type=int, default=10)
    sweep.add_argument("--out-dir", default=".")
    sweep.set_defaults(func=cmd_sweep)

    game = commands.add_parser("game-matrix", help="strategy-pairing payoff matrix")
    _add_common(game)
    game.add_argument("--player", type=_argtype(parse_player_spec), action="append", default=[], help="budget=K,score=P (exactly two)")
    game.add_argument("--strategies", type=lambda s: tuple(s.split(",")), default=("single-discount", "degree-discount", "highest-degree"), help="comma list of strategy names")
    game.add_argument("--dd-p", type=float, default=DEFAULT_DISCOUNT_P)
    game.add_argument("--trials", type=int, default=10)
    game.add_argument("--output", default="game_matrix.json")
    game.add_argument("--matrix-file", default=None, help="stored matrix JSON to analyze")
    game.add_argument("--analyze-only", action="store_true", help="run equilibrium detectors on --matrix-file without simulating")
    game.set_defaults(func=cmd_game_matrix)

    bounds = commands.add_parser("bounds", help="dense-network first-step probabilities vs bounds")
    bounds.add_argument("--c", type=float, required=True, help="player-1 budget fraction, b1 = c*n")
    bounds.add_argument("--m", type=float, required=True, help="budget ratio, b2 = m*c*n")
    bounds.add_argument("--p1", type=float, required=True)
    bounds.add_argument("--p2", type=float, required=True)
    bounds.add_argument("--n", type=_argtype(parse_int_list), required=True, help="graph sizes (comma list or start:stop:step)")
    bounds.add_argument("--player", type=int, choices=(1, 2), default=1)
    bounds.set_defaults(func=cmd_bounds)

    stats = commands.add_parser("graph-stats", help="structural metrics as JSON")
    stats.add_argument("--graph", type=_argtype(parse_graph_spec), required=True)
    stats.add_argument("--remap", action="store_true")
    stats.add_argument("--exact", action="store_true", help="BFS from every node instead of a sample")
    stats.add_argument("--output", default=None)
    stats.set_defaults(func=cmd_graph_stats)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CascadiaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
