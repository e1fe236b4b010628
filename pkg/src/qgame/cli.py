"""Command-line interface: game ingestion, analysis commands, reports.

Game files are TOML with a ``[game]`` section (name, rows, cols, payoffs_A,
payoffs_B as row-major 2x2 arrays), an optional ``[quantum]`` section
(gamma, radians) and an optional ``[search]`` section (grid, epsilon, seed,
max_iter).  Exit codes: 0 success, 2 input error, 3 internal numerical
consistency failure.  All commands are deterministic under a fixed seed.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import casestudies, classical, equilibrium, ewl, quadratic, report, su2

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

CONSISTENCY_TOL = 1e-8


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def _load_game_file(path: str):
    """Parse a game file into (game, gamma-or-None, search dict)."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: TOML parse error: {exc}") from exc

    if "game" not in data:
        raise InputError(f"{path}: missing [game] section")
    section = data["game"]
    for field in ("payoffs_A", "payoffs_B"):
        if field not in section:
            raise InputError(f"{path}: [game] is missing required field {field!r}")
    try:
        game = classical.make_game(
            str(section.get("name", "game")),
            np.asarray(section["payoffs_A"], dtype=float),
            np.asarray(section["payoffs_B"], dtype=float),
            row_labels=tuple(section.get("rows", ("1", "2"))),
            col_labels=tuple(section.get("cols", ("1", "2"))),
        )
    except (classical.GameError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: [game]: {exc}") from exc

    gamma = None
    if "quantum" in data:
        gamma = data["quantum"].get("gamma")
        if gamma is not None:
            try:
                ewl.EntanglerSetting(float(gamma))
            except (ewl.ProtocolError, TypeError, ValueError) as exc:
                raise InputError(f"{path}: [quantum].gamma: {exc}") from exc
            gamma = float(gamma)
    return game, gamma, dict(data.get("search", {}))


def _parse_strategy(spec: str) -> su2.Su2Element:
    """Parse ``angles:theta,alpha,beta`` or ``vector:w,x,y,z``."""
    kind, _, body = spec.partition(":")
    try:
        values = [float(v) for v in body.split(",")] if body else []
    except ValueError as exc:
        raise InputError(f"strategy spec {spec!r}: non-numeric component") from exc
    if kind == "angles":
        if len(values) != 3:
            raise InputError(f"strategy spec {spec!r}: expected 3 angles, got {len(values)}")
        try:
            return su2.from_angles(*values)
        except su2.StrategyError as exc:
            raise InputError(f"strategy spec {spec!r}: {exc}") from exc
    if kind == "vector":
        if len(values) != 4:
            raise InputError(f"strategy spec {spec!r}: expected vector of length 4, got {len(values)}")
        try:
            return su2.from_vector(values)
        except su2.StrategyError as exc:
            raise InputError(f"strategy spec {spec!r}: {exc}") from exc
    raise InputError(f"strategy spec {spec!r}: must start with 'angles:' or 'vector:'")


def _resolve_gamma(flag_value, file_value) -> float:
    gamma = flag_value if flag_value is not None else file_value
    if gamma is None:
        raise InputError("gamma required: pass --gamma or add a [quantum] section")
    try:
        ewl.EntanglerSetting(float(gamma))
    except ewl.ProtocolError as exc:
        raise InputError(str(exc)) from exc
    return float(gamma)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classical(args) -> int:
    game, _, _ = _load_game_file(args.game_file)
    labels = {"rows": game.row_labels, "cols": game.col_labels}
    pure = classical.pure_nash(game)
    mixed = classical.mixed_nash_indifference(game)
    dominance = classical.dominant_strategies(game)
    obj = {
        "game": game.name,
        "rows": list(labels["rows"]),
        "cols": list(labels["cols"]),
        "pure_nash": [
            {"cell": [i, j], "labels": [labels["rows"][i], labels["cols"][j]],
             "payoffs": [float(game.a[i, j]), float(game.b[i, j])]}
            for i, j in pure
        ],
        "mixed_nash": {
            "status": mixed.status,
            **({"p": mixed.profile.p, "q": mixed.profile.q,
                "payoffs": list(mixed.payoffs)} if mixed.profile else {}),
        },
        "dominant": {
            "rows": [{"index": i, "label": labels["rows"][i], "strict": strict}
                     for i, strict in dominance.rows],
            "cols": [{"index": j, "label": labels["cols"][j], "strict": strict}
                     for j, strict in dominance.cols],
        },
        "pareto_optimal": [
            {"cell": [i, j], "labels": [labels["rows"][i], labels["cols"][j]]}
            for i, j in classical.pareto_optimal_profiles(game)
        ],
    }
    _emit(report.dumps_json(obj), args.out)
    return EXIT_OK


def cmd_payoff(args) -> int:
    game, file_gamma, _ = _load_game_file(args.game_file)
    gamma = _resolve_gamma(args.gamma, file_gamma)
    u_a = _parse_strategy(args.ua)
    u_b = _parse_strategy(args.ub)
    setting = ewl.EntanglerSetting(gamma)
    state = ewl.final_state(setting, u_a, u_b)
    probs = ewl.outcome_probs(state)
    sim_a, sim_b = ewl.pure_payoffs(game, setting, u_a, u_b)
    quad_a = quadratic.payoff_matrix_A(game, gamma, u_b.u).value(u_a.u)
    quad_b = quadratic.payoff_matrix_B(game, gamma, u_a.u).value(u_b.u)
    discrepancy = max(abs(sim_a - quad_a), abs(sim_b - quad_b))
    obj = {
        "game": game.name,
        "gamma": gamma,
        "strategy_a": report.strategy_obj(u_a),
        "strategy_b": report.strategy_obj(u_b),
        "outcome_probs": {label: float(p) for label, p in zip(ewl.BASIS_LABELS, probs)},
        "simulator": {"payoff_a": sim_a, "payoff_b": sim_b},
        "quadratic_form": {"payoff_a": quad_a, "payoff_b": quad_b},
        "discrepancy": discrepancy,
        "payoff_difference": sim_a - sim_b,
    }
    _emit(report.dumps_json(obj), args.out)
    if discrepancy > CONSISTENCY_TOL:
        print(f"numerical consistency failure: simulator and quadratic form "
              f"disagree by {discrepancy:.3e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _search_config(args, search_section: dict) -> equilibrium.SearchConfig:
    def pick(flag, key, default):
        if flag is not None:
            return flag
        return search_section.get(key, default)

    base = equilibrium.SearchConfig()
    grid = pick(args.grid, "grid", base.grid)
    if isinstance(grid, str):
        try:
            grid = tuple(int(v) for v in grid.split(","))
        except ValueError as exc:
            raise InputError(f"--grid {grid!r}: expected three comma-separated ints") from exc
    grid = tuple(int(v) for v in grid)
    if len(grid) != 3 or min(grid) < 1:
        raise InputError(f"grid {grid!r}: expected three positive counts")
    return equilibrium.SearchConfig(
        grid=grid,
        epsilon=float(pick(args.epsilon, "epsilon", base.epsilon)),
        seed=int(pick(args.seed, "seed", base.seed)),
        max_iter=int(pick(args.max_iter, "max_iter", base.max_iter)),
        br_starts=int(pick(None, "br_starts", base.br_starts)),
        max_support=int(pick(None, "max_support", base.max_support)),
    )


def cmd_find_ne(args) -> int:
    game, file_gamma, search_section = _load_game_file(args.game_file)
    gamma = _resolve_gamma(args.gamma, file_gamma)
    config = _search_config(args, search_section)
    result = equilibrium.find_equilibria(game, gamma, config)
    _emit(report.dumps_json(report.search_report_obj(result)), args.out)
    return EXIT_OK


def cmd_chicken_case_study(args) -> int:
    if args.gamma is not None:
        gammas = np.array([args.gamma])
    else:
        if args.gamma_points < 1:
            raise InputError("--gamma-points must be >= 1")
        gammas = np.linspace(0.0, np.pi / 2, args.gamma_points)
    if args.phi is not None:
        phis = np.array([args.phi])
    else:
        if args.phi_points < 1:
            raise InputError("--phi-points must be >= 1")
        phis = np.linspace(0.0, np.pi, args.phi_points)
    try:
        rows = _sweep_rows(gammas, phis)
    except (casestudies.CaseStudyError, ewl.ProtocolError) as exc:
        raise InputError(str(exc)) from exc
    if args.format == "csv":
        header = ["gamma", "phi", "case", "ub_w", "ub_x", "ub_y", "ub_z",
                  "payoff_a", "payoff_b", "difference"]
        table = [[r["gamma"], r["phi"], r["case"], *r["u_b"],
                  r["payoff_a"], r["payoff_b"], r["difference"]] for r in rows]
        _emit(report.dumps_csv(header, table), args.out)
    else:
        obj = {
            "rows": [
                {"gamma": r["gamma"], "phi": r["phi"], "case": r["case"],
                 "u_b": [float(v) for v in r["u_b"]],
                 "payoff_a": r["payoff_a"], "payoff_b": r["payoff_b"],
                 "difference": r["difference"]}
                for r in rows
            ],
            "max_difference": max(r["difference"] for r in rows),
        }
        _emit(report.dumps_json(obj), args.out)
    return EXIT_OK


def threads() -> int:
    """Parallelism cap from QGAME_THREADS (>=1); sweeps chunk accordingly."""
    raw = os.environ.get("QGAME_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _sweep_rows(gammas, phis) -> list[dict]:
    """Case-study sweep, chunked over gamma across the thread cap; results
    are assembled in grid order regardless of completion order."""
    n_workers = min(threads(), len(gammas))
    if n_workers <= 1:
        return casestudies.case_study_sweep(gammas, phis)
    from concurrent.futures import ThreadPoolExecutor

    chunks = np.array_split(np.asarray(gammas, dtype=float), n_workers)
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        parts = list(pool.map(lambda chunk: casestudies.case_study_sweep(chunk, phis),
                              chunks))
    return [row for part in parts for row in part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgame",
        description="Analyze quantum 2x2 games played through the entangled "
                    "two-qubit protocol.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classical = sub.add_parser("classical", help="classical 2x2 analysis of a game file")
    p_classical.add_argument("game_file")
    p_classical.add_argument("--out", default=None)
    p_classical.set_defaults(func=cmd_classical)

    p_payoff = sub.add_parser("payoff", help="payoffs for one strategy pair, both routes")
    p_payoff.add_argument("game_file")
    p_payoff.add_argument("--gamma", type=float, default=None)
    p_payoff.add_argument("--ua", required=True, metavar="angles:t,a,b|vector:w,x,y,z")
    p_payoff.add_argument("--ub", required=True, metavar="angles:t,a,b|vector:w,x,y,z")
    p_payoff.add_argument("--out", default=None)
    p_payoff.set_defaults(func=cmd_payoff)

    p_find = sub.add_parser("find-ne", help="search and certify Nash equilibria")
    p_find.add_argument("game_file")
    p_find.add_argument("--gamma", type=float, default=None)
    p_find.add_argument("--seed", type=int, default=None)
    p_find.add_argument("--epsilon", type=float, default=None)
    p_find.add_argument("--grid", default=None, help="n_theta,n_alpha,n_beta")
    p_find.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p_find.add_argument("--out", default=None)
    p_find.set_defaults(func=cmd_find_ne)

    p_case = sub.add_parser("chicken-case-study",
                            help="classical-vs-quantum Chicken sweep")
    p_case.add_argument("--gamma", type=float, default=None, help="single gamma instead of a grid")
    p_case.add_argument("--phi", type=float, default=None, help="single phi instead of a grid")
    p_case.add_argument("--gamma-points", type=int, default=50)
    p_case.add_argument("--phi-points", type=int, default=50)
    p_case.add_argument("--format", choices=("json", "csv"), default="json")
    p_case.add_argument("--out", default=None)
    p_case.set_defaults(func=cmd_chicken_case_study)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
