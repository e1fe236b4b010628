"""Constructive Nash-equilibrium machinery for the quantum game.

Certification is exact up to eigensolver tolerance: the payoff is linear in
the deviating player's measure and quadratic-form-maximal over pure
strategies, so the best achievable unilateral improvement over ALL
probability measures is the top eigenvalue of the opponent-averaged payoff
form minus the current payoff.  Search combines classical-equilibrium
embeddings, support enumeration over a finite strategy grid, and
best-response (principal eigenvector) dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import classical as cls
from . import su2
from .classical import BimatrixGame
from .ewl import DiscreteMixedStrategy, EntanglerSetting, mixed_payoffs, payoff_tables
from .kernels import payoff_tables as kernel_tables
from .quadratic import averaged_matrix, best_response_pure

ENUMERATION_CAP = 16      # per-side strategy count above which enumeration is skipped
RESTRICTED_EPSILON = 1e-9


@dataclass(frozen=True, eq=False)
class EquilibriumCertificate:
    """A profile with its per-player deviation gaps and verdict."""
    mu_a: DiscreteMixedStrategy
    mu_b: DiscreteMixedStrategy
    payoff_a: float
    payoff_b: float
    gap_a: float
    gap_b: float
    epsilon: float
    certified: bool


def certify(game: BimatrixGame, gamma: float, mu_a: DiscreteMixedStrategy,
            mu_b: DiscreteMixedStrategy, epsilon: float) -> EquilibriumCertificate:
    """Exact deviation-gap certificate for a finite-support profile."""
    if epsilon < 0:
        raise ValueError(f"epsilon={epsilon!r} must be nonnegative")
    setting = EntanglerSetting(gamma)
    payoff_a, payoff_b = mixed_payoffs(game, setting, mu_a, mu_b)
    gap_a = best_response_pure(averaged_matrix(game, gamma, "A", mu_b)).value - payoff_a
    gap_b = best_response_pure(averaged_matrix(game, gamma, "B", mu_a)).value - payoff_b
    return EquilibriumCertificate(
        mu_a, mu_b, payoff_a, payoff_b, gap_a, gap_b, epsilon,
        certified=max(gap_a, gap_b) <= epsilon,
    )


def grid_deviation_value(game: BimatrixGame, gamma: float, player: str,
                         mu_opponent: DiscreteMixedStrategy, elements) -> float:
    """Best deviation payoff over a finite strategy set (verification oracle
    for the eigenvalue gap; never exceeds it)."""
    ug = su2.vectors(elements)
    uo = su2.vectors(mu_opponent.support)
    if player == "A":
        table = kernel_tables(gamma, ug, uo, game.a, game.b)[0]
        return float(np.max(table @ mu_opponent.probs))
    if player == "B":
        table = kernel_tables(gamma, uo, ug, game.a, game.b)[1]
        return float(np.max(mu_opponent.probs @ table))
    raise ValueError(f"player must be 'A' or 'B', got {player!r}")


# ---------------------------------------------------------------------------
# Best-response dynamics


@dataclass(frozen=True, eq=False)
class DynamicsStep:
    iteration: int
    payoff_a: float
    payoff_b: float
    u_a: np.ndarray
    u_b: np.ndarray


@dataclass(frozen=True, eq=False)
class DynamicsResult:
    trace: tuple[DynamicsStep, ...]
    mu_a: DiscreteMixedStrategy
    mu_b: DiscreteMixedStrategy
    converged: bool
    cycle: dict | None
    certificate: EquilibriumCertificate | None

    @property
    def iterations(self) -> int:
        return len(self.trace)


def _as_mixed(strategy) -> DiscreteMixedStrategy:
    if isinstance(strategy, DiscreteMixedStrategy):
        return strategy
    return DiscreteMixedStrategy.pure(strategy)


def _state_key(u_a: np.ndarray, u_b: np.ndarray) -> bytes:
    # u and -u are the same strategy, so hash the sign-canonical form
    ca = np.round(su2.canonical_sign(u_a), 9) + 0.0
    cb = np.round(su2.canonical_sign(u_b), 9) + 0.0
    return ca.tobytes() + cb.tobytes()


def best_response_dynamics(game: BimatrixGame, gamma: float, start_a, start_b,
                           tol: float = 1e-10, max_iter: int = 200,
                           epsilon: float = RESTRICTED_EPSILON,
                           cycle_window: int = 50) -> DynamicsResult:
    """Alternating principal-eigenvector replies until a fixed point.

    Convergence requires the strategy pair to repeat, not just the payoffs:
    constant-payoff cycles (matching-pennies style) must be reported as
    cycles.  Non-convergence is an outcome, not an error.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    setting = EntanglerSetting(gamma)
    mu_a, mu_b = _as_mixed(start_a), _as_mixed(start_b)
    trace: list[DynamicsStep] = []
    recent: dict[bytes, int] = {}
    prev_key = None
    prev_pay = None
    if len(mu_a) == 1 and len(mu_b) == 1:
        # starting at a fixed point then converges in one iteration
        prev_key = _state_key(mu_a.support[0].u, mu_b.support[0].u)
        prev_pay = mixed_payoffs(game, setting, mu_a, mu_b)
        recent[prev_key] = 0
    converged = False
    cycle = None
    for it in range(1, max_iter + 1):
        u_a = best_response_pure(averaged_matrix(game, gamma, "A", mu_b)).canonical
        mu_a = DiscreteMixedStrategy.pure(su2.from_vector(u_a))
        u_b = best_response_pure(averaged_matrix(game, gamma, "B", mu_a)).canonical
        mu_b = DiscreteMixedStrategy.pure(su2.from_vector(u_b))
        pay_a, pay_b = mixed_payoffs(game, setting, mu_a, mu_b)
        trace.append(DynamicsStep(it, pay_a, pay_b, u_a, u_b))
        key = _state_key(u_a, u_b)
        if key == prev_key and prev_pay is not None \
                and abs(pay_a - prev_pay[0]) < tol and abs(pay_b - prev_pay[1]) < tol:
            converged = True
            break
        if key in recent:
            period = it - recent[key]
            cycle = {
                "period": period,
                "first_seen": recent[key],
                "states": [
                    {"iteration": s.iteration, "payoff_a": s.payoff_a,
                     "payoff_b": s.payoff_b, "u_a": s.u_a, "u_b": s.u_b}
                    for s in trace[-period:]
                ],
            }
            break
        recent[key] = it
        if len(recent) > cycle_window:
            oldest = min(recent.values())
            for k, v in list(recent.items()):
                if v == oldest:
                    del recent[k]
        prev_key = key
        prev_pay = (pay_a, pay_b)
    certificate = certify(game, gamma, mu_a, mu_b, epsilon) if converged else None
    return DynamicsResult(tuple(trace), mu_a, mu_b, converged, cycle, certificate)


# ---------------------------------------------------------------------------
# Finite restricted games


@dataclass(frozen=True, eq=False)
class FiniteRestrictedGame:
    """The quantum game restricted to finite strategy lists, tabulated."""
    game: BimatrixGame
    gamma: float
    strategies_a: tuple[su2.Su2Element, ...]
    strategies_b: tuple[su2.Su2Element, ...]
    table_a: np.ndarray
    table_b: np.ndarray


def build_restricted_game(game: BimatrixGame, gamma: float,
                          grid_a, grid_b) -> FiniteRestrictedGame:
    """Tabulate simulator payoffs for every strategy pair."""
    grid_a = tuple(grid_a)
    grid_b = tuple(grid_b)
    if not grid_a or not grid_b:
        raise ValueError("strategy grids must be nonempty")
    table_a, table_b = payoff_tables(game, EntanglerSetting(gamma), grid_a, grid_b)
    return FiniteRestrictedGame(game, gamma, grid_a, grid_b, table_a, table_b)


@dataclass(frozen=True, eq=False)
class RestrictedEquilibrium:
    """An equilibrium of the tabulated game, with restricted-game gaps."""
    support_a: tuple[int, ...]
    support_b: tuple[int, ...]
    probs_a: np.ndarray
    probs_b: np.ndarray
    value_a: float
    value_b: float
    gap_a: float
    gap_b: float
    method: str


@dataclass(frozen=True, eq=False)
class NECandidate:
    """Restricted equilibrium plus its continuous-game certificate."""
    restricted: RestrictedEquilibrium
    mu_a: DiscreteMixedStrategy
    mu_b: DiscreteMixedStrategy
    certificate: EquilibriumCertificate


def _restricted_gaps(table_a, table_b, p_full, q_full):
    value_a = float(p_full @ table_a @ q_full)
    value_b = float(p_full @ table_b @ q_full)
    gap_a = float(np.max(table_a @ q_full)) - value_a
    gap_b = float(np.max(p_full @ table_b)) - value_b
    return value_a, value_b, gap_a, gap_b


def _pure_cells(table_a, table_b):
    m, n = table_a.shape
    col_max = table_a.max(axis=0)
    row_max = table_b.max(axis=1)
    out = []
    for i in range(m):
        for j in range(n):
            gap_a = col_max[j] - table_a[i, j]
            gap_b = row_max[i] - table_b[i, j]
            if max(gap_a, gap_b) <= RESTRICTED_EPSILON:
                out.append(((i,), (j,), np.array([1.0]), np.array([1.0]), "pure_cell"))
    return out


_SINGULAR_CAP = 1000  # singular indifference systems solved per support size


def _indifference_solutions(table, supports_own, supports_opp, chunk=128):
    """Solve, for every (own-support, opp-support) pair of equal size k, the
    k x k system making the owner indifferent across its support; the
    unknown is the opponent mixture.  Returns (N_own, N_opp, k) solutions
    with NaN rows where the system is singular or inconsistent.

    Singular systems come from payoff ties; consistent ones have a solution
    continuum that only duplicates equilibria found elsewhere, so after
    _SINGULAR_CAP minimum-norm solves the rest are skipped.
    """
    k = supports_own.shape[1]
    n_own, n_opp = len(supports_own), len(supports_opp)
    sols = np.full((n_own, n_opp, k), np.nan)
    rhs = np.zeros(k)
    rhs[-1] = 1.0
    singular_budget = _SINGULAR_CAP
    for lo in range(0, n_own, chunk):
        hi = min(lo + chunk, n_own)
        sub = table[supports_own[lo:hi, :, None, None], supports_opp[None, None, :, :]]
        # sub: (c, k, n_opp, k) -> (c, n_opp, k, k)
        sub = np.transpose(sub, (0, 2, 1, 3))
        systems = np.empty(sub.shape[:2] + (k, k))
        systems[:, :, : k - 1, :] = sub[:, :, :1, :] - sub[:, :, 1:, :]
        systems[:, :, k - 1, :] = 1.0
        dets = np.linalg.det(systems)
        regular = np.abs(dets) > 1e-10
        if np.any(regular):
            sols_reg = np.linalg.solve(systems[regular], rhs)
            block = sols[lo:hi]
            block[regular] = sols_reg
            sols[lo:hi] = block
        if singular_budget > 0 and not np.all(regular):
            for ci, oj in np.argwhere(~regular):
                sol, *_ = np.linalg.lstsq(systems[ci, oj], rhs, rcond=None)
                if np.linalg.norm(systems[ci, oj] @ sol - rhs) < 1e-9:
                    sols[lo + ci, oj] = sol
                singular_budget -= 1
                if singular_budget <= 0:
                    break
    return sols


def _payoff_classes(table_a, table_b, axis: int) -> list[int]:
    """Indices of one representative per payoff-equivalent strategy class
    (identical rows for axis 0, identical columns for axis 1)."""
    rows_a = table_a if axis == 0 else table_a.T
    rows_b = table_b if axis == 0 else table_b.T
    scale = max(1.0, np.abs(rows_a).max(), np.abs(rows_b).max())
    sig = np.round(np.hstack([rows_a, rows_b]) / scale, 10)
    seen = {}
    for idx, row in enumerate(map(tuple, sig)):
        seen.setdefault(row, idx)
    return sorted(seen.values())


def _enumerate_supports(table_a, table_b, max_support):
    # Payoff-equivalent strategies (duplicate rows/columns, rampant at
    # gamma=0) only multiply redundant singular systems; enumerate over one
    # representative per class.
    reps_a = _payoff_classes(table_a, table_b, axis=0)
    reps_b = _payoff_classes(table_a, table_b, axis=1)
    red_a = table_a[np.ix_(reps_a, reps_b)]
    red_b = table_b[np.ix_(reps_a, reps_b)]
    m, n = red_a.shape
    results = [
        (tuple(reps_a[i] for i in sa), tuple(reps_b[j] for j in sb), p, q, method)
        for sa, sb, p, q, method in _pure_cells(red_a, red_b)
    ]
    for k in range(2, min(max_support, m, n) + 1):
        supports_a = np.array(list(combinations(range(m), k)))
        supports_b = np.array(list(combinations(range(n), k)))
        # q solves A's indifference across S_A; p solves B's across S_B.
        q_sols = _indifference_solutions(red_a, supports_a, supports_b)
        p_sols = _indifference_solutions(red_b.T, supports_b, supports_a)
        q_ok = np.all(np.isfinite(q_sols), axis=2) & np.all(q_sols >= -1e-9, axis=2)
        p_ok = np.all(np.isfinite(p_sols), axis=2) & np.all(p_sols >= -1e-9, axis=2)
        feasible = np.argwhere(q_ok & p_ok.T)
        for ia, ib in feasible:
            sa = tuple(reps_a[int(v)] for v in supports_a[ia])
            sb = tuple(reps_b[int(v)] for v in supports_b[ib])
            q = np.clip(q_sols[ia, ib], 0.0, None)
            p = np.clip(p_sols[ib, ia], 0.0, None)
            results.append((sa, sb, p / p.sum(), q / q.sum(), "support_enumeration"))
    return results


def _table_dynamics(table_a, table_b, rng, starts=64, max_iter=500):
    """Pure best-reply iteration on the tables; fallback when enumeration is
    infeasible.  Finds pure restricted equilibria only."""
    m, n = table_a.shape
    cells = set()
    for _ in range(starts):
        i, j = int(rng.integers(m)), int(rng.integers(n))
        seen = set()
        for _ in range(max_iter):
            i = int(np.argmax(table_a[:, j]))
            j = int(np.argmax(table_b[i, :]))
            if (i, j) in seen:
                break
            seen.add((i, j))
        gap_a = table_a[:, j].max() - table_a[i, j]
        gap_b = table_b[i, :].max() - table_b[i, j]
        if max(gap_a, gap_b) <= RESTRICTED_EPSILON:
            cells.add((i, j))
    return [((i,), (j,), np.array([1.0]), np.array([1.0]), "table_dynamics")
            for i, j in sorted(cells)]


def _mixed_from_support(strategies, support, probs) -> DiscreteMixedStrategy:
    keep = probs > 1e-12
    elements = tuple(strategies[s] for s, k in zip(support, keep) if k)
    weights = probs[keep]
    return DiscreteMixedStrategy(elements, weights / weights.sum())


def finite_mixed_ne(restricted: FiniteRestrictedGame, max_support: int = 4,
                    continuum_epsilon: float = 1e-3,
                    rng: np.random.Generator | None = None) -> list[NECandidate]:
    """Equilibria of the restricted game, each re-certified against the
    continuous game.

    Support enumeration solves the indifference system for every pair of
    equal-size supports up to ``max_support``.  Above ENUMERATION_CAP
    strategies per side that is infeasible and pure best-reply iteration on
    the tables is used instead.
    """
    if max_support < 1:
        raise ValueError("max_support must be >= 1")
    table_a, table_b = restricted.table_a, restricted.table_b
    m, n = table_a.shape
    if max(m, n) > ENUMERATION_CAP:
        rng = rng if rng is not None else np.random.default_rng(0)
        raw = _table_dynamics(table_a, table_b, rng)
    else:
        raw = _enumerate_supports(table_a, table_b, max_support)

    out: list[NECandidate] = []
    seen: set[tuple] = set()
    for sa, sb, p, q, method in raw:
        p_full = np.zeros(m)
        q_full = np.zeros(n)
        p_full[list(sa)] = p
        q_full[list(sb)] = q
        value_a, value_b, gap_a, gap_b = _restricted_gaps(table_a, table_b, p_full, q_full)
        if max(gap_a, gap_b) > RESTRICTED_EPSILON:
            continue
        key = (tuple(np.round(p_full, 9)), tuple(np.round(q_full, 9)))
        if key in seen:
            continue
        seen.add(key)
        mu_a = _mixed_from_support(restricted.strategies_a, sa, p)
        mu_b = _mixed_from_support(restricted.strategies_b, sb, q)
        cert = certify(restricted.game, restricted.gamma, mu_a, mu_b, continuum_epsilon)
        out.append(NECandidate(
            RestrictedEquilibrium(tuple(sa), tuple(sb), p, q,
                                  value_a, value_b, gap_a, gap_b, method),
            mu_a, mu_b, cert,
        ))
    return out


# ---------------------------------------------------------------------------
# End-to-end search


@dataclass(frozen=True)
class SearchConfig:
    grid: tuple[int, int, int] = (3, 4, 4)
    epsilon: float = 1e-3          # certification bar for searched witnesses
    epsilon_exact: float = 1e-9    # bar for embedded/analytic candidates
    seed: int = 0
    br_starts: int = 8
    max_iter: int = 200
    tol: float = 1e-10
    max_support: int = 4


@dataclass(frozen=True, eq=False)
class SearchWitness:
    method: str
    certificate: EquilibriumCertificate
    trace_length: int = 0
    restricted_gaps: tuple[float, float] | None = None


@dataclass(frozen=True, eq=False)
class SearchReport:
    game_name: str
    gamma: float
    config: SearchConfig
    witnesses: tuple[SearchWitness, ...]
    attempts: dict = field(default_factory=dict)

    @property
    def search_failed(self) -> bool:
        return len(self.witnesses) == 0


_METHOD_ORDER = {
    "classical_pure_embedding": 0,
    "classical_mixed_embedding": 1,
    "pure_cell": 2,
    "support_enumeration": 3,
    "table_dynamics": 4,
    "br_dynamics": 5,
}


def _profile_key(mu_a: DiscreteMixedStrategy, mu_b: DiscreteMixedStrategy) -> tuple:
    def side(mu):
        atoms = sorted(
            (tuple(np.round(su2.canonical_sign(el.u), 9) + 0.0), round(float(p), 9))
            for el, p in zip(mu.support, mu.probs)
        )
        return tuple(atoms)
    return (side(mu_a), side(mu_b))


def find_equilibria(game: BimatrixGame, gamma: float,
                    config: SearchConfig | None = None) -> SearchReport:
    """Search pipeline: classical embeddings, support enumeration over a
    sign-deduplicated angle grid, and multi-start best-response dynamics.
    Only certified profiles are reported; an empty list is a legal outcome.
    """
    config = config or SearchConfig()
    rng = np.random.default_rng(config.seed)
    attempts = {"candidates": 0, "certified": 0, "br_runs": 0, "br_converged": 0}
    found: list[SearchWitness] = []

    def consider(method, cert, trace_length=0, restricted_gaps=None):
        attempts["candidates"] += 1
        if cert.certified:
            attempts["certified"] += 1
            found.append(SearchWitness(method, cert, trace_length, restricted_gaps))

    # Classical equilibria embedded through the one-parameter family.
    for i, j in cls.pure_nash(game):
        mu_a = DiscreteMixedStrategy.pure(su2.classical_strategy(1.0 - i))
        mu_b = DiscreteMixedStrategy.pure(su2.classical_strategy(1.0 - j))
        consider("classical_pure_embedding",
                 certify(game, gamma, mu_a, mu_b, config.epsilon_exact))
    mixed = cls.mixed_nash_indifference(game)
    if mixed.status == "unique":
        mu_a = DiscreteMixedStrategy.pure(su2.classical_strategy(mixed.profile.p))
        mu_b = DiscreteMixedStrategy.pure(su2.classical_strategy(mixed.profile.q))
        consider("classical_mixed_embedding",
                 certify(game, gamma, mu_a, mu_b, config.epsilon_exact))

    # Support enumeration on the deduplicated grid.
    grid_elements = su2.payoff_distinct(su2.grid(*config.grid))
    restricted = build_restricted_game(game, gamma, grid_elements, grid_elements)
    for cand in finite_mixed_ne(restricted, config.max_support,
                                continuum_epsilon=config.epsilon, rng=rng):
        consider(cand.restricted.method, cand.certificate,
                 restricted_gaps=(cand.restricted.gap_a, cand.restricted.gap_b))

    # Best-response dynamics from deterministic seeded starts.
    starts = [(su2.identity(), su2.identity())]
    starts += [(su2.haar_sample(rng), su2.haar_sample(rng))
               for _ in range(max(0, config.br_starts - 1))]
    for start_a, start_b in starts:
        attempts["br_runs"] += 1
        result = best_response_dynamics(game, gamma, start_a, start_b,
                                        tol=config.tol, max_iter=config.max_iter,
                                        epsilon=config.epsilon)
        if result.converged:
            attempts["br_converged"] += 1
            consider("br_dynamics", result.certificate, trace_length=result.iterations)

    unique: dict[tuple, SearchWitness] = {}
    for witness in found:
        key = _profile_key(witness.certificate.mu_a, witness.certificate.mu_b)
        if key not in unique or _METHOD_ORDER[witness.method] < _METHOD_ORDER[unique[key].method]:
            unique[key] = witness
    ordered = sorted(
        unique.items(),
        key=lambda kv: (_METHOD_ORDER[kv[1].method],
                        -round(kv[1].certificate.payoff_a + kv[1].certificate.payoff_b, 9),
                        kv[0]),
    )
    return SearchReport(game.name, gamma, config,
                        tuple(w for _, w in ordered), attempts)
