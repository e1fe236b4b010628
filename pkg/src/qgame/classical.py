"""Classical analysis of 2x2 bimatrix games.

Row player A has payoff matrix ``a``, column player B has ``b``; entry (i, j)
is the payoff when A picks row i and B picks column j.  Mixed strategies are
(p, 1-p) over rows and (q, 1-q) over columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GameError(ValueError):
    """Raised for malformed payoff matrices or profiles."""


@dataclass(frozen=True, eq=False)
class BimatrixGame:
    name: str
    row_labels: tuple[str, str]
    col_labels: tuple[str, str]
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        for attr in ("a", "b"):
            m = np.asarray(getattr(self, attr), dtype=float)
            if m.shape != (2, 2):
                raise GameError(f"payoff matrix {attr!r} must be 2x2, got shape {m.shape}")
            if not np.all(np.isfinite(m)):
                raise GameError(f"payoff matrix {attr!r} has non-finite entries")
            object.__setattr__(self, attr, m)
        for attr in ("row_labels", "col_labels"):
            labels = tuple(str(s) for s in getattr(self, attr))
            if len(labels) != 2:
                raise GameError(f"{attr} must have exactly two entries")
            object.__setattr__(self, attr, labels)

    def payoff_bound(self) -> float:
        """max |entry| over both matrices; bounds every expected payoff."""
        return float(max(np.abs(self.a).max(), np.abs(self.b).max()))


@dataclass(frozen=True)
class ClassicalMixedProfile:
    p: float  # probability A plays row 1
    q: float  # probability B plays column 1

    def __post_init__(self):
        for name, v in (("p", self.p), ("q", self.q)):
            if not (np.isfinite(v) and 0.0 <= v <= 1.0):
                raise GameError(f"{name}={v!r} outside [0, 1]")


def make_game(name, a, b, row_labels=("1", "2"), col_labels=("1", "2")) -> BimatrixGame:
    return BimatrixGame(name, tuple(row_labels), tuple(col_labels), np.asarray(a), np.asarray(b))


def builtin_game(name: str) -> BimatrixGame:
    """Bundled named games (payoffs are the standard textbook values)."""
    try:
        factory = _BUILTIN[name]
    except KeyError:
        raise GameError(f"unknown builtin game {name!r}; choose from {sorted(_BUILTIN)}") from None
    return factory()


_BUILTIN = {
    "chicken": lambda: make_game(
        "chicken", [[-25, 50], [0, 15]], [[-25, 0], [50, 15]],
        row_labels=("H", "D"), col_labels=("H", "D")),
    "prisoners_dilemma": lambda: make_game(
        "prisoners_dilemma", [[3, 0], [5, 1]], [[3, 5], [0, 1]],
        row_labels=("C", "D"), col_labels=("C", "D")),
    "battle_of_sexes": lambda: make_game(
        "battle_of_sexes", [[2, 0], [0, 1]], [[1, 0], [0, 2]],
        row_labels=("O", "F"), col_labels=("O", "F")),
    "matching_pennies": lambda: make_game(
        "matching_pennies", [[1, -1], [-1, 1]], [[-1, 1], [1, -1]],
        row_labels=("H", "T"), col_labels=("H", "T")),
}

BUILTIN_GAMES = tuple(sorted(_BUILTIN))


def expected_payoffs(game: BimatrixGame, profile: ClassicalMixedProfile) -> tuple[float, float]:
    """Bilinear expectations (E_A, E_B) under independent mixing."""
    p, q = profile.p, profile.q
    weights = np.array([[p * q, p * (1 - q)], [(1 - p) * q, (1 - p) * (1 - q)]])
    return float(np.sum(weights * game.a)), float(np.sum(weights * game.b))


def pure_nash(game: BimatrixGame) -> list[tuple[int, int]]:
    """All cells (i, j) where neither player gains by a unilateral switch
    (weak inequalities, so ties are kept)."""
    out = []
    for i in range(2):
        for j in range(2):
            if game.a[i, j] >= game.a[1 - i, j] and game.b[i, j] >= game.b[i, 1 - j]:
                out.append((i, j))
    return out


@dataclass(frozen=True)
class MixedNashResult:
    """Outcome of the two indifference equations.

    status is "unique" (profile present), "degenerate" (a denominator
    vanishes: indifference identically true or unsolvable), or
    "outside_unit_interval" (solutions exist but are not probabilities).
    """
    status: str
    profile: ClassicalMixedProfile | None = None
    payoffs: tuple[float, float] | None = None


def mixed_nash_indifference(game: BimatrixGame) -> MixedNashResult:
    """Solve the interior-equilibrium indifference equations.

    q* makes A indifferent between rows; p* makes B indifferent between
    columns.  Scale-relative tolerance guards the vanishing-denominator case.
    """
    a, b = game.a, game.b
    den_q = a[0, 0] - a[0, 1] - a[1, 0] + a[1, 1]
    den_p = b[0, 0] - b[0, 1] - b[1, 0] + b[1, 1]
    scale = max(game.payoff_bound(), 1.0)
    if abs(den_q) <= 1e-12 * scale or abs(den_p) <= 1e-12 * scale:
        return MixedNashResult("degenerate")
    q = (a[1, 1] - a[0, 1]) / den_q
    p = (b[1, 1] - b[1, 0]) / den_p
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        return MixedNashResult("outside_unit_interval")
    profile = ClassicalMixedProfile(float(p), float(q))
    return MixedNashResult("unique", profile, expected_payoffs(game, profile))


@dataclass(frozen=True)
class DominanceReport:
    """Weakly dominant strategies per player: (index, strict) pairs.

    A row is dominant if it is at least as good against every column; strict
    when some comparison is strictly better.
    """
    rows: tuple[tuple[int, bool], ...] = field(default=())
    cols: tuple[tuple[int, bool], ...] = field(default=())


def dominant_strategies(game: BimatrixGame) -> DominanceReport:
    def scan(table: np.ndarray) -> tuple[tuple[int, bool], ...]:
        found = []
        for i in range(2):
            diffs = table[i] - table[1 - i]
            if np.all(diffs >= 0):
                found.append((i, bool(np.any(diffs > 0))))
        return tuple(found)

    return DominanceReport(rows=scan(game.a), cols=scan(game.b.T))


def pareto_optimal_profiles(game: BimatrixGame) -> list[tuple[int, int]]:
    """Cells not Pareto-dominated: no other cell is at least as good for both
    players and strictly better for one."""
    cells = [(i, j) for i in range(2) for j in range(2)]
    out = []
    for i, j in cells:
        dominated = any(
            game.a[k, l] >= game.a[i, j] and game.b[k, l] >= game.b[i, j]
            and (game.a[k, l] > game.a[i, j] or game.b[k, l] > game.b[i, j])
            for k, l in cells if (k, l) != (i, j)
        )
        if not dominated:
            out.append((i, j))
    return out
