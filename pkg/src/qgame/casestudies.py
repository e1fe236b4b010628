"""Classical-vs-quantum asymmetric scenario for the Chicken game.

Player A is restricted to the classical one-parameter family, vector
u_A = (cos(phi/2), sin(phi/2), 0, 0); player B may use any strategy
u_B = (w, x, y, z).  Closed forms below evaluate both payoffs and, for the
bundled Chicken matrix, their difference; an explicit counter-strategy
keeps the difference nonpositive everywhere and strictly negative except
at phi = 0 with gamma <= pi/4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import BimatrixGame, builtin_game
from .ewl import EntanglerSetting

_BOUNDARY_TOL = 1e-12


class CaseStudyError(ValueError):
    """Raised for scenarios outside this module's domain."""


@dataclass(frozen=True, eq=False)
class AsymmetricScenario:
    game: BimatrixGame
    gamma: float
    phi: float
    u_b: np.ndarray

    def __post_init__(self):
        EntanglerSetting(self.gamma)
        if not (np.isfinite(self.phi) and 0.0 <= self.phi <= np.pi):
            raise CaseStudyError(f"phi={self.phi!r} outside [0, pi]")
        u = np.asarray(self.u_b, dtype=float)
        if u.shape != (4,) or abs(np.linalg.norm(u) - 1.0) > 1e-9:
            raise CaseStudyError("u_b must be a unit 4-vector")
        object.__setattr__(self, "u_b", u / np.linalg.norm(u))

    @property
    def u_a(self) -> np.ndarray:
        return np.array([np.cos(self.phi / 2), np.sin(self.phi / 2), 0.0, 0.0])


def _brackets(gamma: float, phi: float, u_b: np.ndarray) -> np.ndarray:
    """The four outcome probabilities as closed-form brackets."""
    w, x, y, z = u_b
    ca, sa = np.cos(phi / 2), np.sin(phi / 2)
    cg, sg = np.cos(gamma), np.sin(gamma)
    return np.array([
        z * z * ca * ca * cg * cg + (w * ca - y * sa * sg) ** 2,
        y * y * ca * ca * cg * cg + (z * sa * sg + x * ca) ** 2,
        z * z * sa * sa * cg * cg + (y * ca * sg + w * sa) ** 2,
        y * y * sa * sa * cg * cg + (z * ca * sg - x * sa) ** 2,
    ])


def asym_payoffs(scenario: AsymmetricScenario) -> tuple[float, float]:
    """Payoffs (A, B) from the closed form; agrees with the simulator."""
    probs = _brackets(scenario.gamma, scenario.phi, scenario.u_b)
    return (float(probs @ scenario.game.a.reshape(4)),
            float(probs @ scenario.game.b.reshape(4)))


def _require_chicken(game: BimatrixGame) -> None:
    chicken = builtin_game("chicken")
    if not (np.array_equal(game.a, chicken.a) and np.array_equal(game.b, chicken.b)):
        raise CaseStudyError("the closed-form difference hard-codes the Chicken payoffs")


def chicken_payoff_difference(scenario: AsymmetricScenario) -> float:
    """<$_A> - <$_B> for the Chicken matrix, via the specialized closed form."""
    _require_chicken(scenario.game)
    w, x, y, z = scenario.u_b
    ca, sa = np.cos(scenario.phi / 2), np.sin(scenario.phi / 2)
    cg, sg = np.cos(scenario.gamma), np.sin(scenario.gamma)
    return float(50.0 * (cg * cg * (y * y * ca * ca - z * z * sa * sa)
                         + (x * ca + z * sa * sg) ** 2
                         - (w * sa + y * ca * sg) ** 2))


@dataclass(frozen=True, eq=False)
class CounterStrategy:
    u_b: np.ndarray
    case: str  # "case1", "case2" or "case3"


def chicken_counter_strategy(gamma: float, phi: float) -> CounterStrategy:
    """B's explicit reply keeping <$_A> - <$_B> <= 0 against classical phi.

    Dispatch at the boundaries: gamma = pi/2 goes to case 2 (strict for all
    phi); phi = 0 with gamma < pi/2 goes to case 3, where only equality is
    achievable when gamma <= pi/4.
    """
    EntanglerSetting(gamma)
    if not (np.isfinite(phi) and 0.0 <= phi <= np.pi):
        raise CaseStudyError(f"phi={phi!r} outside [0, pi]")
    if abs(gamma - np.pi / 2) <= _BOUNDARY_TOL:
        r = 1.0 / np.sqrt(2.0)
        return CounterStrategy(np.array([r, 0.0, r, 0.0]), "case2")
    if phi <= _BOUNDARY_TOL:
        if gamma > np.pi / 4:
            return CounterStrategy(np.array([0.0, 0.0, 1.0, 0.0]), "case3")
        return CounterStrategy(np.array([1.0, 0.0, 0.0, 0.0]), "case3")
    half = phi / 2
    u = np.array([np.sin(half) * np.cos(gamma), np.sin(half) * np.sin(gamma),
                  0.0, -np.cos(half)])
    return CounterStrategy(u, "case1")


def case_study_sweep(gammas, phis) -> list[dict]:
    """One row per (gamma, phi): the chosen reply, both payoffs and their
    difference, for the bundled Chicken game."""
    gammas = np.atleast_1d(np.asarray(gammas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    if gammas.size == 0 or phis.size == 0:
        raise CaseStudyError("sweep grids must be nonempty")
    chicken = builtin_game("chicken")
    rows = []
    for gamma in gammas:
        for phi in phis:
            reply = chicken_counter_strategy(gamma, phi)
            scenario = AsymmetricScenario(chicken, float(gamma), float(phi), reply.u_b)
            pay_a, pay_b = asym_payoffs(scenario)
            rows.append({
                "gamma": float(gamma),
                "phi": float(phi),
                "case": reply.case,
                "u_b": reply.u_b,
                "payoff_a": pay_a,
                "payoff_b": pay_b,
                "difference": chicken_payoff_difference(scenario),
            })
    return rows
