import numpy as np
import pytest

from qgame import casestudies, ewl, su2
from qgame.casestudies import (
    AsymmetricScenario,
    asym_payoffs,
    case_study_sweep,
    chicken_counter_strategy,
    chicken_payoff_difference,
)
from qgame.classical import builtin_game, make_game

CHICKEN = builtin_game("chicken")


def scenario(gamma, phi, u_b):
    return AsymmetricScenario(CHICKEN, gamma, phi, np.asarray(u_b, dtype=float))


def simulator_payoffs(sc):
    """Oracle: run the protocol for the scenario's strategy pair."""
    u_a = su2.from_vector(sc.u_a)
    u_b = su2.from_vector(sc.u_b)
    return ewl.pure_payoffs(sc.game, ewl.EntanglerSetting(sc.gamma), u_a, u_b)


def test_asym_payoffs_both_hawk():
    assert np.allclose(asym_payoffs(scenario(0.7, 0.0, [1, 0, 0, 0])), (-25, -25), atol=1e-12)


def test_asym_payoffs_dove_hawk():
    assert np.allclose(asym_payoffs(scenario(0.0, np.pi, [1, 0, 0, 0])), (0, 50), atol=1e-12)


def test_asym_payoffs_match_simulator():
    rng = np.random.default_rng(12)
    for _ in range(300):
        sc = scenario(rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi),
                      su2.haar_sample(rng).u)
        assert np.allclose(asym_payoffs(sc), simulator_payoffs(sc), atol=1e-10)


def test_difference_consistent_with_payoffs():
    rng = np.random.default_rng(40)
    for _ in range(100):
        sc = scenario(rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi),
                      su2.haar_sample(rng).u)
        pay_a, pay_b = asym_payoffs(sc)
        assert abs(chicken_payoff_difference(sc) - (pay_a - pay_b)) <= 1e-10


def test_difference_rejects_other_games():
    other = make_game("pd", [[3, 0], [5, 1]], [[3, 5], [0, 1]])
    sc = AsymmetricScenario(other, 0.4, 0.4, np.array([1.0, 0, 0, 0]))
    with pytest.raises(casestudies.CaseStudyError):
        chicken_payoff_difference(sc)


def test_case1_identity():
    rng = np.random.default_rng(3)
    for _ in range(60):
        gamma = rng.uniform(0, np.pi / 2 - 1e-3)
        phi = rng.uniform(1e-3, np.pi)
        reply = chicken_counter_strategy(gamma, phi)
        assert reply.case == "case1"
        diff = chicken_payoff_difference(scenario(gamma, phi, reply.u_b))
        closed_form = -50 * np.cos(gamma) ** 2 * np.sin(phi / 2) ** 2
        assert abs(diff - closed_form) <= 1e-10


def test_case_dispatch_spot_values():
    # gamma=0, phi=pi: the case-1 reply degenerates to the identity vector
    reply = chicken_counter_strategy(0.0, np.pi)
    assert reply.case == "case1"
    assert np.allclose(reply.u_b, [1, 0, 0, 0], atol=1e-12)
    assert np.isclose(chicken_payoff_difference(scenario(0.0, np.pi, reply.u_b)),
                      -50.0, atol=1e-10)

    # maximal entanglement routes to case 2 with difference -25(1+sin(phi))
    r = 1 / np.sqrt(2)
    for phi in np.linspace(0, np.pi, 7):
        reply = chicken_counter_strategy(np.pi / 2, phi)
        assert reply.case == "case2"
        assert np.allclose(reply.u_b, [r, 0, r, 0], atol=1e-12)
        diff = chicken_payoff_difference(scenario(np.pi / 2, phi, reply.u_b))
        assert abs(diff - (-25 * (1 + np.sin(phi)))) <= 1e-10
    assert np.isclose(
        chicken_payoff_difference(scenario(np.pi / 2, 0.0,
                                           chicken_counter_strategy(np.pi / 2, 0.0).u_b)),
        -25.0, atol=1e-10)

    # phi=0 below the quarter-turn threshold: only equality is achievable
    reply = chicken_counter_strategy(np.pi / 4, 0.0)
    assert reply.case == "case3"
    assert reply.u_b[1] == 0.0 and reply.u_b[2] == 0.0
    assert abs(chicken_payoff_difference(scenario(np.pi / 4, 0.0, reply.u_b))) <= 1e-12

    # phi=0 above the threshold: the sigma_y reply is strictly better
    reply = chicken_counter_strategy(0.9, 0.0)
    assert reply.case == "case3"
    assert np.allclose(reply.u_b, [0, 0, 1, 0], atol=1e-12)
    diff = chicken_payoff_difference(scenario(0.9, 0.0, reply.u_b))
    assert abs(diff - 50 * (1 - 2 * np.sin(0.9) ** 2)) <= 1e-10
    assert diff < 0


def test_case3_vector_at_maximal_entanglement():
    # the sigma_y strategy evaluated at gamma=pi/2 gives the -50 extreme
    diff = chicken_payoff_difference(scenario(np.pi / 2, 0.0, [0, 0, 1, 0]))
    assert np.isclose(diff, -50.0, atol=1e-10)


def test_counter_strategy_unit_vectors():
    rng = np.random.default_rng(8)
    for _ in range(50):
        reply = chicken_counter_strategy(rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi))
        assert abs(np.linalg.norm(reply.u_b) - 1) < 1e-12


def test_advantage_sweep_coarse():
    gammas = np.linspace(0, np.pi / 2, 12)
    phis = np.linspace(0, np.pi, 12)
    rows = case_study_sweep(gammas, phis)
    assert len(rows) == 144
    for row in rows:
        assert row["difference"] <= 1e-10
        equality_region = row["phi"] <= 1e-12 and row["gamma"] <= np.pi / 4 + 1e-12
        if not equality_region:
            assert row["difference"] <= -1e-6


def test_scenario_validation():
    with pytest.raises(casestudies.CaseStudyError):
        AsymmetricScenario(CHICKEN, 0.3, -0.1, np.array([1.0, 0, 0, 0]))
    with pytest.raises(casestudies.CaseStudyError):
        AsymmetricScenario(CHICKEN, 0.3, 0.1, np.array([1.0, 1.0, 0, 0]))
    with pytest.raises(ewl.ProtocolError):
        AsymmetricScenario(CHICKEN, 3.0, 0.1, np.array([1.0, 0, 0, 0]))
    with pytest.raises(casestudies.CaseStudyError):
        case_study_sweep([], [0.1])
