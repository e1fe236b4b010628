"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured figure (run with ``pytest -s tests/test_acceptance.py`` to see
them).  Tolerances are fixed here and nowhere else."""

import time

import numpy as np

from qgame import classical, ewl, quadratic, su2
from qgame.casestudies import AsymmetricScenario, case_study_sweep, chicken_payoff_difference
from qgame.classical import ClassicalMixedProfile, builtin_game
from qgame.cli import main as cli_main
from qgame.equilibrium import SearchConfig, certify, find_equilibria
from qgame.ewl import DiscreteMixedStrategy, EntanglerSetting

CHICKEN = builtin_game("chicken")


def _report(criterion, detail):
    print(f"\n[acceptance] criterion {criterion}: PASS ({detail})")


def test_criterion_1_oracle_equivalence():
    """Quadratic-form payoffs match the protocol simulator on 1000 seeded
    random triples within 1e-10, in under 5 seconds."""
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        gamma = rng.uniform(0, np.pi / 2)
        u_a, u_b = su2.haar_sample(rng), su2.haar_sample(rng)
        sim_a, sim_b = ewl.pure_payoffs(CHICKEN, EntanglerSetting(gamma), u_a, u_b)
        quad_a = quadratic.payoff_matrix_A(CHICKEN, gamma, u_b.u).value(u_a.u)
        quad_b = quadratic.payoff_matrix_B(CHICKEN, gamma, u_a.u).value(u_b.u)
        worst = max(worst, abs(quad_a - sim_a), abs(quad_b - sim_b))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-10
    assert elapsed < 5.0
    _report(1, f"max |quad - sim| = {worst:.2e} over 1000 triples in {elapsed:.2f}s")


def test_criterion_2_classical_embedding():
    """Payoffs of the one-parameter family equal the classical expectations
    at p = cos^2(theta/2) for gamma in {0, pi/4, pi/2} on a 9x9 theta grid."""
    thetas = np.linspace(0, np.pi, 9)
    worst = 0.0
    for gamma in (0.0, np.pi / 4, np.pi / 2):
        setting = EntanglerSetting(gamma)
        for theta_a in thetas:
            for theta_b in thetas:
                quantum = ewl.pure_payoffs(CHICKEN, setting,
                                           su2.from_angles(theta_a, 0, 0),
                                           su2.from_angles(theta_b, 0, 0))
                profile = ClassicalMixedProfile(np.cos(theta_a / 2) ** 2,
                                                np.cos(theta_b / 2) ** 2)
                expected = classical.expected_payoffs(CHICKEN, profile)
                worst = max(worst, abs(quantum[0] - expected[0]),
                            abs(quantum[1] - expected[1]))
    assert worst <= 1e-10
    _report(2, f"max embedding error = {worst:.2e} over 3 gammas x 81 pairs")


def test_criterion_3_chicken_classical_layer():
    """Pure equilibria exactly {(H,D),(D,H)}; interior mixture (7/12, 7/12)
    with payoffs (6.25, 6.25) within 1e-12."""
    assert classical.pure_nash(CHICKEN) == [(0, 1), (1, 0)]
    mixed = classical.mixed_nash_indifference(CHICKEN)
    assert mixed.status == "unique"
    assert abs(mixed.profile.p - 7 / 12) <= 1e-12
    assert abs(mixed.profile.q - 7 / 12) <= 1e-12
    assert abs(mixed.payoffs[0] - 6.25) <= 1e-12
    assert abs(mixed.payoffs[1] - 6.25) <= 1e-12
    _report(3, "pure NE {(H,D),(D,H)}; mixed (7/12, 7/12) -> (6.25, 6.25)")


def test_criterion_4_proposition_sweep():
    """On a 50x50 (gamma, phi) grid the counter-strategy keeps the payoff
    difference <= 1e-10, strictly <= -1e-6 off the equality region; spot
    values at the case boundaries."""
    rows = case_study_sweep(np.linspace(0, np.pi / 2, 50), np.linspace(0, np.pi, 50))
    assert len(rows) == 2500
    worst = max(r["difference"] for r in rows)
    assert worst <= 1e-10
    for row in rows:
        on_equality = row["phi"] <= 1e-12 and row["gamma"] <= np.pi / 4 + 1e-12
        if not on_equality:
            assert row["difference"] <= -1e-6

    spot1 = chicken_payoff_difference(AsymmetricScenario(
        CHICKEN, 0.0, np.pi, np.array([1.0, 0, 0, 0])))
    assert abs(spot1 - (-50.0)) <= 1e-10
    r = 1 / np.sqrt(2)
    spot2 = chicken_payoff_difference(AsymmetricScenario(
        CHICKEN, np.pi / 2, 0.0, np.array([r, 0, r, 0])))
    assert abs(spot2 - (-25.0)) <= 1e-10
    spot3 = chicken_payoff_difference(AsymmetricScenario(
        CHICKEN, np.pi / 2, 0.0, np.array([0.0, 0, 1, 0])))
    assert abs(spot3 - (-50.0)) <= 1e-10
    _report(4, f"2500-point sweep max difference = {worst:.2e}; "
               f"spots (-50, -25, -50) reproduced")


def test_criterion_5_certification_exactness():
    """Embedded classical pure equilibria certify with gaps <= 1e-9; the
    mutual-hawk profile is refuted with gap_A = 25 +- 1e-9."""
    identity = su2.identity()
    flip = su2.bit_flip()
    for el_a, el_b in ((flip, identity), (identity, flip)):
        cert = certify(CHICKEN, 0.0, DiscreteMixedStrategy.pure(el_a),
                       DiscreteMixedStrategy.pure(el_b), 1e-9)
        assert cert.certified
        assert max(cert.gap_a, cert.gap_b) <= 1e-9
    refuted = certify(CHICKEN, 0.0, DiscreteMixedStrategy.pure(identity),
                      DiscreteMixedStrategy.pure(identity), 1e-9)
    assert not refuted.certified
    assert abs(refuted.gap_a - 25.0) <= 1e-9
    _report(5, f"pure NE gaps <= 1e-9; (I, I) refuted with gap_A = {refuted.gap_a:.12g}")


def test_criterion_6_existence_witnesses():
    """For Chicken, Prisoners' Dilemma and Battle of the Sexes at gamma in
    {0, pi/4, pi/2}, the search certifies at least one profile at 1e-3,
    under two minutes per game."""
    summary = []
    for name in ("chicken", "prisoners_dilemma", "battle_of_sexes"):
        game = builtin_game(name)
        start = time.perf_counter()
        for gamma in (0.0, np.pi / 4, np.pi / 2):
            report = find_equilibria(game, gamma, SearchConfig(epsilon=1e-3, seed=0))
            assert not report.search_failed, f"{name} at gamma={gamma}: no witness"
            best = report.witnesses[0].certificate
            assert max(best.gap_a, best.gap_b) <= 1e-3
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0
        summary.append(f"{name} {elapsed:.1f}s")
    _report(6, "; ".join(summary))


def test_criterion_7_normalization_and_bounds():
    """Simulated states stay normalized to 1e-12 and payoffs stay inside
    the payoff-entry bound."""
    rng = np.random.default_rng(7)
    bound_a = np.abs(CHICKEN.a).max()
    bound_b = np.abs(CHICKEN.b).max()
    worst_norm = 0.0
    for _ in range(500):
        setting = EntanglerSetting(rng.uniform(0, np.pi / 2))
        u_a, u_b = su2.haar_sample(rng), su2.haar_sample(rng)
        state = ewl.final_state(setting, u_a, u_b)
        worst_norm = max(worst_norm, abs(np.linalg.norm(state.amplitudes) - 1))
        pay_a, pay_b = ewl.pure_payoffs(CHICKEN, setting, u_a, u_b)
        assert abs(pay_a) <= bound_a + 1e-12
        assert abs(pay_b) <= bound_b + 1e-12
    assert worst_norm <= 1e-12
    _report(7, f"max norm deviation = {worst_norm:.2e} over 500 runs")


def test_criterion_8_cli_determinism(tmp_path):
    """Any command repeated with the same seed produces byte-identical
    reports."""
    game_file = tmp_path / "chicken.toml"
    game_file.write_text(
        '[game]\nname = "chicken"\nrows = ["H", "D"]\ncols = ["H", "D"]\n'
        "payoffs_A = [[-25, 50], [0, 15]]\npayoffs_B = [[-25, 0], [50, 15]]\n"
        "[quantum]\ngamma = 0.7853981633974483\n"
    )
    commands = [
        ["classical", str(game_file)],
        ["payoff", str(game_file), "--ua", "angles:1.0,0.5,0.25", "--ub", "vector:0,0,1,0"],
        ["find-ne", str(game_file), "--seed", "42"],
        ["chicken-case-study", "--gamma-points", "5", "--phi-points", "5"],
        ["chicken-case-study", "--gamma-points", "4", "--phi-points", "4", "--format", "csv"],
    ]
    for idx, argv in enumerate(commands):
        out1 = tmp_path / f"run_{idx}_a.out"
        out2 = tmp_path / f"run_{idx}_b.out"
        assert cli_main(argv + ["--out", str(out1)]) == 0
        assert cli_main(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes(), f"command {argv} not deterministic"
    _report(8, f"{len(commands)} commands byte-identical across repeated runs")
