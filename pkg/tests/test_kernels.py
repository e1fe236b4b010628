"""Backend parity and oracle checks for the hot kernels."""

import numpy as np
import pytest

from qgame import _kernels_np, ewl, kernels, su2
from qgame.classical import builtin_game

CHICKEN = builtin_game("chicken")

try:
    from qgame import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = [("numpy", _kernels_np)]
if _compiled is not None:
    BACKENDS.append(("compiled", _compiled))


def _random_batch(rng, n):
    ua = np.stack([su2.haar_sample(rng).u for _ in range(n)])
    ub = np.stack([su2.haar_sample(rng).u for _ in range(n)])
    return np.ascontiguousarray(ua), np.ascontiguousarray(ub)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_amplitudes_match_simulator(name, impl):
    rng = np.random.default_rng(11)
    ua, ub = _random_batch(rng, 25)
    gamma = 0.9
    amps = np.asarray(impl.amplitude_batch(gamma, ua, ub))
    setting = ewl.EntanglerSetting(gamma)
    for row_a, row_b, amp in zip(ua, ub, amps):
        state = ewl.final_state(setting, su2.from_vector(row_a), su2.from_vector(row_b))
        assert np.allclose(amp, state.amplitudes, atol=1e-12)


@pytest.mark.parametrize("name,impl", BACKENDS)
def test_payoffs_match_simulator(name, impl):
    rng = np.random.default_rng(13)
    ua, ub = _random_batch(rng, 25)
    a = np.ascontiguousarray(CHICKEN.a)
    b = np.ascontiguousarray(CHICKEN.b)
    for gamma in (0.0, 0.6, np.pi / 2):
        pay_a, pay_b = impl.payoff_batch(gamma, ua, ub, a, b)
        setting = ewl.EntanglerSetting(gamma)
        for i in range(len(ua)):
            ref = ewl.pure_payoffs(CHICKEN, setting,
                                   su2.from_vector(ua[i]), su2.from_vector(ub[i]))
            assert np.isclose(pay_a[i], ref[0], atol=1e-12)
            assert np.isclose(pay_b[i], ref[1], atol=1e-12)


@pytest.mark.skipif(_compiled is None, reason="compiled extension not built")
def test_backend_parity():
    rng = np.random.default_rng(5)
    ua, ub = _random_batch(rng, 64)
    grid_b = np.ascontiguousarray(ub[:17])
    a = np.ascontiguousarray(CHICKEN.a)
    b = np.ascontiguousarray(CHICKEN.b)
    for gamma in (0.0, 0.31, np.pi / 2):
        amp_c = np.asarray(_compiled.amplitude_batch(gamma, ua, ub))
        amp_n = _kernels_np.amplitude_batch(gamma, ua, ub)
        assert np.allclose(amp_c, amp_n, atol=1e-14)
        pc = _compiled.payoff_batch(gamma, ua, ub, a, b)
        pn = _kernels_np.payoff_batch(gamma, ua, ub, a, b)
        assert np.allclose(pc[0], pn[0], atol=1e-13) and np.allclose(pc[1], pn[1], atol=1e-13)
        tc = _compiled.payoff_tables(gamma, ua, grid_b, a, b)
        tn = _kernels_np.payoff_tables(gamma, ua, grid_b, a, b)
        assert np.allclose(tc[0], tn[0], atol=1e-13) and np.allclose(tc[1], tn[1], atol=1e-13)
    matrix = np.ascontiguousarray(np.diag([1.0, 2.0, -3.0, 0.5]))
    assert np.allclose(_compiled.quad_batch(matrix, ua),
                       _kernels_np.quad_batch(matrix, ua), atol=1e-14)


def test_dispatch_tables_match_simulator_tables():
    rng = np.random.default_rng(3)
    elements_a = [su2.haar_sample(rng) for _ in range(9)]
    elements_b = [su2.haar_sample(rng) for _ in range(7)]
    gamma = 1.2
    fast_a, fast_b = kernels.payoff_tables(gamma, su2.vectors(elements_a),
                                           su2.vectors(elements_b), CHICKEN.a, CHICKEN.b)
    sim_a, sim_b = ewl.payoff_tables(CHICKEN, ewl.EntanglerSetting(gamma),
                                     elements_a, elements_b)
    assert np.allclose(fast_a, sim_a, atol=1e-12)
    assert np.allclose(fast_b, sim_b, atol=1e-12)


def test_quad_batch_matches_einsum():
    rng = np.random.default_rng(2)
    raw = rng.uniform(-2, 2, (4, 4))
    matrix = 0.5 * (raw + raw.T)
    us, _ = _random_batch(rng, 40)
    assert np.allclose(kernels.quad_batch(matrix, us),
                       np.einsum("ni,ij,nj->n", us, matrix, us), atol=1e-13)


def test_dispatch_validation():
    with pytest.raises(ValueError):
        kernels.payoff_batch(0.5, np.zeros((3, 4)), np.zeros((4, 4)), CHICKEN.a, CHICKEN.b)
    with pytest.raises(ValueError):
        kernels.payoff_tables(0.5, np.zeros((3, 5)), np.zeros((4, 4)), CHICKEN.a, CHICKEN.b)
    with pytest.raises(ValueError):
        kernels.quad_batch(np.zeros((3, 3)), np.zeros((4, 4)))
    assert kernels.backend_name() in ("numpy", "compiled")
