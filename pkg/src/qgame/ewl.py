"""Direct simulation of the entangled two-qubit game protocol.

The run is |psi_f> = J(gamma)^dagger (U_A (x) U_B) J(gamma) |00> followed by
a computational-basis measurement; expected payoffs weight the classical
payoff entries by the outcome probabilities |<ij|psi_f>|^2.

Conventions fixed here and used everywhere else: basis order (00, 01, 10,
11); player A owns the left tensor factor; gamma in [0, pi/2] with gamma=0
unentangled and gamma=pi/2 maximal.  This module composes the actual 4x4
matrices and is the ground-truth oracle: the quadratic-form route in
:mod:`qgame.quadratic` is validated against it, never the other way around.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import BimatrixGame
from .su2 import Su2Element

BASIS_LABELS = ("00", "01", "10", "11")

_SX_SX = np.array([[0, 0, 0, 1],
                   [0, 0, 1, 0],
                   [0, 1, 0, 0],
                   [1, 0, 0, 0]], dtype=complex)


class ProtocolError(ValueError):
    """Raised for invalid protocol inputs (gamma range, bad measures)."""


@dataclass(frozen=True)
class EntanglerSetting:
    """Entanglement dial gamma; values outside [0, pi/2] are an error."""
    gamma: float

    def __post_init__(self):
        if not (np.isfinite(self.gamma) and 0.0 <= self.gamma <= np.pi / 2):
            raise ProtocolError(f"gamma={self.gamma!r} outside [0, pi/2]")


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Normalized amplitudes over (|00>, |01>, |10>, |11>)."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise ProtocolError(f"state needs 4 amplitudes, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ProtocolError(f"state norm {norm!r} deviates from 1 beyond 1e-12")
        object.__setattr__(self, "amplitudes", amps)


def entangler(setting: EntanglerSetting) -> np.ndarray:
    """The 4x4 entangling gate cos(gamma/2) I + i sin(gamma/2) sigma_x(x)sigma_x."""
    half = 0.5 * setting.gamma
    return np.cos(half) * np.eye(4, dtype=complex) + 1j * np.sin(half) * _SX_SX


def final_state(setting: EntanglerSetting, u_a: Su2Element, u_b: Su2Element) -> TwoQubitState:
    """Compose entangle / play / disentangle on |00>."""
    j = entangler(setting)
    psi = j.conj().T @ (np.kron(u_a.matrix, u_b.matrix) @ j[:, 0])
    return TwoQubitState(psi)


def outcome_probs(state: TwoQubitState) -> np.ndarray:
    """Measurement distribution over (00, 01, 10, 11)."""
    return np.abs(state.amplitudes) ** 2


def pure_payoffs(game: BimatrixGame, setting: EntanglerSetting,
                 u_a: Su2Element, u_b: Su2Element) -> tuple[float, float]:
    """Expected payoffs (A, B) for a pure strategy pair."""
    probs = outcome_probs(final_state(setting, u_a, u_b)).reshape(2, 2)
    return float(np.sum(game.a * probs)), float(np.sum(game.b * probs))


@dataclass(frozen=True, eq=False)
class DiscreteMixedStrategy:
    """Finite-support probability measure over strategies."""
    support: tuple[Su2Element, ...]
    probs: np.ndarray

    def __post_init__(self):
        support = tuple(self.support)
        probs = np.asarray(self.probs, dtype=float)
        if len(support) < 1 or probs.shape != (len(support),):
            raise ProtocolError("support and probs must have equal length >= 1")
        if np.any(probs < -1e-12) or not np.all(np.isfinite(probs)):
            raise ProtocolError("probabilities must be nonnegative and finite")
        total = probs.sum()
        if abs(total - 1.0) > 1e-12:
            raise ProtocolError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", np.clip(probs, 0.0, None) / total)

    @classmethod
    def pure(cls, element: Su2Element) -> "DiscreteMixedStrategy":
        return cls((element,), np.array([1.0]))

    @classmethod
    def uniform(cls, elements) -> "DiscreteMixedStrategy":
        elements = tuple(elements)
        return cls(elements, np.full(len(elements), 1.0 / len(elements)))

    def __len__(self) -> int:
        return len(self.support)


def mixed_payoffs(game: BimatrixGame, setting: EntanglerSetting,
                  mu_a: DiscreteMixedStrategy, mu_b: DiscreteMixedStrategy) -> tuple[float, float]:
    """Convex combination of pure payoffs over the two supports.

    The mixture is never materialized as a density matrix; by linearity of
    the trace the weighted sum over pure runs is exact.
    """
    pay_a = 0.0
    pay_b = 0.0
    for pa, ua in zip(mu_a.probs, mu_a.support):
        for pb, ub in zip(mu_b.probs, mu_b.support):
            va, vb = pure_payoffs(game, setting, ua, ub)
            pay_a += pa * pb * va
            pay_b += pa * pb * vb
    return pay_a, pay_b


def payoff_tables(game: BimatrixGame, setting: EntanglerSetting,
                  elements_a, elements_b, chunk: int = 1 << 18) -> tuple[np.ndarray, np.ndarray]:
    """Pure payoffs for every strategy pair, as two (m, n) tables.

    Vectorized form of :func:`pure_payoffs`: the per-pair final state is
    cos(gamma/2) U_A|0> (x) U_B|0> + i sin(gamma/2) U_A|1> (x) U_B|1> passed
    through J^dagger, evaluated with broadcasting in row chunks.
    """
    mats_a = np.stack([el.matrix for el in elements_a])  # (m, 2, 2)
    mats_b = np.stack([el.matrix for el in elements_b])  # (n, 2, 2)
    half = 0.5 * setting.gamma
    c, s = np.cos(half), np.sin(half)
    m, n = len(mats_a), len(mats_b)
    table_a = np.empty((m, n))
    table_b = np.empty((m, n))
    rows_per_chunk = max(1, chunk // max(n, 1))
    for lo in range(0, m, rows_per_chunk):
        hi = min(lo + rows_per_chunk, m)
        a0 = mats_a[lo:hi, :, 0]  # U_A|0>, shape (mc, 2)
        a1 = mats_a[lo:hi, :, 1]  # U_A|1>
        b0 = mats_b[:, :, 0]
        b1 = mats_b[:, :, 1]
        psi2 = (c * np.einsum("ia,jb->ijab", a0, b0)
                + 1j * s * np.einsum("ia,jb->ijab", a1, b1))
        psi_f = c * psi2 - 1j * s * psi2[:, :, ::-1, ::-1]
        probs = np.abs(psi_f) ** 2
        table_a[lo:hi] = np.einsum("ijab,ab->ij", probs, game.a)
        table_b[lo:hi] = np.einsum("ijab,ab->ij", probs, game.b)
    return table_a, table_b
