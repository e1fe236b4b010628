"""Payoff as a quadratic form in the player's own strategy vector.

For a fixed opponent vector v, each final-state amplitude is linear in the
player's vector u: <jk|psi_f> = <u, m_jk(v)>.  Weighting the outer products
of the m-vectors by the payoff entries gives a real symmetric 4x4 matrix P
with payoff = u^T P u, so the best response over all strategies (pure or
mixed) is the principal eigenvector of P and its value the top eigenvalue.
The m-vectors below are validated against :mod:`qgame.ewl` by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import BimatrixGame
from .ewl import DiscreteMixedStrategy, EntanglerSetting
from .su2 import canonical_sign

EIGEN_TIE_TOL = 1e-11  # eigenvalues this close to the top are degenerate


@dataclass(frozen=True, eq=False)
class MVectors:
    """The four amplitude coefficient vectors for a fixed opponent."""
    m00: np.ndarray
    m01: np.ndarray
    m10: np.ndarray
    m11: np.ndarray

    def stacked(self) -> np.ndarray:
        return np.stack([self.m00, self.m01, self.m10, self.m11])


def m_vectors(gamma: float, u_b) -> MVectors:
    """Amplitude coefficient vectors m_jk(u_b) with <jk|psi_f> = <u_a, m_jk>."""
    EntanglerSetting(gamma)
    q0, q1, q2, q3 = np.asarray(u_b, dtype=float)
    cg, sg = np.cos(gamma), np.sin(gamma)
    return MVectors(
        m00=np.array([q0 + 1j * q3 * cg, -q2 * sg, -q1 * sg, -q3 + 1j * q0 * cg]),
        m01=np.array([1j * q1 - q2 * cg, 1j * q3 * sg, 1j * q0 * sg, -q1 * cg - 1j * q2]),
        m10=np.array([1j * q2 * sg, 1j * q0 - q3 * cg, -1j * q3 - q0 * cg, 1j * q1 * sg]),
        m11=np.array([q3 * sg, -q1 - 1j * q2 * cg, q2 - 1j * q1 * cg, q0 * sg]),
    )


@dataclass(frozen=True, eq=False)
class PayoffQuadraticForm:
    """Real symmetric 4x4 matrix representing one player's payoff."""
    matrix: np.ndarray
    gamma: float
    owner: str  # "A" or "B"

    def value(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(u @ self.matrix @ u)


def _weighted_form(weights: np.ndarray, vecs: MVectors) -> np.ndarray:
    # sum_jk w_jk Re(m m^dagger); the result is symmetric because each
    # outer product is Hermitian, but symmetrize to kill last-ulp noise.
    p = np.zeros((4, 4))
    for w, m in zip(weights.reshape(4), vecs.stacked()):
        p += w * np.real(np.outer(m, m.conj()))
    return 0.5 * (p + p.T)


def payoff_matrix_A(game: BimatrixGame, gamma: float, u_b) -> PayoffQuadraticForm:
    """Player A's payoff form for a fixed opponent vector u_b."""
    return PayoffQuadraticForm(_weighted_form(game.a, m_vectors(gamma, u_b)), gamma, "A")


def payoff_matrix_B(game: BimatrixGame, gamma: float, u_a) -> PayoffQuadraticForm:
    """Player B's payoff form for a fixed opponent vector u_a.

    Built from the same coefficient vectors with the roles exchanged: the
    (0,1) and (1,0) outcomes trade places when the deviating player is B.
    """
    vecs = m_vectors(gamma, u_a)
    swapped = MVectors(m00=vecs.m00, m01=vecs.m10, m10=vecs.m01, m11=vecs.m11)
    return PayoffQuadraticForm(_weighted_form(game.b, swapped), gamma, "B")


def averaged_matrix(game: BimatrixGame, gamma: float, player: str,
                    mu_opponent: DiscreteMixedStrategy) -> PayoffQuadraticForm:
    """Opponent-averaged payoff form: sum_j q_j P(u_j).

    Exact by linearity of the mixed payoff in the opponent's measure.
    """
    if player not in ("A", "B"):
        raise ValueError(f"player must be 'A' or 'B', got {player!r}")
    build = payoff_matrix_A if player == "A" else payoff_matrix_B
    p = np.zeros((4, 4))
    for q, el in zip(mu_opponent.probs, mu_opponent.support):
        p += q * build(game, gamma, el.u).matrix
    return PayoffQuadraticForm(p, gamma, player)


@dataclass(frozen=True, eq=False)
class BestResponse:
    """Top eigenvalue and an orthonormal basis of its eigenspace."""
    value: float
    basis: np.ndarray  # (k, 4), rows orthonormal

    @property
    def canonical(self) -> np.ndarray:
        return canonical_basis_vector(self.basis)


def best_response_pure(form: PayoffQuadraticForm) -> BestResponse:
    """Maximize u^T P u over unit vectors.

    The maximum over all probability measures equals the top eigenvalue
    (payoff is linear in the player's own measure), so this bounds every
    deviation.  Eigenvalues within EIGEN_TIE_TOL of the top are treated as
    tied and their eigenvectors returned together.
    """
    vals, vecs = np.linalg.eigh(form.matrix)
    top = vals[-1]
    tied = vals >= top - EIGEN_TIE_TOL
    return BestResponse(float(top), vecs[:, tied].T.copy())


def canonical_basis_vector(basis: np.ndarray) -> np.ndarray:
    """Deterministic representative of a degenerate eigenspace basis: the
    row whose largest-magnitude component sits at the lowest index, with
    that component made positive."""
    basis = np.atleast_2d(np.asarray(basis, dtype=float))
    best_row = 0
    best_idx = 5
    for r, row in enumerate(basis):
        idx = int(np.argmax(np.abs(np.round(row, 12))))
        if idx < best_idx:
            best_idx = idx
            best_row = r
    return canonical_sign(basis[best_row])
