"""SU(2) strategy algebra for two-player quantum games.

A single-qubit pure strategy is a 2x2 special-unitary matrix.  Every such
matrix expands over {I, i*sigma_x, i*sigma_y, i*sigma_z} with real
coefficients u = (w, x, y, z), ||u|| = 1, and is parameterized by angles
theta in [0, pi], alpha, beta in [0, 2*pi):

    w = cos(alpha) cos(theta/2)      x = cos(beta) sin(theta/2)
    y = -sin(beta) sin(theta/2)      z = sin(alpha) cos(theta/2)

so that the matrix reads [[w+iz, y+ix], [-y+ix, w-iz]].  The identity is
U(0,0,0) and the bit flip i*sigma_x is U(pi,0,0).  u and -u act identically
on observable outcomes (global phase), which matters when deduplicating
strategy grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

_THETA_SLACK = 1e-9  # tolerated float noise outside [0, pi]


class StrategyError(ValueError):
    """Raised for invalid strategy parameters or vectors."""


@dataclass(frozen=True, eq=False)
class Su2Element:
    """A pure strategy with all three representations kept in sync.

    Construct via :func:`from_angles` or :func:`from_vector`; the fields are
    mutually consistent by construction.
    """

    theta: float
    alpha: float
    beta: float
    u: np.ndarray        # (4,) float, unit norm
    matrix: np.ndarray   # (2, 2) complex

    def dagger(self) -> "Su2Element":
        return dagger(self)

    def __repr__(self) -> str:  # compact, angle-first
        return (f"Su2Element(theta={self.theta:.6g}, alpha={self.alpha:.6g}, "
                f"beta={self.beta:.6g})")


def _matrix_from_vector(u: np.ndarray) -> np.ndarray:
    w, x, y, z = u
    return np.array([[w + 1j * z, y + 1j * x],
                     [-y + 1j * x, w - 1j * z]], dtype=complex)


def _vector_from_angles(theta: float, alpha: float, beta: float) -> np.ndarray:
    half = 0.5 * theta
    return np.array([
        np.cos(alpha) * np.cos(half),
        np.cos(beta) * np.sin(half),
        -np.sin(beta) * np.sin(half),
        np.sin(alpha) * np.cos(half),
    ])


def from_angles(theta: float, alpha: float, beta: float) -> Su2Element:
    """Build a strategy from its angle triple.

    alpha and beta are wrapped modulo 2*pi; theta is clamped to [0, pi] and
    rejected if it overshoots by more than 1e-9.
    """
    if not (np.isfinite(theta) and np.isfinite(alpha) and np.isfinite(beta)):
        raise StrategyError("strategy angles must be finite")
    if theta < -_THETA_SLACK or theta > np.pi + _THETA_SLACK:
        raise StrategyError(f"theta={theta!r} outside [0, pi]")
    theta = float(min(max(theta, 0.0), np.pi))
    alpha = float(np.mod(alpha, TWO_PI))
    beta = float(np.mod(beta, TWO_PI))
    u = _vector_from_angles(theta, alpha, beta)
    return Su2Element(theta, alpha, beta, u, _matrix_from_vector(u))


def from_vector(u) -> Su2Element:
    """Build a strategy from its unit 4-vector (w, x, y, z).

    The input is renormalized internally; the zero vector is rejected.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (4,):
        raise StrategyError(f"strategy vector must have length 4, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise StrategyError("strategy vector must be finite")
    norm = np.linalg.norm(u)
    if norm < 1e-12:
        raise StrategyError("zero vector is not a strategy")
    u = u / norm
    w, x, y, z = u
    cos_half = np.hypot(w, z)
    sin_half = np.hypot(x, y)
    theta = 2.0 * np.arctan2(sin_half, cos_half)
    # alpha is undefined when cos(theta/2)=0 and beta when sin(theta/2)=0;
    # both default to 0 (the matrix does not depend on them there).
    alpha = float(np.mod(np.arctan2(z, w), TWO_PI)) if cos_half > 1e-15 else 0.0
    beta = float(np.mod(np.arctan2(-y, x), TWO_PI)) if sin_half > 1e-15 else 0.0
    return Su2Element(float(theta), alpha, beta, u, _matrix_from_vector(u))


def dagger(element: Su2Element) -> Su2Element:
    """Adjoint strategy; in vector form (w, x, y, z) -> (w, -x, -y, -z)."""
    w, x, y, z = element.u
    return from_vector(np.array([w, -x, -y, -z]))


def identity() -> Su2Element:
    return from_angles(0.0, 0.0, 0.0)


def bit_flip() -> Su2Element:
    """i*sigma_x, the quantum counterpart of the classical flip."""
    return from_angles(np.pi, 0.0, 0.0)


def pauli_frame() -> tuple[Su2Element, ...]:
    """The four axis strategies (I, i*sigma_x, i*sigma_y, i*sigma_z)."""
    return (
        from_vector([1.0, 0.0, 0.0, 0.0]),
        from_vector([0.0, 1.0, 0.0, 0.0]),
        from_vector([0.0, 0.0, 1.0, 0.0]),
        from_vector([0.0, 0.0, 0.0, 1.0]),
    )


def classical_strategy(p: float) -> Su2Element:
    """The one-parameter strategy U(theta, 0, 0) reproducing the classical
    mixture that plays the first move with probability p = cos^2(theta/2)."""
    if not (0.0 <= p <= 1.0):
        raise StrategyError(f"probability p={p!r} outside [0, 1]")
    theta = 2.0 * np.arccos(np.sqrt(p))
    return from_angles(float(theta), 0.0, 0.0)


def haar_sample(rng: np.random.Generator) -> Su2Element:
    """Uniform sample on the strategy 3-sphere (normalized Gaussian 4-vector)."""
    while True:
        raw = rng.standard_normal(4)
        if np.linalg.norm(raw) > 1e-12:
            return from_vector(raw)


def grid(n_theta: int, n_alpha: int, n_beta: int) -> list[Su2Element]:
    """Cartesian angle grid: theta on [0, pi] inclusive, alpha and beta on
    [0, 2*pi) with the endpoint excluded.

    For n_theta >= 2 the grid contains both classical pure strategies
    U(0,0,0) and U(pi,0,0).
    """
    if min(n_theta, n_alpha, n_beta) < 1:
        raise StrategyError("grid counts must be >= 1")
    thetas = np.linspace(0.0, np.pi, n_theta) if n_theta > 1 else np.array([0.0])
    alphas = np.arange(n_alpha) * (TWO_PI / n_alpha)
    betas = np.arange(n_beta) * (TWO_PI / n_beta)
    return [from_angles(t, a, b) for t in thetas for a in alphas for b in betas]


def canonical_sign(u: np.ndarray) -> np.ndarray:
    """Flip the overall sign so the largest-magnitude component (lowest
    index on ties) is positive.  u and -u are the same physical strategy."""
    u = np.asarray(u, dtype=float)
    idx = int(np.argmax(np.abs(np.round(u, 12))))
    return -u if u[idx] < 0 else u.copy()


def payoff_distinct(elements, tol: float = 1e-9) -> list[Su2Element]:
    """Drop strategies that coincide up to global sign (u ~ -u), keeping the
    first occurrence.  Used to shrink angle grids before enumeration."""
    seen = set()
    kept = []
    decimals = max(0, int(round(-np.log10(tol))))
    for el in elements:
        key = tuple(np.round(canonical_sign(el.u), decimals))
        if key not in seen:
            seen.add(key)
            kept.append(el)
    return kept


def vectors(elements) -> np.ndarray:
    """Stack the u-vectors of a strategy sequence into an (n, 4) array."""
    return np.array([el.u for el in elements], dtype=float)
