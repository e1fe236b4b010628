"""Backend dispatch for the hot payoff kernels.

The compiled extension (built from ``_kernels.pyx``) is preferred when
importable; the NumPy implementation is the fallback.  Set
``QGAME_BACKEND=numpy`` to force the fallback or ``QGAME_BACKEND=compiled``
to fail loudly when the extension is missing.  Both backends evaluate the
same bilinear amplitude forms; parity is enforced by the test suite and
their speed is compared in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_np

_requested = os.environ.get("QGAME_BACKEND", "auto").lower()
if _requested not in ("auto", "compiled", "numpy"):
    raise ImportError(f"QGAME_BACKEND={_requested!r}; expected auto, compiled or numpy")

_impl = None
if _requested in ("auto", "compiled"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = None
if _impl is None:
    _impl = _kernels_np

BACKEND = "numpy" if _impl is _kernels_np else "compiled"


def backend_name() -> str:
    return BACKEND


def _c(arr, shape=None) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    return arr


def _pairs(ua, ub) -> tuple[np.ndarray, np.ndarray]:
    ua = _c(ua)
    ub = _c(ub)
    if ua.ndim != 2 or ua.shape[1] != 4 or ub.shape != ua.shape:
        raise ValueError(f"paired inputs need matching (n, 4) shapes, got {ua.shape} and {ub.shape}")
    return ua, ub


def amplitude_batch(gamma: float, ua, ub) -> np.ndarray:
    """Final-state amplitudes, one (4,) complex row per strategy pair."""
    ua, ub = _pairs(ua, ub)
    return _impl.amplitude_batch(float(gamma), ua, ub)


def payoff_batch(gamma: float, ua, ub, a, b) -> tuple[np.ndarray, np.ndarray]:
    """Payoff pair arrays for elementwise-paired strategy rows."""
    ua, ub = _pairs(ua, ub)
    pay_a, pay_b = _impl.payoff_batch(float(gamma), ua, ub, _c(a, (2, 2)), _c(b, (2, 2)))
    return np.asarray(pay_a), np.asarray(pay_b)


def payoff_tables(gamma: float, ua, ub, a, b) -> tuple[np.ndarray, np.ndarray]:
    """Payoff tables over the full (m, n) grid product."""
    ua = _c(ua)
    ub = _c(ub)
    if ua.ndim != 2 or ua.shape[1] != 4 or ub.ndim != 2 or ub.shape[1] != 4:
        raise ValueError(f"grid inputs need (m, 4) and (n, 4) shapes, got {ua.shape} and {ub.shape}")
    pay_a, pay_b = _impl.payoff_tables(float(gamma), ua, ub, _c(a, (2, 2)), _c(b, (2, 2)))
    return np.asarray(pay_a), np.asarray(pay_b)


def quad_batch(matrix, us) -> np.ndarray:
    """u^T M u for each strategy row."""
    us = _c(us)
    if us.ndim != 2 or us.shape[1] != 4:
        raise ValueError(f"strategy rows need shape (n, 4), got {us.shape}")
    return np.asarray(_impl.quad_batch(_c(matrix, (4, 4)), us))
