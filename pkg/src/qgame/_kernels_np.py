"""NumPy implementations of the hot payoff kernels.

Same contract as the compiled extension ``qgame._kernels``; see
:mod:`qgame.kernels` for the dispatch.  Amplitudes come from the bilinear
closed forms: each final-state amplitude is u_A^T C_jk(gamma) u_B for a
fixed complex 4x4 coefficient matrix C_jk, written out componentwise below
(u = (w, x, y, z), indices 0..3).
"""

import numpy as np


def _amplitude_parts(gamma, ua, ub, outer):
    """Real/imag parts of the four amplitudes; `outer` multiplies coordinate
    columns pairwise (elementwise for paired input, np.outer for tables)."""
    cg, sg = np.cos(gamma), np.sin(gamma)
    p0, p1, p2, p3 = ua[:, 0], ua[:, 1], ua[:, 2], ua[:, 3]
    q0, q1, q2, q3 = ub[:, 0], ub[:, 1], ub[:, 2], ub[:, 3]
    s03 = outer(p0, q3) + outer(p3, q0)
    s12 = outer(p1, q2) + outer(p2, q1)
    a02 = outer(p0, q2) + outer(p3, q1)
    a20 = outer(p2, q0) + outer(p1, q3)
    re00 = outer(p0, q0) - outer(p3, q3) - sg * s12
    im00 = cg * s03
    re01 = -cg * a02
    im01 = outer(p0, q1) - outer(p3, q2) + sg * a20
    re10 = -cg * a20
    im10 = outer(p1, q0) - outer(p2, q3) + sg * a02
    re11 = outer(p2, q2) - outer(p1, q1) + sg * s03
    im11 = -cg * s12
    return (re00, im00), (re01, im01), (re10, im10), (re11, im11)


def amplitude_batch(gamma, ua, ub):
    """Final-state amplitudes (n, 4) for paired strategy rows."""
    parts = _amplitude_parts(gamma, ua, ub, lambda p, q: p * q)
    return np.stack([re + 1j * im for re, im in parts], axis=-1)


def payoff_batch(gamma, ua, ub, a, b):
    """Payoffs (pay_a, pay_b), each (n,), for paired strategy rows."""
    parts = _amplitude_parts(gamma, ua, ub, lambda p, q: p * q)
    probs = [re * re + im * im for re, im in parts]
    flat_a = a.reshape(4)
    flat_b = b.reshape(4)
    pay_a = sum(flat_a[k] * probs[k] for k in range(4))
    pay_b = sum(flat_b[k] * probs[k] for k in range(4))
    return pay_a, pay_b


def payoff_tables(gamma, ua, ub, a, b):
    """Payoff tables ((m, n), (m, n)) over the full strategy grid product."""
    parts = _amplitude_parts(gamma, ua, ub, np.outer)
    probs = [re * re + im * im for re, im in parts]
    flat_a = a.reshape(4)
    flat_b = b.reshape(4)
    pay_a = sum(flat_a[k] * probs[k] for k in range(4))
    pay_b = sum(flat_b[k] * probs[k] for k in range(4))
    return pay_a, pay_b


def quad_batch(matrix, us):
    """Quadratic form u^T M u for each row of us."""
    return np.einsum("ni,ij,nj->n", us, matrix, us)
