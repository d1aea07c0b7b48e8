"""Central-difference Wirtinger derivatives from plain function values.

Used as an independent cross-check of :mod:`pluriharm.wirtinger`.  Derivatives
are taken in the real coordinates x^k, y^k (z^k = x^k + i y^k) and combined as
d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
"""

import numpy as np

from .exprdsl import evaluate


def _real_to_wirtinger(n):
    # rows: complexified directions, cols: real directions (x^1..x^n, y^1..y^n)
    w = np.zeros((2 * n, 2 * n), dtype=complex)
    for k in range(n):
        w[k, k], w[k, n + k] = 0.5, -0.5j
        w[n + k, k], w[n + k, n + k] = 0.5, 0.5j
    return w


def fd_derivatives(f, z, h=1e-5):
    """First and second Wirtinger derivatives of the callable ``f`` at ``z``.

    Returns ``(d, dd)`` with shapes (2n,) and (2n, 2n).
    """
    z = np.asarray(z, dtype=complex)
    n = z.size
    steps = np.concatenate([np.eye(n), 1j * np.eye(n)]) * h  # real directions
    f0 = f(z)
    grad = np.zeros(2 * n, dtype=complex)
    hess = np.zeros((2 * n, 2 * n), dtype=complex)
    for a in range(2 * n):
        ea = steps[a]
        fp, fm = f(z + ea), f(z - ea)
        grad[a] = (fp - fm) / (2 * h)
        hess[a, a] = (fp - 2 * f0 + fm) / (h * h)
        for b in range(a):
            eb = steps[b]
            val = (f(z + ea + eb) - f(z + ea - eb) - f(z - ea + eb) + f(z - ea - eb)) / (4 * h * h)
            hess[a, b] = hess[b, a] = val
    w = _real_to_wirtinger(n)
    return w @ grad, w @ hess @ w.T


def fd_expression(e, z, h=1e-5):
    return fd_derivatives(lambda x: evaluate(e, x), z, h)
