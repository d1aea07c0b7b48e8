"""Forward-mode Wirtinger jets.

A jet carries the value of a complex function together with its derivatives
along the 2n complexified directions d/dz^1..d/dz^n, d/dzbar^1..d/dzbar^n,
treating z and zbar as independent.  Direction ``A < n`` is unbarred,
``A >= n`` is the barred partner of ``A - n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exprdsl as ex
from .errors import NonFiniteError, SingularEvaluationError

POLE_GUARD = 1e-300


def as_point(z) -> np.ndarray:
    p = np.atleast_1d(np.asarray(z, dtype=complex))
    if p.ndim != 1 or p.size < 1:
        raise ValueError("a chart point is a non-empty vector of complex coordinates")
    if not np.all(np.isfinite(p)):
        raise ValueError("chart point has non-finite coordinates")
    return p


def bar_permutation(n: int) -> np.ndarray:
    """Index map A -> Abar on the 2n complexified directions."""
    return np.concatenate([np.arange(n, 2 * n), np.arange(n)])


@dataclass(frozen=True)
class WirtingerJet:
    value: complex
    d: np.ndarray
    dd: np.ndarray | None = None

    @property
    def order(self) -> int:
        return 1 if self.dd is None else 2

    @property
    def n(self) -> int:
        return self.d.shape[0] // 2

    def conj(self) -> "WirtingerJet":
        perm = bar_permutation(self.n)
        dd = None if self.dd is None else np.conj(self.dd[np.ix_(perm, perm)])
        return WirtingerJet(self.value.conjugate(), np.conj(self.d[perm]), dd)


class _Eval:
    # Jets are stored as (value, d, dd) tuples while walking the tree.

    def __init__(self, z, order):
        self.z = z
        self.n = len(z)
        self.second = order == 2
        self.perm = bar_permutation(self.n)
        m = 2 * self.n
        self.zero_d = np.zeros(m, dtype=complex)
        self.zero_dd = np.zeros((m, m), dtype=complex) if self.second else None

    def const(self, c):
        return (complex(c), self.zero_d, self.zero_dd)

    def run(self, e):
        if isinstance(e, ex.Const):
            return self.const(e.value)
        if isinstance(e, ex.Coord):
            d = np.zeros(2 * self.n, dtype=complex)
            d[e.index - 1] = 1.0
            return (complex(self.z[e.index - 1]), d, self.zero_dd)
        if isinstance(e, ex.Neg):
            v, d, dd = self.run(e.arg)
            return (-v, -d, None if dd is None else -dd)
        if isinstance(e, ex.Conj):
            return self.conj(self.run(e.arg))
        if isinstance(e, ex.Abs2):
            a = self.run(e.arg)
            return self.mul(a, self.conj(a))
        if isinstance(e, ex.Pow):
            return self.power(self.run(e.base), e.exponent)
        a, b = self.run(e.left), self.run(e.right)
        if isinstance(e, ex.Add):
            return (a[0] + b[0], a[1] + b[1], None if a[2] is None else a[2] + b[2])
        if isinstance(e, ex.Sub):
            return (a[0] - b[0], a[1] - b[1], None if a[2] is None else a[2] - b[2])
        if isinstance(e, ex.Mul):
            return self.mul(a, b)
        return self.mul(a, self.reciprocal(b))

    def conj(self, a):
        v, d, dd = a
        p = self.perm
        return (v.conjugate(), np.conj(d[p]), None if dd is None else np.conj(dd[np.ix_(p, p)]))

    def mul(self, a, b):
        av, ad, add = a
        bv, bd, bdd = b
        v = av * bv
        d = ad * bv + av * bd
        dd = None
        if self.second:
            cross = np.outer(ad, bd)
            dd = add * bv + av * bdd + cross + cross.T
        return (v, d, dd)

    def reciprocal(self, b):
        bv, bd, bdd = b
        if abs(bv) < POLE_GUARD:
            raise SingularEvaluationError("division by a value below the pole guard", self.z)
        r = 1.0 / bv
        d = -bd * r * r
        dd = None
        if self.second:
            dd = -bdd * r * r + 2.0 * np.outer(bd, bd) * r * r * r
        return (r, d, dd)

    def power(self, a, k):
        av, ad, add = a
        if k == 0:
            return self.const(1.0)
        if k < 0:
            return self.power(self.reciprocal(a), -k)
        v = av**k
        d1 = k * av ** (k - 1)
        d = d1 * ad
        dd = None
        if self.second:
            d2 = k * (k - 1) * av ** (k - 2) if k >= 2 else 0.0
            dd = d1 * add + d2 * np.outer(ad, ad)
        return (v, d, dd)


def eval_jet(e: ex.Expression, z, order: int = 2) -> WirtingerJet:
    """Value and Wirtinger derivatives of ``e`` at ``z`` up to ``order`` (1 or 2)."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    p = as_point(z)
    if ex.max_coordinate(e) > len(p):
        raise ValueError("expression references coordinates beyond the point's dimension")
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            v, d, dd = _Eval(p, order).run(e)
    except (OverflowError, ZeroDivisionError) as exc:
        raise NonFiniteError(f"evaluation failed: {exc}", p) from exc
    finite = math.isfinite(v.real) and math.isfinite(v.imag) and np.all(np.isfinite(d))
    if dd is not None:
        finite = finite and np.all(np.isfinite(dd))
    if not finite:
        raise NonFiniteError("evaluation overflowed to a non-finite value", p)
    if dd is not None:
        # vectorised complex products may round the two triangles differently
        dd = np.array(dd, dtype=complex)
        dd = 0.5 * (dd + dd.T)
    return WirtingerJet(complex(v), np.array(d, dtype=complex), dd)


def eval_jets(exprs, z, order: int = 2):
    """Stack jets of several expressions: values (k,), d (k, 2n), dd (k, 2n, 2n)."""
    jets = [eval_jet(e, z, order) for e in exprs]
    values = np.array([j.value for j in jets], dtype=complex)
    d = np.array([j.d for j in jets], dtype=complex)
    dd = np.array([j.dd for j in jets], dtype=complex) if order == 2 else None
    return values, d, dd
