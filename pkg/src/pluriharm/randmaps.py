"""Random polynomial maps for randomized checks."""

import itertools

import numpy as np

from . import exprdsl as ex
from .maps import MapField

KINDS = ("holomorphic", "antiholomorphic", "pluriharmonic", "general")


def _monomials(n, degree, min_degree=1):
    out = []
    for d in range(min_degree, degree + 1):
        out.extend(itertools.combinations_with_replacement(range(1, n + 1), d))
    return out


def _monomial_expr(indices, conj):
    node = None
    for k in indices:
        f = ex.Conj(ex.Coord(k)) if conj else ex.Coord(k)
        node = f if node is None else ex.Mul(node, f)
    return node


def _coef(rng, scale):
    return complex(np.round(scale * (rng.normal() + 1j * rng.normal()), 6)) or complex(scale)


def _poly(rng, n, degree, conj, terms, scale):
    monos = _monomials(n, degree)
    chosen = rng.choice(len(monos), size=min(terms, len(monos)), replace=False)
    # keep a linear term so the component is never degenerate
    linear = [i for i in range(len(monos)) if len(monos[i]) == 1]
    if not any(c in linear for c in chosen):
        chosen = np.append(chosen[:-1], rng.choice(linear))
    parts = [ex.Mul(ex.const(_coef(rng, scale)), _monomial_expr(monos[i], conj)) for i in sorted(chosen)]
    return ex.Add(ex.const(_coef(rng, scale)), ex.sum_of(parts))


def _general(rng, n, degree, terms, scale):
    # monomials mixing z and conj(z) of total degree <= degree
    parts = []
    for _ in range(terms):
        d = int(rng.integers(1, degree + 1))
        factors = []
        for _ in range(d):
            k = int(rng.integers(1, n + 1))
            factors.append(ex.Conj(ex.Coord(k)) if rng.random() < 0.5 else ex.Coord(k))
        node = factors[0]
        for f in factors[1:]:
            node = ex.Mul(node, f)
        parts.append(ex.Mul(ex.const(_coef(rng, scale)), node))
    k = int(rng.integers(1, n + 1))
    parts.append(ex.Mul(ex.const(_coef(rng, scale)), ex.Mul(ex.Coord(k), ex.Conj(ex.Coord(k)))))
    return ex.sum_of(parts)


def random_map(rng, n, r, kind="holomorphic", degree=3, terms=4, scale=0.5, target_metric=None) -> MapField:
    """Random polynomial map C^n -> C^r.

    ``pluriharmonic`` components are holomorphic plus antiholomorphic parts
    (neither +-holomorphic); ``general`` mixes z and conj(z) in one monomial.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    comps = []
    for _ in range(r):
        if kind == "holomorphic":
            comps.append(_poly(rng, n, degree, False, terms, scale))
        elif kind == "antiholomorphic":
            comps.append(_poly(rng, n, degree, True, terms, scale))
        elif kind == "pluriharmonic":
            comps.append(ex.Add(_poly(rng, n, degree, False, terms, scale), _poly(rng, n, degree, True, terms, scale)))
        else:
            comps.append(_general(rng, n, degree, terms, scale))
    return MapField(n, r, tuple(comps), f"{kind}_poly", target_metric)
