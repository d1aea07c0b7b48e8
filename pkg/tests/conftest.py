from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from pluriharm import exprdsl as ex

DATA = Path(__file__).parent / "data"


def normwise_rel(actual, expected, floor=1.0):
    """max |actual - expected| relative to max(|expected|, floor)."""
    actual, expected = np.asarray(actual), np.asarray(expected)
    scale = max(float(np.max(np.abs(expected))), floor)
    return float(np.max(np.abs(actual - expected))) / scale


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_points(rng, n, count, box=2.0, radius=0.0):
    pts = []
    while len(pts) < count:
        z = rng.uniform(-box, box, n) + 1j * rng.uniform(-box, box, n)
        if np.linalg.norm(z) >= radius:
            pts.append(z)
    return pts


def rational_trees(n):
    """Rational expressions in z, conj(z) with denominators bounded below by 1."""
    coords = st.integers(1, n).map(ex.Coord)
    consts = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False).map(ex.Const)
    leaves = st.one_of(coords, coords.map(ex.Conj), consts)

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda t: ex.Add(*t)),
            st.tuples(children, children).map(lambda t: ex.Sub(*t)),
            st.tuples(children, children).map(lambda t: ex.Mul(*t)),
            st.tuples(children, children).map(
                lambda t: ex.Div(t[0], ex.Add(ex.Const(1), ex.Abs2(t[1])))
            ),
            st.tuples(children, st.integers(0, 3)).map(lambda t: ex.Pow(*t)),
            children.map(ex.Conj),
            children.map(ex.Neg),
            children.map(ex.Abs2),
        )

    return st.recursive(leaves, extend, max_leaves=6)


def points(n, box=1.0):
    part = st.floats(-box, box, allow_nan=False)
    return st.lists(st.tuples(part, part), min_size=n, max_size=n).map(
        lambda xs: np.array([complex(a, b) for a, b in xs])
    )


def random_conformal(rng, n, box=2.0):
    """Conformal metric c0 + sum c_k |z_k - a_k|^2 with centres a_k outside the sampling box."""
    c0 = rng.uniform(0.5, 2.0)
    terms = [f"{c0!r}"]
    for k in range(1, n + 1):
        a = complex(rng.choice([-1, 1]) * rng.uniform(box + 0.5, box + 2.0), rng.uniform(-1, 1))
        c = rng.uniform(0.1, 1.0)
        terms.append(f"{c!r}*abs2(z{k} - ({a.real!r} + {a.imag!r}*i))")
    from pluriharm.hermitian import catalog_metric

    return catalog_metric("conformal", n, factor=" + ".join(terms))


def hopf_closed_forms(z):
    """Mixed Christoffel blocks of the Hopf metric, written out by hand."""
    n = len(z)
    r2 = float(np.vdot(z, z).real)
    d = np.eye(n)
    mixed = (np.einsum("ij,k->kij", d, z) - np.einsum("ik,j->kij", d, z)) / (2 * r2)
    zb = np.conj(z)
    mixed_bar = (np.einsum("ij,k->kij", d, zb) - np.einsum("jk,i->kij", d, zb)) / (2 * r2)
    return mixed, mixed_bar
