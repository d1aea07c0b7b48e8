"""Hermitian metrics g_{i jbar}(z) in a holomorphic chart, and the metric catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import exprdsl as ex
from .errors import (
    ConfigError,
    DimensionMismatchError,
    IllConditionedError,
    InadmissiblePointError,
    MetricError,
)
from .wirtinger import as_point, bar_permutation, eval_jet

HERMITIAN_TOL = 1e-10
PD_TOL = 1e-10
INVERSE_TOL = 1e-10
MAX_CONDITION = 1e12

CATALOG = ("flat", "hopf", "fubini_study", "conformal")


@dataclass(frozen=True)
class HermitianMetricField:
    """Mixed components ``g[i][j]`` = g_{i jbar} as expressions in z1..zn.

    Points with Euclidean norm below ``exclusion_radius`` are inadmissible.
    """

    n: int
    g: tuple
    exclusion_radius: float = 0.0
    name: str = "metric"

    def __post_init__(self):
        if self.n < 1:
            raise MetricError("metric dimension must be >= 1")
        if len(self.g) != self.n or any(len(row) != self.n for row in self.g):
            raise MetricError(f"metric matrix must be {self.n}x{self.n}")
        if any(ex.max_coordinate(e) > self.n for row in self.g for e in row):
            raise MetricError("metric references coordinates beyond its dimension")
        if self.exclusion_radius < 0:
            raise MetricError("exclusion radius must be >= 0")

    @classmethod
    def from_strings(cls, rows, exclusion_radius=0.0, name="metric"):
        n = len(rows)
        g = tuple(tuple(ex.parse(s, n) for s in row) for row in rows)
        return cls(n, g, float(exclusion_radius), name)

    def admissible(self, z) -> bool:
        return float(np.linalg.norm(z)) >= self.exclusion_radius

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.n,
            "exclusion_radius": self.exclusion_radius,
            "g": [[ex.to_string(e) for e in row] for row in self.g],
        }


@dataclass(frozen=True)
class MetricJet:
    """``G[i, j]`` = g_{i jbar}; ``dG[A, i, j]`` = d_A g_{i jbar} over the 2n directions."""

    G: np.ndarray
    dG: np.ndarray


def metric_at(m: HermitianMetricField, z) -> MetricJet:
    p = as_point(z)
    if p.size != m.n:
        raise DimensionMismatchError(f"point has dimension {p.size}, metric {m.n}")
    if not m.admissible(p):
        raise InadmissiblePointError(
            f"|z| = {np.linalg.norm(p):.3g} is inside the exclusion radius {m.exclusion_radius} of {m.name}"
        )
    n = m.n
    G = np.empty((n, n), dtype=complex)
    dG = np.empty((2 * n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            jet = eval_jet(m.g[i][j], p, order=1)
            G[i, j] = jet.value
            dG[:, i, j] = jet.d
    _check_hermitian(m, G, dG, p)
    return MetricJet(G, dG)


def _check_hermitian(m, G, dG, p):
    if np.max(np.abs(G - G.conj().T)) > HERMITIAN_TOL:
        raise MetricError(f"metric {m.name} is not Hermitian at z={list(p)}")
    perm = bar_permutation(m.n)
    mirrored = np.conj(dG[perm].transpose(0, 2, 1))
    scale = max(1.0, float(np.max(np.abs(dG))))
    if np.max(np.abs(dG - mirrored)) > HERMITIAN_TOL * scale:
        raise MetricError(f"derivatives of metric {m.name} break Hermitian symmetry at z={list(p)}")
    smallest = np.linalg.eigvalsh(0.5 * (G + G.conj().T))[0]
    if smallest <= PD_TOL:
        raise MetricError(
            f"metric {m.name} is not positive definite at z={list(p)} (smallest eigenvalue {smallest:.3g})"
        )


def inverse_metric(G) -> np.ndarray:
    """Inverse ``H`` with ``H[i, j]`` = g^{i jbar}, normalised so sum_j g^{i jbar} g_{k jbar} = delta_ik."""
    G = np.asarray(G, dtype=complex)
    cond = np.linalg.cond(G)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise IllConditionedError(f"metric condition number {cond:.3g} exceeds {MAX_CONDITION:.0e}")
    H = np.linalg.inv(G.T)
    residual = np.max(np.abs(H @ G.T - np.eye(G.shape[0])))
    if residual > INVERSE_TOL:
        raise IllConditionedError(f"inverse metric residual {residual:.3g} exceeds {INVERSE_TOL}")
    return H


def _radius_sq(n):
    return " + ".join(f"abs2(z{k})" for k in range(1, n + 1))


def catalog_metric(name: str, n: int, factor=None, exclusion_radius=None) -> HermitianMetricField:
    """Named metrics: ``flat``, ``hopf``, ``fubini_study`` and ``conformal``.

    ``conformal`` needs ``factor``, a positive rational expression (text or tree)
    multiplying the identity.
    """
    if n < 1:
        raise ConfigError("dimension must be >= 1")
    zero = ex.Const(0j)
    if name == "flat":
        g = [[ex.Const(1 + 0j) if i == j else zero for j in range(n)] for i in range(n)]
        return HermitianMetricField(n, _freeze(g), 0.0 if exclusion_radius is None else exclusion_radius, f"flat{n}")
    if name == "hopf":
        if n < 2:
            raise ConfigError("the Hopf metric needs n >= 2")
        entry = ex.parse(f"1/({_radius_sq(n)})", n)
        g = [[entry if i == j else zero for j in range(n)] for i in range(n)]
        return HermitianMetricField(n, _freeze(g), 0.3 if exclusion_radius is None else exclusion_radius, f"hopf{n}")
    if name == "fubini_study":
        s = _radius_sq(n)
        rows = [
            [
                (f"1/(1 + {s}) - " if i == j else "-") + f"conj(z{i})*z{j}/(1 + {s})^2"
                for j in range(1, n + 1)
            ]
            for i in range(1, n + 1)
        ]
        return HermitianMetricField.from_strings(
            rows, 0.0 if exclusion_radius is None else exclusion_radius, f"fubini_study{n}"
        )
    if name == "conformal":
        if factor is None:
            raise ConfigError("the conformal metric needs a factor expression")
        f = ex.parse(factor, n) if isinstance(factor, str) else factor
        _check_positive_factor(f, n, exclusion_radius or 0.0)
        g = [[f if i == j else zero for j in range(n)] for i in range(n)]
        return HermitianMetricField(n, _freeze(g), exclusion_radius or 0.0, f"conformal{n}")
    raise ConfigError(f"unknown catalog metric {name!r}; expected one of {', '.join(CATALOG)}")


def _freeze(g):
    return tuple(tuple(row) for row in g)


def _check_positive_factor(f, n, radius, probes=16):
    rng = np.random.default_rng(0)
    for _ in range(probes):
        z = rng.uniform(-2, 2, n) + 1j * rng.uniform(-2, 2, n)
        if np.linalg.norm(z) < radius:
            continue
        v = ex.evaluate(f, z)
        if abs(v.imag) > HERMITIAN_TOL * max(1.0, abs(v)) or v.real <= PD_TOL:
            raise ConfigError(f"conformal factor is not positive at probe z={list(z)} (value {v})")


def metric_from_dict(data: dict) -> HermitianMetricField:
    try:
        n = int(data["dimension"])
        rows = data["g"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ConfigError(f"metric 'g' must be a {n}x{n} array of expression strings")
        return HermitianMetricField.from_strings(
            rows, float(data.get("exclusion_radius", 0.0)), str(data.get("name", "metric"))
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed metric description: {exc}") from exc


def load_metric_file(path) -> HermitianMetricField:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read metric file {path}: {exc}") from exc
    return metric_from_dict(data)


def resolve_metric(ref, n=None, base_dir=None) -> HermitianMetricField | None:
    """Catalog name, ``conformal:<expr>``, or path to a metric file.

    ``None`` stands for the flat metric and is returned unchanged.
    """
    if ref is None or isinstance(ref, HermitianMetricField):
        return ref
    if isinstance(ref, dict):
        return metric_from_dict(ref)
    ref = str(ref)
    if ref in ("flat", "hopf", "fubini_study"):
        if n is None:
            raise ConfigError(f"catalog metric {ref!r} needs a dimension")
        return catalog_metric(ref, n)
    if ref.startswith("conformal:"):
        if n is None:
            raise ConfigError("conformal metric needs a dimension")
        return catalog_metric("conformal", n, factor=ref.split(":", 1)[1])
    path = Path(ref)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    m = load_metric_file(path)
    if n is not None and m.n != n:
        raise ConfigError(f"metric file {path} has dimension {m.n}, expected {n}")
    return m
