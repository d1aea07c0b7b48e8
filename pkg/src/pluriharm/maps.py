"""Smooth maps between charts and the residual tensors of holomorphy,
pluriharmonicity, (1,1)-geodesicity and harmonicity.

A map has r unbarred components phi^a(z, zbar); the barred components are
their conjugates.  Residual tensors are returned for unbarred target indices
only, as arrays ``[a, i, j]`` for the (i, jbar) slot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import exprdsl as ex
from .connection import DEFAULT_TOL, christoffel, christoffel_from_jet, trace_from
from .errors import ConfigError, DimensionMismatchError, GeometryError, InadmissiblePointError
from .hermitian import HermitianMetricField, inverse_metric, metric_at, resolve_metric
from .sampling import DEFAULT_SEED, sample_points
from .wirtinger import as_point, bar_permutation, eval_jets


@dataclass(frozen=True)
class MapField:
    n: int
    r: int
    components: tuple
    name: str = "map"
    target_metric: HermitianMetricField | None = None  # None is flat C^r

    def __post_init__(self):
        if len(self.components) != self.r:
            raise ConfigError(f"map {self.name} declares {self.r} components, got {len(self.components)}")
        if any(ex.max_coordinate(e) > self.n for e in self.components):
            raise ConfigError(f"map {self.name} references coordinates beyond z{self.n}")
        if self.target_metric is not None and self.target_metric.n != self.r:
            raise DimensionMismatchError(
                f"target metric has dimension {self.target_metric.n}, map has {self.r} components"
            )

    @classmethod
    def from_strings(cls, n, components, name="map", target_metric=None):
        comps = tuple(ex.parse(s, n) for s in components)
        return cls(n, len(comps), comps, name, target_metric)

    def value(self, z) -> np.ndarray:
        return np.array([ex.evaluate(e, z) for e in self.components], dtype=complex)

    def to_dict(self) -> dict:
        target = "flat" if self.target_metric is None else self.target_metric.to_dict()
        return {
            "name": self.name,
            "source_dimension": self.n,
            "target_dimension": self.r,
            "components": [ex.to_string(e) for e in self.components],
            "target_metric": target,
        }


def identity_map(n, target_metric=None) -> MapField:
    return MapField(n, n, tuple(ex.Coord(k) for k in range(1, n + 1)), f"identity{n}", target_metric)


def map_from_dict(data: dict, base_dir=None) -> MapField:
    try:
        n = int(data["source_dimension"])
        r = int(data["target_dimension"])
        comps = data["components"]
        if len(comps) != r:
            raise ConfigError(f"'components' must list {r} expressions")
        target = data.get("target_metric", "flat")
        metric = None if target in (None, "flat") else resolve_metric(target, r, base_dir)
        return MapField.from_strings(n, comps, str(data.get("name", "map")), metric)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed map description: {exc}") from exc


def load_map_file(path) -> MapField:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read map file {path}: {exc}") from exc
    return map_from_dict(data, path.parent)


def full_jets(components, z, order=2):
    """Jets of a map with barred rows appended.

    Returns ``value (2r,)``, ``d (2r, 2n)`` and ``dd (2r, 2n, 2n)``; row ``r + a``
    is the conjugate component phi^{abar}.
    """
    p = as_point(z)
    v, d, dd = eval_jets(components, p, order)
    perm = bar_permutation(p.size)
    v = np.concatenate([v, np.conj(v)])
    d = np.concatenate([d, np.conj(d[:, perm])])
    if dd is not None:
        dd = np.concatenate([dd, np.conj(dd[:, perm][:, :, perm])])
    return v, d, dd


def target_gamma(metric, w):
    """Christoffel array of the target at the image point ``w`` (zeros for flat)."""
    r = len(w)
    if metric is None:
        return np.zeros((2 * r, 2 * r, 2 * r), dtype=complex)
    if not metric.admissible(w):
        raise InadmissiblePointError(
            f"image point {list(w)} lies inside the exclusion radius of target metric {metric.name}"
        )
    return christoffel(metric, w).gamma


def _target(phi, target_metric):
    # None defers to the map's own target; the string "flat" forces flat C^r.
    if isinstance(target_metric, str) and target_metric == "flat":
        return None
    return phi.target_metric if target_metric is None else target_metric


def ph_tensor(d, dd, gamma, n):
    """All 2r rows of d_i d_jbar phi^A + Gamma^A_{JL} d_i phi^J d_jbar phi^L."""
    return dd[:, :n, n:] + np.einsum("AJL,Ji,Lj->Aij", gamma, d[:, :n], d[:, n:])


def holomorphy_residual(phi: MapField, z):
    """``(dbar, d)``: matrices [d phi^a / d zbar^j] and [d phi^a / d z^j]."""
    _, d, _ = eval_jets(phi.components, as_point(z), order=1)
    return d[:, phi.n:], d[:, : phi.n]


def _ph_full(phi, target_metric, z):
    v, d, dd = full_jets(phi.components, z)
    gamma = target_gamma(_target(phi, target_metric), v[: phi.r])
    return ph_tensor(d, dd, gamma, phi.n), d


def pluriharmonic_residual(phi: MapField, target_metric, z):
    """R^a_{i jbar} for a = 1..r; the target metric defaults to the map's own (flat if unset)."""
    return _ph_full(phi, target_metric, z)[0][: phi.r]


def conjugate_rows(R):
    """Barred residual rows R^{abar}_{i jbar} = conj(R^a_{j ibar})."""
    return np.conj(R.transpose(0, 2, 1))


def _source_gamma(source_metric, z, n):
    if source_metric is None:
        return np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    return christoffel(source_metric, z).gamma


def _one_one_full(phi, source_metric, target_metric, z):
    R, d = _ph_full(phi, target_metric, z)
    n = phi.n
    gs = _source_gamma(source_metric, z, n)
    return R - np.einsum("Cij,AC->Aij", gs[:, :n, n:], d)


def one_one_geodesic_residual(phi: MapField, source_metric, target_metric, z):
    """S^a_{i jbar} = R^a_{i jbar} - Gamma^C_{i jbar} d_C phi^a (source Christoffels, C over all 2n)."""
    return _one_one_full(phi, source_metric, target_metric, z)[: phi.r]


def _inverse_source(source_metric, z, n):
    if source_metric is None:
        return np.eye(n, dtype=complex)
    return inverse_metric(metric_at(source_metric, z).G)


def harmonic_residual(phi: MapField, source_metric, target_metric, z):
    """tau^a = sum over i, j of g^{i jbar} S^a_{i jbar} (constant factors dropped)."""
    S = one_one_geodesic_residual(phi, source_metric, target_metric, z)
    H = _inverse_source(source_metric, z, phi.n)
    return np.einsum("ij,aij->a", H, S)


def trace_identity(phi: MapField, source_metric, target_metric, z):
    """tau rebuilt from the pluriharmonic residual and the cosymplectic trace of the source.

    sum g^{i jbar} R^a_{i jbar} - T^c d_c phi^a - conj(T^c) d_cbar phi^a.
    """
    n = phi.n
    R, d = _ph_full(phi, target_metric, z)
    if source_metric is None:
        H, T = np.eye(n, dtype=complex), np.zeros(n, dtype=complex)
    else:
        jet = metric_at(source_metric, z)
        H = inverse_metric(jet.G)
        T = trace_from(H, christoffel_from_jet(jet, H))
    traced = np.einsum("ij,aij->a", H, R[: phi.r])
    return traced - d[: phi.r, :n] @ T - d[: phi.r, n:] @ np.conj(T)


MAP_RESIDUALS = ("antiholomorphy_defect", "holomorphy_defect", "pluriharmonic", "one_one_geodesic", "harmonic")
MAP_VERDICTS = ("holomorphic", "antiholomorphic", "pluriharmonic", "one_one_geodesic", "harmonic")


@dataclass
class ResidualReport:
    map: str
    tol: float
    samples: list
    residuals: list
    seed: int | None = None
    max_residuals: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)


def map_residuals(phi, source_metric, target_metric, z) -> dict:
    """Per-point maxima; "antiholomorphy_defect" is max |dbar phi| (zero for holomorphic maps)."""
    n = phi.n
    R, d = _ph_full(phi, target_metric, z)
    gs = _source_gamma(source_metric, z, n)
    S = R - np.einsum("Cij,AC->Aij", gs[:, :n, n:], d)
    H = _inverse_source(source_metric, z, n)
    tau = np.einsum("ij,aij->a", H, S[: phi.r])
    return {
        "antiholomorphy_defect": float(np.max(np.abs(d[: phi.r, n:]))),
        "holomorphy_defect": float(np.max(np.abs(d[: phi.r, :n]))),
        "pluriharmonic": float(np.max(np.abs(R[: phi.r]))),
        "one_one_geodesic": float(np.max(np.abs(S[: phi.r]))),
        "harmonic": float(np.max(np.abs(tau))),
    }


def admissible_for(phi, source_metric, target_metric):
    """Predicate: ``z`` admissible for the source and ``phi(z)`` for the target."""
    target = _target(phi, target_metric)

    def ok(z):
        if source_metric is not None and not source_metric.admissible(z):
            return False
        if target is not None:
            try:
                return target.admissible(phi.value(z))
            except (ZeroDivisionError, OverflowError):
                return False
        return True

    return ok


def map_samples(phi, source_metric=None, target_metric=None, count=32, seed=DEFAULT_SEED, box=2.0):
    radius = 0.0 if source_metric is None else source_metric.exclusion_radius
    return sample_points(phi.n, count, seed, box, radius, admissible_for(phi, source_metric, target_metric))


def check_map(phi: MapField, source_metric=None, target_metric=None, samples=None, tol=DEFAULT_TOL,
              seed=DEFAULT_SEED, count=32, box=2.0):
    if samples is None:
        samples = map_samples(phi, source_metric, target_metric, count, seed, box)
    else:
        seed = None
        ok = admissible_for(phi, source_metric, target_metric)
        samples = [np.asarray(z, dtype=complex) for z in samples if ok(z)]
    if not samples:
        raise GeometryError("no admissible sample points")
    rows = [map_residuals(phi, source_metric, target_metric, z) for z in samples]
    maxima = {k: max(r[k] for r in rows) for k in MAP_RESIDUALS}
    verdicts = {
        "holomorphic": maxima["antiholomorphy_defect"] < tol,
        "antiholomorphic": maxima["holomorphy_defect"] < tol,
        "pluriharmonic": maxima["pluriharmonic"] < tol,
        "one_one_geodesic": maxima["one_one_geodesic"] < tol,
        "harmonic": maxima["harmonic"] < tol,
    }
    target = _target(phi, target_metric)
    name = f"{phi.name} -> {'flat' if target is None else target.name}"
    return ResidualReport(name, tol, samples, rows, seed, maxima, verdicts)
