"""Complexified Levi-Civita connection of a Hermitian metric and structure classification.

Christoffel tables are dense arrays ``gamma[C, A, B]`` = Gamma^C_{AB}, every
index running over the 2n complexified directions (``< n`` unbarred).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError
from .hermitian import HermitianMetricField, MetricJet, inverse_metric, metric_at
from .sampling import DEFAULT_SEED, sample_points

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ChristoffelTable:
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return self.gamma.shape[0] // 2

    @property
    def holomorphic(self):
        """Gamma^k_{ij}."""
        n = self.n
        return self.gamma[:n, :n, :n]

    @property
    def mixed(self):
        """Gamma^k_{i jbar}, indexed [k, i, j]."""
        n = self.n
        return self.gamma[:n, :n, n:]

    @property
    def mixed_bar(self):
        """Gamma^{kbar}_{i jbar}, indexed [k, i, j]."""
        n = self.n
        return self.gamma[n:, :n, n:]

    @property
    def integrability_block(self):
        """Gamma^{kbar}_{ij}: zero for every Hermitian metric in a holomorphic chart."""
        n = self.n
        return self.gamma[n:, :n, :n]


def christoffel_blocks(G, dG, H):
    """The three independent blocks (Gamma^k_ij, Gamma^k_{i jbar}, Gamma^{kbar}_{i jbar})."""
    n = G.shape[0]
    D, Db = dG[:n], dG[n:]  # D[a, i, j] = d_a g_{i jbar}, Db[a, i, j] = d_abar g_{i jbar}
    hol = 0.5 * np.einsum("kl,ijl->kij", H, D + D.transpose(1, 0, 2))
    # Gamma^k_{i jbar} = 1/2 g^{k lbar} (d_jbar g_{i lbar} - d_lbar g_{i jbar})
    mixed = 0.5 * np.einsum("kl,jil->kij", H, Db) - 0.5 * np.einsum("kl,lij->kij", H, Db)
    # Gamma^{kbar}_{i jbar} = 1/2 g^{l kbar} (d_i g_{l jbar} - d_l g_{i jbar})
    mixed_bar = 0.5 * np.einsum("lk,ilj->kij", H, D) - 0.5 * np.einsum("lk,lij->kij", H, D)
    return hol, mixed, mixed_bar


def assemble_table(hol, mixed, mixed_bar) -> ChristoffelTable:
    n = hol.shape[0]
    g = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    g[:n, :n, :n] = hol
    g[:n, :n, n:] = mixed
    g[:n, n:, :n] = mixed.transpose(0, 2, 1)
    g[n:, :n, n:] = mixed_bar
    g[n:, n:, :n] = mixed_bar.transpose(0, 2, 1)
    g[n:, n:, n:] = np.conj(hol)
    return ChristoffelTable(g)


def christoffel_from_jet(jet: MetricJet, H=None) -> ChristoffelTable:
    if H is None:
        H = inverse_metric(jet.G)
    return assemble_table(*christoffel_blocks(jet.G, jet.dG, H))


def christoffel(m: HermitianMetricField, z) -> ChristoffelTable:
    """Christoffel table of the metric ``m`` at ``z``."""
    return christoffel_from_jet(metric_at(m, z))


def fundamental_form_residuals(m: HermitianMetricField, z):
    """Components of (d omega)^{1,2} and (d omega)^{2,1}, without the i/2pi factor.

    ``r12[l, k, m]`` = d_kbar g_{l mbar} - d_mbar g_{l kbar};
    ``r21[k, l, m]`` = d_k g_{l mbar} - d_l g_{k mbar}.
    """
    jet = metric_at(m, z)
    n = m.n
    D, Db = jet.dG[:n], jet.dG[n:]
    r12 = Db.transpose(1, 0, 2) - Db.transpose(1, 2, 0)
    r21 = D - D.transpose(1, 0, 2)
    return r12, r21


def trace_from(H, table: ChristoffelTable):
    return np.einsum("lm,alm->a", H, table.mixed)


def cosymplectic_trace(m: HermitianMetricField, z) -> np.ndarray:
    """T^a = sum over l, m of g^{l mbar} Gamma^a_{l mbar}."""
    jet = metric_at(m, z)
    H = inverse_metric(jet.G)
    return trace_from(H, christoffel_from_jet(jet, H))


STRUCTURE_RESIDUALS = ("integrability", "one_two_symplectic", "kaehler", "cosymplectic", "fundamental_form_12")
STRUCTURE_VERDICTS = ("integrable", "one_two_symplectic", "kaehler", "cosymplectic")


@dataclass
class StructureReport:
    metric: str
    tol: float
    samples: list
    residuals: list  # one dict per sample, keys STRUCTURE_RESIDUALS
    seed: int | None = None
    max_residuals: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)


def structure_residuals(m: HermitianMetricField, z) -> dict:
    jet = metric_at(m, z)
    H = inverse_metric(jet.G)
    t = christoffel_from_jet(jet, H)
    sym = float(np.max(np.abs(t.mixed_bar)))
    n = m.n
    Db = jet.dG[n:]
    r12 = Db.transpose(1, 0, 2) - Db.transpose(1, 2, 0)
    return {
        "integrability": float(np.max(np.abs(t.integrability_block))),
        "one_two_symplectic": sym,
        "kaehler": max(sym, float(np.max(np.abs(t.mixed)))),
        "cosymplectic": float(np.max(np.abs(trace_from(H, t)))),
        "fundamental_form_12": float(np.max(np.abs(r12))),
    }


def classify(m: HermitianMetricField, samples=None, tol=DEFAULT_TOL, seed=DEFAULT_SEED, count=32, box=2.0) -> StructureReport:
    """Structure verdicts from residual maxima over ``samples``.

    Without explicit samples, ``count`` admissible points are drawn from the
    box of half-width ``box`` with ``seed``.
    """
    if samples is None:
        samples = sample_points(m.n, count, seed, box, m.exclusion_radius)
    else:
        seed = None
    samples = [np.asarray(z, dtype=complex) for z in samples if m.admissible(z)]
    if not samples:
        raise GeometryError("no admissible sample points")
    rows = [structure_residuals(m, z) for z in samples]
    maxima = {k: max(r[k] for r in rows) for k in STRUCTURE_RESIDUALS}
    verdicts = {
        "integrable": maxima["integrability"] < tol,
        "one_two_symplectic": maxima["one_two_symplectic"] < tol,
        "kaehler": maxima["integrability"] < tol and maxima["kaehler"] < tol,
        "cosymplectic": maxima["cosymplectic"] < tol,
    }
    return StructureReport(m.name, tol, samples, rows, seed, maxima, verdicts)
