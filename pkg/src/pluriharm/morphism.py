"""Pluriharmonic morphisms: verdicts, the chain rule, jet test functions and pullbacks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exprdsl as ex
from .connection import DEFAULT_TOL
from .errors import DimensionMismatchError, GeometryError
from .maps import (
    MapField,
    _target,
    check_map,
    full_jets,
    map_samples,
    ph_tensor,
    pluriharmonic_residual,
    target_gamma,
)
from .sampling import DEFAULT_SEED


@dataclass
class MorphismVerdict:
    holomorphic: bool
    antiholomorphic: bool
    pluriharmonic: bool
    morphism: bool
    max_residuals: dict
    samples: list
    tol: float


def is_pluriharmonic_morphism(psi: MapField, source_metric=None, target_metric=None, samples=None,
                              tol=DEFAULT_TOL, seed=DEFAULT_SEED, count=32, box=2.0) -> MorphismVerdict:
    """A map is a pluriharmonic morphism iff it is +-holomorphic and pluriharmonic.

    +-holomorphy is decided over the whole sample set: every sample holomorphic,
    or every sample antiholomorphic.
    """
    rep = check_map(psi, source_metric, target_metric, samples, tol, seed, count, box)
    v = rep.verdicts
    keep = ("antiholomorphy_defect", "holomorphy_defect", "pluriharmonic")
    return MorphismVerdict(
        holomorphic=v["holomorphic"],
        antiholomorphic=v["antiholomorphic"],
        pluriharmonic=v["pluriharmonic"],
        morphism=(v["holomorphic"] or v["antiholomorphic"]) and v["pluriharmonic"],
        max_residuals={k: rep.max_residuals[k] for k in keep},
        samples=rep.samples,
        tol=tol,
    )


def compose(phi: MapField, psi: MapField) -> MapField:
    """phi o psi by substituting psi's components into phi's expressions."""
    if psi.r != phi.n:
        raise DimensionMismatchError(f"cannot compose: psi has {psi.r} components, phi expects {phi.n}")
    comps = tuple(ex.substitute(e, psi.components) for e in phi.components)
    return MapField(psi.n, phi.r, comps, f"{phi.name}.{psi.name}", phi.target_metric)


@dataclass
class ChainRuleResult:
    lhs: np.ndarray
    rhs: np.ndarray
    max_difference: float


def chain_rule_check(psi: MapField, phi: MapField, metric_n=None, metric_p=None, z=None) -> ChainRuleResult:
    """Compare the pluriharmonic residual of phi o psi with its chain-rule expansion.

    The right-hand side is the second fundamental form of phi (w.r.t. ``metric_n``
    and ``metric_p``) on the image directions (dbar psi, d psi), plus d phi applied
    to the pluriharmonic residual of psi w.r.t. ``metric_n``.  The left-hand side
    differentiates the substituted expression directly.
    """
    if psi.r != phi.n:
        raise DimensionMismatchError(f"psi has {psi.r} components, phi expects {phi.n}")
    if metric_n is not None and metric_n.n != phi.n:
        raise DimensionMismatchError("metric_n dimension differs from the middle chart")
    metric_p = _target(phi, metric_p)
    if metric_p is not None and metric_p.n != phi.r:
        raise DimensionMismatchError("metric_p dimension differs from phi's target")
    m = psi.n

    lhs = pluriharmonic_residual(compose(phi, psi), metric_p if metric_p is not None else "flat", z)

    wv, dpsi, ddpsi = full_jets(psi.components, z)
    q = wv[: psi.r]
    gamma_n = target_gamma(metric_n, q)
    r_psi = ph_tensor(dpsi, ddpsi, gamma_n, m)  # all rows, barred included

    pv, dphi, ddphi = full_jets(phi.components, q)
    gamma_p = target_gamma(metric_p, pv[: phi.r])
    hess = (
        ddphi
        - np.einsum("CAB,DC->DAB", gamma_n, dphi)
        + np.einsum("DEF,EA,FB->DAB", gamma_p, dphi, dphi)
    )
    rhs = np.einsum("DC,Cij->Dij", dphi, r_psi) + np.einsum(
        "Ai,Bj,DAB->Dij", dpsi[:, :m], dpsi[:, m:], hess
    )
    rhs = rhs[: phi.r]
    return ChainRuleResult(lhs, rhs, float(np.max(np.abs(lhs - rhs))))


def jet_test_function(c1, c2=None) -> MapField:
    """h = sum_A c1[A] y^A + 1/2 sum_{A,B} c2[A,B] y^A y^B into flat C.

    ``y^A`` is z^A for A < n and conj(z^{A-n}) otherwise.  ``c2`` must be
    symmetric with mixed-type entries zero, so h is a holomorphic plus an
    antiholomorphic polynomial and hence pluriharmonic.
    """
    c1 = np.asarray(c1, dtype=complex)
    if c1.ndim != 1 or c1.size % 2 or c1.size == 0:
        raise ValueError("c1 needs 2n entries")
    n = c1.size // 2
    c2 = np.zeros((2 * n, 2 * n), dtype=complex) if c2 is None else np.asarray(c2, dtype=complex)
    if c2.shape != (2 * n, 2 * n):
        raise ValueError(f"c2 must be {2 * n}x{2 * n}")
    if not np.allclose(c2, c2.T, rtol=0, atol=1e-14):
        raise ValueError("c2 must be symmetric")
    if np.any(c2[:n, n:] != 0):
        raise ValueError(
            "c2 prescribes mixed-type second derivatives d^2h/dz dzbar; a pluriharmonic "
            "function into flat C has these equal to zero, so only same-type pairs are accepted"
        )

    def y(a):
        return ex.Coord(a + 1) if a < n else ex.Conj(ex.Coord(a - n + 1))

    terms = [ex.Mul(ex.const(c), y(a)) for a, c in enumerate(c1) if c != 0]
    for a in range(2 * n):
        for b in range(2 * n):
            if c2[a, b] != 0:
                terms.append(ex.Mul(ex.const(0.5 * c2[a, b]), ex.Mul(y(a), y(b))))
    return MapField(n, 1, (ex.sum_of(terms),), "jet_test")


@dataclass
class PullbackReport:
    psi_morphism: bool
    phi_max_residual: float
    composed_max_residual: float
    tol: float
    samples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.composed_max_residual < self.tol


def pullback_check(psi: MapField, phi: MapField, metric_n=None, metric_p=None, samples=None,
                   tol=DEFAULT_TOL, seed=DEFAULT_SEED, count=32, box=2.0) -> PullbackReport:
    """Pluriharmonic residual of phi o psi for a morphism psi and pluriharmonic phi."""
    metric_p = _target(phi, metric_p)
    flat_p = metric_p if metric_p is not None else "flat"
    if samples is None:
        samples = map_samples(psi, None, metric_n, count, seed, box)
    verdict = is_pluriharmonic_morphism(psi, None, metric_n, samples, tol)
    if not verdict.morphism:
        raise GeometryError(f"{psi.name} is not a pluriharmonic morphism on the samples")
    images = [psi.value(z) for z in verdict.samples]
    phi_max = max(float(np.max(np.abs(pluriharmonic_residual(phi, flat_p, w)))) for w in images)
    if phi_max >= tol:
        raise GeometryError(f"{phi.name} is not pluriharmonic on the image samples (residual {phi_max:.3g})")
    composed = compose(phi, psi)
    comp_max = max(float(np.max(np.abs(pluriharmonic_residual(composed, flat_p, z)))) for z in verdict.samples)
    return PullbackReport(True, phi_max, comp_max, tol, verdict.samples)
