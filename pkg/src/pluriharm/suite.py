"""Checks P1-P9: numerical instances of the structure and map propositions.

Each check returns a dict with ``id``, ``description``, ``status``,
``measured`` and ``tolerances``; :func:`run_suite` collects them.
"""

from __future__ import annotations

import numpy as np

from .connection import classify, christoffel, cosymplectic_trace
from .hermitian import catalog_metric
from .maps import (
    MapField,
    check_map,
    harmonic_residual,
    identity_map,
    map_samples,
    one_one_geodesic_residual,
    pluriharmonic_residual,
    trace_identity,
)
from .morphism import chain_rule_check, is_pluriharmonic_morphism, jet_test_function, pullback_check
from .randmaps import random_map
from .sampling import sample_points

GOLDEN_RTOL = 1e-10
CLOSED_FORM_ATOL = 1e-10
NONZERO_FLOOR = 1e-2


def hopf_mixed_closed_form(z):
    """Gamma^k_{i jbar} and Gamma^{kbar}_{i jbar} of the Hopf metric, indexed [k, i, j]."""
    z = np.asarray(z, dtype=complex)
    n = z.size
    s = float(np.vdot(z, z).real)
    d = np.eye(n)
    mixed = (np.einsum("ij,k->kij", d, z) - np.einsum("ik,j->kij", d, z)) / (2 * s)
    mixed_bar = (np.einsum("ij,k->kij", d, z.conj()) - np.einsum("jk,i->kij", d, z.conj())) / (2 * s)
    return mixed, mixed_bar


def _rel(a, b):
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def _check(cid, description, ok, measured, tolerances):
    return {
        "id": cid,
        "description": description,
        "status": "pass" if ok else "fail",
        "measured": measured,
        "tolerances": tolerances,
    }


def p1_hopf_golden(cfg):
    worst = 0.0
    for n in (2, 3):
        h = catalog_metric("hopf", n)
        for z in sample_points(n, cfg["samples"], cfg["seed"], cfg["box"], h.exclusion_radius):
            t = christoffel(h, z)
            mixed, mixed_bar = hopf_mixed_closed_form(z)
            worst = max(worst, _rel(t.mixed, mixed), _rel(t.mixed_bar, mixed_bar))
    return _check("P1", "Hopf mixed Christoffel blocks match the closed forms (n=2,3)",
                  worst <= GOLDEN_RTOL, {"max_relative_error": worst}, {"relative": GOLDEN_RTOL})


def p2_kaehler_catalog(cfg):
    cases = [("flat", 1), ("flat", 2), ("flat", 3), ("fubini_study", 1), ("fubini_study", 2)]
    worst, ok = 0.0, True
    for name, n in cases:
        rep = classify(catalog_metric(name, n), tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"])
        ok &= rep.verdicts["kaehler"] and rep.verdicts["one_two_symplectic"] and rep.verdicts["cosymplectic"]
        worst = max(worst, rep.max_residuals["kaehler"], rep.max_residuals["cosymplectic"])
    return _check("P2", "flat and Fubini-Study are Kaehler, (1,2)-symplectic and cosymplectic",
                  ok, {"max_structure_residual": worst}, {"absolute": cfg["tol"]})


def p3_hopf_structure(cfg):
    ok, trace_err, smallest = True, 0.0, np.inf
    for n in (2, 3):
        h = catalog_metric("hopf", n)
        rep = classify(h, tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"])
        ok &= not (rep.verdicts["kaehler"] or rep.verdicts["one_two_symplectic"] or rep.verdicts["cosymplectic"])
        smallest = min(smallest, min(r["one_two_symplectic"] for r in rep.residuals))
        for z in rep.samples:
            trace_err = max(trace_err, float(np.max(np.abs(cosymplectic_trace(h, z) - (n - 1) * z / 2))))
    ok &= trace_err <= CLOSED_FORM_ATOL
    return _check("P3", "Hopf is neither (1,2)-symplectic nor cosymplectic; trace equals (n-1)z/2",
                  ok, {"trace_error": trace_err, "min_one_two_symplectic_residual": smallest},
                  {"absolute": CLOSED_FORM_ATOL, "verdict": cfg["tol"]})


def p4_holomorphic_into_kaehler(cfg):
    rng = np.random.default_rng(cfg["seed"])
    worst = 0.0
    for k in range(8):
        r = 1 + k % 2
        for target in (None, catalog_metric("fubini_study", r)):
            phi = random_map(rng, 2, r, "holomorphic", target_metric=target)
            worst = max(worst, check_map(phi, tol=cfg["tol"], seed=cfg["seed"] + k, count=cfg["samples"], box=cfg["box"]).max_residuals["pluriharmonic"])
    h = catalog_metric("hopf", 2)
    ident = identity_map(2, h)
    hopf_min = min(
        float(np.max(np.abs(pluriharmonic_residual(ident, None, z))))
        for z in sample_points(2, cfg["samples"], cfg["seed"], cfg["box"], h.exclusion_radius)
    )
    ok = worst < cfg["tol"] and hopf_min > NONZERO_FLOOR
    return _check("P4", "holomorphic maps into Kaehler targets are pluriharmonic; identity into Hopf is not",
                  ok, {"max_kaehler_target_residual": worst, "min_identity_into_hopf_residual": hopf_min},
                  {"absolute": cfg["tol"], "nonzero_floor": NONZERO_FLOOR})


def p5_hopf_geodesic(cfg):
    h = catalog_metric("hopf", 2)
    err, smallest = 0.0, np.inf
    for i in range(2):
        phi = MapField.from_strings(2, [f"z{i + 1}"])
        j = 1 - i
        for z in sample_points(2, cfg["samples"], cfg["seed"], cfg["box"], h.exclusion_radius):
            S = one_one_geodesic_residual(phi, h, None, z)
            expected = z[j] / (2 * np.vdot(z, z).real)
            err = max(err, abs(S[0, i, j] - expected))
            smallest = min(smallest, abs(S[0, i, j]))
    ok = err <= CLOSED_FORM_ATOL and smallest > cfg["tol"]
    return _check("P5", "coordinate functions on Hopf are not (1,1)-geodesic: S_{i jbar} = z^j/(2|z|^2)",
                  ok, {"max_error": err, "min_abs_residual": smallest},
                  {"absolute": CLOSED_FORM_ATOL, "nonzero": cfg["tol"]})


def p6_pullback(cfg):
    rng = np.random.default_rng(cfg["seed"] + 6)
    worst = 0.0
    for _ in range(4):
        psi = random_map(rng, 2, 2, "holomorphic", degree=2)
        phi = random_map(rng, 2, 1, "pluriharmonic", degree=2)
        worst = max(worst, pullback_check(psi, phi, tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"]).composed_max_residual)
    psi = MapField.from_strings(1, ["1 + z1", "z1^2"])
    jet = jet_test_function([1, 0.5, 0, 0], np.diag([2, 0, 1, 0]))
    worst = max(worst, pullback_check(psi, jet, tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"]).composed_max_residual)
    return _check("P6", "morphisms pull back pluriharmonic functions to pluriharmonic functions",
                  worst < cfg["tol"], {"max_composed_residual": worst}, {"absolute": cfg["tol"]})


def chain_cases(rng, count=16):
    """(psi, phi, metric_n, metric_p) quadruples; the first is the Hopf example."""
    hopf = catalog_metric("hopf", 2)
    fs = catalog_metric("fubini_study", 1)
    cases = [(MapField.from_strings(1, ["1 + z1", "z1^2"]), MapField.from_strings(2, ["z1"]), hopf, None)]
    middles = [None, hopf, catalog_metric("fubini_study", 2)]
    for k in range(count - 1):
        m = 1 + k % 2
        psi = random_map(rng, m, 2, "general" if k % 3 else "holomorphic", degree=2, terms=3, scale=0.4)
        phi = random_map(rng, 2, 1, "general", degree=2, terms=3, scale=0.4)
        cases.append((psi, phi, middles[k % 3], fs if k % 4 == 1 else None))
    return cases


def chain_samples(psi, metric_n, cfg, count):
    return map_samples(psi, None, metric_n, count=count, seed=cfg["seed"], box=cfg["box"])


def p7_chain_rule(cfg):
    rng = np.random.default_rng(cfg["seed"] + 7)
    worst = 0.0
    for psi, phi, mn, mp in chain_cases(rng):
        for z in chain_samples(psi, mn, cfg, 4):
            worst = max(worst, chain_rule_check(psi, phi, mn, mp, z).max_difference)
    return _check("P7", "chain rule for the pluriharmonic operator on 16 randomized pairs",
                  worst <= cfg["tol"], {"max_difference": worst}, {"absolute": cfg["tol"]})


def p8_kaehler_morphisms(cfg):
    rng = np.random.default_rng(cfg["seed"] + 8)
    kinds = ("holomorphic", "antiholomorphic", "pluriharmonic", "general")
    mismatches = 0
    total = 0
    for k in range(24):
        r = 1 + k % 2
        target = catalog_metric("fubini_study", r) if k % 3 == 0 else None
        psi = random_map(rng, 2, r, kinds[k % 4], degree=2, target_metric=target)
        v = is_pluriharmonic_morphism(psi, tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"])
        mismatches += v.morphism != (v.holomorphic or v.antiholomorphic)
        total += 1
    return _check("P8", "on Kaehler targets, morphism verdict equals the +-holomorphy verdict",
                  mismatches == 0, {"mismatches": mismatches, "maps": total}, {})


def p9_harmonic(cfg):
    rng = np.random.default_rng(cfg["seed"] + 9)
    identity_err = 0.0
    sources = [None, catalog_metric("hopf", 2), catalog_metric("fubini_study", 2)]
    for k, src in enumerate(sources):
        phi = random_map(rng, 2, 1, "general", degree=2)
        for z in map_samples(phi, src, None, count=8, seed=cfg["seed"] + k, box=cfg["box"]):
            diff = harmonic_residual(phi, src, None, z) - trace_identity(phi, src, None, z)
            identity_err = max(identity_err, float(np.max(np.abs(diff))))
    flat_ph = 0.0
    for _ in range(4):
        phi = random_map(rng, 2, 1, "pluriharmonic", degree=3)
        flat_ph = max(flat_ph, check_map(phi, None, None, tol=cfg["tol"], seed=cfg["seed"], count=cfg["samples"], box=cfg["box"]).max_residuals["harmonic"])
    hopf_err = 0.0
    for n in (2, 3):
        h = catalog_metric("hopf", n)
        phi = MapField.from_strings(n, ["z1"])
        for z in sample_points(n, cfg["samples"], cfg["seed"], cfg["box"], h.exclusion_radius):
            tau = harmonic_residual(phi, h, None, z)
            hopf_err = max(hopf_err, abs(tau[0] + (n - 1) * z[0] / 2))
    ok = identity_err <= CLOSED_FORM_ATOL and flat_ph < cfg["tol"] and hopf_err <= CLOSED_FORM_ATOL
    return _check("P9", "tension equals its trace reconstruction; z1 on Hopf is pluriharmonic but not harmonic",
                  ok, {"trace_identity_error": identity_err, "max_flat_source_tension": flat_ph,
                       "hopf_tension_error": hopf_err},
                  {"absolute": CLOSED_FORM_ATOL, "flat_tension": cfg["tol"]})


CHECKS = (p1_hopf_golden, p2_kaehler_catalog, p3_hopf_structure, p4_holomorphic_into_kaehler,
          p5_hopf_geodesic, p6_pullback, p7_chain_rule, p8_kaehler_morphisms, p9_harmonic)


def run_suite(samples=32, seed=42, tol=1e-9, box=2.0):
    cfg = {"samples": samples, "seed": seed, "tol": tol, "box": box}
    return [check(cfg) for check in CHECKS]
