import numpy as np
import pytest

from pluriharm.errors import DimensionMismatchError, GeometryError
from pluriharm.hermitian import catalog_metric
from pluriharm.maps import MapField, identity_map, pluriharmonic_residual
from pluriharm.morphism import (
    chain_rule_check,
    compose,
    is_pluriharmonic_morphism,
    jet_test_function,
    pullback_check,
)
from pluriharm.randmaps import random_map
from pluriharm.wirtinger import eval_jet

from conftest import random_points

HOPF2 = catalog_metric("hopf", 2)


def test_holomorphic_square_is_morphism():
    v = is_pluriharmonic_morphism(MapField.from_strings(2, ["z1^2", "z1*z2"]))
    assert v.holomorphic and v.pluriharmonic and v.morphism


def test_mixed_map_is_not_morphism():
    v = is_pluriharmonic_morphism(MapField.from_strings(2, ["z1", "conj(z2)"]))
    assert v.pluriharmonic and not v.morphism


def test_identity_into_hopf_is_not_morphism():
    v = is_pluriharmonic_morphism(identity_map(2), HOPF2, HOPF2)
    assert v.holomorphic and not v.pluriharmonic and not v.morphism


def test_antiholomorphic_morphism():
    v = is_pluriharmonic_morphism(MapField.from_strings(2, ["conj(z1)^2 + conj(z2)"]))
    assert v.antiholomorphic and v.morphism


def test_compose_substitutes():
    psi = MapField.from_strings(1, ["1 + z1", "z1^2"])
    phi = MapField.from_strings(2, ["z1*conj(z2)"])
    w = 0.3 - 0.6j
    assert compose(phi, psi).value([w])[0] == pytest.approx((1 + w) * np.conj(w**2))
    with pytest.raises(DimensionMismatchError):
        compose(psi, psi)


def test_chain_rule_identity_psi(rng):
    phi = random_map(rng, 2, 1, "general", degree=2)
    for z in random_points(rng, 2, 4, radius=0.3):
        res = chain_rule_check(identity_map(2), phi, HOPF2, None, z)
        np.testing.assert_allclose(res.lhs, pluriharmonic_residual(phi, None, z), atol=1e-14)
        assert res.max_difference <= 1e-12


def test_chain_rule_hopf_curve(rng):
    psi = MapField.from_strings(1, ["1 + z1", "z1^2"])
    phi = MapField.from_strings(2, ["z1"])
    pts = [w for w in random_points(rng, 1, 64) if abs(1 + w[0]) ** 2 + abs(w[0]) ** 4 > 0.09][:16]
    assert len(pts) == 16
    for w in pts:
        assert chain_rule_check(psi, phi, HOPF2, None, w).max_difference <= 1e-9


@pytest.mark.parametrize("middle", ["flat", "hopf", "fubini_study"])
def test_chain_rule_random(middle, rng):
    metric_n = None if middle == "flat" else catalog_metric(middle, 2)
    for k in range(4):
        m = 1 + k % 2
        psi = random_map(rng, m, 2, "general", degree=2, terms=3, scale=0.4)
        phi = random_map(rng, 2, 2, "general", degree=2, terms=3, scale=0.4)
        target = catalog_metric("fubini_study", 2) if k % 2 else None
        for z in random_points(rng, m, 4):
            q = psi.value(z)
            if metric_n is not None and not metric_n.admissible(q):
                continue
            res = chain_rule_check(psi, phi, metric_n, target, z)
            scale = max(1.0, float(np.max(np.abs(res.lhs))))
            assert res.max_difference <= 1e-9 * scale


def test_chain_rule_flat_polynomials(rng):
    for _ in range(8):
        psi = random_map(rng, 2, 2, "general", degree=2, terms=3)
        phi = random_map(rng, 2, 1, "general", degree=2, terms=3)
        for z in random_points(rng, 2, 2):
            assert chain_rule_check(psi, phi, None, None, z).max_difference <= 1e-10


def test_chain_rule_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        chain_rule_check(identity_map(2), MapField.from_strings(3, ["z1"]), None, None, [1, 1])
    with pytest.raises(DimensionMismatchError):
        chain_rule_check(identity_map(2), MapField.from_strings(2, ["z1"]), catalog_metric("hopf", 3), None, [1, 1])


def test_jet_function_examples():
    h = jet_test_function([1, 0, 0, 0])
    z = np.array([0.2 + 0.1j, -0.4j])
    assert h.value(z)[0] == pytest.approx(z[0])
    sq = jet_test_function([0, 0], np.array([[2, 0], [0, 0]]))
    assert eval_jet(sq.components[0], [0]).dd[0, 0] == 2
    anti = jet_test_function([0, 1], np.array([[0, 0], [0, 1]]))
    w = 0.5 - 0.3j
    assert anti.value([w])[0] == pytest.approx(np.conj(w) + 0.5 * np.conj(w) ** 2)
    for f in (h, sq, anti):
        assert not np.any(pluriharmonic_residual(f, None, z[: f.n]))


def test_jet_function_prescribes_derivatives(rng):
    for n in (1, 2, 3):
        c1 = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
        c2 = np.zeros((2 * n, 2 * n), dtype=complex)
        for block in (slice(0, n), slice(n, 2 * n)):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            c2[block, block] = a + a.T
        h = jet_test_function(c1, c2)
        jet = eval_jet(h.components[0], np.zeros(n))
        np.testing.assert_allclose(jet.d, c1, atol=1e-14)
        np.testing.assert_allclose(jet.dd, c2, atol=1e-14)
        for z in random_points(rng, n, 4):
            assert np.max(np.abs(pluriharmonic_residual(h, None, z))) < 1e-12


def test_jet_function_rejects_bad_coefficients():
    mixed = np.zeros((2, 2))
    mixed[0, 1] = mixed[1, 0] = 1
    with pytest.raises(ValueError, match="mixed-type"):
        jet_test_function([0, 0], mixed)
    with pytest.raises(ValueError, match="symmetric"):
        jet_test_function([0, 0, 0, 0], np.triu(np.ones((4, 4))))
    with pytest.raises(ValueError):
        jet_test_function([1, 2, 3])


def test_pullback_of_jet_function(rng):
    psi = random_map(rng, 2, 2, "holomorphic")
    h = jet_test_function([1, 0.5, 0.2, 0], np.diag([2, 0, 1, 0]))
    assert pullback_check(psi, h).composed_max_residual < 1e-10


def test_pullback_hopf_example():
    psi = MapField.from_strings(1, ["1 + z1", "z1^2"])
    rep = pullback_check(psi, MapField.from_strings(2, ["z1"]))
    assert rep.passed and rep.composed_max_residual == 0


def test_pullback_randomized(rng):
    for _ in range(8):
        psi = random_map(rng, 2, 2, "holomorphic", degree=2)
        phi = random_map(rng, 2, 1, "pluriharmonic", degree=2)
        assert pullback_check(psi, phi, count=8).composed_max_residual < 1e-10


def test_pullback_preconditions(rng):
    with pytest.raises(GeometryError):
        pullback_check(MapField.from_strings(2, ["z1", "conj(z2)"]), MapField.from_strings(2, ["z1"]))
    with pytest.raises(GeometryError):
        pullback_check(identity_map(2), MapField.from_strings(2, ["z1*conj(z1)"]))


def test_source_scaling_leaves_verdicts(rng):
    scaled = catalog_metric("conformal", 2, factor="3.5")
    for kind in ("holomorphic", "antiholomorphic", "pluriharmonic", "general"):
        psi = random_map(rng, 2, 2, kind, degree=2)
        a = is_pluriharmonic_morphism(psi, None, None, count=8)
        b = is_pluriharmonic_morphism(psi, scaled, None, count=8)
        assert (a.holomorphic, a.antiholomorphic, a.pluriharmonic, a.morphism) == (
            b.holomorphic, b.antiholomorphic, b.pluriharmonic, b.morphism)


@pytest.mark.parametrize("target", ["flat", "fubini_study"])
def test_kaehler_target_corollary(target, rng):
    for kind in ("holomorphic", "antiholomorphic", "pluriharmonic", "general"):
        for r in (1, 2):
            m = None if target == "flat" else catalog_metric(target, r)
            psi = random_map(rng, 2, r, kind, degree=2, target_metric=m)
            v = is_pluriharmonic_morphism(psi, count=8)
            assert v.morphism == (v.holomorphic or v.antiholomorphic)
