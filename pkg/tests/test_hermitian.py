import json

import numpy as np
import pytest

from pluriharm.errors import (
    ConfigError,
    DimensionMismatchError,
    ExpressionSyntaxError,
    IllConditionedError,
    InadmissiblePointError,
    MetricError,
)
from pluriharm.hermitian import (
    HermitianMetricField,
    catalog_metric,
    inverse_metric,
    load_metric_file,
    metric_at,
    metric_from_dict,
    resolve_metric,
)
from pluriharm.wirtinger import bar_permutation

from conftest import random_points

CATALOG = [("flat", 1), ("flat", 3), ("hopf", 2), ("hopf", 3), ("fubini_study", 1), ("fubini_study", 2),
           ("fubini_study", 3)]


def test_flat_metric_is_constant():
    jet = metric_at(catalog_metric("flat", 3), [1j, 2, -0.5])
    np.testing.assert_array_equal(jet.G, np.eye(3))
    assert not np.any(jet.dG)


def test_hopf_values_at_unit_point():
    jet = metric_at(catalog_metric("hopf", 2), [1, 0])
    np.testing.assert_allclose(jet.G, np.eye(2), atol=1e-15)
    # d_1 g_{1 1bar} = -conj(z1)/|z|^4
    assert jet.dG[0, 0, 0] == pytest.approx(-1)


def test_hopf_at_one_one_is_half_identity():
    jet = metric_at(catalog_metric("hopf", 2), [1, 1])
    np.testing.assert_allclose(jet.G, 0.5 * np.eye(2), atol=1e-15)


@pytest.mark.parametrize("G, expected", [
    (np.diag([2.0, 1.0]), np.diag([0.5, 1.0])),
    (np.eye(3), np.eye(3)),
])
def test_inverse_examples(G, expected):
    np.testing.assert_allclose(inverse_metric(G), expected, atol=1e-15)


def test_inverse_of_hopf_on_radius_two_sphere():
    G = metric_at(catalog_metric("hopf", 2), [2, 0]).G
    np.testing.assert_allclose(inverse_metric(G), 4 * np.eye(2), atol=1e-14)


def test_inverse_convention():
    G = np.array([[2.0, 0.5 - 1j], [0.5 + 1j, 3.0]])
    H = inverse_metric(G)
    # sum_j g^{i jbar} g_{k jbar} = delta_ik
    np.testing.assert_allclose(np.einsum("ij,kj->ik", H, G), np.eye(2), atol=1e-14)


def test_inverse_rejects_ill_conditioned():
    with pytest.raises(IllConditionedError):
        inverse_metric(np.diag([1.0, 1e-13]))


@pytest.mark.parametrize("name, n", CATALOG)
def test_catalog_hermitian_and_positive(name, n, rng):
    m = catalog_metric(name, n)
    perm = bar_permutation(n)
    for z in random_points(rng, n, 32, radius=m.exclusion_radius):
        jet = metric_at(m, z)
        assert np.max(np.abs(jet.G - jet.G.conj().T)) <= 1e-10
        assert np.linalg.eigvalsh(jet.G)[0] > 1e-10
        mirrored = np.conj(jet.dG[perm].transpose(0, 2, 1))
        assert np.max(np.abs(jet.dG - mirrored)) <= 1e-12


@pytest.mark.parametrize("lam", [0.5, 2.0, 3.0])
def test_hopf_scaling(lam, rng):
    m = catalog_metric("hopf", 3)
    for z in random_points(rng, 3, 16, radius=0.3 / min(lam, 1.0)):
        G, Gs = metric_at(m, z).G, metric_at(m, lam * z).G
        np.testing.assert_allclose(Gs, G / lam**2, rtol=1e-12, atol=0)


def test_fubini_study_one_dimensional(rng):
    m = catalog_metric("fubini_study", 1)
    for z in random_points(rng, 1, 32):
        assert metric_at(m, z).G[0, 0] == pytest.approx(1 / (1 + abs(z[0]) ** 2) ** 2, rel=1e-13)
    assert metric_at(m, [0]).G[0, 0] == 1


def test_catalog_errors():
    with pytest.raises(ConfigError):
        catalog_metric("hopf", 1)
    with pytest.raises(ConfigError):
        catalog_metric("sphere", 2)
    with pytest.raises(ConfigError):
        catalog_metric("conformal", 2)
    with pytest.raises(ConfigError):
        catalog_metric("conformal", 2, factor="z1")
    with pytest.raises(ConfigError):
        catalog_metric("conformal", 2, factor="-1 - abs2(z1)")


def test_conformal_metric():
    m = catalog_metric("conformal", 2, factor="1 + abs2(z1 - 1)")
    jet = metric_at(m, [1, 5j])
    np.testing.assert_allclose(jet.G, np.eye(2))


def test_inadmissible_point():
    with pytest.raises(InadmissiblePointError):
        metric_at(catalog_metric("hopf", 2), [0.1, 0.1])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        metric_at(catalog_metric("flat", 2), [1, 2, 3])


def test_non_hermitian_rejected():
    m = HermitianMetricField.from_strings([["1", "z1"], ["z1", "1"]])
    with pytest.raises(MetricError):
        metric_at(m, [0.3j, 0])


def test_indefinite_rejected():
    m = HermitianMetricField.from_strings([["1", "0"], ["0", "-1"]])
    with pytest.raises(MetricError):
        metric_at(m, [0, 0])


def test_metric_file_round_trip(tmp_path):
    m = catalog_metric("fubini_study", 2)
    path = tmp_path / "fs.json"
    path.write_text(json.dumps(m.to_dict()))
    loaded = load_metric_file(path)
    z = [0.3 - 0.2j, 1.1j]
    np.testing.assert_array_equal(metric_at(loaded, z).G, metric_at(m, z).G)
    assert loaded.name == m.name


def test_metric_file_errors(tmp_path, data_dir):
    with pytest.raises(ConfigError):
        load_metric_file(tmp_path / "missing.json")
    with pytest.raises(ConfigError):
        metric_from_dict({"dimension": 2, "g": [["1"]]})
    with pytest.raises(ExpressionSyntaxError):
        load_metric_file(data_dir / "bad_syntax.json")


def test_resolve_metric(data_dir):
    assert resolve_metric(None, 2) is None
    assert resolve_metric("hopf", 3).name == "hopf3"
    assert resolve_metric("conformal:2 + abs2(z1)", 1).n == 1
    assert resolve_metric("hopf2.json", base_dir=data_dir).n == 2
    with pytest.raises(ConfigError):
        resolve_metric("hopf")
