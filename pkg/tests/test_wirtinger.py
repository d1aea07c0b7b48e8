import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pluriharm import exprdsl as ex
from pluriharm.errors import NonFiniteError, SingularEvaluationError
from pluriharm.fdiff import fd_expression
from pluriharm.wirtinger import bar_permutation, eval_jet

from conftest import normwise_rel, points, rational_trees


def test_holomorphic_square():
    j = eval_jet(ex.parse("z1^2", 1), [2])
    assert j.value == 4
    assert j.d[0] == 4 and j.d[1] == 0
    assert j.dd[0, 1] == 0
    assert j.dd[0, 0] == 2


def test_conjugate_seed():
    j = eval_jet(ex.parse("conj(z1)", 1), [1 + 1j])
    assert j.value == 1 - 1j
    np.testing.assert_array_equal(j.d, [0, 1])
    np.testing.assert_array_equal(j.dd, np.zeros((2, 2)))


@pytest.mark.parametrize("z", [0.0, 1 + 2j, -0.7 + 0.1j])
def test_abs2_product_rule(z):
    j = eval_jet(ex.parse("abs2(z1)", 1), [z])
    assert j.dd[0, 1] == 1 and j.dd[1, 0] == 1
    assert j.d[0] == np.conj(z) and j.d[1] == z


def test_order_one_omits_second_derivatives():
    j = eval_jet(ex.parse("z1*conj(z2)", 2), [1, 2j], order=1)
    assert j.dd is None and j.order == 1


def test_pole_guard():
    with pytest.raises(SingularEvaluationError) as info:
        eval_jet(ex.parse("1/(z1 - 1)", 1), [1.0])
    assert info.value.point is not None


def test_negative_power_at_zero_is_singular():
    with pytest.raises(SingularEvaluationError):
        eval_jet(ex.parse("z1^-2", 1), [0.0])


def test_overflow_reported():
    e = ex.parse("(z1^16)^16", 1)
    with pytest.raises(NonFiniteError):
        eval_jet(e, [1e3])


def test_negative_exponent_derivatives():
    z = 0.4 - 0.9j
    j = eval_jet(ex.parse("z1^-3", 1), [z])
    assert j.value == pytest.approx(z**-3)
    assert j.d[0] == pytest.approx(-3 * z**-4)
    assert j.dd[0, 0] == pytest.approx(12 * z**-5)


@settings(max_examples=150, deadline=None)
@given(rational_trees(2), points(2))
def test_first_and_mixed_derivatives_match_central_differences(e, z):
    jet = eval_jet(e, z)
    d_fd, dd_fd = fd_expression(e, z, 1e-5)
    assert normwise_rel(jet.d, d_fd) <= 1e-6
    assert normwise_rel(jet.dd, dd_fd) <= 1e-4


@settings(max_examples=100, deadline=None)
@given(rational_trees(3), points(3))
def test_second_derivatives_symmetric(e, z):
    dd = eval_jet(e, z).dd
    np.testing.assert_array_equal(dd, dd.T)


@settings(max_examples=100, deadline=None)
@given(rational_trees(2), points(2))
def test_conjugation_duality(e, z):
    direct = eval_jet(ex.Conj(e), z)
    flipped = eval_jet(e, z).conj()
    assert direct.value == flipped.value
    np.testing.assert_array_equal(direct.d, flipped.d)
    np.testing.assert_array_equal(direct.dd, flipped.dd)


@settings(max_examples=100, deadline=None)
@given(rational_trees(2), points(2))
def test_real_valued_jets(e, z):
    # abs2 of anything is real: d[ibar] = conj(d[i]) and dd respects the bar flip
    j = eval_jet(ex.Abs2(e), z)
    perm = bar_permutation(2)
    assert abs(j.value.imag) <= 1e-12 * max(1.0, abs(j.value))
    np.testing.assert_allclose(j.d[perm], np.conj(j.d), atol=1e-12 * max(1.0, np.max(np.abs(j.d))))
    np.testing.assert_allclose(j.dd[np.ix_(perm, perm)], np.conj(j.dd),
                               atol=1e-12 * max(1.0, np.max(np.abs(j.dd))))


@settings(max_examples=100, deadline=None)
@given(rational_trees(2), rational_trees(2), points(2),
       st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_linearity(e1, e2, z, a):
    combo = eval_jet(ex.Add(ex.Mul(ex.Const(a), e1), e2), z)
    j1, j2 = eval_jet(e1, z), eval_jet(e2, z)
    scale = max(1.0, abs(a)) * max(1.0, np.max(np.abs(j1.dd)), np.max(np.abs(j2.dd)),
                                   np.max(np.abs(j1.d)), np.max(np.abs(j2.d)), abs(j1.value), abs(j2.value))
    assert abs(combo.value - (a * j1.value + j2.value)) <= 1e-12 * scale
    assert np.max(np.abs(combo.d - (a * j1.d + j2.d))) <= 1e-12 * scale
    assert np.max(np.abs(combo.dd - (a * j1.dd + j2.dd))) <= 1e-12 * scale
