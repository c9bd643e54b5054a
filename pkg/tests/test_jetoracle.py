import cmath
import math

import pytest

from opident.jetoracle import (
    Jet,
    agreement_reports,
    check_exponent_kernel,
    cosine,
    cube_root_mix,
    eval_identity_detail,
    eval_identity_numeric,
    exponential,
    gaussian_half,
    jet_of,
    linear,
    sample_points,
    sine,
)


ALL_FUNCTIONS = [sine(), cosine(), exponential(1), exponential(-2.5), linear(),
                 gaussian_half(), cube_root_mix()]


def test_jet_of_maclaurin_sine():
    j = jet_of(sine(), 0.0, 3)
    assert [c.real for c in j.coeffs] == pytest.approx([0.0, 1.0, 0.0, -1 / 6])


def test_jet_of_linear():
    j = jet_of(linear(), 2.0, 2)
    assert [c.real for c in j.coeffs] == [2.0, 1.0, 0.0]


def test_jet_of_exponential():
    j = jet_of(exponential(1), 0.0, 2)
    assert [c.real for c in j.coeffs] == pytest.approx([1.0, 1.0, 0.5])


def test_jet_arithmetic_truncates_to_min_order():
    a = Jet(0.5, (1.0, 2.0, 3.0))
    b = Jet(0.5, (4.0, 5.0))
    assert (a + b).order == 1
    assert (a * b).coeffs == (4.0, 13.0)


def test_jet_derivative_shifts_coefficients():
    a = Jet(0.0, (1.0, 2.0, 3.0, 4.0))
    assert a.derivative().coeffs == (2.0, 6.0, 12.0)
    with pytest.raises(ValueError):
        Jet(0.0, (1.0,)).derivative()


def test_jet_mismatched_base_points():
    with pytest.raises(ValueError):
        Jet(0.0, (1.0, 2.0)) + Jet(0.5, (1.0, 2.0))


@pytest.mark.parametrize("f", ALL_FUNCTIONS, ids=str)
@pytest.mark.parametrize("x0", [-0.8, 0.0, 0.45, 1.3])
def test_first_coefficient_matches_central_difference(f, x0):
    h = 1e-5
    deriv = (jet_of(f, x0 + h, 0).value - jet_of(f, x0 - h, 0).value) / (2 * h)
    exact = jet_of(f, x0, 1).coeffs[1]
    scale = max(abs(exact), 1.0)
    assert abs(deriv - exact) / scale < 1e-7


@pytest.mark.parametrize(
    "f", [sine(), cosine(), exponential(1), exponential(-1), linear(), cube_root_mix()],
    ids=str,
)
@pytest.mark.parametrize("x0", [-1.0, 0.3, 0.9])
def test_declared_equation_is_satisfied(f, x0):
    r = f.equation_order
    j = jet_of(f, x0, r)
    d = j
    for _ in range(r):
        d = d.derivative()
    assert abs(d.value - f.lambda_value ** r * j.value) < 1e-10


def test_cube_root_mix_is_real_valued():
    for x0 in sample_points(10):
        assert abs(jet_of(cube_root_mix(), x0, 4).value.imag) < 1e-12


def test_identity_residual_sine_n3():
    assert eval_identity_numeric(sine(), 3, 0.3) < 1e-10


def test_identity_residual_exponential_n4():
    assert eval_identity_numeric(exponential(1), 4, -0.7) < 1e-10


def test_sine_n2_absolute_residual_is_one():
    # the leftover is cos x - i sin x = e^{-ix}, modulus exactly 1
    for x0 in (0.3, -0.9, 1.0):
        d = eval_identity_detail(sine(), 2, x0)
        assert abs(d.absolute - 1.0) < 1e-12
        assert abs(d.value - cmath.exp(-1j * x0)) < 1e-12
        assert d.relative > 1e-3


def test_generalized_identity_with_m():
    for n in (1, 3, 5, 7):
        for m in (0, 2, 4):
            for x0 in (-0.5, 0.8):
                assert eval_identity_numeric(linear(), n, x0, lam=0, m=m) < 1e-10


def test_lambda_override_for_decaying_exponential():
    # u = e^{-x} solves Du = -u, i.e. Du = -L*u with L = 1
    for n in (1, 3, 5):
        assert eval_identity_numeric(exponential(-1), 1, 0.4, lam=1) < 1e-12
        assert eval_identity_numeric(exponential(-1), n, 0.4, lam=1) < 1e-10


def test_exponent_kernel_examples():
    assert check_exponent_kernel(0.0) == 0.0
    assert check_exponent_kernel(1.0) < 1e-12
    assert check_exponent_kernel(-2.5) < 1e-12


def test_gaussian_jet_values():
    j = jet_of(gaussian_half(), 1.0, 2)
    g = math.exp(-0.5)
    assert j.coeffs[0].real == pytest.approx(g)
    assert j.coeffs[1].real == pytest.approx(-g)  # f' = -x f
    assert j.coeffs[2].real == pytest.approx(0.0, abs=1e-15)  # f'' = (x^2-1) f


def test_sample_points_avoid_origin_when_asked():
    pts = sample_points(10)
    assert len(pts) == 10 and pts[0] == -1.0 and pts[-1] == 1.0
    assert all(abs(x) > 1e-2 for x in sample_points(10, exclude_origin_radius=1e-2))


def test_rejects_missing_lambda():
    with pytest.raises(ValueError):
        eval_identity_numeric(gaussian_half(), 2, 0.1)


def test_unknown_kind_rejected():
    from opident.jetoracle import ConcreteFunction

    with pytest.raises(ValueError):
        jet_of(ConcreteFunction("SINH"), 0.0, 2)


def test_even_n_nonzero_is_visible_to_the_oracle():
    # the engine reports NONZERO for even n >= 2 in the second-order case;
    # the sine residual must be visibly nonzero at (almost) every sample
    from opident.jetoracle import nonzero_instance_report

    for n in (2, 4, 6):
        assert nonzero_instance_report("even_n", sine(), n).ok


def test_agreement_suite_is_green():
    reports = agreement_reports()
    assert all(r.ok for r in reports)
    ids = {r.check_id for r in reports}
    assert {
        "oracle_first_order", "oracle_second_order", "oracle_second_order_witness",
        "oracle_lambda_zero", "oracle_general", "oracle_decay_chain",
        "oracle_third_order", "oracle_third_order_negative", "oracle_exponent_kernel",
    } <= ids
