"""
Test module for the sigmoidal separable kernel family.

Notes
-----
- The closed-form integrals of unclamped kernels are checked against the
  adaptive quadrature of the abstract base class.
"""

import numpy as np
import pytest

from coblockfit.core import DomainError
from coblockfit.kernels import (
    KernelABC,
    SigmoidSeparableKernel,
    f_beta,
    f_integral,
    make_sigmoid_kernel,
    z_beta,
)

BETAS = [1.0, 2.0, 3.0, 5.0]


def test_linear_normalizer():
    """The identity sigmoid (beta = 1) has the normalizer one half."""
    assert np.isclose(z_beta(1.0), 0.5, atol=1e-10)


@pytest.mark.parametrize("beta", BETAS)
def test_antisymmetry(beta):
    """f is antisymmetric about one half."""
    xx = np.linspace(0, 1, 21)

    assert np.allclose(f_beta(beta, xx), -f_beta(beta, 1 - xx), atol=1e-12)
    assert f_beta(beta, 0.5) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("beta", BETAS)
def test_half_area(beta):
    """The area under |f| is one half; f integrates to zero."""
    assert f_integral(beta, 0.5) == pytest.approx(-0.25, abs=1e-9)
    assert f_integral(beta, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(
        f_integral(beta, [0.2, 0.8]), f_integral(beta, 0.2), atol=1e-12
    )


def test_scalar_output():
    """Scalar inputs give floats."""
    assert isinstance(f_beta(3.0, 0.25), float)
    assert isinstance(f_integral(3.0, 0.25), float)


@pytest.mark.parametrize("beta", [0.0, 0.5, -1.0])
def test_invalid_beta(beta):
    """Shape exponents below one are not accepted."""
    with pytest.raises(DomainError):
        z_beta(beta)
    with pytest.raises(DomainError):
        SigmoidSeparableKernel(beta, 0.5)


@pytest.mark.parametrize("rho", [0.0, -0.1, 1.5])
def test_invalid_rho(rho):
    """The sparsity scale must be in (0, 1]."""
    with pytest.raises(DomainError):
        make_sigmoid_kernel(3.0, rho)


def test_clamping_flag():
    """Only steep sigmoids give valid probabilities without clamping."""
    assert not make_sigmoid_kernel(1.0, 1.0).valid_unclamped
    assert not make_sigmoid_kernel(1.0, 1.0).supports_four_case
    assert make_sigmoid_kernel(3.0, 1.0).valid_unclamped
    assert make_sigmoid_kernel(3.0, 1.0).supports_four_case
    assert make_sigmoid_kernel(1.0, 1.0).max_abs_f == pytest.approx(1.0)


@pytest.mark.parametrize("beta", BETAS)
def test_values_are_probabilities(beta):
    """Evaluation never leaves [0, rho]."""
    kernel = make_sigmoid_kernel(beta, 1.0)
    xx, yy = np.meshgrid(np.linspace(0, 1, 41), np.linspace(0, 1, 41))
    values = kernel(xx, yy)

    assert np.all(values >= 0.0)
    assert np.all(values <= 1.0)


def test_corner_values():
    """Corners of the unit square reach rho * (max|f|^2 + 1/2)."""
    kernel = make_sigmoid_kernel(3.0, 0.5)
    expected = 0.5 * (kernel.max_abs_f**2 + 0.5)

    assert float(kernel(0.0, 0.0)) == pytest.approx(expected)
    assert float(kernel(1.0, 1.0)) == pytest.approx(expected)
    off_corner = 0.5 * (0.5 - kernel.max_abs_f**2)
    assert float(kernel(0.0, 1.0)) == pytest.approx(off_corner)
    assert float(kernel(0.5, 0.3)) == pytest.approx(0.25)


def test_outside_domain():
    """Latent positions outside [0, 1] are rejected."""
    kernel = make_sigmoid_kernel(3.0, 0.5)
    with pytest.raises(DomainError):
        kernel(np.array([0.5, 1.2]), np.array([0.5, 0.5]))
    with pytest.raises(DomainError):
        kernel(-0.1, 0.5)


def test_closed_form_masses(sigmoid_kernel):
    """Closed-form block masses agree with adaptive quadrature."""
    xs = [0.0, 0.3, 0.7, 1.0]
    ys = [0.2, 0.5, 1.0]
    closed = sigmoid_kernel.cumulative_mass(xs, ys)
    generic = KernelABC.cumulative_mass(sigmoid_kernel, xs, ys)

    assert closed.shape == (4, 3)
    assert np.allclose(closed, generic, atol=1e-7)


def test_total_and_square_mass(sigmoid_kernel):
    """Total mass is rho / 2; the squared mass matches quadrature."""
    rho = sigmoid_kernel.rho

    assert sigmoid_kernel.total_mass() == pytest.approx(rho / 2)
    assert sigmoid_kernel.square_mass() == pytest.approx(
        KernelABC.square_mass(sigmoid_kernel), abs=1e-7
    )


def test_mass_of_quadrants(sigmoid_kernel):
    """Diagonal quadrants carry more mass than off-diagonal ones."""
    low_low = sigmoid_kernel.mass(0.0, 0.5, 0.0, 0.5)
    low_high = sigmoid_kernel.mass(0.0, 0.5, 0.5, 1.0)
    rho = sigmoid_kernel.rho

    assert low_low == pytest.approx(rho * (1 / 16 + 1 / 8))
    assert low_high == pytest.approx(rho * (-1 / 16 + 1 / 8))


def test_clamped_kernel_uses_quadrature():
    """A clamped kernel still integrates to a mass within [0, rho]."""
    kernel = make_sigmoid_kernel(1.0, 1.0)
    total = kernel.total_mass()

    # Clamping removes as much mass at the top as it adds at the bottom
    assert total == pytest.approx(0.5, abs=1e-6)
    assert kernel.breakpoints()[0].tolist() == [0.0, 0.5, 1.0]


def test_neg_entropy_sign(sigmoid_kernel):
    """The negative binary entropy integral is negative and finite."""
    value = sigmoid_kernel.neg_entropy()

    assert np.isfinite(value)
    assert -np.log(2) - 1e-9 <= value < 0.0


def test_description():
    """Kernel families carry a description."""
    assert "sigmoid" in SigmoidSeparableKernel.description.lower()
    assert "Shape exponent" in str(make_sigmoid_kernel(3.0, 0.5))
