import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vilenkin.group import OutOfRange, ProfileMismatch, build_profile, in_cylinder
from vilenkin.kernels import (
    KernelSpec,
    convolve,
    convolve_naive,
    dirichlet_kernel,
    fejer_kernel,
    fejer_mean,
    fejer_mean_direct,
    partial_sum,
)
from vilenkin.transform import GridFunction, character_samples, constant, forward

from conftest import random_grid


def direct_dirichlet(n, prof):
    """Oracle: add up psi_0..psi_{n-1} sample by sample."""
    out = np.zeros(prof.size, dtype=complex)
    for k in range(n):
        out += character_samples(k, prof).samples
    return out


@pytest.mark.parametrize("radices", [(2, 2, 2, 2), (2, 3, 2, 3), (3, 3, 3)])
def test_dirichlet_at_orders_is_scaled_indicator(radices):
    prof = build_profile(radices)
    for N, M in enumerate(prof.orders):
        D = dirichlet_kernel(M, prof).samples
        expect = M * in_cylinder(prof, N)
        assert np.max(np.abs(D - expect)) <= 1e-10
        assert np.array_equal(np.rint(D.real), expect)


def test_dirichlet_examples():
    prof = build_profile((2, 2, 2))
    D4 = dirichlet_kernel(4, prof).samples
    assert np.array_equal(D4, [4, 0, 0, 0, 4, 0, 0, 0])
    assert np.array_equal(dirichlet_kernel(1, prof).samples, np.ones(8))
    D3 = dirichlet_kernel(3, prof).samples.real
    assert np.array_equal(D3[:4], [3, 1, 1, -1])
    with pytest.raises(OutOfRange):
        dirichlet_kernel(0, prof)
    with pytest.raises(OutOfRange):
        dirichlet_kernel(9, prof)


def test_dirichlet_matches_direct_sum(profile):
    for n in range(1, profile.size + 1):
        assert np.max(np.abs(dirichlet_kernel(n, profile).samples - direct_dirichlet(n, profile))) < 1e-12


def test_fejer_kernel_definition():
    prof = build_profile((2, 3, 2, 2))
    assert np.allclose(fejer_kernel(1, prof).samples, 1)
    # M_R = 24 here, so every admissible degree is covered
    for n in range(1, prof.size + 1):
        total = sum(direct_dirichlet(k, prof) for k in range(1, n + 1))
        assert np.max(np.abs(n * fejer_kernel(n, prof).samples - total)) <= 1e-12 * n * n
        coeffs = forward(fejer_kernel(n, prof)).coefficients
        j = np.arange(prof.size)
        expect = np.where(j < n, (n - j) / n, 0)
        assert np.max(np.abs(coeffs - expect)) < 1e-12


def test_kernel_spec():
    prof = build_profile((2, 3))
    assert np.allclose(KernelSpec("fejer", 4, prof).build().samples, fejer_kernel(4, prof).samples)
    with pytest.raises(ValueError):
        KernelSpec("poisson", 2, prof)
    with pytest.raises(OutOfRange):
        KernelSpec("dirichlet", 7, prof)


def test_partial_sum_examples(rng):
    prof = build_profile((2, 3, 2))
    f = random_grid(prof, rng)
    assert np.allclose(partial_sum(f, prof.size).samples, f.samples, atol=1e-13)
    assert np.all(partial_sum(f, 0).samples == 0)
    psi2 = character_samples(2, prof)
    assert np.max(np.abs(partial_sum(psi2, 2).samples)) < 1e-15
    with pytest.raises(OutOfRange):
        partial_sum(f, prof.size + 1)
    p22 = build_profile((2, 2))
    delta = GridFunction(p22, [1, 0, 0, 0])
    assert np.allclose(partial_sum(delta, 2).samples, [0.5, 0, 0.5, 0], atol=1e-15)


def test_partial_sum_is_convolution_with_dirichlet(profile, rng):
    f = random_grid(profile, rng)
    for n in range(1, profile.size + 1):
        via_conv = convolve_naive(f, dirichlet_kernel(n, profile)).samples
        assert np.max(np.abs(partial_sum(f, n).samples - via_conv)) < 1e-12


def test_fejer_mean_examples():
    prof = build_profile((2, 2, 2))
    c = constant(prof, 2.5 - 1j)
    for n in range(1, 9):
        assert np.allclose(fejer_mean(c, n).samples, 2.5 - 1j, atol=1e-15)
    psi1 = character_samples(1, prof)
    assert np.max(np.abs(fejer_mean(psi1, 4).samples - 0.75 * psi1.samples)) < 1e-15


def test_fejer_three_routes_agree():
    rng = np.random.default_rng(11)
    for radices in [(2, 2, 2, 2, 2, 2, 2, 2), (2, 3, 2, 3), (4, 3, 5)]:
        prof = build_profile(radices)
        f = random_grid(prof, rng)
        for n in range(1, prof.size + 1):
            fast = fejer_mean(f, n).samples
            direct = fejer_mean_direct(f, n).samples
            assert np.max(np.abs(fast - direct)) < 1e-12
            if n <= 16:
                conv = convolve_naive(f, fejer_kernel(n, prof)).samples
                assert np.max(np.abs(fast - conv)) < 1e-12


def test_fejer_triangular_weights(profile, rng):
    f = random_grid(profile, rng)
    s = forward(f).coefficients
    j = np.arange(profile.size)
    for n in range(1, profile.size + 1):
        c = forward(fejer_mean(f, n)).coefficients
        assert np.max(np.abs(c - np.where(j < n, s * (n - j) / n, 0))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_fejer_linearity(seed, a, b):
    prof = build_profile((2, 3, 2))
    rng = np.random.default_rng(seed)
    f, g = random_grid(prof, rng), random_grid(prof, rng)
    for n in (1, 5, 12):
        lhs = fejer_mean(a * f + b * g, n).samples
        rhs = a * fejer_mean(f, n).samples + b * fejer_mean(g, n).samples
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1 + abs(a) + abs(b)) * 10


def test_convolution_examples(profile, rng):
    f = random_grid(profile, rng)
    full = dirichlet_kernel(profile.size, profile)
    assert np.max(np.abs(convolve(f, full).samples - f.samples)) < 1e-12
    assert np.max(np.abs(convolve_naive(f, full).samples - f.samples)) < 1e-12
    mean = convolve(f, constant(profile)).samples
    assert np.allclose(mean, f.samples.mean(), atol=1e-14)
    g = random_grid(profile, rng)
    assert np.max(np.abs(convolve(f, g).samples - convolve_naive(f, g).samples)) < 1e-12


def test_convolve_profile_mismatch():
    a = constant(build_profile((2, 3)))
    b = constant(build_profile((3, 2)))
    with pytest.raises(ProfileMismatch):
        convolve(a, b)
    with pytest.raises(ProfileMismatch):
        convolve_naive(a, b)
