import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vilenkin.constructions import build_fA, witness_spec
from vilenkin.group import OutOfRange, VilenkinError, build_profile, in_cylinder
from vilenkin.hardy import (
    MartingaleView,
    QuasiNormParams,
    conditional_expectation,
    growth_weight,
    hardy_norm,
    log_bracket,
    lp_norm,
    maximal_function,
    modulus_of_continuity,
    quasi_norm,
    sigma_sharp,
    sigma_star,
    sigma_tilde,
    weak_lp_norm,
)
from vilenkin.kernels import fejer_mean, partial_sum
from vilenkin.transform import GridFunction, character_samples, constant

from conftest import random_grid


def brute_maximal(f):
    prof = f.profile
    idx = np.arange(prof.size)
    out = np.zeros(prof.size)
    for x in range(prof.size):
        for M in prof.orders:
            cell = idx % M == x % M
            out[x] = max(out[x], abs(f.samples[cell].mean()))
    return out


def brute_weak(values, p):
    a = np.abs(values)
    lams = set()
    for v in a:
        lams.update({v, v * (1 - 1e-12), v * (1 + 1e-12)})
    return max(lam**p * np.mean(a > lam) for lam in lams if lam > 0) ** (1 / p)


def test_conditional_expectation_examples(rng):
    prof = build_profile((2, 3, 2))
    f = random_grid(prof, rng)
    assert np.array_equal(conditional_expectation(f, prof.resolution).samples, f.samples)
    assert np.allclose(conditional_expectation(f, 0).samples, f.samples.mean())
    p22 = build_profile((2, 2))
    delta = GridFunction(p22, [1, 0, 0, 0])
    assert np.allclose(conditional_expectation(delta, 1).samples, [0.5, 0, 0.5, 0])
    with pytest.raises(OutOfRange):
        conditional_expectation(f, 4)


def test_conditional_expectation_is_partial_sum(profile, rng):
    f = random_grid(profile, rng)
    for N, M in enumerate(profile.orders):
        a = conditional_expectation(f, N).samples
        b = partial_sum(f, M).samples
        assert np.max(np.abs(a - b)) < 1e-12


def test_martingale_view_levels_and_tower(profile, rng):
    f = random_grid(profile, rng)
    view = MartingaleView.of(f)
    assert len(view.levels) == profile.resolution + 1
    assert np.array_equal(view.level(profile.resolution).samples, f.samples)
    idx = np.arange(profile.size)
    for N, M in enumerate(profile.orders):
        lev = view.level(N).samples
        # constant on level-N cosets
        for r in range(M):
            cell = lev[idx % M == r]
            assert np.max(np.abs(cell - cell[0])) < 1e-12
        assert np.max(np.abs(lev - conditional_expectation(f, N).samples)) < 1e-12
        if N < profile.resolution:
            tower = conditional_expectation(view.level(N + 1), N).samples
            assert np.max(np.abs(tower - lev)) < 1e-12
    assert np.max(np.abs(view.maximal().samples - maximal_function(f).samples)) < 1e-12


def test_maximal_function_oracle(profile, rng):
    f = random_grid(profile, rng)
    assert np.max(np.abs(maximal_function(f).samples - brute_maximal(f))) < 1e-12


def test_maximal_function_examples():
    prof = build_profile((2, 2, 2))
    assert np.allclose(maximal_function(constant(prof, -3 + 4j)).samples, 5)
    assert np.allclose(maximal_function(character_samples(1, prof)).samples, 1)
    fA = build_fA(witness_spec(2, extra_levels=1))
    assert np.array_equal(maximal_function(fA).samples, np.abs(fA.samples))


def test_quasi_norm_examples():
    prof = build_profile((2, 2, 2))
    f1 = build_fA(witness_spec(1, extra_levels=1))
    assert quasi_norm(f1, QuasiNormParams(0.5, "Hp")) == pytest.approx(0.5, rel=1e-12)
    for p in (0.25, 0.5, 1, 2, 3.7):
        for flavor in ("Lp", "weakLp", "Hp"):
            assert quasi_norm(constant(prof), QuasiNormParams(p, flavor)) == pytest.approx(1, rel=1e-14)
    ind = GridFunction(prof, in_cylinder(prof, 1).astype(float))
    for p in (0.25, 0.5, 1, 2):
        assert quasi_norm(ind, p, "weakLp") == pytest.approx(0.5 ** (1 / p), rel=1e-14)
    with pytest.raises(VilenkinError):
        QuasiNormParams(0)
    with pytest.raises(VilenkinError):
        QuasiNormParams(-1, "Lp")
    with pytest.raises(VilenkinError):
        QuasiNormParams(1, "BMO")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([0.25, 0.5, 1.0, 2.0]))
def test_weak_matches_lambda_sweep_and_is_below_lp(seed, p):
    rng = np.random.default_rng(seed)
    prof = build_profile((2, 3, 2))
    # integer-valued samples force ties between level sets
    f = GridFunction(prof, rng.integers(-3, 4, prof.size))
    if np.all(f.samples == 0):
        return
    assert weak_lp_norm(f.samples, p) == pytest.approx(brute_weak(f.samples, p), rel=1e-9)
    g = random_grid(prof, rng)
    for h in (f, g):
        assert quasi_norm(h, p, "weakLp") <= quasi_norm(h, p, "Lp") * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3),
       st.sampled_from([0.25, 0.5, 1.0, 2.0]))
def test_homogeneity(seed, c, p):
    prof = build_profile((3, 2, 2))
    f = random_grid(prof, np.random.default_rng(seed))
    for flavor in ("Lp", "weakLp", "Hp"):
        assert quasi_norm(c * f, p, flavor) == pytest.approx(abs(c) * quasi_norm(f, p, flavor), rel=1e-12)


def test_level_domination_and_contraction(profile, rng):
    f = random_grid(profile, rng)
    fstar = maximal_function(f).samples
    for p in (0.25, 0.5, 1, 2):
        hp = hardy_norm(f, p)
        for N in range(profile.resolution + 1):
            S = conditional_expectation(f, N)
            assert np.all(np.abs(S.samples) <= fstar + 1e-12)
            assert lp_norm(S.samples, p) <= hp * (1 + 1e-12)
            assert hardy_norm(S, p) <= hp * (1 + 1e-10)


def test_modulus_of_continuity_examples(rng):
    prof = build_profile((2, 2, 2))
    psi2 = character_samples(2, prof)
    for p in (0.5, 1):
        assert modulus_of_continuity(psi2, 1, p) == pytest.approx(1, rel=1e-14)
        assert modulus_of_continuity(psi2, 2, p) < 1e-15
        f = random_grid(prof, rng)
        assert modulus_of_continuity(f, 3, p) < 1e-12
    with pytest.raises(OutOfRange):
        modulus_of_continuity(psi2, 4, 1)


def test_log_bracket_and_weights():
    assert log_bracket(0.25) == 0
    assert log_bracket(0.49) == 0
    assert log_bracket(0.5) == 1
    assert log_bracket(1.0) == 1
    assert growth_weight(4, 0.25) == 16
    assert growth_weight(3, 0.5) == pytest.approx(math.log2(4) ** 2)
    assert growth_weight(2, 0.5, shift=0) == pytest.approx(1.0)
    assert 0 < growth_weight(2, 0.3, shift=0) < math.inf


def test_maximal_operator_examples():
    prof = build_profile((2, 2, 2))
    one = constant(prof)
    assert np.allclose(sigma_star(one).samples, 1)
    assert np.allclose(sigma_sharp(one).samples, 1)
    psi1 = character_samples(1, prof)
    assert np.allclose(sigma_tilde(psi1, 0.25, 4).samples, 1 / 8, atol=1e-15)
    with pytest.raises(VilenkinError):
        sigma_tilde(psi1, 0.75)
    with pytest.raises(OutOfRange):
        sigma_star(psi1, 9)


def test_maximal_operators_dominate(rng):
    prof = build_profile((2, 3, 2))
    f = random_grid(prof, rng)
    star = sigma_star(f).samples
    sharp = sigma_sharp(f).samples
    assert np.all(sharp <= star + 1e-12)
    for n in range(1, prof.size + 1):
        assert np.all(np.abs(fejer_mean(f, n).samples) <= star + 1e-12)
    spec = witness_spec(3)
    fA = build_fA(spec)
    assert np.all(sigma_sharp(fA).samples >= np.abs(fejer_mean(fA, spec.M_next).samples) - 1e-12)
