"""Dirichlet and Fejer kernels, partial sums, Fejer means and convolution.

Fast paths work on coefficients: S_n keeps the first n coefficients and
sigma_n weights coefficient j by (n - j)/n.  The point-domain versions
(``fejer_mean_direct``, ``convolve_naive``) are oracles for those.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import OutOfRange, ProfileMismatch, RadixProfile, VilenkinError, sub_indices
from .transform import (
    GridFunction,
    Spectrum,
    character_samples,
    forward,
    inverse,
    synthesize,
)


def _check_degree(n: int, profile: RadixProfile, lo: int = 1):
    if not lo <= n <= profile.size:
        raise OutOfRange(f"degree n = {n} outside [{lo}, {profile.size}]")


def fejer_weights(n: int, size: int) -> np.ndarray:
    """(n - j)/n for j < n, zero from n on."""
    j = np.arange(size)
    return np.where(j < n, (n - j) / n, 0.0)


@dataclass(frozen=True)
class KernelSpec:
    kind: str
    degree: int
    profile: RadixProfile

    def __post_init__(self):
        if self.kind not in ("dirichlet", "fejer"):
            raise VilenkinError(f"unknown kernel kind {self.kind!r}")
        _check_degree(self.degree, self.profile)

    def build(self) -> GridFunction:
        if self.kind == "dirichlet":
            return dirichlet_kernel(self.degree, self.profile)
        return fejer_kernel(self.degree, self.profile)


def dirichlet_kernel(n: int, profile: RadixProfile) -> GridFunction:
    """D_n = psi_0 + ... + psi_{n-1}."""
    _check_degree(n, profile)
    return synthesize(profile, (np.arange(profile.size) < n).astype(np.complex128))


def fejer_kernel(n: int, profile: RadixProfile) -> GridFunction:
    """K_n = (D_1 + ... + D_n)/n, built from its coefficients (n - j)/n."""
    _check_degree(n, profile)
    return synthesize(profile, fejer_weights(n, profile.size))


def partial_sum(f: GridFunction, n: int) -> GridFunction:
    """S_n f, the synthesis of the first n coefficients (S_0 f = 0)."""
    _check_degree(n, f.profile, lo=0)
    c = forward(f).coefficients.copy()
    c[n:] = 0
    return synthesize(f.profile, c)


def fejer_mean(f: GridFunction, n: int) -> GridFunction:
    """sigma_n f via triangular coefficient weights."""
    _check_degree(n, f.profile)
    return fejer_mean_from_spectrum(forward(f), n)


def fejer_mean_from_spectrum(s: Spectrum, n: int) -> GridFunction:
    _check_degree(n, s.profile)
    return synthesize(s.profile, s.coefficients * fejer_weights(n, s.size))


def fejer_mean_direct(f: GridFunction, n: int) -> GridFunction:
    """Oracle: (S_1 f + ... + S_n f)/n accumulated term by term in the point domain."""
    _check_degree(n, f.profile)
    coeffs = forward(f).coefficients
    partial = np.zeros(f.size, dtype=np.complex128)
    total = np.zeros(f.size, dtype=np.complex128)
    for k in range(n):
        partial = partial + coeffs[k] * character_samples(k, f.profile).samples
        total = total + partial
    return GridFunction(f.profile, total / n)


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """(f * g)(x) = integral of f(t) g(x - t) dmu(t), via the coefficient product."""
    if f.profile != g.profile:
        raise ProfileMismatch(f"profiles {f.profile} and {g.profile} differ")
    return inverse(Spectrum(f.profile, forward(f).coefficients * forward(g).coefficients))


def convolve_naive(f: GridFunction, g: GridFunction) -> GridFunction:
    """Oracle: the double sum (1/M_R) sum_t f(t) g(x - t) with group subtraction."""
    if f.profile != g.profile:
        raise ProfileMismatch(f"profiles {f.profile} and {g.profile} differ")
    idx = np.arange(f.size)
    diff = sub_indices(f.profile, idx[:, None], idx[None, :])
    return GridFunction(f.profile, g.samples[diff] @ f.samples / f.size)
