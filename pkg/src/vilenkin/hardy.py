"""Martingale structure, maximal functions and Hardy-space quasi-norms.

At resolution R every supremum over n in P becomes a maximum over the
levels 0..R (or over degrees n <= M_R); reported values should always be
read together with R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .group import OutOfRange, RadixProfile, VilenkinError
from .kernels import fejer_mean_from_spectrum
from .transform import GridFunction, forward

FLAVORS = ("Lp", "weakLp", "Hp")


def _check_level(N: int, profile: RadixProfile):
    if not 0 <= N <= profile.resolution:
        raise OutOfRange(f"level N = {N} outside 0..{profile.resolution}")


def _coset_average(values: np.ndarray, M: int) -> np.ndarray:
    # index = low + M * high, so cosets of I_N are the columns of (high, low)
    block = values.reshape(-1, M)
    return np.broadcast_to(block.mean(axis=0), block.shape).reshape(-1)


def conditional_expectation(f: GridFunction, N: int) -> GridFunction:
    """Average of f over I_N(x), i.e. S_{M_N} f."""
    _check_level(N, f.profile)
    return GridFunction(f.profile, _coset_average(f.samples, f.profile.orders[N]))


@dataclass(frozen=True, eq=False)
class MartingaleView:
    """The levels S_{M_0} f, ..., S_{M_R} f of a grid function."""

    profile: RadixProfile
    levels: tuple[GridFunction, ...]

    @classmethod
    def of(cls, f: GridFunction) -> "MartingaleView":
        # top-down: level N averages level N+1 over the digit-N axis
        levels = [f]
        cur = f.samples
        for N in range(f.profile.resolution - 1, -1, -1):
            M, m = f.profile.orders[N], f.profile.radices[N]
            block = cur.reshape(-1, m, M)
            cur = np.broadcast_to(block.mean(axis=1, keepdims=True), block.shape).reshape(-1)
            levels.append(GridFunction(f.profile, cur))
        return cls(f.profile, tuple(reversed(levels)))

    def level(self, N: int) -> GridFunction:
        return self.levels[N]

    def maximal(self) -> GridFunction:
        return GridFunction(
            self.profile, np.max(np.abs([g.samples for g in self.levels]), axis=0)
        )


def martingale(f: GridFunction) -> MartingaleView:
    return MartingaleView.of(f)


def maximal_function(f: GridFunction) -> GridFunction:
    """f*(x) = max over levels k <= R of |S_{M_k} f(x)|."""
    out = np.abs(f.samples)
    cur = f.samples
    for N in range(f.profile.resolution - 1, -1, -1):
        M, m = f.profile.orders[N], f.profile.radices[N]
        block = cur.reshape(-1, m, M)
        cur = np.broadcast_to(block.mean(axis=1, keepdims=True), block.shape).reshape(-1)
        out = np.maximum(out, np.abs(cur))
    return GridFunction(f.profile, out)


@dataclass(frozen=True)
class QuasiNormParams:
    p: float
    flavor: str = "Hp"

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 0):
            raise VilenkinError(f"exponent p = {self.p} must be finite and positive")
        if self.flavor not in FLAVORS:
            raise VilenkinError(f"flavor {self.flavor!r} not in {FLAVORS}")


def lp_norm(values: np.ndarray, p: float) -> float:
    a = np.abs(values)
    return float(np.mean(a**p) ** (1.0 / p))


def weak_lp_norm(values: np.ndarray, p: float) -> float:
    """(sup_{lambda > 0} lambda^p mu(|f| > lambda))^(1/p), computed exactly.

    The distribution function is a step function, so the supremum is the
    left limit at one of the values v, namely max_v v^p mu(|f| >= v).
    """
    a = np.sort(np.abs(values))[::-1]
    counts = np.arange(1, a.size + 1)
    return float(np.max(a**p * counts / a.size) ** (1.0 / p))


def quasi_norm(f: GridFunction, params: QuasiNormParams | float, flavor: str | None = None) -> float:
    if not isinstance(params, QuasiNormParams):
        params = QuasiNormParams(float(params), flavor or "Hp")
    if params.flavor == "Lp":
        return lp_norm(f.samples, params.p)
    if params.flavor == "weakLp":
        return weak_lp_norm(f.samples, params.p)
    return lp_norm(maximal_function(f).samples, params.p)


def hardy_norm(f: GridFunction, p: float) -> float:
    """||f||_{H_p} = ||f*||_p."""
    _check_p(p)
    return lp_norm(maximal_function(f).samples, p)


def _check_p(p: float):
    if not (math.isfinite(p) and p > 0):
        raise VilenkinError(f"exponent p = {p} must be finite and positive")


def modulus_of_continuity(f: GridFunction, N: int, p: float) -> float:
    """omega_{H_p}(1/M_N, f) := ||f - S_{M_N} f||_{H_p}."""
    _check_level(N, f.profile)
    _check_p(p)
    return hardy_norm(f - conditional_expectation(f, N), p)


def log_bracket(p: float) -> int:
    """Integer part of 1/2 + p."""
    return math.floor(0.5 + p)


def growth_weight(n: int, p: float, shift: int = 1) -> float:
    """n^(1/p - 2) * log2(n + shift)^(2[1/2 + p]).

    ``shift=1`` is the weight of the normalised maximal operator;
    ``shift=0`` gives the envelope n^(1/p-2) log^(2[1/2+p]) n of the growth bound.
    """
    return n ** (1.0 / p - 2.0) * math.log2(n + shift) ** (2 * log_bracket(p))


def _check_nmax(n_max: int, profile: RadixProfile):
    if not 1 <= n_max <= profile.size:
        raise OutOfRange(f"n_max = {n_max} outside [1, {profile.size}]")


def sigma_star(f: GridFunction, n_max: int | None = None) -> GridFunction:
    """max over 1 <= n <= n_max of |sigma_n f|."""
    n_max = f.size if n_max is None else n_max
    _check_nmax(n_max, f.profile)
    s = forward(f)
    out = np.zeros(f.size)
    for n in range(1, n_max + 1):
        out = np.maximum(out, np.abs(fejer_mean_from_spectrum(s, n).samples))
    return GridFunction(f.profile, out)


def sigma_sharp(f: GridFunction) -> GridFunction:
    """max over n in {M_0, ..., M_R} of |sigma_n f|."""
    s = forward(f)
    out = np.zeros(f.size)
    for M in f.profile.orders:
        out = np.maximum(out, np.abs(fejer_mean_from_spectrum(s, M).samples))
    return GridFunction(f.profile, out)


def sigma_tilde(f: GridFunction, p: float, n_max: int | None = None) -> GridFunction:
    """max over n <= n_max of |sigma_n f| / (n^(1/p-2) log2^(2[1/2+p])(n+1)), 0 < p <= 1/2."""
    if not 0 < p <= 0.5:
        raise VilenkinError(f"sigma_tilde needs 0 < p <= 1/2, got {p}")
    n_max = f.size if n_max is None else n_max
    _check_nmax(n_max, f.profile)
    s = forward(f)
    out = np.zeros(f.size)
    for n in range(1, n_max + 1):
        w = growth_weight(n, p, shift=1)
        out = np.maximum(out, np.abs(fejer_mean_from_spectrum(s, n).samples) / w)
    return GridFunction(f.profile, out)
