"""The witness martingales f_A = D_{M_{A+1}} - D_{M_A} and their exact algebra."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from .group import OutOfRange, RadixProfile, VilenkinError, build_profile, in_cylinder
from .hardy import hardy_norm, sigma_sharp
from .kernels import dirichlet_kernel, fejer_mean
from .transform import GridFunction


@dataclass(frozen=True)
class CounterexampleSpec:
    A: int
    profile: RadixProfile

    def __post_init__(self):
        if self.A < 0:
            raise OutOfRange(f"A = {self.A} must be non-negative")
        if self.A + 1 > self.profile.resolution:
            raise OutOfRange(
                f"f_A with A = {self.A} needs resolution >= {self.A + 1}, "
                f"profile has {self.profile.resolution}"
            )

    @property
    def M_A(self) -> int:
        return self.profile.orders[self.A]

    @property
    def M_next(self) -> int:
        return self.profile.orders[self.A + 1]

    @property
    def m_A(self) -> int:
        return self.profile.radices[self.A]


def witness_spec(A: int, radices=(2,), extra_levels: int = 1) -> CounterexampleSpec:
    """Spec at resolution A + 1 + extra_levels (A + 2 by default)."""
    return CounterexampleSpec(A, build_profile(radices, A + 1 + extra_levels))


def build_fA(spec: CounterexampleSpec) -> GridFunction:
    """f_A, sampled from the cylinder values of D_{M_{A+1}} and D_{M_A}."""
    prof = spec.profile
    values = (
        spec.M_next * in_cylinder(prof, spec.A + 1) - spec.M_A * in_cylinder(prof, spec.A)
    )
    return GridFunction(prof, values.astype(np.complex128))


def build_fA_from_kernels(spec: CounterexampleSpec) -> GridFunction:
    return dirichlet_kernel(spec.M_next, spec.profile) - dirichlet_kernel(spec.M_A, spec.profile)


def fA_spectrum(spec: CounterexampleSpec) -> np.ndarray:
    """Indicator of the window [M_A, M_{A+1})."""
    i = np.arange(spec.profile.size)
    return ((i >= spec.M_A) & (i < spec.M_next)).astype(float)


def fA_partial_sum(spec: CounterexampleSpec, i: int) -> GridFunction:
    """S_i f_A by cases: 0 up to M_A, D_i - D_{M_A} inside the window, f_A beyond."""
    prof = spec.profile
    if not 0 <= i <= prof.size:
        raise OutOfRange(f"i = {i} outside [0, {prof.size}]")
    if i <= spec.M_A:
        return GridFunction(prof, np.zeros(prof.size))
    if i < spec.M_next:
        return dirichlet_kernel(i, prof) - dirichlet_kernel(spec.M_A, prof)
    return build_fA(spec)


def fejer_at_witness(spec: CounterexampleSpec) -> Fraction:
    """Exact value of sigma_{M_{A+1}} f_A on I_{A+1}.

    On I_{A+1} every psi_j with j < M_{A+1} equals 1, so S_j f_A = j - M_A
    there and the mean collapses to (1/M_{A+1}) * (0 + 1 + ... + T) with
    T = (m_A - 1) M_A.
    """
    T = (spec.m_A - 1) * spec.M_A
    return Fraction(T * (T + 1), 2 * spec.M_next)


def fA_norm_exact(spec: CounterexampleSpec, p: float) -> float:
    """||f_A||_{H_p} in closed form.

    |f_A| is (m_A - 1) M_A on I_{A+1} and M_A on the rest of I_A; the lower
    martingale levels vanish, so the Hardy norm is the L_p norm.  For
    m_A = 2 this is M_A^(1 - 1/p).
    """
    m, M, Mn = spec.m_A, spec.M_A, spec.M_next
    integral = ((m - 1) * M) ** p / Mn + (m - 1) * M**p / Mn
    return integral ** (1.0 / p)


def envelope(spec: CounterexampleSpec, p: float) -> float:
    """Lower growth envelope: M_A^(1/p - 1) for p < 1, A for p = 1."""
    if not 0 < p <= 1:
        raise VilenkinError(f"p = {p} outside (0, 1]")
    if p == 1:
        return float(spec.A)
    return spec.M_A ** (1.0 / p - 1.0)


def ring_lower_sum(spec: CounterexampleSpec, p: float) -> float:
    """Lower bound for ||sigma_{M_{A+1}} f_A||_{H_p}^p from the cylinder rings.

    With w the witness value, S_{M_s}|sigma f_A| >= (w / M_{A+1}) M_s on
    I_s minus I_{s+1}, a set of measure (m_s - 1)/M_{s+1}, for s = 0..A.
    """
    w = float(fejer_at_witness(spec))
    prof = spec.profile
    total = 0.0
    for s in range(spec.A + 1):
        Ms, ms = prof.orders[s], prof.radices[s]
        total += (w * Ms / spec.M_next) ** p * (ms - 1) / prof.orders[s + 1]
    return total


@dataclass(frozen=True)
class Theorem2Row:
    A: int
    p: float
    M_A: int
    den_exact: float
    den: float
    num: float
    ratio: float
    envelope: float
    c_est: float

    def as_dict(self) -> dict:
        return asdict(self)


def theorem2_ratio(spec: CounterexampleSpec, p: float) -> Theorem2Row:
    """||abs(sigma_{M_{A+1}} f_A)||_{H_p} / ||f_A||_{H_p} against its envelope."""
    if not 0 < p <= 1:
        raise VilenkinError(f"p = {p} outside (0, 1]")
    fA = build_fA(spec)
    num = hardy_norm(abs(fejer_mean(fA, spec.M_next)), p)
    den = hardy_norm(fA, p)
    ratio = num / den
    env = envelope(spec, p)
    return Theorem2Row(
        A=spec.A,
        p=p,
        M_A=spec.M_A,
        den_exact=fA_norm_exact(spec, p),
        den=den,
        num=num,
        ratio=ratio,
        envelope=env,
        c_est=ratio / env if env > 0 else float("inf"),
    )


def corollary_ratio(spec: CounterexampleSpec, p: float) -> float:
    """||sigma^# f_A||_{H_p} / ||f_A||_{H_p}."""
    fA = build_fA(spec)
    return hardy_norm(sigma_sharp(fA), p) / hardy_norm(fA, p)
