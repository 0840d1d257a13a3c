"""Vilenkin characters and the Vilenkin-Fourier transform.

The transform is a tensor product of small DFTs, one per digit axis, so the
fast path runs R stages of size-m_k dense sub-transforms over the sample
array.  ``forward_naive`` builds the full character matrix and is kept as
an oracle only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .group import (
    GroupPoint,
    OutOfRange,
    ProfileMismatch,
    RadixProfile,
    VilenkinError,
    digit_table,
    digits_of,
)


def _freeze(values, size: int, what: str, allow_nonfinite: bool) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != size:
        raise VilenkinError(f"{what} has {arr.shape[0]} values, expected M_R = {size}")
    if not allow_nonfinite and not np.all(np.isfinite(arr)):
        raise VilenkinError(f"{what} contains NaN or Inf")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A function on G_m that is constant on the cosets of I_R.

    ``samples[i]`` is the value at the point with linear index i.
    """

    profile: RadixProfile
    samples: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(
            self,
            "samples",
            _freeze(self.samples, self.profile.size, "GridFunction", self.degenerate),
        )

    @property
    def size(self) -> int:
        return self.profile.size

    def _other(self, other):
        if isinstance(other, GridFunction):
            if other.profile != self.profile:
                raise ProfileMismatch(f"profiles {self.profile} and {other.profile} differ")
            return other.samples
        return other

    def __add__(self, other):
        return GridFunction(self.profile, self.samples + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.profile, self.samples - self._other(other))

    def __rsub__(self, other):
        return GridFunction(self.profile, self._other(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.profile, self.samples * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return GridFunction(self.profile, self.samples / c)

    def __neg__(self):
        return GridFunction(self.profile, -self.samples)

    def __abs__(self):
        return GridFunction(self.profile, np.abs(self.samples))

    def mean(self) -> complex:
        """Integral against the Haar measure."""
        return complex(self.samples.mean())

    def at(self, x: GroupPoint | int) -> complex:
        idx = x.index if isinstance(x, GroupPoint) else int(x)
        return complex(self.samples[idx])


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Vilenkin-Fourier coefficients; ``coefficients[n]`` is f^(n)."""

    profile: RadixProfile
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self,
            "coefficients",
            _freeze(self.coefficients, self.profile.size, "Spectrum", False),
        )

    @property
    def size(self) -> int:
        return self.profile.size


def constant(profile: RadixProfile, c: complex = 1.0) -> GridFunction:
    return GridFunction(profile, np.full(profile.size, c, dtype=np.complex128))


def from_callable(profile: RadixProfile, fn) -> GridFunction:
    """Sample ``fn(digits)`` at every point (digits as a length-R tuple)."""
    table = digit_table(profile)
    return GridFunction(profile, [fn(tuple(row)) for row in table])


@lru_cache(maxsize=None)
def roots_of_unity(m: int) -> np.ndarray:
    """exp(2 pi i j / m) for j < m, with exact values at multiples of 1/4."""
    j = np.arange(m)
    roots = np.exp(2j * np.pi * j / m)
    exact = {0: 1.0 + 0j, 1: 1j, 2: -1.0 + 0j, 3: -1j}
    for q in range(m):
        if (4 * q) % m == 0:
            roots[q] = exact[(4 * q) // m]
    roots.flags.writeable = False
    return roots


@lru_cache(maxsize=None)
def _axis_matrix(m: int, inverse: bool) -> np.ndarray:
    j = np.arange(m)
    w = roots_of_unity(m)[np.outer(j, j) % m]
    if not inverse:
        w = np.conj(w)
    w.flags.writeable = False
    return w


def character(n: int, x: GroupPoint | int, profile: RadixProfile | None = None) -> complex:
    """psi_n(x) = prod_k exp(2 pi i n_k x_k / m_k)."""
    if isinstance(x, GroupPoint):
        if profile is not None and profile != x.profile:
            raise ProfileMismatch("point and profile differ")
        profile = x.profile
        xd = x.digits
    else:
        if profile is None:
            raise VilenkinError("a profile is required with a linear index")
        xd = digits_of(int(x), profile)[0]
    if not 0 <= n < profile.size:
        raise OutOfRange(f"character index {n} outside [0, {profile.size})")
    nd = digits_of(n, profile)[0]
    value = 1.0 + 0j
    for a, b, m in zip(nd, xd, profile.radices):
        value *= roots_of_unity(m)[(a * b) % m]
    return complex(value)


def character_samples(n: int, profile: RadixProfile) -> GridFunction:
    """psi_n sampled at every point."""
    if not 0 <= n < profile.size:
        raise OutOfRange(f"character index {n} outside [0, {profile.size})")
    nd = digits_of(n, profile)[0]
    table = digit_table(profile)
    out = np.ones(profile.size, dtype=np.complex128)
    for k, (a, m) in enumerate(zip(nd, profile.radices)):
        if a:
            out *= roots_of_unity(m)[(a * table[:, k]) % m]
    return GridFunction(profile, out)


def character_matrix(profile: RadixProfile, rows: slice | None = None) -> np.ndarray:
    """Dense table psi_n(x), rows n (optionally a slice of them), columns x."""
    table = digit_table(profile)
    nd = table if rows is None else table[rows]
    out = np.ones((nd.shape[0], profile.size), dtype=np.complex128)
    for k, m in enumerate(profile.radices):
        out *= roots_of_unity(m)[np.outer(nd[:, k], table[:, k]) % m]
    return out


# samples per cache block; three complex buffers of this size sit in L2
BLOCK = 2**14


def _direct(x: np.ndarray, radices, inverse: bool, scratch: np.ndarray) -> None:
    """All stages on a contiguous (batch, M, w) array, in place."""
    batch, M, w = x.shape
    total = x.size
    if scratch.size < total + total // min(radices):
        scratch = np.empty(total + total // min(radices), dtype=np.complex128)
    src, dst = x.reshape(-1), scratch[:total]
    tmp_full = scratch[total : total + total // min(radices)]
    low = 1
    for m in radices:
        wm = _axis_matrix(m, inverse)
        high = M // (m * low)
        v = src.reshape(batch * high, m, low * w)
        o = dst.reshape(batch * high, m, low * w)
        tmp = tmp_full[: batch * high * low * w].reshape(batch * high, low * w)
        # fixed summation order x = 0..m-1 keeps the result reproducible
        for n in range(m):
            acc = o[:, n, :]
            np.copyto(acc, v[:, 0, :])
            for j in range(1, m):
                c = wm[n, j]
                if c == 1:
                    np.add(acc, v[:, j, :], out=acc)
                elif c == -1:
                    np.subtract(acc, v[:, j, :], out=acc)
                else:
                    np.multiply(v[:, j, :], c, out=tmp)
                    np.add(acc, tmp, out=acc)
        src, dst = dst, src
        low *= m
    if src is not x.reshape(-1):
        np.copyto(x.reshape(-1), src)


def _blocked(x: np.ndarray, radices, inverse: bool, scratch: np.ndarray) -> None:
    """Transform the middle axis of a contiguous (batch, M, w) array in place.

    Low digits are handled on contiguous row blocks and high digits on
    copied column slabs, so every stage runs on data that fits in cache.
    Each sample sees the same operations in the same order as the plain
    stage loop, so the result is bit-identical to it.
    """
    batch, M, w = x.shape
    if M * w <= BLOCK or len(radices) == 1:
        chunk = max(1, BLOCK // (M * w))
        for b0 in range(0, batch, chunk):
            _direct(x[b0 : b0 + chunk], radices, inverse, scratch)
        return
    j, P = 1, radices[0]
    while j < len(radices) - 1 and P * radices[j] * w <= BLOCK:
        P *= radices[j]
        j += 1
    Q = M // P
    _blocked(x.reshape(batch * Q, P, w), radices[:j], inverse, scratch)
    y = x.reshape(batch, Q, P * w)
    width = max(1, BLOCK // Q)
    for c0 in range(0, P * w, width):
        slab = np.ascontiguousarray(y[:, :, c0 : c0 + width])
        _blocked(slab, radices[j:], inverse, scratch)
        y[:, :, c0 : c0 + width] = slab


def _staged(values: np.ndarray, profile: RadixProfile, inverse: bool) -> np.ndarray:
    out = np.array(values, dtype=np.complex128).reshape(1, profile.size, 1)
    if profile.resolution == 0:
        return out.reshape(-1)
    # room for a ping-pong buffer plus one product slab at the largest block
    big = max(BLOCK, max(profile.radices))
    scratch = np.empty(2 * big, dtype=np.complex128)
    _blocked(out, tuple(profile.radices), inverse, scratch)
    return out.reshape(-1)


def _adopt(cls, profile: RadixProfile, arr: np.ndarray, field: str):
    """Wrap a freshly computed array without the validating copy."""
    arr.flags.writeable = False
    obj = object.__new__(cls)
    object.__setattr__(obj, "profile", profile)
    object.__setattr__(obj, field, arr)
    if cls is GridFunction:
        object.__setattr__(obj, "degenerate", False)
    return obj


def forward(f: GridFunction) -> Spectrum:
    """Coefficients f^(n) = (1/M_R) sum_x f(x) conj(psi_n(x)), staged."""
    out = _staged(f.samples, f.profile, inverse=False)
    np.divide(out, f.size, out=out)
    return _adopt(Spectrum, f.profile, out, "coefficients")


def inverse(s: Spectrum) -> GridFunction:
    """Synthesis f(x) = sum_n s(n) psi_n(x)."""
    return _adopt(GridFunction, s.profile, _staged(s.coefficients, s.profile, inverse=True), "samples")


def forward_naive(f: GridFunction, block: int = 256) -> Spectrum:
    """Oracle: the O(M_R^2) character sum, a block of rows at a time."""
    out = np.empty(f.size, dtype=np.complex128)
    for start in range(0, f.size, block):
        rows = slice(start, min(start + block, f.size))
        out[rows] = np.conj(character_matrix(f.profile, rows)) @ f.samples
    return Spectrum(f.profile, out / f.size)


def inverse_naive(s: Spectrum, block: int = 256) -> GridFunction:
    out = np.zeros(s.size, dtype=np.complex128)
    for start in range(0, s.size, block):
        rows = slice(start, min(start + block, s.size))
        out += s.coefficients[rows] @ character_matrix(s.profile, rows)
    return GridFunction(s.profile, out)


def synthesize(profile: RadixProfile, coefficients) -> GridFunction:
    """Inverse transform of a raw coefficient array."""
    return inverse(Spectrum(profile, coefficients))
