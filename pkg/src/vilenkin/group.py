"""Mixed-radix arithmetic on a finite-resolution bounded Vilenkin group.

A point x = (x_0, ..., x_{R-1}) with 0 <= x_k < m_k is stored by its linear
index sum_k x_k * M_k, so that the level-N cylinder I_N(x) is the residue
class of the index modulo M_N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import islice, cycle
from typing import Iterable, Sequence

import numpy as np

# largest group size we can address with int64 indices
MAX_GROUP_SIZE = 2**62


class VilenkinError(ValueError):
    """Base class for invalid arguments to the library."""


class InvalidRadix(VilenkinError):
    pass


class ResolutionTooLarge(VilenkinError):
    pass


class OutOfRange(VilenkinError):
    pass


class ProfileMismatch(VilenkinError):
    pass


@dataclass(frozen=True)
class RadixProfile:
    """Radices m_0..m_{R-1} and the orders M_0..M_R they generate."""

    radices: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.radices) < 1:
            raise InvalidRadix("a profile needs at least one radix")
        if len(self.orders) != len(self.radices) + 1 or self.orders[0] != 1:
            raise InvalidRadix("orders must be M_0 = 1, ..., M_R")
        for k, m in enumerate(self.radices):
            if m < 2:
                raise InvalidRadix(f"radix m_{k} = {m} is less than 2")
            if self.orders[k + 1] != m * self.orders[k]:
                raise InvalidRadix(f"orders break M_{k + 1} = m_{k} * M_{k}")

    @property
    def resolution(self) -> int:
        return len(self.radices)

    @property
    def size(self) -> int:
        """Number of points M_R."""
        return self.orders[-1]

    def radix(self, k: int) -> int:
        return self.radices[k]

    def order(self, k: int) -> int:
        if not 0 <= k <= self.resolution:
            raise OutOfRange(f"level {k} outside 0..{self.resolution}")
        return self.orders[k]

    def is_dyadic(self) -> bool:
        return all(m == 2 for m in self.radices)

    def extend(self, radix: int) -> "RadixProfile":
        return build_profile(self.radices + (radix,))

    def truncate(self, R: int) -> "RadixProfile":
        return build_profile(self.radices[:R])

    def __str__(self):
        return ",".join(str(m) for m in self.radices)


def build_profile(radices: Iterable[int], R: int | None = None) -> RadixProfile:
    """Build a profile from a radix sequence.

    With ``R`` larger than the number of radices given, the sequence is
    repeated periodically (``[2]`` with ``R=5`` is the dyadic group 2^5);
    with ``R`` smaller it is truncated.
    """
    radices = tuple(int(m) for m in radices)
    if not radices:
        raise InvalidRadix("empty radix sequence")
    for k, m in enumerate(radices):
        if m < 2:
            raise InvalidRadix(f"radix m_{k} = {m} is less than 2")
    if R is not None:
        if R < 1:
            raise InvalidRadix(f"resolution R = {R} must be at least 1")
        radices = tuple(islice(cycle(radices), R))
    orders = [1]
    for m in radices:
        orders.append(orders[-1] * m)
        if orders[-1] > MAX_GROUP_SIZE:
            raise ResolutionTooLarge(
                f"M_{len(orders) - 1} = {orders[-1]} exceeds {MAX_GROUP_SIZE}"
            )
    return RadixProfile(radices, tuple(orders))


def parse_radices(text: str) -> tuple[int, ...]:
    """Parse a comma-separated radix list such as ``"2,3,2"``."""
    out = []
    for k, tok in enumerate(text.split(",")):
        tok = tok.strip()
        try:
            m = int(tok)
        except ValueError:
            raise InvalidRadix(f"radix entry {k} ({tok!r}) is not an integer") from None
        if m < 2:
            raise InvalidRadix(f"radix entry {k} ({tok!r}) is less than 2")
        out.append(m)
    return tuple(out)


def digits_of(n: int, profile: RadixProfile) -> tuple[tuple[int, ...], int]:
    """Mixed-radix digits of n and its order |n| (with |0| = 0)."""
    if not 0 <= n < profile.size:
        raise OutOfRange(f"n = {n} is outside [0, {profile.size})")
    digits = []
    rest = n
    for m in profile.radices:
        rest, d = divmod(rest, m)
        digits.append(d)
    nonzero = [j for j, d in enumerate(digits) if d]
    return tuple(digits), (nonzero[-1] if nonzero else 0)


def index_from_digits(digits: Sequence[int], profile: RadixProfile) -> int:
    if len(digits) != profile.resolution:
        raise ProfileMismatch(
            f"{len(digits)} digits given for resolution {profile.resolution}"
        )
    idx = 0
    for d, m, M in zip(digits, profile.radices, profile.orders):
        if not 0 <= d < m:
            raise OutOfRange(f"digit {d} outside Z_{m}")
        idx += d * M
    return idx


@dataclass(frozen=True)
class GroupPoint:
    profile: RadixProfile
    digits: tuple[int, ...]

    def __post_init__(self):
        index_from_digits(self.digits, self.profile)

    @property
    def index(self) -> int:
        return index_from_digits(self.digits, self.profile)


def point_of(idx: int, profile: RadixProfile) -> GroupPoint:
    return GroupPoint(profile, digits_of(idx, profile)[0])


def index_of(x: GroupPoint) -> int:
    return x.index


def zero(profile: RadixProfile) -> GroupPoint:
    return GroupPoint(profile, (0,) * profile.resolution)


def unit_point(n: int, profile: RadixProfile) -> GroupPoint:
    """The point e_n with x_n = 1 and every other digit zero."""
    if not 0 <= n < profile.resolution:
        raise OutOfRange(f"e_{n} needs 0 <= n < {profile.resolution}")
    return GroupPoint(profile, tuple(int(k == n) for k in range(profile.resolution)))


def _check_same(x: GroupPoint, y: GroupPoint):
    if x.profile != y.profile:
        raise ProfileMismatch(f"profiles {x.profile} and {y.profile} differ")


def group_add(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    _check_same(x, y)
    return GroupPoint(
        x.profile,
        tuple((a + b) % m for a, b, m in zip(x.digits, y.digits, x.profile.radices)),
    )


def group_sub(x: GroupPoint, y: GroupPoint) -> GroupPoint:
    _check_same(x, y)
    return GroupPoint(
        x.profile,
        tuple((a - b) % m for a, b, m in zip(x.digits, y.digits, x.profile.radices)),
    )


def group_neg(x: GroupPoint) -> GroupPoint:
    return group_sub(zero(x.profile), x)


def cylinder_coset(x: GroupPoint, N: int) -> int:
    """Identifier of I_N(x): the index of x reduced mod M_N."""
    if not 0 <= N <= x.profile.resolution:
        raise OutOfRange(f"level N = {N} outside 0..{x.profile.resolution}")
    return x.index % x.profile.orders[N]


def cell_measure(profile: RadixProfile, N: int) -> Fraction:
    """Haar measure of a level-N cylinder, 1/M_N."""
    if not 0 <= N <= profile.resolution:
        raise OutOfRange(f"level N = {N} outside 0..{profile.resolution}")
    return Fraction(1, profile.orders[N])


def in_cylinder(profile: RadixProfile, N: int) -> np.ndarray:
    """Boolean mask of I_N = I_N(0) over all linear indices."""
    if not 0 <= N <= profile.resolution:
        raise OutOfRange(f"level N = {N} outside 0..{profile.resolution}")
    return np.arange(profile.size) % profile.orders[N] == 0


# vectorised helpers, cached per profile


@lru_cache(maxsize=64)
def digit_table(profile: RadixProfile) -> np.ndarray:
    """Array of shape (M_R, R) whose row i holds the digits of index i."""
    idx = np.arange(profile.size, dtype=np.int64)
    table = np.empty((profile.size, profile.resolution), dtype=np.int64)
    for k, (m, M) in enumerate(zip(profile.radices, profile.orders)):
        table[:, k] = (idx // M) % m
    table.flags.writeable = False
    return table


def sub_indices(profile: RadixProfile, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Linear index of x - t for arrays of linear indices (broadcasting)."""
    x = np.asarray(x, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    out = np.zeros(np.broadcast(x, t).shape, dtype=np.int64)
    for m, M in zip(profile.radices, profile.orders):
        out += ((x // M - t // M) % m) * M
    return out


def add_indices(profile: RadixProfile, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    t = np.asarray(t, dtype=np.int64)
    out = np.zeros(np.broadcast(x, t).shape, dtype=np.int64)
    for m, M in zip(profile.radices, profile.orders):
        out += ((x // M + t // M) % m) * M
    return out
