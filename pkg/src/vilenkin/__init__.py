"""Fourier analysis on bounded Vilenkin groups at finite resolution."""

__version__ = "0.1.0"

from .group import (
    GroupPoint,
    RadixProfile,
    VilenkinError,
    build_profile,
    cell_measure,
    cylinder_coset,
    digits_of,
    group_add,
    group_sub,
    parse_radices,
    point_of,
)
from .transform import GridFunction, Spectrum, character, forward, forward_naive, inverse
from .kernels import convolve, dirichlet_kernel, fejer_kernel, fejer_mean, partial_sum
from .hardy import (
    QuasiNormParams,
    conditional_expectation,
    hardy_norm,
    maximal_function,
    modulus_of_continuity,
    quasi_norm,
    sigma_sharp,
    sigma_star,
    sigma_tilde,
)
from .constructions import CounterexampleSpec, build_fA, fejer_at_witness, theorem2_ratio
