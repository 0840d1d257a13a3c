"""Parameter sweeps that turn the library into reproducible reports.

Every runner takes an :class:`ExperimentConfig` and returns a :class:`Report`;
rows come out in a fixed parameter order, so identical configs (seed
included) give byte-identical output.  Empirical constants are measured and
reported, never compared against specific values.
"""

from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .constructions import (
    CounterexampleSpec,
    build_fA,
    corollary_ratio,
    fejer_at_witness,
    theorem2_ratio,
)
from .group import RadixProfile, VilenkinError, build_profile, in_cylinder
from .hardy import (
    conditional_expectation,
    growth_weight,
    hardy_norm,
    log_bracket,
    modulus_of_continuity,
)
from .io import report_csv, report_jsonl
from .kernels import KernelSpec, fejer_mean, fejer_mean_from_spectrum
from .transform import GridFunction, constant, forward, forward_naive, synthesize

EXPERIMENTS = (
    "theorem1-bounded",
    "theorem1-growth",
    "theorem1-convergence",
    "theorem2",
    "corollary",
    "kernel-dump",
    "transform-bench",
)


class ConfigError(VilenkinError):
    pass


class InvariantViolation(RuntimeError):
    """A numerical identity the library guarantees failed during a run."""


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    radices: tuple[int, ...] = (2,)
    resolution: int | None = None
    p: tuple[float, ...] = (1.0,)
    n_values: tuple[int, ...] | None = None
    A_values: tuple[int, ...] = ()
    samples: int = 20
    seed: int = 0
    alpha: float | None = None
    part: str = "c"
    kernel: str = "dirichlet"
    generators: tuple[str, ...] = ("smooth",)
    sizes: tuple[int, ...] = ()
    naive_max: int = 2**12
    repeats: int = 3

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if any(not (math.isfinite(p) and p > 0) for p in self.p):
            raise ConfigError(f"exponents must be positive and finite: {self.p}")
        if self.samples < 0:
            raise ConfigError("samples must be non-negative")

    @property
    def profile(self) -> RadixProfile:
        return build_profile(self.radices, self.resolution)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    name: str
    config: ExperimentConfig
    columns: list[str]
    rows: list[dict] = field(default_factory=list)

    def header(self) -> list[str]:
        return [
            f"vilenkin {__version__}",
            "config: " + json.dumps(self.config.as_dict(), sort_keys=True),
            "columns: " + ",".join(self.columns),
        ]

    def to_csv(self) -> str:
        return report_csv(self.header(), self.columns, self.rows)

    def to_jsonl(self) -> str:
        meta = {"version": __version__, "config": self.config.as_dict(), "columns": self.columns}
        return report_jsonl(meta, self.columns, self.rows)

    def render(self, fmt: str = "csv") -> str:
        return self.to_jsonl() if fmt == "json" else self.to_csv()

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]


# test-function generators


def random_spectrum(profile: RadixProfile, rng: np.random.Generator, alpha: float) -> np.ndarray:
    """|c_n| = (n+1)^(-alpha) with independent uniform phases."""
    n = np.arange(profile.size)
    phases = rng.uniform(0.0, 2 * np.pi, profile.size)
    return (n + 1.0) ** (-alpha) * np.exp(1j * phases)


def random_function(profile: RadixProfile, rng: np.random.Generator, alpha: float) -> GridFunction:
    return synthesize(profile, random_spectrum(profile, rng, alpha))


def polynomial_function(profile: RadixProfile, rng: np.random.Generator, degree: int) -> GridFunction:
    """Random Vilenkin polynomial with spectrum inside [0, degree)."""
    c = np.zeros(profile.size, dtype=np.complex128)
    d = min(degree, profile.size)
    c[:d] = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return synthesize(profile, c)


GENERATOR_ALPHA = {"smooth": 2.0, "rough": 0.5}


def make_generator_function(name: str, profile: RadixProfile, rng, alpha: float | None):
    if name == "polynomial":
        return polynomial_function(profile, rng, profile.orders[min(2, profile.resolution)])
    if name == "constant":
        return constant(profile, 1.0)
    if name not in GENERATOR_ALPHA:
        raise ConfigError(f"unknown generator {name!r}")
    return random_function(profile, rng, GENERATOR_ALPHA[name] if alpha is None else alpha)


def _alpha(config: ExperimentConfig) -> float:
    return 1.0 if config.alpha is None else config.alpha


# bounded sweeps: all n for 1/2 < p <= 1, or n = M_k


def run_theorem1_bounded(config: ExperimentConfig) -> Report:
    """Empirical constant sup ||sigma_n f||_{H_p} over unit-H_p inputs.

    Part ``c`` sweeps n over the orders M_k (any p > 0); part ``a`` sweeps
    every n <= M_R (or ``n_values``) and requires 1/2 < p <= 1.
    """
    prof = config.profile
    if config.part == "a" and any(not 0.5 < p <= 1 for p in config.p):
        raise ConfigError("part a needs every p in (1/2, 1]")
    if config.part not in ("a", "c"):
        raise ConfigError(f"part must be 'a' or 'c', got {config.part!r}")
    if config.part == "c":
        ns = list(prof.orders)
    else:
        ns = list(config.n_values or range(1, prof.size + 1))
    _check_ns(ns, prof)

    rng = np.random.default_rng(config.seed)
    inputs = [constant(prof)] + [
        random_function(prof, rng, _alpha(config)) for _ in range(config.samples)
    ]
    spectra = [forward(f) for f in inputs]
    cols = ["part", "p", "R", "M_R", "n", "functions", "max_ratio", "running_max", "constant_ratio"]
    report = Report("theorem1-bounded", config, cols)
    for p in config.p:
        norms = [hardy_norm(f, p) for f in inputs]
        running = 0.0
        for n in ns:
            ratios = [
                hardy_norm(fejer_mean_from_spectrum(s, n), p) / nf
                for s, nf in zip(spectra, norms)
            ]
            best = max(ratios)
            if not math.isfinite(best):
                raise InvariantViolation(f"non-finite ratio at p={p}, n={n}")
            running = max(running, best)
            report.rows.append(
                dict(part=config.part, p=p, R=prof.resolution, M_R=prof.size, n=n,
                     functions=len(inputs), max_ratio=best, running_max=running,
                     constant_ratio=ratios[0])
            )
    return report


def _check_ns(ns, prof):
    bad = [n for n in ns if not 1 <= n <= prof.size]
    if bad:
        raise ConfigError(f"degrees {bad[:3]} outside [1, {prof.size}]")


# growth for p <= 1/2 against n^(1/p-2) log^(2[1/2+p]) n


def run_theorem1_growth(config: ExperimentConfig) -> Report:
    """Normalised growth of ||sigma_n f||_{H_p} for 0 < p <= 1/2.

    Inputs are the witness family f_A (A = 0..R-1) plus random functions;
    ``fA_ratio`` is the maximum over the witnesses alone.
    """
    prof = config.profile
    if any(not 0 < p <= 0.5 for p in config.p):
        raise ConfigError("growth sweep needs every p in (0, 1/2]")
    ns = list(config.n_values or range(2, prof.size + 1))
    _check_ns(ns, prof)
    if any(n < 2 for n in ns):
        raise ConfigError("growth envelope vanishes at n = 1; start at n = 2")

    rng = np.random.default_rng(config.seed)
    witnesses = [build_fA(CounterexampleSpec(A, prof)) for A in range(prof.resolution)]
    randoms = [random_function(prof, rng, _alpha(config)) for _ in range(config.samples)]
    inputs = witnesses + randoms
    spectra = [forward(f) for f in inputs]
    cols = ["p", "R", "n", "bracket", "envelope", "max_ratio", "fA_ratio", "argmax_A",
            "normalized", "fA_normalized"]
    report = Report("theorem1-growth", config, cols)
    for p in config.p:
        norms = [hardy_norm(f, p) for f in inputs]
        for n in ns:
            ratios = [
                hardy_norm(fejer_mean_from_spectrum(s, n), p) / nf
                for s, nf in zip(spectra, norms)
            ]
            fa = ratios[: len(witnesses)]
            env = growth_weight(n, p, shift=0)
            best = max(ratios)
            report.rows.append(
                dict(p=p, R=prof.resolution, n=n, bracket=log_bracket(p), envelope=env,
                     max_ratio=best, fA_ratio=max(fa), argmax_A=int(np.argmax(fa)),
                     normalized=best / env, fA_normalized=max(fa) / env)
            )
    return report


# convergence in H_p next to the modulus of continuity


def default_convergence_ns(prof: RadixProfile) -> list[int]:
    ns = set()
    for M in prof.orders:
        ns.add(M)
        if M + 1 <= prof.size:
            ns.add(M + 1)
    return sorted(ns)


def level_below(n: int, prof: RadixProfile) -> int:
    """N with M_N < n <= M_{N+1} (0 for n = 1)."""
    N = 0
    while N + 1 < len(prof.orders) and prof.orders[N + 1] < n:
        N += 1
    return N


def run_convergence(config: ExperimentConfig) -> Report:
    """||sigma_n f - f||_{H_p} and omega_{H_p}(1/M_N, f) side by side.

    ``cond_scaled`` is omega * M_N^(1/p-2) * N^(2[1/2+p]); its decay to 0 is
    the sufficient condition for convergence when p <= 1/2.  Non-decaying
    error for rough inputs is only flagged (``decaying`` column).
    """
    prof = config.profile
    ns = list(config.n_values or default_convergence_ns(prof))
    _check_ns(ns, prof)
    rng = np.random.default_rng(config.seed)
    cols = ["generator", "sample", "p", "R", "n", "N", "M_N", "error", "rel_error",
            "omega", "cond_scaled", "decaying"]
    report = Report("theorem1-convergence", config, cols)
    for gen in config.generators:
        for k in range(max(1, config.samples)):
            f = make_generator_function(gen, prof, rng, config.alpha)
            s = forward(f)
            for p in config.p:
                fnorm = hardy_norm(f, p)
                prev = math.inf
                omegas = {}
                for n in ns:
                    N = level_below(n, prof)
                    if N not in omegas:
                        omegas[N] = modulus_of_continuity(f, N, p)
                    err = hardy_norm(fejer_mean_from_spectrum(s, n) - f, p)
                    cond = omegas[N] * prof.orders[N] ** (1 / p - 2) * N ** (2 * log_bracket(p))
                    report.rows.append(
                        dict(generator=gen, sample=k, p=p, R=prof.resolution, n=n, N=N,
                             M_N=prof.orders[N], error=err,
                             rel_error=err / fnorm if fnorm > 0 else 0.0,
                             omega=omegas[N], cond_scaled=cond,
                             decaying=int(err <= prev + 1e-15))
                    )
                    prev = err
    return report


# witness ratios and the sigma^# variant


def _A_values(config: ExperimentConfig) -> list[int]:
    return list(config.A_values or range(1, 11))


def witness_profile(config: ExperimentConfig, A: int) -> RadixProfile:
    """Resolution A + 2 unless the config pins a larger one."""
    R = max(A + 2, config.resolution or 0)
    return build_profile(config.radices, R)


def run_theorem2(config: ExperimentConfig) -> Report:
    cols = ["A", "p", "M_A", "R", "den_exact", "num", "ratio", "envelope", "c_est", "witness_value"]
    report = Report("theorem2", config, cols)
    for A in _A_values(config):
        spec = CounterexampleSpec(A, witness_profile(config, A))
        w = fejer_at_witness(spec)
        sig = fejer_mean(build_fA(spec), spec.M_next).samples[in_cylinder(spec.profile, A + 1)]
        if np.max(np.abs(sig - float(w))) > 1e-10:
            raise InvariantViolation(f"sigma_M_(A+1) f_A != {w} on I_(A+1) at A={A}")
        for p in config.p:
            if not 0 < p <= 1:
                raise ConfigError(f"theorem2 needs p in (0, 1], got {p}")
            row = theorem2_ratio(spec, p)
            if abs(row.den - row.den_exact) > 1e-10 * row.den_exact:
                raise InvariantViolation(f"||f_A||_Hp = {row.den} != {row.den_exact}")
            report.rows.append(
                dict(A=A, p=p, M_A=row.M_A, R=spec.profile.resolution, den_exact=row.den_exact,
                     num=row.num, ratio=row.ratio, envelope=row.envelope,
                     c_est=row.c_est, witness_value=float(w))
            )
    return report


def run_corollary(config: ExperimentConfig) -> Report:
    cols = ["A", "p", "M_A", "theorem2_ratio", "sharp_ratio", "dominates"]
    report = Report("corollary", config, cols)
    for A in _A_values(config):
        spec = CounterexampleSpec(A, witness_profile(config, A))
        for p in config.p:
            t2 = theorem2_ratio(spec, p).ratio
            sharp = corollary_ratio(spec, p)
            if sharp < t2 * (1 - 1e-12):
                raise InvariantViolation(f"sigma^# ratio {sharp} below {t2} at A={A}, p={p}")
            report.rows.append(
                dict(A=A, p=p, M_A=spec.M_A, theorem2_ratio=t2, sharp_ratio=sharp,
                     dominates=int(sharp >= t2 * (1 - 1e-12)))
            )
    return report


# transform timing


def _time_call(fn, min_seconds: float = 0.05) -> float:
    reps = 0
    start = time.perf_counter()
    while True:
        fn()
        reps += 1
        elapsed = time.perf_counter() - start
        if elapsed >= min_seconds:
            return elapsed / reps


def run_transform_bench(config: ExperimentConfig) -> Report:
    """Median-of-``repeats`` time per forward transform across sizes.

    Sizes are group orders for the periodic extension of ``radices``;
    the naive oracle runs only up to ``naive_max`` points.
    """
    sizes = list(config.sizes or [2**k for k in range(10, 19)])
    if sizes != sorted(sizes):
        raise ConfigError("bench sizes must be ascending")
    rng = np.random.default_rng(config.seed)
    cols = ["M_R", "R", "fast_seconds", "naive_seconds", "time_ratio", "max_abs_diff"]
    report = Report("transform-bench", config, cols)
    prev = None
    for size in sizes:
        R = 1
        while build_profile(config.radices, R).size < size:
            R += 1
        prof = build_profile(config.radices, R)
        if prof.size != size:
            raise ConfigError(f"{size} is not a group order for radices {config.radices}")
        f = GridFunction(prof, rng.standard_normal(size) + 1j * rng.standard_normal(size))
        forward(f)  # warm-up: first touch of fresh buffers is not transform cost
        fast = statistics.median(_time_call(lambda: forward(f)) for _ in range(config.repeats))
        naive = diff = None
        if size <= config.naive_max:
            naive = statistics.median(
                _time_call(lambda: forward_naive(f), 0.0) for _ in range(config.repeats)
            )
            diff = float(np.max(np.abs(forward(f).coefficients - forward_naive(f).coefficients)))
            if diff > 1e-12:
                raise InvariantViolation(f"fast and naive transforms differ by {diff} at M_R={size}")
        report.rows.append(
            dict(M_R=size, R=R, fast_seconds=fast, naive_seconds=naive,
                 time_ratio=(fast / prev if prev else None), max_abs_diff=diff)
        )
        prev = fast
    return report


def run_kernel_dump(config: ExperimentConfig) -> Report:
    """Samples of D_n or K_n; ``n_values`` must hold a single degree."""
    prof = config.profile
    ns = list(config.n_values or [prof.size])
    if len(ns) != 1:
        raise ConfigError("kernel dump takes exactly one degree n")
    _check_ns(ns, prof)
    g = KernelSpec(config.kernel, ns[0], prof).build()
    report = Report("kernel-dump", config, ["index", "value_re", "value_im"])
    for i, v in enumerate(g.samples):
        report.rows.append(dict(index=i, value_re=float(v.real), value_im=float(v.imag)))
    return report


RUNNERS = {
    "kernel-dump": run_kernel_dump,
    "theorem1-bounded": run_theorem1_bounded,
    "theorem1-growth": run_theorem1_growth,
    "theorem1-convergence": run_convergence,
    "theorem2": run_theorem2,
    "corollary": run_corollary,
    "transform-bench": run_transform_bench,
}


def run(config: ExperimentConfig) -> Report:
    try:
        runner = RUNNERS[config.experiment]
    except KeyError:
        raise ConfigError(f"{config.experiment} has no batch runner") from None
    return runner(config)
