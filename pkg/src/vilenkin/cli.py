"""Command line entry point: ``vilenkin <subcommand> [options]``.

Exit codes: 0 success, 2 configuration error, 3 numerical invariant
violated during a run.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from . import __version__
from .experiments import ExperimentConfig, InvariantViolation, run
from .group import VilenkinError, build_profile, parse_radices
from .hardy import QuasiNormParams, quasi_norm
from .io import load, to_csv, to_json
from .kernels import fejer_mean
from .transform import GridFunction, Spectrum, forward, inverse

FLAVOR_NAMES = {"lp": "Lp", "weak": "weakLp", "weak-lp": "weakLp", "hp": "Hp"}


class InvariantError(click.ClickException):
    exit_code = 3


def _csv_list(cast):
    def convert(ctx, param, value):
        if value is None:
            return None
        try:
            return tuple(cast(v) for v in value.split(",") if v.strip())
        except ValueError as exc:
            raise click.BadParameter(str(exc)) from None
    return convert


def _int_range(ctx, param, value):
    """Accept ``3``, ``1,2,5`` or ``1..10``."""
    if value is None:
        return None
    out = []
    try:
        for part in value.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part.strip():
                out.append(int(part))
    except ValueError:
        raise click.BadParameter(f"cannot parse {value!r} as integers or a range") from None
    return tuple(out)


def _radix(ctx, param, value):
    try:
        return parse_radices(value)
    except VilenkinError as exc:
        raise click.BadParameter(str(exc)) from None


def common_options(fn):
    @click.option("--radix", "radices", default="2", show_default=True, callback=_radix,
                  help="Comma-separated radices m_0,m_1,...; repeated up to the resolution.")
    @click.option("--resolution", "-R", type=int, default=None,
                  help="Number of digit levels R (default: length of --radix).")
    @click.option("--p", "p", default="1", show_default=True, callback=_csv_list(float),
                  help="Comma-separated exponents.")
    @click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
    @click.option("--out", default="-", show_default=True,
                  help="Output path, '-' for stdout; 'csv' or 'json' select a format on stdout.")
    @click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        out, fmt = kwargs["out"], kwargs["fmt"]
        if out in ("csv", "json"):
            kwargs["out"], kwargs["fmt"] = "-", fmt or out
        elif fmt is None:
            kwargs["fmt"] = "json" if str(out).endswith((".json", ".jsonl")) else "csv"
        try:
            return fn(*args, **kwargs)
        except InvariantViolation as exc:
            raise InvariantError(str(exc)) from None
        except VilenkinError as exc:
            raise click.UsageError(str(exc)) from None
    return wrapper


def _emit(text: str, out: str):
    if out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _profile(radices, resolution):
    return build_profile(radices, resolution)


def _load_input(path, radices, resolution, as_spectrum=None):
    return load(path, _profile(radices, resolution), as_spectrum)


def _dump(obj, fmt):
    return to_json(obj) + "\n" if fmt == "json" else to_csv(obj)


@click.group()
@click.version_option(__version__, prog_name="vilenkin")
def main():
    """Fourier analysis on bounded Vilenkin groups."""


@main.command()
@common_options
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--inverse", "do_inverse", is_flag=True, help="Synthesize from a spectrum.")
def transform(radices, resolution, p, seed, out, fmt, input_path, do_inverse):
    """Forward (or inverse) Vilenkin-Fourier transform of a sampled function."""
    obj = _load_input(input_path, radices, resolution, as_spectrum=do_inverse)
    result = inverse(obj) if do_inverse else forward(obj)
    _emit(_dump(result, fmt), out)


@main.command()
@common_options
@click.option("--kind", type=click.Choice(["dirichlet", "fejer"]), default="dirichlet")
@click.option("--n", "n", type=int, required=True)
def kernel(radices, resolution, p, seed, out, fmt, kind, n):
    """Dump D_n or K_n as (index, value_re, value_im)."""
    cfg = ExperimentConfig("kernel-dump", radices, resolution, p, n_values=(n,), seed=seed, kernel=kind)
    _emit(run(cfg).render(fmt), out)


@main.command()
@common_options
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--n", "n", type=int, required=True)
def fejer(radices, resolution, p, seed, out, fmt, input_path, n):
    """Fejer mean sigma_n f of a sampled function."""
    f = _load_input(input_path, radices, resolution, as_spectrum=False)
    _emit(_dump(fejer_mean(f, n), fmt), out)


@main.command("hardy-norm")
@common_options
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--flavor", type=click.Choice(["lp", "weak", "weak-lp", "hp", "all"]), default="hp")
def hardy_norm_cmd(radices, resolution, p, seed, out, fmt, input_path, flavor):
    """L_p, weak-L_p or H_p quasi-norm of a sampled function."""
    f = _load_input(input_path, radices, resolution, as_spectrum=False)
    if isinstance(f, Spectrum):
        f = inverse(f)
    lines = []
    if flavor == "all":
        lines.append("p,lp,weak_lp,hp")
        for q in p:
            vals = [quasi_norm(f, QuasiNormParams(q, fl)) for fl in ("Lp", "weakLp", "Hp")]
            lines.append(",".join(repr(float(v)) for v in (q, *vals)))
    else:
        for q in p:
            lines.append(repr(quasi_norm(f, QuasiNormParams(q, FLAVOR_NAMES[flavor]))))
    _emit("\n".join(lines) + "\n", out)


@main.command()
@common_options
@click.option("--part", type=click.Choice(["a", "b", "c"]), default="c", show_default=True,
              help="a: all n, 1/2 < p <= 1; b: growth for p <= 1/2; c: n = M_k.")
@click.option("--samples", type=int, default=20, show_default=True)
@click.option("--alpha", type=float, default=None, help="Spectral decay of random inputs.")
@click.option("--n", "n_values", default=None, callback=_int_range)
def theorem1(radices, resolution, p, seed, out, fmt, part, samples, alpha, n_values):
    """Monitor the Fejer-mean bounds in H_p."""
    name = "theorem1-growth" if part == "b" else "theorem1-bounded"
    cfg = ExperimentConfig(name, radices, resolution, p, n_values=n_values, samples=samples,
                           seed=seed, alpha=alpha, part=part)
    _emit(run(cfg).render(fmt), out)


@main.command()
@common_options
@click.option("--A", "A_values", default="1..10", show_default=True, callback=_int_range)
def theorem2(radices, resolution, p, seed, out, fmt, A_values):
    """Ratios ||abs(sigma_{M_{A+1}} f_A)||_{H_p} / ||f_A||_{H_p} for the witnesses f_A."""
    cfg = ExperimentConfig("theorem2", radices, resolution, p, A_values=A_values, seed=seed)
    _emit(run(cfg).render(fmt), out)


@main.command()
@common_options
@click.option("--A", "A_values", default="1..10", show_default=True, callback=_int_range)
def corollary(radices, resolution, p, seed, out, fmt, A_values):
    """sigma^# ratios for the witnesses f_A."""
    cfg = ExperimentConfig("corollary", radices, resolution, p, A_values=A_values, seed=seed)
    _emit(run(cfg).render(fmt), out)


@main.command()
@common_options
@click.option("--generator", "generators", default="smooth", show_default=True,
              callback=_csv_list(str), help="smooth, rough, polynomial, constant")
@click.option("--samples", type=int, default=1, show_default=True)
@click.option("--alpha", type=float, default=None)
@click.option("--n", "n_values", default=None, callback=_int_range)
def convergence(radices, resolution, p, seed, out, fmt, generators, samples, alpha, n_values):
    """||sigma_n f - f||_{H_p} next to the modulus of continuity."""
    cfg = ExperimentConfig("theorem1-convergence", radices, resolution, p, n_values=n_values,
                           samples=samples, seed=seed, alpha=alpha, generators=generators)
    _emit(run(cfg).render(fmt), out)


@main.command()
@common_options
@click.option("--sizes", default=None, callback=_csv_list(int), help="Ascending group orders.")
@click.option("--naive-max", type=int, default=2**12, show_default=True)
@click.option("--repeats", type=int, default=3, show_default=True)
@click.option("--max-ratio", type=float, default=None,
              help="Exit 3 if a size doubling costs more than this factor.")
def bench(radices, resolution, p, seed, out, fmt, sizes, naive_max, repeats, max_ratio):
    """Time the staged transform against the naive character sum."""
    cfg = ExperimentConfig("transform-bench", radices, resolution, p, seed=seed, sizes=sizes or (),
                           naive_max=naive_max, repeats=repeats)
    report = run(cfg)
    _emit(report.render(fmt), out)
    if max_ratio is not None:
        worst = max((r["time_ratio"] for r in report.rows if r["time_ratio"]), default=0.0)
        if worst > max_ratio:
            raise InvariantViolation(f"time ratio {worst:.3f} exceeds {max_ratio}")


if __name__ == "__main__":
    sys.exit(main())
