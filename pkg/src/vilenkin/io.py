"""CSV / JSON serialisation of grid functions, spectra and reports."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .group import RadixProfile, VilenkinError, build_profile
from .transform import GridFunction, Spectrum


def values_of(obj: GridFunction | Spectrum) -> np.ndarray:
    return obj.samples if isinstance(obj, GridFunction) else obj.coefficients


def to_json(obj: GridFunction | Spectrum) -> str:
    vals = values_of(obj)
    return json.dumps(
        {
            "kind": "spectrum" if isinstance(obj, Spectrum) else "function",
            "radices": list(obj.profile.radices),
            "resolution": obj.profile.resolution,
            "values": [[float(v.real), float(v.imag)] for v in vals],
        }
    )


def to_csv(obj: GridFunction | Spectrum, columns=("index", "re", "im")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for i, v in enumerate(values_of(obj)):
        w.writerow([i, repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def _parse_value(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise VilenkinError(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    return complex(float(v))


def from_json(text: str, as_spectrum: bool | None = None) -> GridFunction | Spectrum:
    data = json.loads(text)
    try:
        radices, values = data["radices"], data["values"]
    except (KeyError, TypeError):
        raise VilenkinError("JSON needs 'radices' and 'values'") from None
    profile = build_profile(radices, data.get("resolution"))
    vals = np.array([_parse_value(v) for v in values], dtype=np.complex128)
    if vals.size != profile.size:
        raise VilenkinError(f"{vals.size} values for M_R = {profile.size}")
    if as_spectrum is None:
        as_spectrum = data.get("kind") == "spectrum"
    return Spectrum(profile, vals) if as_spectrum else GridFunction(profile, vals)


def from_csv(text: str, profile: RadixProfile, as_spectrum: bool = False) -> GridFunction | Spectrum:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if rows and not rows[0][0].strip().lstrip("-").isdigit():
        rows = rows[1:]
    vals = np.zeros(profile.size, dtype=np.complex128)
    seen = np.zeros(profile.size, dtype=bool)
    for r in rows:
        i = int(r[0])
        if not 0 <= i < profile.size:
            raise VilenkinError(f"row index {i} outside [0, {profile.size})")
        vals[i] = complex(float(r[1]), float(r[2]) if len(r) > 2 else 0.0)
        seen[i] = True
    if not seen.all():
        raise VilenkinError(f"CSV covers {seen.sum()} of {profile.size} indices")
    return Spectrum(profile, vals) if as_spectrum else GridFunction(profile, vals)


def load(path: str | Path, profile: RadixProfile | None = None, as_spectrum: bool | None = None):
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        if profile is None:
            raise VilenkinError("loading CSV needs --radix/--resolution")
        return from_csv(text, profile, bool(as_spectrum))
    return from_json(text, as_spectrum)


def _cell(v):
    if isinstance(v, float):
        if not math.isfinite(v):
            raise VilenkinError(f"refusing to emit non-finite value {v}")
        return repr(v)
    if v is None:
        return ""
    return str(v)


def report_csv(header: list[str], columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def report_jsonl(meta: dict, columns: list[str], rows: list[dict]) -> str:
    lines = [json.dumps({"_meta": meta}, sort_keys=True)]
    for row in rows:
        for c in columns:
            v = row.get(c)
            if isinstance(v, float) and not math.isfinite(v):
                raise VilenkinError(f"refusing to emit non-finite value {v}")
        lines.append(json.dumps({c: row.get(c) for c in columns}))
    return "\n".join(lines) + "\n"
