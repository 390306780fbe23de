"""File formats: FLD1 snapshots, versioned CSV tables, atomic writes.

FLD1 layout (little endian): magic "FLD1", u32 version = 1, u64 nx, u64 ny,
f64 lx, f64 ly, f64 time, then nx*ny f64 real samples, row-major with y
outer. A sidecar JSON manifest (path + ".json") records model parameters
and provenance. Every CSV starts with a "# dmkp-lab v1 <schema>" line and
a header row; all writes are write-temp-then-rename.
"""

from __future__ import annotations

import json
import os
import struct
import tempfile
from dataclasses import asdict

import numpy as np

from .grid import SpectralGrid, build_grid
from .symbols import ModelParams

SCHEMA_PREFIX = "dmkp-lab v1"
_MAGIC = b"FLD1"
_HEADER = struct.Struct("<4sIQQddd")


class FormatError(ValueError):
    """Malformed snapshot or CSV input."""


def atomic_write_bytes(path: str, data: bytes) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode())


def write_field(path: str, grid: SpectralGrid, samples: np.ndarray, time: float,
                params: ModelParams | None = None, extra: dict | None = None) -> None:
    if samples.shape != grid.shape:
        raise FormatError(f"sample shape {samples.shape} != grid shape {grid.shape}")
    header = _HEADER.pack(_MAGIC, 1, grid.nx, grid.ny, grid.lx, grid.ly, float(time))
    body = np.ascontiguousarray(samples, dtype="<f8").tobytes()
    atomic_write_bytes(path, header + body)
    manifest = {"schema": f"{SCHEMA_PREFIX} field", "time": float(time)}
    if params is not None:
        manifest["model"] = asdict(params)
    if extra:
        manifest["provenance"] = extra
    atomic_write_text(path + ".json", json.dumps(manifest, sort_keys=True, indent=1) + "\n")


def read_field(path: str) -> tuple[SpectralGrid, np.ndarray, float]:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size or raw[:4] != _MAGIC:
        raise FormatError(f"{path}: not an FLD1 snapshot")
    magic, version, nx, ny, lx, ly, time = _HEADER.unpack_from(raw)
    if version != 1:
        raise FormatError(f"{path}: unsupported FLD1 version {version}")
    expected = _HEADER.size + 8 * nx * ny
    if len(raw) != expected:
        raise FormatError(f"{path}: truncated snapshot ({len(raw)} of {expected} bytes)")
    samples = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(ny, nx).copy()
    return build_grid(nx, ny, lx, ly), samples, time


def format_float(x: float) -> str:
    return repr(float(x))


def csv_text(schema: str, columns: list[str], rows: list[tuple]) -> str:
    lines = [f"# {SCHEMA_PREFIX} {schema}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, (float, np.floating)) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str, schema: str, columns: list[str], rows: list[tuple]) -> None:
    atomic_write_text(path, csv_text(schema, columns, rows))


def read_csv(path: str, expected_schema: str | None = None) -> tuple[str, list[str], list[list[str]]]:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0].startswith("# " + SCHEMA_PREFIX):
        raise FormatError(f"{path}: missing schema header")
    schema = lines[0][len("# " + SCHEMA_PREFIX) + 1 :]
    if expected_schema is not None and schema != expected_schema:
        raise FormatError(f"{path}: schema {schema!r}, expected {expected_schema!r}")
    columns = lines[1].split(",")
    rows = [ln.split(",") for ln in lines[2:] if ln]
    return schema, columns, rows


def five_point_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order derivative of a sampled series; centered inside,
    one-sided 5-point stencils at the two rows on each edge."""
    v = np.asarray(values, dtype=np.float64)
    n = len(v)
    if n < 5:
        raise ValueError("need at least 5 samples")
    out = np.empty(n)
    out[2:-2] = (-v[4:] + 8 * v[3:-1] - 8 * v[1:-3] + v[:-4]) / (12 * h)
    fwd = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
    fwd1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0
    out[0] = np.dot(fwd, v[:5]) / h
    out[1] = np.dot(fwd1, v[:5]) / h
    out[-1] = -np.dot(fwd, v[-5:][::-1]) / h
    out[-2] = -np.dot(fwd1, v[-5:][::-1]) / h
    return out
