"""CSV data ingestion and JSON Gaussian-spec files."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import AidcorError, MissingColumnError, NonNumericCellError, RaggedRowError
from .gaussian import GaussianSpec

SPEC_VERSION = 1

PathLike = Union[str, Path]


class SpecFileError(AidcorError, ValueError):
    """A Gaussian spec file is malformed; the message names the offending key."""


@dataclass(frozen=True)
class CsvTable:
    headers: tuple
    rows: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_cols(self) -> int:
        return len(self.headers)

    def select(self, columns: Sequence[str]) -> np.ndarray:
        """Columns by name, as an ``(n_rows, len(columns))`` array."""
        idx = []
        for name in columns:
            if name not in self.headers:
                raise MissingColumnError(f"column {name!r} not found; available: {', '.join(self.headers)}")
            idx.append(self.headers.index(name))
        return self.rows[:, idx]


def parse_columns(spec: Union[str, Sequence[str]]) -> list[str]:
    if isinstance(spec, str):
        cols = [c.strip() for c in spec.split(",")]
    else:
        cols = list(spec)
    if not cols or any(not c for c in cols):
        raise ValueError(f"bad column list {spec!r}")
    return cols


def read_table(path: PathLike) -> CsvTable:
    """Read a comma-separated file with a header row and numeric cells.

    Row numbers in errors count file lines, the header being line 1.
    Blank lines are skipped.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            headers = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if len(set(headers)) != len(headers):
            raise ValueError(f"{path}: duplicate column names in header")
        rows = []
        for record in reader:
            line = reader.line_num
            if not record or all(not c.strip() for c in record):
                continue
            if len(record) != len(headers):
                raise RaggedRowError(line, len(headers), len(record))
            vals = []
            for name, cell in zip(headers, record):
                try:
                    v = float(cell)
                except ValueError:
                    raise NonNumericCellError(line, name, cell) from None
                if not math.isfinite(v):
                    raise NonNumericCellError(line, name, cell)
                vals.append(v)
            rows.append(vals)
    arr = np.array(rows, dtype=float).reshape(len(rows), len(headers))
    return CsvTable(tuple(headers), arr)


def read_csv(path: PathLike, columns: Union[str, Sequence[str]]) -> np.ndarray:
    """Selected columns of a CSV file, one sample per row."""
    return read_table(path).select(parse_columns(columns))


def format_float(v: float) -> str:
    return f"{v:.17g}"


def write_csv(fh, headers: Sequence[str], rows, comment: str = "") -> None:
    if comment:
        fh.write(f"# {comment}\n")
    fh.write(",".join(headers) + "\n")
    for row in rows:
        fh.write(",".join(format_float(float(v)) if not isinstance(v, (int, np.integer)) else str(int(v))
                          for v in row) + "\n")


def _matrix(doc: dict, key: str, shape: tuple) -> np.ndarray:
    if key not in doc:
        raise SpecFileError(f"{key}: missing")
    try:
        m = np.array(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise SpecFileError(f"{key}: not a numeric array") from None
    if m.shape != shape:
        raise SpecFileError(f"{key}: expected shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SpecFileError(f"{key}: non-finite entries")
    return m


def spec_from_dict(doc: dict) -> GaussianSpec:
    if not isinstance(doc, dict):
        raise SpecFileError("top level must be a JSON object")
    version = doc.get("version", SPEC_VERSION)
    if version != SPEC_VERSION:
        raise SpecFileError(f"version: unsupported value {version!r}")
    p, q = doc.get("p"), doc.get("q")
    for key, v in (("p", p), ("q", q)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise SpecFileError(f"{key}: must be a positive integer")
    sx = _matrix(doc, "sigma_x", (p, p))
    sy = _matrix(doc, "sigma_y", (q, q))
    sxy = _matrix(doc, "sigma_xy", (p, q))
    mean = None
    if doc.get("mean") is not None:
        mean = _matrix(doc, "mean", (p + q,))
    try:
        return GaussianSpec(sx, sy, sxy, mean)
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc


def read_spec(path: PathLike) -> GaussianSpec:
    """Load a :class:`GaussianSpec` from a JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(doc)


def spec_to_dict(spec: GaussianSpec) -> dict:
    doc = {
        "version": SPEC_VERSION,
        "p": spec.p,
        "q": spec.q,
        "sigma_x": spec.sigma_x.tolist(),
        "sigma_y": spec.sigma_y.tolist(),
        "sigma_xy": spec.sigma_xy.tolist(),
    }
    if spec.mean is not None:
        doc["mean"] = spec.mean.tolist()
    return doc


def write_spec(spec: GaussianSpec, path: PathLike) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n", encoding="utf-8")
