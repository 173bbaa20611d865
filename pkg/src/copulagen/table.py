"""Mixed-type tabular data model, CSV ingestion, and deterministic splitting.

A :class:`Table` stores each column as a numpy array: continuous and integer
columns as float64 with NaN marking missing cells, categorical columns as
int32 codes into the schema's category list with -1 marking missing. Tables
are immutable after construction (arrays are write-locked) and safe to share.
"""

from __future__ import annotations

import csv
import enum
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CsvParseError, SchemaError
from .rng import Rng


class ColumnKind(enum.Enum):
    CONTINUOUS = "continuous"
    INTEGER = "integer"
    CATEGORICAL = "categorical"


class _Missing:
    """Singleton marker for missing cells in the cell-level API."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "MISSING"


MISSING = _Missing()

DEFAULT_MISSING_TOKENS = frozenset({"", "na", "nan", "n/a", "?"})

# Integer columns with more distinct values than this are promoted to
# continuous during inference; guards quadratic inverse-transform cost.
DEFAULT_MAX_INTEGER_SUPPORT = 10_000

_INT_RE = re.compile(r"^[+-]?\d+$")


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: ColumnKind
    categories: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind is ColumnKind.CATEGORICAL:
            if not self.categories:
                raise SchemaError(f"column {self.name!r}: categorical schema needs categories")
            if len(set(self.categories)) != len(self.categories):
                raise SchemaError(f"column {self.name!r}: duplicate category labels")
        elif self.categories:
            raise SchemaError(f"column {self.name!r}: categories only allowed on categorical columns")


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    seed: int

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0,1), got {self.train_fraction}")


class Table:
    """Immutable column-major table with explicit per-cell missingness."""

    def __init__(self, schema: Sequence[ColumnSchema], columns: Sequence[np.ndarray]):
        schema = list(schema)
        if not schema:
            raise SchemaError("table needs at least one column")
        names = [c.name for c in schema]
        if len(set(names)) != len(names):
            raise SchemaError("column names must be unique")
        if len(columns) != len(schema):
            raise SchemaError("schema/column count mismatch")

        cols: list[np.ndarray] = []
        n = None
        for cs, raw in zip(schema, columns):
            arr = self._coerce_column(cs, np.asarray(raw))
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise SchemaError(f"column {cs.name!r} has {arr.shape[0]} rows, expected {n}")
            arr.flags.writeable = False
            cols.append(arr)
        if n == 0:
            raise SchemaError("table needs at least one row")

        self._schema = tuple(schema)
        self._columns = tuple(cols)
        self._index = {c.name: j for j, c in enumerate(schema)}

    @staticmethod
    def _coerce_column(cs: ColumnSchema, arr: np.ndarray) -> np.ndarray:
        if cs.kind is ColumnKind.CATEGORICAL:
            codes = np.asarray(arr, dtype=np.int32).copy()
            if codes.ndim != 1:
                raise SchemaError(f"column {cs.name!r}: expected 1-d codes")
            if codes.size and (codes.min() < -1 or codes.max() >= len(cs.categories)):
                raise SchemaError(f"column {cs.name!r}: category code out of range")
            return codes
        vals = np.asarray(arr, dtype=np.float64).copy()
        if vals.ndim != 1:
            raise SchemaError(f"column {cs.name!r}: expected 1-d values")
        finite = vals[~np.isnan(vals)]
        if np.any(np.isinf(finite)):
            raise SchemaError(f"column {cs.name!r}: non-finite values")
        if cs.kind is ColumnKind.INTEGER and finite.size and np.any(finite != np.floor(finite)):
            raise SchemaError(f"column {cs.name!r}: non-integral value in integer column")
        return vals

    @property
    def schema(self) -> tuple[ColumnSchema, ...]:
        return self._schema

    @property
    def n(self) -> int:
        return self._columns[0].shape[0]

    @property
    def p(self) -> int:
        return len(self._schema)

    def column(self, key: int | str) -> np.ndarray:
        j = self._index[key] if isinstance(key, str) else key
        return self._columns[j]

    def column_index(self, name: str) -> int:
        if name not in self._index:
            raise SchemaError(f"no column named {name!r}")
        return self._index[name]

    def cell(self, i: int, j: int):
        cs = self._schema[j]
        v = self._columns[j][i]
        if cs.kind is ColumnKind.CATEGORICAL:
            return MISSING if v < 0 else cs.categories[int(v)]
        if math.isnan(v):
            return MISSING
        return int(v) if cs.kind is ColumnKind.INTEGER else float(v)

    def take(self, rows: np.ndarray) -> "Table":
        rows = np.asarray(rows, dtype=np.int64)
        return Table(self._schema, [c[rows] for c in self._columns])

    def equals(self, other: "Table") -> bool:
        if self._schema != other._schema:
            return False
        for a, b in zip(self._columns, other._columns):
            if a.dtype.kind == "f":
                if not np.array_equal(a, b, equal_nan=True):
                    return False
            elif not np.array_equal(a, b):
                return False
        return True


def _parse_int(token: str) -> float | None:
    return float(int(token)) if _INT_RE.match(token) else None


def _parse_float(token: str) -> float | None:
    try:
        v = float(token)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def infer_schema(
    raw_columns: Sequence[Sequence[str]],
    names: Sequence[str],
    *,
    missing_tokens: Iterable[str] = DEFAULT_MISSING_TOKENS,
    max_integer_support: int = DEFAULT_MAX_INTEGER_SUPPORT,
) -> list[ColumnSchema]:
    """Infer a schema from text token columns.

    A column is integer if every non-missing token parses as an integer,
    continuous if every token parses as a finite real, else categorical with
    lexicographically ordered labels. Integer columns with more than
    ``max_integer_support`` distinct values are promoted to continuous.
    """
    missing = {t.lower() for t in missing_tokens}
    out = []
    for name, tokens in zip(names, raw_columns):
        observed = [t.strip() for t in tokens if t.strip().lower() not in missing]
        if not observed:
            raise SchemaError(f"column {name!r} is entirely missing; kind undecidable")
        if all(_parse_int(t) is not None for t in observed):
            if len({int(t) for t in observed}) > max_integer_support:
                out.append(ColumnSchema(name, ColumnKind.CONTINUOUS))
            else:
                out.append(ColumnSchema(name, ColumnKind.INTEGER))
        elif all(_parse_float(t) is not None for t in observed):
            out.append(ColumnSchema(name, ColumnKind.CONTINUOUS))
        else:
            out.append(ColumnSchema(name, ColumnKind.CATEGORICAL, tuple(sorted(set(observed)))))
    return out


def _schema_from_override(doc: dict, names: list[str], raw_columns, missing: set[str]) -> list[ColumnSchema]:
    for col in doc:
        if col not in names:
            raise SchemaError(f"schema override names absent column {col!r}")
    inferred = {cs.name: cs for cs in infer_schema(raw_columns, names, missing_tokens=missing)}
    out = []
    for name, tokens in zip(names, raw_columns):
        spec = doc.get(name)
        if spec is None:
            out.append(inferred[name])
            continue
        if isinstance(spec, str):
            kind, cats = spec, None
        else:
            kind, cats = spec.get("kind"), spec.get("categories")
        try:
            ck = ColumnKind(kind)
        except ValueError:
            raise SchemaError(f"column {name!r}: unknown kind {kind!r}") from None
        if ck is ColumnKind.CATEGORICAL:
            if cats is None:
                observed = sorted({t.strip() for t in tokens if t.strip().lower() not in missing})
                cats = observed
            out.append(ColumnSchema(name, ck, tuple(cats)))
        else:
            out.append(ColumnSchema(name, ck))
    return out


def _tokens_to_column(cs: ColumnSchema, tokens: list[str], missing: set[str]) -> np.ndarray:
    n = len(tokens)
    if cs.kind is ColumnKind.CATEGORICAL:
        code = {lab: k for k, lab in enumerate(cs.categories)}
        out = np.empty(n, dtype=np.int32)
        for i, t in enumerate(tokens):
            t = t.strip()
            if t.lower() in missing:
                out[i] = -1
            elif t in code:
                out[i] = code[t]
            else:
                raise SchemaError(f"column {cs.name!r}: label {t!r} not in schema categories")
        return out
    out = np.empty(n, dtype=np.float64)
    for i, t in enumerate(tokens):
        t = t.strip()
        if t.lower() in missing:
            out[i] = np.nan
            continue
        v = _parse_int(t) if cs.kind is ColumnKind.INTEGER else _parse_float(t)
        if v is None:
            raise SchemaError(f"column {cs.name!r}: token {t!r} does not parse as {cs.kind.value}")
        out[i] = v
    return out


def read_csv(
    path: str | Path,
    schema_override: str | Path | dict | None = None,
    *,
    missing_tokens: Iterable[str] = DEFAULT_MISSING_TOKENS,
    max_integer_support: int = DEFAULT_MAX_INTEGER_SUPPORT,
) -> Table:
    """Read an RFC-4180 CSV (header row mandatory) into a Table.

    ``schema_override`` is a JSON document (path or dict) mapping column name
    to a kind string or ``{"kind": ..., "categories": [...]}``; unnamed
    columns fall back to inference.
    """
    path = Path(path)
    missing = {t.lower() for t in missing_tokens}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvParseError(f"{path}: empty file, header row required") from None
        rows = []
        for i, row in enumerate(reader):
            if len(row) != len(header):
                raise CsvParseError(f"{path}: row {i + 2} has {len(row)} fields, expected {len(header)}")
            rows.append(row)
    if not rows:
        raise CsvParseError(f"{path}: no data rows")

    raw_columns = [[row[j] for row in rows] for j in range(len(header))]
    if schema_override is None:
        schema = infer_schema(raw_columns, header, missing_tokens=missing,
                              max_integer_support=max_integer_support)
    else:
        doc = schema_override
        if not isinstance(doc, dict):
            with open(doc, encoding="utf-8") as fh:
                doc = json.load(fh)
        schema = _schema_from_override(doc, header, raw_columns, missing)
    columns = [_tokens_to_column(cs, toks, missing) for cs, toks in zip(schema, raw_columns)]
    return Table(schema, columns)


def _format_cell(cs: ColumnSchema, v) -> str:
    if cs.kind is ColumnKind.CATEGORICAL:
        return "" if v < 0 else cs.categories[int(v)]
    if math.isnan(v):
        return ""
    if cs.kind is ColumnKind.INTEGER:
        return str(int(v))
    return repr(float(v))


def write_csv(table: Table, path: str | Path) -> None:
    """Write a table as CSV; missing cells become empty fields.

    Round-trips with :func:`read_csv` when the table's own schema is passed
    back as the override (inference alone cannot distinguish e.g. an
    all-integral continuous column from an integer one).
    """
    path = Path(path)
    cols = [table.column(j) for j in range(table.p)]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow([cs.name for cs in table.schema])
            for i in range(table.n):
                writer.writerow([_format_cell(cs, col[i]) for cs, col in zip(table.schema, cols)])
    except OSError as exc:
        raise CsvParseError(f"cannot write {path}: {exc}") from exc


def schema_override_doc(table: Table) -> dict:
    """Schema-override JSON document reproducing this table's schema exactly."""
    doc: dict = {}
    for cs in table.schema:
        if cs.kind is ColumnKind.CATEGORICAL:
            doc[cs.name] = {"kind": cs.kind.value, "categories": list(cs.categories)}
        else:
            doc[cs.name] = cs.kind.value
    return doc


def split(table: Table, spec: SplitSpec) -> tuple[Table, Table]:
    """Deterministic disjoint row partition: shuffle indices, then cut."""
    n = table.n
    k = int(math.floor(spec.train_fraction * n))
    if k < 1:
        raise ValueError(f"train_fraction {spec.train_fraction} leaves no training rows for n={n}")
    perm = Rng(spec.seed).permutation(n)
    return table.take(perm[:k]), table.take(perm[k:])
