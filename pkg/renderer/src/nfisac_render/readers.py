"""CSV readers for the simulator's documented output schemas.

Every reader checks its column contract up front and reports missing
columns by name; values are parsed but never altered, so anything the
figures show can be traced back to a CSV cell verbatim.
"""

import csv

import numpy as np


class SchemaError(Exception):
    """The file does not match the documented column schema."""


def _rows(path):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty")
        body = list(reader)
    if not body:
        raise SchemaError(f"{path}: no data rows")
    return header, body


def read_table(path, numeric_columns, string_columns=()):
    """Read a long-format CSV into column arrays.

    Raises SchemaError naming any expected column that is absent.
    """
    header, body = _rows(path)
    wanted = list(numeric_columns) + list(string_columns)
    missing = [c for c in wanted if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)} "
                          f"(found: {', '.join(header)})")
    index = {c: header.index(c) for c in wanted}
    out = {}
    for c in numeric_columns:
        i = index[c]
        out[c] = np.array([float(row[i]) for row in body])
    for c in string_columns:
        i = index[c]
        out[c] = np.array([row[i] for row in body], dtype=object)
    return out


def read_heatmap(path):
    """Read a matrix-layout heatmap CSV (leading 'bin' label column).

    Returns (row_labels, col_labels, values) with values untouched.
    """
    header, body = _rows(path)
    if not header or header[0] != "bin":
        raise SchemaError(f"{path}: missing leading 'bin' column "
                          f"(found: {', '.join(header[:3])}...)")
    col_labels = np.array([int(c) for c in header[1:]])
    row_labels = np.array([int(row[0]) for row in body])
    values = np.array([[float(v) for v in row[1:]] for row in body])
    if values.shape[1] != col_labels.size:
        raise SchemaError(f"{path}: ragged rows")
    return row_labels, col_labels, values
