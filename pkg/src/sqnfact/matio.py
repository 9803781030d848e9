"""Matrix Market and headerless CSV readers and writers.

Matrix Market support covers the ``matrix ... real general`` flavor in both
array and coordinate layouts (integer fields are read as reals; complex and
pattern fields are rejected). Array data is stored column-major per the
format convention; coordinate entries are 1-based and duplicates are
summed. Values are written with 17 significant digits so a save/load round
trip reproduces float64 entries exactly.
"""

from pathlib import Path

import numpy as np

from .errors import MatrixFormatError
from .linalg import as_matrix

_SUFFIX_FORMATS = {".mtx": "matrix-market", ".mm": "matrix-market", ".csv": "csv"}


def detect_format(path) -> str:
    suffix = Path(path).suffix.lower()
    try:
        return _SUFFIX_FORMATS[suffix]
    except KeyError:
        raise MatrixFormatError(
            f"{path}: cannot infer format from suffix {suffix!r}; "
            "pass 'matrix-market' or 'csv' explicitly") from None


def load_matrix(path, fmt: str | None = None) -> np.ndarray:
    """Read a dense matrix from a Matrix Market or headerless CSV file."""
    fmt = fmt or detect_format(path)
    if fmt == "matrix-market":
        return _load_matrix_market(path)
    if fmt == "csv":
        return _load_csv(path)
    raise MatrixFormatError(f"unknown matrix format {fmt!r}")


def save_matrix(path, x, fmt: str | None = None) -> None:
    """Write a dense matrix as Matrix Market (array layout) or CSV."""
    a = as_matrix(x)
    fmt = fmt or detect_format(path)
    if fmt == "matrix-market":
        m, n = a.shape
        lines = ["%%MatrixMarket matrix array real general", f"{m} {n}"]
        lines.extend(f"{v:.17g}" for v in a.T.reshape(-1))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "csv":
        rows = (",".join(f"{v:.17g}" for v in row) for row in a)
        Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")
    else:
        raise MatrixFormatError(f"unknown matrix format {fmt!r}")


def _fail(path, lineno, message):
    raise MatrixFormatError(f"{path}:{lineno}: {message}")


def _parse_float(path, lineno, token):
    try:
        return float(token)
    except ValueError:
        _fail(path, lineno, f"expected a number, got {token!r}")


def _parse_dim(path, lineno, token, what):
    try:
        value = int(token)
    except ValueError:
        _fail(path, lineno, f"expected an integer {what}, got {token!r}")
    if value < 0:
        _fail(path, lineno, f"{what} must be nonnegative, got {value}")
    return value


def _load_matrix_market(path) -> np.ndarray:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        _fail(path, 1, "empty file")
    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket":
        _fail(path, 1, "missing %%MatrixMarket header")
    obj, layout, field, symmetry = (t.lower() for t in header[1:])
    if obj != "matrix":
        _fail(path, 1, f"unsupported object {obj!r}; only 'matrix' is handled")
    if layout not in ("array", "coordinate"):
        _fail(path, 1, f"unsupported layout {layout!r}")
    if field in ("complex", "pattern"):
        _fail(path, 1, f"field {field!r} is not supported; use 'real'")
    if field not in ("real", "integer"):
        _fail(path, 1, f"unknown field {field!r}")
    if symmetry != "general":
        _fail(path, 1, f"unsupported symmetry {symmetry!r}; only 'general'")

    body = [
        (lineno, line.strip())
        for lineno, line in enumerate(lines[1:], start=2)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        _fail(path, len(lines), "missing size line")
    size_lineno, size_line = body[0]
    tokens = size_line.split()
    entries = body[1:]

    if layout == "array":
        if len(tokens) != 2:
            _fail(path, size_lineno, "array size line must be 'rows cols'")
        m = _parse_dim(path, size_lineno, tokens[0], "row count")
        n = _parse_dim(path, size_lineno, tokens[1], "column count")
        values = []
        for lineno, line in entries:
            for token in line.split():
                values.append(_parse_float(path, lineno, token))
        if len(values) != m * n:
            _fail(path, entries[-1][0] if entries else size_lineno,
                  f"expected {m * n} values, found {len(values)}")
        return np.array(values).reshape((n, m)).T

    if len(tokens) != 3:
        _fail(path, size_lineno, "coordinate size line must be 'rows cols nnz'")
    m = _parse_dim(path, size_lineno, tokens[0], "row count")
    n = _parse_dim(path, size_lineno, tokens[1], "column count")
    nnz = _parse_dim(path, size_lineno, tokens[2], "entry count")
    if len(entries) != nnz:
        _fail(path, entries[-1][0] if entries else size_lineno,
              f"expected {nnz} entries, found {len(entries)}")
    out = np.zeros((m, n))
    for lineno, line in entries:
        tok = line.split()
        if len(tok) != 3:
            _fail(path, lineno, "coordinate entries must be 'row col value'")
        i = _parse_dim(path, lineno, tok[0], "row index")
        j = _parse_dim(path, lineno, tok[1], "column index")
        if not (1 <= i <= m and 1 <= j <= n):
            _fail(path, lineno, f"index ({i}, {j}) outside {m} x {n}")
        out[i - 1, j - 1] += _parse_float(path, lineno, tok[2])
    return out


def _load_csv(path) -> np.ndarray:
    rows = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            tokens = stripped.split(",")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                _fail(path, lineno,
                      f"row has {len(tokens)} columns, expected {width}")
            rows.append([_parse_float(path, lineno, t.strip()) for t in tokens])
    if not rows:
        _fail(path, 1, "empty file")
    return np.array(rows)
