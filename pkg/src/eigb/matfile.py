"""Text format for complex matrices (format tag EIGB1).

Grammar: lines starting with '#' are ignored; the first token is the
dimension n, followed by exactly n*n whitespace-separated entries in
row-major order.  An entry is a real float literal or a complex literal
of the exact form (re,im) with no interior whitespace.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import ParseError, WrongEntryCount

FORMAT_VERSION = "EIGB1"

_COMPLEX_RE = re.compile(r"^\(([^,()\s]+),([^,()\s]+)\)$")


def _tokens(text: str):
    for line_no, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            continue
        for piece in re.finditer(r"\S+", line):
            yield line_no, piece.start() + 1, piece.group()


def _parse_float(token: str, line: int, col: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(line, col, f"not a number: {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(line, col, f"non-finite value: {token!r}")
    return value


def _parse_entry(token: str, line: int, col: int) -> complex:
    if token.startswith("("):
        m = _COMPLEX_RE.match(token)
        if m is None:
            raise ParseError(
                line, col, f"malformed complex literal (expected (re,im)): {token!r}"
            )
        return complex(
            _parse_float(m.group(1), line, col), _parse_float(m.group(2), line, col)
        )
    return complex(_parse_float(token, line, col), 0.0)


def parse_matrix(text: str) -> np.ndarray:
    """Parse the EIGB1 text format into a square complex matrix."""
    stream = _tokens(text)
    try:
        line, col, token = next(stream)
    except StopIteration:
        raise ParseError(0, 0, "empty input, expected dimension") from None
    try:
        n = int(token)
    except ValueError:
        raise ParseError(line, col, f"dimension must be an integer, got {token!r}") from None
    if n < 1:
        raise ParseError(line, col, f"dimension must be positive, got {n}")

    entries = []
    for line, col, token in stream:
        if len(entries) == n * n:
            raise WrongEntryCount(
                f"expected {n * n} entries, found extra token {token!r} at line {line}"
            )
        entries.append(_parse_entry(token, line, col))
    if len(entries) != n * n:
        raise WrongEntryCount(f"expected {n * n} entries, found {len(entries)}")
    return np.array(entries, dtype=np.complex128).reshape(n, n)


def _format_entry(value: complex) -> str:
    re_part, im_part = float(value.real), float(value.imag)
    if im_part == 0.0:
        return repr(re_part)
    return f"({re_part!r},{im_part!r})"


def write_matrix(matrix) -> str:
    """Serialize a square complex matrix; parse(write(m)) is entrywise identical."""
    m = np.asarray(matrix, dtype=np.complex128)
    n = m.shape[0]
    lines = [f"# {FORMAT_VERSION}", str(n)]
    for row in m:
        lines.append(" ".join(_format_entry(v) for v in row))
    return "\n".join(lines) + "\n"


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def save_matrix(path, matrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_matrix(matrix))
