"""Matrix text format and the ``--spectrum`` grammar.

Matrix files::

    # comment
    3
    1 0 0
    0 1/2 0
    0 0 -3

The first nonblank line is ``n``; then ``n`` rows of ``n`` whitespace
separated scalars in ``p`` or ``p/q`` form.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from pathlib import Path

from .charpoly import Spectrum
from .errors import DimensionError, ParseError
from .field import parse_scalar, render
from .matrix import Matrix

_TOKEN = re.compile(r"\S+")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def parse_matrix(text: str) -> Matrix:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matrix file")
    lineno, header = lines[0]
    tokens = header.split()
    if len(tokens) != 1 or not tokens[0].isdigit():
        raise ParseError(f"expected the dimension n, got {header.strip()!r}", lineno, 1)
    n = int(tokens[0])
    body = lines[1:]
    if len(body) != n:
        raise DimensionError(f"expected {n} rows, found {len(body)}", body[-1][0] if body else lineno)
    rows = []
    for lineno, line in body:
        row = []
        for m in _TOKEN.finditer(line):
            try:
                row.append(parse_scalar(m.group()))
            except ParseError as exc:
                raise ParseError(str(exc), lineno, m.start() + 1) from None
        if len(row) != n:
            raise DimensionError(f"expected {n} entries, found {len(row)}", lineno)
        rows.append(row)
    if n == 0:
        return Matrix._wrap(())
    return Matrix(rows)


def read_matrix(path) -> Matrix:
    return parse_matrix(Path(path).read_text())


def render_matrix(m: Matrix) -> str:
    """Inverse of :func:`parse_matrix`, columns right-aligned."""
    cells = [[render(x) for x in m.row(i)] for i in range(m.rows)]
    width = max((len(c) for r in cells for c in r), default=1)
    lines = [str(m.rows)]
    lines.extend(" ".join(c.rjust(width) for c in r) for r in cells)
    return "\n".join(lines) + "\n"


def matrix_to_strings(m: Matrix) -> list[list[str]]:
    return [[render(x) for x in m.row(i)] for i in range(m.rows)]


def matrix_from_strings(rows) -> Matrix:
    if not rows:
        return Matrix._wrap(())
    return Matrix([[parse_scalar(str(x)) for x in r] for r in rows])


def parse_spectrum(text: str) -> Spectrum:
    """``"3:6,2:4"`` -> eigenvalue 3 with multiplicity 6, then 2 with 4."""
    factors = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part.count(":") != 1:
            raise ParseError(f"spectrum entry {part!r} is not value:multiplicity")
        value, mult = part.split(":")
        if not mult.strip().isdigit():
            raise ParseError(f"bad multiplicity in {part!r}")
        factors.append((parse_scalar(value), int(mult)))
    if not factors:
        raise ParseError("empty spectrum")
    return Spectrum(tuple(factors))


def parse_blocks(text: str) -> tuple:
    """``"3=4,2;2=3,1"`` -> ((3, (4, 2)), (2, (3, 1)))."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.count("=") != 1:
            raise ParseError(f"block entry {part!r} is not value=size,size,...")
        value, sizes = part.split("=")
        try:
            sizes = tuple(int(s) for s in sizes.split(","))
        except ValueError:
            raise ParseError(f"bad block sizes in {part!r}") from None
        out.append((parse_scalar(value), sizes))
    if not out:
        raise ParseError("no blocks given")
    return tuple(out)
