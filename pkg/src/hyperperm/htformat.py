"""Text formats: single tensors (``.ht``) and vertex-set archives.

A ``.ht`` file::

    ht1
    order 3
    dims 2 2 2
    1 0
    0 1
    ...

``#`` starts a comment.  Scalars are integers or ``p/q`` with ``q > 0``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import prod
from pathlib import Path

from .exceptions import HtParseError, ShapeError
from .tensor import Tensor

_SCALAR = re.compile(r"^[+-]?\d+(/\d+)?$")


def format_scalar(x: Fraction) -> str:
    return str(x)


def dumps(T: Tensor) -> str:
    """Serialize ``T``; one text row per run of the last axis."""
    lines = ["ht1", f"order {T.order}", "dims " + " ".join(map(str, T.dims))]
    run = T.dims[-1]
    ent = T.entries
    for start in range(0, T.size, run):
        lines.append(" ".join(format_scalar(x) for x in ent[start:start + run]))
    return "\n".join(lines) + "\n"


def _tokens(text: str, first_line: int = 1):
    """Yield ``(token, line, column)`` with comments stripped."""
    for ln, raw in enumerate(text.splitlines(), start=first_line):
        body = raw.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            yield m.group(0), ln, m.start() + 1


def _parse_scalar(tok: str, line: int, col: int) -> Fraction:
    if not _SCALAR.match(tok):
        raise HtParseError(f"invalid scalar {tok!r}", line, col)
    if "/" in tok:
        p, q = tok.split("/")
        if int(q) == 0:
            raise HtParseError(f"zero denominator in {tok!r}", line, col)
        return Fraction(int(p), int(q))
    return Fraction(int(tok))


def _parse_int(tok, line, col, what):
    if not re.match(r"^\d+$", tok):
        raise HtParseError(f"expected {what}, got {tok!r}", line, col)
    return int(tok)


def _parse_tokens(toks, end_line):
    it = iter(toks)

    def take(expect):
        try:
            return next(it)
        except StopIteration:
            raise HtParseError(f"unexpected end of input, expected {expect}", end_line) from None

    tok, ln, col = take("'ht1'")
    if tok != "ht1":
        raise HtParseError(f"expected 'ht1', got {tok!r}", ln, col)
    tok, ln, col = take("'order'")
    if tok != "order":
        raise HtParseError(f"expected 'order', got {tok!r}", ln, col)
    tok, ln, col = take("order value")
    d = _parse_int(tok, ln, col, "order value")
    if d < 1:
        raise HtParseError("order must be at least 1", ln, col)
    tok, ln, col = take("'dims'")
    if tok != "dims":
        raise HtParseError(f"expected 'dims', got {tok!r}", ln, col)
    dims = []
    for _ in range(d):
        tok, ln, col = take("extent")
        n = _parse_int(tok, ln, col, "extent")
        if n < 1:
            raise HtParseError("extents must be positive", ln, col)
        dims.append(n)
    need = prod(dims)
    entries = []
    for _ in range(need):
        tok, ln, col = take(f"{need} scalars")
        entries.append(_parse_scalar(tok, ln, col))
    return Tensor(dims, entries), it


def loads(text: str) -> Tensor:
    """Parse a single ``.ht`` document."""
    lines = text.splitlines()
    T, rest = _parse_tokens(_tokens(text), len(lines) or 1)
    for tok, ln, col in rest:
        raise HtParseError(f"trailing token {tok!r}", ln, col)
    return T


def load(path) -> Tensor:
    try:
        return loads(Path(path).read_text())
    except HtParseError as exc:
        raise HtParseError(f"{path}: {exc}") from None


def save(T: Tensor, path) -> None:
    Path(path).write_text(dumps(T))


def frontal_display(T: Tensor) -> str:
    """Frontal-slice flattening of an order-3 tensor, slices separated by '|'."""
    if T.order != 3:
        raise ShapeError("frontal display needs an order-3 tensor")
    n1, n2, n3 = T.dims
    cells = [[str(T[i, j, k]) for k in range(1, n3 + 1) for j in range(1, n2 + 1)]
             for i in range(1, n1 + 1)]
    width = max(len(c) for row in cells for c in row)
    rows = []
    for row in cells:
        slices = [" ".join(c.rjust(width) for c in row[k * n2:(k + 1) * n2]) for k in range(n3)]
        rows.append(" | ".join(slices))
    return "\n".join(rows)


def dumps_archive(tensors) -> str:
    """Concatenate tensors under a ``vertexset <count>`` header."""
    tensors = list(tensors)
    parts = [f"vertexset {len(tensors)}"]
    for i, T in enumerate(tensors, start=1):
        parts.append(f"vertex {i}")
        parts.append(dumps(T).rstrip("\n"))
    return "\n".join(parts) + "\n"


def loads_archive(text: str) -> list[Tensor]:
    toks = list(_tokens(text))
    if not toks or toks[0][0] != "vertexset":
        ln, col = (toks[0][1], toks[0][2]) if toks else (1, None)
        raise HtParseError("expected 'vertexset <count>'", ln, col)
    if len(toks) < 2:
        raise HtParseError("missing vertex count", toks[0][1])
    count = _parse_int(toks[1][0], toks[1][1], toks[1][2], "vertex count")
    pos = 2
    out = []
    end_line = len(text.splitlines()) or 1
    for i in range(1, count + 1):
        if pos + 1 >= len(toks) or toks[pos][0] != "vertex":
            ln, col = (toks[pos][1], toks[pos][2]) if pos < len(toks) else (end_line, None)
            raise HtParseError(f"expected 'vertex {i}'", ln, col)
        num, ln, col = toks[pos + 1]
        if _parse_int(num, ln, col, "vertex number") != i:
            raise HtParseError(f"expected vertex number {i}, got {num}", ln, col)
        pos += 2
        it = iter(toks[pos:])
        T, _ = _parse_tokens(it, end_line)
        pos += 4 + T.order + T.size
        out.append(T)
    if pos != len(toks):
        tok, ln, col = toks[pos]
        raise HtParseError(f"trailing token {tok!r}", ln, col)
    return out


def load_archive(path) -> list[Tensor]:
    return loads_archive(Path(path).read_text())
