"""Plain-text file formats.

``.hl3`` systems::

    n 7
    red 0 1 2
    red 0 3 4
    # comments allowed

or, instead of ``red`` rows, a single ``bits <hex>`` row holding the colex
bit array as a hexadecimal integer (bit r = triple of rank r), most
significant digit first, zero-padded to ``ceil(C(n,3)/4)`` digits.

Graph files::

    n 4
    edge 0 1
    edge 1 2 5      # optional positive integer weight
"""

from __future__ import annotations

from pathlib import Path

from .core import Colouring, num_triples


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


def _rows(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _read_n(rows) -> int:
    try:
        lineno, tok = next(rows)
    except StopIteration:
        raise FormatError("empty file") from None
    if tok[0] != "n" or len(tok) != 2:
        raise FormatError("first row must be 'n <N>'", lineno)
    try:
        return int(tok[1])
    except ValueError:
        raise FormatError(f"bad point count {tok[1]!r}", lineno) from None


def parse_hl3(text: str) -> Colouring:
    rows = _rows(text)
    n = _read_n(rows)
    bits = 0
    mode = None
    for lineno, tok in rows:
        kind = tok[0]
        if kind == "red":
            if mode == "bits":
                raise FormatError("'red' rows cannot be mixed with a 'bits' row", lineno)
            mode = "red"
            if len(tok) != 4:
                raise FormatError("expected 'red <i> <j> <k>'", lineno)
            try:
                i, j, k = map(int, tok[1:])
            except ValueError:
                raise FormatError("triple indices must be integers", lineno) from None
            if not 0 <= i < j < k < n:
                raise FormatError(f"triple ({i}, {j}, {k}) must be ascending and below n={n}", lineno)
            bits |= 1 << (i + j * (j - 1) // 2 + k * (k - 1) * (k - 2) // 6)
        elif kind == "bits":
            if mode is not None:
                raise FormatError("a file holds exactly one encoding", lineno)
            mode = "bits"
            if len(tok) != 2:
                raise FormatError("expected 'bits <hex>'", lineno)
            try:
                bits = int(tok[1], 16)
            except ValueError:
                raise FormatError(f"bad hex string {tok[1]!r}", lineno) from None
            if bits >> num_triples(n):
                raise FormatError("bit string longer than C(n,3)", lineno)
        else:
            raise FormatError(f"unknown row type {kind!r}", lineno)
    try:
        return Colouring(n, bits)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_hl3(S: Colouring, encoding: str = "red") -> str:
    out = [f"n {S.n}"]
    if encoding == "red":
        out += [f"red {i} {j} {k}" for i, j, k in S.red_triples()]
    elif encoding == "bits":
        digits = max(1, -(-S.num_triples // 4))
        out.append(f"bits {S.bits:0{digits}x}")
    else:
        raise ValueError(f"unknown encoding {encoding!r}")
    return "\n".join(out) + "\n"


def read_hl3(path) -> Colouring:
    return parse_hl3(Path(path).read_text())


def write_hl3(S: Colouring, path, encoding: str = "red") -> None:
    Path(path).write_text(format_hl3(S, encoding))


def parse_graph(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Return ``(n, [(u, v, w), ...])``; structural checks happen in treespace."""
    rows = _rows(text)
    n = _read_n(rows)
    edges = []
    for lineno, tok in rows:
        if tok[0] != "edge" or len(tok) not in (3, 4):
            raise FormatError("expected 'edge <u> <v> [w]'", lineno)
        try:
            u, v = int(tok[1]), int(tok[2])
            w = int(tok[3]) if len(tok) == 4 else 1
        except ValueError:
            raise FormatError("edge fields must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge endpoint out of range for n={n}", lineno)
        if w < 1:
            raise FormatError("edge weights must be positive integers", lineno)
        edges.append((u, v, w))
    return n, edges


def format_graph(n: int, edges) -> str:
    out = [f"n {n}"]
    for e in edges:
        u, v = e[0], e[1]
        w = e[2] if len(e) > 2 else 1
        out.append(f"edge {u} {v}" if w == 1 else f"edge {u} {v} {w}")
    return "\n".join(out) + "\n"
