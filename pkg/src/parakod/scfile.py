"""Plain-text structure constants::

    # comment
    dim 3
    mu 1 2 3 -2
    mu 2 1 3 2/1

One definition per file, ``1 <= j < k <= dim``; omitted triples are zero.
"""
from __future__ import annotations

from pathlib import Path

from .gaussian import format_rational, parse_rational
from .lie import StructureConstants


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def loads(text: str) -> StructureConstants:
    dim = None
    table = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if dim is None:
            if parts[0] != "dim" or len(parts) != 2:
                raise ParseError("first definition must be 'dim <n>'", lineno)
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(f"bad dimension {parts[1]!r}", lineno) from None
            if dim < 1:
                raise ParseError("dimension must be positive", lineno)
            continue
        if parts[0] == "dim":
            raise ParseError("duplicate 'dim' line", lineno)
        if parts[0] != "mu" or len(parts) != 5:
            raise ParseError(f"expected 'mu <i> <j> <k> <p>/<q>', got {line!r}", lineno)
        try:
            i, j, k = (int(p) for p in parts[1:4])
        except ValueError:
            raise ParseError(f"bad index in {line!r}", lineno) from None
        for idx in (i, j, k):
            if not 1 <= idx <= dim:
                raise ParseError(f"index {idx} out of range 1..{dim}", lineno)
        if j >= k:
            raise ParseError(f"need j < k, got j={j}, k={k}", lineno)
        if (i, j, k) in table:
            raise ParseError(f"duplicate triple ({i}, {j}, {k})", lineno)
        try:
            table[(i, j, k)] = parse_rational(parts[4])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if dim is None:
        raise ParseError("missing 'dim' line")
    return StructureConstants(dim, table)


def load(path) -> StructureConstants:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(sc: StructureConstants, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"dim {sc.dim}")
    for (i, j, k), v in sc.table.items():
        lines.append(f"mu {i} {j} {k} {format_rational(v)}")
    return "\n".join(lines) + "\n"
