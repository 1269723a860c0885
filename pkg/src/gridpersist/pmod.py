"""The PMOD text format for persistence modules, plus output formats.

A PMOD document:

    PMOD 1
    field <p>
    grid <m> <n>
    dim <i> <j> <k>          # once per vertex, any order
    map h <i> <j>            # arrow (i,j) -> (i,j+1), then its rows
    <row of k integers> ...  # codomain-dim rows, domain-dim entries each
    map v <i> <j>            # arrow (i,j) -> (i+1,j), likewise
    ...
    END

'#' starts a comment, blank lines are ignored.  Exactly the arrows
whose domain and codomain are both nonzero-dimensional carry a map
block; all other arrows are zero maps of forced shape and must be
omitted.  Entries are residues in [0, p).  Documents describing a
non-commuting family of matrices are rejected.
"""

from __future__ import annotations

import io

from .ffmat import FFMatrix, FieldSpec
from .grid import Grid, PersistenceModule, validate
from .intervals import Interval


class PmodError(ValueError):
    """A malformed or inconsistent PMOD document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def parse_pmod(text: str) -> PersistenceModule:
    """Parse a PMOD document into a validated persistence module.

    Raises PmodError carrying the offending line number for syntax
    problems, and without one for global problems (missing vertices,
    missing or surplus map blocks, a non-commuting square).
    """
    lines = list(_logical_lines(text))
    pos = 0

    def take(expect: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise PmodError(f"unexpected end of document, expected {expect}",
                            lines[-1][0] if lines else 1)
        lineno, body = lines[pos]
        pos += 1
        return lineno, body.split()

    lineno, words = take("header 'PMOD 1'")
    if words != ["PMOD", "1"]:
        raise PmodError("expected header 'PMOD 1'", lineno)
    lineno, words = take("'field <p>'")
    if len(words) != 2 or words[0] != "field" or not words[1].isdigit():
        raise PmodError("expected 'field <p>'", lineno)
    try:
        field = FieldSpec(int(words[1]))
    except ValueError as exc:
        raise PmodError(str(exc), lineno) from exc
    lineno, words = take("'grid <m> <n>'")
    if len(words) != 3 or words[0] != "grid" or not all(w.isdigit() for w in words[1:]):
        raise PmodError("expected 'grid <m> <n>'", lineno)
    try:
        grid = Grid(int(words[1]), int(words[2]))
    except ValueError as exc:
        raise PmodError(str(exc), lineno) from exc

    dims: dict[tuple[int, int], int] = {}
    maps: dict[tuple[str, int, int], FFMatrix] = {}
    vertices = set(grid.vertices())

    while True:
        lineno, words = take("'dim', 'map' or 'END'")
        if words == ["END"]:
            break
        if words[0] == "dim":
            if len(words) != 4 or not all(w.isdigit() for w in words[1:]):
                raise PmodError("expected 'dim <i> <j> <k>'", lineno)
            i, j, k = (int(w) for w in words[1:])
            if (i, j) not in vertices:
                raise PmodError(f"vertex ({i}, {j}) outside the {grid.m} x {grid.n} grid", lineno)
            if (i, j) in dims:
                raise PmodError(f"duplicate dimension for vertex ({i}, {j})", lineno)
            dims[(i, j)] = k
        elif words[0] == "map":
            if len(words) != 4 or words[1] not in ("h", "v") or not all(w.isdigit() for w in words[2:]):
                raise PmodError("expected 'map h|v <i> <j>'", lineno)
            kind, i, j = words[1], int(words[2]), int(words[3])
            src = (i, j)
            dst = (i, j + 1) if kind == "h" else (i + 1, j)
            if src not in vertices or dst not in vertices:
                raise PmodError(f"arrow ({i}, {j}) has no {kind} successor in the grid", lineno)
            if src not in dims or dst not in dims:
                raise PmodError("map block before the dimensions of both endpoints", lineno)
            if (kind, i, j) in maps:
                raise PmodError(f"duplicate map block for {kind} ({i}, {j})", lineno)
            rows, cols = dims[dst], dims[src]
            if rows == 0 or cols == 0:
                raise PmodError("zero-dimensional arrows must be omitted", lineno)
            body = []
            for _ in range(rows):
                rowline, entries = take(f"a row of {cols} entries")
                vals = []
                for w in entries:
                    if not (w.isdigit() or (w.startswith("-") and w[1:].isdigit())):
                        raise PmodError(f"bad matrix entry {w!r}", rowline)
                    vals.append(int(w))
                if len(vals) != cols:
                    raise PmodError(f"expected {cols} entries, got {len(vals)}", rowline)
                if any(not 0 <= v < field.p for v in vals):
                    raise PmodError(f"entries must be residues in [0, {field.p})", rowline)
                body.append(vals)
            maps[(kind, i, j)] = FFMatrix(body, field.p)
        else:
            raise PmodError(f"unexpected directive {words[0]!r}", lineno)

    if pos < len(lines):
        raise PmodError("content after END", lines[pos][0])
    missing = vertices - set(dims)
    if missing:
        raise PmodError(f"missing dimension for vertex {sorted(missing)[0]}")

    hmaps = {}
    vmaps = {}
    for v in grid.harrows():
        w = (v[0], v[1] + 1)
        key = ("h", *v)
        if dims[v] and dims[w]:
            if key not in maps:
                raise PmodError(f"missing map block for h {v}")
            hmaps[v] = maps.pop(key)
    for v in grid.varrows():
        w = (v[0] + 1, v[1])
        key = ("v", *v)
        if dims[v] and dims[w]:
            if key not in maps:
                raise PmodError(f"missing map block for v {v}")
            vmaps[v] = maps.pop(key)
    if maps:
        kind, i, j = next(iter(maps))
        raise PmodError(f"map block for zero-dimensional arrow {kind} ({i}, {j})")

    module = PersistenceModule(grid, field, dims, hmaps, vmaps)
    bad = validate(module)
    if bad is not None:
        raise PmodError(f"square at ({bad[0]}, {bad[1]}) does not commute")
    return module


def print_pmod(module: PersistenceModule) -> str:
    """Canonical PMOD document: dims row-major, then h maps, then v maps.

    parse_pmod(print_pmod(M)) reproduces M exactly.
    """
    g = module.grid
    out = io.StringIO()
    out.write("PMOD 1\n")
    out.write(f"field {module.field.p}\n")
    out.write(f"grid {g.m} {g.n}\n")
    for i, j in g.vertices():
        out.write(f"dim {i} {j} {module.dims[(i, j)]}\n")

    def emit(kind: str, feet, mats) -> None:
        for v in feet:
            mat = mats[v]
            if mat.rows == 0 or mat.cols == 0:
                continue
            out.write(f"map {kind} {v[0]} {v[1]}\n")
            for row in mat.data:
                out.write(" ".join(str(int(x)) for x in row) + "\n")

    emit("h", g.harrows(), module.hmaps)
    emit("v", g.varrows(), module.vmaps)
    out.write("END\n")
    return out.getvalue()


def format_interval_function(f: dict[Interval, int]) -> str:
    """'<value> <interval>' lines in canonical order, zeros omitted."""
    lines = [f"{v} {I.to_string()}" for I, v in sorted(f.items()) if v != 0]
    return "\n".join(lines) + ("\n" if lines else "")


def format_signed_sum(coeffs: dict[Interval, int]) -> str:
    """Signed sum serialisation: 'APPROX ss' header, then coefficient lines."""
    return "APPROX ss\n" + format_interval_function(coeffs)
