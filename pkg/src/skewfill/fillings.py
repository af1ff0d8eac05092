"""Fillings of shapes and filling containment.

A filling assigns a nonnegative integer to every cell of a shape.  Values are
stored in the cell order of Shape.sorted_cells() (bottom row first, left to
right), which is also the labeling order used by the step bijection.

Containment follows the "iff" occurrence semantics of shapes: an occurrence
of a pattern filling picks ascending host columns and rows whose induced
subgrid equals the pattern's shape exactly, and additionally dominates the
pattern's values cellwise.  Occurrences of the square patterns iota_k and
delta_k are NE-chains and SE-chains of length k.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .shapes import (
    Cell,
    Occurrence,
    ParseError,
    Rect,
    Shape,
    dent_shape,
    find_shape_occurrences,
    is_skew,
    normalize,
    parse_shape,
    skew_row_intervals,
)

NE = "NE"
SE = "SE"


@dataclass(frozen=True)
class Filling:
    """Values attached to the cells of a shape, in sorted_cells order."""

    shape: Shape
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.shape.size:
            raise ValueError("value count does not match cell count")
        if any(v < 0 for v in self.values):
            raise ValueError("negative value in filling")

    @classmethod
    def from_map(cls, shape: Shape, mapping) -> "Filling":
        cells = shape.sorted_cells()
        if set(mapping) != set(cells):
            raise ValueError("value map domain must equal the cell set")
        return cls(shape, tuple(mapping[c] for c in cells))

    @classmethod
    def from_support(cls, shape: Shape, ones) -> "Filling":
        """Binary filling with 1-cells exactly at `ones`."""
        ones = frozenset(ones)
        if not ones <= shape.cells:
            raise ValueError("1-cells outside the shape")
        return cls(shape, tuple(1 if c in ones else 0 for c in shape.sorted_cells()))

    def value(self, cell: Cell) -> int:
        vmap = self.__dict__.get("_vmap")
        if vmap is None:
            vmap = dict(zip(self.shape.sorted_cells(), self.values))
            object.__setattr__(self, "_vmap", vmap)
        try:
            return vmap[cell]
        except KeyError:
            raise KeyError(f"{cell} is not a cell of the shape") from None

    def items(self):
        return zip(self.shape.sorted_cells(), self.values)

    def support(self) -> frozenset[Cell]:
        return frozenset(c for c, v in self.items() if v > 0)

    def is_binary(self) -> bool:
        return all(v <= 1 for v in self.values)

    def total(self) -> int:
        return sum(self.values)

    def __lt__(self, other: "Filling") -> bool:
        return (self.shape.sorted_cells(), self.values) < (
            other.shape.sorted_cells(),
            other.values,
        )


@dataclass(frozen=True)
class FillingKind:
    binary: bool
    sparse: bool
    transversal: bool


@dataclass(frozen=True)
class SumVector:
    """Per-row and per-column sums, bottom row and leftmost column first."""

    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]


def filling_kind(f: Filling) -> FillingKind:
    binary = f.is_binary()
    row_ones = [0] * (f.shape.height + 1)
    col_ones = [0] * (f.shape.width + 1)
    for (x, y), v in f.items():
        if v >= 1:
            row_ones[y] += 1
            col_ones[x] += 1
    counts = row_ones[1:] + col_ones[1:]
    sparse = binary and all(n <= 1 for n in counts)
    transversal = sparse and all(n == 1 for n in counts)
    return FillingKind(binary=binary, sparse=sparse, transversal=transversal)


def sum_vector(f: Filling) -> SumVector:
    rows = [0] * f.shape.height
    cols = [0] * f.shape.width
    for (x, y), v in f.items():
        rows[y - 1] += v
        cols[x - 1] += v
    return SumVector(row_sums=tuple(rows), col_sums=tuple(cols))


def parse_filling(text: str) -> Filling:
    """Parse a grid of digits 0-9 and '.' holes, top row first."""
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty filling text")
    widths = {len(line) for line in lines}
    if len(widths) != 1 or 0 in widths:
        raise ParseError("ragged or empty grid lines")
    vals: dict[Cell, int] = {}
    h = len(lines)
    for k, line in enumerate(lines):
        row = h - k
        for x0, ch in enumerate(line):
            if ch == ".":
                continue
            if not ch.isdigit():
                raise ParseError(f"bad character {ch!r} in filling text")
            vals[(x0 + 1, row)] = int(ch)
    if not vals:
        raise ParseError("filling text contains no cells")
    dx = min(x for x, _ in vals) - 1
    dy = min(y for _, y in vals) - 1
    shifted = {(x - dx, y - dy): v for (x, y), v in vals.items()}
    return Filling.from_map(Shape(frozenset(shifted)), shifted)


def render_filling(f: Filling) -> str:
    """Inverse of parse_filling; requires all values <= 9."""
    if any(v > 9 for v in f.values):
        raise ValueError("values above 9 need the numeric format")
    vals = dict(f.items())
    s = f.shape
    lines = []
    for row in range(s.height, 0, -1):
        lines.append(
            "".join(
                str(vals[(x, row)]) if (x, row) in s.cells else "."
                for x in range(1, s.width + 1)
            )
        )
    return "\n".join(lines)


def parse_numeric_filling(text: str) -> Filling:
    """Extended format: rows of comma-separated integers, 'x' for holes."""
    lines = [line for line in text.splitlines() if line.strip() != ""]
    if not lines:
        raise ParseError("empty filling text")
    grid = [[tok.strip() for tok in line.split(",")] for line in lines]
    widths = {len(row) for row in grid}
    if len(widths) != 1:
        raise ParseError("ragged numeric grid")
    vals: dict[Cell, int] = {}
    h = len(grid)
    for k, row_toks in enumerate(grid):
        row = h - k
        for x0, tok in enumerate(row_toks):
            if tok == "x":
                continue
            if not re.fullmatch(r"\d+", tok):
                raise ParseError(f"bad token {tok!r} in numeric filling")
            vals[(x0 + 1, row)] = int(tok)
    if not vals:
        raise ParseError("numeric filling contains no cells")
    dx = min(x for x, _ in vals) - 1
    dy = min(y for _, y in vals) - 1
    shifted = {(x - dx, y - dy): v for (x, y), v in vals.items()}
    return Filling.from_map(Shape(frozenset(shifted)), shifted)


def render_numeric_filling(f: Filling) -> str:
    vals = dict(f.items())
    s = f.shape
    lines = []
    for row in range(s.height, 0, -1):
        lines.append(
            ",".join(
                str(vals[(x, row)]) if (x, row) in s.cells else "x"
                for x in range(1, s.width + 1)
            )
        )
    return "\n".join(lines)


# --- pattern library ------------------------------------------------------

_TOKEN_RE = re.compile(r"(iota|delta)\s*(\d+)|fd|ds")


@lru_cache(maxsize=64)
def pattern_library(name: str) -> Filling:
    """Canonical patterns: iota<k>, delta<k>, fd, and the all-zero ds."""
    m = _TOKEN_RE.fullmatch(name.strip())
    if m is None:
        raise ValueError(f"unknown pattern token {name!r}")
    if m.group(1) is not None:
        k = int(m.group(2))
        if k < 1:
            raise ValueError("pattern size k must be at least 1")
        square = Shape(frozenset((x, y) for x in range(1, k + 1) for y in range(1, k + 1)))
        if m.group(1) == "iota":
            ones = {(i, i) for i in range(1, k + 1)}
        else:
            ones = {(i, k + 1 - i) for i in range(1, k + 1)}
        return Filling.from_support(square, ones)
    if name.strip() == "fd":
        return Filling.from_support(dent_shape(), {(1, 1), (2, 3), (3, 2)})
    return Filling.from_support(dent_shape(), set())  # ds, shape-level


def as_pattern(pattern) -> Filling:
    """Accept either a pattern token or an explicit Filling."""
    if isinstance(pattern, Filling):
        return pattern
    if isinstance(pattern, str):
        return pattern_library(pattern)
    raise TypeError(f"not a pattern: {pattern!r}")


def find_filling_occurrences(host: Filling, pattern) -> list[Occurrence]:
    """Shape occurrences of the pattern whose values the host dominates."""
    pat = as_pattern(pattern)
    pat_cells = list(pat.items())
    host_vals = dict(host.items())
    hits = []
    for occ in find_shape_occurrences(host.shape, pat.shape):
        ok = True
        for (px, py), pv in pat_cells:
            if pv > host_vals[(occ.cols[px - 1], occ.rows[py - 1])]:
                ok = False
                break
        if ok:
            hits.append(occ)
    return hits


def avoids(host: Filling, patterns) -> bool:
    """True iff the host contains no occurrence of any given pattern."""
    if isinstance(patterns, (str, Filling)):
        patterns = [patterns]
    return all(not find_filling_occurrences(host, p) for p in patterns)


# --- chains ---------------------------------------------------------------


def skew_rectangles(s: Shape) -> list[Rect]:
    """Inclusion-maximal rectangles of a skew shape, via row intervals."""
    ivs = skew_row_intervals(s)
    cands = []
    for y1 in range(1, s.height + 1):
        if ivs[y1 - 1] is None:
            continue
        for y2 in range(y1, s.height + 1):
            if ivs[y2 - 1] is None:
                break  # an empty row ends every rectangle through it
            lo = ivs[y2 - 1][0]
            hi = ivs[y1 - 1][1]
            if lo <= hi:
                cands.append(Rect(lo, hi, y1, y2))
    maximal = [
        r
        for r in cands
        if not any(
            q != r
            and q.col_lo <= r.col_lo <= r.col_hi <= q.col_hi
            and q.row_lo <= r.row_lo <= r.row_hi <= q.row_hi
            for q in cands
        )
    ]
    maximal.sort(key=lambda r: (r.width, r.col_lo, r.row_lo))
    return maximal


def _lis(cells: list[Cell]) -> int:
    """Longest sequence strictly increasing in both coordinates."""
    cells = sorted(cells)
    best = [0] * len(cells)
    for i, (x, y) in enumerate(cells):
        best[i] = 1 + max(
            (best[j] for j in range(i) if cells[j][0] < x and cells[j][1] < y),
            default=0,
        )
    return max(best, default=0)


def _lds(cells: list[Cell]) -> int:
    """Longest sequence with columns increasing and rows decreasing."""
    return _lis([(x, -y) for x, y in cells])


def longest_chain(f: Filling, direction: str, region: Rect | None = None) -> int:
    """Length of the longest NE- or SE-chain, optionally inside a rectangle.

    A chain of length k is an occurrence of iota_k (NE) or delta_k (SE):
    its k nonzero cells are strictly monotone in both coordinates and the
    full k x k selection grid lies inside the shape.  Inside a rectangle
    contained in the shape the grid condition is automatic.
    """
    if direction not in (NE, SE):
        raise ValueError(f"direction must be NE or SE, got {direction!r}")
    nonzero = [c for c, v in f.items() if v > 0]
    if region is not None:
        if not all(c in f.shape.cells for c in region.cells()):
            raise ValueError("region is not contained in the shape")
        inside = [c for c in nonzero if c in region]
        return _lis(inside) if direction == NE else _lds(inside)
    if is_skew(f.shape):
        if direction == SE:
            # any decreasing pair spans a rectangle inside a skew shape
            return _lds(nonzero)
        rects = skew_rectangles(f.shape)
        return max(
            (_lis([c for c in nonzero if c in r]) for r in rects),
            default=0,
        )
    return _longest_chain_generic(f, direction)


def _longest_chain_generic(f: Filling, direction: str) -> int:
    bound = min(f.shape.width, f.shape.height, len(f.support()))
    token = "iota" if direction == NE else "delta"
    k = 0
    while k < bound and find_filling_occurrences(f, f"{token}{k + 1}"):
        k += 1
    return k


def mirror_filling_lr(f: Filling) -> Filling:
    """Left-right mirror; swaps NE-chains with SE-chains."""
    w = f.shape.width
    flipped = {(w + 1 - x, y): v for (x, y), v in f.items()}
    cells = frozenset(flipped)
    return Filling.from_map(Shape(cells), flipped)


def rotate_filling_180(f: Filling) -> Filling:
    w, h = f.shape.width, f.shape.height
    rot = {(w + 1 - x, h + 1 - y): v for (x, y), v in f.items()}
    return Filling.from_map(Shape(frozenset(rot)), rot)
