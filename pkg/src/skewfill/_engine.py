"""Whole-space scans over bit-encoded binary fillings.

A binary filling of an N-cell skew shape is an N-bit integer, bit i-1
holding the value of cell c_i.  Stage membership reduces to two per-code
numbers: the largest label of a delta_2 top cell (dmax) and the smallest
label of an iota_2 or fd top cell (umin); code f lies in stage i exactly
when dmax(f) <= i < umin(f).  The step maps act on the bits of one
maximal rectangle X, so each step is applied through a lazily built
lookup table keyed on the X-bit pattern.
"""

from __future__ import annotations

import numpy as np

from .bijection import (
    IN_ROW,
    _backward_support,
    _forward_support,
    cell_labels,
    step_anatomy,
)
from .fillings import Filling, _lds, _lis, as_pattern, find_filling_occurrences, longest_chain
from .shapes import Rect, Shape


def _all_ones(s: Shape) -> Filling:
    return Filling(s, (1,) * s.size)


class ShapeContext:
    """Bit positions, stage membership arrays, and step tables for one shape."""

    def __init__(self, s: Shape):
        self.shape = s
        self.labels = cell_labels(s)
        self.n = len(self.labels)
        self.pos = {c: k for k, c in enumerate(self.labels)}
        self._dmax = None
        self._umin = None
        self._steps = None

    def _occurrences(self, token: str):
        """(support mask, 1-based top label) for every placement of a pattern."""
        host = _all_ones(self.shape)
        pat = as_pattern(token)
        out = []
        for occ in find_filling_occurrences(host, token):
            mask = 0
            for (px, py), v in pat.items():
                if v:
                    mask |= 1 << self.pos[(occ.cols[px - 1], occ.rows[py - 1])]
            top = self.pos[(occ.cols[-1], occ.rows[-1])] + 1
            out.append((mask, top))
        return out

    def _bounds(self):
        if self._dmax is not None:
            return self._dmax, self._umin
        n = self.n
        codes = np.arange(1 << n, dtype=np.int64)
        dmax = np.zeros(1 << n, dtype=np.int16)
        for mask, top in sorted(self._occurrences("delta2"), key=lambda p: p[1]):
            dmax[(codes & mask) == mask] = top
        umin = np.full(1 << n, n + 1, dtype=np.int16)
        rising = self._occurrences("iota2") + self._occurrences("fd")
        for mask, top in sorted(rising, key=lambda p: p[1], reverse=True):
            umin[(codes & mask) == mask] = top
        self._dmax, self._umin = dmax, umin
        return dmax, umin

    def stage_members(self, i: int) -> np.ndarray:
        """Codes of the fillings in stage set i, ascending."""
        dmax, umin = self._bounds()
        return np.nonzero((dmax <= i) & (umin > i))[0].astype(np.int64)

    def stage_counts(self) -> list[int]:
        dmax, umin = self._bounds()
        return [int(np.count_nonzero((dmax <= i) & (umin > i)))
                for i in range(1, self.n + 1)]

    # --- step application ---------------------------------------------------

    def _compiled_steps(self):
        if self._steps is not None:
            return self._steps
        steps = []
        for i in range(1, self.n):
            an = step_anatomy(self.shape, i)
            if an.kind != IN_ROW or an.A is None:
                continue
            xcells = [c for c in an.X.cells()]
            xmask = 0
            for c in xcells:
                xmask |= 1 << self.pos[c]
            steps.append((i, an, xcells, xmask, {}, {}))
        self._steps = steps
        return steps

    def _map_bits(self, an, xcells, bits: int, forward: bool) -> int:
        support = frozenset(c for c in xcells if bits & (1 << self.pos[c]))
        fn = _forward_support if forward else _backward_support
        out = 0
        for c in fn(an, support):
            out |= 1 << self.pos[c]
        return out

    def _apply_one(self, F: np.ndarray, step, forward: bool) -> np.ndarray:
        i, an, xcells, xmask, fwd_table, bwd_table = step
        table = fwd_table if forward else bwd_table
        xb = F & xmask
        uniq, inverse = np.unique(xb, return_inverse=True)
        images = np.empty(len(uniq), dtype=np.int64)
        for k, pattern in enumerate(uniq):
            pattern = int(pattern)
            if pattern not in table:
                table[pattern] = self._map_bits(an, xcells, pattern, forward)
            images[k] = table[pattern]
        return (F & ~xmask) | images[inverse]

    def apply_step(self, F: np.ndarray, i: int, forward: bool = True) -> np.ndarray:
        for step in self._compiled_steps():
            if step[0] == i:
                return self._apply_one(F, step, forward)
        return F

    def apply_all(self, F: np.ndarray, forward: bool = True) -> np.ndarray:
        steps = self._compiled_steps()
        if not forward:
            steps = list(reversed(steps))
        for step in steps:
            F = self._apply_one(F, step, forward)
        return F

    # --- statistics ----------------------------------------------------------

    def _line_positions(self, by_row: bool):
        lines = {}
        for c, p in self.pos.items():
            lines.setdefault(c[1] if by_row else c[0], []).append(p)
        return lines

    def _sums(self, F: np.ndarray, by_row: bool) -> np.ndarray:
        lines = self._line_positions(by_row)
        count = max(lines)
        out = np.zeros((len(F), count), dtype=np.int16)
        for line, positions in lines.items():
            col = np.zeros(len(F), dtype=np.int16)
            for p in positions:
                col += ((F >> p) & 1).astype(np.int16)
            out[:, line - 1] = col
        return out

    def rowsums(self, F: np.ndarray) -> np.ndarray:
        return self._sums(F, by_row=True)

    def colsums(self, F: np.ndarray) -> np.ndarray:
        return self._sums(F, by_row=False)


def support_chain_table(s: Shape, direction: str, region: Rect | None = None) -> np.ndarray:
    """Longest chain per support mask (bits in sorted-cell order)."""
    cells = s.sorted_cells()
    n = len(cells)
    out = np.zeros(1 << n, dtype=np.int8)
    if region is not None:
        keep = [k for k, c in enumerate(cells) if c in region]
        for mask in range(1 << n):
            chosen = [cells[k] for k in keep if mask & (1 << k)]
            out[mask] = _lis(chosen) if direction == "NE" else _lds(chosen)
        return out
    for mask in range(1 << n):
        support = frozenset(c for k, c in enumerate(cells) if mask & (1 << k))
        out[mask] = longest_chain(Filling.from_support(s, support), direction)
    return out


def value_matrix(n: int, max_entry: int) -> np.ndarray:
    """All value vectors with entries 0..max_entry, one per row,
    column k giving cell c_{k+1}'s value."""
    base = max_entry + 1
    idx = np.arange(base**n, dtype=np.int64)
    return (idx[:, None] // base ** np.arange(n)) % base


def support_index(values: np.ndarray) -> np.ndarray:
    """Support bitmask per value vector row."""
    weights = 1 << np.arange(values.shape[1], dtype=np.int64)
    return (values > 0) @ weights


def line_sums(values: np.ndarray, s: Shape, by_row: bool) -> np.ndarray:
    """Row- or column-sum matrix for a value matrix."""
    cells = s.sorted_cells()
    count = s.height if by_row else s.width
    ind = np.zeros((len(cells), count), dtype=np.int64)
    for k, (x, y) in enumerate(cells):
        ind[k, (y if by_row else x) - 1] = 1
    return values @ ind


def sum_capped_mask(rows: np.ndarray, cols: np.ndarray, cap: int) -> np.ndarray:
    """Mask of fillings whose row sums or column sums all stay within cap.

    Sum classes inside this family are complete: every entry is bounded
    by its row and column sum, so no filling of such a class escapes an
    entry cap of the same size.  The family is also closed under any
    permutation of row sums or column sums, which makes it the right
    enumeration domain for the sum-class comparisons.
    """
    return (rows <= cap).all(axis=1) | (cols <= cap).all(axis=1)


def multiset_equal(a: np.ndarray, b: np.ndarray) -> bool:
    """Whether two key matrices hold the same rows with multiplicity."""
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    ua, ca = np.unique(a, axis=0, return_counts=True)
    ub, cb = np.unique(b, axis=0, return_counts=True)
    return ua.shape == ub.shape and bool(np.all(ua == ub)) and bool(np.all(ca == cb))
