"""0-1 matrices, permutation matrices, dihedral transforms and pattern containment.

Coordinates exposed by this module are 1-based ``(row, col)`` with row 1 at
the top and column 1 at the left.  Internally a matrix is a tuple of row
bitmasks where bit ``j`` holds column ``j + 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, int]


def _bits(x: int) -> Iterator[int]:
    """Yield the 0-based indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Matrix01:
    """Immutable dense 0-1 matrix stored as row bitmasks."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.bits) != self.rows:
            raise ValueError("one bitmask per row is required")
        full = (1 << self.cols) - 1
        for b in self.bits:
            if b < 0 or b & ~full:
                raise ValueError("row bitmask has bits outside the column range")

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix01:
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def full(cls, rows: int, cols: int | None = None) -> Matrix01:
        cols = rows if cols is None else cols
        return cls(rows, cols, ((1 << cols) - 1,) * rows)

    @classmethod
    def identity(cls, k: int) -> Matrix01:
        return cls(k, k, tuple(1 << i for i in range(k)))

    @classmethod
    def from_rows(cls, grid: Sequence[Sequence[int]]) -> Matrix01:
        """Build from a nested sequence of 0/1 values (any array-like works)."""
        grid = [list(r) for r in grid]
        if not grid or not grid[0]:
            raise ValueError("empty matrix")
        cols = len(grid[0])
        bits = []
        for r in grid:
            if len(r) != cols:
                raise ValueError("ragged rows")
            mask = 0
            for j, v in enumerate(r):
                if v not in (0, 1):
                    raise ValueError(f"cell value {v!r} is not 0 or 1")
                if v:
                    mask |= 1 << j
            bits.append(mask)
        return cls(len(grid), cols, tuple(bits))

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells: Iterable[Cell]) -> Matrix01:
        bits = [0] * rows
        for i, j in cells:
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise ValueError(f"cell {(i, j)} outside {rows}x{cols}")
            bits[i - 1] |= 1 << (j - 1)
        return cls(rows, cols, tuple(bits))

    @classmethod
    def from_text(cls, text: str) -> Matrix01:
        """Parse the line-per-row text format; a blank line ends the matrix."""
        grid = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                if grid:
                    break
                continue
            line = line.replace(" ", "")
            if set(line) - {"0", "1"}:
                raise ValueError(f"bad matrix row {line!r}")
            grid.append([int(ch) for ch in line])
        return cls.from_rows(grid)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, cell: Cell) -> int:
        i, j = cell
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"cell {cell} outside {self.rows}x{self.cols}")
        return (self.bits[i - 1] >> (j - 1)) & 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def ones_count(self) -> int:
        return sum(b.bit_count() for b in self.bits)

    def ones(self) -> list[Cell]:
        return [(i + 1, j + 1) for i, b in enumerate(self.bits) for j in _bits(b)]

    def zeros_cells(self) -> list[Cell]:
        full = (1 << self.cols) - 1
        return [(i + 1, j + 1) for i, b in enumerate(self.bits) for j in _bits(full & ~b)]

    def with_cell(self, cell: Cell, value: int = 1) -> Matrix01:
        i, j = cell
        self[cell]  # bounds check
        bits = list(self.bits)
        if value:
            bits[i - 1] |= 1 << (j - 1)
        else:
            bits[i - 1] &= ~(1 << (j - 1))
        return Matrix01(self.rows, self.cols, tuple(bits))

    def to_rows(self) -> list[list[int]]:
        return [[(b >> j) & 1 for j in range(self.cols)] for b in self.bits]

    def to_text(self) -> str:
        return "\n".join("".join(str((b >> j) & 1) for j in range(self.cols)) for b in self.bits)

    def __str__(self) -> str:
        return self.to_text()

    def dominates(self, other: Matrix01) -> bool:
        """True if every 1 of ``other`` is also a 1 of ``self``."""
        return self.shape == other.shape and all(
            b & o == o for b, o in zip(self.bits, other.bits)
        )


@dataclass(frozen=True)
class PermutationMatrix:
    """A k x k permutation matrix; ``sigma[i-1]`` is the column of the one in row i."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of 1..{len(self.sigma)}")

    @property
    def k(self) -> int:
        return len(self.sigma)

    @classmethod
    def parse(cls, text: str) -> PermutationMatrix:
        """Parse the one-line form, e.g. ``"4 1 3 5 2"``."""
        try:
            values = [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError:
            raise ValueError(f"bad permutation {text!r}") from None
        if not values:
            raise ValueError("empty permutation")
        return cls(tuple(values))

    @classmethod
    def identity(cls, k: int) -> PermutationMatrix:
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_matrix(cls, m: Matrix01) -> PermutationMatrix:
        if m.rows != m.cols:
            raise ValueError("permutation matrices are square")
        sigma = []
        for b in m.bits:
            if b.bit_count() != 1:
                raise ValueError("every row of a permutation matrix has exactly one 1")
            sigma.append(b.bit_length())
        return cls(tuple(sigma))

    def to_matrix(self) -> Matrix01:
        return Matrix01(self.k, self.k, tuple(1 << (s - 1) for s in self.sigma))

    def inverse(self) -> tuple[int, ...]:
        """Row of the one in each column, as a 1-based tuple."""
        inv = [0] * self.k
        for i, s in enumerate(self.sigma, 1):
            inv[s - 1] = i
        return tuple(inv)

    def __str__(self) -> str:
        return " ".join(map(str, self.sigma))


# -- dihedral transforms ------------------------------------------------------


class Transform(enum.Enum):
    """The eight symmetries of the square.

    Each member is encoded as ``(transpose, reverse_rows, reverse_cols)``,
    applied in that order.
    """

    IDENTITY = (False, False, False)
    ROT90 = (True, False, True)  # clockwise
    ROT180 = (False, True, True)
    ROT270 = (True, True, False)
    FLIP_HORIZONTAL = (False, False, True)  # reverse column order
    FLIP_VERTICAL = (False, True, False)  # reverse row order
    TRANSPOSE = (True, False, False)
    ANTI_TRANSPOSE = (True, True, True)

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")

    @classmethod
    def from_label(cls, label: str) -> Transform:
        return cls[label.upper().replace("-", "_")]

    def map_cell(self, cell: Cell, rows: int, cols: int) -> Cell:
        """Image of 1-based ``cell`` of a rows x cols matrix."""
        swap, rev_r, rev_c = self.value
        i, j = cell
        if swap:
            i, j, rows, cols = j, i, cols, rows
        if rev_r:
            i = rows + 1 - i
        if rev_c:
            j = cols + 1 - j
        return i, j

    def out_shape(self, rows: int, cols: int) -> tuple[int, int]:
        return (cols, rows) if self.value[0] else (rows, cols)

    def then(self, other: Transform) -> Transform:
        """The transform that applies ``self`` first and ``other`` second."""
        return _COMPOSE[self, other]

    def inverse(self) -> Transform:
        return next(t for t in Transform if self.then(t) is Transform.IDENTITY)


def _compose_table() -> dict[tuple[Transform, Transform], Transform]:
    # Identify compositions by their action on an asymmetric probe.
    rows, cols = 2, 3
    cells = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]

    def act(ts):
        r, c = rows, cols
        out = list(cells)
        for t in ts:
            out = [t.map_cell(x, r, c) for x in out]
            r, c = t.out_shape(r, c)
        return (r, c), tuple(out)

    signature = {act([t]): t for t in Transform}
    return {(a, b): signature[act([a, b])] for a in Transform for b in Transform}


_COMPOSE = _compose_table()


def apply_transform(t: Transform, m: Matrix01 | PermutationMatrix):
    """Apply a dihedral transform to a matrix; permutations stay permutations."""
    if isinstance(m, PermutationMatrix):
        k = m.k
        sigma = [0] * k
        for i, s in enumerate(m.sigma, 1):
            a, b = t.map_cell((i, s), k, k)
            sigma[a - 1] = b
        return PermutationMatrix(tuple(sigma))
    r, c = t.out_shape(m.rows, m.cols)
    return Matrix01.from_cells(r, c, (t.map_cell(x, m.rows, m.cols) for x in m.ones()))


def orbit(p: PermutationMatrix) -> set[PermutationMatrix]:
    return {apply_transform(t, p) for t in Transform}


# -- containment ----------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Host rows and columns (1-based, strictly increasing) receiving the pattern."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def validate(self, host: Matrix01, pattern: Matrix01) -> bool:
        if len(self.rows) != pattern.rows or len(self.cols) != pattern.cols:
            return False
        for seq, limit in ((self.rows, host.rows), (self.cols, host.cols)):
            if any(a >= b for a, b in zip(seq, seq[1:])) or seq[0] < 1 or seq[-1] > limit:
                return False
        return all(host[self.rows[i - 1], self.cols[j - 1]] for i, j in pattern.ones())

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


class _Search:
    """Constraint search for an embedding of a pattern into a host.

    Pattern ones are placed one at a time, always picking the one with the
    fewest host candidates.  A row (column) of the pattern that already has
    an image is fixed; otherwise its image must sit strictly between the
    images of its nearest placed neighbours, leaving room for the lines in
    between.  ``anchor`` pins one pattern one onto one host cell, which is
    how copies through a freshly flipped cell are found.

    With ``costly`` row masks and a ``budget``, at most ``budget`` of the
    chosen host cells may come from ``costly``.
    """

    def __init__(self, host_bits: Sequence[int], host_cols: int, pattern: Matrix01):
        self.h = host_bits
        self.M = len(host_bits)
        self.N = host_cols
        self.a = pattern.rows
        self.b = pattern.cols
        self.ones = [(i - 1, j - 1) for i, j in pattern.ones()]

    def run(
        self,
        anchor: tuple[Cell, Cell] | None = None,
        costly: Sequence[int] | None = None,
        budget: int = 0,
    ) -> Embedding | None:
        self.costly = costly
        if self.a > self.M or self.b > self.N:
            return None
        rowmap: list[int | None] = [None] * self.a
        colmap: list[int | None] = [None] * self.b
        todo = list(self.ones)
        if anchor is not None:
            (pi, pj), (hi, hj) = anchor
            pi, pj, hi, hj = pi - 1, pj - 1, hi - 1, hj - 1
            if not (pi <= hi and self.a - pi <= self.M - hi and pj <= hj and self.b - pj <= self.N - hj):
                return None
            if not (self.h[hi] >> hj) & 1:
                return None
            rowmap[pi], colmap[pj] = hi, hj
            todo.remove((pi, pj))
        if self._solve(todo, rowmap, colmap, budget if costly is not None else -1):
            return Embedding(_fill(rowmap), _fill(colmap))
        return None

    @staticmethod
    def _interval(m: list, idx: int, limit: int) -> tuple[int, int]:
        v = m[idx]
        if v is not None:
            return v, v
        size = len(m)
        lo, hi = idx, limit - size + idx
        for t in range(idx - 1, -1, -1):
            if m[t] is not None:
                lo = max(lo, m[t] + idx - t)
                break
        for t in range(idx + 1, size):
            if m[t] is not None:
                hi = min(hi, m[t] - (t - idx))
                break
        return lo, hi

    def _solve(self, todo: list, rowmap: list, colmap: list, spare: int) -> bool:
        # spare < 0: no cost accounting; otherwise costly cells still affordable.
        if not todo:
            return True
        h = self.h
        if spare == 0:
            costly = self.costly
            h = [x & ~y for x, y in zip(h, costly)]
        best = None
        best_count = None
        for pos, (i, j) in enumerate(todo):
            rlo, rhi = self._interval(rowmap, i, self.M)
            clo, chi = self._interval(colmap, j, self.N)
            if rlo > rhi or clo > chi:
                return False
            mask = ((1 << (chi - clo + 1)) - 1) << clo
            count = 0
            for r in range(rlo, rhi + 1):
                count += (h[r] & mask).bit_count()
            if count == 0:
                return False
            if best_count is None or count < best_count:
                best, best_count = (pos, rlo, rhi, mask), count
        pos, rlo, rhi, mask = best
        i, j = todo[pos]
        rest = todo[:pos] + todo[pos + 1 :]
        row_free, col_free = rowmap[i] is None, colmap[j] is None
        for r in range(rlo, rhi + 1):
            cand = h[r] & mask
            if not cand:
                continue
            rowmap[i] = r
            for c in _bits(cand):
                colmap[j] = c
                nxt = spare - ((self.costly[r] >> c) & 1) if spare > 0 else spare
                if self._solve(rest, rowmap, colmap, nxt):
                    return True
        if row_free:
            rowmap[i] = None
        if col_free:
            colmap[j] = None
        return False


def _fill(m: list) -> tuple[int, ...]:
    """1-based images, giving pattern lines without ones the first free slot."""
    out, prev = [], -1
    for v in m:
        prev = prev + 1 if v is None else v
        out.append(prev + 1)
    return tuple(out)


def find_embedding(host: Matrix01, pattern: Matrix01) -> Embedding | None:
    return _Search(host.bits, host.cols, pattern).run()


def contains(host: Matrix01, pattern: Matrix01) -> bool:
    return find_embedding(host, pattern) is not None


def find_embedding_through(host: Matrix01, pattern: Matrix01, cell: Cell) -> Embedding | None:
    """An embedding of ``pattern`` that maps some pattern one onto host ``cell``.

    The host cell is treated as a one whatever its stored value.
    """
    i, j = cell
    bits = list(host.bits)
    bits[i - 1] |= 1 << (j - 1)
    search = _Search(bits, host.cols, pattern)
    for pcell in pattern.ones():
        emb = search.run(anchor=(pcell, cell))
        if emb is not None:
            return emb
    return None


def flip_creates(host: Matrix01, pattern: Matrix01, cell: Cell) -> bool:
    """True if setting the 0-cell ``cell`` of ``host`` to 1 yields a copy of ``pattern``."""
    if host[cell]:
        raise ValueError(f"cell {cell} is already 1")
    if find_embedding_through(host, pattern, cell) is not None:
        return True
    # A copy that avoids the new cell was already present.
    return contains(host, pattern)
