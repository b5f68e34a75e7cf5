"""The four-section witness matrix T_P, greedy completion and saturation certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import (
    Cell,
    Embedding,
    Matrix01,
    PermutationMatrix,
    contains,
    find_embedding,
    find_embedding_through,
)

SECTIONS = ("N", "S", "E", "W")


@dataclass(frozen=True)
class SectionLayout:
    """Placement of the four sections of T_P.

    ``sections[name]`` lists ``(pattern_cell, target_cell)`` pairs for the
    k - 1 ones kept in that section; ``deleted[name]`` is where the removed
    one would have landed (always on the middle row or column).
    """

    k: int
    sections: dict[str, tuple[tuple[Cell, Cell], ...]]
    deleted: dict[str, Cell]

    @property
    def n(self) -> int:
        return 6 * self.k + 1

    @property
    def middle(self) -> int:
        return 3 * self.k + 1

    def targets(self) -> list[Cell]:
        return [t for name in SECTIONS for _, t in self.sections[name]]


def _near_middle(index: int, pivot: int, m: int, left_edge: int, right_edge: int) -> int:
    """Where a line of P lands in the S/E copy.

    ``pivot`` is the line holding the deleted one; it and its neighbours go
    on and beside the middle line, everything further out continues the
    block of lines used by the N/W copy (``left_edge`` is that block's first
    line, ``right_edge`` its last).
    """
    if abs(index - pivot) <= 1:
        return m + (index - pivot)
    if index < pivot:
        return left_edge - (pivot - 1 - index)
    return right_edge + (index - pivot - 1)


def section_layout(p: PermutationMatrix) -> SectionLayout:
    k = p.k
    if k < 2:
        raise ValueError("T_P needs k >= 2")
    sigma, inv = p.sigma, p.inverse()
    n, m = 6 * k + 1, 3 * k + 1
    c_bottom, c_top = sigma[k - 1], sigma[0]
    r_right, r_left = inv[k - 1], inv[0]
    ones = [(i, sigma[i - 1]) for i in range(1, k + 1)]

    # N occupies columns m-c+1 .. m-c+k; W occupies rows m-r+1 .. m-r+k.
    n_lo, n_hi = m - c_bottom + 1, m - c_bottom + k
    w_lo, w_hi = m - r_right + 1, m - r_right + k

    place = {
        "N": lambda i, j: (i, m - c_bottom + j),
        "W": lambda i, j: (m - r_right + i, j),
        "S": lambda i, j: (n - k + i, _near_middle(j, c_top, m, n_lo, n_hi)),
        "E": lambda i, j: (_near_middle(i, r_left, m, w_lo, w_hi), n - k + j),
    }
    removed = {"N": (k, c_bottom), "S": (1, c_top), "E": (r_left, 1), "W": (r_right, k)}

    sections, deleted = {}, {}
    for name in SECTIONS:
        f = place[name]
        sections[name] = tuple((cell, f(*cell)) for cell in ones if cell != removed[name])
        deleted[name] = f(*removed[name])
    return SectionLayout(k, sections, deleted)


def build_tp(p: PermutationMatrix) -> Matrix01:
    layout = section_layout(p)
    return Matrix01.from_cells(layout.n, layout.n, layout.targets())


def greedy_saturate(a: Matrix01, pattern: Matrix01, order: Iterable[Cell] | None = None) -> Matrix01:
    """Turn zeroes into ones while the pattern stays avoided.

    Cells are visited in ``order`` (row-major by default).  One pass
    suffices: a zero that cannot be flipped now can never be flipped later,
    since adding ones only adds copies.
    """
    if contains(a, pattern):
        raise ValueError("input already contains the pattern")
    current = a
    for cell in a.zeros_cells() if order is None else order:
        if current[cell]:
            continue
        if find_embedding_through(current, pattern, cell) is None:
            current = current.with_cell(cell)
    return current


def middle_lines(a: Matrix01) -> list[Cell]:
    """Cells of the middle row and middle column of an odd-sized matrix."""
    mr, mc = (a.rows + 1) // 2, (a.cols + 1) // 2
    cells = [(mr, j) for j in range(1, a.cols + 1)]
    cells += [(i, mc) for i in range(1, a.rows + 1) if i != mr]
    return cells


def pad_middle(a: Matrix01, j: int) -> Matrix01:
    """Insert ``j`` zero rows at the middle row and ``j`` zero columns at the middle column."""
    if a.rows % 2 == 0 or a.cols % 2 == 0:
        raise ValueError(f"needs odd dimensions to have a middle line, got {a.rows}x{a.cols}")
    if j < 0:
        raise ValueError("padding must be non-negative")
    mr, mc = (a.rows + 1) // 2, (a.cols + 1) // 2
    low = (1 << mc) - 1  # columns 1..mc stay put
    bits = [(b & low) | ((b & ~low) << j) for b in a.bits]
    bits[mr:mr] = [0] * j
    return Matrix01(a.rows + j, a.cols + j, tuple(bits))


@dataclass
class SaturationCertificate:
    matrix: Matrix01
    pattern: Matrix01
    flips: dict[Cell, Embedding] = field(default_factory=dict)

    def check(self) -> bool:
        """Re-validate every stored embedding against the flipped matrix."""
        if contains(self.matrix, self.pattern):
            return False
        if set(self.flips) != set(self.matrix.zeros_cells()):
            return False
        return all(
            emb.validate(self.matrix.with_cell(cell), self.pattern) for cell, emb in self.flips.items()
        )

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.to_text(),
            "pattern": self.pattern.to_text(),
            "flips": [
                {"cell": list(cell), "rows": list(e.rows), "cols": list(e.cols)}
                for cell, e in sorted(self.flips.items())
            ],
        }


@dataclass
class SaturationFailure:
    reason: str  # "not avoiding" or "not maximal"
    cell: Cell | None = None
    embedding: Embedding | None = None

    def to_dict(self) -> dict:
        d = {"reason": self.reason}
        if self.cell is not None:
            d["cell"] = list(self.cell)
        if self.embedding is not None:
            d.update(self.embedding.to_dict())
        return d


def verify_saturating(a: Matrix01, pattern: Matrix01) -> SaturationCertificate | SaturationFailure:
    emb = find_embedding(a, pattern)
    if emb is not None:
        return SaturationFailure("not avoiding", embedding=emb)
    cert = SaturationCertificate(a, pattern)
    for cell in a.zeros_cells():
        # a avoids the pattern, so any new copy runs through the flipped cell.
        e = find_embedding_through(a, pattern, cell)
        if e is None:
            return SaturationFailure("not maximal", cell=cell)
        cert.flips[cell] = e
    return cert


def is_saturating(a: Matrix01, pattern: Matrix01) -> bool:
    return isinstance(verify_saturating(a, pattern), SaturationCertificate)
