"""Exhaustive ground truth for ex(n, P) and sat(n, P), and the d-dimensional lift.

Everything here is brute force with pruning, meant for tiny n.  The 2-d
search decides cells in row-major order and carries two kinds of pruning:

* a one is only placed if it does not complete a copy of the pattern;
* a zero that is not yet blocked (flipping it would not create a copy) is
  kept on a pending list.  At the end of every row each pending zero must
  still be blockable in the optimistic completion where every undecided
  cell is a one, otherwise the branch cannot end in a maximal matrix.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import Matrix01, _Search
from .construct import greedy_saturate

MAX_CELLS = 25  # n x n budget for exhaustive 2-d search
MAX_TENSOR_CELLS = 16  # n**d budget for exhaustive tensor search
MAX_LIFT_CELLS = 256  # n**d budget for checking a lifted witness


class BudgetExceeded(ValueError):
    pass


def _check_budget(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n * n > MAX_CELLS:
        raise BudgetExceeded(f"exhaustive search is limited to n*n <= {MAX_CELLS} cells (n <= 5), got n={n}")


@dataclass
class SatResult:
    n: int
    pattern: Matrix01
    value: int
    witness: Matrix01
    exhaustive: bool = True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern.to_text(),
            "value": self.value,
            "exhaustive": self.exhaustive,
            "witness": self.witness.to_text(),
        }


class _CellSearch:
    """Row-major depth-first search over n x n matrices that avoid ``pattern``.

    Pending zeros carry the host cells of the last copy found through them,
    so most nodes only re-validate that copy instead of searching again.
    """

    def __init__(self, n: int, pattern: Matrix01, maximal: bool, ones_first: bool):
        if pattern.ones_count() == 0 and pattern.rows <= n and pattern.cols <= n:
            raise ValueError("every n x n matrix contains a pattern without ones")
        self.n = n
        self.pattern = pattern
        self.maximal = maximal
        self.order = (1, 0) if ones_first else (0, 1)
        self.full = (1 << n) - 1
        self.rows = [0] * n
        self.search = _Search(self.rows, n, pattern)
        self.anchors = pattern.ones()
        self.ceiling: int | None = None  # only matrices with <= ceiling ones
        self.floor: int | None = None  # only matrices with > floor ones

    def _copy_through(self, bits, cell, costly=None, budget=0) -> tuple | None:
        """Host cells (0-based, excluding ``cell``) of a copy through ``cell``."""
        i, j = cell
        bits = list(bits)
        bits[i - 1] |= 1 << (j - 1)
        self.search.h = bits
        for p in self.anchors:
            emb = self.search.run((p, cell), costly, budget)
            if emb is not None:
                used = ((emb.rows[a - 1] - 1, emb.cols[b - 1] - 1) for a, b in self.anchors)
                return tuple(x for x in used if x != (i - 1, j - 1))
        return None

    def run(self) -> Iterator[Matrix01]:
        yield from self._walk(0, 0, [])

    def _walk(self, idx: int, ones: int, pending: list) -> Iterator[Matrix01]:
        n = self.n
        if self.ceiling is not None and ones > self.ceiling:
            return
        if self.floor is not None and ones + (n * n - idx) <= self.floor:
            return
        if self.maximal and pending:
            pending = self._prune(idx, ones, pending)
            if pending is None:
                return
        if idx == n * n:
            yield Matrix01(n, n, tuple(self.rows))
            return
        if self.ceiling is not None and ones == self.ceiling and self.maximal:
            # No ones left to spend: the rest is zeros, so the leaf is forced.
            rest = [(t // n + 1, t % n + 1) for t in range(idx, n * n)]
            if all(self._copy_through(self.rows, cell) is not None for cell in rest):
                yield Matrix01(n, n, tuple(self.rows))
            return
        r, c = divmod(idx, n)
        cell = (r + 1, c + 1)
        for v in self.order:
            if v:
                self.rows[r] |= 1 << c
                if self._copy_through(self.rows, cell) is None:
                    yield from self._walk(idx + 1, ones + 1, pending)
                self.rows[r] &= ~(1 << c)
            else:
                yield from self._walk(idx + 1, ones, pending + [(cell, None)])

    def _prune(self, idx: int, ones: int, pending: list) -> list | None:
        """Keep pending zeros blockable by the undecided cells; None if one cannot be."""
        n, rows = self.n, self.rows
        r, c = divmod(idx, n)
        undecided = [0] * r + [self.full] * (n - r)
        if r < n:
            undecided[r] &= ~((1 << c) - 1)
        optimistic = [x | y for x, y in zip(rows, undecided)]
        spare = None if self.ceiling is None else self.ceiling - ones
        keep = []
        for cell, used in pending:
            if used is not None:
                cost = 0
                for a, b in used:
                    if a * n + b >= idx:
                        cost += 1
                    elif not (rows[a] >> b) & 1:
                        break
                else:
                    if cost == 0:
                        continue  # blocked by decided ones, for good
                    if spare is None or cost <= spare:
                        keep.append((cell, used))
                        continue
            if spare is None:
                used = self._copy_through(optimistic, cell)
            else:
                used = self._copy_through(optimistic, cell, undecided, spare)
            if used is None:
                return None
            keep.append((cell, used))
        return keep


def enumerate_maximal_avoiding(n: int, pattern: Matrix01) -> Iterator[Matrix01]:
    """Every n x n matrix that avoids ``pattern`` and admits no legal flip."""
    _check_budget(n)
    return _CellSearch(n, pattern, maximal=True, ones_first=False).run()


def sat_exact(n: int, pattern: Matrix01) -> SatResult:
    _check_budget(n)
    search = _CellSearch(n, pattern, maximal=True, ones_first=False)
    # Any greedy completion of the empty matrix is saturating: a first ceiling.
    best = greedy_saturate(Matrix01.zeros(n), pattern)
    search.ceiling = best.ones_count() - 1
    for m in search.run():
        best = m
        search.ceiling = m.ones_count() - 1
    return SatResult(n, pattern, best.ones_count(), best)


def ex_exact(n: int, pattern: Matrix01) -> SatResult:
    _check_budget(n)
    search = _CellSearch(n, pattern, maximal=False, ones_first=True)
    best = None
    for m in search.run():
        if best is None or m.ones_count() > best.ones_count():
            best = m
            search.floor = m.ones_count()
    return SatResult(n, pattern, best.ones_count(), best)


def sat_upper_random(n: int, pattern: Matrix01, trials: int, seed: int) -> SatResult:
    """Fewest ones over ``trials`` greedy saturations of the empty matrix in random cell orders."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    best = None
    for _ in range(trials):
        rng.shuffle(cells)
        m = greedy_saturate(Matrix01.zeros(n), pattern, order=list(cells))
        if best is None or m.ones_count() < best.ones_count():
            best = m
    return SatResult(n, pattern, best.ones_count(), best, exhaustive=False)


# -- d-dimensional matrices ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TensorD:
    """A d-dimensional 0-1 matrix; indices are 0-based numpy positions."""

    cells: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.cells, dtype=np.uint8)
        if arr.ndim < 2 or min(arr.shape) < 1:
            raise ValueError("tensor needs d >= 2 and every extent >= 1")
        if arr.max(initial=0) > 1:
            raise ValueError("cells must be 0 or 1")
        object.__setattr__(self, "cells", arr)

    @property
    def d(self) -> int:
        return self.cells.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cells.shape

    def ones_count(self) -> int:
        return int(self.cells.sum())

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorD) and self.shape == other.shape and bool(
            np.array_equal(self.cells, other.cells)
        )

    __hash__ = None


def lift_pattern(p: Matrix01, d: int) -> TensorD:
    """r x s x 1 x ... x 1 tensor carrying ``p`` in its first two axes."""
    if d < 2:
        raise ValueError("d must be at least 2")
    arr = np.array(p.to_rows(), dtype=np.uint8)
    return TensorD(arr.reshape(arr.shape + (1,) * (d - 2)))


def lift_matrix(a: Matrix01, d: int, n: int) -> TensorD:
    """n x ... x n tensor whose entry (x1, x2, ...) copies entry (x1, x2) of ``a``."""
    if a.shape != (n, n):
        raise ValueError(f"expected an {n}x{n} matrix, got {a.rows}x{a.cols}")
    if d < 2:
        raise ValueError("d must be at least 2")
    arr = np.array(a.to_rows(), dtype=np.uint8)
    return TensorD(np.broadcast_to(arr.reshape((n, n) + (1,) * (d - 2)), (n,) * d).copy())


def contains_d(host: TensorD, pattern: TensorD) -> bool:
    """Brute force over strictly increasing index sequences on every axis."""
    if host.d != pattern.d:
        raise ValueError("host and pattern must have the same dimension")
    if any(p > h for p, h in zip(pattern.shape, host.shape)):
        return False
    mask = pattern.cells.astype(bool)
    choices = [list(itertools.combinations(range(h), p)) for h, p in zip(host.shape, pattern.shape)]
    for idx in itertools.product(*choices):
        if host.cells[np.ix_(*idx)][mask].all():
            return True
    return False


def is_saturating_d(a: TensorD, pattern: TensorD) -> bool:
    if contains_d(a, pattern):
        return False
    cells = a.cells
    for pos in zip(*np.nonzero(cells == 0)):
        cells[pos] = 1
        try:
            hit = contains_d(a, pattern)
        finally:
            cells[pos] = 0
        if not hit:
            return False
    return True


def sat_exact_d(n: int, pattern: TensorD) -> tuple[int, TensorD]:
    """Minimum ones over all saturating n x ... x n tensors, by full enumeration."""
    d = pattern.d
    size = n**d
    if size > MAX_TENSOR_CELLS:
        raise BudgetExceeded(f"exhaustive tensor search is limited to n**d <= {MAX_TENSOR_CELLS}, got {size}")
    best = None
    for weight in range(size + 1):
        for ones in itertools.combinations(range(size), weight):
            flat = np.zeros(size, dtype=np.uint8)
            flat[list(ones)] = 1
            t = TensorD(flat.reshape((n,) * d))
            if is_saturating_d(t, pattern):
                best = t
                break
        if best is not None:
            return weight, best
    raise AssertionError("the all-ones tensor is always saturating")


@dataclass
class LiftReport:
    n: int
    d: int
    pattern: Matrix01
    sat2: int
    predicted: int
    constructive: dict = field(default_factory=dict)
    exhaustive: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        ok = self.constructive.get("checked", False) and self.constructive["saturating"] and (
            self.constructive["ones"] == self.predicted
        )
        if self.exhaustive.get("checked"):
            ok = ok and self.exhaustive["value"] == self.predicted
        return ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "pattern": self.pattern.to_text(),
            "sat2": self.sat2,
            "predicted": self.predicted,
            "constructive": self.constructive,
            "exhaustive": self.exhaustive,
            "holds": self.holds,
        }


def verify_lift_lemma(n: int, p: Matrix01, d: int) -> LiftReport:
    """Check sat(n, P_d, d) = n**(d-2) * sat(n, P) as far as the budgets allow."""
    base = sat_exact(n, p)
    report = LiftReport(n, d, p, base.value, n ** (d - 2) * base.value)
    pattern_d = lift_pattern(p, d)
    size = n**d
    if size <= MAX_LIFT_CELLS:
        lifted = lift_matrix(base.witness, d, n)
        report.constructive = {
            "checked": True,
            "ones": lifted.ones_count(),
            "saturating": is_saturating_d(lifted, pattern_d),
        }
    else:
        report.constructive = {"checked": False, "skipped": f"n**d = {size} exceeds {MAX_LIFT_CELLS}"}
    if size <= MAX_TENSOR_CELLS:
        value, _ = sat_exact_d(n, pattern_d)
        report.exhaustive = {"checked": True, "value": value}
    else:
        report.exhaustive = {"checked": False, "skipped": f"n**d = {size} exceeds {MAX_TENSOR_CELLS}"}
    return report
