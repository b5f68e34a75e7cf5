"""Class 1-4 membership, reduction under symmetry, ordinariness and censuses.

Block boundaries are stored as the last row (or column) of every block but
the final one, 1-based.  So ``row_splits=(1, 3)`` on a 4x4 matrix means
``R1 = {1}``, ``R2 = {2, 3}``, ``R3 = {4}``.

Membership checks work on the permutation itself.  For Classes 2 and 4 the
column boundaries are read off from the row boundaries (a permutation leaves
no other choice); every witness can be replayed against the block-level
definition with :func:`replay`.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .core import PermutationMatrix, Transform, apply_transform

EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True)
class ClassWitness:
    class_id: int
    transform: Transform
    row_splits: tuple[int, ...]
    col_splits: tuple[int, ...]
    extra_rows: tuple[int, ...] = ()
    # Class 3 only: position in X of the row that was moved to the front of P.
    reinserted_from: int | None = None

    def to_dict(self) -> dict:
        d = {
            "class": self.class_id,
            "transform": self.transform.label,
            "rowSplits": list(self.row_splits),
            "colSplits": list(self.col_splits),
            "extraRows": list(self.extra_rows),
        }
        if self.reinserted_from is not None:
            d["reinsertedFrom"] = self.reinserted_from
        return d


def _blocks(splits: tuple[int, ...], k: int) -> list[range]:
    edges = (0, *splits, k)
    return [range(edges[i] + 1, edges[i + 1] + 1) for i in range(len(edges) - 1)]


def block_counts(sigma: tuple[int, ...], row_splits, col_splits) -> list[list[int]]:
    """Number of ones in every (row block, column block) pair."""
    k = len(sigma)
    rb, cb = _blocks(tuple(row_splits), k), _blocks(tuple(col_splits), k)
    col_block = {}
    for b, cols in enumerate(cb):
        for c in cols:
            col_block[c] = b
    counts = [[0] * len(cb) for _ in rb]
    for a, rows in enumerate(rb):
        for r in rows:
            counts[a][col_block[sigma[r - 1]]] += 1
    return counts


def _exceptional_ok(sigma, rows: range, cols: range) -> tuple[bool, tuple[int, ...]]:
    extra = tuple(r for r in rows if sigma[r - 1] in cols)
    if len(extra) > 2:
        return False, extra
    if len(extra) == 2 and extra[1] - extra[0] != 1:
        return False, extra
    return True, extra


def _valid_splits(splits, k) -> bool:
    edges = (0, *splits, k)
    return all(edges[i] < edges[i + 1] for i in range(len(edges) - 1))


# -- witness search on the untransformed permutation ----------------------------


def _class1(sigma) -> Iterator[ClassWitness]:
    k = len(sigma)
    for p in range(1, k):
        for q in range(1, k):
            (a11, a12), (a21, a22) = block_counts(sigma, (p,), (q,))
            if a21 or not a11 or not a22 or a12 > 2:
                continue
            ok, extra = _exceptional_ok(sigma, range(1, p + 1), range(q + 1, k + 1))
            if ok:
                yield ClassWitness(1, Transform.IDENTITY, (p,), (q,), extra)


def _class2(sigma) -> Iterator[ClassWitness]:
    # R1 x C1 and R3 x C1 are empty, so every column of C1 lies in R2:
    # the R2 x C1 count equals |C1| and |C1| = |R2| - t with t <= 2.
    k = len(sigma)
    for a in range(1, k - 2):
        for b in range(a + 2, k):
            outer = min(min(sigma[:a]), min(sigma[b:]))
            size = b - a
            for q in (size, size - 1, size - 2):
                if not 2 <= q < outer:
                    continue
                ok, extra = _exceptional_ok(sigma, range(a + 1, b + 1), range(q + 1, k + 1))
                if ok:
                    yield ClassWitness(2, Transform.IDENTITY, (a, b), (q,), extra)


def _class3(sigma) -> Iterator[ClassWitness]:
    # Undo the move: row 1 of P came from position `pos` of X.  In a Class-2
    # witness of X the rightmost one of R2 x C1 sits in column |C1|, so the
    # moved row must carry exactly that column.
    k = len(sigma)
    if k < 4:
        return
    v, rest = sigma[0], sigma[1:]
    for pos in range(2, k + 1):
        x = rest[: pos - 1] + (v,) + rest[pos - 1 :]
        for w in _class2(x):
            a, b = w.row_splits
            if w.col_splits[0] == v and a < pos <= b:
                yield ClassWitness(3, Transform.IDENTITY, w.row_splits, w.col_splits, w.extra_rows, pos)


def _class4(sigma) -> Iterator[ClassWitness]:
    # Rows of R1 and R3 use exactly the columns of C2, which must therefore
    # form an interval strictly inside 1..k.
    k = len(sigma)
    for a in range(1, k - 1):
        for b in range(a + 1, k):
            outer = sigma[:a] + sigma[b:]
            lo, hi = min(outer), max(outer)
            if hi - lo + 1 == len(outer) and lo >= 2 and hi <= k - 1:
                yield ClassWitness(4, Transform.IDENTITY, (a, b), (lo - 1, hi))


_SEARCH = {1: _class1, 2: _class2, 3: _class3, 4: _class4}


def _sigma(p) -> tuple[int, ...]:
    return p.sigma if isinstance(p, PermutationMatrix) else tuple(p)


def class1_witness(p: PermutationMatrix) -> ClassWitness | None:
    return next(_class1(_sigma(p)), None)


def class2_witness(p: PermutationMatrix) -> ClassWitness | None:
    return next(_class2(_sigma(p)), None)


def class3_witness(p: PermutationMatrix) -> ClassWitness | None:
    return next(_class3(_sigma(p)), None)


def class4_witness(p: PermutationMatrix) -> ClassWitness | None:
    return next(_class4(_sigma(p)), None)


def class_witnesses(p: PermutationMatrix, class_id: int) -> Iterator[ClassWitness]:
    """Every witness of membership (identity transform) in the given class."""
    return _SEARCH[class_id](_sigma(p))


def in_class(p: PermutationMatrix, class_id: int) -> bool:
    return next(_SEARCH[class_id](_sigma(p)), None) is not None


def reduces_to_class(p: PermutationMatrix, class_id: int) -> ClassWitness | None:
    """First witness found over the eight images of ``p``, with its transform."""
    if class_id not in _SEARCH:
        raise ValueError(f"class id must be 1..4, got {class_id}")
    for t in Transform:
        w = next(_SEARCH[class_id](apply_transform(t, p).sigma), None)
        if w is not None:
            return ClassWitness(w.class_id, t, w.row_splits, w.col_splits, w.extra_rows, w.reinserted_from)
    return None


def is_ordinary(p: PermutationMatrix) -> bool:
    return all(reduces_to_class(p, i) is None for i in (1, 2, 3, 4))


def move_first_row(sigma: tuple[int, ...], pos: int) -> tuple[int, ...]:
    """Move row 1 to position ``pos`` (1-based); inverse of the Class-3 move."""
    v, rest = sigma[0], sigma[1:]
    return rest[: pos - 1] + (v,) + rest[pos - 1 :]


def replay(witness: ClassWitness, p: PermutationMatrix) -> bool:
    """Check a witness block by block against the class definition."""
    sigma = apply_transform(witness.transform, p).sigma
    k = len(sigma)
    cid = witness.class_id
    rs, cs = witness.row_splits, witness.col_splits
    if cid == 3:
        if witness.reinserted_from is None or not 2 <= witness.reinserted_from <= k:
            return False
        x = move_first_row(sigma, witness.reinserted_from)
        if not _replay_class2(x, rs, cs, witness.extra_rows):
            return False
        # The moved row holds the rightmost one of R2 x C1.
        a, b = rs
        r2c1 = [(x[r - 1], r) for r in range(a + 1, b + 1) if x[r - 1] <= cs[0]]
        return max(r2c1)[1] == witness.reinserted_from
    if cid == 1:
        if len(rs) != 1 or len(cs) != 1 or not _valid_splits(rs, k) or not _valid_splits(cs, k):
            return False
        (a11, a12), (a21, a22) = block_counts(sigma, rs, cs)
        ok, extra = _exceptional_ok(sigma, range(1, rs[0] + 1), range(cs[0] + 1, k + 1))
        return a11 >= 1 and a22 >= 1 and a21 == 0 and ok and extra == witness.extra_rows
    if cid == 2:
        return _replay_class2(sigma, rs, cs, witness.extra_rows)
    if cid == 4:
        if len(rs) != 2 or len(cs) != 2 or not _valid_splits(rs, k) or not _valid_splits(cs, k):
            return False
        counts = block_counts(sigma, rs, cs)
        allowed = {(0, 1), (1, 0), (1, 2), (2, 1)}
        return all(
            (counts[i][j] >= 1) if (i, j) in allowed else (counts[i][j] == 0)
            for i in range(3)
            for j in range(3)
        )
    return False


def _replay_class2(sigma, rs, cs, extra_rows) -> bool:
    k = len(sigma)
    if len(rs) != 2 or len(cs) != 1 or not _valid_splits(rs, k) or not _valid_splits(cs, k):
        return False
    (a11, a12), (a21, a22), (a31, a32) = block_counts(sigma, rs, cs)
    ok, extra = _exceptional_ok(sigma, range(rs[0] + 1, rs[1] + 1), range(cs[0] + 1, k + 1))
    return a12 >= 1 and a32 >= 1 and a21 >= 2 and a11 == 0 and a31 == 0 and ok and extra == extra_rows


# -- census ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    k: int
    total: int
    class_counts: dict[int, int]
    non_ordinary: int
    ordinary: int
    mode: str = "exhaustive"
    samples: int | None = None
    seed: int | None = None
    half_width: float | None = None
    ordinary_examples: list[str] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.ordinary / self.total

    def to_dict(self) -> dict:
        d = {
            "k": self.k,
            "total": self.total,
            "class1": self.class_counts[1],
            "class2": self.class_counts[2],
            "class3": self.class_counts[3],
            "class4": self.class_counts[4],
            "nonOrdinary": self.non_ordinary,
            "ordinary": self.ordinary,
            "fraction": self.fraction,
            "mode": self.mode,
        }
        if self.mode == "sampled":
            d.update(samples=self.samples, seed=self.seed, halfWidth=self.half_width)
        return d


def _membership_chunk(perms: list[tuple[int, ...]]) -> list[tuple[bool, bool, bool, bool]]:
    return [tuple(next(_SEARCH[i](s), None) is not None for i in (1, 2, 3, 4)) for s in perms]


def _membership(perms: list[tuple[int, ...]], workers: int) -> dict[tuple[int, ...], tuple]:
    if workers <= 1 or len(perms) < 1000:
        flags = _membership_chunk(perms)
    else:
        size = math.ceil(len(perms) / (workers * 4))
        chunks = [perms[i : i + size] for i in range(0, len(perms), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flags = [f for part in pool.map(_membership_chunk, chunks) for f in part]
    return dict(zip(perms, flags))


def census(k: int, workers: int = 1, limit: int = EXHAUSTIVE_LIMIT) -> CensusReport:
    """Classify every k x k permutation matrix.

    Per-class counts are of permutations that reduce to the class, so a
    permutation can be counted under several classes.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > limit:
        raise ValueError(f"exhaustive census is limited to k <= {limit}; use sample_fraction")
    perms = list(itertools.permutations(range(1, k + 1)))
    member = _membership(perms, workers)
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    ordinary = 0
    examples = []
    for s in perms:
        p = PermutationMatrix(s)
        images = [member[apply_transform(t, p).sigma] for t in Transform]
        reduced = [any(f[i] for f in images) for i in range(4)]
        for i in range(4):
            counts[i + 1] += reduced[i]
        if not any(reduced):
            ordinary += 1
            if len(examples) < 10:
                examples.append(str(p))
    total = len(perms)
    return CensusReport(k, total, counts, total - ordinary, ordinary, ordinary_examples=examples)


def random_permutation(k: int, rng: random.Random) -> PermutationMatrix:
    values = list(range(1, k + 1))
    rng.shuffle(values)  # Fisher-Yates
    return PermutationMatrix(tuple(values))


def sample_census(k: int, samples: int, seed: int) -> CensusReport:
    """Monte-Carlo census over ``samples`` uniform permutations (seeded)."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = random.Random(seed)
    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    ordinary = 0
    for _ in range(samples):
        p = random_permutation(k, rng)
        reduced = [reduces_to_class(p, i) is not None for i in (1, 2, 3, 4)]
        for i in range(4):
            counts[i + 1] += reduced[i]
        ordinary += not any(reduced)
    f = ordinary / samples
    half = 1.96 * math.sqrt(f * (1 - f) / samples)
    return CensusReport(k, samples, counts, samples - ordinary, ordinary, "sampled", samples, seed, half)


def sample_fraction(k: int, samples: int, seed: int) -> tuple[float, float]:
    """Estimated ordinary fraction and the half-width of its 95% normal interval."""
    rep = sample_census(k, samples, seed)
    return rep.fraction, rep.half_width
