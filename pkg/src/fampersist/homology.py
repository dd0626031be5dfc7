"""Exact simplicial homology over small prime fields.

Betti numbers come from boundary-matrix ranks (dense elimination mod p);
ranks of inclusion-induced maps come from a two-stage persistence column
reduction.  Both paths are exact: matrices hold integers mod p throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class HomologyError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field GF(p)."""

    characteristic: int = 2

    def __post_init__(self):
        p = self.characteristic
        if not (_is_prime(p) and p < 2**16):
            raise HomologyError(f"characteristic must be a prime < 2^16, got {p}")

    def inv(self, a: int) -> int:
        return pow(a % self.characteristic, self.characteristic - 2, self.characteristic)


@dataclass
class Barcode:
    """Bars of a staged filtration: (birth stage, death stage or None) per degree."""

    max_stage: int
    bars: dict = field(default_factory=dict)  # degree -> list of (birth, death|None)

    def add(self, degree: int, birth: int, death):
        self.bars.setdefault(degree, []).append((birth, death))

    def betti_at_stage(self, degree: int, stage: int) -> int:
        return sum(1 for b, d in self.bars.get(degree, ())
                   if b <= stage and (d is None or d > stage))

    def essential(self, degree: int):
        return [(b, d) for b, d in self.bars.get(degree, ()) if d is None]


def _check_closed(simplices: frozenset):
    from .simplicial import is_downward_closed

    if not is_downward_closed(simplices):
        raise HomologyError("simplex set is not downward closed")


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank of an integer matrix mod p by Gaussian elimination."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if A[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = (A[rank] * inv) % p
        mask = A[rank + 1:, col] % p != 0
        if mask.any():
            factors = A[rank + 1:, col][mask][:, None]
            A[rank + 1:][mask] = (A[rank + 1:][mask] - factors * A[rank][None, :]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def boundary_matrix(simplices: frozenset, j: int) -> np.ndarray:
    """The degree-j boundary matrix with integer entries (+-1)."""
    js = sorted(s for s in simplices if len(s) == j + 1)
    faces_ = sorted(s for s in simplices if len(s) == j)
    idx = {s: i for i, s in enumerate(faces_)}
    M = np.zeros((len(faces_), len(js)), dtype=np.int64)
    for col, s in enumerate(js):
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            if f:
                M[idx[f], col] = (-1) ** k
    return M


def betti(simplices: frozenset, j: int, fieldspec: FieldSpec = FieldSpec()) -> int:
    """dim_GF(p) H_j of a downward-closed simplex set (unreduced homology)."""
    if j < 0:
        return 0
    _check_closed(simplices)
    n_j = sum(1 for s in simplices if len(s) == j + 1)
    if n_j == 0:
        return 0
    p = fieldspec.characteristic
    rank_dj = _rank_mod_p(boundary_matrix(simplices, j), p) if j > 0 else 0
    rank_dj1 = _rank_mod_p(boundary_matrix(simplices, j + 1), p)
    return n_j - rank_dj - rank_dj1


def _low(col: dict) -> int:
    return max(col) if col else -1


def _reduce_columns(columns: list, p: int, clearing: bool, dims: list) -> dict:
    """Persistence column reduction; returns {death column -> birth column}.

    ``columns`` are boundary columns as {row index: coeff}; the filtration
    order is the list order.  With ``clearing`` the reduction runs by
    decreasing simplex dimension and zeroes columns known to be birth
    columns of already-found pairs; barcodes are identical either way.
    """
    pairs = {}
    pivot_of = {}  # low row -> column index owning it

    order: Iterable[int]
    if clearing:
        byd = {}
        for idx, d in enumerate(dims):
            byd.setdefault(d, []).append(idx)
        order = [i for d in sorted(byd, reverse=True) for i in byd[d]]
    else:
        order = range(len(columns))

    for j in order:
        if clearing and j in pairs.values():
            columns[j] = {}
            continue
        col = columns[j]
        while col:
            low = _low(col)
            k = pivot_of.get(low)
            if k is None:
                break
            factor = (col[low] * pow(columns[k][low], p - 2, p)) % p
            for r, v in columns[k].items():
                nv = (col.get(r, 0) - factor * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        if col:
            low = _low(col)
            pivot_of[low] = j
            pairs[j] = low
    return pairs


def staged_reduce(filtration: Sequence, fieldspec: FieldSpec = FieldSpec(),
                  clearing: bool = False) -> Barcode:
    """Barcode of a staged filtration.

    ``filtration`` is an ordered list of (simplex, stage) with faces before
    cofaces and stages non-decreasing.  Stage-wise Betti counts of the
    result match ``betti`` on every prefix subcomplex.
    """
    simplices = [tuple(s) for s, _ in filtration]
    stages = [int(st) for _, st in filtration]
    if any(stages[i] > stages[i + 1] for i in range(len(stages) - 1)):
        raise HomologyError("stage labels must be non-decreasing")
    index = {}
    for i, s in enumerate(simplices):
        for f in (s[:k] + s[k + 1:] for k in range(len(s))):
            if len(f) >= 1 and f not in index:
                raise HomologyError(f"face {f!r} of {s!r} missing or out of order")
        if s in index:
            raise HomologyError(f"duplicate simplex {s!r}")
        index[s] = i

    p = fieldspec.characteristic
    columns = []
    for s in simplices:
        col = {}
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            if f:
                col[index[f]] = ((-1) ** k) % p
        columns.append(col)
    dims = [len(s) - 1 for s in simplices]

    pairs = _reduce_columns(columns, p, clearing, dims)
    max_stage = stages[-1] if stages else 0
    bc = Barcode(max_stage=max_stage)
    dead_births = set()
    for death, birth in pairs.items():
        dead_births.add(birth)
        if stages[birth] < stages[death]:  # zero-length bars are invisible
            bc.add(dims[birth], stages[birth], stages[death])
    for i, s in enumerate(simplices):
        if i not in pairs and i not in dead_births:
            bc.add(dims[i], stages[i], None)
    return bc


def _staged_filtration(sub: frozenset, sup: frozenset):
    first = sorted(sub, key=lambda s: (len(s), s))
    second = sorted(sup - sub, key=lambda s: (len(s), s))
    return [(s, 0) for s in first] + [(s, 1) for s in second]


def induced_rank(sub: frozenset, sup: frozenset, j: int,
                 fieldspec: FieldSpec = FieldSpec()) -> int:
    """Rank of H_j(sub) -> H_j(sup) induced by inclusion.

    Two-stage filtration (sub, then sup minus sub): the rank equals the
    number of degree-j classes born in stage 0 that never die.
    """
    if not sub <= sup:
        raise HomologyError("sub must be contained in sup")
    _check_closed(sub)
    _check_closed(sup)
    if j < 0:
        return 0
    bc = staged_reduce(_staged_filtration(sub, sup), fieldspec)
    return sum(1 for b, d in bc.essential(j) if b == 0)
