"""Sparse exact linear algebra over the rationals.

Vectors are dicts mapping a column index to a nonzero ``mpq``.  Matrices are
lists of such vectors, one per source basis element (column convention:
``mat[j]`` is the image of basis vector ``j``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

Vec = dict


def axpy(y: Vec, a, x: Vec) -> None:
    """y += a*x in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, ZERO) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(x: Vec, a) -> Vec:
    return {k: a * v for k, v in x.items()} if a else {}


def apply(mat: list[Vec], x: Vec) -> Vec:
    out: Vec = {}
    for j, a in x.items():
        axpy(out, a, mat[j])
    return out


def compose(a: list[Vec], b: list[Vec]) -> list[Vec]:
    """The matrix of a after b."""
    return [apply(a, col) for col in b]


def is_zero(mat: list[Vec]) -> bool:
    return all(not col for col in mat)


class Echelon:
    """Incremental echelon form; each row's pivot is its smallest column.

    Rows may carry a tag vector that is transformed alongside them, which
    records how a row was obtained from the inserted vectors.
    """

    def __init__(self):
        self.rows: dict[int, tuple[Vec, Vec]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)

    def reduce(self, vec: Vec, tag: Vec | None = None) -> tuple[Vec, Vec]:
        vec = dict(vec)
        tag = dict(tag) if tag else {}
        heap = list(vec)
        heapq.heapify(heap)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            a = vec.get(c)
            if a is None or c not in self.rows:
                continue
            row, rtag = self.rows[c]
            for k in row:
                if k not in vec and k not in seen:
                    heapq.heappush(heap, k)
            axpy(vec, -a, row)
            if rtag:
                axpy(tag, -a, rtag)
        return vec, tag

    def add(self, vec: Vec, tag: Vec | None = None) -> tuple[bool, Vec]:
        """Insert a vector; returns (independent, leftover tag)."""
        r, t = self.reduce(vec, tag)
        if not r:
            return False, t
        p = min(r)
        inv = ONE / r[p]
        self.rows[p] = (scale(r, inv), scale(t, inv))
        return True, t


def rank(mat: list[Vec]) -> int:
    e = Echelon()
    for col in mat:
        e.add(col)
    return len(e)


def kernel(mat: list[Vec]) -> list[Vec]:
    """A basis of the kernel, as vectors over the source basis."""
    e = Echelon()
    out = []
    for j, col in enumerate(mat):
        indep, t = e.add(col, {j: ONE})
        if not indep:
            out.append(t)
    return out


@dataclass
class HomologyPiece:
    """Homology at one grading with representatives and a projection."""
    dim: int
    reps: list[Vec]
    _ech: Echelon = field(repr=False, default_factory=Echelon)

    def project(self, cycle: Vec) -> Vec:
        """Coordinates of the class of a cycle in the representative basis."""
        r, t = self._ech.reduce(cycle)
        if r:
            raise ValueError("vector is not a cycle modulo boundaries")
        return {k: -v for k, v in t.items() if v}


def homology_piece(d_out: list[Vec], d_in: list[Vec], size: int) -> HomologyPiece:
    """Homology of C_in -> C -> C_out at C, where ``size`` = dim C.

    ``d_out`` has ``size`` columns, ``d_in`` maps into C.
    """
    assert len(d_out) == size
    ker = kernel(d_out)
    ech = Echelon()
    for col in d_in:
        ech.add(col)
    reps = []
    for z in ker:
        indep, _ = ech.add(z, {len(reps): ONE})
        if indep:
            reps.append(z)
    return HomologyPiece(len(reps), reps, ech)
