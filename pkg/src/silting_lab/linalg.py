"""Exact sparse linear algebra over the coefficient field.

Vectors are dicts ``{coordinate: coefficient}`` with integer coordinates and no
zero entries.  :class:`Echelon` keeps a set of rows in semi-echelon form, with
each row's pivot equal to its largest coordinate.  Reduction then walks
coordinates from the top down through a heap.

:func:`dense_rank` is a separate dense eliminator used only as a test oracle.
"""

from __future__ import annotations

import heapq
from .scalars import coeff, inverse


def axpy(target: dict, c, v: dict) -> None:
    """In place ``target += c * v``."""
    for k, a in v.items():
        n = target.get(k, 0) + c * a
        if n:
            target[k] = n
        else:
            target.pop(k, None)


def scale(c, v: dict) -> dict:
    if not c:
        return {}
    return {k: c * a for k, a in v.items()}


class Echelon:
    """Incrementally built row space supporting membership and reduction.

    Each stored row may carry a *tag*: a vector recording which input
    combination produced it.  Tags make kernels and solutions fall out of the
    same elimination.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}
        self.tags: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, tag: dict | None = None):
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        if not self.rows:
            return v, tag
        seen = set(v)
        heap = [-k for k in v]
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            k = -heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            row = rows.get(k)
            if row is None:
                continue
            for j, a in row.items():
                n = v.get(j, 0) - c * a
                if n:
                    v[j] = n
                    if j not in seen:
                        seen.add(j)
                        heapq.heappush(heap, -j)
                else:
                    v.pop(j, None)
            if tag is not None:
                rtag = self.tags.get(k)
                if rtag:
                    axpy(tag, -c, rtag)
        return v, tag

    def add(self, v: dict, tag: dict | None = None):
        """Insert ``v``; return the nonzero residual, or ``None`` if dependent.

        When ``v`` is dependent and a tag was given, the reduced tag (a relation
        among inputs) is returned as the second item.
        """
        r, t = self.reduce(v, tag)
        if not r:
            return None, t
        p = max(r)
        inv = inverse(r[p])
        r = {k: coeff(a * inv) for k, a in r.items()}
        self.rows[p] = r
        if t is not None:
            self.tags[p] = {k: coeff(a * inv) for k, a in t.items()}
        return r, None

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return len(e)


def kernel(columns: list[dict]) -> list[dict]:
    """Basis of ``{x : sum_j x_j columns[j] = 0}``; vectors indexed by j.

    Each basis vector has a distinct largest coordinate carrying coefficient 1,
    so columns that map to zero come out as unit vectors.
    """
    e = Echelon()
    out = []
    for j, col in enumerate(columns):
        r, rel = e.add(col, {j: 1})
        if r is None:
            out.append(rel)
    return out


def solve(columns: list[dict], target: dict):
    """Some ``x`` with ``sum_j x_j columns[j] = target``, or ``None``."""
    e = Echelon()
    for j, col in enumerate(columns):
        e.add(col, {j: 1})
    r, t = e.reduce(target, {})
    if r:
        return None
    return {k: -a for k, a in t.items()}


class Solver:
    """Prebuilt elimination for repeated solves against fixed columns."""

    def __init__(self, columns: list[dict]):
        self.echelon = Echelon()
        for j, col in enumerate(columns):
            self.echelon.add(col, {j: 1})

    def solve(self, target: dict):
        r, t = self.echelon.reduce(target, {})
        if r:
            return None
        return {k: -a for k, a in t.items()}


def quotient_basis(candidates: list[dict], subspace: list[dict]) -> list[int]:
    """Indices of a greedy subset of ``candidates`` independent modulo ``subspace``."""
    e = Echelon()
    for v in subspace:
        e.add(v)
    keep = []
    for i, v in enumerate(candidates):
        r, _ = e.add(v)
        if r is not None:
            keep.append(i)
    return keep


def cohomology(d_in: list[dict], d_out: list[dict]):
    """Cohomology at a middle term ``C`` of ``B --d_in--> C --d_out--> D``.

    ``d_in`` lists images of a basis of ``B`` (as vectors on ``C``) and
    ``d_out`` the images of the basis of ``C``.  Returns the dimension and
    representative cycles, chosen greedily from a kernel basis.
    """
    cycles = kernel(d_out)
    chosen = quotient_basis(cycles, d_in)
    return len(chosen), [cycles[i] for i in chosen]


def dense_rank(matrix) -> int:
    """Rank by plain dense row reduction; an independent oracle for tests."""
    m = [[coeff(x) for x in row] for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = inverse(m[r][c])
        m[r] = [coeff(x * inv) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [coeff(a - f * b) for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def to_dense(vectors: list[dict], dim: int) -> list[list]:
    """Columns-as-dicts to a dense row-major matrix (rows = coordinates)."""
    return [[v.get(i, 0) for v in vectors] for i in range(dim)]
