"""Minimal perfect dg modules and the linear algebra of their Hom complexes.

A :class:`PerfModule` is ``X = (+)_c Sigma^{s_c} e_{v_c} A`` with differential
``D = diag((-1)^{s_r}) d_A + delta``.  Entry ``delta[r, c]`` is an element of
``e_{v_r} A e_{v_c}`` of degree ``1 + s_r - s_c``.  A degree-``n`` element of
``X`` is a column ``(x_c)`` with ``|x_c| = n + s_c``.  Summands are kept sorted
by (shift, vertex).  With that order ``delta`` is strictly upper triangular
whenever its entries lie in the arrow ideal.

Square-zero condition, entrywise: ``(-1)^{s_r} d(delta_rc) + (delta^2)_rc = 0``.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .algebra import DgPathAlgebra
from .linalg import Solver, axpy, cohomology, dense_rank, kernel, quotient_basis, rank, solve
from .scalars import coeff, inverse


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _scaled(c, x: dict) -> dict:
    return {p: c * a for p, a in x.items()} if c != 1 else dict(x)


class PerfModule:
    """Direct sum of shifted vertex projectives with a twisting matrix."""

    def __init__(self, alg: DgPathAlgebra, summands, delta: dict | None = None, name: str | None = None):
        self.alg = alg
        self.name = name
        raw = [(int(v), int(s)) for v, s in summands]
        order = sorted(range(len(raw)), key=lambda k: (raw[k][1], raw[k][0]))
        pos = {old: new for new, old in enumerate(order)}
        self.summands = tuple(raw[k] for k in order)
        self.delta: dict = {}
        for (r, c), x in (delta or {}).items():
            x = {p: coeff(a) for p, a in x.items() if a and alg.fits(p)}
            if x:
                self.delta[(pos[r], pos[c])] = x
        self._rows: dict | None = None
        self._cols: dict | None = None

    # ------------------------------------------------------------ structure

    def __len__(self):
        return len(self.summands)

    def rows(self) -> dict:
        """``r -> [(c, delta_rc)]``."""
        if self._rows is None:
            self._rows = {}
            for (r, c), x in sorted(self.delta.items()):
                self._rows.setdefault(r, []).append((c, x))
        return self._rows

    def cols(self) -> dict:
        """``c -> [(r, delta_rc)]``."""
        if self._cols is None:
            self._cols = {}
            for (r, c), x in sorted(self.delta.items()):
                self._cols.setdefault(c, []).append((r, x))
        return self._cols

    def shifts(self) -> list[int]:
        return [s for _, s in self.summands]

    def min_shift(self):
        return min(self.shifts()) if self.summands else None

    def max_shift(self):
        return max(self.shifts()) if self.summands else None

    def multiset(self) -> Counter:
        return Counter(self.summands)

    def is_minimal(self) -> bool:
        return not any(p[0] < 0 for x in self.delta.values() for p in x)

    def entry_errors(self) -> list[str]:
        """Entries violating endpoint or degree bookkeeping."""
        alg = self.alg
        out = []
        for (r, c), x in self.delta.items():
            (vr, sr), (vc, sc) = self.summands[r], self.summands[c]
            for p in x:
                if alg.target(p) != vr or alg.source(p) != vc:
                    out.append(f"({r},{c}): wrong endpoints")
                elif alg.degree(p) != 1 + sr - sc:
                    out.append(f"({r},{c}): degree {alg.degree(p)} != {1 + sr - sc}")
        return out

    def square_zero_residual(self) -> dict:
        """Nonzero entries of ``(-1)^{s_r} d(delta) + delta^2``."""
        alg = self.alg
        res: dict = {}
        for (r, c), x in self.delta.items():
            acc = res.setdefault((r, c), {})
            for p, a in x.items():
                axpy(acc, _sgn(self.summands[r][1]) * a, alg.d_path(p))
        cols = self.cols()
        for (r, k), x in self.delta.items():
            for c, y in self.rows().get(k, []):
                acc = res.setdefault((r, c), {})
                axpy(acc, 1, alg.mul(x, y))
        return {k: v for k, v in res.items() if v}

    def is_upper_triangular(self) -> bool:
        return all(r < c for r, c in self.delta)

    def over(self, alg: DgPathAlgebra) -> "PerfModule":
        """Same data viewed over another truncation of the same algebra."""
        return PerfModule(alg, self.summands, self.delta, self.name)

    def with_name(self, name: str) -> "PerfModule":
        return PerfModule(self.alg, self.summands, self.delta, name)

    # ----------------------------------------------------------------- output

    def label(self, k: int) -> str:
        v, s = self.summands[k]
        base = f"P{self.alg.vertices[v]}"
        return base if s == 0 else f"S^{s} {base}"

    def to_json(self) -> dict:
        n = len(self.summands)
        mat = [["0"] * n for _ in range(n)]
        for (r, c), x in self.delta.items():
            mat[r][c] = self.alg.format(x)
        out = {"summands": [[self.alg.vertices[v], s] for v, s in self.summands], "delta": mat}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, alg: DgPathAlgebra, data: dict) -> "PerfModule":
        summands = [(alg.vindex[str(v)], int(s)) for v, s in data["summands"]]
        delta = {}
        for r, row in enumerate(data.get("delta", [])):
            for c, text in enumerate(row):
                x = alg.parse_element(text)
                if x:
                    delta[(r, c)] = x
        return cls(alg, summands, delta, data.get("name"))

    def __repr__(self):
        parts = " + ".join(self.label(k) for k in range(len(self))) or "0"
        return f"PerfModule({parts})"


# ---------------------------------------------------------------- builders


def projective(alg: DgPathAlgebra, v, shift: int = 0) -> PerfModule:
    v = alg.vindex[v] if not isinstance(v, int) else v
    return PerfModule(alg, [(v, shift)], name=f"P{alg.vertices[v]}")


def free_module(alg: DgPathAlgebra, vertices=None) -> PerfModule:
    vs = range(len(alg.vertices)) if vertices is None else vertices
    return PerfModule(alg, [(v, 0) for v in vs])


def zero_module(alg: DgPathAlgebra) -> PerfModule:
    return PerfModule(alg, [])


def shift(x: PerfModule, k: int) -> PerfModule:
    """``Sigma^k x``: shifts move by ``k`` and delta picks up ``(-1)^k``."""
    s = _sgn(k)
    return PerfModule(
        x.alg,
        [(v, t + k) for v, t in x.summands],
        {rc: _scaled(s, e) for rc, e in x.delta.items()},
        x.name,
    )


def direct_sum(*xs: PerfModule) -> PerfModule:
    alg = xs[0].alg
    summands, delta, off = [], {}, 0
    for x in xs:
        summands.extend(x.summands)
        for (r, c), e in x.delta.items():
            delta[(r + off, c + off)] = e
        off += len(x)
    return PerfModule(alg, summands, delta)


def restrict(x: PerfModule, keep) -> PerfModule:
    """Sub-block on the summand indices ``keep``."""
    keep = list(keep)
    pos = {k: j for j, k in enumerate(keep)}
    delta = {(pos[r], pos[c]): e for (r, c), e in x.delta.items() if r in pos and c in pos}
    return PerfModule(x.alg, [x.summands[k] for k in keep], delta)


# ------------------------------------------------------------- Hom complexes


class HomComplex:
    """``Hom_A(x, y)``; a degree-``k`` map has entries ``F[r, c]`` in
    ``e_{v^y_r} A e_{v^x_c}`` of degree ``k + s^y_r - s^x_c``."""

    def __init__(self, x: PerfModule, y: PerfModule):
        if x.alg is not y.alg:
            raise ValueError("modules over different algebras")
        self.x, self.y, self.alg = x, y, x.alg
        self._basis: dict = {}

    def basis(self, k: int) -> list:
        hit = self._basis.get(k)
        if hit is None:
            alg = self.alg
            hit = []
            for r, (vr, sr) in enumerate(self.y.summands):
                for c, (vc, sc) in enumerate(self.x.summands):
                    for p in alg.paths(vc, vr, k + sr - sc):
                        hit.append((r, c, p))
            index = {b: j for j, b in enumerate(hit)}
            self._basis[k] = (hit, index)
            return hit
        return hit[0]

    def index(self, k: int) -> dict:
        self.basis(k)
        return self._basis[k][1]

    def d_entries(self, entries: dict, k: int) -> dict:
        """Differential of a degree-``k`` map given as ``{(r, c): element}``."""
        alg, x, y = self.alg, self.x, self.y
        out: dict = {}
        ycols, xrows = y.cols(), x.rows()
        sk = _sgn(k)
        for (r, c), f in entries.items():
            if not f:
                continue
            acc = out.setdefault((r, c), {})
            sr = _sgn(y.summands[r][1])
            for p, a in f.items():
                axpy(acc, sr * a, alg.d_path(p))
            for r2, e in ycols.get(r, []):
                axpy(out.setdefault((r2, c), {}), 1, alg.mul(e, f))
            for c2, e in xrows.get(c, []):
                axpy(out.setdefault((r, c2), {}), -sk, alg.mul(f, e))
        return {rc: v for rc, v in out.items() if v}

    def differential(self, k: int) -> list[dict]:
        """Images of the degree-``k`` basis as vectors in degree ``k + 1``."""
        alg, x, y = self.alg, self.x, self.y
        target = self.index(k + 1)
        ycols, xrows = y.cols(), x.rows()
        sk = _sgn(k)
        cols = []
        for r, c, p in self.basis(k):
            v: dict = {}
            sr = _sgn(y.summands[r][1])
            for q, a in alg.d_path(p).items():
                _acc(v, target[(r, c, q)], sr * a)
            for r2, e in ycols.get(r, []):
                for q0, a in e.items():
                    q = alg.mul_path(q0, p)
                    if q is not None:
                        _acc(v, target[(r2, c, q)], a)
            for c2, e in xrows.get(c, []):
                for q0, a in e.items():
                    q = alg.mul_path(p, q0)
                    if q is not None:
                        _acc(v, target[(r, c2, q)], -sk * a)
            cols.append(v)
        return cols

    def to_entries(self, vec: dict, k: int) -> dict:
        basis = self.basis(k)
        out: dict = {}
        for j, a in vec.items():
            r, c, p = basis[j]
            axpy(out.setdefault((r, c), {}), a, {p: 1})
        return {rc: e for rc, e in out.items() if e}

    def to_vector(self, entries: dict, k: int) -> dict:
        idx = self.index(k)
        v: dict = {}
        for (r, c), e in entries.items():
            for p, a in e.items():
                _acc(v, idx[(r, c, p)], a)
        return v

    def cycles(self, k: int) -> list[dict]:
        return kernel(self.differential(k))

    def cohomology(self, k: int):
        return cohomology(self.differential(k - 1), self.differential(k))


def _acc(v: dict, key, a) -> None:
    n = v.get(key, 0) + a
    if n:
        v[key] = n
    else:
        v.pop(key, None)


@dataclass
class HomResult:
    degree: int
    dimension: int
    basis: list = field(repr=False, default_factory=list)
    truncation: object = None
    stable: bool = True

    def to_json(self) -> dict:
        return {"degree": self.degree, "dimension": self.dimension,
                "truncation": self.truncation, "stable": self.stable}


def hom_derived(x: PerfModule, y: PerfModule, n: int, check_stability: bool = False, delta: int = 2) -> HomResult:
    """``dim H^n Hom(x, y)`` with representative closed maps."""
    h = HomComplex(x, y)
    dim, reps = h.cohomology(n)
    alg = x.alg
    stable = True
    if check_stability and alg.truncation is not None:
        alg2 = alg.with_truncation(alg.truncation + delta)
        dim2, _ = HomComplex(x.over(alg2), y.over(alg2)).cohomology(n)
        stable = dim == dim2
    return HomResult(n, dim, [h.to_entries(r, n) for r in reps], alg.truncation, stable)


def compose(g: dict, f: dict, alg: DgPathAlgebra) -> dict:
    """Matrix product ``g f`` of maps given as ``{(r, c): element}``."""
    by_row: dict = {}
    for (j, c), e in f.items():
        by_row.setdefault(j, []).append((c, e))
    out: dict = {}
    for (r, j), e in g.items():
        for c, e2 in by_row.get(j, []):
            axpy(out.setdefault((r, c), {}), 1, alg.mul(e, e2))
    return {rc: v for rc, v in out.items() if v}


def identity_map(x: PerfModule) -> dict:
    return {(k, k): x.alg.e(v) for k, (v, _) in enumerate(x.summands)}


def is_closed(f: dict, x: PerfModule, y: PerfModule, k: int = 0) -> bool:
    return not HomComplex(x, y).d_entries(f, k)


# ------------------------------------------------------------ cones, models


def cone(f: dict, x: PerfModule, y: PerfModule, check: bool = True) -> PerfModule:
    """Cone of a closed degree-0 map ``f: x -> y``: ``y (+) Sigma x``."""
    if check:
        res = HomComplex(x, y).d_entries(f, 0)
        if res:
            raise ValueError("map is not closed; residual " + "; ".join(
                f"({r},{c}): {x.alg.format(e)}" for (r, c), e in sorted(res.items())))
    n = len(y)
    summands = list(y.summands) + [(v, s + 1) for v, s in x.summands]
    delta = dict(y.delta)
    for (r, c), e in f.items():
        delta[(r, n + c)] = e
    for (r, c), e in x.delta.items():
        delta[(n + r, n + c)] = _scaled(-1, e)
    return PerfModule(x.alg, summands, delta)


def cocone(f: dict, x: PerfModule, y: PerfModule, check: bool = True) -> PerfModule:
    return shift(cone(f, x, y, check), -1)


def unit_inverse(u: dict, alg: DgPathAlgebra, v: int) -> dict:
    """Inverse of a degree-0 element of ``e_v A e_v`` with invertible constant part."""
    e = alg.trivial(v)
    lam = u.get(e)
    if not lam:
        raise ValueError("element has no invertible constant part")
    li = inverse(lam)
    n = {p: -li * a for p, a in u.items() if p != e}
    out = {e: coeff(1)}
    term = {e: coeff(1)}
    for _ in range(10_000):
        term = alg.mul(term, n)
        if not term:
            return {p: li * a for p, a in out.items()}
        axpy(out, 1, term)
    raise ValueError("radical part of a unit is not nilpotent at this truncation")


def minimal_model(z: PerfModule) -> PerfModule:
    """Cancel summand pairs joined by entries with invertible constant part.

    Removing ``r`` and ``c`` with ``u = delta[r, c]`` a unit replaces the rest of
    delta by ``delta - delta[:, c] u^{-1} delta[r, :]``.  This is the usual
    Gaussian elimination of a contractible summand.
    """
    alg = z.alg
    summands = list(z.summands)
    delta = {rc: dict(e) for rc, e in z.delta.items()}
    alive = set(range(len(summands)))
    while True:
        pick = None
        for (r, c), e in sorted(delta.items()):
            v = summands[r][0]
            if summands[c][0] == v and alg.trivial(v) in e:
                pick = (r, c)
                break
        if pick is None:
            break
        r, c = pick
        uinv = unit_inverse(delta[(r, c)], alg, summands[r][0])
        col = [(R, e) for (R, C), e in delta.items() if C == c and R != r]
        row = [(C, e) for (R, C), e in delta.items() if R == r and C != c]
        for R, e1 in col:
            left = alg.mul(e1, uinv)
            if not left:
                continue
            for C, e2 in row:
                upd = alg.mul(left, e2)
                if upd:
                    acc = delta.setdefault((R, C), {})
                    axpy(acc, -1, upd)
                    if not acc:
                        del delta[(R, C)]
        delta = {(R, C): e for (R, C), e in delta.items() if R not in (r, c) and C not in (r, c)}
        alive -= {r, c}
    keep = sorted(alive)
    pos = {k: j for j, k in enumerate(keep)}
    return PerfModule(alg, [summands[k] for k in keep],
                      {(pos[r], pos[c]): e for (r, c), e in delta.items()}, z.name)


# ------------------------------------------------------------ invariants


def support(x: PerfModule) -> list[int]:
    """Shifts ``j`` with ``Hom(x, Sigma^j S_i) != 0`` for some simple ``S_i``."""
    if not x.is_minimal():
        x = minimal_model(x)
    return sorted(set(x.shifts()))


@dataclass(frozen=True)
class K0Class:
    vertices: tuple
    vector: tuple

    def to_json(self) -> dict:
        return dict(zip(self.vertices, self.vector))


def k0_class(x: PerfModule) -> K0Class:
    vec = [0] * len(x.alg.vertices)
    for v, s in x.summands:
        vec[v] += _sgn(s)
    return K0Class(x.alg.vertices, tuple(vec))


def k0_determinant(xs) -> int:
    """Determinant of the matrix of classes (rows = objects)."""
    from fractions import Fraction

    m = [[Fraction(a) for a in k0_class(x).vector] for x in xs]
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        return 0
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return int(det)


@dataclass
class IsoResult:
    isomorphic: bool
    witness: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic


def iso_test(x: PerfModule, y: PerfModule, seed: int = 0, tries: int = 4) -> IsoResult:
    """Decide ``x ~ y`` for minimal modules.

    A closed degree-0 map whose constant blocks (same vertex, same shift) are
    invertible is an isomorphism.  Such maps form a Zariski-open subset of the
    closed maps, so a few random combinations of a basis find one if any exists.
    """
    if not x.is_minimal():
        x = minimal_model(x)
    if not y.is_minimal():
        y = minimal_model(y)
    if x.multiset() != y.multiset():
        return IsoResult(False, None, "summand multisets differ")
    if not len(x):
        return IsoResult(True, {}, "both zero")
    h = HomComplex(x, y)
    z = h.cycles(0)
    if not z:
        return IsoResult(False, None, "no closed degree-0 maps")
    alg = x.alg
    blocks: dict = {}
    for k, key in enumerate(x.summands):
        blocks.setdefault(key, ([], []))[1].append(k)
    for k, key in enumerate(y.summands):
        blocks[key][0].append(k)
    basis = h.basis(0)
    rng = random.Random(seed)
    for _ in range(tries):
        vec: dict = {}
        for zv in z:
            axpy(vec, coeff(rng.randint(1, 997)), zv)
        const: dict = {}
        for j, a in vec.items():
            r, c, p = basis[j]
            if p[0] < 0:
                const[(r, c)] = a
        if all(
            dense_rank([[const.get((r, c), 0) for c in cols] for r in rows]) == len(rows)
            for rows, cols in blocks.values()
        ):
            return IsoResult(True, h.to_entries(vec, 0), "closed map with invertible constant part")
    return IsoResult(False, None, "no closed map with invertible constant part found")


# ------------------------------------------------- finite-dimensional modules


class FinDimDgModule:
    """Finite-dimensional right dg module given on a basis.

    ``basis[k] = (vertex, degree)``; ``d[k]`` and ``act[(k, arrow)]`` are sparse
    vectors.  The right action of an arrow ``rho`` sends ``N e_{t(rho)}`` to
    ``N e_{s(rho)}``.
    """

    def __init__(self, alg: DgPathAlgebra, basis, d=None, act=None, name=None):
        self.alg = alg
        self.basis = [tuple(b) for b in basis]
        self.d = {k: dict(v) for k, v in (d or {}).items() if v}
        self.act = {k: dict(v) for k, v in (act or {}).items() if v}
        self.name = name

    def __len__(self):
        return len(self.basis)

    def act_path(self, vec: dict, p) -> dict:
        if p[0] < 0:
            v = -p[0] - 1
            return {k: a for k, a in vec.items() if self.basis[k][0] == v}
        cur = vec
        for arrow in p:
            nxt: dict = {}
            for k, a in cur.items():
                img = self.act.get((k, arrow))
                if img:
                    axpy(nxt, a, img)
            cur = nxt
            if not cur:
                break
        return cur

    def shifted(self, j: int) -> "FinDimDgModule":
        """``Sigma^j``: degrees drop by ``j`` and the differential picks up ``(-1)^j``."""
        s = _sgn(j)
        return FinDimDgModule(
            self.alg,
            [(v, dg - j) for v, dg in self.basis],
            {k: {i: s * a for i, a in vec.items()} for k, vec in self.d.items()},
            self.act,
            self.name,
        )

    def check(self) -> list[str]:
        """Differential squares to zero and satisfies the Leibniz rule."""
        errs = []
        for k in range(len(self.basis)):
            dd: dict = {}
            for i, a in self.d.get(k, {}).items():
                axpy(dd, a, self.d.get(i, {}))
            if dd:
                errs.append(f"d^2 != 0 on basis vector {k}")
        alg = self.alg
        for (k, arrow), img in self.act.items():
            lhs: dict = {}
            for i, a in img.items():
                axpy(lhs, a, self.d.get(i, {}))
            rhs = self.act_path(self.d.get(k, {}), (arrow,))
            sign = _sgn(self.basis[k][1])
            axpy(rhs, sign, self.act_element({k: 1}, alg.darr[arrow]))
            diff = dict(lhs)
            axpy(diff, -1, rhs)
            if diff:
                errs.append(f"Leibniz fails for basis vector {k} and arrow {alg.names[arrow]}")
        return errs

    def act_element(self, vec: dict, x: dict) -> dict:
        out: dict = {}
        for p, a in x.items():
            axpy(out, a, self.act_path(vec, p))
        return out

    def total_dimension(self) -> int:
        return len(self.basis)


def simple_module(alg: DgPathAlgebra, v) -> FinDimDgModule:
    v = alg.vindex[v] if not isinstance(v, int) else v
    return FinDimDgModule(alg, [(v, 0)], name=f"S{alg.vertices[v]}")


def hom_to_findim(x: PerfModule, n: FinDimDgModule, shift_by: int = 0) -> int:
    """``dim H^0 Hom(x, Sigma^shift n) = dim H^shift Hom(x, n)``.

    A degree-``k`` map sends generator ``c`` to ``n_c`` in ``N e_{v_c}`` of degree
    ``k - s_c``.  Its differential is ``d_N(n_c) - (-1)^k sum_r n_r delta_rc``.
    """

    def basis(k):
        out = []
        for c, (vc, sc) in enumerate(x.summands):
            for b, (vb, db) in enumerate(n.basis):
                if vb == vc and db == k - sc:
                    out.append((c, b))
        return out

    def diff(k):
        src, tgt = basis(k), basis(k + 1)
        idx = {t: j for j, t in enumerate(tgt)}
        out = []
        for c, b in src:
            v: dict = {}
            for b2, a in n.d.get(b, {}).items():
                _acc(v, idx[(c, b2)], a)
            # n_c = e_b contributes to every column c2 with delta[c, c2] != 0
            for c2, e in x.rows().get(c, []):
                img = n.act_element({b: 1}, e)
                for b2, a in img.items():
                    _acc(v, idx[(c2, b2)], -_sgn(k) * a)
            out.append(v)
        return out

    dim, _ = cohomology(diff(shift_by - 1), diff(shift_by))
    return dim


def support_oracle(x: PerfModule, window=None) -> list[int]:
    """Support computed through ``Hom(x, Sigma^j S_i)`` for all simples."""
    if not len(x):
        return []
    lo, hi = window or (x.min_shift() - 1, x.max_shift() + 1)
    out = []
    for j in range(lo, hi + 1):
        for v in range(len(x.alg.vertices)):
            if hom_to_findim(x, simple_module(x.alg, v), j):
                out.append(j)
                break
    return out


# ----------------------------------------------------------- truncations


def lift_to_resolution(x: PerfModule, target: PerfModule, top: int, constants: dict) -> dict:
    """Closed degree-0 map ``x -> target`` with prescribed constant coefficients.

    ``constants`` maps columns ``c`` of ``x`` to the required coefficient of the
    trivial path in entry ``(top, c)``.  Returns the map as entries.
    """
    h = HomComplex(x, target)
    basis = h.basis(0)
    dcols = h.differential(0)
    width = len(h.basis(1))
    watch = {c: width + j for j, c in enumerate(sorted(constants))}
    cols = []
    for j, (r, c, p) in enumerate(basis):
        col = dict(dcols[j])
        if r == top and p[0] < 0 and c in watch:
            col[watch[c]] = coeff(1)
        cols.append(col)
    rhs = {watch[c]: coeff(a) for c, a in constants.items() if a}
    sol = solve(cols, rhs)
    if sol is None:
        raise ValueError("no closed map with the prescribed constant part")
    return h.to_entries(sol, 0)


def truncate_le(x: PerfModule, s: int, max_steps: int = 500) -> PerfModule:
    """Minimal model of ``tau_{<= s} x``.

    While homology sits above degree ``s``: pick a generator ``(j, q)`` of
    minimal shift, map ``x`` onto ``Sigma^q S_j`` through the minimal resolution
    of ``S_j``, and replace ``x`` by the cocone.  Each step lowers the top
    homology by one dimension.
    """
    from .mutation import resolve_simple

    x = minimal_model(x) if not x.is_minimal() else x
    for _ in range(max_steps):
        if not len(x) or -x.min_shift() <= s:
            return x
        q = x.min_shift()
        cols = [c for c, (_, t) in enumerate(x.summands) if t == q]
        c0 = cols[0]
        j = x.summands[c0][0]
        res = resolve_simple(x.alg, j)
        target = shift(res.module, q)
        top = res.top_index
        same = [c for c in cols if x.summands[c][0] == j]
        f = lift_to_resolution(x, target, top, {c: (1 if c == c0 else 0) for c in same})
        x = minimal_model(cocone(f, x, target, check=False))
    raise RuntimeError("truncation did not terminate; is H^0 finite?")


def truncate_ge(x: PerfModule, s: int) -> FinDimDgModule:
    """``tau_{>= s+1} x = x / tau_{<= s} x`` as an explicit finite module.

    Degree ``s+1`` keeps ``X^{s+1}``; degree ``s`` piece is ``X^s / Z^s`` (a
    chosen complement of the cycles); above ``s+1`` everything is kept.
    """
    alg = x.alg
    pieces: dict[int, list] = {}
    for n in range(s, 1):
        pieces[n] = [(c, p) for c, (vc, sc) in enumerate(x.summands)
                     for p in _paths_with_target(alg, vc, n + sc)]
    index = {n: {b: k for k, b in enumerate(bs)} for n, bs in pieces.items()}

    def d_vec(c, p, n):
        out: dict = {}
        sc = x.summands[c][1]
        for q, a in alg.d_path(p).items():
            _acc(out, (c, q), _sgn(sc) * a)
        for r, e in x.cols().get(c, []):
            for q0, a in e.items():
                q = alg.mul_path(q0, p)
                if q is not None:
                    _acc(out, (r, q), a)
        return out

    # complement of Z^s inside X^s
    low = pieces.get(s, [])
    dmat = [{index[s + 1][b]: a for b, a in d_vec(c, p, s).items()} for c, p in low] if s + 1 <= 0 else []
    z = kernel(dmat) if dmat else [{k: 1} for k in range(len(low))]
    keep_low = quotient_basis([{k: 1} for k in range(len(low))], z)
    basis, labels = [], {}
    # relabel: the degree-s quotient is spanned by images of chosen basis vectors
    for k in keep_low:
        c, p = low[k]
        labels[("q", k)] = len(basis)
        basis.append((alg.source(p), s))
    for n in range(s + 1, 1):
        for k, (c, p) in enumerate(pieces[n]):
            labels[(n, k)] = len(basis)
            basis.append((alg.source(p), n))
    # express degree-s vectors through the complement, modulo cycles
    solver = Solver([{k: 1} for k in keep_low] + list(z))

    def reduce_low(vec: dict) -> dict:
        sol = solver.solve(vec)
        if sol is None:
            raise ValueError("quotient reduction failed")
        return {labels[("q", keep_low[j])]: a for j, a in sol.items() if j < len(keep_low)}

    d, act = {}, {}
    for n in range(s, 1):
        items = [(k, b) for k, b in enumerate(pieces[n])] if n > s else [(k, low[k]) for k in keep_low]
        for k, (c, p) in items:
            me = labels[("q", k)] if n == s else labels[(n, k)]
            if n + 1 <= 0:
                vec = d_vec(c, p, n)
                d[me] = {labels[(n + 1, index[n + 1][b])]: a for b, a in vec.items()}
            for arrow in range(len(alg.names)):
                if alg.tgt[arrow] != alg.source(p):
                    continue
                q = alg.mul_path(p, (arrow,))
                n2 = n + alg.deg[arrow]
                if q is None or n2 < s:
                    continue
                if n2 == s:
                    vec = {index[s][(c, q)]: coeff(1)}
                    img = reduce_low(vec)
                else:
                    img = {labels[(n2, index[n2][(c, q)])]: coeff(1)}
                if img:
                    act[(me, arrow)] = img
    return FinDimDgModule(alg, basis, d, act, name=f"tau>={s + 1}")


def _paths_with_target(alg: DgPathAlgebra, v: int, degree: int) -> list:
    out = []
    for src in range(len(alg.vertices)):
        out.extend(alg.paths(src, v, degree))
    return out


def smart_truncate(x: PerfModule, s: int, side: str):
    """``side='<='``: minimal model of ``tau_{<=s} x``; ``'>='``: ``tau_{>=s+1} x``."""
    if side in ("<=", "le"):
        return truncate_le(x, s)
    if side in (">=", "ge"):
        return truncate_ge(x, s)
    raise ValueError("side must be '<=' or '>='")


def homology_of(x: PerfModule, window) -> dict:
    """``{(vertex, degree): dim H^degree(x e_vertex)}`` over a degree window."""
    out = {}
    for v in range(len(x.alg.vertices)):
        p = projective(x.alg, v)
        h = HomComplex(p, x)
        for n in range(window[0], window[1] + 1):
            dim, _ = h.cohomology(n)
            if dim:
                out[(v, n)] = dim
    return out


def summand_rank(xs) -> int:
    return rank([{k: a for k, a in enumerate(k0_class(x).vector) if a} for x in xs])
