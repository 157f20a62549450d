"""Graded path dg algebras modulo a path-length cutoff.

A path is a tuple of arrow indices written left to right, so ``(b, a)`` is the
composite "first ``a``, then ``b``".  The trivial path at vertex ``v`` is
``(-(v + 1),)``.  Elements are dicts ``{path: coefficient}``.

Two truncation modes exist:

* ``truncation=L`` (an int): work in ``A / m^(L+1)``; longer paths vanish.
* ``truncation=None``: exact graded mode.  Needs the degree-0 arrows to form
  an acyclic quiver.  Every degree component is then finite and is enumerated
  in full, so results are exact for the requested degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .config import delta_default, truncation_default
from .linalg import axpy, cohomology
from .quiver import format_terms, parse_terms
from .scalars import coeff

Path = tuple


class TruncationError(ValueError):
    pass


class DgPathAlgebra:
    """Path algebra of a finite graded quiver with a differential on arrows."""

    def __init__(
        self,
        vertices: Sequence[str],
        arrows: Sequence[tuple[str, int, int, int]],
        differential: dict | None = None,
        truncation: int | None | str = "default",
        info: dict | None = None,
    ):
        self.vertices = tuple(vertices)
        self.names = tuple(a[0] for a in arrows)
        self.src = tuple(a[1] for a in arrows)
        self.tgt = tuple(a[2] for a in arrows)
        self.deg = tuple(a[3] for a in arrows)
        self.index = {n: k for k, n in enumerate(self.names)}
        self.vindex = {v: k for k, v in enumerate(self.vertices)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate arrow name")
        for k, d in enumerate(self.deg):
            if d > 0:
                raise ValueError(f"arrow {self.names[k]} has positive degree {d}")
        self.truncation = truncation_default() if truncation == "default" else truncation
        if self.truncation is not None and self.truncation < 1:
            raise ValueError("truncation order must be at least 1")
        self.info = dict(info or {})
        darr = []
        differential = differential or {}
        for k, n in enumerate(self.names):
            dv = {p: coeff(c) for p, c in dict(differential.get(n, {})).items() if c}
            for p in dv:
                if self.source(p) != self.src[k] or self.target(p) != self.tgt[k]:
                    raise ValueError(f"d({n}) contains a path with wrong endpoints")
                if self.degree(p) != self.deg[k] + 1:
                    raise ValueError(f"d({n}) is not of degree |{n}|+1")
            darr.append(dv)
        self.darr = tuple(darr)
        if self.truncation is None and self.degree0_longest() is None:
            raise TruncationError("exact mode needs an acyclic degree-0 subquiver")
        self._dcache: dict = {}
        self._pcache: tuple | None = None

    # ------------------------------------------------------------------ paths

    @staticmethod
    def trivial(v: int) -> Path:
        return (-(v + 1),)

    @staticmethod
    def is_trivial(p: Path) -> bool:
        return p[0] < 0

    def source(self, p: Path) -> int:
        return -p[0] - 1 if p[0] < 0 else self.src[p[-1]]

    def target(self, p: Path) -> int:
        return -p[0] - 1 if p[0] < 0 else self.tgt[p[0]]

    def degree(self, p: Path) -> int:
        if p[0] < 0:
            return 0
        deg = self.deg
        return sum(deg[a] for a in p)

    @staticmethod
    def length(p: Path) -> int:
        return 0 if p[0] < 0 else len(p)

    def fits(self, p: Path) -> bool:
        return self.truncation is None or self.length(p) <= self.truncation

    def mul_path(self, p: Path, q: Path):
        """``p * q`` (``q`` first) or ``None`` if not composable or too long."""
        if p[0] < 0:
            return q if self.target(q) == -p[0] - 1 else None
        if q[0] < 0:
            return p if self.src[p[-1]] == -q[0] - 1 else None
        if self.src[p[-1]] != self.tgt[q[0]]:
            return None
        if self.truncation is not None and len(p) + len(q) > self.truncation:
            return None
        return p + q

    def path_str(self, p: Path) -> str:
        if p[0] < 0:
            return f"e_{self.vertices[-p[0] - 1]}"
        return " ".join(self.names[a] for a in p)

    def path_sort_key(self, p: Path):
        return (self.degree(p), self.length(p), p)

    # --------------------------------------------------------------- elements

    def e(self, v) -> dict:
        v = self.vindex[v] if not isinstance(v, int) else v
        return {self.trivial(v): coeff(1)}

    def arrow(self, name: str) -> dict:
        return {(self.index[name],): coeff(1)}

    def word(self, *names: str) -> dict:
        if not names:
            raise ValueError("empty word")
        p = tuple(self.index[n] for n in names)
        for k in range(len(p) - 1):
            if self.src[p[k]] != self.tgt[p[k + 1]]:
                raise ValueError(f"word {' '.join(names)} is not composable")
        return {p: coeff(1)} if self.fits(p) else {}

    def parse_element(self, text: str) -> dict:
        """Parse ``c*(a b) + ...`` where ``e_v`` names trivial paths."""
        out: dict = {}
        if text.strip() == "0":
            return out
        for word, c in parse_terms(text):
            if len(word) == 1 and word[0].startswith("e_") and word[0][2:] in self.vindex:
                x = self.e(word[0][2:])
            else:
                x = self.word(*word)
            axpy(out, c, x)
        return out

    def format(self, x: dict) -> str:
        if not x:
            return "0"
        items = sorted(x.items(), key=lambda kv: self.path_sort_key(kv[0]))
        return format_terms([(self.path_str(p).split(), c) for p, c in items])

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for p, a in x.items():
            for q, b in y.items():
                r = self.mul_path(p, q)
                if r is None:
                    continue
                n = out.get(r, 0) + a * b
                if n:
                    out[r] = n
                else:
                    out.pop(r, None)
        return out

    def element_degree(self, x: dict):
        degs = {self.degree(p) for p in x}
        if len(degs) > 1:
            raise ValueError(f"mixed-degree element (degrees {sorted(degs)})")
        return degs.pop() if degs else None

    # ----------------------------------------------------------- differential

    def d_path(self, p: Path) -> dict:
        hit = self._dcache.get(p)
        if hit is not None:
            return hit
        out: dict = {}
        if p[0] >= 0:
            L = self.truncation
            sign_deg = 0
            for k, a in enumerate(p):
                pre, post = p[:k], p[k + 1:]
                sign = -1 if sign_deg % 2 else 1
                for q, c in self.darr[a].items():
                    if q[0] < 0:
                        mid = pre + post
                        if not mid:
                            mid = q
                    else:
                        mid = pre + q + post
                    if L is not None and len(mid) > L:
                        continue
                    n = out.get(mid, 0) + sign * c
                    if n:
                        out[mid] = n
                    else:
                        out.pop(mid, None)
                sign_deg += self.deg[a]
        self._dcache[p] = out
        return out

    def d(self, x: dict) -> dict:
        """Graded Leibniz extension of the arrow differential."""
        self.element_degree(x)
        out: dict = {}
        for p, c in x.items():
            axpy(out, c, self.d_path(p))
        return out

    def check_d_squared(self):
        """``(True, None)`` or ``(False, (arrow, residual))`` for the first failure."""
        for k, n in enumerate(self.names):
            res = self.d(self.d({(k,): coeff(1)}))
            if res:
                return False, (n, res)
        return True, None

    # ------------------------------------------------------------ enumeration

    def degree0_longest(self):
        """Longest path of degree-0 arrows, or ``None`` if they contain a cycle."""
        zero = [k for k, d in enumerate(self.deg) if d == 0]
        n = len(self.vertices)
        indeg = [0] * n
        out_edges: dict[int, list[int]] = {v: [] for v in range(n)}
        for k in zero:
            out_edges[self.src[k]].append(self.tgt[k])
            indeg[self.tgt[k]] += 1
        order = [v for v in range(n) if indeg[v] == 0]
        longest = [0] * n
        seen = 0
        while order:
            v = order.pop()
            seen += 1
            for w in out_edges[v]:
                longest[w] = max(longest[w], longest[v] + 1)
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
        if seen < n:
            return None
        return max(longest, default=0)

    def _enumerate(self, min_degree: int):
        L = self.truncation
        by_key: dict[tuple[int, int, int], list] = {}
        layer = [self.trivial(v) for v in range(len(self.vertices))]
        degs = {p: 0 for p in layer}
        into: dict[int, list[int]] = {}
        for k in range(len(self.names)):
            into.setdefault(self.src[k], []).append(k)
        length = 0
        while layer:
            nxt = []
            for p in layer:
                dp = degs[p]
                by_key.setdefault((self.source(p), self.target(p), dp), []).append(p)
                if L is not None and length >= L:
                    continue
                t = self.target(p)
                for a in into.get(t, ()):
                    da = dp + self.deg[a]
                    if da < min_degree:
                        continue
                    q = (a,) if p[0] < 0 else (a,) + p
                    degs[q] = da
                    nxt.append(q)
            layer = nxt
            length += 1
        for v in by_key.values():
            v.sort(key=lambda p: (self.length(p), p))
        return by_key

    def paths(self, source: int | None = None, target: int | None = None, degree: int = 0) -> list:
        """Paths of the given degree, ordered by (length, arrow indices)."""
        if degree > 0:
            return []
        if self._pcache is None or self._pcache[0] > degree:
            lo = min(degree, -2) if self._pcache is None else min(degree, self._pcache[0] - 2)
            self._pcache = (lo, self._enumerate(lo))
        table = self._pcache[1]
        if source is not None and target is not None:
            return table.get((source, target, degree), [])
        out = []
        for (s, t, d), ps in table.items():
            if d == degree and (source is None or s == source) and (target is None or t == target):
                out.extend(ps)
        out.sort(key=lambda p: (self.length(p), p))
        return out

    def with_truncation(self, truncation) -> "DgPathAlgebra":
        arrows = list(zip(self.names, self.src, self.tgt, self.deg))
        diff = {n: self.darr[k] for k, n in enumerate(self.names)}
        return DgPathAlgebra(self.vertices, arrows, diff, truncation, self.info)

    # ---------------------------------------------------------------- homology

    def stability_bound(self, window) -> int | None:
        """Length beyond which no path of degree >= ``window[0]`` exists."""
        c = self.degree0_longest()
        if c is None:
            return None
        d = -window[0]
        neg = [-x for x in self.deg if x < 0]
        n_neg = d // min(neg) if neg else 0
        return n_neg + (n_neg + 1) * c

    def homology(self, window, pieces=None, delta: int | None = None) -> "HomologySlice":
        lo, hi = window
        if lo > hi:
            raise ValueError("empty degree window")
        dims, bases = self._homology_dims(window, pieces)
        bound = self.stability_bound(window)
        if self.truncation is None:
            stable, compared = True, (None, None)
        else:
            delta = delta_default() if delta is None else delta
            other = self.with_truncation(self.truncation + delta)
            dims2, _ = other._homology_dims(window, pieces)
            stable = dims == dims2
            compared = (self.truncation, self.truncation + delta)
        exact = self.truncation is None or (bound is not None and self.truncation >= bound + 1)
        return HomologySlice(
            window=(lo, hi),
            dims=dims,
            basis={p: [self.format(v) for v in b] for p, b in bases.items()},
            basis_elements=bases,
            stable=stable,
            compared=compared,
            exact=exact,
            pieces=pieces,
        )

    def _homology_dims(self, window, pieces):
        lo, hi = window
        s, t = (None, None) if pieces is None else pieces

        def basis(p):
            return self.paths(s, t, p)

        dims, bases = {}, {}
        for p in range(lo, hi + 1):
            cur = basis(p)
            below = basis(p - 1)
            above = basis(p + 1)
            idx_cur = {q: k for k, q in enumerate(cur)}
            idx_above = {q: k for k, q in enumerate(above)}
            d_in = [_coords(self.d_path(q), idx_cur) for q in below]
            d_out = [_coords(self.d_path(q), idx_above) for q in cur]
            n, reps = cohomology(d_in, d_out)
            dims[p] = n
            bases[p] = [{cur[k]: c for k, c in sorted(r.items())} for r in reps]
        return dims, bases


def _coords(x: dict, index: dict) -> dict:
    out = {}
    for p, c in x.items():
        k = index.get(p)
        if k is None:
            raise TruncationError(f"path {p} outside the enumerated basis")
        out[k] = c
    return out


@dataclass
class HomologySlice:
    window: tuple[int, int]
    dims: dict[int, int]
    basis: dict[int, list[str]]
    basis_elements: dict[int, list[dict]] = field(repr=False, default_factory=dict)
    stable: bool = True
    compared: tuple = (None, None)
    exact: bool = False
    pieces: tuple | None = None

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "pieces": list(self.pieces) if self.pieces else None,
            "dims": {str(k): v for k, v in sorted(self.dims.items())},
            "basis": {str(k): v for k, v in sorted(self.basis.items())},
            "stable": self.stable,
            "compared_truncations": list(self.compared),
            "exact": self.exact,
        }


class AlgebraElement:
    """Convenience wrapper: an element together with its algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: DgPathAlgebra, terms: dict | None = None):
        self.alg = alg
        self.terms = {p: coeff(c) for p, c in (terms or {}).items() if c and alg.fits(p)}

    @property
    def truncation_order(self):
        return self.alg.truncation

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, _terms(other))
        return AlgebraElement(self.alg, out)

    def __sub__(self, other):
        out = dict(self.terms)
        axpy(out, -1, _terms(other))
        return AlgebraElement(self.alg, out)

    def __neg__(self):
        return AlgebraElement(self.alg, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.alg, self.alg.mul(self.terms, other.terms))
        return AlgebraElement(self.alg, {p: c * other for p, c in self.terms.items()})

    def __rmul__(self, other):
        return AlgebraElement(self.alg, {p: other * c for p, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def d(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, self.alg.d(self.terms))

    @property
    def degree(self):
        return self.alg.element_degree(self.terms)

    def __str__(self):
        return self.alg.format(self.terms)

    __repr__ = __str__


def _terms(x):
    return x.terms if isinstance(x, AlgebraElement) else x


def leibniz_d(x, alg: DgPathAlgebra):
    """Differential of ``x`` (an :class:`AlgebraElement` or a term dict)."""
    if isinstance(x, AlgebraElement):
        return x.d()
    return alg.d(x)


def check_d_squared(alg: DgPathAlgebra):
    return alg.check_d_squared()


def homology(alg: DgPathAlgebra, window, pieces=None) -> HomologySlice:
    return alg.homology(window, pieces)


def stability_bound(alg: DgPathAlgebra, window):
    return alg.stability_bound(window)

