"""Low-degree Hochschild homology via the normalized vertex-relative bar complex.

A chain ``a0[a1|...|an]`` is a cyclically composable tuple of paths with
``a1..an`` nontrivial.  Its homological degree is ``n - sum |ai|``.  Tensor
legs are cut at total length ``L``.  Internal differentials never shorten a
path, so the cut is a quotient complex.

Signs follow the Koszul rule with ``eps_i = |a0| + sum_{j <= i} (|aj| - 1)``::

    b = d(a0)[...] - sum_i (-1)^eps_{i-1} a0[..|d ai|..]
        + (-1)^|a0| a0a1[a2|..]
        + sum_{0<i<n} (-1)^eps_i a0[..|ai a(i+1)|..]
        - (-1)^((|an|-1) eps_{n-1}) an a0[a1|..|a(n-1)]
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import DgPathAlgebra
from .config import delta_default
from .linalg import cohomology, rank

Chain = tuple  # tuple of paths


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


class BarComplex:
    """Chains of the truncated normalized bar complex, graded homologically."""

    def __init__(self, alg: DgPathAlgebra):
        self.alg = alg
        self.limit = alg.truncation
        self._chains: dict[int, list] = {}
        self._by_degree: dict[int, list] = {}

    def _paths_of(self, d: int) -> list:
        if d not in self._by_degree:
            self._by_degree[d] = self.alg.paths(None, None, d)
        return self._by_degree[d]

    def _length(self, ch: Chain) -> int:
        return sum(self.alg.length(p) for p in ch)

    def _fits(self, ch: Chain) -> bool:
        return self.limit is None or self._length(ch) <= self.limit

    def chains(self, h: int) -> list:
        """Basis of the degree-``h`` chains, in a deterministic order."""
        if h in self._chains:
            return self._chains[h]
        alg = self.alg
        out = []
        if h >= 0:
            for n in range(h + 1):
                total = n - h

                def extend(prefix, budget, left):
                    if left == 0:
                        if budget == 0 and alg.source(prefix[-1]) == alg.target(prefix[0]) and self._fits(prefix):
                            out.append(tuple(prefix))
                        return
                    want = alg.source(prefix[-1])
                    degrees = [budget] if left == 1 else range(budget, 1)
                    for d in degrees:
                        for p in self._paths_of(d):
                            if p[0] < 0 or alg.target(p) != want:
                                continue
                            nxt = prefix + [p]
                            if self.limit is not None and self._length(nxt) > self.limit:
                                continue
                            extend(nxt, budget - d, left - 1)

                for d0 in range(total, 1):
                    for a0 in self._paths_of(d0):
                        extend([a0], total - d0, n)
        out.sort(key=lambda ch: (len(ch), tuple((alg.length(p), p) for p in ch)))
        self._chains[h] = out
        return out

    def index(self, h: int) -> dict:
        return {c: k for k, c in enumerate(self.chains(h))}

    def boundary_chain(self, ch: Chain) -> dict:
        """``b(ch)`` as ``{chain: coeff}`` (cut at the length limit)."""
        alg = self.alg
        out: dict = {}
        n = len(ch) - 1
        deg = [alg.degree(p) for p in ch]
        eps = [deg[0]]
        for i in range(1, n + 1):
            eps.append(eps[-1] + deg[i] - 1)

        def add(c, a):
            if not self._fits(c):
                return
            if any(p[0] < 0 for p in c[1:]):
                return
            v = out.get(c, 0) + a
            if v:
                out[c] = v
            else:
                out.pop(c, None)

        for q, a in alg.d_path(ch[0]).items():
            add((q,) + ch[1:], a)
        for i in range(1, n + 1):
            s = -_sgn(eps[i - 1])
            for q, a in alg.d_path(ch[i]).items():
                add(ch[:i] + (q,) + ch[i + 1:], s * a)
        if n >= 1:
            p = alg.mul_path(ch[0], ch[1])
            if p is not None:
                add((p,) + ch[2:], _sgn(deg[0]))
            for i in range(1, n):
                p = alg.mul_path(ch[i], ch[i + 1])
                if p is not None:
                    add(ch[:i] + (p,) + ch[i + 2:], _sgn(eps[i]))
            p = alg.mul_path(ch[n], ch[0])
            if p is not None:
                add((p,) + ch[1:n], -_sgn((deg[n] - 1) * eps[n - 1]))
        return out

    def boundary(self, h: int) -> list[dict]:
        """Images of the degree-``h`` basis as vectors on degree ``h - 1``."""
        idx = self.index(h - 1)
        cols = []
        for ch in self.chains(h):
            img = self.boundary_chain(ch)
            cols.append({idx[c]: a for c, a in img.items()})
        return cols

    def check_square_zero(self, h: int) -> bool:
        """``b o b = 0`` on all degree-``h`` chains."""
        for ch in self.chains(h):
            acc: dict = {}
            for c, a in self.boundary_chain(ch).items():
                for c2, a2 in self.boundary_chain(c).items():
                    v = acc.get(c2, 0) + a * a2
                    if v:
                        acc[c2] = v
                    else:
                        acc.pop(c2, None)
            if acc:
                return False
        return True

    def format_chain(self, ch: Chain) -> str:
        head = self.alg.path_str(ch[0])
        if len(ch) == 1:
            return head
        return head + "[" + "|".join(self.alg.path_str(p) for p in ch[1:]) + "]"

    def homology(self, h: int):
        """``(dim HH_h, representative cycles as strings)``."""
        dim, reps = cohomology(self.boundary(h + 1), self.boundary(h))
        chains = self.chains(h)
        texts = []
        for r in reps:
            texts.append(" + ".join(f"{a}*{self.format_chain(chains[k])}" for k, a in sorted(r.items())))
        return dim, texts


@dataclass
class HochschildSlice:
    p_max: int
    dims: dict
    hh0_basis: list
    truncation: object
    stable: bool | None
    compared: dict = field(default_factory=dict)
    square_zero: bool = True
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "model": "truncated l-relative model (reduced bar complex, legs cut by total length)",
            "p_max": self.p_max,
            "dims": {str(p): d for p, d in self.dims.items()},
            "hh0_basis": list(self.hh0_basis),
            "witnesses": {str(p): w for p, w in self.witnesses.items()},
            "truncation": self.truncation,
            "stable": self.stable,
            "compared": {str(p): d for p, d in self.compared.items()},
            "square_zero": self.square_zero,
        }


def _dims(alg: DgPathAlgebra, p_max: int):
    bar = BarComplex(alg)
    dims, reps = {}, {}
    for p in range(p_max + 1):
        dims[p], reps[p] = bar.homology(p)
    sq = all(bar.check_square_zero(h) for h in range(1, p_max + 2))
    return dims, reps, sq


def hochschild_homology(alg: DgPathAlgebra, p_max: int, delta: int | None = None) -> HochschildSlice:
    """``HH_p`` for ``0 <= p <= p_max``, with a stability comparison at ``L + delta``."""
    dims, reps, sq = _dims(alg, p_max)
    stable, compared = None, {}
    if alg.truncation is not None:
        delta = delta_default() if delta is None else delta
        compared, _, _ = _dims(alg.with_truncation(alg.truncation + delta), p_max)
        stable = compared == dims
    else:
        stable = True
    return HochschildSlice(p_max, dims, reps.get(0, []), alg.truncation, stable, compared, sq,
                           {p: r for p, r in reps.items() if p > 0 and r})


def base_loops(alg: DgPathAlgebra) -> list[int]:
    """Indices of loops of the doubled quiver (the added ``t`` loops excluded)."""
    tl = set(alg.info.get("tloops", {}).values())
    return [k for k, n in enumerate(alg.names) if alg.src[k] == alg.tgt[k] and n not in tl]


def loop_obstruction(alg: DgPathAlgebra, p: int) -> list[str]:
    """Loops of degree ``-p`` with zero differential."""
    return [alg.names[k] for k in base_loops(alg) if alg.deg[k] == -p and not alg.darr[k]]


@dataclass
class RigidityReport:
    r: int
    dims: dict
    vertices: int
    trivial_paths_independent: bool
    loops: dict
    stable: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.dims.get(0) == self.vertices
            and self.trivial_paths_independent
            and all(self.dims.get(p, 0) == 0 for p in range(1, self.r))
        )

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "dims": {str(p): d for p, d in self.dims.items()},
            "vertices": self.vertices,
            "trivial_paths_independent": self.trivial_paths_independent,
            "loop_witnesses": {str(p): ls for p, ls in self.loops.items() if ls},
            "stable": self.stable,
            "rigid": self.ok,
            "caveat": "computed on the length-truncated model",
        }


def rigidity_check(alg: DgPathAlgebra, r: int) -> RigidityReport:
    """``HH_0`` spanned by the trivial paths and ``HH_p = 0`` for ``1 <= p <= r - 1``."""
    hs = hochschild_homology(alg, max(r - 1, 0))
    bar = BarComplex(alg)
    idx = bar.index(0)
    triv = [{idx[(alg.trivial(v),)]: 1} for v in range(len(alg.vertices))]
    independent = rank(triv + bar.boundary(1)) - rank(bar.boundary(1)) == len(triv)
    loops = {p: loop_obstruction(alg, p) for p in range(1, r)}
    return RigidityReport(r, hs.dims, len(alg.vertices), independent, loops, hs.stable)
