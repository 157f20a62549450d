"""Computations in the generalized m-cluster category through the fundamental domain.

Objects are minimal perfect modules.  For minimal ``X`` the top homology
sits in degree ``-min_shift(X)`` and ``X`` is left orthogonal to
``D^{<= y}`` exactly when ``max_shift(X) <= -y - 1``.  The fundamental
domain is then the set of minimal modules with all shifts in ``[0, m]``.

``Hom_C(pi X, Sigma^t pi Y)`` equals ``Hom_D(X, Sigma^t Y)`` whenever
``-min_shift(X) <= m - max_shift(Y) - t``.  Otherwise ``X`` is first
replaced by ``tau_{<= m - max_shift(Y) - t} X``, which has the same image in
the cluster category.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .modules import (
    PerfModule,
    direct_sum,
    hom_derived,
    hom_to_findim,
    iso_test,
    projective,
    shift,
    simple_module,
    truncate_le,
    zero_module,
)
from .mutation import calabi_yau_m, loops_at, mutations, truncation_oracle, _vertex


@dataclass
class FundamentalDomainTag:
    module: PerfModule
    m: int
    shift_used: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"module": self.module.to_json(), "shift_used": self.shift_used, "checks": dict(self.checks)}


def tag(x: PerfModule, m: int | None = None, shift_used: int = 0) -> FundamentalDomainTag:
    """Membership evidence for the fundamental domain, probed with shifted simples."""
    m = calabi_yau_m(x.alg) if m is None else m
    t = FundamentalDomainTag(x, m, shift_used)
    if not len(x):
        t.checks.update({"in_D<=0": True, "perp_D<=-m-1": True})
        return t
    simples = [simple_module(x.alg, v) for v in range(len(x.alg.vertices))]
    t.checks["minimal"] = x.is_minimal()
    t.checks["in_D<=0"] = x.min_shift() >= 0
    t.checks["perp_D<=-m-1"] = all(
        hom_to_findim(x, s, j) == 0 for s in simples for j in range(m + 1, max(x.max_shift(), m) + 2)
    )
    return t


def fundamental_rep(x: PerfModule, k: int, m: int | None = None) -> FundamentalDomainTag:
    """``tau_{<= 0}(Sigma^k x)``: same image as ``Sigma^k x``, lying in the domain.

    Requires ``max_shift(x) + k <= m``.
    """
    m = calabi_yau_m(x.alg) if m is None else m
    y = shift(x, k)
    if len(y) and y.max_shift() > m:
        raise ValueError(f"shift {k} leaves summands above degree {m}; choose a smaller shift")
    return tag(truncate_le(y, 0), m, k)


def common_shift(xs, m: int) -> int:
    """Largest ``k <= 0`` that moves every module below the ``m`` ceiling."""
    return min([0] + [m - x.max_shift() for x in xs if len(x)])


def hom_cluster(x: PerfModule, y: PerfModule, t: int, m: int | None = None) -> dict:
    """``dim Hom_C(pi x, Sigma^t pi y)`` plus the route taken."""
    m = calabi_yau_m(x.alg) if m is None else m
    if not len(x) or not len(y):
        return {"dimension": 0, "route": "zero"}
    bound = m - y.max_shift() - t
    if -x.min_shift() <= bound:
        return {"dimension": hom_derived(x, y, t).dimension, "route": "direct"}
    xt = truncate_le(x, bound)
    return {"dimension": hom_derived(xt, y, t).dimension, "route": f"truncate<={bound}"}


def ext_cluster(x: PerfModule, y: PerfModule, i: int, m: int | None = None) -> int:
    return hom_cluster(x, y, i, m)["dimension"]


@dataclass
class ClusterTiltingReport:
    dims: dict
    shift_used: int

    @property
    def ok(self) -> bool:
        return all(v == 0 for v in self.dims.values())

    def to_json(self) -> dict:
        return {"ext_dims": {str(r): d for r, d in self.dims.items()}, "shift_used": self.shift_used, "ok": self.ok}


def cluster_tilting_check(z: PerfModule, m: int | None = None) -> ClusterTiltingReport:
    """``Hom_C(pi z, Sigma^r pi z) = 0`` for ``r = 1..m``."""
    m = calabi_yau_m(z.alg) if m is None else m
    k = common_shift([z], m)
    zz = fundamental_rep(z, k, m).module if k or (len(z) and z.min_shift() < 0) else z
    return ClusterTiltingReport({r: ext_cluster(zz, zz, r, m) for r in range(1, m + 1)}, k)


def complement_summand(alg, i) -> PerfModule:
    """``M``: the sum of the vertex projectives other than ``P_i``."""
    i = _vertex(alg, i)
    parts = [projective(alg, v) for v in range(len(alg.vertices)) if v != i]
    return direct_sum(*parts) if parts else zero_module(alg)


# ------------------------------------------------------------ periodicity


@dataclass
class PeriodicityReport:
    vertex: str
    shift_used: int
    pairs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.pairs.values())

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "shift_used": self.shift_used, "isomorphic": dict(self.pairs), "ok": self.ok}


def _reps(alg, i, steps: int):
    m = calabi_yau_m(alg)
    ra = mutations(alg, i, "right", steps)
    la = mutations(alg, i, "left", steps)
    k = common_shift(ra + la, m)
    return m, k, [fundamental_rep(x, k, m).module for x in ra], [fundamental_rep(x, k, m).module for x in la]


def periodicity_check(alg, i, seed: int = 0) -> PeriodicityReport:
    """Image identifications between right and left mutations of ``P_i``."""
    i = _vertex(alg, i)
    m = calabi_yau_m(alg)
    m, k, ra, la = _reps(alg, i, m + 2)
    rep = PeriodicityReport(alg.vertices[i], k)
    for t in range(m + 2):
        rep.pairs[f"RA{t}~LA{m + 1 - t}"] = bool(iso_test(ra[t], la[m + 1 - t], seed))
    rep.pairs[f"RA{m + 1}~RA0"] = bool(iso_test(ra[m + 1], ra[0], seed))
    rep.pairs[f"RA{m + 2}~RA1"] = bool(iso_test(ra[m + 2], ra[1], seed))
    if not loops_at(alg, i):
        for t in range(m + 2):
            lo, hi = truncation_oracle(alg, i, t)
            kk = common_shift([lo, hi], m)
            rep.pairs[f"oracle{t}:le~ge"] = bool(
                iso_test(fundamental_rep(lo, kk, m).module, fundamental_rep(hi, kk, m).module, seed)
            )
    return rep


def distinct_classes(xs, seed: int = 0) -> list[int]:
    """Index of a representative class for each element, by pairwise iso_test."""
    reps: list[int] = []
    out = []
    for j, x in enumerate(xs):
        for r in reps:
            if iso_test(xs[r], x, seed):
                out.append(r)
                break
        else:
            reps.append(j)
            out.append(j)
    return out


@dataclass
class ComplementsReport:
    vertex: str
    shift_used: int
    complements: list
    checks: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.complements)

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "shift_used": self.shift_used,
            "count": self.count,
            "complements": [c.to_json() for c in self.complements],
            "checks": dict(self.checks),
        }


def complements(alg, i, seed: int = 0) -> ComplementsReport:
    """Classes of ``pi(RA_t)`` and ``pi(LA_t)``, ``0 <= t <= m+1``, up to isomorphism."""
    i = _vertex(alg, i)
    m = calabi_yau_m(alg)
    m, k, ra, la = _reps(alg, i, m + 1)
    pool = ra + la
    classes = distinct_classes(pool, seed)
    chosen = sorted(set(classes))
    comps = [pool[j] for j in chosen]
    rep = ComplementsReport(alg.vertices[i], k, comps)
    rep.checks["RA_0..m_pairwise_distinct"] = len(set(classes[: m + 1])) == m + 1
    mm = complement_summand(alg, i)
    for t in range(1, m + 1):
        rep.checks[f"M+LA{t}_cluster_tilting"] = cluster_tilting_check(direct_sum(mm, mutations(alg, i, "left", t)[t]), m).ok
    return rep


# -------------------------------------------------------------- Euler check


@dataclass
class EulerReport:
    m: int
    ext_d: dict
    ext_c: dict
    ext_d_rev: dict

    @property
    def alternating_sum(self) -> int:
        m = self.m
        return sum((-1) ** i * (self.ext_d[i] - self.ext_c[i] + self.ext_d_rev[m + 1 - i]) for i in range(1, m + 1))

    @property
    def boundary_ok(self) -> bool:
        return self.ext_d[1] <= self.ext_c[1] and self.ext_c[self.m] >= self.ext_d_rev[1]

    @property
    def ok(self) -> bool:
        return self.alternating_sum == 0 and self.boundary_ok

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "ext_D(X,Y)": {str(k): v for k, v in self.ext_d.items()},
            "ext_C(X,Y)": {str(k): v for k, v in self.ext_c.items()},
            "ext_D(Y,X)": {str(k): v for k, v in self.ext_d_rev.items()},
            "alternating_sum": self.alternating_sum,
            "boundary_ok": self.boundary_ok,
            "ok": self.ok,
        }


def euler_les_check(x: PerfModule, y: PerfModule, m: int | None = None) -> EulerReport:
    """Dimension-level consequence of the long exact sequence relating
    ``Ext_D(X, Y)``, ``Ext_C(X, Y)`` and the dual of ``Ext_D(Y, X)``."""
    m = calabi_yau_m(x.alg) if m is None else m
    ext_d = {i: hom_derived(x, y, i).dimension for i in range(1, m + 1)}
    ext_c = {i: ext_cluster(x, y, i, m) for i in range(1, m + 1)}
    ext_rev = {i: hom_derived(y, x, i).dimension for i in range(1, m + 1)}
    return EulerReport(m, ext_d, ext_c, ext_rev)


def serre_pairs(x: PerfModule, m: int | None = None) -> list:
    """``(dim Hom_D(S_i, Sigma^n x), dim Hom_D(x, Sigma^{m+2-n} S_i))`` over a window.

    ``S_i`` enters the left side through its minimal resolution.
    """
    from .mutation import resolve_simple

    m = calabi_yau_m(x.alg) if m is None else m
    out = []
    if not len(x):
        return out
    for v in range(len(x.alg.vertices)):
        y = resolve_simple(x.alg, v).module
        s = simple_module(x.alg, v)
        for n in range(m + 2 - x.max_shift() - 1, m + 2 - x.min_shift() + 2):
            out.append((v, n, hom_derived(y, x, n).dimension, hom_to_findim(x, s, m + 2 - n)))
    return out
