"""Iterated silting mutation of a vertex projective, and its checks.

Right mutation: ``RA_t = cocone(f_t)`` where ``f_t: O -> RA_{t-1}`` is a
minimal right ``add(M)``-approximation, ``M = (+)_{j != i} P_j``.  Left
mutation is dual and uses cones of left approximations.

The minimal resolution of a simple module ``S_i`` is built from the arrows
ending at ``i``.  Every arrow ``rho`` with ``t(rho) = i`` contributes a summand
``Sigma^{1-|rho|} P_{s(rho)}``.  The column of ``rho`` holds ``rho`` in the top
row and ``-c`` in row ``sigma``, where ``d(rho) = sum sigma c`` splits off the
leftmost arrow.  Square-zero follows from ``d(d rho) = 0``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

from .algebra import DgPathAlgebra
from .linalg import Echelon, axpy, quotient_basis
from .modules import (
    HomComplex,
    PerfModule,
    cocone,
    cone,
    hom_to_findim,
    minimal_model,
    projective,
    restrict,
    shift,
    simple_module,
)
from .scalars import coeff

_CACHE: "weakref.WeakKeyDictionary[DgPathAlgebra, dict]" = weakref.WeakKeyDictionary()


def _cache(alg: DgPathAlgebra) -> dict:
    c = _CACHE.get(alg)
    if c is None:
        c = _CACHE[alg] = {}
    return c


def _vertex(alg: DgPathAlgebra, v) -> int:
    return alg.vindex[v] if not isinstance(v, int) else v


def calabi_yau_m(alg: DgPathAlgebra) -> int:
    m = alg.info.get("m")
    if m is None:
        raise ValueError("algebra does not record m")
    return m


def loops_at(alg: DgPathAlgebra, i: int) -> list[str]:
    """Loops at ``i`` of the underlying quiver (the ``t`` loops excluded)."""
    base = alg.info.get("base")
    if base is not None:
        v = alg.vertices[i]
        return [a.name for a in base.arrows if a.source == v and a.target == v]
    tl = set(alg.info.get("tloops", {}).values())
    return [n for k, n in enumerate(alg.names) if alg.src[k] == alg.tgt[k] == i and n not in tl]


# -------------------------------------------------------- simple resolution


@dataclass
class SimpleResolution:
    vertex: int
    module: PerfModule
    top_index: int
    columns: dict = field(default_factory=dict)  # arrow name -> summand index

    def layer(self, j: int) -> list[int]:
        """Summand indices of ``P'_j`` (shift ``j + 1``)."""
        return [k for k, (_, s) in enumerate(self.module.summands) if s == j + 1]


def resolve_simple(alg: DgPathAlgebra, i, check: bool = True) -> SimpleResolution:
    i = _vertex(alg, i)
    key = ("res", i)
    cache = _cache(alg)
    if key in cache:
        return cache[key]
    into = [k for k in range(len(alg.names)) if alg.tgt[k] == i]
    summands = [(i, 0)] + [(alg.src[k], 1 - alg.deg[k]) for k in into]
    col = {k: j + 1 for j, k in enumerate(into)}
    delta: dict = {}
    for k in into:
        delta[(0, col[k])] = {(k,): coeff(1)}
        for p, a in alg.darr[k].items():
            if p[0] < 0:
                raise ValueError(f"d({alg.names[k]}) has a constant term")
            sigma = p[0]
            rest = p[1:] if len(p) > 1 else alg.trivial(alg.src[sigma])
            axpy(delta.setdefault((col[sigma], col[k]), {}), -a, {rest: 1})
    delta = {rc: e for rc, e in delta.items() if e}
    y = PerfModule(alg, summands, delta, name=f"Y{alg.vertices[i]}")
    if check:
        res = y.square_zero_residual()
        if res:
            raise ValueError("resolution of a simple fails square-zero (sign fault)")
    top = y.summands.index((i, 0))
    names = {}
    # map arrows to their (sorted) summand positions: equal summands keep input order
    order = sorted(range(len(summands)), key=lambda k: (summands[k][1], summands[k][0]))
    pos = {old: new for new, old in enumerate(order)}
    for k in into:
        names[alg.names[k]] = pos[col[k]]
    out = SimpleResolution(i, y, top, names)
    cache[key] = out
    return out


def resolution_homology(res: SimpleResolution, window) -> dict:
    """``{(vertex, degree): dim}`` of the homology of the resolution."""
    from .modules import homology_of

    return homology_of(res.module, window)


def truncate_weights(res: SimpleResolution, t: int):
    """(sub-block of shifts ``<= t``, quotient block of shifts ``>= t+1``)."""
    y = res.module
    low = [k for k, (_, s) in enumerate(y.summands) if s <= t]
    high = [k for k, (_, s) in enumerate(y.summands) if s > t]
    return restrict(y, low), restrict(y, high)


def truncation_oracle(alg: DgPathAlgebra, i, t: int):
    """``(Sigma^{-t} eps_{<=t} Y, Sigma^{-t-1} eps_{>=t+1} Y)`` for the simple at ``i``."""
    i = _vertex(alg, i)
    if loops_at(alg, i):
        raise ValueError(f"vertex {alg.vertices[i]} carries loops; the truncation identification does not apply")
    lo, hi = truncate_weights(resolve_simple(alg, i), t)
    return shift(lo, -t), shift(hi, -t - 1)


# ------------------------------------------------------------ approximations


@dataclass
class Approximation:
    side: str
    obj: PerfModule
    map: dict
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        alg = self.obj.alg
        return {
            "side": self.side,
            "object": [alg.vertices[v] for v, _ in self.obj.summands],
            "map": {f"{r},{c}": alg.format(e) for (r, c), e in sorted(self.map.items())},
            "checks": dict(self.checks),
        }


def _radical_paths(alg: DgPathAlgebra, src: int, tgt: int) -> list:
    return [p for p in alg.paths(src, tgt, 0) if p[0] >= 0]


def approximate(x: PerfModule, cat, side: str = "right") -> Approximation:
    """Minimal right/left ``add(P_j : j in cat)``-approximation of ``x``."""
    alg = x.alg
    cat = [_vertex(alg, j) for j in cat]
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    chosen = []  # (j, closed map as entries)
    data = {}
    for j in cat:
        pj = projective(alg, j)
        h = HomComplex(pj, x) if side == "right" else HomComplex(x, pj)
        _, reps = h.cohomology(0)
        data[j] = (h, reps)
    for j in cat:
        h, reps = data[j]
        sub = list(h.differential(-1))
        for k in cat:
            hk, repk = data[k]
            if side == "right":
                paths = _radical_paths(alg, j, k)  # P_j -> P_k is left mult by e_k A e_j
            else:
                paths = _radical_paths(alg, k, j)  # P_k -> P_j
            for a in paths:
                for g in repk:
                    ent = hk.to_entries(g, 0)
                    if side == "right":
                        comp = {(r, 0): alg.mul(e, {a: 1}) for (r, _), e in ent.items()}
                    else:
                        comp = {(0, c): alg.mul({a: 1}, e) for (_, c), e in ent.items()}
                    comp = {rc: e for rc, e in comp.items() if e}
                    if comp:
                        sub.append(h.to_vector(comp, 0))
        for idx in quotient_basis(reps, sub):
            chosen.append((j, h.to_entries(reps[idx], 0)))
    obj = PerfModule(alg, [(j, 0) for j, _ in chosen])
    # PerfModule sorts by vertex; place maps accordingly
    order = sorted(range(len(chosen)), key=lambda k: chosen[k][0])
    fmap: dict = {}
    for new, old in enumerate(order):
        for (r, c), e in chosen[old][1].items():
            if side == "right":
                fmap[(r, new)] = e
            else:
                fmap[(new, c)] = e
    appr = Approximation(side, obj, fmap)
    appr.checks["closed"] = not (HomComplex(obj, x) if side == "right" else HomComplex(x, obj)).d_entries(fmap, 0)
    appr.checks["factorization"] = _check_factorization(x, appr, cat)
    return appr


def _check_factorization(x: PerfModule, appr: Approximation, cat) -> bool:
    """Every degree-0 class between ``x`` and ``P_j`` factors through the map."""
    alg = x.alg
    obj, f = appr.obj, appr.map
    for j in cat:
        pj = projective(alg, j)
        if appr.side == "right":
            h = HomComplex(pj, x)
            hobj = HomComplex(pj, obj)
        else:
            h = HomComplex(x, pj)
            hobj = HomComplex(obj, pj)
        _, reps = h.cohomology(0)
        ech = Echelon()
        for v in h.differential(-1):
            ech.add(v)
        for g in hobj.cycles(0):
            ent = hobj.to_entries(g, 0)
            if appr.side == "right":
                comp = _compose(f, ent, alg)
            else:
                comp = _compose(ent, f, alg)
            if comp:
                ech.add(h.to_vector(comp, 0))
        if any(not ech.contains(r) for r in reps):
            return False
    return True


def _compose(g: dict, f: dict, alg) -> dict:
    from .modules import compose

    return compose(g, f, alg)


# ------------------------------------------------------------- mutation


@dataclass
class MutationState:
    alg: DgPathAlgebra
    vertex: int
    direction: str
    t: int
    current: PerfModule
    history: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def complement(self) -> list[int]:
        return [v for v in range(len(self.alg.vertices)) if v != self.vertex]

    def to_json(self) -> dict:
        return {
            "vertex": self.alg.vertices[self.vertex],
            "direction": self.direction,
            "t": self.t,
            "module": self.current.to_json(),
            "checks": dict(self.checks),
            "provenance": "silting by construction (iterated mutation of the free module)",
        }


def start(alg: DgPathAlgebra, i, direction: str = "right") -> MutationState:
    i = _vertex(alg, i)
    return MutationState(alg, i, direction, 0, projective(alg, i))


def _membership_checks(x: PerfModule, direction: str, t: int) -> dict:
    """Degree-window memberships of ``RA_t`` / ``LA_t`` via Homs into shifted simples."""
    alg = x.alg
    simples = [simple_module(alg, v) for v in range(len(alg.vertices))]
    if not len(x):
        return {"nonzero": False}
    lo, hi = x.min_shift(), x.max_shift()
    if direction == "right":
        perp = all(hom_to_findim(x, s, n) == 0 for s in simples for n in range(1, max(hi, 0) + 2))
        return {"homology_in_degrees_<=t": -lo <= t, "perp_to_D<=-1": perp}
    perp = all(hom_to_findim(x, s, n) == 0 for s in simples for n in range(t + 1, max(hi, t) + 2))
    return {"homology_in_degrees_<=0": lo >= 0, f"perp_to_D<=-{t + 1}": perp}


def mutate(state: MutationState) -> MutationState:
    x = state.current
    appr = approximate(x, state.complement, state.direction)
    if state.direction == "right":
        new = minimal_model(cocone(appr.map, appr.obj, x, check=False))
        name = f"RA{state.t + 1}"
    else:
        new = minimal_model(cone(appr.map, x, appr.obj, check=False))
        name = f"LA{state.t + 1}"
    new = new.with_name(name)
    checks = dict(appr.checks)
    checks["square_zero"] = not new.square_zero_residual()
    split = [k for k, (v, _) in enumerate(new.summands)
             if v != state.vertex and not new.rows().get(k) and not new.cols().get(k) and len(new) > 1]
    checks["no_split_summand"] = not split
    checks.update(_membership_checks(new, state.direction, state.t + 1))
    return MutationState(state.alg, state.vertex, state.direction, state.t + 1, new,
                         state.history + [appr], checks)


def mutations(alg: DgPathAlgebra, i, direction: str, steps: int) -> list[PerfModule]:
    """``[X_0, ..., X_steps]`` with ``X_t = RA_t`` or ``LA_t`` (cached)."""
    i = _vertex(alg, i)
    cache = _cache(alg)
    key = ("mut", i, direction)
    states = cache.setdefault(key, [start(alg, i, direction)])
    while len(states) <= steps:
        states.append(mutate(states[-1]))
    return [s.current for s in states[: steps + 1]]


def mutation_states(alg: DgPathAlgebra, i, direction: str, steps: int) -> list[MutationState]:
    mutations(alg, i, direction, steps)
    return _cache(alg)[("mut", _vertex(alg, i), direction)][: steps + 1]


# ------------------------------------------------------------ AR angle


@dataclass
class ARAngleReport:
    vertex: str
    terms: list = field(default_factory=list)  # list of vertex-name lists
    maps: list = field(default_factory=list)   # printed matrices
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "terms": self.terms, "maps": self.maps,
                "checks": dict(self.checks), "ok": self.ok}


def _block(y: PerfModule, rows, cols) -> dict:
    ri = {r: k for k, r in enumerate(rows)}
    ci = {c: k for k, c in enumerate(cols)}
    return {(ri[r], ci[c]): e for (r, c), e in y.delta.items() if r in ri and c in ci}


def ar_angle(alg: DgPathAlgebra, i) -> ARAngleReport:
    """The angle ``P_i -> P'_m -> ... -> P'_0 -> P_i`` read off the resolution."""
    i = _vertex(alg, i)
    if loops_at(alg, i):
        raise ValueError(f"vertex {alg.vertices[i]} carries loops")
    m = calabi_yau_m(alg)
    res = resolve_simple(alg, i)
    y = res.module
    layers = [[res.top_index]] + [res.layer(j) for j in range(m + 1)] + [res.layer(m + 1)]
    objs = [PerfModule(alg, [(y.summands[k][0], 0) for k in layer]) for layer in layers]
    # maps phi_t : layer t+1 -> layer t (top layer = P_i at index 0)
    maps = [_block(y, layers[t], layers[t + 1]) for t in range(len(layers) - 1)]
    rep = ARAngleReport(alg.vertices[i])
    rep.terms = [[alg.vertices[v] for v, _ in o.summands] for o in objs]
    rep.maps = [{f"{r},{c}": alg.format(e) for (r, c), e in sorted(mp.items())} for mp in maps]
    rep.checks["end_terms_are_P_i"] = (
        [v for v, _ in objs[0].summands] == [i] and [v for v, _ in objs[-1].summands] == [i]
    )
    rep.checks["middle_terms_in_add_M"] = all(v != i for o in objs[1:-1] for v, _ in o.summands)
    rep.checks["maps_have_degree_0"] = all(alg.degree(p) == 0 for mp in maps for e in mp.values() for p in e)
    from .modules import compose

    vanish = True
    for t in range(len(maps) - 1):
        comp = compose(maps[t], maps[t + 1], alg)
        if not comp:
            continue
        h = HomComplex(objs[t + 2], objs[t])
        ech = Echelon()
        for v in h.differential(-1):
            ech.add(v)
        if not ech.contains(h.to_vector(comp, 0)):
            vanish = False
    rep.checks["consecutive_composites_vanish"] = vanish
    rep.checks["sink_map"] = _radical_surjective(alg, objs[1], objs[0], maps[0], "post")
    rep.checks["source_map"] = _radical_surjective(alg, objs[-1], objs[-2], maps[-1], "pre")
    return rep


def _radical_surjective(alg, src: PerfModule, tgt: PerfModule, f: dict, mode: str) -> bool:
    """``post``: ``f o -`` maps ``Hom(P_j, src)`` onto ``rad Hom(P_j, tgt)``;
    ``pre``: ``- o f`` maps ``Hom(tgt, P_j)`` onto ``rad Hom(src, P_j)``.
    ``tgt`` (post) or ``src`` (pre) is a single vertex projective."""
    from .modules import compose

    for j in range(len(alg.vertices)):
        pj = projective(alg, j)
        if mode == "post":
            h, hmid = HomComplex(pj, tgt), HomComplex(pj, src)
            i = tgt.summands[0][0]
            rad = _radical_paths(alg, j, i)
            want = [{(0, 0): {p: coeff(1)}} for p in rad]
        else:
            h, hmid = HomComplex(src, pj), HomComplex(tgt, pj)
            i = src.summands[0][0]
            rad = _radical_paths(alg, i, j)
            want = [{(0, 0): {p: coeff(1)}} for p in rad]
        ech = Echelon()
        for v in h.differential(-1):
            ech.add(v)
        for g in hmid.cycles(0):
            ent = hmid.to_entries(g, 0)
            comp = compose(f, ent, alg) if mode == "post" else compose(ent, f, alg)
            if comp:
                ech.add(h.to_vector(comp, 0))
        if any(not ech.contains(h.to_vector(w, 0)) for w in want):
            return False
    return True

