"""Double and triple quivers, cyclic derivatives and the two dg algebra families.

``ginzburg`` builds the Ginzburg algebra on the triple quiver (arrows, opposite
arrows ``a*`` and one loop ``t_i`` per vertex).  ``preprojective`` builds the
deformed preprojective algebra, where special loops are their own duals.  The
two comparison maps (doubling special loops, and moving arrows into the upper
half of the degree range) are returned as arrow substitutions and are checked
against the differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import DgPathAlgebra
from .linalg import axpy, rank
from .quiver import (
    Arrow,
    GradedQuiver,
    Superpotential,
    dual_name,
    validate,
)
from .scalars import I, coeff


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


@dataclass(frozen=True)
class DoubleQuiver:
    base: GradedQuiver
    kind: str
    m: int
    arrows: tuple[Arrow, ...]
    dual_map: dict = field(hash=False)


@dataclass(frozen=True)
class TripleQuiver:
    double: DoubleQuiver
    loops: dict = field(hash=False)  # vertex -> loop name

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        m = self.double.m
        extra = tuple(Arrow(n, v, v, -m - 1) for v, n in self.loops.items())
        return self.double.arrows + extra


def double_quiver(q: GradedQuiver, m: int, kind: str) -> DoubleQuiver:
    """Add opposite arrows; in the preprojective kind special loops stay single."""
    special = {a.name for a in q.special_loops(m)} if kind == "preprojective" else set()
    taken = {a.name for a in q.arrows}
    arrows = list(q.arrows)
    dual = {}
    for a in q.arrows:
        if a.name in special:
            dual[a.name] = a.name
            continue
        n = dual_name(a.name)
        if n in taken:
            raise ValueError(f"name clash for dual arrow {n}")
        taken.add(n)
        arrows.append(Arrow(n, a.target, a.source, -m - a.degree))
        dual[a.name] = n
        dual[n] = a.name
    return DoubleQuiver(q, kind, m, tuple(arrows), dual)


def triple_quiver(dq: DoubleQuiver) -> TripleQuiver:
    taken = {a.name for a in dq.arrows}
    loops = {v: _fresh(f"t_{v}", taken) for v in dq.base.vertices}
    return TripleQuiver(dq, loops)


def _algebra(tq: TripleQuiver, truncation, info) -> DgPathAlgebra:
    vs = tq.double.base.vertices
    vi = {v: k for k, v in enumerate(vs)}
    arrows = [(a.name, vi[a.source], vi[a.target], a.degree) for a in tq.arrows]
    return DgPathAlgebra(vs, arrows, {}, truncation, info)


def _word_element(alg: DgPathAlgebra, word) -> dict:
    p = tuple(alg.index[n] for n in word)
    return {p: coeff(1)} if alg.fits(p) else {}


def cyclic_derivative(w: Superpotential, a: str, alg: DgPathAlgebra) -> dict:
    """Sum over factorizations ``p = u a v`` of ``(-1)^((|a|+|v|)|u|) v u``.

    Words of ``w`` are read as stored (no re-rotation).  ``a`` must be an arrow
    of ``alg``; the result is an element of ``alg``.
    """
    if a not in alg.index:
        raise KeyError(f"{a} is not an arrow of the ambient quiver")
    deg = {n: alg.deg[k] for n, k in alg.index.items()}
    out: dict = {}
    for word, c in w.terms:
        for k, x in enumerate(word):
            if x != a:
                continue
            u, v = word[:k], word[k + 1:]
            du = sum(deg[n] for n in u)
            dv = sum(deg[n] for n in v)
            vu = v + u
            if not vu:
                continue
            axpy(out, _sgn((deg[a] + dv) * du) * c, _word_element(alg, vu))
    return out


def _bracket(alg, a: str, b: str) -> dict:
    """``[a, b] = ab - (-1)^(|a||b|) ba`` for arrows ``a``, ``b``."""
    ka, kb = alg.index[a], alg.index[b]
    out: dict = {}
    if alg.src[ka] == alg.tgt[kb]:
        axpy(out, 1, _word_element(alg, (a, b)))
    if alg.src[kb] == alg.tgt[ka]:
        axpy(out, -_sgn(alg.deg[ka] * alg.deg[kb]), _word_element(alg, (b, a)))
    return out


def _t_differential(alg, base: GradedQuiver, dual: dict, loops: dict) -> dict:
    """``d(t_i) = e_i (sum_a [a, a*]) e_i``."""
    out = {}
    for v, t in loops.items():
        vi = alg.vindex[v]
        dt: dict = {}
        for a in base.arrows:
            for p, c in _bracket(alg, a.name, dual[a.name]).items():
                if alg.source(p) == vi and alg.target(p) == vi:
                    axpy(dt, c, {p: 1})
        out[t] = dt
    return out


def _finish(alg: DgPathAlgebra, diff: dict) -> DgPathAlgebra:
    arrows = list(zip(alg.names, alg.src, alg.tgt, alg.deg))
    new = DgPathAlgebra(alg.vertices, arrows, diff, alg.truncation, alg.info)
    ok, witness = new.check_d_squared()
    if not ok:
        name, res = witness
        raise ValueError(f"d^2 != 0 on {name}: {new.format(res)}")
    return new


def ginzburg(q: GradedQuiver, w: Superpotential, m: int, truncation="default") -> DgPathAlgebra:
    """Ginzburg dg algebra of ``(q, w)`` in Calabi-Yau dimension ``m + 2``."""
    rep = validate(q, w, m, ginzburg=True)
    if not rep.ok:
        raise ValueError(f"invalid Ginzburg input: {rep.details or rep.checks}")
    tq = triple_quiver(double_quiver(q, m, "ginzburg"))
    dual = tq.double.dual_map
    info = dict(kind="ginzburg", base=q, potential=w, m=m, dual=dual, tloops=dict(tq.loops), special=[])
    alg = _algebra(tq, truncation, info)
    diff = {}
    for a in q.arrows:
        diff[dual[a.name]] = {p: _sgn(a.degree) * c for p, c in cyclic_derivative(w, a.name, alg).items()}
    diff.update(_t_differential(alg, q, dual, tq.loops))
    return _finish(alg, diff)


def preprojective(
    q: GradedQuiver, w: Superpotential, m: int, truncation="default", require_good: bool = True
) -> DgPathAlgebra:
    """Deformed preprojective dg algebra ``Pi(q, m+2, w)``.

    With ``require_good=False`` arrow degrees outside ``[-m/2, 0]`` are
    accepted (needed as an intermediate step when comparing with Ginzburg
    algebras); the conditions on ``w`` are always enforced.
    """
    rep = validate(q, w, m)
    checks = dict(rep.checks)
    if not require_good:
        checks.pop("degrees_in_[-m/2,0]", None)
    if not all(checks.values()):
        raise ValueError(f"invalid preprojective input: {rep.details or rep.checks}")
    tq = triple_quiver(double_quiver(q, m, "preprojective"))
    dual = tq.double.dual_map
    special = [a.name for a in q.special_loops(m)]
    info = dict(kind="preprojective", base=q, potential=w, m=m, dual=dual, tloops=dict(tq.loops), special=special)
    alg = _algebra(tq, truncation, info)
    diff = {}
    for a in q.arrows:
        astar = dual[a.name]
        dstar = alg.deg[alg.index[astar]]
        da = {p: _sgn((a.degree + 1) * dstar) * c for p, c in cyclic_derivative(w, astar, alg).items()}
        from_dual = {p: _sgn(a.degree + 1) * c for p, c in cyclic_derivative(w, a.name, alg).items()}
        if astar == a.name:
            if da != from_dual:
                raise ValueError(f"the two formulas for d({a.name}) disagree on a special loop")
        else:
            diff[astar] = from_dual
        diff[a.name] = da
    diff.update(_t_differential(alg, q, dual, tq.loops))
    try:
        return _finish(alg, diff)
    except ValueError as exc:
        raise ValueError(f"{{W,W}} != 0 obstruction: {exc}") from None


# ---------------------------------------------------------------------------
# comparison maps


@dataclass
class ArrowMap:
    """An algebra map given by its values on arrows."""

    source: DgPathAlgebra
    target: DgPathAlgebra
    images: dict  # arrow name of source -> element of target

    def apply(self, x: dict) -> dict:
        out: dict = {}
        tv = self.target.vindex
        for p, c in x.items():
            if self.source.is_trivial(p):
                v = self.source.vertices[self.source.source(p)]
                axpy(out, c, self.target.e(tv[v]))
                continue
            acc = None
            for a in p:
                img = self.images[self.source.names[a]]
                acc = img if acc is None else self.target.mul(acc, img)
                if not acc:
                    break
            if acc:
                axpy(out, c, acc)
        return out

    def is_identity(self) -> bool:
        for n, img in self.images.items():
            if img != {(self.target.index.get(n, -99),): 1}:
                return False
        return True

    def commutes_with_d(self):
        """Names of arrows ``x`` with ``d(iota x) != iota(d x)``."""
        bad = []
        for k, n in enumerate(self.source.names):
            lhs = self.target.d(self.images[n]) if self.images[n] else {}
            rhs = self.apply(self.source.darr[k])
            diff = dict(lhs)
            axpy(diff, -1, rhs)
            if diff:
                bad.append(n)
        return bad

    def to_json(self) -> dict:
        return {n: self.target.format(img) for n, img in self.images.items()}


def _substitute(w: Superpotential, images: dict) -> Superpotential:
    """Replace arrows by linear combinations of arrows and expand."""
    terms: dict = {}
    order = []
    for word, c in w.terms:
        choices = [images.get(a, [((a,), 1)]) for a in word]
        for combo in product(*choices):
            new_word = tuple(x for part, _ in combo for x in part)
            k = c
            for _, s in combo:
                k = k * s
            if new_word not in terms:
                order.append(new_word)
                terms[new_word] = 0
            terms[new_word] = coeff(terms[new_word] + k)
    return Superpotential(tuple((wd, terms[wd]) for wd in order if terms[wd]))


def ginzburg_to_dpp(g: DgPathAlgebra):
    """Identify a Ginzburg algebra with a deformed preprojective algebra.

    Each special loop ``a`` splits into two special loops ``a'``, ``a''``;
    ``a -> a' + i a''`` and ``a* -> a' - i a''``.  The target is
    ``Pi(q', m+2, -w')``.
    """
    if g.info.get("kind") != "ginzburg":
        raise ValueError("expected a Ginzburg algebra")
    q: GradedQuiver = g.info["base"]
    w: Superpotential = g.info["potential"]
    m: int = g.info["m"]
    special = {a.name for a in q.special_loops(m)}
    taken = {a.name for a in q.arrows}
    arrows, split = [], {}
    for a in q.arrows:
        if a.name in special:
            p1 = _fresh(a.name + "'", taken)
            p2 = _fresh(a.name + "''", taken)
            split[a.name] = (p1, p2)
            arrows += [Arrow(p1, a.source, a.target, a.degree), Arrow(p2, a.source, a.target, a.degree)]
        else:
            arrows.append(a)
    q2 = GradedQuiver(q.vertices, tuple(arrows))
    subst = {a: [((p1,), 1), ((p2,), I)] for a, (p1, p2) in split.items()}
    w2 = _substitute(w, subst).map_terms(lambda c: coeff(-c))
    target = preprojective(q2, w2, m, g.truncation, require_good=False)
    images = {}
    for n in g.names:
        if n in split:
            p1, p2 = split[n]
            images[n] = {(target.index[p1],): coeff(1), (target.index[p2],): I}
        elif n.endswith("*") and n[:-1] in split:
            p1, p2 = split[n[:-1]]
            images[n] = {(target.index[p1],): coeff(1), (target.index[p2],): coeff(-I)}
        else:
            images[n] = target.arrow(n)
    iota = ArrowMap(g, target, images)
    bad = iota.commutes_with_d()
    if bad:
        raise ValueError(f"comparison map fails to commute with d on {bad}")
    return target, iota


def normalize_degrees(p: DgPathAlgebra):
    """Move arrows of degree below ``-m/2`` to their (parallel) duals.

    Returns an isomorphic deformed preprojective algebra whose quiver lies in
    ``[-m/2, y]`` together with the arrow substitution.
    """
    if p.info.get("kind") != "preprojective":
        raise ValueError("expected a deformed preprojective algebra")
    q: GradedQuiver = p.info["base"]
    w: Superpotential = p.info["potential"]
    m: int = p.info["m"]
    dual = p.info["dual"]
    degs = [p.deg[p.index[n]] for n in dual]
    if degs and min(degs) + max(degs) != -m:
        raise ValueError("degree range of the double quiver is not symmetric about -m/2")
    taken = {a.name for a in q.arrows}
    arrows, moved = [], {}
    for a in q.arrows:
        if 2 * a.degree < -m:
            b2 = _fresh(a.name + "'", taken)
            moved[a.name] = b2
            arrows.append(Arrow(b2, a.target, a.source, -m - a.degree))
        else:
            arrows.append(a)
    q2 = GradedQuiver(q.vertices, tuple(arrows))
    subst = {}
    for b, b2 in moved.items():
        db = q.arrow(b).degree
        subst[b] = [((dual_name(b2),), _sgn(db * (-m - db) + 1))]
        subst[dual_name(b)] = [((b2,), 1)]
    w2 = _substitute(w, subst)
    target = preprojective(q2, w2, m, p.truncation)
    images = {}
    for n in p.names:
        if n in subst:
            (word, s), = subst[n]
            images[n] = {(target.index[word[0]],): coeff(s)}
        else:
            images[n] = target.arrow(n)
    iota = ArrowMap(p, target, images)
    bad = iota.commutes_with_d()
    if bad:
        raise ValueError(f"degree normalization fails to commute with d on {bad}")
    return target, iota


# ---------------------------------------------------------------------------
# structural Calabi-Yau criterion


@dataclass
class CyReport:
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"checks": dict(self.checks), "details": dict(self.details), "ok": self.ok}


def check_strongly_cy_presentation(p: DgPathAlgebra, m: int) -> CyReport:
    """Check the four structural conditions for a strongly CY presentation.

    (a) no arrow differential has a linear term; (b) arrows split into ``V_c``
    plus one loop ``t_i`` of degree ``-m-1`` per vertex; (c) ``eta = sum d(t_i)``
    is a sum of length-two words, antisymmetric under the graded flip; (d) the
    contraction ``eta+`` is invertible on the dual basis of ``V_c``.
    """
    rep = CyReport()
    linear = [n for k, n in enumerate(p.names) if any(p.length(q) <= 1 for q in p.darr[k])]
    rep.checks["a_no_linear_terms"] = not linear
    if linear:
        rep.details["a_no_linear_terms"] = ", ".join(linear)

    tl = p.info.get("tloops")
    if tl is None:
        tl = {}
        for v in p.vertices:
            cands = [n for k, n in enumerate(p.names)
                     if p.src[k] == p.tgt[k] == p.vindex[v] and p.deg[k] == -m - 1]
            if len(cands) == 1:
                tl[v] = cands[0]
    tnames = set(tl.values())
    vc = [k for k, n in enumerate(p.names) if n not in tnames]
    ok_b = len(tl) == len(p.vertices) and all(
        p.deg[p.index[n]] == -m - 1 and p.src[p.index[n]] == p.tgt[p.index[n]] == p.vindex[v]
        for v, n in tl.items()
    )
    out_of_range = [p.names[k] for k in vc if not (-m <= p.deg[k] <= 0)]
    rep.checks["b_split_with_central_z"] = ok_b and not out_of_range
    if out_of_range:
        rep.details["b_split_with_central_z"] = "V_c outside [-m, 0]: " + ", ".join(out_of_range)

    eta: dict = {}
    for n in tnames:
        axpy(eta, 1, p.darr[p.index[n]])
    two = all(p.length(q) == 2 and q[0] not in {p.index[n] for n in tnames}
              and q[1] not in {p.index[n] for n in tnames} for q in eta)
    if not two:
        rep.checks["c_antisymmetric"] = False
        rep.details["c_antisymmetric"] = "d(z) is not a sum of length-two words in V_c"
        rep.checks["d_nondegenerate"] = False
        return rep
    flipped: dict = {}
    for (v1, v2), c in eta.items():
        axpy(flipped, _sgn(p.deg[v1] * p.deg[v2]) * c, {(v2, v1): 1})
    total = dict(flipped)
    axpy(total, 1, eta)
    rep.checks["c_antisymmetric"] = not total
    if total:
        rep.details["c_antisymmetric"] = "F(eta) + eta = " + p.format(total)

    pos = {k: j for j, k in enumerate(vc)}
    cols = []
    images = {}
    for g in vc:
        col: dict = {}
        for (v1, v2), c in eta.items():
            if v1 == g:
                axpy(col, _sgn(m * p.deg[g]) * c, {pos[v2]: 1})
        cols.append(col)
        images[p.names[g]] = p.format({(vc[j],): c for j, c in col.items()})
    rep.checks["d_nondegenerate"] = rank(cols) == len(vc)
    rep.details["eta_plus"] = images
    return rep
