"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run standalone with ``python3 tests/test_acceptance.py`` or through pytest,
where the lines are echoed in the terminal summary.  All tolerances are exact
(integer dimensions, tolerance 0) except the two wall-clock limits.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from silting_lab.cluster import (  # noqa: E402
    cluster_tilting_check,
    common_shift,
    complement_summand,
    complements,
    fundamental_rep,
    hom_cluster,
    periodicity_check,
    serre_pairs,
)
from silting_lab.hochschild import rigidity_check  # noqa: E402
from silting_lab.linalg import rank  # noqa: E402
from silting_lab.modules import direct_sum, free_module, iso_test, projective, support, support_oracle  # noqa: E402
from silting_lab.mutation import loops_at, mutations, truncation_oracle  # noqa: E402
from silting_lab.potential import ginzburg, preprojective  # noqa: E402
from silting_lab.quiver import Arrow, GradedQuiver, Superpotential, parse, print_model  # noqa: E402
from silting_lab.scalars import coeff  # noqa: E402
from silting_lab.scenarios import ONE_LOOP, TWO_LOOPS, linear_quiver, one_loop_family, run_scenario  # noqa: E402

QUIVER_SET = [(n, m) for n in (2, 3) for m in (1, 2)]
RESULTS: dict[int, tuple[bool, str]] = {}


def _g(n, m):
    return ginzburg(*parse(linear_quiver(n, m)))


def _record(k: int, ok: bool, detail: str) -> bool:
    RESULTS[k] = (ok, detail)
    return ok


def line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


# --------------------------------------------------------------- criteria


def criterion_1():
    t0 = time.perf_counter()
    q, w, m = parse(ONE_LOOP)
    hg = ginzburg(q, w, m, truncation=6).homology((-1, -1))
    hp = preprojective(q, w, m, truncation=6).homology((-1, -1))
    dt = time.perf_counter() - t0
    ok = hg.dims[-1] == 2 and hp.dims[-1] == 1 and hg.stable and hp.stable and dt < 5
    return _record(1, ok, f"one loop, L=6: dim H^-1 Ginzburg = {hg.dims[-1]} (want 2), "
                          f"preprojective = {hp.dims[-1]} (want 1), {dt:.2f}s (< 5s)")


def criterion_2():
    p = preprojective(*parse(TWO_LOOPS))
    h = p.homology((-2, 0))
    idx = {x: k for k, x in enumerate(p.paths(None, None, -2))}
    bnd = [{idx[x]: c for x, c in p.d_path(y).items()} for y in p.paths(None, None, -3)]
    words = [{idx[x]: c for x, c in p.word(*w).items()} for w in (("al", "al"), ("al", "be"), ("be", "al"))]
    independent = rank(bnd + words) - rank(bnd)
    ok = h.dims[0] == 1 and h.dims[-2] == 3 and independent == 3
    return _record(2, ok, f"two loops: dim H^0 = {h.dims[0]} (want 1), dim H^-2 = {h.dims[-2]} (want 3), "
                          f"{{al^2, al be, be al}} independent mod boundaries: {independent}/3")


def criterion_3():
    bad = []
    for n, m in QUIVER_SET:
        g = _g(n, m)
        for v in g.vertices:
            ra = mutations(g, v, "right", m + 1)
            la = mutations(g, v, "left", m + 1)
            for t in range(m + 2):
                s = support(ra[t])
                if -t not in s or not all(-t <= j <= 0 for j in s):
                    bad.append(f"RA A{n} m={m} v={v} t={t}: {s}")
                s = support(la[t])
                if t not in s or not all(0 <= j <= t for j in s):
                    bad.append(f"LA A{n} m={m} v={v} t={t}: {s}")
    return _record(3, not bad, "support laws for RA_t, LA_t on A2/A3, m=1,2" + (f"; failures {bad}" if bad else ""))


def criterion_4():
    bad, count = [], 0
    for n, m in QUIVER_SET:
        g = _g(n, m)
        for v in g.vertices:
            if loops_at(g, g.vindex[v]):
                continue
            ra = mutations(g, v, "right", m + 1)
            la = mutations(g, v, "left", m + 1)
            for t in range(m + 2):
                lo, hi = truncation_oracle(g, v, t)
                count += 2
                if not iso_test(lo, ra[t]):
                    bad.append(f"le A{n} m={m} v={v} t={t}")
                if not iso_test(hi, la[m + 1 - t]):
                    bad.append(f"ge A{n} m={m} v={v} t={t}")
    return _record(4, not bad, f"weight truncations of the simple's resolution ~ mutations: "
                               f"{count - len(bad)}/{count} isomorphic")


def criterion_5():
    bad = []
    for n, m in ((2, 1), (3, 2)):
        g = _g(n, m)
        for v in g.vertices:
            rep = periodicity_check(g, v)
            bad += [f"A{n} v={v} {k}" for k, ok in rep.pairs.items() if not ok]
    return _record(5, not bad, "RA_t ~ LA_(m+1-t) and RA_(m+1) ~ RA_0 in C on A2 (m=1), A3 (m=2)"
                               + (f"; failures {bad}" if bad else ""))


def criterion_6():
    bad = []
    for n, m in QUIVER_SET:
        g = _g(n, m)
        rep = cluster_tilting_check(free_module(g))
        if not rep.ok:
            bad.append(f"A A{n} m={m} {rep.dims}")
        for v in g.vertices:
            mm = complement_summand(g, v)
            for t in range(1, m + 1):
                rep = cluster_tilting_check(direct_sum(mm, mutations(g, v, "left", t)[t]))
                if not rep.ok:
                    bad.append(f"M+LA{t} A{n} m={m} v={v} {rep.dims}")
    return _record(6, not bad, "Hom_C(Z, Sigma^r Z) = 0, r=1..m, for Z = A and M + LA_t"
                               + (f"; failures {bad}" if bad else ""))


def criterion_7():
    found = []
    ok = True
    for n, m in QUIVER_SET:
        g = _g(n, m)
        counts = [complements(g, v).count for v in g.vertices]
        found.append(f"A{n} m={m}: {counts}")
        ok = ok and all(c == m + 1 for c in counts)
    return _record(7, ok, "complements per vertex (want m+1): " + "; ".join(found))


def criterion_8():
    p = preprojective(*parse(one_loop_family(3)))
    pp = projective(p, "o")
    h = p.homology((-3, -1)).dims
    dims = [hom_cluster(pp, pp, -s)["dimension"] for s in (1, 2, 3)]
    ra = mutations(p, "o", "right", 2)
    k = common_shift(ra, 3)
    reps = [fundamental_rep(x, k).module for x in ra]
    distinct = all(not iso_test(reps[i], reps[j]) for i in range(3) for j in range(i + 1, 3))
    periodic = periodicity_check(p, "o").ok
    two = preprojective(*parse(TWO_LOOPS))
    mixed = hom_cluster(mutations(two, "o", "left", 2)[2], mutations(two, "o", "right", 1)[1], 1)["dimension"]
    ok = dims == [h[-1], h[-2], h[-3]] and min(dims) >= 1 and distinct and not periodic and mixed == 3
    return _record(8, ok, f"one loop m=3: Hom_C(P, Sigma^-s P) = {dims} vs H^-s = {[h[-1], h[-2], h[-3]]}, "
                          f"RA0..2 distinct: {distinct}, periodicity fails: {not periodic}; "
                          f"two loops Hom_C(LA2, Sigma RA1) = {mixed} (want 3)")


def criterion_9():
    parts, ok = [], True
    for n in (2, 3):
        r = rigidity_check(preprojective(*parse(linear_quiver(n, 2))), 2)
        parts.append(f"A{n}: HH0={r.dims[0]} HH1={r.dims[1]} stable={r.stable}")
        ok = ok and r.dims[0] == n and r.dims[1] == 0 and r.stable and r.ok
    r = rigidity_check(preprojective(*parse(ONE_LOOP)), 2)
    parts.append(f"one loop rigid={r.ok} witness={r.loops.get(1)}")
    ok = ok and not r.ok and r.loops.get(1) == ["a"]
    return _record(9, ok, "; ".join(parts))


def criterion_10():
    b = run_scenario("euler-les")
    sums = [a for a in b.assertions if a["check"].endswith("alternating sum")]
    bad = [a["check"] for a in b.assertions if not a["ok"]]
    ok = b.ok and len(sums) >= 5
    return _record(10, ok, f"alternating sum 0 on {len(sums) - len([s for s in sums if not s['ok']])}/{len(sums)} "
                           f"A3 m=2 pairs; A2 m=1 additivity holds"
                   + (f"; failures {bad}" if bad else ""))


def _random_element(rng, alg, max_len):
    deg = rng.randint(-3, 0)
    paths = [x for x in alg.paths(None, None, deg) if alg.length(x) <= max_len]
    if not paths:
        return {}
    chosen = rng.sample(paths, min(len(paths), rng.randint(1, 3)))
    return {x: coeff(rng.choice([-2, -1, 1, 2, 3])) for x in chosen}


def _random_model(rng):
    vs = tuple(f"v{k}" for k in range(rng.randint(1, 4)))
    arrows = [Arrow(f"x{k}", rng.choice(vs), rng.choice(vs), rng.randint(-3, 0)) for k in range(rng.randint(0, 5))]
    terms = []
    for _ in range(rng.randint(0, 3)):
        if not arrows:
            break
        walk = [rng.choice(arrows)]
        for _ in range(rng.randint(0, 3)):
            nxt = [a for a in arrows if a.target == walk[-1].source]
            if not nxt:
                break
            walk.append(rng.choice(nxt))
        terms.append((tuple(a.name for a in walk), coeff(rng.choice([1, -1, 2]))))
    return GradedQuiver(vs, tuple(arrows)), Superpotential(tuple(terms)), rng.randint(1, 6)


def criterion_11():
    rng = random.Random(11)
    algs = [ginzburg(*parse(ONE_LOOP)), preprojective(*parse(TWO_LOOPS)), _g(3, 2),
            ginzburg(*parse("m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n"
                            "arrow c: 3 -> 1 deg 0\npotential (c b a)\n"))]
    d2_fail = leib_fail = elements = 0
    while elements < 1000:
        alg = algs[elements % len(algs)]
        x = _random_element(rng, alg, alg.truncation // 2 - 1)
        y = _random_element(rng, alg, alg.truncation // 2 - 1)
        if not x or not y:
            continue
        elements += 1
        if alg.d(alg.d(x)):
            d2_fail += 1
        lhs = alg.d(alg.mul(x, y))
        rhs = alg.mul(alg.d(x), y)
        sign = -1 if alg.element_degree(x) % 2 else 1
        for key, c in alg.mul(x, alg.d(y)).items():
            v = rhs.get(key, 0) + sign * c
            if v:
                rhs[key] = v
            else:
                rhs.pop(key, None)
        if lhs != rhs:
            leib_fail += 1
    trip_fail = 0
    for _ in range(200):
        q, w, m = _random_model(rng)
        text = print_model(q, w, m)
        if parse(text) != (q, w, m) or print_model(*parse(text)) != text:
            trip_fail += 1
    supp_fail = serre_fail = modules = serre_checked = 0
    for n, m in QUIVER_SET:
        g = _g(n, m)
        for v in g.vertices:
            for d in ("right", "left"):
                for x in mutations(g, v, d, m + 1):
                    modules += 1
                    if support(x) != support_oracle(x):
                        supp_fail += 1
                    for _, _, lhs, rhs in serre_pairs(x):
                        serre_checked += 1
                        serre_fail += lhs != rhs
    ok = not (d2_fail or leib_fail or trip_fail or supp_fail or serre_fail)
    return _record(11, ok, f"d^2=0 fails {d2_fail}/1000, Leibniz fails {leib_fail}/1000, "
                           f"round-trip fails {trip_fail}/200, support mismatches {supp_fail}/{modules}, "
                           f"Serre mismatches {serre_fail}/{serre_checked}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("k", range(1, 12))
def test_acceptance_criterion(k):
    ok = CRITERIA[k - 1]()
    print(line(k))
    assert ok, line(k)


if __name__ == "__main__":
    start = time.perf_counter()
    status = 0
    for k, crit in enumerate(CRITERIA, 1):
        crit()
        print(line(k), flush=True)
        status |= not RESULTS[k][0]
    print(f"total {time.perf_counter() - start:.1f}s")
    sys.exit(status)
