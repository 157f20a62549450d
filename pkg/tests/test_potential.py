import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from silting_lab.algebra import DgPathAlgebra
from silting_lab.potential import (
    check_strongly_cy_presentation,
    cyclic_derivative,
    ginzburg,
    ginzburg_to_dpp,
    normalize_degrees,
    preprojective,
)
from silting_lab.quiver import Superpotential, parse
from silting_lab.scalars import I, coeff
from silting_lab.scenarios import ONE_LOOP, TWO_LOOPS, linear_quiver

CYCLE3 = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\npotential (c b a)\n"


def d_of(alg, name):
    return alg.format(alg.darr[alg.index[name]])


def brute_derivative(w, a, alg):
    """Independent enumeration of every splitting ``p = u a v``."""
    out = {}
    for word, c in w.terms:
        for k in range(len(word)):
            if word[k] != a:
                continue
            u, v = word[:k], word[k + 1:]
            du = sum(alg.deg[alg.index[n]] for n in u)
            dv = sum(alg.deg[alg.index[n]] for n in v)
            sign = -1 if ((alg.deg[alg.index[a]] + dv) * du) % 2 else 1
            path = tuple(alg.index[n] for n in v + u)
            out[path] = out.get(path, 0) + sign * c
    return {p: c for p, c in out.items() if c}


def test_three_cycle_derivative():
    q, w, m = parse(CYCLE3)
    g = ginzburg(q, w, m)
    assert g.format(cyclic_derivative(w, "a", g)) == "(c b)"
    assert d_of(g, "a*") == "(c b)"


def test_zero_potential_derivative():
    q, w, m = parse(linear_quiver(2, 1))
    g = ginzburg(q, w, m)
    assert cyclic_derivative(w, "a1", g) == {}


def test_unknown_arrow():
    q, w, m = parse(CYCLE3)
    g = ginzburg(q, w, m)
    with pytest.raises(KeyError):
        cyclic_derivative(w, "zz", g)


def test_repeated_arrow_matches_brute_force():
    src = "m 1\nvertex o\narrow x: o -> o deg 0\narrow y: o -> o deg 0\npotential (x x y) + 2*(x y x y)\n"
    q, _, m = parse(src)
    g = ginzburg(q, Superpotential(), m)
    w = Superpotential(((("x", "x", "y"), coeff(1)), (("x", "y", "x", "y"), coeff(2))))
    for a in ("x", "y"):
        assert cyclic_derivative(w, a, g) == brute_derivative(w, a, g)


@settings(max_examples=60)
@given(st.lists(st.sampled_from(["a", "b", "a*", "b*"]), min_size=2, max_size=5), st.sampled_from(["a", "b", "a*", "b*"]))
def test_graded_derivative_matches_brute_force(word, a):
    q, w0, m = parse("m 3\nvertex o\narrow a: o -> o deg -1\narrow b: o -> o deg 0\n")
    g = ginzburg(q, w0, m)
    w = Superpotential(((tuple(word), coeff(1)),))
    assert cyclic_derivative(w, a, g) == brute_derivative(w, a, g)


def test_rotation_invariance_in_degree_zero():
    q, w, m = parse(CYCLE3)
    g = ginzburg(q, w, m)
    rotated = Superpotential(((("b", "a", "c"), coeff(1)),))
    for a in "abc":
        assert cyclic_derivative(w, a, g) == cyclic_derivative(rotated, a, g)


def test_one_loop_ginzburg():
    q, w, m = parse(ONE_LOOP)
    g = ginzburg(q, w, m)
    assert [(n, d) for n, d in zip(g.names, g.deg)] == [("a", -1), ("a*", -1), ("t_o", -3)]
    assert d_of(g, "a") == "0" and d_of(g, "a*") == "0"
    assert d_of(g, "t_o") == "(a a*) + (a* a)"


def test_a2_ginzburg_t_loops():
    q, w, m = parse(linear_quiver(2, 1))
    g = ginzburg(q, w, m)
    assert dict(zip(g.names, g.deg)) == {"a1": 0, "a1*": -1, "t_1": -2, "t_2": -2}
    assert d_of(g, "t_1") == "-(a1* a1)"
    assert d_of(g, "t_2") == "(a1 a1*)"


def test_empty_quiver_ginzburg():
    q, w, m = parse("m 1\nvertex 1\n")
    g = ginzburg(q, w, m)
    assert g.names == ("t_1",) and d_of(g, "t_1") == "0"


def test_preprojective_self_dual_loops():
    q, w, m = parse(ONE_LOOP)
    p = preprojective(q, w, m)
    assert p.names == ("a", "t_o")
    assert d_of(p, "t_o") == "2*(a a)"
    q, w, m = parse(TWO_LOOPS)
    p = preprojective(q, w, m)
    assert d_of(p, "al") == "0" and d_of(p, "be") == "0"
    assert d_of(p, "t_o") == "2*(al al) + 2*(be be)"


def test_arrow_differentials_raise_degree():
    for src, kind in [(CYCLE3, ginzburg), (ONE_LOOP, preprojective), (linear_quiver(3, 2), preprojective)]:
        alg = kind(*parse(src))
        for k in range(len(alg.names)):
            for p in alg.darr[k]:
                assert alg.degree(p) == alg.deg[k] + 1


def test_ginzburg_to_dpp_one_loop():
    q, w, m = parse(ONE_LOOP)
    g = ginzburg(q, w, m)
    target, iota = ginzburg_to_dpp(g)
    assert set(target.names) == {"a'", "a''", "t_o"}
    assert iota.images["a"] == {(target.index["a'"],): 1, (target.index["a''"],): I}
    assert iota.images["a*"] == {(target.index["a'"],): 1, (target.index["a''"],): -I}
    # iota(aa* + a*a) = 2a'^2 + 2a''^2 = d(t)
    dt = iota.apply(g.darr[g.index["t_o"]])
    assert target.format(dt) == "2*(a' a') + 2*(a'' a'')"
    assert target.format(target.darr[target.index["t_o"]]) == target.format(dt)
    assert not iota.commutes_with_d()


def test_ginzburg_to_dpp_without_special_loops_is_identity():
    q, w, m = parse(CYCLE3)
    target, iota = ginzburg_to_dpp(ginzburg(q, w, m))
    assert iota.is_identity()
    # d(a*) in the target comes from -W, matching the Ginzburg sign
    assert d_of(target, "a*") == "(c b)"


def test_normalize_identity_when_in_range():
    p = preprojective(*parse(linear_quiver(2, 2)))
    target, iota = normalize_degrees(p)
    assert iota.is_identity()


def test_normalize_moves_low_degree_arrow():
    q, w, m = parse("m 2\nvertex 1 2\narrow b: 1 -> 2 deg -2\n")
    p = preprojective(q, w, m, require_good=False)
    target, iota = normalize_degrees(p)
    new = target.info["base"].arrows[0]
    assert (new.source, new.target, new.degree) == ("2", "1", 0)
    assert iota.images["b"] == {(target.index[new.name + "*"],): -1}
    assert not iota.commutes_with_d()


def test_cy_report_passes_on_ginzburg():
    for src in (ONE_LOOP, CYCLE3, linear_quiver(3, 2)):
        q, w, m = parse(src)
        rep = check_strongly_cy_presentation(ginzburg(q, w, m), m)
        assert rep.ok, rep.to_json()
    q, w, m = parse(ONE_LOOP)
    rep = check_strongly_cy_presentation(ginzburg(q, w, m), m)
    assert rep.details["eta_plus"]["a"] == "(a*)"


def test_cy_report_flags_missing_antisymmetry():
    alg = DgPathAlgebra(["o"], [("a", 0, 0, -1), ("a*", 0, 0, -1), ("t", 0, 0, -3)], {"t": {(0, 1): 1}})
    rep = check_strongly_cy_presentation(alg, 2)
    assert rep.checks["c_antisymmetric"] is False


def test_bad_potential_raises():
    src = "m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\npotential (b a)\n"
    with pytest.raises(ValueError):
        ginzburg(*parse(src))
