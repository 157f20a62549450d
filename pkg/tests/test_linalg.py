from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from silting_lab.linalg import Solver, axpy, cohomology, dense_rank, kernel, quotient_basis, rank, solve, to_dense

small = st.integers(-3, 3)


def columns(draw_rows, draw_cols):
    return st.lists(st.lists(small, min_size=draw_rows, max_size=draw_rows), min_size=draw_cols, max_size=draw_cols)


def as_vectors(cols):
    return [{i: mpq(a) for i, a in enumerate(c) if a} for c in cols]


def test_dense_rank_known():
    assert dense_rank([[1, 2], [2, 4]]) == 1
    assert dense_rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert dense_rank([]) == 0


def test_axpy_cancels():
    v = {0: mpq(1), 1: mpq(2)}
    axpy(v, -1, {0: 1})
    assert v == {1: 2}


def test_kernel_of_zero_columns_is_unit():
    assert kernel([{}, {0: 1}, {}]) == [{0: 1}, {2: 1}]


def test_cohomology_of_exact_pair():
    # k --1--> k --0--> 0 : acyclic
    dim, _ = cohomology([{0: mpq(1)}], [{}])
    assert dim == 0


@settings(max_examples=150)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: columns(r, c).map(lambda x: (r, x)))))
def test_rank_agrees_with_dense(data):
    r, cols = data
    vecs = as_vectors(cols)
    assert rank(vecs) == dense_rank(to_dense(vecs, r))
    ker = kernel(vecs)
    assert len(ker) + rank(vecs) == len(cols)
    for k in ker:
        acc = {}
        for j, a in k.items():
            axpy(acc, a, vecs[j])
        assert not acc


@settings(max_examples=150)
@given(st.integers(1, 4).flatmap(lambda r: columns(r, 4).map(lambda x: (r, x))), st.lists(small, min_size=4, max_size=4))
def test_solve_recovers_combination(data, xs):
    r, cols = data
    vecs = as_vectors(cols)
    target = {}
    for a, v in zip(xs, vecs):
        axpy(target, mpq(a), v)
    for sol in (solve(vecs, target), Solver(vecs).solve(target)):
        assert sol is not None
        acc = {}
        for j, a in sol.items():
            axpy(acc, a, vecs[j])
        assert acc == target


def test_solve_reports_inconsistency():
    assert solve([{0: mpq(1)}], {1: mpq(1)}) is None


def test_quotient_basis_skips_subspace():
    assert quotient_basis([{0: 1}, {1: 1}, {0: 1, 1: 1}], [{0: 1}]) == [1]
