import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from monofan import lattice as lat
from monofan.errors import NoPositiveGrading

import oracles

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def check_snf(A):
    U, D, V = lat.smith_normal_form(A)
    assert lat.mat_mul(lat.mat_mul(U, A), V) == D
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return diag


def test_snf_identity_and_zero():
    assert check_snf(((1, 0), (0, 1))) == [1, 1]
    U, D, V = lat.smith_normal_form(((0, 0), (0, 0)))
    assert D == ((0, 0), (0, 0)) and U == lat.identity(2) and V == lat.identity(2)


def test_snf_diag_2_3():
    assert check_snf(((2, 0), (0, 3))) == [1, 6]


@given(matrices())
def test_snf_properties(A):
    diag = check_snf(tuple(map(tuple, A)))
    assert sum(1 for d in diag if d) == sympy.Matrix(A).rank()


def test_kernel_examples():
    K = lat.kernel_basis(((2, 3),))
    assert len(K) == 1 and K[0] in ((3, -2), (-3, 2))
    brute = [x for x in itertools.product(range(-5, 6), repeat=2) if 2 * x[0] + 3 * x[1] == 0]
    assert all(x[0] % 3 == 0 and x == (x[0], -2 * x[0] // 3) for x in brute)
    assert lat.kernel_basis(lat.identity(3)) == []
    K = lat.kernel_basis(((1, 1, 1),))
    assert len(K) == 2 and all(sum(x) == 0 for x in K)
    assert sympy.Matrix(K).rank() == 2


@given(matrices())
def test_kernel_spans_integer_kernel(A):
    A = tuple(map(tuple, A))
    n = len(A[0])
    K = lat.kernel_basis(A)
    assert len(K) == n - sympy.Matrix(A).rank()
    assert all(not any(lat.mat_vec(A, x)) for x in K)
    # every small integer kernel vector is an integer combination of the basis
    H = lat.hermite_normal_form(K, n) if K else ()
    for x in itertools.product(range(-2, 3), repeat=n):
        if not any(lat.mat_vec(A, x)):
            assert lat.lattice_contains(H, x)


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_integer(A, b):
    A = tuple(map(tuple, A))
    b = tuple(b[: len(A)])
    x = lat.solve_integer(A, b)
    if x is not None:
        assert lat.mat_vec(A, x) == b
    else:
        n = len(A[0])
        assert not any(lat.mat_vec(A, y) == b for y in itertools.product(range(-4, 5), repeat=n))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_is_canonical(rows):
    H = lat.hermite_normal_form(rows, 3)
    # same lattice from a shuffled, redundant generating set
    rows2 = list(reversed(rows)) + [lat.add(rows[0], rows[-1])]
    assert lat.hermite_normal_form(rows2, 3) == H
    assert all(lat.lattice_contains(H, r) for r in rows)
    assert len(H) == sympy.Matrix(rows).rank()


def test_saturate_and_intersect():
    assert lat.saturate_lattice(((2, 0), (0, 2)), 2) == lat.identity(2)
    assert lat.saturate_lattice(((2, 4),), 2) == ((1, 2),)
    I = lat.lattice_intersection(((2, 0), (0, 1)), ((1, 0), (0, 3)), 2)
    assert I == ((2, 0), (0, 3))


def test_unimodular_completion():
    P, Pinv = lat.unimodular_completion(((1, 1, 0),), 3)
    assert lat.mat_mul(P, Pinv) == lat.identity(3)
    y = lat.mat_vec(P, (1, 1, 0))
    assert y[0] != 0 and not any(y[1:])
    with pytest.raises(ValueError):
        lat.unimodular_completion(((2, 0, 0),), 3)


def test_unimodular_maps_square_symmetries():
    pts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    maps = list(lat.unimodular_maps(pts, pts, 2))
    assert len(maps) == 8
    for M in maps:
        assert {lat.mat_vec(M, p) for p in pts} == set(pts)


def test_solve_nonneg_examples():
    assert lat.solve_nonneg([(2,), (3,)], (7,), (1,)) == (2, 1)
    assert lat.solve_nonneg([(2,), (3,)], (1,), (1,)) is None
    assert lat.solve_nonneg([(2,), (3,)], (0,), (1,)) == (0, 0)
    with pytest.raises(NoPositiveGrading):
        lat.solve_nonneg([(2,), (3,)], (1,), None)
    with pytest.raises(NoPositiveGrading):
        lat.solve_nonneg([(2,), (-3,)], (1,), (1,))


gens2 = st.lists(st.tuples(st.integers(1, 4), st.integers(-3, 3)), min_size=1, max_size=4)


@given(gens2, st.tuples(st.integers(0, 12), st.integers(-12, 12)))
def test_solve_nonneg_matches_exhaustive(G, v):
    # grading (1, 0) is positive on every generator and bounds each coefficient by v[0]
    x = lat.solve_nonneg(G, v, (1, 0))
    brute = oracles.brute_solve(G, v, v[0])
    assert (x is None) == (brute is None)
    if x is not None:
        assert all(c >= 0 for c in x)
        assert tuple(sum(c * g[k] for c, g in zip(x, G)) for k in range(2)) == v


def test_solve_nonneg_with_units():
    # Z x N: units (1,0), (-1,0)
    G = [(1, 0), (-1, 0), (0, 1)]
    x = lat.solve_nonneg(G, (-5, 2), (0, 1))
    assert x is not None and min(x) >= 0
    assert (x[0] - x[1], x[2]) == (-5, 2)
    assert lat.solve_nonneg(G, (0, -1), (0, 1)) is None
