"""Smith normal form against a gcd-of-minors oracle; homology profiles."""

import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kirbycalc.handles import HandleDecomposition
from kirbycalc.homology import (
    IntMatrix,
    boundary_first_homology,
    boundary_group_order,
    det,
    hermite_row_basis,
    homology,
    inertia,
    invert_rational,
    is_homology_trivial,
    kernel_basis,
    smith_normal_form,
)
from test_handles import cp_chain, nn_model, wn_model


def minor_gcds(m: IntMatrix) -> list[int]:
    """gcd of all k x k minors, k = 1..rank bound; the independent SNF oracle."""
    out = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = IntMatrix.from_rows([[m[i, j] for j in cols] for i in rows], k)
                g = gcd(g, det(sub))
        out.append(abs(g))
    return out


def assert_valid_snf(m: IntMatrix):
    snf = smith_normal_form(m)
    assert snf.u @ m @ snf.v == snf.s
    assert abs(det(snf.u)) == 1
    assert abs(det(snf.v)) == 1
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    for i in range(snf.s.rows):
        for j in range(snf.s.cols):
            if i != j:
                assert snf.s[i, j] == 0
    gcds = minor_gcds(m)
    prod = 1
    for k, d in enumerate(diag):
        prod *= d
        assert prod == gcds[k]
    return snf


def test_snf_diag_2_3():
    snf = assert_valid_snf(IntMatrix.diagonal([2, 3]))
    assert snf.diagonal == (1, 6)


def test_snf_zero_matrix():
    snf = smith_normal_form(IntMatrix.zeros(2, 3))
    assert snf.s == IntMatrix.zeros(2, 3)
    assert snf.u == IntMatrix.identity(2)
    assert snf.v == IntMatrix.identity(3)


def test_snf_bp_boundary_presentation():
    snf = assert_valid_snf(IntMatrix.from_rows([[0, 2], [2, 1]]))
    assert snf.diagonal == (1, 4)


def test_snf_random_small():
    rng = random.Random(2026)
    for _ in range(120):
        r, c = rng.randrange(1, 6), rng.randrange(1, 6)
        m = IntMatrix.from_rows([[rng.randrange(-9, 10) for _ in range(c)]
                                 for _ in range(r)], c)
        assert_valid_snf(m)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=1, max_size=5),
                min_size=1, max_size=5).filter(
                    lambda rows: len({len(r) for r in rows}) == 1))
def test_snf_properties_hypothesis(rows):
    assert_valid_snf(IntMatrix.from_rows(rows, len(rows[0])))


def test_det_examples():
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.from_rows([[2, 1], [1, 2]])) == 3
    assert det(IntMatrix.identity(0)) == 1
    assert det(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_inertia_examples():
    assert inertia(IntMatrix.diagonal([3, -1, 0])) == (1, 1, 1)
    assert inertia(IntMatrix.from_rows([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(IntMatrix.from_rows([[0, 1], [1, -2]])) == (1, 1, 0)
    # negative definite chain
    m = IntMatrix.from_rows([[-2, 1, 0], [1, -2, 1], [0, 1, -2]])
    assert inertia(m) == (0, 3, 0)


def test_invert_rational_round_trip():
    m = IntMatrix.from_rows([[2, 1], [1, 1]])
    inv = invert_rational(m)
    n = m.rows
    prod = [[sum(inv[i][k] * m[k, j] for k in range(n)) for j in range(n)]
            for i in range(n)]
    assert prod == [[1, 0], [0, 1]]


def test_hermite_basis_is_canonical():
    a = hermite_row_basis([(2, 4), (3, 6)], 2)
    b = hermite_row_basis([(3, 6), (2, 4), (5, 10)], 2)
    assert a == b == ((1, 2),)


def test_kernel_of_zero_row_matrix_is_identity():
    assert kernel_basis(IntMatrix.zeros(0, 3)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_kernel_members_annihilate():
    rng = random.Random(9)
    for _ in range(40):
        r, c = rng.randrange(1, 5), rng.randrange(1, 6)
        m = IntMatrix.from_rows([[rng.randrange(-4, 5) for _ in range(c)]
                                 for _ in range(r)], c)
        for v in kernel_basis(m):
            assert all(sum(m[i, j] * v[j] for j in range(c)) == 0
                       for i in range(m.rows))


# -- homology of decompositions ------------------------------------------------

def test_wn_homology_trivial():
    prof = homology(wn_model())
    assert prof.h1_trivial and prof.h2_rank == 0
    assert is_homology_trivial(wn_model())
    assert boundary_first_homology(wn_model()) == ()


def test_c2_profile():
    d = HandleDecomposition(two_handles=(("u1", -4),))
    prof = homology(d)
    assert prof.h2_rank == 1
    assert prof.intersection_form.to_lists() == [[-4]]
    assert not is_homology_trivial(d)


def test_nn_homology():
    prof = homology(nn_model(3))
    assert prof.h1_trivial
    assert prof.h2_rank == 1
    assert prof.intersection_form.to_lists() == [[0]]


def test_no_one_handles_form_is_linking_matrix():
    rng = random.Random(13)
    for _ in range(20):
        n2 = rng.randrange(1, 5)
        twos = tuple((f"k{i}", rng.randrange(-5, 6)) for i in range(n2))
        links = {(f"k{i}", f"k{j}"): rng.randrange(-3, 4)
                 for i in range(n2) for j in range(i + 1, n2)}
        d = HandleDecomposition(two_handles=twos, links=links)
        prof = homology(d)
        assert prof.h2_rank == n2
        assert prof.intersection_form.to_lists() == [
            [d.framing(a) if a == b else d.link(a, b)
             for b in d.two_handle_ids] for a in d.two_handle_ids]


@pytest.mark.parametrize("p", range(2, 11))
def test_cp_boundary_is_cyclic_p_squared(p):
    factors = boundary_first_homology(cp_chain(p))
    assert factors == (p * p,)


def test_bp_block_boundary():
    d = HandleDecomposition(one_handles=("b0",), two_handles=(("b1", 1),),
                            run_through={("b1", "b0"): 2})
    assert boundary_group_order(d) == 4


def test_zero_framed_unknot_boundary_is_free():
    d = HandleDecomposition(two_handles=(("a", 0),))
    assert boundary_first_homology(d) == (0,)
    assert boundary_group_order(d) is None
