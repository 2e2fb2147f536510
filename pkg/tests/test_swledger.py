"""SW ledger: characteristic classes, blow-up, descent, knot surgery."""

import random
import warnings
from itertools import product

import pytest

from kirbycalc.homology import IntMatrix
from kirbycalc.swledger import (
    BasicClassSet,
    IntersectionLattice,
    LaurentPolynomial,
    LedgerError,
    ManifoldModel,
    adjunction_check,
    alexander_polynomial_torus,
    blow_up_basic_classes,
    d_invariant,
    d_invariant_primal,
    is_characteristic,
    is_simple_type,
    knot_surgery_basic_classes,
    min_genus_bound,
    random_characteristic_vector,
    rational_blowdown_descend,
    rbd_lift_eligible,
    restriction_profile,
)


def lat(rows, names=None):
    return IntersectionLattice(IntMatrix.from_rows(rows, len(rows[0]) if rows else 0),
                               names or {})


HYPERBOLIC = lat([[0, 1], [1, 0]])


def hyperbolic_model(euler=0, signature=0, b2plus=2):
    return ManifoldModel(HYPERBOLIC, euler, signature, b2plus)


# -- characteristic elements ---------------------------------------------------

def test_characteristic_in_minus_one_lattice():
    L = lat([[-1]])
    assert is_characteristic(L, (1,))
    assert not is_characteristic(L, (0,))


def test_characteristic_in_c2_block():
    assert is_characteristic(lat([[-4]]), (2,))


def test_dual_square_matches_primal():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randrange(1, 5)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randrange(-4, 5)
        L = lat(rows)
        try:
            L.dual_square(tuple(0 for _ in range(n)))
        except LedgerError:
            continue            # degenerate pairing, skip
        v = tuple(rng.randrange(-3, 4) for _ in range(n))
        assert L.dual_square(L.dual(v)) == L.square(v)


# -- d-invariant ----------------------------------------------------------------

def test_d_invariant_odd_value_warns():
    m = ManifoldModel(lat([]), euler=2, signature=0, b2plus=2)
    with pytest.warns(UserWarning):
        assert d_invariant(m, ()) == -1


def test_d_invariant_k3_numbers():
    m = ManifoldModel(lat([[-2]]), euler=24, signature=-16, b2plus=3)
    assert d_invariant_primal(m, (0,)) == 0


def test_d_invariant_rejects_non_divisible():
    m = ManifoldModel(lat([[1]]), euler=0, signature=1, b2plus=2)
    with pytest.raises(LedgerError):
        d_invariant_primal(m, (1,))  # 1 - 0 - 3 = -2 not divisible by 4


def test_d_preserved_by_blow_up_identity():
    # K^2 drops by 1, e rises by 1, sigma drops by 1: net change -1 - 2 + 3 = 0
    rng = random.Random(3)
    for _ in range(20):
        m = ManifoldModel(HYPERBOLIC, euler=2 * rng.randrange(-3, 4),
                          signature=0, b2plus=2)
        k = (2 * rng.randrange(-2, 3), 2 * rng.randrange(-2, 3))
        if (HYPERBOLIC.square(k) - 2 * m.euler) % 4:
            continue
        beta = BasicClassSet.from_primal(HYPERBOLIC, [k, tuple(-x for x in k)])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            before = {d_invariant(m, kk) for kk in beta.members}
            m2, beta2 = blow_up_basic_classes(m, beta, 3)
            after = {d_invariant(m2, kk) for kk in beta2.members}
        assert after == before


# -- simple type -----------------------------------------------------------------

def test_simple_type_vacuous_on_empty():
    m = hyperbolic_model()
    assert is_simple_type(m, BasicClassSet(HYPERBOLIC))


def test_simple_type_k3_like():
    m = ManifoldModel(lat([[-2]]), euler=24, signature=-16, b2plus=3)
    assert is_simple_type(m, [(0,)])
    assert is_simple_type(m, [(0,)], convention="k2")


def test_simple_type_fails_both_conventions():
    m = ManifoldModel(lat([[4]]), euler=4, signature=0, b2plus=2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")   # d = -1 is odd, flagged
        assert not is_simple_type(m, [(1,)])
        assert not is_simple_type(m, [(1,)], convention="k2")


# -- blow-up formula ---------------------------------------------------------------

def test_blow_up_two_classes_once():
    k = (0, 2)
    beta = BasicClassSet.from_primal(HYPERBOLIC, [k, (0, -2)])
    m2, beta2 = blow_up_basic_classes(hyperbolic_model(), beta, 1)
    assert beta2.count == 4
    assert m2.euler == 1 and m2.signature == -1
    assert m2.lattice.rank == 3


def test_blow_up_zero_times_is_identity():
    beta = BasicClassSet.from_primal(HYPERBOLIC, [(0, 2), (0, -2)])
    m, beta2 = blow_up_basic_classes(hyperbolic_model(), beta, 0)
    assert beta2 is beta


def test_blow_up_rejects_empty():
    with pytest.raises(LedgerError):
        blow_up_basic_classes(hyperbolic_model(), BasicClassSet(HYPERBOLIC), 1)


def test_blow_up_matches_brute_force_enumeration():
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randrange(1, 5)
        base = [(2 * rng.randrange(-3, 4), 2 * rng.randrange(-3, 4))
                for _ in range(rng.randrange(1, 4))]
        primal = []
        for v in base:
            primal.extend([v, tuple(-x for x in v)])
        beta = BasicClassSet.from_primal(HYPERBOLIC, primal)
        m2, beta2 = blow_up_basic_classes(hyperbolic_model(), beta, n)
        # oracle: enumerate K +- E_i directly in the extended lattice
        expected = set()
        for kappa in beta.members:
            for signs in product((1, -1), repeat=n):
                expected.add(kappa + tuple(-s for s in signs))
        assert set(beta2.members) == expected
        assert beta2.count == (1 << n) * beta.count
        for kappa in beta2.members:
            assert tuple(-x for x in kappa) in beta2.weights
            assert m2.lattice.is_characteristic_dual(kappa)


# -- adjunction --------------------------------------------------------------------

def test_adjunction_torus_forces_zero_pairing():
    m = hyperbolic_model()
    good = BasicClassSet.from_primal(HYPERBOLIC, [(0, 0)])
    torus = (1, 0)
    assert adjunction_check(m, good, torus, 1).ok
    bad = BasicClassSet.from_primal(HYPERBOLIC, [(0, 2), (0, -2)])
    report = adjunction_check(m, bad, torus, 1)
    assert not report.ok
    assert {abs(p) for _, p in report.violators} == {2}


def test_adjunction_zero_class_always_passes():
    m = hyperbolic_model()
    beta = BasicClassSet.from_primal(HYPERBOLIC, [(0, 2), (0, -2)])
    for g in (1, 2, 5):
        assert adjunction_check(m, beta, (0, 0), g).ok


def test_adjunction_rejects_nonpositive_genus():
    m = hyperbolic_model()
    with pytest.raises(LedgerError):
        adjunction_check(m, BasicClassSet(HYPERBOLIC), (1, 0), 0)


def test_adjunction_torus_knot_surface_bound():
    # class of square p^2 - p - 2 represented by a genus p(p-1)/2 surface
    for p in (2, 3, 4, 5):
        sq = p * p - p - 2
        L = lat([[sq, 1, 0], [1, 0, 0], [0, 0, -2]])
        m = ManifoldModel(L, euler=3, signature=-2, b2plus=2)
        beta = BasicClassSet.from_primal(L, [(0, 0, 0)])
        w = (1, 0, 0)
        g = p * (p - 1) // 2
        rep = adjunction_check(m, beta, w, g)
        assert rep.ok
        # and the bound is sharp: any class pairing nonzero with w violates it
        assert sq + 1 > 2 * g - 2


# -- minimal genus ------------------------------------------------------------------

def test_min_genus_bound_examples():
    m = hyperbolic_model()
    zero = BasicClassSet.from_primal(HYPERBOLIC, [(0, 0)])
    assert min_genus_bound(m, zero, (1, 0)) == 1          # no pairing, square 0
    paired = BasicClassSet.from_primal(HYPERBOLIC, [(0, 6), (0, -6)])
    # alpha^2 = 0, max pairing 6: 2g - 2 >= 6 forces g >= 4
    assert min_genus_bound(m, paired, (1, 0)) == 4


def test_min_genus_bound_no_constraint_for_negative_square():
    L = lat([[-2, 0, 0], [0, 0, 1], [0, 1, 0]])
    m = ManifoldModel(L, euler=3, signature=-2, b2plus=2)
    beta = BasicClassSet.from_primal(L, [(0, 0, 0)])
    with pytest.warns(UserWarning):
        assert min_genus_bound(m, beta, (1, 0, 0)) == 0


# -- rational blowdown lifts and descent ----------------------------------------------

def test_lift_eligibility():
    # chain vectors enter only through their pairings with K
    k2 = (2,)
    assert rbd_lift_eligible(k2, [(1,)])                  # p = 2, <K,u1> = 2
    assert rbd_lift_eligible((0, 3), [(1, 0), (0, 1)])    # p = 3
    assert not rbd_lift_eligible((1, 3), [(1, 0), (0, 1)])
    assert not rbd_lift_eligible((0, 2), [(1, 0), (0, 1)])


# basis (e, u_0, u_1, u_2, z): the p = 3 chain pattern with e.u_2 = 3, plus a
# square -2 parity corrector z so an integer Euler number gives d = 0
P3_BLOCK = [[-1, 0, 0, 3, 0],
            [0, -2, 1, 0, 0],
            [0, 1, -2, 1, 0],
            [3, 0, 1, -5, 0],
            [0, 0, 0, 0, -2]]


def p3_setup():
    L = lat(P3_BLOCK)
    chain = [(0, 0, 1, 0, 0), (0, 0, 0, 1, 0)]            # u_1, u_2
    complement = [(1, -6, -3, 0, 0), (0, 9, 5, 1, 0), (0, 0, 0, 0, 1)]
    return L, chain, complement


def p3_model(L):
    # K = -e has square -1; sigma(P3_BLOCK) = -3, so e(Z) = (-1 + 9)/2 = 4
    return ManifoldModel(L, euler=4, signature=-3, b2plus=2)


def test_p3_complement_is_orthogonal():
    L, chain, complement = p3_setup()
    for c in complement:
        for u in chain:
            assert L.pair(c, u) == 0


def test_p3_restrictions_distinguish_opposite_lifts():
    L, chain, complement = p3_setup()
    k_minus = L.dual((-1, 0, 0, 0, 0))     # -e
    k_plus = L.dual((1, 0, 0, 0, 0))       # +e
    assert rbd_lift_eligible(k_minus, chain)
    assert rbd_lift_eligible(k_plus, chain)
    r1 = restriction_profile(k_minus, complement)
    r2 = restriction_profile(k_plus, complement)
    assert r1 != r2
    # alpha = e + u_2 + 2 u_1 + 3 u_0 lies in the complement span and separates them
    alpha = (1, 3, 2, 1, 0)
    assert all(L.pair(alpha, u) == 0 for u in chain)
    assert sum(a * b for a, b in zip(k_minus, alpha)) == -2   # (1-p) <K, e>
    assert sum(a * b for a, b in zip(k_plus, alpha)) == 2


def test_p3_descend_preserves_d_honestly():
    L, chain, complement = p3_setup()
    model = p3_model(L)
    beta = BasicClassSet.from_primal(L, [(-1, 0, 0, 0, 0), (1, 0, 0, 0, 0)])
    assert is_simple_type(model, beta)
    m2, beta2 = rational_blowdown_descend(model, beta, chain, complement)
    assert beta2.count == 2
    assert m2.euler == model.euler - 2
    assert m2.signature == model.signature + 2
    for kappa in beta2.members:
        assert m2.lattice.dual_square(kappa) == -1 + 2    # K^2 + (p-1), computed honestly
        assert d_invariant(m2, kappa) == 0
        assert m2.lattice.is_characteristic_dual(kappa)


def test_descend_empty_set():
    L, chain, complement = p3_setup()
    _, beta2 = rational_blowdown_descend(p3_model(L), BasicClassSet(L),
                                         chain, complement)
    assert beta2.count == 0


def test_descend_rejects_ineligible():
    L, chain, complement = p3_setup()
    # 3e is characteristic but evaluates to 9 (not +-3) on u_2
    beta = BasicClassSet.from_primal(L, [(3, 0, 0, 0, 0), (-3, 0, 0, 0, 0)])
    with pytest.raises(LedgerError):
        rational_blowdown_descend(p3_model(L), beta, chain, complement)


# -- Alexander polynomials --------------------------------------------------------------

def test_trefoil_alexander():
    assert alexander_polynomial_torus(3, 2).coeffs == {1: 1, 0: -1, -1: 1}


def test_52_alexander():
    assert alexander_polynomial_torus(5, 2).coeffs == \
        {2: 1, 1: -1, 0: 1, -1: -1, -2: 1}


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 2), (4, 3), (5, 3), (5, 4)])
def test_alexander_symmetric_and_unit(p, q):
    poly = alexander_polynomial_torus(p, q)
    assert poly.is_symmetric()
    assert poly(1) in (1, -1)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (4, 3), (5, 4)])
def test_alexander_against_multiplication_oracle(p, q):
    # independent route: multiply back by the denominator and compare
    poly = alexander_polynomial_torus(p, q)
    def tpow_minus_one(n):
        return LaurentPolynomial({n: 1, 0: -1})
    lhs = poly * tpow_minus_one(p) * tpow_minus_one(q)
    shift = (p - 1) * (q - 1) // 2
    rhs = LaurentPolynomial({p * q - shift: 1, -shift: -1}) * tpow_minus_one(1)
    assert lhs == rhs


def test_alexander_rejects_non_coprime():
    with pytest.raises(LedgerError):
        alexander_polynomial_torus(4, 2)


def test_laurent_str():
    assert str(alexander_polynomial_torus(3, 2)) == "t - 1 + t^-1"


# -- knot surgery --------------------------------------------------------------------------

def surgery_setup():
    m = hyperbolic_model()
    beta = BasicClassSet.from_primal(HYPERBOLIC, [(0, 2), (0, -2)])
    return m, beta, (1, 0)


def test_surgery_with_unknot_is_identity():
    m, beta, torus = surgery_setup()
    assert knot_surgery_basic_classes(m, beta, torus, LaurentPolynomial.one()) == beta


def test_surgery_with_trefoil_gives_six_classes():
    m, beta, torus = surgery_setup()
    out = knot_surgery_basic_classes(m, beta, torus, alexander_polynomial_torus(3, 2))
    assert out.count == 6
    expected = BasicClassSet.from_primal(
        HYPERBOLIC,
        [(0, 2), (2, 2), (-2, 2), (0, -2), (2, -2), (-2, -2)],
        [-1, 1, 1, -1, 1, 1])
    assert out == expected


def test_surgery_distinct_for_distinct_knots():
    m, beta, torus = surgery_setup()
    outs = [knot_surgery_basic_classes(m, beta, torus, alexander_polynomial_torus(p, q))
            for p, q in ((3, 2), (5, 2), (7, 2))]
    assert len({tuple(sorted(o.weights.items())) for o in outs}) == 3


def test_surgery_requires_square_zero_primitive_torus():
    m, beta, _ = surgery_setup()
    with pytest.raises(LedgerError):
        knot_surgery_basic_classes(m, beta, (1, 1), LaurentPolynomial.one())
    with pytest.raises(LedgerError):
        knot_surgery_basic_classes(m, beta, (2, 0), LaurentPolynomial.one())


def test_surgery_weight_cancellation_removes_classes():
    # K - 2T and (-K) + 2T both land on (0, 0) with opposite weights
    m = hyperbolic_model()
    beta = BasicClassSet(HYPERBOLIC, {(0, 2): 1, (0, -2): 1})
    poly = LaurentPolynomial({1: 1, -1: -1})   # antisymmetric test polynomial
    out = knot_surgery_basic_classes(m, beta, (1, 0), poly)
    assert (0, 0) not in out.weights
    assert set(out.weights) == {(0, 4), (0, -4)}


# -- random characteristic vectors ------------------------------------------------------

def test_random_characteristic_vectors_are_characteristic():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randrange(1, 6)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randrange(-3, 4)
        L = lat(rows)
        v = random_characteristic_vector(L, rng)
        assert is_characteristic(L, v)
