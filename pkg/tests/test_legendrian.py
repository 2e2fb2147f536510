"""Fronts: parsing, tb/rotation, torus-knot generators, Stein verdicts."""

import pytest

from kirbycalc.handles import HandleDecomposition
from kirbycalc.legendrian import (
    FrontError,
    component_count,
    max_tb_torus_knot,
    parse_front,
    reverse_orientation,
    rotation_number,
    seifert_genus_torus_knot,
    stein_check,
    thurston_bennequin,
    torus_knot_front,
    writhe,
)

UNKNOT = "L1 R1"
KINK = "L1 X1 R1"
TREFOIL = "L1 L2 X1 X1 X1 R2 R1"


def test_parse_unknot():
    f = parse_front(UNKNOT)
    assert len(f.events) == 2
    assert component_count(f) == 1


def test_parse_trefoil_structure():
    f = parse_front(TREFOIL)
    kinds = [e.kind for e in f.events]
    assert kinds.count("X") == 3
    assert kinds.count("R") == 2
    assert component_count(f) == 1


def test_parse_rejects_invalid_position():
    with pytest.raises(FrontError):
        parse_front("L1 R2")


def test_parse_rejects_unknown_token():
    with pytest.raises(FrontError):
        parse_front("L1 Q3 R1")


def test_parse_rejects_open_strands():
    with pytest.raises(FrontError):
        parse_front("L1 L1")


def test_marker_must_follow_its_cusp():
    with pytest.raises(FrontError):
        parse_front("L1 R1 O1+")
    f = parse_front("L1 O1- R1")
    assert f.events[0].orientation == "-"


def test_word_round_trip():
    for w in (UNKNOT, KINK, TREFOIL, "L1 O1+ X1 R1"):
        assert parse_front(w).word == w


def test_tb_unknot():
    assert thurston_bennequin(parse_front(UNKNOT)) == -1


def test_tb_trefoil_is_max():
    f = parse_front(TREFOIL)
    assert writhe(f) == 3
    assert thurston_bennequin(f) == 1
    assert thurston_bennequin(f) == max_tb_torus_knot(3, 2)


def test_tb_kink_is_stabilized_unknot():
    f = parse_front(KINK)
    assert writhe(f) == -1
    assert thurston_bennequin(f) == -2


def test_multi_component_needs_selector():
    f = parse_front("L1 R1 L1 R1")
    assert component_count(f) == 2
    with pytest.raises(FrontError):
        thurston_bennequin(f)
    assert thurston_bennequin(f, component=0) == -1
    assert thurston_bennequin(f, component=1) == -1


def test_rotation_standard_unknot():
    assert rotation_number(parse_front(UNKNOT)) == 0


def test_rotation_kink_is_odd():
    f = parse_front(KINK)
    r = rotation_number(f)
    assert r in (-1, 1)
    assert rotation_number(reverse_orientation(f)) == -r


def test_reversal_fixes_tb_and_negates_rotation():
    for w in (UNKNOT, KINK, TREFOIL):
        f = parse_front(w)
        g = reverse_orientation(f)
        assert thurston_bennequin(g) == thurston_bennequin(f)
        assert rotation_number(g) == -rotation_number(f)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (4, 3), (5, 3), (5, 4), (7, 2)])
def test_torus_front_realizes_max_tb(p, q):
    f = torus_knot_front(p, q)
    assert component_count(f) == 1
    assert thurston_bennequin(f) == p * q - p - q
    # parity constraint for Legendrian knots
    assert (thurston_bennequin(f) + rotation_number(f)) % 2 == 1


@pytest.mark.parametrize("p", range(2, 9))
def test_p_plus_one_p_torus_tb(p):
    assert thurston_bennequin(torus_knot_front(p + 1, p)) == p * p - p - 1


def test_torus_formulas():
    assert max_tb_torus_knot(3, 2) == 1
    assert seifert_genus_torus_knot(3, 2) == 1
    assert max_tb_torus_knot(2, 3) == max_tb_torus_knot(3, 2)
    assert seifert_genus_torus_knot(2, 3) == seifert_genus_torus_knot(3, 2)
    p = 5
    assert max_tb_torus_knot(p + 1, p) == p * p - p - 1
    assert seifert_genus_torus_knot(p + 1, p) == p * (p - 1) // 2
    with pytest.raises(FrontError):
        max_tb_torus_knot(4, 2)
    with pytest.raises(FrontError):
        seifert_genus_torus_knot(6, 3)


def test_stein_check_passes_on_contact_minus_one():
    d = HandleDecomposition(two_handles=(("k", 0),))
    report = stein_check(d, {"k": torus_knot_front(3, 2)})
    assert report.ok
    assert report.verdicts[0].tb == 1


def test_stein_check_fails_on_wrong_framing():
    d = HandleDecomposition(two_handles=(("k", 0),))
    report = stein_check(d, {"k": parse_front(UNKNOT)})
    assert not report.ok


@pytest.mark.parametrize("p", range(2, 6))
def test_stein_check_torus_handles(p):
    d = HandleDecomposition(two_handles=(("w", p * p - p - 2),))
    assert stein_check(d, {"w": torus_knot_front(p + 1, p)}).ok


def test_stein_check_requires_full_annotation():
    d = HandleDecomposition(two_handles=(("k", 0), ("m", -2)))
    with pytest.raises(FrontError):
        stein_check(d, {"k": parse_front(TREFOIL)})
