from fractions import Fraction

import pytest

from necklace.algebra import (AlgebraError, AlgebraTable, check_cy_pairing, check_unit_assoc, cyclic_expansion,
                              extract_algebra, grading_violations)
from necklace.quiver import ExtData, canonical_potential, phi_from_ext, shifted_alphabet, single_vertex_quiver
from necklace.words import CyclicSeries

from oracle import step_rotations


def table_for(q):
    sa = shifted_alphabet(q)
    return extract_algebra(canonical_potential(sa), sa)


def vec(table, label):
    return {table.basis.index(label): Fraction(1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_vertex_checks(n):
    t = table_for(single_vertex_quiver(n))
    ua, cy = check_unit_assoc(t), check_cy_pairing(t)
    assert ua["status"] == "pass" and ua["triples"] == (2 * n + 2) ** 3
    assert cy["status"] == "pass"
    assert abs(Fraction(cy["determinant"])) == 1
    assert cy["ext1_antisymmetric"] and len(cy["ext1_labels"]) == 2 * n
    assert not grading_violations(t)


def test_loop_pair_products(sa1, W1):
    t = extract_algebra(W1, sa1)
    xy = t.mul(vec(t, "x1"), vec(t, "xi1"))
    yx = t.mul(vec(t, "xi1"), vec(t, "x1"))
    om = t.basis.index("omega")
    assert set(xy) == {om} and set(yx) == {om}
    assert xy[om] == -yx[om] and abs(xy[om]) == 1
    assert t.mul(vec(t, "x1"), vec(t, "x1")) == {}
    assert t.mul(vec(t, "omega"), vec(t, "x1")) == {}


def test_n0_pairing_antidiagonal():
    t = table_for(single_vertex_quiver(0))
    assert t.basis == ["e", "omega"]
    assert t.pairing == [[0, 1], [1, 0]]
    assert check_cy_pairing(t)["status"] == "pass"
    assert check_unit_assoc(t)["status"] == "pass"


def test_multi_vertex():
    t = table_for(phi_from_ext(ExtData.from_matrix([[2, 1, 0], [1, 0, 2], [0, 2, 2]])))
    assert check_unit_assoc(t)["status"] == "pass"
    assert check_cy_pairing(t)["status"] == "pass"
    assert not grading_violations(t)


def test_cyclic_expansion_matches_stepwise(W1):
    a = W1.alphabet
    expected = {}
    for w, c in W1.terms.items():
        for s, r in step_rotations(a, w):
            expected[r] = expected.get(r, 0) + s * c
    assert cyclic_expansion(W1) == {w: c for w, c in expected.items() if c}


def test_rejects_non_cubic(A1):
    with pytest.raises(AlgebraError):
        extract_algebra(CyclicSeries.from_names(A1, {"x1 xi1": 1}))


def test_rejects_failed_master_equation(A1):
    with pytest.raises(AlgebraError):
        extract_algebra(CyclicSeries.from_names(A1, {"alpha alpha beta": 1, "alpha x1 xi1": 1}))


def test_rejects_mismatched_alphabet(sa2, W1):
    with pytest.raises(AlgebraError):
        extract_algebra(W1, sa2)


def _hand_table(xy, yx, pairing):
    # basis e, x, xi, omega with degrees 0, 1, 1, 2
    e, x, xi, om = range(4)
    prod = {(e, b): {b: Fraction(1)} for b in range(4)}
    prod.update({(b, e): {b: Fraction(1)} for b in range(4)})
    prod[(x, xi)] = {om: Fraction(xy)}
    prod[(xi, x)] = {om: Fraction(yx)}
    return AlgebraTable(["e", "x", "xi", "omega"], [0, 1, 1, 2], prod,
                        [[Fraction(c) for c in row] for row in pairing], [e])


GOOD_PAIRING = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def test_hand_table_consistent():
    t = _hand_table(-1, 1, GOOD_PAIRING)
    assert check_cy_pairing(t)["status"] == "pass"
    assert check_unit_assoc(t)["status"] == "pass"


def test_symmetric_products_break_invariance():
    rep = check_cy_pairing(_hand_table(1, 1, GOOD_PAIRING))
    assert rep["status"] == "fail" and rep["invariance_failures"]


def test_degenerate_pairing():
    bad = [row[:] for row in GOOD_PAIRING]
    bad[1] = [0, 0, 0, 0]
    rep = check_cy_pairing(_hand_table(-1, 1, bad))
    assert not rep["nondegenerate"] and rep["status"] == "fail"


def test_symmetric_ext1_block_flagged():
    sym = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    rep = check_cy_pairing(_hand_table(-1, 1, sym))
    assert not rep["ext1_antisymmetric"] and rep["status"] == "fail"


def test_unit_only_table():
    t = AlgebraTable(["e"], [0], {(0, 0): {0: Fraction(1)}}, [[Fraction(1)]], [0])
    assert check_unit_assoc(t)["status"] == "pass"
    assert not check_unit_assoc(AlgebraTable(["e"], [0], {}, [[Fraction(1)]], [0]))["status"] == "pass"


def test_grading_violation_detected():
    t = _hand_table(-1, 1, GOOD_PAIRING)
    t.product[(1, 1)] = {1: Fraction(1)}
    assert ("x", "x", "x") in grading_violations(t)
