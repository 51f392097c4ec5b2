import itertools
import json
import random

import pytest

from necklace.bracket import master_residual
from necklace.quiver import (ExtData, PotentialError, QuiverError, canonical_potential, ext_of, load_quiver,
                             phi_from_ext, shifted_alphabet, single_vertex_quiver, validate_quiver)
from necklace.bracket import BracketConvention
from necklace.words import compose_check

from conftest import random_symmetric_quiver
from oracle import brute_bracket


def raw(vertices, arrows, involution):
    return {"vertices": vertices,
            "arrows": [{"id": i, "src": s, "dst": t} for i, s, t in arrows],
            "involution": involution}


def code_of(fn, *args):
    with pytest.raises(QuiverError) as exc:
        fn(*args)
    return exc.value.code


class TestValidate:
    def test_one_vertex_two_loops(self):
        q = validate_quiver(raw(["1"], [("x", "1", "1"), ("y", "1", "1")], [["x", "y"]]))
        assert len(q.arrows) == 2

    def test_odd_loops(self):
        r = raw(["1"], [("x", "1", "1"), ("y", "1", "1"), ("z", "1", "1")], [["x", "y"]])
        assert code_of(validate_quiver, r) == "odd_loops"

    def test_not_symmetric(self):
        assert code_of(validate_quiver, raw(["1", "2"], [("a", "1", "2")], [])) == "not_symmetric"

    @pytest.mark.parametrize("inv", [[["x", "x"]], [["x", "y"], ["y", "x"]], [["x", "q"]], []])
    def test_bad_involution(self, inv):
        r = raw(["1"], [("x", "1", "1"), ("y", "1", "1")], inv)
        assert code_of(validate_quiver, r) == "bad_involution"

    def test_involution_must_reverse_endpoints(self):
        r = raw(["1", "2"], [("a", "1", "2"), ("b", "2", "1"), ("c", "1", "2"), ("d", "2", "1")],
                [["a", "c"], ["b", "d"]])
        assert code_of(validate_quiver, r) == "bad_involution"

    def test_structural_errors(self):
        assert code_of(validate_quiver, {"vertices": ["1"]}) == "malformed"
        assert code_of(validate_quiver, raw([], [], [])) == "malformed"
        assert code_of(validate_quiver, raw(["1", "1"], [], [])) == "duplicate_id"
        assert code_of(validate_quiver, raw(["1"], [("x", "1", "2"), ("y", "2", "1")], [["x", "y"]])) == "unknown_vertex"
        r = raw(["1"], [("x", "1", "1"), ("x", "1", "1")], [["x", "x"]])
        assert code_of(validate_quiver, r) == "duplicate_id"

    def test_load_quiver(self):
        q = single_vertex_quiver(2)
        assert load_quiver(json.dumps(q.to_json())) == q
        assert code_of(load_quiver, "{") == "malformed"
        assert code_of(load_quiver, "[1, 2]") == "malformed"


class TestPhi:
    def test_two_vertex_example(self):
        q = phi_from_ext(ExtData.from_matrix([[2, 1], [1, 0]]))
        assert q.vertices == ("1", "2")
        loops = [a for a in q.arrows if a.is_loop]
        assert len(loops) == 2 and all(a.src == "1" for a in loops)
        assert sorted((a.src, a.dst) for a in q.arrows if not a.is_loop) == [("1", "2"), ("2", "1")]

    def test_errors(self):
        assert code_of(phi_from_ext, ExtData.from_matrix([[1]])) == "odd_diagonal"
        assert code_of(phi_from_ext, ExtData.from_matrix([[0, 1], [2, 0]])) == "not_symmetric"
        assert code_of(phi_from_ext, ExtData.from_matrix([[0, 1]])) == "malformed"
        assert code_of(phi_from_ext, ExtData.from_matrix([[-2]])) == "malformed"
        assert code_of(phi_from_ext, ExtData.from_matrix([[0, 0], [0, 0]], ["a", "a"])) == "duplicate_id"

    def test_round_trip_exhaustive(self):
        count = 0
        for size in (1, 2, 3):
            diag_choices = itertools.product((0, 2, 4), repeat=size)
            for diag in diag_choices:
                pairs = list(itertools.combinations(range(size), 2))
                for upper in itertools.product(range(6), repeat=len(pairs)):
                    m = [[0] * size for _ in range(size)]
                    for i, d in enumerate(diag):
                        m[i][i] = d
                    for (i, j), c in zip(pairs, upper):
                        m[i][j] = m[j][i] = c
                    e = ExtData.from_matrix(m)
                    assert ext_of(phi_from_ext(e)) == e
                    count += 1
        assert count == 3 + 9 * 6 + 27 * 216

    def test_loop_pairing_deterministic(self):
        q = phi_from_ext(ExtData.from_matrix([[4]]))
        assert q.involution == (("l1_1", "l1_3"), ("l1_2", "l1_4"))
        assert phi_from_ext(ExtData.from_matrix([[4]])) == q


class TestShiftedAlphabet:
    def test_single_vertex(self, sa1):
        assert [v.name for v in sa1.alphabet] == ["alpha", "beta", "x1", "xi1"]
        assert [sa1.alphabet.var(i).coh_deg for i in range(4)] == [1, -1, 0, 0]

    def test_two_vertex_pair(self):
        sa = shifted_alphabet(phi_from_ext(ExtData.from_matrix([[0, 1], [1, 0]])))
        names = {v.name for v in sa.alphabet}
        assert names == {"alpha_1", "beta_1", "alpha_2", "beta_2", "a1", "astar1"}
        a = sa.alphabet
        assert a.dual[a["a1"]] == a["astar1"]
        assert (a.src[a["a1"]], a.dst[a["a1"]]) == (a.src[a["astar1"]], a.dst[a["astar1"]])[::-1]

    def test_duals_follow_involution(self):
        rng = random.Random(4)
        for _ in range(20):
            q = random_symmetric_quiver(rng)
            sa = shifted_alphabet(q)
            a = sa.alphabet
            for x, y in q.involution:
                assert a.dual[a[sa.arrow_var[x]]] == a[sa.arrow_var[y]]
            assert len(sa.alpha) == len(q.vertices)


class TestCanonicalPotential:
    def test_single_vertex_terms(self, sa1, W1):
        a = sa1.alphabet
        assert W1.coefficient("alpha", "alpha", "beta") == 1
        assert W1.coefficient("alpha", "x1", "xi1") == 1
        assert W1.coefficient("alpha", "xi1", "x1") == -1
        assert len(W1) == 3
        assert W1.degrees() == {(1, 3, 2)}
        for w in W1.terms:
            assert compose_check(a.names(w), a, closed=True)

    def test_homogeneous_on_random_quivers(self):
        rng = random.Random(8)
        for _ in range(25):
            q = random_symmetric_quiver(rng)
            W = canonical_potential(q)
            a = W.alphabet
            assert {(c, k) for c, k, _ in W.degrees()} == {(1, 3)}
            for w in W.terms:
                assert compose_check(a.names(w), a, closed=True)
            assert not master_residual(W)

    def test_master_equation_brute_force(self):
        rng = random.Random(12)
        for _ in range(6):
            W = canonical_potential(random_symmetric_quiver(rng, max_vertices=3, max_arrows=6))
            assert brute_bracket(W, W) == {}

    def test_wrong_convention_rejected(self):
        with pytest.raises(PotentialError):
            canonical_potential(single_vertex_quiver(1), BracketConvention(arrow_sign=1, unit_sign=1))

    def test_n0(self):
        W = canonical_potential(single_vertex_quiver(0))
        assert len(W) == 1
