"""Base pairs, suborbit statistics, the Q-estimates, graphs, cliques, reports."""

import json
from fractions import Fraction

import pytest

from saxl.actions import GroupVariant, OmegaPoint, ksubset_action, psl2_c2_action
from saxl.engine import (
    SaxlReport,
    build_report,
    check_star,
    clique_and_independence_exact,
    clique_lower,
    is_base_pair,
    lemma_calc_bound,
    max_clique_exact,
    q_exact,
    q_hat,
    q_tilde,
    regular_suborbit_count,
    saxl_graph,
    size_inequality,
    suborbits,
    t_value,
)
from saxl.group import CapExceeded, Caps, PermGroup, prime_order_class_reps
from saxl.perm import from_cycles

from conftest import natural_action


def a5_pairs():
    return ksubset_action(5, 2, even_only=True)


def c5_regular():
    g = PermGroup(5, [from_cycles(5, [(0, 1, 2, 3, 4)])])
    return natural_action(g, "C5-regular")


def s3_natural():
    g = PermGroup(3, [from_cycles(3, [(0, 1, 2)]), from_cycles(3, [(0, 1)])])
    return natural_action(g, "S3-natural")


def brute_q_hat(action):
    """Class-size-weighted intersection sum, counting memberships directly."""
    H = action.stabiliser0()
    h_elems = H.elements()
    total = Fraction(0)
    for c in prime_order_class_reps(action.group):
        cnt = sum(1 for h in h_elems if h in c.elements)
        total += Fraction(cnt * cnt, c.class_size)
    return total


class TestBasePairs:
    @pytest.mark.parametrize("build", [a5_pairs, lambda: psl2_c2_action(GroupVariant("PSL2", 7))])
    def test_against_pointwise_stabiliser(self, build):
        act = build()
        g = act.group
        for a in range(act.degree):
            for b in range(act.degree):
                if a == b:
                    continue
                assert is_base_pair(act, a, b) == g.pointwise_stabiliser([a, b]).is_trivial()

    def test_diagonal_rejected(self):
        with pytest.raises(ValueError):
            is_base_pair(a5_pairs(), 3, 3)

    def test_disjoint_pairs_share_a_double_transposition(self):
        act = a5_pairs()
        i = act.index_of(OmegaPoint("k_subset", (0, 1)))
        j = act.index_of(OmegaPoint("k_subset", (2, 3)))
        stab = act.group.pointwise_stabiliser([i, j])
        assert stab.order() == 2
        fixer = next(x for x in stab.elements() if not x.is_identity())
        assert fixer.order() == 2
        assert not is_base_pair(act, i, j)


class TestSuborbits:
    def test_a5_pairs(self):
        act = a5_pairs()
        assert sorted(length for _, length in suborbits(act)) == [1, 3, 6]
        assert regular_suborbit_count(act) == 1

    def test_pgl2_8(self):
        act = psl2_c2_action(GroupVariant("PGL2", 8))
        assert sorted(length for _, length in suborbits(act)) == [1, 7, 7, 7, 14]
        assert regular_suborbit_count(act) == 1

    def test_lengths_sum_to_degree_from_any_basepoint(self):
        act = psl2_c2_action(GroupVariant("PSL2", 7))
        for a in (0, 3, 11):
            subs = suborbits(act, a)
            assert sum(length for _, length in subs) == act.degree

    def test_psl2_13(self):
        act = psl2_c2_action(GroupVariant("PSL2", 13))
        assert regular_suborbit_count(act) == 5


class TestQExact:
    def test_a5_pairs(self):
        act = a5_pairs()
        assert q_exact(act) == Fraction(2, 5)
        # cross-check against the ordered-pair count from the graph
        g = saxl_graph(act)
        base_ordered = sum(1 for _ in g.edges()) * 2
        n = act.degree
        assert q_exact(act) == Fraction(n * n - base_ordered, n * n)

    def test_pgl2_8(self):
        assert q_exact(psl2_c2_action(GroupVariant("PGL2", 8))) == Fraction(11, 18)

    def test_psl2_13(self):
        assert q_exact(psl2_c2_action(GroupVariant("PSL2", 13))) == Fraction(31, 91)

    def test_regular_action_has_q_zero(self):
        assert q_exact(c5_regular()) == 0


class TestQEstimates:
    def test_frobenius_equality(self):
        act = s3_natural()
        assert q_exact(act) == q_hat(act) == q_tilde(act) == Fraction(1, 3)

    def test_trivial_stabiliser_gives_zero(self):
        act = c5_regular()
        assert q_hat(act) == 0
        assert q_tilde(act) == 0

    def test_psl2_13_thresholds(self):
        act = psl2_c2_action(GroupVariant("PSL2", 13))
        qh = q_hat(act)
        assert qh == Fraction(51, 91)
        assert qh > Fraction(1, 2) > q_exact(act) > Fraction(1, 4)
        assert q_tilde(act) == qh

    def test_against_membership_oracle(self, fixture_actions):
        act = fixture_actions["L2_17_S4"]
        assert q_hat(act) == brute_q_hat(act) == Fraction(13, 17)

    def test_pooling_is_strictly_coarser_somewhere(self, fixture_actions):
        act = fixture_actions["L3_3_13_3"]
        assert q_hat(act) == brute_q_hat(act) == Fraction(7, 6)
        assert q_tilde(act) == Fraction(17, 12)
        assert q_hat(act) < q_tilde(act)

    def test_chain_on_samples(self):
        for act in (a5_pairs(), s3_natural(), psl2_c2_action(GroupVariant("PSL2", 9))):
            assert q_exact(act) <= q_hat(act) <= q_tilde(act)


class TestTValue:
    def test_fixture_values(self, fixture_actions):
        expected = {
            "S7_AGL17": 1,
            "A9_ASL23": 2,
            "M11_2S4": 1,
            "L2_17_S4": 3,
            "PGL2_13_S4": 2,
            "PGL2_11_S4": 1,
            "L3_3_13_3": 2,
            "L3_3_O3": 2,
        }
        for name, want in expected.items():
            assert t_value(fixture_actions[name]) == want, name

    def test_sentinel_for_q_zero(self):
        assert t_value(c5_regular()) == 5

    def test_rejects_non_base_two(self, catalogue):
        act = natural_action(catalogue["M11"].group, "M11-natural")
        assert q_exact(act) == 1
        with pytest.raises(ValueError):
            t_value(act)


class TestLemmaBound:
    def test_alternating_instance(self):
        value = lemma_calc_bound(156, 135135, 2)
        assert value == Fraction(24336, 135135)
        assert value < Fraction(1, 4)

    def test_c_one_returns_numerator(self):
        assert lemma_calc_bound(7, 4, 1) == 7

    def test_equal_inputs(self):
        assert lemma_calc_bound(9, 9, 2) == 9

    def test_zero_numerator(self):
        assert lemma_calc_bound(0, 5, 3) == 0

    def test_validation(self):
        with pytest.raises(ValueError):
            lemma_calc_bound(-1, 5, 2)
        with pytest.raises(ValueError):
            lemma_calc_bound(5, 0, 2)
        with pytest.raises(ValueError):
            lemma_calc_bound(5, 5, 0)


class TestGraph:
    def test_a5_pairs_valency(self):
        g = saxl_graph(a5_pairs())
        assert g.valency == 6
        assert sum(1 for _ in g.edges()) == 30
        for v in range(g.n):
            assert len(g.neighbours(v)) == 6

    def test_pgl2_8_valency(self):
        g = saxl_graph(psl2_c2_action(GroupVariant("PGL2", 8)))
        assert g.valency == 14
        assert sum(1 for _ in g.edges()) == 36 * 14 // 2

    def test_regular_action_gives_complete_graph(self):
        g = saxl_graph(c5_regular())
        assert g.valency == 4
        assert sum(1 for _ in g.edges()) == 10

    def test_edges_are_ordered_and_match_has_edge(self):
        g = saxl_graph(a5_pairs())
        for a, b in g.edges():
            assert a < b
            assert g.has_edge(a, b) and g.has_edge(b, a)

    def test_serialisations(self):
        g = saxl_graph(c5_regular())
        lines = g.to_edge_list().strip().split("\n")
        assert len(lines) == 10
        assert lines[0] == "0 1"
        dot = g.to_dot()
        assert dot.startswith("graph {")
        assert dot.rstrip().endswith("}")
        assert "  0 -- 1;" in dot

    def test_graph_cap(self):
        act = ksubset_action(5, 2, even_only=True, caps=Caps(graph_cap=5))
        with pytest.raises(CapExceeded):
            saxl_graph(act)


class TestStar:
    def test_a5_pairs(self):
        act = a5_pairs()
        ok, witnesses = check_star(act)
        assert ok
        g = saxl_graph(act)
        assert witnesses
        for rep, w in witnesses.items():
            assert w is not None
            assert g.has_edge(0, w) and g.has_edge(rep, w)

    def test_rejects_non_base_two(self, catalogue):
        act = natural_action(catalogue["M11"].group, "M11-natural")
        with pytest.raises(ValueError):
            check_star(act)


class TestCliques:
    def test_greedy_reaches_four_on_a5_pairs(self):
        ok, verts = clique_lower(a5_pairs(), 4)
        assert ok and len(verts) == 4
        g = saxl_graph(a5_pairs())
        for i, a in enumerate(verts):
            for b in verts[i + 1 :]:
                assert g.has_edge(a, b)

    def test_greedy_cannot_exceed_maximum(self):
        ok, verts = clique_lower(a5_pairs(), 5)
        assert not ok
        assert len(verts) < 5

    def test_target_validation(self):
        with pytest.raises(ValueError):
            clique_lower(a5_pairs(), 1)

    def test_exact_numbers(self):
        assert clique_and_independence_exact(a5_pairs()) == (4, 2)
        assert clique_and_independence_exact(c5_regular()) == (5, 1)

    def test_max_clique_on_path(self):
        # path 0-1-2: rows as bitmasks
        rows = (0b010, 0b101, 0b010)
        assert len(max_clique_exact(rows, 3)) == 2

    def test_exact_cap(self):
        act = ksubset_action(5, 2, even_only=True, caps=Caps(exact_cap=5))
        with pytest.raises(CapExceeded):
            clique_and_independence_exact(act)


class TestSizeInequality:
    def test_examples(self):
        assert size_inequality(504, 14)
        assert not size_inequality(6, 3)

    def test_validation(self):
        with pytest.raises(ValueError):
            size_inequality(0, 3)
        with pytest.raises(ValueError):
            size_inequality(6, -1)


class TestReports:
    def test_full_report_on_a5_pairs(self):
        rep = build_report(a5_pairs(), clique_target=4, exact_search=True)
        d = rep.to_json_dict()
        assert d["schema"] == 1
        assert d["n"] == 10
        assert d["stab_order"] == 6
        assert d["regular_count"] == 1
        assert d["q_exact"] == {"num": 2, "den": 5}
        assert d["q_hat"] == {"num": 4, "den": 5}
        assert d["t_value"] == 2
        assert d["t_unbounded"] is False
        assert d["star_ok"] is True
        assert d["clique_lb"] == 4
        assert d["clique_exact"] == 4
        assert d["independence_exact"] == 2
        assert d["size_inequality_ok"] is (4 * 36 <= 3 * 60)
        json.loads(rep.to_json())

    def test_report_is_deterministic(self):
        a = build_report(a5_pairs(), exact_search=True).to_json()
        b = build_report(a5_pairs(), exact_search=True).to_json()
        assert a == b

    def test_sections_can_be_skipped(self):
        rep = build_report(c5_regular(), with_classes=False, with_star=False)
        assert rep.q_hat is None and rep.q_tilde is None
        assert rep.star_ok is None
        assert rep.t_unbounded is True
        assert rep.t_value == 5
