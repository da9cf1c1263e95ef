from itertools import combinations_with_replacement

import networkx as nx
import pytest
from hypothesis import given, settings

from dpforge.errors import CertificateError, GraphError
from dpforge.graph import complete_graph, is_connected
from dpforge.havel_hakimi import (
    DegreeSequence,
    HHStatus,
    classic_hh,
    enumerate_graphical_sequences,
    erdos_gallai_graphical,
    hh_dp_certificate,
    modified_hh,
    read_sequences,
)
from dpforge.isometry import verify_certificate

from strategies import decreasing_sequences


def all_positive_sequences(n):
    """Every weakly decreasing sequence of length n with entries in 1..n-1."""
    return combinations_with_replacement(range(n - 1, 0, -1), n)


def last_neighbourhood_is_clique(outcome):
    g = outcome.graph
    neighbours = g.neighbors(outcome.labeling[-1])
    return all(g.has_edge(a, b) for i, a in enumerate(neighbours) for b in neighbours[i + 1:])


class TestDegreeSequence:
    def test_parse(self):
        assert DegreeSequence.parse("3, 2 2,2 1").d == (3, 2, 2, 2, 1)
        assert str(DegreeSequence.parse("3,3")) == "(3,3)"

    @pytest.mark.parametrize("text", ["", "3,a", "1,2", "2,-1"])
    def test_parse_rejects(self, text):
        with pytest.raises(GraphError):
            DegreeSequence.parse(text)

    def test_read_sequences_skips_comments(self):
        found = read_sequences(["# header", "3,3,3,3", "", "2,2,2  # triangle"])
        assert [s.d for s in found] == [(3, 3, 3, 3), (2, 2, 2)]


class TestErdosGallai:
    @pytest.mark.parametrize(
        "seq,expected",
        [((3, 3, 3, 3), True), ((3, 3, 1, 1), False), ((2, 2, 2), True), ((1, 1, 1), False), ((4, 1, 1, 1, 1), True)],
    )
    def test_examples(self, seq, expected):
        assert erdos_gallai_graphical(seq) is expected

    @pytest.mark.parametrize("n", range(2, 8))
    def test_agrees_with_networkx(self, n):
        for seq in all_positive_sequences(n):
            assert erdos_gallai_graphical(seq) == nx.is_graphical(list(seq))


class TestModified:
    def test_stalls_on_six_threes(self):
        outcome = modified_hh((3, 3, 3, 3, 3, 3))
        assert outcome.status is HHStatus.FAILURE
        assert outcome.residual == (3, 3)
        assert outcome.iterations == 3
        assert outcome.graph is None

    def test_classic_realises_six_threes(self):
        outcome = classic_hh((3, 3, 3, 3, 3, 3))
        assert outcome.success
        assert outcome.graph.degrees() == (3,) * 6

    def test_triangle(self):
        outcome = modified_hh((2, 2, 2))
        assert outcome.success
        assert outcome.graph == complete_graph(3)

    def test_small_worked_example(self):
        outcome = modified_hh((3, 2, 2, 2, 1))
        assert outcome.success
        assert outcome.graph.edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]
        assert outcome.labeling == (0, 1, 2, 3, 4)
        assert verify_certificate(outcome.graph, hh_dp_certificate(outcome)).valid

    def test_exhausted_entry_blocks_a_later_head(self):
        outcome = modified_hh((2, 2, 1, 1))
        assert outcome.status is HHStatus.FAILURE
        assert outcome.residual == (1, 0, 1)
        assert outcome.iterations == 1
        assert classic_hh((2, 2, 1, 1)).success

    def test_exhausted_entries_at_the_front_are_dropped(self):
        outcome = modified_hh((2, 2, 2, 1, 1))
        assert outcome.success
        assert outcome.graph.edges() == [(0, 1), (0, 2), (1, 2), (3, 4)]

    @pytest.mark.parametrize("n,successes", [(5, 12), (6, 32), (7, 86)])
    def test_success_counts(self, n, successes):
        assert sum(modified_hh(seq).success for seq in enumerate_graphical_sequences(n)) == successes

    def test_single_edge(self):
        outcome = modified_hh((1, 1))
        assert outcome.success and outcome.graph.edges() == [(0, 1)]

    def test_disconnected_success_has_no_certificate(self):
        outcome = modified_hh((1, 1, 1, 1))
        assert outcome.success and not is_connected(outcome.graph)
        with pytest.raises(CertificateError):
            hh_dp_certificate(outcome)

    def test_failure_has_no_certificate(self):
        with pytest.raises(CertificateError):
            hh_dp_certificate(modified_hh((3, 3, 3, 3, 3, 3)))

    def test_unsorted_input_is_rejected(self):
        with pytest.raises(GraphError):
            modified_hh((1, 2, 2))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_classic_succeeds_exactly_on_graphical_sequences(self, n):
        for seq in all_positive_sequences(n):
            assert classic_hh(seq).success == nx.is_graphical(list(seq))

    @settings(max_examples=1000, deadline=None)
    @given(decreasing_sequences(max_n=12))
    def test_connected_successes_are_certified(self, seq):
        outcome = modified_hh(seq)
        if not outcome.success:
            return
        assert outcome.graph.degrees() == seq
        assert classic_hh(seq).success
        if is_connected(outcome.graph):
            assert verify_certificate(outcome.graph, hh_dp_certificate(outcome)).valid
            assert last_neighbourhood_is_clique(outcome)


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_graphical_sequences(5))) == 20
        assert len(list(enumerate_graphical_sequences(6))) == 71

    def test_order_and_uniqueness(self):
        found = [s.d for s in enumerate_graphical_sequences(6)]
        assert found == sorted(found, reverse=True)
        assert len(set(found)) == len(found)
        assert found[0] == (5, 5, 5, 5, 5, 5)

    def test_trivial_lengths(self):
        assert [s.d for s in enumerate_graphical_sequences(2)] == [(1, 1)]
        assert list(enumerate_graphical_sequences(1)) == []
        with pytest.raises(GraphError):
            list(enumerate_graphical_sequences(0))

    def test_head_filter(self):
        heads = {s.d[0] for s in enumerate_graphical_sequences(6, head=3)}
        assert heads == {3}

    @pytest.mark.parametrize("n", range(2, 8))
    def test_matches_exhaustive_filter(self, n):
        expected = [seq for seq in all_positive_sequences(n) if nx.is_graphical(list(seq))]
        assert [s.d for s in enumerate_graphical_sequences(n)] == sorted(expected, reverse=True)
