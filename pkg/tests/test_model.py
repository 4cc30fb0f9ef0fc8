import random

import pytest

from conftest import random_graph
from pegkit.model import (Document, Edge, GraphError, Mention, MentionKind,
                          Node, Role, build_graph, coref_closure, edge_locality,
                          node_sentence_sets, reentrant_nodes,
                          succ_topological_order)
from pegkit.ontology import ArgumentType, OperationType


def _doc():
    text = "Mix cells. Spin tube."
    mentions = (
        Mention("T1", 0, 3, "Mix", MentionKind.OPERATION),
        Mention("T2", 4, 9, "cells", MentionKind.ARGUMENT),
        Mention("T3", 11, 15, "Spin", MentionKind.OPERATION),
        Mention("T4", 16, 20, "tube", MentionKind.ARGUMENT),
    )
    return Document("d", text, ((0, 10), (11, 21)), mentions)


def _nodes():
    return [
        Node("op1", "T1", OperationType.MIX),
        Node("a1", "T2", ArgumentType.REAGENT),
        Node("op2", "T3", OperationType.SPIN),
        Node("a2", "T4", ArgumentType.LOCATION),
    ]


class TestDocument:
    def test_surface_must_match_slice(self):
        with pytest.raises(GraphError, match="does not match"):
            Document("d", "abc def", ((0, 7),),
                     (Mention("T1", 0, 3, "def", MentionKind.ARGUMENT),))

    def test_empty_span_rejected(self):
        with pytest.raises(GraphError, match="empty or negative"):
            Mention("T1", 3, 3, "", MentionKind.ARGUMENT)

    def test_overlapping_sentences_rejected(self):
        with pytest.raises(GraphError, match="overlaps"):
            Document("d", "abc def", ((0, 5), (3, 7)), ())

    def test_mention_outside_sentences_rejected(self):
        with pytest.raises(GraphError, match="outside"):
            Document("d", "abc def", ((0, 3),),
                     (Mention("T1", 4, 7, "def", MentionKind.ARGUMENT),))

    def test_duplicate_mention_id_rejected(self):
        m = Mention("T1", 0, 3, "abc", MentionKind.ARGUMENT)
        with pytest.raises(GraphError, match="duplicate mention id"):
            Document("d", "abc", ((0, 3),), (m, m))

    def test_sentence_of(self):
        doc = _doc()
        assert doc.sentence_of(doc.mention("T1")) == 0
        assert doc.sentence_of(doc.mention("T4")) == 1


class TestBuildGraph:
    def test_roundtrip_accessors(self):
        g = build_graph(_doc(), _nodes(), [Edge("op1", Role.ARG0, "a1")])
        assert [n.id for n in g.operations] == ["op1", "op2"]
        assert [n.id for n in g.arguments] == ["a1", "a2"]
        assert g.node("a1").grounding is ArgumentType.REAGENT
        assert g.mention_of("op2").surface == "Spin"

    def test_dangling_edge_rejected(self):
        with pytest.raises(GraphError, match="dangling"):
            build_graph(_doc(), _nodes(), [Edge("op1", Role.ARG0, "ghost")])

    def test_dangling_mention_rejected(self):
        with pytest.raises(GraphError, match="no mention"):
            build_graph(_doc(), [Node("x", "T9", ArgumentType.REAGENT)], [])

    def test_mention_backs_one_node(self):
        nodes = _nodes() + [Node("dup", "T2", ArgumentType.DEVICE)]
        with pytest.raises(GraphError, match="more than one node"):
            build_graph(_doc(), nodes, [])

    def test_kind_grounding_agreement(self):
        nodes = [Node("op1", "T1", ArgumentType.REAGENT)]
        with pytest.raises(GraphError, match="does not match"):
            build_graph(_doc(), nodes, [])

    def test_duplicate_triple_rejected(self):
        e = Edge("op1", Role.ARG0, "a1")
        with pytest.raises(GraphError, match="duplicate triple"):
            build_graph(_doc(), _nodes(), [e, e])

    def test_succ_cycle_rejected(self):
        edges = [Edge("op1", Role.SUCC, "op2"), Edge("op2", Role.SUCC, "op1")]
        with pytest.raises(GraphError, match="succ cycle"):
            build_graph(_doc(), _nodes(), edges)


class TestTopologicalOrder:
    def test_chain_order(self):
        order = succ_topological_order(
            ["c", "a", "b"],
            [Edge("a", Role.SUCC, "b"), Edge("b", Role.SUCC, "c")])
        assert order == ["a", "b", "c"]

    def test_cycle_names_members(self):
        with pytest.raises(GraphError, match="a, b"):
            succ_topological_order(
                ["a", "b"],
                [Edge("a", Role.SUCC, "b"), Edge("b", Role.SUCC, "a")])

    def test_deterministic_tie_break(self):
        order = succ_topological_order(["z", "y", "x"], [])
        assert order == ["z", "y", "x"]


class TestDerived:
    def test_reentrant_nodes_fig1(self, fig1):
        assert reentrant_nodes(fig1) == {"arg_tubes"}

    def test_reentrant_nodes_fig3(self, fig3):
        assert reentrant_nodes(fig3) == {"arg_vial"}

    def test_reentrancy_ignores_non_core(self):
        g = build_graph(_doc(), _nodes(), [
            Edge("op1", Role.ARG0, "a1"),
            Edge("op2", Role.ARG0, "a1"),
            Edge("op1", Role.ARG0, "a2"),
        ])
        assert reentrant_nodes(g) == {"a1"}

    def test_edge_locality(self, fig1):
        intra = Edge("op_add", Role.ARG0, "arg_cells")
        inter = Edge("op_swirl", Role.ARG0, "arg_tubes")
        assert edge_locality(fig1, intra) == "intra"
        assert edge_locality(fig1, inter) == "inter"

    def test_coref_closure_fig3(self, fig3):
        classes = coref_closure(fig3)
        merged = [c for c in classes if len(c) > 1]
        assert merged == [{"arg_mixture", "arg_vial"}]

    def test_node_sentence_sets_merge_coref(self, fig3):
        sets = node_sentence_sets(fig3)
        assert sets["arg_vial"] == sets["arg_mixture"]
        assert len(sets["arg_vial"]) == 2


class TestProperties:
    @pytest.mark.parametrize("seed", range(25))
    def test_reentrancy_edge_order_invariant(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng)
        shuffled = list(g.edges)
        rng.shuffle(shuffled)
        g2 = build_graph(g.document, g.nodes, shuffled)
        assert reentrant_nodes(g) == reentrant_nodes(g2)
        assert coref_closure(g) == coref_closure(g2)

    @pytest.mark.parametrize("seed", range(25))
    def test_sentence_sets_partition_consistent(self, seed):
        g = random_graph(random.Random(seed))
        sets = node_sentence_sets(g)
        trivial = len(coref_closure(g)) == len(g.arguments)
        for e in g.edges:
            where = "intra" if sets[e.source] & sets[e.target] else "inter"
            if trivial:
                # without any co-ref merging, closure equals raw locality
                assert where == edge_locality(g, e)
