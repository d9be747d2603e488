"""Smoke tests for the python bindings."""

import math

import pytest

import spreadgram as sg

TOY_EDGES = [
    ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
    ("c", "e"), ("e", "f"), ("f", "g"), ("g", "h"),
]


def test_graph_basics():
    g = sg.graph_from_edges(TOY_EDGES)
    assert g.node_count == 8
    assert g.edge_count == 8
    assert g.component_count == 1
    c = g.node_id("c")
    assert g.degree(c) == 3
    assert sorted(g.label(v) for v in g.neighbors(c)) == ["a", "b", "e"]
    assert g.has_edge(g.node_id("a"), g.node_id("c"))
    assert not g.has_edge(g.node_id("a"), g.node_id("b"))


def test_typed_graph():
    g = sg.graph_from_edges(
        [("a1", "p1"), ("a2", "p1"), ("a2", "p2")],
        [("a1", "author"), ("a2", "author"), ("p1", "paper"), ("p2", "paper")],
    )
    assert g.type_count == 2
    assert g.type_of(g.node_id("a1")) == g.type_of(g.node_id("a2"))
    assert g.type_of(g.node_id("a1")) != g.type_of(g.node_id("p1"))


def test_spread_search_is_a_permutation_with_frontiers():
    g = sg.make_erdos_renyi(40, 0.1, seed=3)
    order = sg.spread_search(g, seed=5)
    assert sorted(order["sequence"]) == list(range(g.node_count))
    offsets = order["frontier_offsets"]
    assert offsets[0] == 0
    assert offsets == sorted(offsets)
    assert order["enqueue_count"] <= 2 * g.edge_count + g.component_count
    again = sg.spread_search(g, seed=5)
    assert again["sequence"] == order["sequence"]


def test_draw_samples_contract():
    g = sg.graph_from_edges(TOY_EDGES)
    s = sg.draw_samples(g, g.node_id("c"), 1, seed=2)
    assert sorted(g.label(v) for v in s["positives"]) == ["a", "b", "e"]
    for v in s["negatives"]:
        assert not g.has_edge(g.node_id("c"), v)


def test_train_is_deterministic_and_improves():
    g = sg.graph_from_edges(TOY_EDGES)
    r1 = sg.train(g, dimension=4, iterations=10, seed=9)
    r2 = sg.train(g, dimension=4, iterations=10, seed=9)
    assert not r1.diverged
    assert r1.embeddings.to_list() == r2.embeddings.to_list()
    trace = r1.likelihood_trace
    assert len(trace) == 11
    assert trace[-1] > trace[0]
    assert all(math.isfinite(x) for row in r1.embeddings.to_list() for x in row)


def test_hetero_reduces_to_homo():
    g = sg.make_erdos_renyi(15, 0.2, seed=8)
    homo = sg.train(g, dimension=4, iterations=5, seed=3)
    het = sg.train_hetero(g, dimension=4, iterations=5, seed=3,
                          train_matrices=False)
    assert homo.embeddings.to_list() == het.embeddings.to_list()
    assert het.matrices.matrix(0) == [
        [1.0 if i == j else 0.0 for j in range(4)] for i in range(4)
    ]


def test_sbm_pipeline_quality():
    g, blocks = sg.make_sbm([50, 50], 0.15, 0.01, seed=4)
    r = sg.train(g, dimension=8, iterations=15, seed=2)
    labels = [(g.label(v), f"b{blocks[v]}") for v in range(g.node_count)]
    f1 = sg.classification_score(g, r.embeddings, labels, seed=6)
    assert f1 >= 0.8
    acc = sg.link_prediction_accuracy(g, r.embeddings, seed=7)
    assert acc >= 0.55


def test_embedding_file_roundtrip(tmp_path):
    g = sg.graph_from_edges(TOY_EDGES)
    r = sg.train(g, dimension=3, iterations=4, seed=1)
    path = tmp_path / "toy.emb"
    sg.save_embeddings(str(path), g, r.embeddings)
    back = sg.load_embeddings(str(path), g)
    assert back.to_list() == r.embeddings.to_list()
    header = path.read_text().splitlines()[0]
    assert header == "8 3"


def test_divergence_is_reported():
    g = sg.make_erdos_renyi(20, 0.2, seed=5)
    r = sg.train(g, dimension=4, iterations=10, learning_rate=1e9, seed=1)
    assert r.diverged
    assert "learning rate" in r.diagnostic
