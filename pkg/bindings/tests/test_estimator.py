import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from gkl.graph import Graph
from gkl_sklearn import GraphKernel, as_graph
from conftest import fixture_bundle


def graphs():
    return list(fixture_bundle(n_graphs=8).graphs)


class TestProtocol:
    def test_get_set_params_round_trip(self):
        est = GraphKernel(kernel_name="shortest_path", params={"with_labels": True}, seed=3)
        params = est.get_params()
        assert params["kernel_name"] == "shortest_path"
        assert params["seed"] == 3
        est.set_params(**params)
        assert est.get_params() == params

    def test_clonable(self):
        est = GraphKernel(kernel_name="weisfeiler_lehman", params={"h": 2}, normalize=True)
        cloned = clone(est)
        assert cloned.get_params() == est.get_params()
        assert cloned is not est

    def test_not_fitted_error(self):
        with pytest.raises(NotFittedError):
            GraphKernel().transform(graphs())

    def test_fit_returns_self_and_sets_state(self):
        est = GraphKernel()
        assert est.fit(graphs()) is est
        assert est.n_fit_graphs_ == 8

    def test_clone_drops_fitted_state(self):
        est = GraphKernel().fit(graphs())
        cloned = clone(est)
        with pytest.raises(NotFittedError):
            cloned.transform(graphs())


class TestHostErrors:
    def test_empty_collection_becomes_value_error(self):
        with pytest.raises(ValueError, match="empty graph collection"):
            GraphKernel().fit([])

    def test_invalid_spec_becomes_value_error(self):
        with pytest.raises(ValueError, match="unknown kernel"):
            GraphKernel(kernel_name="nope").fit(graphs())

    def test_requirement_mismatch_keeps_message(self):
        with pytest.raises(ValueError, match="graph 0 lacks vertex labels"):
            GraphKernel(kernel_name="shortest_path").fit([Graph(n=2, edges={(0, 1)})])


class TestInputConversion:
    def test_adjacency_triple(self):
        adjacency = np.array([[0, 1], [1, 0]])
        g = as_graph((adjacency, {0: "a", 1: "b"}, {(0, 1): "x"}))
        assert g.n == 2 and g.vertex_labels == {0: "a", 1: "b"}
        assert g.edge_labels == {(0, 1): "x"}

    def test_edge_dictionary_triple(self):
        g = as_graph(({0: [1], 1: [0], 2: []}, {0: "a", 1: "a", 2: "b"}))
        assert g.n == 3 and g.edges == frozenset({(0, 1)})

    def test_bare_graph_passthrough(self):
        g = Graph(n=1, vertex_labels={0: "a"})
        assert as_graph(g) is g

    def test_bad_item_rejected(self):
        with pytest.raises(ValueError, match="expected a Graph"):
            as_graph(42)

    def test_triples_match_graph_input(self):
        native = graphs()
        triples = [
            (g.adjacency_matrix(), dict(g.vertex_labels), dict(g.edge_labels))
            for g in native
        ]
        a = GraphKernel(kernel_name="shortest_path").fit_transform(native)
        b = GraphKernel(kernel_name="shortest_path").fit_transform(triples)
        assert np.array_equal(a, b)


class TestMatrices:
    def test_fit_transform_symmetric(self):
        k = GraphKernel(kernel_name="weisfeiler_lehman", params={"h": 2}).fit_transform(graphs())
        assert isinstance(k, np.ndarray) and k.flags["C_CONTIGUOUS"]
        assert np.abs(k - k.T).max() < 1e-9

    def test_fit_then_transform_matches_fit_transform(self):
        gs = graphs()
        est = GraphKernel(kernel_name="shortest_path")
        fitted = est.fit_transform(gs)
        again = est.transform(gs)
        assert np.abs(fitted - again).max() < 1e-9

    def test_diagonal_delegates(self):
        gs = graphs()
        est = GraphKernel()
        k = est.fit_transform(gs)
        fit_diag, query_diag = est.diagonal()
        assert query_diag is None
        assert np.array_equal(fit_diag, np.diagonal(k))
