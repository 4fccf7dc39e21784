import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclebalance.graph import (GraphError, ParseError, SignConflictError,
                                SignedDigraph, complete_graph, load_edge_list,
                                parse_edge_list)


def test_parse_basic():
    g = parse_edge_list("0 1 1\n1 2 -1")
    assert g.vertex_count == 3
    assert g.edge_count == 2
    assert g.sign(0, 1) == 1
    assert g.sign(1, 2) == -1
    assert g.negative_edge_fraction() == pytest.approx(1 / 2)


def test_parse_collapses_identical_duplicates():
    g = parse_edge_list("0 1 1\n0 1 1")
    assert g.vertex_count == 2
    assert g.edge_count == 1


def test_parse_conflicting_duplicate_rejected_with_line_number():
    with pytest.raises(ParseError) as exc:
        parse_edge_list("0 1 1\n0 1 -1")
    assert exc.value.line_number == 2


def test_parse_last_wins_policy():
    g = parse_edge_list("0 1 1\n0 1 -1", duplicate_policy="last")
    assert g.sign(0, 1) == -1


def test_parse_sign_tokens_and_comments():
    g = parse_edge_list("# header\na b +1\nb c −1\n\nc a -1")
    assert g.vertex_count == 3
    assert g.vertex_labels == ("a", "b", "c")
    assert g.sign(1, 2) == -1


def test_parse_malformed_line_reports_number():
    with pytest.raises(ParseError) as exc:
        parse_edge_list("0 1 1\n0 1")
    assert exc.value.line_number == 2
    with pytest.raises(ParseError):
        parse_edge_list("0 1 2")


def test_symmetrize_single_edge():
    g = parse_edge_list("0 1 1").symmetrize()
    assert dict(g.edges) == {(0, 1): 1, (1, 0): 1}
    assert g.from_undirected


def test_symmetrize_idempotent():
    g = parse_edge_list("0 1 1\n1 2 -1").symmetrize()
    assert dict(g.symmetrize().edges) == dict(g.edges)


def test_symmetrize_sign_conflict():
    g = parse_edge_list("0 1 1\n1 0 -1")
    with pytest.raises(SignConflictError):
        g.symmetrize()


def test_induced_subgraph_identity_and_pair():
    tri = parse_edge_list("0 1 1\n0 2 1\n1 2 -1", undirected=True)
    whole, mapping = tri.induced_subgraph([0, 1, 2])
    assert mapping == [0, 1, 2]
    assert dict(whole.edges) == dict(tri.edges)
    pair, mapping = tri.induced_subgraph([0, 1])
    assert pair.vertex_count == 2
    assert dict(pair.edges) == {(0, 1): 1, (1, 0): 1}
    empty, _ = tri.induced_subgraph([])
    assert empty.vertex_count == 0 and empty.edge_count == 0


def test_induced_subgraph_invalid_vertex():
    g = parse_edge_list("0 1 1")
    with pytest.raises(GraphError):
        g.induced_subgraph([0, 5])


def test_neighbourhood_path_and_direction():
    path = parse_edge_list("0 1 1\n1 2 1", undirected=True)
    assert path.neighbourhood([1]) == [0, 2]
    directed = parse_edge_list("0 1 1")
    assert directed.neighbourhood([1]) == [0]  # in-edges count
    k5 = complete_graph(5)
    assert k5.neighbourhood([0, 1]) == [2, 3, 4]


def test_neighbourhood_disjoint_from_input():
    g = complete_graph(6)
    for vs in ([0], [1, 2], [0, 3, 5]):
        assert not set(g.neighbourhood(vs)) & set(vs)


def test_negative_fraction_cases():
    assert complete_graph(4).negative_edge_fraction() == 0.0
    tri = parse_edge_list("0 1 1\n0 2 1\n1 2 -1", undirected=True)
    assert tri.negative_edge_fraction() == pytest.approx(1 / 3)
    g = parse_edge_list("0 1 1\n1 2 1\n2 3 1\n3 0 -1")
    assert g.negative_edge_fraction() == 0.25
    with pytest.raises(GraphError):
        SignedDigraph(3, {}).negative_edge_fraction()


def test_round_trip_serialization(tmp_path):
    g = parse_edge_list("0 1 1\n1 2 -1\n2 0 1\n0 0 -1")
    path = tmp_path / "g.tsv"
    path.write_text(g.to_edge_list())
    again = load_edge_list(path)
    assert dict(again.edges) == dict(g.edges)
    assert again.vertex_count == g.vertex_count


@given(st.integers(min_value=1, max_value=8), st.data())
def test_relabel_preserves_structure(n, data):
    edges = {}
    for u in range(n):
        for v in range(n):
            if u != v and data.draw(st.booleans()):
                edges[(u, v)] = data.draw(st.sampled_from((1, -1)))
    g = SignedDigraph(n, edges)
    perm = data.draw(st.permutations(range(n)))
    h = g.relabel(list(perm))
    assert h.edge_count == g.edge_count
    assert sorted(h.edges.values()) == sorted(g.edges.values())
