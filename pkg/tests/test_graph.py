"""Graph model: construction guards, incidence matrices, families, edge lists."""

import pytest

from graphspir import (
    FAMILIES,
    build_graph,
    complete_graph,
    cycle_graph,
    format_edge_list,
    from_family,
    incidence_matrix,
    parse_edge_list,
    path_graph,
    regular_graph,
    signed_incidence,
    star_graph,
)


def paw_graph():
    return build_graph(4, [(1, 2), (1, 3), (2, 3), (3, 4)])


class TestBuildGraph:
    def test_path3(self):
        g = build_graph(3, [(1, 2), (2, 3)])
        assert g.n_vertices == 3
        assert g.n_edges == 2
        assert g.edges == ((1, 2), (2, 3))

    def test_cycle3(self):
        g = build_graph(3, [(1, 2), (2, 3), (1, 3)])
        assert g.n_edges == 3

    def test_endpoint_order_normalized(self):
        g = build_graph(3, [(2, 1), (3, 2)])
        assert g.edges == ((1, 2), (2, 3))

    def test_edge_order_preserved(self):
        g = build_graph(3, [(1, 3), (2, 3), (1, 2)])
        assert g.edges == ((1, 3), (2, 3), (1, 2))

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError):
            build_graph(3, [(1, 2), (1, 2), (2, 3)])
        with pytest.raises(ValueError):
            build_graph(3, [(1, 2), (2, 1), (2, 3)])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            build_graph(3, [(1, 1), (2, 3)])

    def test_endpoint_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            build_graph(3, [(1, 2), (2, 4)])
        with pytest.raises(ValueError):
            build_graph(3, [(0, 1), (1, 2)])

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            build_graph(4, [(1, 2), (3, 4)])

    def test_isolated_vertex_rejected(self):
        with pytest.raises(ValueError):
            build_graph(3, [(1, 2)])

    def test_too_few_vertices_rejected(self):
        with pytest.raises(ValueError):
            build_graph(1, [])

    def test_no_edges_rejected(self):
        with pytest.raises(ValueError):
            build_graph(2, [])


class TestIncidenceMatrices:
    def test_path3_incidence(self):
        assert incidence_matrix(path_graph(3)) == ((1, 0), (1, 1), (0, 1))

    def test_cycle3_incidence(self):
        assert incidence_matrix(cycle_graph(3)) == ((1, 0, 1), (1, 1, 0), (0, 1, 1))

    def test_star4_incidence(self):
        assert incidence_matrix(star_graph(4)) == (
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 1),
        )

    def test_path3_signed(self):
        assert signed_incidence(path_graph(3)) == ((1, 0), (-1, 1), (0, -1))

    def test_cycle3_signed(self):
        assert signed_incidence(cycle_graph(3)) == (
            (1, 0, 1),
            (-1, 1, 0),
            (0, -1, -1),
        )

    def test_star4_signed(self):
        assert signed_incidence(star_graph(4)) == (
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (-1, -1, -1),
        )

    def test_paw_signed(self):
        assert signed_incidence(paw_graph()) == (
            (1, 1, 0, 0),
            (-1, 0, 1, 0),
            (0, -1, -1, 1),
            (0, 0, 0, -1),
        )

    @pytest.mark.parametrize(
        "graph",
        [
            path_graph(3),
            path_graph(6),
            cycle_graph(4),
            star_graph(5),
            complete_graph(4),
            paw_graph(),
        ],
        ids=["path3", "path6", "cycle4", "star5", "complete4", "paw"],
    )
    def test_column_structure(self, graph):
        signed = signed_incidence(graph)
        plain = incidence_matrix(graph)
        for k in range(graph.n_edges):
            column = [signed[n][k] for n in range(graph.n_vertices)]
            assert sorted(column) == [-1] + [0] * (graph.n_vertices - 2) + [1]
            assert sum(column) == 0
        assert plain == tuple(
            tuple(abs(entry) for entry in row) for row in signed
        )


class TestVertexEdgeQueries:
    def test_degree(self):
        assert path_graph(3).degree(2) == 2
        assert path_graph(3).degree(1) == 1
        assert star_graph(4).degree(4) == 3
        assert all(cycle_graph(3).degree(v) == 2 for v in (1, 2, 3))

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            path_graph(3).degree(4)
        with pytest.raises(ValueError):
            path_graph(3).degree(0)

    def test_message_holders(self):
        assert path_graph(3).message_holders(1) == (1, 2)
        assert paw_graph().message_holders(3) == (2, 3)
        assert cycle_graph(3).message_holders(2) == (2, 3)

    def test_message_holders_out_of_range(self):
        with pytest.raises(ValueError):
            path_graph(3).message_holders(3)

    def test_incident_edges_ascending(self):
        assert path_graph(3).incident_edges(2) == (1, 2)
        assert cycle_graph(3).incident_edges(1) == (1, 3)
        assert star_graph(4).incident_edges(4) == (1, 2, 3)
        assert paw_graph().incident_edges(3) == (2, 3, 4)

    def test_edge_sign(self):
        g = paw_graph()
        assert g.edge_sign(1, 1) == 1
        assert g.edge_sign(2, 1) == -1
        assert g.edge_sign(3, 4) == 1
        assert g.edge_sign(4, 4) == -1

    def test_edge_sign_non_incident(self):
        with pytest.raises(ValueError):
            path_graph(3).edge_sign(1, 2)

    def test_is_regular(self):
        assert cycle_graph(3).is_regular() == 2
        assert path_graph(3).is_regular() is None
        assert complete_graph(4).is_regular() == 3

    def test_regular_degree_edge_count_relation(self):
        for graph in (cycle_graph(5), complete_graph(4), regular_graph(6, 3)):
            d = graph.is_regular()
            assert d is not None
            assert graph.n_vertices * d == 2 * graph.n_edges


class TestGenerators:
    def test_path_edges(self):
        assert path_graph(3).edges == ((1, 2), (2, 3))
        assert path_graph(2).edges == ((1, 2),)

    def test_cycle_edges_close_last(self):
        assert cycle_graph(3).edges == ((1, 2), (2, 3), (1, 3))
        assert cycle_graph(4).edges == ((1, 2), (2, 3), (3, 4), (1, 4))

    def test_star_hub_is_last_vertex(self):
        assert star_graph(4).edges == ((1, 4), (2, 4), (3, 4))

    def test_complete_lexicographic(self):
        assert complete_graph(4).edges == (
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
        )

    def test_regular_complete_case(self):
        g = regular_graph(4, 3)
        assert g.n_edges == 6
        assert set(g.edges) == set(complete_graph(4).edges)

    def test_regular_two_is_a_cycle(self):
        g = regular_graph(5, 2)
        assert g.is_regular() == 2
        assert set(g.edges) == set(cycle_graph(5).edges)

    def test_regular_invalid_parameters(self):
        with pytest.raises(ValueError):
            regular_graph(3, 3)  # degree must be below vertex count
        with pytest.raises(ValueError):
            regular_graph(5, 3)  # odd vertex-degree product
        with pytest.raises(ValueError):
            regular_graph(4, 0)

    def test_generator_minimum_sizes(self):
        with pytest.raises(ValueError):
            path_graph(1)
        with pytest.raises(ValueError):
            cycle_graph(2)
        assert star_graph(2).edges == ((1, 2),)  # degenerate star is one edge

    def test_from_family(self):
        assert from_family("path", 3).edges == path_graph(3).edges
        assert from_family("regular", 4, 3).edges == regular_graph(4, 3).edges
        assert "path" in FAMILIES and "regular" in FAMILIES
        with pytest.raises(ValueError):
            from_family("tree", 3)
        with pytest.raises(ValueError):
            from_family("regular", 4)  # degree required


class TestEdgeListFormat:
    def test_parse_basic(self):
        g = parse_edge_list("3 2\n1 2\n2 3\n")
        assert g.edges == ((1, 2), (2, 3))

    def test_parse_comments_and_blanks(self):
        text = """
        # a three-server ring
        3 3

        1 2
        2 3  # closing pair next
        1 3
        """
        g = parse_edge_list(text)
        assert g.edges == ((1, 2), (2, 3), (1, 3))

    def test_round_trip_is_identity(self):
        for graph in (path_graph(4), cycle_graph(5), star_graph(4), paw_graph()):
            text = format_edge_list(graph)
            again = parse_edge_list(text)
            assert again.n_vertices == graph.n_vertices
            assert again.edges == graph.edges
            assert format_edge_list(again) == text

    def test_parse_errors_carry_line_numbers(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_edge_list("3\n1 2\n2 3\n")
        with pytest.raises(ValueError, match="line 3"):
            parse_edge_list("3 2\n1 2\nx y\n")

    def test_parse_edge_count_mismatch(self):
        with pytest.raises(ValueError):
            parse_edge_list("3 2\n1 2\n")
        with pytest.raises(ValueError):
            parse_edge_list("3 1\n1 2\n2 3\n")

    def test_parse_validates_graph(self):
        with pytest.raises(ValueError):
            parse_edge_list("4 2\n1 2\n3 4\n")  # disconnected
