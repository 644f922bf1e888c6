import io
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pagtc.graphs import (
    BUNDLED_DATASETS,
    EdgeListError,
    Graph,
    generate_navigable_small_world,
    load_bundled,
    read_edge_list,
    write_edge_list,
)

from conftest import random_connected_graph


class TestParsing:
    def test_path_graph(self):
        g = read_edge_list("a b\nb c\n")
        assert g.node_count == 3
        assert g.edge_count == 2
        assert g.degrees.tolist() == [1, 2, 1]
        assert g.labels == ("a", "b", "c")

    def test_duplicate_and_self_loop_dropped(self):
        g = read_edge_list("a b\nb a\na a\n")
        assert g.node_count == 2
        assert g.edge_count == 1

    def test_comments_and_extra_columns(self):
        g = read_edge_list("# header\n% other comment\na b 0.5 1234\n\nb c 1.0\n")
        assert g.node_count == 3
        assert g.edge_count == 2

    def test_first_appearance_ids(self):
        g = read_edge_list("x y\nz x\n")
        assert g.labels == ("x", "y", "z")
        assert g.id_of("z") == 2

    def test_malformed_line_reports_number(self):
        with pytest.raises(EdgeListError, match="line 3"):
            read_edge_list("a b\nb c\nbroken\n")

    def test_empty_input_rejected(self):
        with pytest.raises(EdgeListError, match="empty"):
            read_edge_list("# only a comment\n")

    def test_disconnected_warns(self):
        with pytest.warns(UserWarning, match="disconnected"):
            read_edge_list("a b\nc d\n")


class TestBundled:
    def test_flor_families(self):
        g = load_bundled("flor-families")
        assert (g.node_count, g.edge_count) == (15, 20)
        assert g.degree(g.id_of("Medici")) == 6

    def test_les_miserables(self):
        g = load_bundled("les-miserables")
        assert (g.node_count, g.edge_count) == (77, 254)

    def test_fig2_grid(self):
        g = load_bundled("fig2-grid")
        assert g.node_count == 25
        assert g.is_connected()
        # identity label map: spec'd node ids are usable directly
        assert all(g.label(u) == str(u) for u in range(25))

    def test_unknown_name_lists_available(self):
        with pytest.raises(ValueError) as err:
            load_bundled("nope")
        for name in BUNDLED_DATASETS:
            assert name in str(err.value)


class TestGraphInvariants:
    @pytest.mark.parametrize("seed", range(5))
    def test_symmetric_and_irreflexive(self, seed):
        g = random_connected_graph(random.Random(seed), 20)
        for u in range(g.node_count):
            for v in g.neighbors(u):
                assert v != u
                assert u in g.neighbors(int(v))

    def test_degree_sum_is_twice_edges(self):
        for name in BUNDLED_DATASETS:
            g = load_bundled(name)
            assert int(g.degrees.sum()) == 2 * g.edge_count

    def test_adjacency_sorted(self):
        g = load_bundled("les-miserables")
        for u in range(g.node_count):
            nbrs = g.neighbors(u)
            assert np.all(np.diff(nbrs) > 0)

    @staticmethod
    def _label_edges(g):
        return {frozenset((g.label(u), g.label(v))) for u, v in g.edges()}

    def test_round_trip(self):
        for name in BUNDLED_DATASETS:
            g = load_bundled(name)
            buf = io.StringIO()
            write_edge_list(g, buf)
            g2 = read_edge_list(buf.getvalue())
            assert self._label_edges(g) == self._label_edges(g2)
            assert g2.node_count == g.node_count

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_round_trip_random(self, seed):
        g = random_connected_graph(random.Random(seed), random.Random(seed ^ 1).randint(2, 12))
        buf = io.StringIO()
        write_edge_list(g, buf)
        g2 = read_edge_list(buf.getvalue())
        assert self._label_edges(g) == self._label_edges(g2)

    def test_out_of_range_edge_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph(2, [(0, 5)])

    def test_unknown_label(self):
        g = read_edge_list("a b\n")
        with pytest.raises(KeyError):
            g.id_of("zzz")


class TestGenerator:
    def test_pure_grid_is_4_cycle(self):
        g = generate_navigable_small_world(2, 0, 2.0, rng_seed=0)
        assert (g.node_count, g.edge_count) == (4, 4)
        assert g.degrees.tolist() == [2, 2, 2, 2]

    def test_side5_edge_bounds(self):
        for seed in range(5):
            g = generate_navigable_small_world(5, 1, 2.0, rng_seed=seed)
            assert g.node_count == 25
            assert 40 <= g.edge_count <= 65  # grid contributes exactly 40

    def test_mean_degree_above_7(self):
        for side in (5, 10):
            g = generate_navigable_small_world(side, 3, 2.0, rng_seed=0)
            assert 2 * g.edge_count / g.node_count > 7

    def test_determinism(self):
        a = generate_navigable_small_world(6, 2, 1.5, rng_seed=99)
        b = generate_navigable_small_world(6, 2, 1.5, rng_seed=99)
        assert a.edges() == b.edges()
        c = generate_navigable_small_world(6, 2, 1.5, rng_seed=100)
        assert a.edges() != c.edges()

    def test_small_side_rejected(self):
        with pytest.raises(ValueError, match="side"):
            generate_navigable_small_world(1, 1, 2.0, rng_seed=0)

    def test_uniform_exponent_accepted(self):
        g = generate_navigable_small_world(4, 1, 0.0, rng_seed=3)
        assert g.node_count == 16
