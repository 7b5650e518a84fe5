import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evograph.errors import GraphModelError
from evograph.model import (EvolvingGraph, Frame, GraphInstance, Position,
                            apply_delta, diff, edge_key, instance_window,
                            shared_vertices)


def line_instance(index, n=4):
    inst = GraphInstance(index, index)
    for i in range(1, n + 1):
        inst.add_vertex(f"v{i}", Position(float(i), 0.0))
    for i in range(1, n):
        inst.add_edge(f"v{i}", f"v{i+1}")
    return inst


class TestInstance:
    def test_add_edge_normalizes_pair(self):
        inst = line_instance(0)
        assert inst.has_edge("v2", "v1")
        assert ("v1", "v2") in inst.edges

    def test_self_loop_rejected(self):
        inst = line_instance(0)
        with pytest.raises(GraphModelError):
            inst.add_edge("v1", "v1")

    def test_dangling_edge_rejected(self):
        inst = line_instance(0)
        with pytest.raises(GraphModelError):
            inst.add_edge("v1", "nope")

    def test_duplicate_edge_rejected(self):
        inst = line_instance(0)
        with pytest.raises(GraphModelError):
            inst.add_edge("v2", "v1")

    def test_negative_weight_rejected(self):
        inst = line_instance(0)
        with pytest.raises(GraphModelError):
            inst.add_edge("v1", "v3", weight=-2.0)

    def test_remove_vertex_drops_incident_edges(self):
        inst = line_instance(0)
        inst.remove_vertex("v2")
        assert "v2" not in inst.vertices
        assert all("v2" not in key for key in inst.edges)


class TestEvolvingGraph:
    def test_timestamps_must_not_decrease(self):
        eg = EvolvingGraph("t")
        eg.new_instance(2000)
        with pytest.raises(GraphModelError):
            eg.new_instance(1999)

    def test_index_consistency_checked(self):
        inst = line_instance(3)
        with pytest.raises(GraphModelError):
            EvolvingGraph("bad", [inst])


class TestSharedVertices:
    def test_intersection(self):
        a = GraphInstance(0, 0)
        b = GraphInstance(1, 1)
        for vid in ("v1", "v2"):
            a.add_vertex(vid)
        for vid in ("v2", "v3"):
            b.add_vertex(vid)
        assert shared_vertices(a, b) == {"v2"}

    def test_identity(self):
        a = line_instance(0)
        assert shared_vertices(a, a) == set(a.vertices)

    def test_empty(self):
        a = GraphInstance(0, 0)
        b = GraphInstance(1, 1)
        b.add_vertex("v1")
        assert shared_vertices(a, b) == set()


class TestInstanceWindow:
    @pytest.fixture
    def eg20(self):
        eg = EvolvingGraph("w")
        for i in range(20):
            eg.new_instance(i)
        return eg

    def test_immediate_neighbors(self, eg20):
        assert instance_window(eg20, 10, 1) == [9, 11]

    def test_left_boundary_clip(self, eg20):
        assert instance_window(eg20, 0, 3) == [1, 2, 3]

    def test_symmetric_window(self, eg20):
        assert instance_window(eg20, 10, 5) == [5, 6, 7, 8, 9, 11, 12, 13, 14, 15]

    def test_zero_window_empty(self, eg20):
        assert instance_window(eg20, 4, 0) == []

    def test_out_of_range_raises(self, eg20):
        with pytest.raises(IndexError):
            instance_window(eg20, 20, 1)

    @given(i=st.integers(0, 19), w=st.integers(0, 25))
    @settings(max_examples=60)
    def test_window_properties(self, i, w):
        eg = EvolvingGraph("p")
        for k in range(20):
            eg.new_instance(k)
        win = instance_window(eg, i, w)
        bigger = instance_window(eg, i, w + 1)
        assert set(win) <= set(bigger)
        assert len(win) <= 2 * w
        assert all(0 < abs(i - j) <= w for j in win)


class TestDiff:
    def test_identity_is_empty(self):
        a = line_instance(0)
        assert diff(a, a).is_empty()

    def test_single_move_beyond_epsilon(self):
        a = GraphInstance(0, 0)
        a.add_vertex("v1", Position(0.0, 0.0))
        b = GraphInstance(0, 0)
        b.add_vertex("v1", Position(3.0, 4.0))
        delta = diff(a, b, move_epsilon=0.1)
        assert delta.moved_vertices == {"v1": (Position(0.0, 0.0), Position(3.0, 4.0))}

    def test_removed_edge_detected(self):
        a = line_instance(0)
        b = a.copy()
        b.remove_edge("v1", "v2")
        delta = diff(a, b)
        assert delta.removed_edges == {("v1", "v2")}
        assert not delta.added_edges

    def test_swap_symmetry(self, small_eg):
        for a, b in zip(small_eg.instances, small_eg.instances[1:]):
            fwd = diff(a, b)
            rev = diff(b, a)
            assert set(fwd.added_vertices) == rev.removed_vertices
            assert fwd.removed_vertices == set(rev.added_vertices)
            assert set(fwd.added_edges) == rev.removed_edges
            assert fwd.removed_edges == set(rev.added_edges)

    def test_round_trip(self, small_eg):
        for a, b in zip(small_eg.instances, small_eg.instances[1:]):
            replay = apply_delta(a, diff(a, b, move_epsilon=0.0))
            assert set(replay.vertices) == set(b.vertices)
            assert set(replay.edges) == set(b.edges)
            for vid in b.vertices:
                assert replay.position(vid) == b.position(vid)


class TestFrame:
    def test_requires_positive_dims(self):
        with pytest.raises(GraphModelError):
            Frame(0.0, 10.0)

    def test_clamp(self):
        f = Frame(100.0, 50.0)
        assert f.clamp(-5.0, 200.0) == Position(0.0, 50.0)

    def test_edge_key_sorts(self):
        assert edge_key("b", "a") == ("a", "b")
