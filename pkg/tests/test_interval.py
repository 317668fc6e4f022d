import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from acyc import graph as gr
from acyc import orientation as ori
from acyc.equivalence import kappa_partition
from acyc.interval import (
    CONTRACTED,
    DELETED,
    EMPTY,
    ThetaContext,
    check_alternation,
    check_diagram,
    check_first_pass,
    check_interval_agreement,
    click_sequence_between,
    contract_interval,
    edge_interval,
    expand_click_sequence,
    find_beta_witness,
    interval_blocks,
    interval_of_class,
    interval_of_deleted_class,
    is_blocked,
    normalize_click_sequence,
    theta,
    theta_by_permutation,
    verify_theta_bijection,
    vw_interval,
)
from acyc.orientation import Orientation, OrientationError
from oracles import interval_brute


def k3_forward():
    return ori.from_arcs(gr.complete(3), [(0, 1), (0, 2), (1, 2)])


def valid_sequences(o, length):
    """All valid click sequences from ``o`` of exactly ``length`` clicks."""
    out = []

    def rec(cur, seq):
        if len(seq) == length:
            out.append(tuple(seq))
            return
        for v in sorted(ori.sources(cur)):
            rec(ori.click(cur, v), seq + [v])

    rec(o, [])
    return out


def test_backward_edge_gives_empty_interval():
    o = k3_forward()
    e = o.graph.edge_id(0, 1)
    assert vw_interval(ori.reverse_edge(o, e), e) == EMPTY
    assert EMPTY.empty and len(EMPTY) == 0


def test_k2_interval_is_the_edge():
    g = gr.complete(2)
    assert vw_interval(Orientation(0, g), 0) == edge_interval(g, 0)
    part = kappa_partition(g)
    assert interval_of_class(part, 0, 0).vertices == {0, 1}


def test_triangle_interval():
    o = k3_forward()
    iv = vw_interval(o, o.graph.edge_id(0, 2))
    assert iv.vertices == {0, 1, 2} and iv.arcs == {(0, 1), (0, 2), (1, 2)}
    assert vw_interval(o, o.graph.edge_id(0, 1)).vertices == {0, 1}


@pytest.mark.parametrize("n", range(2, 6))
def test_interval_matches_path_enumeration(n):
    for g in gr.connected_graphs(n):
        for o in ori.enumerate_acyclic(g):
            arcs = set(o.arcs())
            for e, (v, w) in enumerate(g.edges):
                assert vw_interval(o, e).vertices == interval_brute(g.n, arcs, v, w)


def test_k3_classes_have_consistent_intervals():
    g = gr.complete(3)
    part = kappa_partition(g)
    for e in range(3):
        sizes = sorted(len(interval_of_class(part, e, c)) for c in range(part.count))
        assert sizes == [2, 3]


def test_deleted_class_interval_on_triangle():
    g = gr.complete(3)
    e = g.edge_id(0, 2)
    dele = gr.delete_edge(g, e)
    part_del = kappa_partition(dele)
    assert part_del.count == 1
    # the path 0-1-2 has a member 0->1->2, whose preimage carries the full triangle
    assert len(interval_of_deleted_class(g, e, part_del, 0)) == 3


def test_deleted_class_without_long_interval_falls_back_to_edge():
    g = gr.cycle(4)
    e = g.edge_id(0, 1)
    part_del = kappa_partition(gr.delete_edge(g, e))
    assert {len(interval_of_deleted_class(g, e, part_del, c)) for c in range(part_del.count)} <= {2, 4}
    g = gr.complete(2)
    part_del = kappa_partition(gr.delete_edge(g, 0))
    assert interval_of_deleted_class(g, 0, part_del, 0) == edge_interval(g, 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_interval_agreement(n):
    graphs = list(gr.connected_graphs(n))
    if n == 6:
        graphs = graphs[::53]
    for g in graphs:
        part = kappa_partition(g)
        for e in gr.cycle_edges(g):
            assert check_interval_agreement(g, e, part)


def test_alternation_examples():
    o = k3_forward()
    assert check_alternation(o, [0, 1, 2, 0, 1, 2])
    # clicking 1 twice in a row skips 0 on the arc 0->1
    assert not check_alternation(o, [0, 1, 1])


def test_first_pass_examples():
    o = k3_forward()
    e = o.graph.edge_id(0, 2)
    assert check_first_pass(o, e, [0, 1, 2, 0, 1, 2])
    assert check_first_pass(o, e, [1, 2])  # does not start at v, nothing to say


def test_normalize_leaves_blocked_sequence_alone():
    o = k3_forward()
    e = o.graph.edge_id(0, 2)
    seq = [0, 1, 2, 0, 1]
    assert is_blocked(o, e, seq)
    assert normalize_click_sequence(o, e, seq) == seq


def test_normalize_interleaved_sequence_on_path_plus_chord():
    # 0->1->2 with chord 0->2, and a pendant 3 hanging off 1 oriented 3->1
    g = gr.from_edges(4, [(0, 1), (1, 2), (0, 2), (1, 3)])
    o = ori.from_arcs(g, [(0, 1), (1, 2), (0, 2), (3, 1)])
    e = g.edge_id(0, 2)
    seq = [0, 3, 1, 2]
    assert ori.is_valid_click_sequence(o, seq)
    assert vw_interval(o, e).vertices == {0, 1, 2}
    assert not is_blocked(o, e, seq)
    out = normalize_click_sequence(o, e, seq)
    assert out == [3, 0, 1, 2]
    assert is_blocked(o, e, out)
    assert ori.apply_click_sequence(o, out) == ori.apply_click_sequence(o, seq)


def test_normalize_rejects_invalid_sequence():
    o = k3_forward()
    with pytest.raises(OrientationError):
        normalize_click_sequence(o, 0, [2])


def test_interval_blocks_positions():
    o = k3_forward()
    e = o.graph.edge_id(0, 2)
    assert interval_blocks(o, e, [0, 1, 2, 0]) == [[0, 1, 2], [3]]


def test_normalize_k3_all_short_sequences():
    g = gr.complete(3)
    for o in ori.enumerate_acyclic(g):
        for e in range(3):
            for length in range(7):
                for seq in valid_sequences(o, length):
                    out = normalize_click_sequence(o, e, seq)
                    assert sorted(out) == sorted(seq)
                    assert is_blocked(o, e, out)
                    assert ori.apply_click_sequence(o, out) == ori.apply_click_sequence(o, seq)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 2**31), st.integers(0, 14))
def test_normalize_random_sequences_six_vertices(i, seed, length):
    graphs = [gr.complete(6), gr.cycle(6), gr.complete_bipartite(3, 3), gr.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3), (1, 4)])]
    g = graphs[i % len(graphs)]
    rng = random.Random(seed)
    acyc = ori.enumerate_acyclic(g)
    o = acyc[rng.randrange(len(acyc))]
    seq = []
    cur = o
    for _ in range(length):
        v = rng.choice(sorted(ori.sources(cur)))
        seq.append(v)
        cur = ori.click(cur, v)
    assert check_alternation(o, seq)
    for e in range(g.m):
        if not check_first_pass(o, e, seq):
            raise AssertionError((o, e, seq))
        out = normalize_click_sequence(o, e, seq)
        assert len(out) == len(seq) and is_blocked(o, e, out)
        assert ori.apply_click_sequence(o, out) == cur


def test_click_sequence_between():
    o = k3_forward()
    target = ori.apply_click_sequence(o, [0, 1])
    seq = click_sequence_between(o, target)
    assert ori.apply_click_sequence(o, seq) == target
    assert click_sequence_between(o, o) == []


def test_click_sequence_between_unreachable():
    g = gr.complete(3)
    kp = kappa_partition(g)
    a, b = kp.representative(0), kp.representative(1)
    assert click_sequence_between(a, b) is None


def test_contract_edge_interval_on_triangle():
    o = ori.from_arcs(gr.complete(3), [(0, 1), (2, 0), (2, 1)])
    iv = vw_interval(o, 0)
    assert iv.vertices == {0, 1}
    q, oq, mapping = contract_interval(o.graph, o, iv)
    assert q == gr.complete(2) and oq.arcs() == [(1, 0)] and mapping == [0, 0, 1]
    with pytest.raises(gr.GraphError):
        contract_interval(o.graph, o, EMPTY)


@pytest.mark.parametrize("n", range(2, 6))
def test_equal_intervals_and_equivalent_contractions_imply_equivalence(n):
    """Lift a quotient click sequence by expanding the merged vertex; it must
    take one orientation to the other whenever their intervals agree."""
    for g in gr.connected_graphs(n):
        for e in range(g.m):
            groups = {}
            for o in ori.enumerate_acyclic(g):
                if not o.bits >> e & 1:
                    groups.setdefault(vw_interval(o, e), []).append(o)
            for iv, members in groups.items():
                first = members[0]
                q, oq1, mapping = contract_interval(g, first, iv)
                for o in members[1:]:
                    _, oq2, _ = contract_interval(g, o, iv)
                    path = click_sequence_between(oq1, oq2)
                    if path is None:
                        continue
                    lifted = expand_click_sequence(iv, mapping, path)
                    assert ori.apply_click_sequence(first, lifted) == o


@pytest.mark.parametrize("n", range(3, 6))
def test_diagram_commutes(n):
    for g in gr.connected_graphs(n):
        part = kappa_partition(g)
        for e in gr.cycle_edges(g):
            assert check_diagram(g, e, part)


def test_theta_on_triangle():
    g = gr.complete(3)
    for e in range(3):
        r = verify_theta_bijection(g, e)
        assert (r.kappa_Y, r.kappa_Ydel, r.kappa_Ycon, r.bijective) == (2, 1, 1, True)
        ctx = ThetaContext.build(g, e)
        assert sorted(theta(ctx, c).tag for c in range(2)) == [CONTRACTED, DELETED]


def test_theta_on_k23_frozen_split():
    g = gr.k23()
    for e in range(g.m):
        r = verify_theta_bijection(g, e)
        # every edge of K2,3 splits 7 as 3 + 4 (brute force)
        assert (r.kappa_Y, r.kappa_Ydel, r.kappa_Ycon, r.bijective) == (7, 3, 4, True)
    assert r.to_dict()["edge"] == [g.edges[e][0] + 1, g.edges[e][1] + 1]


def test_theta_rejects_bridge():
    with pytest.raises(gr.GraphError):
        ThetaContext.build(gr.path(3), 0)


@pytest.mark.parametrize("n", range(3, 6))
def test_theta_alternate_route_agrees(n):
    for g in gr.connected_graphs(n):
        for e in gr.cycle_edges(g):
            ctx = ThetaContext.build(g, e)
            for c in range(ctx.part.count):
                a, b = theta(ctx, c), theta_by_permutation(ctx, c)
                assert (a.tag, a.target_class) == (b.tag, b.target_class)


def test_beta_witness():
    w = find_beta_witness(gr.corpus(5), same_side=False)
    assert w is not None
    kp = kappa_partition(w.graph)
    assert kp.class_of(w.first) == kp.class_of(w.second)
    assert w.first_image != w.second_image
    assert w.graph == gr.complete(3)


def test_no_same_side_beta_witness_up_to_five_vertices():
    assert find_beta_witness(gr.corpus(5), same_side=True) is None
