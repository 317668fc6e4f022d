from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from acyc import graph as gr
from acyc import orientation as ori
from acyc.equivalence import delta, kappa
from acyc.update_graph import (
    census,
    check_dihedral_orbit,
    check_shift_click_correspondence,
    delta_via_permutations,
    dihedral_class_count,
    f_Y,
    kappa_via_permutations,
    rank,
    reflect_perm,
    shift,
    splits_into_two_independent_arcs,
    update_graph_components,
)


def test_rank_is_a_bijection_onto_range():
    ranks = sorted(rank(p) for p in permutations(range(5)))
    assert ranks == list(range(120))
    assert rank((0, 1, 2)) == 0 and rank((2, 1, 0)) == 5


def test_shift_and_reflect():
    p = (0, 1, 2, 3)
    assert shift(p, 1) == (1, 2, 3, 0)
    assert shift(p, 4) == p
    assert reflect_perm(reflect_perm(p)) == p
    assert shift((), 3) == ()


def test_k23_census():
    assert census(gr.k23()) == {1: 12, 2: 24, 4: 6, 6: 2, 12: 2}
    assert len(update_graph_components(gr.k23())) == 46


def test_trivial_censuses():
    assert census(gr.complete(3)) == {1: 6}
    assert census(gr.empty(3)) == {6: 1}
    assert census(gr.complete(4)) == {1: 24}


def test_permutation_cap():
    with pytest.raises(gr.GraphError):
        update_graph_components(gr.empty(9))


def test_f_y_on_complete_graph():
    g = gr.complete(4)
    first = update_graph_components(g)[0]
    assert first.members == ((0, 1, 2, 3),)
    assert f_Y(g, first).bits == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_classes_biject_with_acyclic_orientations(n):
    for g in gr.connected_graphs(n):
        comps = update_graph_components(g)
        images = [f_Y(g, c).bits for c in comps]
        assert len(set(images)) == len(images)
        assert sorted(images) == sorted(int(b) for b in ori.enumerate_acyclic(g).masks)
        assert sum(len(c.members) for c in comps) == factorial(n)


@pytest.mark.parametrize("g", [gr.cycle(7), gr.path(7), gr.from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (2, 3), (4, 5)])])
def test_classes_biject_on_seven_vertices(g):
    comps = update_graph_components(g)
    assert len(comps) == ori.alpha(g)


@pytest.mark.parametrize("n", range(2, 6))
def test_kappa_and_delta_via_permutations(n):
    for g in gr.connected_graphs(n):
        assert kappa_via_permutations(g) == kappa(g)
        assert delta_via_permutations(g) == delta(g)


def test_shift_click_on_small_cases():
    for g in (gr.complete(3), gr.k23()):
        for p in permutations(range(g.n)):
            assert check_shift_click_correspondence(g, p)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 727), st.permutations(range(5)))
def test_shift_click_property(i, p):
    g = list(gr.connected_graphs(5))[i]
    assert check_shift_click_correspondence(g, p)


def test_dihedral_orbit_bipartite_examples():
    # the orbit meets 2n-2 classes exactly when the cyclic order splits into two independent arcs
    g = gr.k23()
    counts = {dihedral_class_count(g, p) for p in permutations(range(5))}
    assert counts == {8, 10}
    assert dihedral_class_count(g, (0, 2, 4, 1, 3)) == 8
    assert splits_into_two_independent_arcs(g, (0, 2, 4, 1, 3))
    assert {dihedral_class_count(gr.cycle(4), p) for p in permutations(range(4))} == {6, 8}


@pytest.mark.parametrize("n", range(1, 6))
def test_dihedral_orbit_rule(n):
    for g in gr.connected_graphs(n):
        for p in permutations(range(n)):
            assert check_dihedral_orbit(g, p)


def test_dihedral_orbit_even_cycle_six():
    g = gr.cycle(6)
    for p in list(permutations(range(6)))[::7]:
        assert check_dihedral_orbit(g, p)
