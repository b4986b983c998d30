import random

from bicliques.core import (
    SubtreeFamily,
    Tree,
    intersection_edges_by_id,
)
from bicliques.normalize import (
    normalize_subtrees,
    perturb_intervals,
    reduce_degree,
    separate_leaves,
    shared_member_leaves,
)
from bicliques.randomized import (
    random_interval_family,
    random_subtree_family,
    random_tree,
)

from conftest import member


def test_reduce_degree_splits_the_four_star():
    k14 = Tree.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    fam = SubtreeFamily(k14, (member(0, [0]),))
    out = reduce_degree(fam)
    assert out.ambient.n == 8
    assert out.ambient.max_degree() == 3
    assert len(out.ambient.leaves()) == len(k14.leaves()) == 4
    # the centre grew into the whole replacement path
    assert len(out.members[0].subtree.vertices) == 4


def test_reduce_degree_identity_below_threshold():
    path = Tree.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    fam = SubtreeFamily(path, (member(0, [1, 2]),))
    assert reduce_degree(fam) == fam


def test_reduce_degree_identity_on_three_star(nine_subtrees):
    out = reduce_degree(nine_subtrees)
    assert out == nine_subtrees
    assert intersection_edges_by_id(out) == intersection_edges_by_id(nine_subtrees)


def test_separate_leaves_duplicate_singletons(star3):
    fam = SubtreeFamily(star3, (member(0, [1]), member(1, [1])))
    out = separate_leaves(fam)
    assert not shared_member_leaves(out)
    assert intersection_edges_by_id(out) == frozenset({(0, 1)})
    leaves_a = set(out.members[0].subtree.leaf_vertices_in(out.ambient))
    leaves_b = set(out.members[1].subtree.leaf_vertices_in(out.ambient))
    assert not leaves_a & leaves_b


def test_separate_leaves_identity_when_disjoint(star3):
    fam = SubtreeFamily(star3, (member(0, [1]), member(1, [2]), member(2, [3])))
    assert separate_leaves(fam) == fam


def test_separate_leaves_preserves_graph_randomly():
    rng = random.Random(5)
    for _ in range(40):
        fam = random_subtree_family(10, random_tree(12, rng), rng)
        out = separate_leaves(fam)
        assert intersection_edges_by_id(out) == intersection_edges_by_id(fam)
        assert not shared_member_leaves(out)


def test_separate_leaves_conserves_ambient_leaf_count():
    rng = random.Random(6)
    for _ in range(40):
        fam = random_subtree_family(8, random_tree(10, rng), rng)
        out = separate_leaves(fam)
        assert len(out.ambient.leaves()) == len(fam.ambient.leaves())


def test_normalize_composition_and_idempotence():
    rng = random.Random(7)
    for _ in range(25):
        fam = random_subtree_family(9, random_tree(11, rng, max_degree=5), rng)
        once = normalize_subtrees(fam)
        assert once.ambient.max_degree() <= 3
        assert not shared_member_leaves(once)
        assert intersection_edges_by_id(once) == intersection_edges_by_id(fam)
        assert len(once.ambient.leaves()) == len(fam.ambient.leaves())
        twice = normalize_subtrees(once)
        assert intersection_edges_by_id(twice) == intersection_edges_by_id(once)
        assert sorted(twice.ambient.degrees()) == sorted(once.ambient.degrees())


def test_separate_leaves_lone_vertex_ambient_grows():
    # duplicated singletons on a one-vertex tree can only be separated by
    # growing the tree; the graph survives but a path (two leaves) appears
    lone = Tree(1, ())
    fam = SubtreeFamily(lone, (member(0, [0]), member(1, [0])))
    out = separate_leaves(fam)
    assert intersection_edges_by_id(out) == frozenset({(0, 1)})
    assert not shared_member_leaves(out)
    assert out.ambient.max_degree() <= 3


def test_perturb_touching_chain(touching_intervals):
    out = perturb_intervals(touching_intervals)
    endpoints = [e for m in out.members for e in (m.left, m.right)]
    assert len(set(endpoints)) == len(endpoints)
    assert intersection_edges_by_id(out) == frozenset({(0, 1), (1, 2), (2, 3)})


def test_perturb_distinct_endpoints_keeps_order():
    from conftest import interval
    from bicliques.core import IntervalFamily

    fam = IntervalFamily((interval(0, 0, 3), interval(1, 1, 5), interval(2, 7, 9)))
    out = perturb_intervals(fam)
    events_in = sorted(
        (coord, which, m.id)
        for m in fam.members
        for which, coord in (("L", m.left), ("R", m.right))
    )
    events_out = sorted(
        (coord, which, m.id)
        for m in out.members
        for which, coord in (("L", m.left), ("R", m.right))
    )
    assert [(w, i) for _, w, i in events_in] == [(w, i) for _, w, i in events_out]
    assert intersection_edges_by_id(out) == intersection_edges_by_id(fam)


def test_perturb_many_ties_random():
    rng = random.Random(9)
    for _ in range(40):
        fam = random_interval_family(50, rng, coord_range=20, with_parts=True)
        out = perturb_intervals(fam)
        assert intersection_edges_by_id(out) == intersection_edges_by_id(fam)
        assert [m.part for m in out.members] == [m.part for m in fam.members]
        endpoints = [e for m in out.members for e in (m.left, m.right)]
        assert len(set(endpoints)) == len(endpoints)
