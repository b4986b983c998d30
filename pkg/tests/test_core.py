import random
from fractions import Fraction

import pytest

from bicliques.core import (
    BicliqueCertificate,
    Graph,
    InputError,
    IntervalFamily,
    OverlappingSidesError,
    Partition,
    Subtree,
    SubtreeFamily,
    Tree,
    UnknownIdError,
    intersection_edges_by_id,
    intersection_graph,
    intersects,
    verify_certificate,
)
from bicliques.randomized import random_subtree_family, random_tree

from conftest import interval, member


def test_intersects_disjoint_singletons(star3):
    assert not intersects(Subtree((1,)), Subtree((2,)))


def test_intersects_self():
    s = Subtree((0, 1, 2))
    assert intersects(s, s)


def test_intersects_paths_share_two_vertices():
    # the leaf-to-leaf paths of the 3-star share the centre and one leaf
    p12 = Subtree((0, 1, 2))
    p23 = Subtree((0, 2, 3))
    assert intersects(p12, p23)
    assert set(p12.vertices) & set(p23.vertices) == {0, 2}


def test_subtree_must_be_connected(star3):
    with pytest.raises(InputError):
        SubtreeFamily(star3, (member(0, [1, 2]),))


def test_subtree_connectivity_bfs_check(star3):
    assert Subtree((0, 1, 2)).is_connected_in(star3)
    assert not Subtree((1, 2)).is_connected_in(star3)


def test_tree_validation():
    with pytest.raises(InputError):
        Tree.from_edges(3, [(0, 1)])
    with pytest.raises(InputError):
        Tree.from_edges(4, [(0, 1), (2, 3), (0, 1)])


def test_intersection_graph_nine_subtrees(nine_subtrees):
    g = intersection_graph(nine_subtrees)
    assert g.n == 9
    edges = intersection_edges_by_id(nine_subtrees)
    # duplicated singletons are adjacent; opposite paths avoid them
    assert (0, 1) in edges and (2, 3) in edges and (4, 5) in edges
    assert (0, 8) not in edges and (2, 7) not in edges and (4, 6) not in edges
    # paths pairwise meet at the centre
    assert (6, 7) in edges and (6, 8) in edges and (7, 8) in edges


def test_intersection_graph_single_member():
    fam = IntervalFamily((interval(5, 0, 1),))
    g = intersection_graph(fam)
    assert g.n == 1 and not g.edges


def test_intersection_graph_touching_intervals_is_p4(touching_intervals):
    assert intersection_edges_by_id(touching_intervals) == frozenset(
        {(0, 1), (1, 2), (2, 3)}
    )


def test_intersection_graph_symmetric_loop_free_and_counted():
    rng = random.Random(11)
    for _ in range(20):
        fam = random_subtree_family(8, random_tree(10, rng), rng)
        g = intersection_graph(fam)
        direct = 0
        members = sorted(fam.members, key=lambda m: m.id)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if intersects(members[i].subtree, members[j].subtree):
                    direct += 1
        assert len(g.edges) == direct
        for u, v in g.edges:
            assert u != v and (u, v) == (min(u, v), max(u, v))


def test_verify_certificate_empty_kind(touching_intervals):
    cert = BicliqueCertificate("empty", (0,), (2,))
    assert verify_certificate(touching_intervals, cert, 1).valid


def test_verify_certificate_empty_certificate_min_zero(touching_intervals):
    cert = BicliqueCertificate("empty", (), ())
    assert verify_certificate(touching_intervals, cert, 0).valid


def test_verify_certificate_touching_pair_rejected(touching_intervals):
    cert = BicliqueCertificate("empty", (0,), (1,))
    report = verify_certificate(touching_intervals, cert, 1)
    assert not report.valid
    assert any("cross pair" in p for p in report.problems)


def test_verify_certificate_unknown_id(touching_intervals):
    with pytest.raises(UnknownIdError):
        verify_certificate(
            touching_intervals, BicliqueCertificate("empty", (0,), (99,)), 1
        )


def test_certificate_overlapping_sides_rejected():
    with pytest.raises(OverlappingSidesError):
        BicliqueCertificate("empty", (0, 1), (1, 2))


def test_verify_certificate_partition(six_labeled_intervals):
    partition = Partition.from_family(six_labeled_intervals)
    good = BicliqueCertificate("empty", (0,), (5,))
    assert verify_certificate(six_labeled_intervals, good, 1, partition).valid
    flipped = BicliqueCertificate("empty", (5,), (0,))
    assert not verify_certificate(six_labeled_intervals, flipped, 1, partition).valid


def test_verify_certificate_min_side(six_labeled_intervals):
    cert = BicliqueCertificate("empty", (0,), (5,))
    assert not verify_certificate(six_labeled_intervals, cert, 2).valid


def test_partition_balance():
    p = Partition.from_mapping({0: 1, 1: 2, 2: 1})
    assert p.is_balanced()
    q = Partition.from_mapping({0: 1, 1: 1, 2: 1, 3: 2})
    assert not q.is_balanced()


def test_duplicate_member_ids_rejected():
    with pytest.raises(InputError):
        IntervalFamily((interval(0, 0, 1), interval(0, 1, 2)))


def test_mixed_part_labels_rejected():
    with pytest.raises(InputError):
        IntervalFamily((interval(0, 0, 1, part=1), interval(1, 1, 2)))


def test_multiset_members_allowed(star3):
    fam = SubtreeFamily(star3, (member(0, [1]), member(1, [1])))
    assert intersection_edges_by_id(fam) == frozenset({(0, 1)})


def test_graph_complement():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.complement().edges == frozenset({(0, 2), (0, 3), (1, 3)})


def test_interval_reversed_endpoints_rejected():
    with pytest.raises(InputError):
        interval(0, 2, 1)


def test_fraction_endpoints_compare_exactly():
    fam = IntervalFamily(
        (interval(0, 0, Fraction(1, 3)), interval(1, Fraction(1, 3), 1))
    )
    assert intersection_edges_by_id(fam) == frozenset({(0, 1)})
