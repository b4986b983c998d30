import math
import random

import pytest

from bicliques.ceh import (
    ceh_cograph,
    ceh_interval,
    ceh_tk,
    ceh_tk_weak,
    colorful_floor_target,
    trunk,
    weak_floor_target,
)
from bicliques.cograph import cotree_to_graph, parse_cotree
from bicliques.core import (
    InputError,
    IntervalFamily,
    Partition,
    SubtreeFamily,
    Tree,
    intersection_graph,
    verify_certificate,
)
from bicliques.extremal import gen_ceh_cograph
from bicliques.oracle import max_colorful_biclique
from bicliques.randomized import (
    balanced_partition_for,
    random_cotree,
    random_subtree_family,
    random_tree_with_leaves,
)

from conftest import interval, member


def colorful_oracle_size(fam):
    g = intersection_graph(fam)
    ids = fam.ids()
    mapping = {i: fam.by_id()[ids[i]].part for i in range(len(ids))}
    return max_colorful_biclique(g, Partition.from_mapping(mapping))[0]


def test_ceh_interval_tight_instance(six_labeled_intervals):
    cert = ceh_interval(six_labeled_intervals)
    part = Partition.from_family(six_labeled_intervals)
    assert verify_certificate(six_labeled_intervals, cert, 1, part).valid
    assert colorful_oracle_size(six_labeled_intervals) == 2


def test_ceh_interval_separated_parts_give_empty_kind():
    fam = IntervalFamily(
        (
            interval(0, 0, 1, part=1),
            interval(1, 0, 1, part=1),
            interval(2, 5, 6, part=2),
            interval(3, 5, 6, part=2),
        )
    )
    cert = ceh_interval(fam)
    assert cert.kind == "empty"
    assert verify_certificate(fam, cert, 0, Partition.from_family(fam)).valid


def test_ceh_interval_random_balanced():
    rng = random.Random(47)
    from bicliques.randomized import random_interval_family

    for _ in range(40):
        n = rng.randint(2, 60)
        fam = random_interval_family(n, rng, with_parts=True)
        cert = ceh_interval(fam)
        part = Partition.from_family(fam)
        assert verify_certificate(fam, cert, n // 6, part).valid
        sizes = {1: len(fam.part_ids(1)), 2: len(fam.part_ids(2))}
        assert len(cert.side_a) >= (sizes[1] + 2) // 3 or sizes[1] == 0
        assert len(cert.side_b) >= (sizes[2] + 2) // 3 or sizes[2] == 0


def test_ceh_interval_needs_labels(touching_intervals):
    with pytest.raises(InputError):
        ceh_interval(touching_intervals)


def test_ceh_interval_rejects_unbalanced_without_flag():
    fam = IntervalFamily(
        tuple(interval(i, 0, 1, part=1) for i in range(5))
        + (interval(5, 0, 1, part=2),)
    )
    with pytest.raises(InputError):
        ceh_interval(fam)
    cert = ceh_interval(fam, allow_unbalanced=True)
    assert verify_certificate(fam, cert, 1, Partition.from_family(fam)).valid


def test_ceh_cograph_tight_instance():
    ct, part = gen_ceh_cograph(1)
    cert = ceh_cograph(ct, part)
    assert verify_certificate(ct, cert, 1, part).valid
    size, _ = max_colorful_biclique(cotree_to_graph(ct), part)
    assert size == 2


def test_ceh_cograph_complete_graph():
    ct = parse_cotree("(C (U 0 1 2 3 4 5 6 7))")
    part = Partition.from_mapping({i: 1 if i < 4 else 2 for i in range(8)})
    cert = ceh_cograph(ct, part)
    assert cert.kind == "complete"
    assert len(cert.side_a) >= 1 and len(cert.side_b) >= 1
    assert verify_certificate(ct, cert, 1, part).valid


def test_ceh_cograph_random():
    rng = random.Random(53)
    for _ in range(40):
        n = rng.randint(2, 64)
        ct = random_cotree(n, rng)
        part = balanced_partition_for(ct.leaf_ids(), rng)
        cert = ceh_cograph(ct, part)
        v1, v2 = len(part.part1()), len(part.part2())
        assert verify_certificate(ct, cert, min(v1, v2) // 4, part).valid
        assert len(cert.side_a) >= v1 // 4
        assert len(cert.side_b) >= v2 // 4


def test_trunk_of_subdivided_star_is_single_vertex():
    # three branches of length 3 from one centre
    edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)]
    tree = Tree.from_edges(10, edges)
    data = trunk(tree)
    assert data.trunk.vertices == (0,)
    assert data.trunk_leaf_count(tree) == 0


def test_trunk_of_six_leaf_caterpillar():
    # spine 0-1-2-3 with Y-splits hanging off both spine ends and middle
    edges = [
        (0, 1), (1, 2), (2, 3),
        (0, 4), (0, 5),
        (1, 6),
        (2, 7),
        (3, 8), (3, 9),
    ]
    tree = Tree.from_edges(10, edges)
    assert len(tree.leaves()) == 6
    data = trunk(tree)
    assert data.trunk_leaf_count(tree) <= 3


def test_trunk_leaf_bound_random():
    rng = random.Random(59)
    for _ in range(80):
        k = rng.randint(3, 12)
        tree = random_tree_with_leaves(k, rng.randint(0, 18), rng)
        data = trunk(tree)
        assert data.trunk_leaf_count(tree) <= k // 2


def test_trunk_rejects_paths():
    with pytest.raises(InputError):
        trunk(Tree.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


def test_ceh_tk_path_base_matches_interval():
    fam = SubtreeFamily(
        Tree.from_edges(7, [(i, i + 1) for i in range(6)]),
        (
            member(0, [0, 1], part=1),
            member(1, [2, 3], part=1),
            member(2, [4, 5], part=1),
            member(3, [1, 2], part=2),
            member(4, [3, 4], part=2),
            member(5, [5, 6], part=2),
        ),
    )
    cert = ceh_tk(fam)
    assert verify_certificate(fam, cert, 1, Partition.from_family(fam)).valid


def test_ceh_tk_on_realized_bipartite():
    from bicliques.extremal import bipartite_to_subtrees
    from bicliques.core import Graph

    c4 = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3), (1, 3)])
    fam = bipartite_to_subtrees(c4, 2)
    cert = ceh_tk(fam, allow_unbalanced=True)
    assert verify_certificate(fam, cert, 0, Partition.from_family(fam)).valid
    assert len(cert.side_a) >= 1 and len(cert.side_b) >= 1


def test_ceh_tk_random_guarantee():
    rng = random.Random(61)
    for _ in range(40):
        k = rng.choice([3, 4, 6, 8])
        tree = random_tree_with_leaves(k, rng.randint(0, 12), rng)
        n = rng.randint(2, 80)
        fam = random_subtree_family(n, tree, rng, with_parts=True)
        trace = {}
        cert = ceh_tk(fam, trace=trace)
        target = colorful_floor_target(k, n)
        assert verify_certificate(fam, cert, target, Partition.from_family(fam)).valid
        # the trunk recursion at least halves the leaf count per level
        depth = sum(1 for c in trace.get("cases", []) if c == "both-big")
        assert depth <= math.ceil(math.log2(max(k, 2)))


def test_ceh_tk_ladder_stage_conditions():
    rng = random.Random(67)
    checked = 0
    for _ in range(200):
        k = rng.choice([3, 4, 6])
        tree = random_tree_with_leaves(k, rng.randint(2, 12), rng)
        n = rng.randint(10, 70)
        fam = random_subtree_family(n, tree, rng, with_parts=True)
        trace = {}
        ceh_tk(fam, trace=trace)
        for stages in trace.get("ladder", []):
            checked += 1
            for info in stages:
                if info.get("empty_branch"):
                    continue
                assert info["pivot_count_branch"] * 2 >= info["H"]
                assert info["flag"] in ("complete", "empty")
    assert checked > 0


def test_ceh_tk_weak_star_families():
    # two interleaved leaf-path families on a 3-star
    tree = Tree.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    members = []
    for i, verts in enumerate([[1, 2], [3, 4], [5, 6]]):
        members.append(member(2 * i, verts, part=1))
        members.append(member(2 * i + 1, verts, part=2))
    fam = SubtreeFamily(tree, tuple(members))
    cert = ceh_tk_weak(fam)
    assert verify_certificate(fam, cert, 6 // 12, Partition.from_family(fam)).valid


def test_ceh_tk_weak_k2_delegates_to_intervals():
    fam = SubtreeFamily(
        Tree.from_edges(4, [(0, 1), (1, 2), (2, 3)]),
        (member(0, [0, 1], part=1), member(1, [1, 2], part=2)),
    )
    cert = ceh_tk_weak(fam)
    assert verify_certificate(fam, cert, 0, Partition.from_family(fam)).valid
    assert len(cert.side_a) == 1 and len(cert.side_b) == 1


def test_ceh_tk_weak_random_guarantee():
    rng = random.Random(71)
    for _ in range(40):
        k = rng.choice([3, 4, 6, 8])
        tree = random_tree_with_leaves(k, rng.randint(0, 12), rng)
        n = rng.randint(2, 90)
        fam = random_subtree_family(n, tree, rng, with_parts=True)
        cert = ceh_tk_weak(fam)
        target = weak_floor_target(k, n)
        assert verify_certificate(fam, cert, target, Partition.from_family(fam)).valid


def test_weak_bound_beats_log_bound_at_k8():
    # at k = 8 the simple 1/(3(k-1)) constant is stronger than ln(k)/(20k)
    assert weak_floor_target(8, 2000) >= colorful_floor_target(8, 2000)


def test_ceh_tk_two_thousand_members_on_eight_leaves():
    # the one desk-scale size where the logarithmic target is two digits:
    # targets are floor(ln(8)/160 * 1000) = 12 and floor(2000/42) = 47
    rng = random.Random(99)
    tree = random_tree_with_leaves(8, 20, rng)
    fam = random_subtree_family(2000, tree, rng, with_parts=True)
    part = Partition.from_family(fam)
    assert colorful_floor_target(8, 2000) == 12
    cert = ceh_tk(fam)
    assert verify_certificate(fam, cert, 12, part).valid
    assert weak_floor_target(8, 2000) == 47
    weak_cert = ceh_tk_weak(fam)
    assert verify_certificate(fam, weak_cert, 47, part).valid


def test_colorful_floor_target_values():
    assert colorful_floor_target(8, 2000) == math.floor(math.log(8) / 160 * 1000)
    assert colorful_floor_target(4, 16) == 0
    assert weak_floor_target(3, 120) == 10
