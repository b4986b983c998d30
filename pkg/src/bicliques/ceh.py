"""Colorful finders: partition-respecting bi-clique certificates.

Given a two-part labelling of the members, each finder returns a
certificate whose side A lies in part 1 and side B in part 2.  Interval
families guarantee sides of ceil(|F_i|/3); cotrees ceil(|V_i|/4); subtree
families on an ambient tree with k leaves reach floor(ln(k)/(20k) * n/2)
via the trunk recursion, with a simpler 1/(3(k-1)) variant alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cograph import Cotree, conforming_subset, cotree_edges_by_id
from .core import (
    BicliqueCertificate,
    InputError,
    InternalInvariantError,
    IntervalFamily,
    IntervalMember,
    KIND_COMPLETE,
    KIND_EMPTY,
    Partition,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
    finalize_certificate,
    verify_certificate,
)
from .normalize import normalize_subtrees, perturb_intervals
from .seh import path_family_to_intervals


def _require_parts(fam) -> None:
    if not fam.has_parts():
        raise InputError("this operation needs part labels on every member")
    if not fam.part_ids(1) or not fam.part_ids(2):
        raise InputError("both parts must be nonempty")


def _require_balance(fam, allow_unbalanced: bool) -> None:
    if allow_unbalanced:
        return
    p1, p2 = len(fam.part_ids(1)), len(fam.part_ids(2))
    if abs(p1 - p2) > 1:
        raise InputError(
            f"parts of sizes {p1} and {p2} are not balanced; "
            "pass allow_unbalanced to accept this instance"
        )


def colorful_floor_target(k: int, n: int) -> int:
    """floor(ln(k)/(20k) * n/2) with a downward guard of 2^-40.

    The guarantee is an integer, so only the floor matters; the guard keeps
    binary floating point from rounding an exact product up by one.
    """
    if k < 2 or n <= 0:
        return 0
    value = math.log(k) / (20.0 * k) * (n / 2.0) - 2.0 ** -40
    return max(0, math.floor(value))


def weak_floor_target(k: int, n: int) -> int:
    k_eff = max(k, 2)
    return n // (6 * (k_eff - 1))


# ---------------------------------------------------------------------------
# interval graphs
# ---------------------------------------------------------------------------

def ceh_interval(
    fam: IntervalFamily,
    allow_unbalanced: bool = False,
    trace: dict | None = None,
) -> BicliqueCertificate:
    """Partition-respecting certificate with side i of size ceil(|F_i|/3).

    After perturbing to distinct endpoints, a_i is the smallest coordinate
    with a third of part i entirely to its left and b_i the largest with a
    third entirely to its right.  One part left of the other gives an
    empty-kind certificate from the outer thirds; otherwise both middle
    thirds pass through a common window and give a complete-kind one.
    """
    _require_parts(fam)
    _require_balance(fam, allow_unbalanced)
    work = perturb_intervals(fam)
    by_part = {p: [m for m in work.members if m.part == p] for p in (1, 2)}
    sizes = {p: len(by_part[p]) for p in (1, 2)}
    targets = {p: (sizes[p] + 2) // 3 for p in (1, 2)}

    a = {}
    b = {}
    for p in (1, 2):
        rights = sorted(m.right for m in by_part[p])
        lefts = sorted(m.left for m in by_part[p])
        a[p] = rights[targets[p] - 1]
        b[p] = lefts[-targets[p]]

    if trace is not None:
        trace.update({"a1": a[1], "a2": a[2], "b1": b[1], "b2": b[2], "sizes": sizes})

    def left_third(p):
        return [m.id for m in by_part[p] if m.right <= a[p]]

    def right_third(p):
        return [m.id for m in by_part[p] if m.left >= b[p]]

    def middle(p):
        return [m.id for m in by_part[p] if m.right >= a[p] and m.left <= b[p]]

    if a[1] < b[2]:
        if trace is not None:
            trace["case"] = "part1-left-of-part2"
        side1, side2, kind = left_third(1), right_third(2), KIND_EMPTY
    elif a[2] < b[1]:
        if trace is not None:
            trace["case"] = "part2-left-of-part1"
        side1, side2, kind = right_third(1), left_third(2), KIND_EMPTY
    else:
        if trace is not None:
            trace["case"] = "overlapping-windows"
        side1, side2, kind = middle(1), middle(2), KIND_COMPLETE

    cert = finalize_certificate(kind, side1, side2, targets[1], targets[2])
    report = verify_certificate(fam, cert, 0, Partition.from_family(fam))
    if not report.valid:
        raise InternalInvariantError(
            "interval colorful finder produced an invalid certificate: "
            + "; ".join(report.problems)
        )
    return cert


# ---------------------------------------------------------------------------
# cographs
# ---------------------------------------------------------------------------

def ceh_cograph(
    ct: Cotree,
    partition: Partition,
    allow_unbalanced: bool = False,
    trace: dict | None = None,
) -> BicliqueCertificate:
    """Partition-respecting certificate with side i of size ceil(|V_i|/4)."""
    ids = ct.leaf_ids()
    partition.check_covers(ids)
    part1_set = partition.part1()
    v1 = sorted(i for i in ids if i in part1_set)
    v2 = sorted(i for i in ids if i not in part1_set)
    if not v1 or not v2:
        raise InputError("both parts must be nonempty")
    if not allow_unbalanced and abs(len(v1) - len(v2)) > 1:
        raise InputError("partition is not balanced; pass allow_unbalanced")

    adj: dict = {i: set() for i in ids}
    for x, y in cotree_edges_by_id(ct):
        adj[x].add(y)
        adj[y].add(x)

    t1 = (len(v1) + 3) // 4
    t2 = (len(v2) + 3) // 4

    def finish(u1, u2, kind, case):
        if trace is not None:
            trace["case"] = case
        cert = finalize_certificate(kind, u1, u2, t1, t2)
        report = verify_certificate(ct, cert, 0, partition)
        if not report.valid:
            raise InternalInvariantError(
                "cograph colorful finder produced an invalid certificate: "
                + "; ".join(report.problems)
            )
        return cert

    # a singleton part defeats the conforming-subset sandwich, so pair the
    # lone vertex with its larger neighbourhood side directly
    if len(v1) == 1 or len(v2) == 1:
        if len(v1) == 1:
            lone, other = v1[0], v2
        else:
            lone, other = v2[0], v1
        inside = sorted(x for x in other if x in adj[lone])
        outside = sorted(x for x in other if x not in adj[lone])
        chosen, kind = (
            (inside, KIND_COMPLETE) if len(inside) >= len(outside) else (outside, KIND_EMPTY)
        )
        if len(v1) == 1:
            return finish([lone], chosen, kind, "singleton-part")
        return finish(chosen, [lone], kind, "singleton-part")

    w_set = set(conforming_subset(ct, v1))
    x_of_w = [v for v in ids if v not in w_set and w_set <= adj[v]]
    y_of_w = [v for v in ids if v not in w_set and not (w_set & adj[v])]
    if trace is not None:
        trace.update({"W": len(w_set), "X": len(x_of_w), "Y": len(y_of_w)})

    v2_in_w = [v for v in v2 if v in w_set]
    if 2 * len(v2_in_w) < len(v2):
        u1 = [v for v in v1 if v in w_set]
        cand_x = [v for v in v2 if v in x_of_w]
        cand_y = [v for v in v2 if v in y_of_w]
        if len(cand_x) >= len(cand_y):
            return finish(u1, cand_x, KIND_COMPLETE, "part2-outside")
        return finish(u1, cand_y, KIND_EMPTY, "part2-outside")
    u2 = v2_in_w
    cand_x = [v for v in v1 if v in x_of_w]
    cand_y = [v for v in v1 if v in y_of_w]
    if len(cand_x) >= len(cand_y):
        return finish(cand_x, u2, KIND_COMPLETE, "part1-outside")
    return finish(cand_y, u2, KIND_EMPTY, "part1-outside")


# ---------------------------------------------------------------------------
# trunk machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrunkData:
    """The trunk of a max-degree-3 tree and its per-leaf branch anatomy.

    anchor[i] is the degree-3 vertex closest to leaf i, gate[i] the anchor's
    neighbour on the leaf side, and branch_paths[i] the vertices from the
    leaf to the gate.  The trunk spans the anchors and has at most
    floor(k/2) leaves.
    """

    trunk: Subtree
    leaves: tuple
    anchors: tuple
    gates: tuple
    branch_paths: tuple

    def trunk_leaf_count(self, tree: Tree) -> int:
        verts = set(self.trunk.vertices)
        if len(verts) == 1:
            return 0
        adj = tree.adjacency()
        count = 0
        for v in verts:
            inside = sum(1 for u in adj[v] if u in verts)
            if inside == 1:
                count += 1
        return count


def trunk(tree: Tree) -> TrunkData:
    """Trunk of a tree with k >= 3 leaves and maximum degree 3."""
    leaves = tree.leaves()
    k = len(leaves)
    if k <= 2:
        raise InputError("trunk needs a tree with at least 3 leaves")
    if tree.max_degree() > 3:
        raise InputError("trunk needs maximum degree 3")
    adj = tree.adjacency()
    degrees = tree.degrees()
    anchors = []
    gates = []
    branch_paths = []
    for leaf in leaves:
        path = [leaf]
        prev = -1
        cur = leaf
        while degrees[cur] != 3:
            nxt = next(u for u in adj[cur] if u != prev)
            prev, cur = cur, nxt
            path.append(cur)
        anchors.append(cur)
        gates.append(path[-2])
        branch_paths.append(tuple(path[:-1]))
    trunk_verts = tree.minimal_subtree(anchors)
    data = TrunkData(
        trunk=Subtree(tuple(sorted(trunk_verts))),
        leaves=tuple(leaves),
        anchors=tuple(anchors),
        gates=tuple(gates),
        branch_paths=tuple(branch_paths),
    )
    # removing one leaf's branch is exactly what shrinking to Tree(L - leaf) does
    for i, leaf in enumerate(leaves):
        rest = tree.minimal_subtree([x for x in leaves if x != leaf])
        off_branch = set(range(tree.n)) - rest
        if off_branch != set(data.branch_paths[i]):
            raise InternalInvariantError("branch path disagrees with leaf removal")
    if data.trunk_leaf_count(tree) > k // 2:
        raise InternalInvariantError("trunk has more than floor(k/2) leaves")
    return data


def _renumbered_restriction(tree: Tree, vertex_set, members_with_parts):
    """Restrict members to a connected vertex set, renumbering the ambient."""
    verts = sorted(vertex_set)
    index = {v: i for i, v in enumerate(verts)}
    vset = set(verts)
    edges = [
        (index[u], index[v]) for u, v in tree.edges if u in vset and v in vset
    ]
    new_tree = Tree.from_edges(len(verts), edges)
    new_members = tuple(
        SubtreeMember(
            mid, part, Subtree(tuple(sorted(index[v] for v in vs if v in vset)))
        )
        for mid, part, vs in members_with_parts
    )
    return SubtreeFamily(new_tree, new_members)


# ---------------------------------------------------------------------------
# the T_k finders
# ---------------------------------------------------------------------------

def _parts_of(fam: SubtreeFamily):
    return (
        [m for m in sorted(fam.members, key=lambda m: m.id) if m.part == 1],
        [m for m in sorted(fam.members, key=lambda m: m.id) if m.part == 2],
    )


def _interval_on_paths(segments) -> IntervalFamily:
    """Members living on disjoint tree paths as intervals on disjoint segments.

    segments: list of (path_vertices, members); each member must lie inside
    its path.  Pairwise intersections are preserved exactly: members of
    different paths were already disjoint.
    """
    out = []
    width = max((len(p) for p, _ in segments), default=1) + 1
    for snum, (path_verts, members) in enumerate(segments):
        pos = {v: i for i, v in enumerate(path_verts)}
        offset = snum * width
        for m in members:
            lo = min(pos[v] for v in m.subtree.vertices)
            hi = max(pos[v] for v in m.subtree.vertices)
            out.append(
                IntervalMember(m.id, m.part, Fraction(offset + lo), Fraction(offset + hi))
            )
    return IntervalFamily(tuple(out))


def _ladder(fam, trunk_data, big_part, small_part, trace_stages):
    """The halving ladder of the mixed case.

    big_part: members meeting the trunk (their count at least halves per
    stage); small_part: members inside branch paths, split per branch.
    Returns (f_stage_ids, h_primed, flags) where f_stage_ids[j] is the j-th
    surviving family, h_primed[j] the branch pick and flags[j] its kind.
    """
    by_id = {m.id: m for m in fam.members}
    k = len(trunk_data.leaves)

    branch_members = [[] for _ in range(k)]
    branch_sets = [set(p) for p in trunk_data.branch_paths]
    for m in small_part:
        vs = set(m.subtree.vertices)
        for j in range(k):
            if vs <= branch_sets[j]:
                branch_members[j].append(m)
                break
        else:
            raise InternalInvariantError("off-trunk member fits no branch path")

    order = sorted(range(k), key=lambda j: (-len(branch_members[j]), trunk_data.leaves[j]))

    f_stages = [sorted(m.id for m in big_part)]
    h_primed = []
    flags = []
    for rank, j in enumerate(order, start=1):
        h_j = branch_members[j]
        prev = f_stages[-1]
        if not h_j:
            f_stages.append(prev)
            h_primed.append([])
            flags.append(KIND_EMPTY)
            trace_stages.append(
                {"stage": rank, "branch_leaf": trunk_data.leaves[j], "H": 0, "empty_branch": True}
            )
            continue
        path = trunk_data.branch_paths[j]  # leaf first, gate last
        pos = {v: i for i, v in enumerate(path)}
        far = {m.id: max(pos[v] for v in m.subtree.vertices) for m in h_j}
        counts = sorted(far.values())
        need = (len(h_j) + 1) // 2
        a_pos = counts[need - 1]
        a_vertex = path[a_pos]
        enders = [m for m in h_j if far[m.id] == a_pos]
        if len(enders) != 1:
            raise InternalInvariantError(
                "pivot endpoint shared by several members despite normalization"
            )
        x_j = enders[0]
        contained = [m for m in h_j if far[m.id] <= a_pos]
        outside = [m for m in h_j if far[m.id] > a_pos]
        holding = [mid for mid in prev if a_vertex in by_id[mid].subtree.vertices]
        part_count = sum(
            1 for m in fam.members if m.part == x_j.part and set(m.subtree.vertices) <= set(path[: a_pos + 1])
        )
        stage_info = {
            "stage": rank,
            "branch_leaf": trunk_data.leaves[j],
            "H": len(h_j),
            "a_position": a_pos,
            "pivot_count_branch": len(contained),
            "pivot_count_part": part_count,
        }
        if 2 * len(holding) >= len(prev):
            f_stages.append(sorted(holding))
            h_primed.append(sorted({x_j.id} | {m.id for m in outside}))
            flags.append(KIND_COMPLETE)
            stage_info["flag"] = KIND_COMPLETE
        else:
            f_stages.append(sorted(set(prev) - set(holding)))
            h_primed.append(sorted(m.id for m in contained))
            flags.append(KIND_EMPTY)
            stage_info["flag"] = KIND_EMPTY
        if 2 * len(f_stages[-1]) < len(prev):
            raise InternalInvariantError("ladder stage lost more than half")
        trace_stages.append(stage_info)
    return f_stages, h_primed, flags


def _ceh_tk_inner(fam: SubtreeFamily, trace: dict, depth: int) -> BicliqueCertificate:
    """Untruncated recursion; per-part strength is preserved for the caller."""
    fam = normalize_subtrees(fam)
    tree = fam.ambient
    k = len(tree.leaves())
    part1, part2 = _parts_of(fam)
    if not part1 or not part2:
        raise InternalInvariantError("recursion emptied one part")

    if k <= 2:
        trace.setdefault("cases", []).append("interval-base")
        return ceh_interval(path_family_to_intervals(fam), allow_unbalanced=True)

    tdata = trunk(tree)
    trace.setdefault("trunk_leaves", []).append(tdata.trunk_leaf_count(tree))
    trunk_set = set(tdata.trunk.vertices)
    meets = {
        1: [m for m in part1 if set(m.subtree.vertices) & trunk_set],
        2: [m for m in part2 if set(m.subtree.vertices) & trunk_set],
    }
    misses = {
        1: [m for m in part1 if not (set(m.subtree.vertices) & trunk_set)],
        2: [m for m in part2 if not (set(m.subtree.vertices) & trunk_set)],
    }
    # big: at least 2/3 of the part meets the trunk
    big = {
        p: 3 * len(meets[p]) >= 2 * (len(meets[p]) + len(misses[p])) for p in (1, 2)
    }

    if big[1] and big[2]:
        trace.setdefault("cases", []).append("both-big")
        restricted = _renumbered_restriction(
            tree,
            trunk_set,
            [
                (m.id, m.part, set(m.subtree.vertices) & trunk_set)
                for p in (1, 2)
                for m in meets[p]
            ],
        )
        return _ceh_tk_inner(restricted, trace, depth + 1)

    if not big[1] and not big[2]:
        trace.setdefault("cases", []).append("both-small")
        segments = []
        for j in range(len(tdata.leaves)):
            path = tdata.branch_paths[j]
            pset = set(path)
            inside = [
                m
                for p in (1, 2)
                for m in misses[p]
                if set(m.subtree.vertices) <= pset
            ]
            segments.append((path, inside))
        placed = sum(len(ms) for _, ms in segments)
        if placed != len(misses[1]) + len(misses[2]):
            raise InternalInvariantError("off-trunk member missed every branch")
        return ceh_interval(_interval_on_paths(segments), allow_unbalanced=True)

    trace.setdefault("cases", []).append("mixed")
    if big[1]:
        big_members, small_members = meets[1], misses[2]
        big_is_part1 = True
    else:
        big_members, small_members = meets[2], misses[1]
        big_is_part1 = False
    stages: list = []
    f_stages, h_primed, flags = _ladder(fam, tdata, big_members, small_members, stages)
    trace.setdefault("ladder", []).append(stages)
    k_now = len(tdata.leaves)
    m_raw = math.floor(math.log2(k_now) - math.log2(math.log(k_now)))
    m_stage = min(max(m_raw, 1), k_now)
    complete_ids: set = set()
    empty_ids: set = set()
    for j in range(m_stage):
        if flags[j] == KIND_COMPLETE:
            complete_ids.update(h_primed[j])
        else:
            empty_ids.update(h_primed[j])
    f_side = f_stages[m_stage]
    if len(complete_ids) >= len(empty_ids):
        h_side, kind = sorted(complete_ids), KIND_COMPLETE
    else:
        h_side, kind = sorted(empty_ids), KIND_EMPTY
    if big_is_part1:
        side_a, side_b = f_side, h_side
    else:
        side_a, side_b = h_side, f_side
    return BicliqueCertificate(kind, tuple(side_a), tuple(side_b))


def ceh_tk(
    fam: SubtreeFamily,
    allow_unbalanced: bool = False,
    trace: dict | None = None,
) -> BicliqueCertificate:
    """Partition-respecting certificate with sides of floor(ln(k)/(20k)*n/2).

    k is the leaf count of the supplied ambient tree.  Dispatches on how
    much of each part meets the trunk: both parts mostly on the trunk
    recurse into it, both mostly off it reduce to disjoint interval
    segments, and the mixed case runs the halving ladder along the
    branches.
    """
    _require_parts(fam)
    _require_balance(fam, allow_unbalanced)
    n = len(fam.members)
    k = len(fam.ambient.leaves())
    target = colorful_floor_target(k, n) if k >= 3 else n // 6
    tr = trace if trace is not None else {}
    tr["k"] = k
    tr["target"] = target
    raw = _ceh_tk_inner(fam, tr, 0)
    cert = finalize_certificate(raw.kind, raw.side_a, raw.side_b, target, target)
    report = verify_certificate(fam, cert, target, Partition.from_family(fam))
    if not report.valid:
        raise InternalInvariantError(
            "T_k finder produced an invalid certificate: " + "; ".join(report.problems)
        )
    return cert


def _ceh_tk_weak_inner(fam: SubtreeFamily, trace: dict) -> BicliqueCertificate:
    # the ambient is already normalized at the public entry; restrictions
    # keep maximum degree 3 and the leaf-deletion argument never needs the
    # shared-endpoint property, so no per-level re-normalization
    tree = fam.ambient
    k = len(tree.leaves())
    part1, part2 = _parts_of(fam)
    if k <= 2:
        trace.setdefault("cases", []).append("interval-base")
        return ceh_interval(path_family_to_intervals(fam), allow_unbalanced=True)

    tdata = trunk(tree)
    sizes = {1: len(part1), 2: len(part2)}
    branch_sets = [set(p) for p in tdata.branch_paths]

    # a leaf whose removal keeps most of both parts lets us recurse on k-1
    for i in range(k):
        rest = set(range(tree.n)) - branch_sets[i]
        hit1 = [m for m in part1 if set(m.subtree.vertices) & rest]
        hit2 = [m for m in part2 if set(m.subtree.vertices) & rest]
        if (k - 1) * len(hit1) >= (k - 2) * sizes[1] and (k - 1) * len(hit2) >= (
            k - 2
        ) * sizes[2]:
            trace.setdefault("cases", []).append(f"drop-leaf-{tdata.leaves[i]}")
            restricted = _renumbered_restriction(
                tree,
                rest,
                [
                    (m.id, m.part, set(m.subtree.vertices) & rest)
                    for m in hit1 + hit2
                ],
            )
            return _ceh_tk_weak_inner(restricted, trace)

    # otherwise some branch path fully holds a (1/(k-1))-fraction of a part
    for i in range(k):
        for heavy, other in ((1, 2), (2, 1)):
            heavy_members = [part1, part2][heavy - 1]
            other_members = [part1, part2][other - 1]
            inside = [
                m for m in heavy_members if set(m.subtree.vertices) <= branch_sets[i]
            ]
            if (k - 1) * len(inside) < sizes[heavy]:
                continue
            trace.setdefault("cases", []).append(
                f"heavy-branch-{tdata.leaves[i]}-part{heavy}"
            )
            rest = set(range(tree.n)) - branch_sets[i]
            in_rest = [
                m for m in other_members if set(m.subtree.vertices) <= rest
            ]
            if (k - 1) * len(in_rest) >= sizes[other]:
                # branch members never leave the branch, so the two blocks
                # are pairwise disjoint
                a_ids = [m.id for m in inside]
                b_ids = [m.id for m in in_rest]
                if heavy == 1:
                    return BicliqueCertificate(KIND_EMPTY, tuple(sorted(a_ids)), tuple(sorted(b_ids)))
                return BicliqueCertificate(KIND_EMPTY, tuple(sorted(b_ids)), tuple(sorted(a_ids)))
            touching = [
                m for m in other_members if set(m.subtree.vertices) & branch_sets[i]
            ]
            path = tdata.branch_paths[i]
            pos = {v: j for j, v in enumerate(path)}
            out = []
            for m in inside:
                lo = min(pos[v] for v in m.subtree.vertices)
                hi = max(pos[v] for v in m.subtree.vertices)
                out.append(IntervalMember(m.id, m.part, Fraction(lo), Fraction(hi)))
            for m in touching:
                foot = [pos[v] for v in m.subtree.vertices if v in pos]
                out.append(
                    IntervalMember(m.id, m.part, Fraction(min(foot)), Fraction(max(foot)))
                )
            return ceh_interval(IntervalFamily(tuple(out)), allow_unbalanced=True)
    raise InternalInvariantError("leaf-deletion induction found no usable branch")


def ceh_tk_weak(
    fam: SubtreeFamily,
    allow_unbalanced: bool = False,
    trace: dict | None = None,
) -> BicliqueCertificate:
    """As ceh_tk with the simpler guarantee floor(n / (6(k-1)))."""
    _require_parts(fam)
    _require_balance(fam, allow_unbalanced)
    n = len(fam.members)
    k = len(fam.ambient.leaves())
    target = weak_floor_target(k, n)
    tr = trace if trace is not None else {}
    tr["k"] = k
    tr["target"] = target
    raw = _ceh_tk_weak_inner(normalize_subtrees(fam), tr)
    cert = finalize_certificate(raw.kind, raw.side_a, raw.side_b, target, target)
    report = verify_certificate(fam, cert, target, Partition.from_family(fam))
    if not report.valid:
        raise InternalInvariantError(
            "weak T_k finder produced an invalid certificate: "
            + "; ".join(report.problems)
        )
    return cert
