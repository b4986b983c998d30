"""Representation surgeries that preserve the intersection graph.

Subtree families get an ambient tree of maximum degree 3 and pairwise
distinct member endpoints; interval families get pairwise distinct interval
endpoints.  Member ids survive every surgery untouched; only ambient-tree
vertices are ever renumbered.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    InternalInvariantError,
    IntervalFamily,
    IntervalMember,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
)


def reduce_degree(fam: SubtreeFamily) -> SubtreeFamily:
    """Split every ambient vertex of degree >= 4 into a path.

    A vertex v of degree d is replaced by a path v_1..v_d, one new vertex per
    incident component; every subtree through v absorbs the whole path.  The
    split vertex's id is reused for v_1 so ambient ids stay 0..n-1; genuinely
    new vertices get ids n, n+1, ...  Leaf count and intersection graph are
    unchanged.
    """
    tree = fam.ambient
    members = [(m.id, m.part, set(m.subtree.vertices)) for m in fam.members]
    n = tree.n
    adj = {v: set(ns) for v, ns in enumerate(tree.adjacency())}

    while True:
        candidates = [v for v in sorted(adj) if len(adj[v]) >= 4]
        if not candidates:
            break
        v = candidates[0]
        neighbours = sorted(adj[v])
        d = len(neighbours)
        # path vertices: reuse v, then fresh ids
        path = [v] + list(range(n, n + d - 1))
        n += d - 1
        for u in neighbours:
            adj[u].discard(v)
        adj[v] = set()
        for pv in path[1:]:
            adj[pv] = set()
        for a, b in zip(path, path[1:]):
            adj[a].add(b)
            adj[b].add(a)
        for u, pv in zip(neighbours, path):
            adj[u].add(pv)
            adj[pv].add(u)
        for _, _, verts in members:
            if v in verts:
                verts.update(path)

    edges = []
    for u in adj:
        for w in adj[u]:
            if u < w:
                edges.append((u, w))
    new_tree = Tree.from_edges(n, edges)
    new_members = tuple(
        SubtreeMember(i, p, Subtree(tuple(sorted(vs)))) for i, p, vs in members
    )
    return SubtreeFamily(new_tree, new_members)


def shared_member_leaves(fam: SubtreeFamily) -> list:
    """(vertex, id, id) triples where an ambient vertex is an endpoint of
    two distinct members.  Empty after separate_leaves."""
    tree = fam.ambient
    owners: dict = {}
    out = []
    for m in sorted(fam.members, key=lambda m: m.id):
        for v in m.subtree.leaf_vertices_in(tree):
            if v in owners:
                out.append((v, owners[v], m.id))
            else:
                owners[v] = m.id
    return out


def separate_leaves(fam: SubtreeFamily) -> SubtreeFamily:
    """Subdivision surgery until no ambient vertex is an endpoint of two members.

    Scans (member id, vertex id) pairs in ascending order; each surgery
    subdivides an edge next to the shared endpoint and grows the scanned
    member across the new vertex, which raises that endpoint's degree inside
    the member.  When the shared endpoint is also an ambient leaf a pendant
    vertex is attached first so a usable neighbour exists.
    """
    tree = fam.ambient
    n = tree.n
    adj = {v: set(ns) for v, ns in enumerate(tree.adjacency())}
    members = [(m.id, m.part, set(m.subtree.vertices)) for m in fam.members]

    def member_leaves(verts):
        return {v for v in verts if sum(1 for y in adj[v] if y in verts) <= 1}

    # only the operated member's endpoint set ever changes, so everything
    # is maintained incrementally: per-member leaf sets, the vertices shared
    # as endpoints, and a vertex -> members index for edge subdivisions
    leafsets = [member_leaves(vs) for _, _, vs in members]
    owners: dict = {}
    for idx, leaves in enumerate(leafsets):
        for v in leaves:
            owners.setdefault(v, set()).add(idx)
    shared = {v for v, occupiers in owners.items() if len(occupiers) >= 2}
    vert_members: dict = {}
    for idx, (_, _, vs) in enumerate(members):
        for v in vs:
            vert_members.setdefault(v, set()).add(idx)

    def pick_surgery():
        # deterministic: the smallest (member id, vertex) pair among pairs
        # whose vertex some lower-id member also holds as an endpoint
        best = None
        for v in shared:
            second = sorted(members[i][0] for i in owners[v])[1]
            if best is None or (second, v) < best[0]:
                best = ((second, v), v)
        if best is None:
            return None
        member_id, v = best[0]
        idx = next(i for i in owners[v] if members[i][0] == member_id)
        return idx, v

    guard = 0
    limit = 4 * sum(len(vs) for _, _, vs in members) + 8 * len(members) + 16
    while shared:
        guard += 1
        if guard > limit:
            raise InternalInvariantError("leaf separation failed to terminate")
        idx, v = pick_surgery()
        verts = members[idx][2]
        if len(adj[v]) <= 1:
            # v is an ambient leaf (or lone vertex): attach a pendant so a
            # usable neighbour exists
            pendant = n
            n += 1
            adj[pendant] = {v}
            adj[v].add(pendant)
        outside = sorted(u for u in adj[v] if u not in verts)
        if not outside:
            raise InternalInvariantError(f"no usable neighbour at shared endpoint {v}")
        u = outside[0]
        # subdivide uv into u-w-v; subtrees containing both u and v absorb w
        w = n
        n += 1
        adj[u].discard(v)
        adj[v].discard(u)
        adj[w] = {u, v}
        adj[u].add(w)
        adj[v].add(w)
        for other_idx in vert_members.get(u, set()) & vert_members.get(v, set()):
            members[other_idx][2].add(w)
            vert_members.setdefault(w, set()).add(other_idx)
        verts.add(w)
        vert_members.setdefault(w, set()).add(idx)
        old_leaves = leafsets[idx]
        new_leaves = member_leaves(verts)
        leafsets[idx] = new_leaves
        for x in old_leaves - new_leaves:
            occupiers = owners[x]
            occupiers.discard(idx)
            if len(occupiers) < 2:
                shared.discard(x)
        for x in new_leaves - old_leaves:
            occupiers = owners.setdefault(x, set())
            occupiers.add(idx)
            if len(occupiers) >= 2:
                shared.add(x)

    edges = [(u, w) for u in adj for w in adj[u] if u < w]
    new_tree = Tree.from_edges(n, edges)
    new_members = tuple(
        SubtreeMember(i, p, Subtree(tuple(sorted(vs)))) for i, p, vs in members
    )
    return SubtreeFamily(new_tree, new_members)


def normalize_subtrees(fam: SubtreeFamily) -> SubtreeFamily:
    """Degree reduction followed by leaf separation.

    Leaf separation only ever raises an ambient leaf's degree to 2, so a
    final degree-reduction pass must be the identity; that is asserted.
    """
    out = separate_leaves(reduce_degree(fam))
    if out.ambient.max_degree() > 3:
        raise InternalInvariantError("leaf separation raised ambient degree above 3")
    return out


def perturb_intervals(fam: IntervalFamily) -> IntervalFamily:
    """Re-embed endpoints at distinct integers without changing the graph.

    Events are ordered by (coordinate, side, member id) with all left
    endpoints before all right endpoints at equal coordinates, so touching
    intervals keep intersecting and disjoint intervals stay disjoint.
    """
    LEFT, RIGHT = 0, 1
    events = []
    for m in fam.members:
        events.append((m.left, LEFT, m.id))
        events.append((m.right, RIGHT, m.id))
    events.sort()
    where: dict = {}
    for pos, (_, side, ident) in enumerate(events):
        where[(ident, side)] = Fraction(pos)
    new_members = tuple(
        IntervalMember(m.id, m.part, where[(m.id, LEFT)], where[(m.id, RIGHT)])
        for m in fam.members
    )
    return IntervalFamily(new_members)
