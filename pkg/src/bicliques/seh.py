"""Finders for large balanced bi-cliques in a graph or its complement.

Each finder returns a verified BicliqueCertificate whose sides have at
least floor(n/4) members for interval families and cotrees, and at least
floor(2n/9) members for subtree families, where n is the member count.
"""

from __future__ import annotations

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
    SubtreeFamily,
    Tree,
    finalize_certificate,
    verify_certificate,
)
from .normalize import normalize_subtrees, perturb_intervals


# ---------------------------------------------------------------------------
# interval graphs
# ---------------------------------------------------------------------------

def path_family_to_intervals(fam: SubtreeFamily) -> IntervalFamily:
    """Translate a subtree family on a path ambient into intervals."""
    tree = fam.ambient
    if not tree.is_path():
        raise InputError("ambient tree is not a path")
    if tree.n == 1:
        order = [0]
    else:
        leaves = tree.leaves()
        order = list(tree.path(leaves[0], leaves[1]))
    pos = {v: i for i, v in enumerate(order)}
    members = tuple(
        IntervalMember(
            m.id,
            m.part,
            Fraction(min(pos[v] for v in m.subtree.vertices)),
            Fraction(max(pos[v] for v in m.subtree.vertices)),
        )
        for m in fam.members
    )
    return IntervalFamily(members)


def seh_interval(fam: IntervalFamily, trace: dict | None = None) -> BicliqueCertificate:
    """Certificate with sides of size floor(n/4) via the balance-point sweep.

    After perturbing to distinct endpoints there is a point x0 where the
    number M of intervals entirely to its left equals the number entirely to
    its right.  Large M gives an empty-kind certificate; small M means more
    than half of the intervals cross x0 and form a clique.
    """
    n = len(fam.members)
    if n < 1:
        raise InputError("need at least one interval")
    work = perturb_intervals(fam)
    guarantee = n // 4

    # sweep the 2n distinct endpoints; L(x) - R(x) climbs from -n to n in
    # unit steps, so it hits zero strictly between two events
    coords = sorted(
        [(m.left, 0) for m in work.members] + [(m.right, 1) for m in work.members]
    )
    left_count, right_count = 0, n
    x0 = None
    m_val = None
    for c, kind in coords:
        if kind == 1:
            left_count += 1
        else:
            right_count -= 1
        if left_count == right_count:
            x0 = c + Fraction(1, 2)
            m_val = left_count
            break
    if m_val is None:
        raise InternalInvariantError("no balance point found in interval sweep")

    left_ids = sorted(m.id for m in work.members if m.right < x0)
    right_ids = sorted(m.id for m in work.members if m.left > x0)
    mid_ids = sorted(m.id for m in work.members if m.left <= x0 <= m.right)
    if trace is not None:
        trace.update(
            {"x0": x0, "M": m_val, "left": len(left_ids), "right": len(right_ids), "crossing": len(mid_ids)}
        )

    if 4 * m_val >= n:
        if trace is not None:
            trace["branch"] = "separated"
        return finalize_certificate(KIND_EMPTY, left_ids, right_ids, guarantee, guarantee)
    if trace is not None:
        trace["branch"] = "clique"
    t = max(guarantee, 1)
    if len(mid_ids) < 2 * t:
        t = len(mid_ids) // 2
    return finalize_certificate(
        KIND_COMPLETE, mid_ids[:t], mid_ids[t : 2 * t], guarantee, guarantee
    )


# ---------------------------------------------------------------------------
# cographs
# ---------------------------------------------------------------------------

def seh_cograph(ct: Cotree, trace: dict | None = None) -> BicliqueCertificate:
    """Certificate with sides of size floor(n/4) via a conforming subset."""
    ids = ct.leaf_ids()
    n = len(ids)
    if n < 1:
        raise InputError("need at least one leaf")
    guarantee = n // 4
    w_set = set(conforming_subset(ct, ids))
    edges = cotree_edges_by_id(ct)
    adj: dict = {i: set() for i in ids}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    fully = [v for v in ids if v not in w_set and w_set <= adj[v]]
    none = [v for v in ids if v not in w_set and not (w_set & adj[v])]
    if len(fully) + len(none) != n - len(w_set):
        raise InternalInvariantError("conforming subset failed its audit")
    if trace is not None:
        trace.update({"W": len(w_set), "all_adjacent": len(fully), "none_adjacent": len(none)})
    if len(fully) >= len(none):
        return finalize_certificate(KIND_COMPLETE, w_set, fully, guarantee, guarantee)
    return finalize_certificate(KIND_EMPTY, w_set, none, guarantee, guarantee)


# ---------------------------------------------------------------------------
# chordal graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChordalDecomposition:
    """Bookkeeping of the degree-3 split used by the chordal finder.

    Families are tuples of member ids; components are vertex frozensets of
    the normalized ambient tree.  The disjoint-union identities are checked
    on construction.
    """

    center: int
    components: tuple  # three vertex frozensets, ordered by family size desc
    f_center: tuple
    f_comp: tuple  # (F_1(v), F_2(v), F_3(v))
    branch_vertices: tuple  # (w_1, w_2, w_3)
    gamma_plus: tuple
    f2_at_w: tuple
    f3_at_w: tuple
    g_families: tuple
    h_families: tuple
    x_empty: tuple
    x_single: tuple  # (X_1, X_2, X_3)
    y_pairs: tuple  # (Y_12, Y_13, Y_23)

    def validate(self, all_ids) -> None:
        union = set(self.f_center)
        total = len(self.f_center)
        for fam in self.f_comp:
            union |= set(fam)
            total += len(fam)
        if union != set(all_ids) or total != len(all_ids):
            raise InternalInvariantError("F != F_v + F_1 + F_2 + F_3")
        for i in range(3):
            lhs = set(self.h_families[i])
            rhs = (set(self.f_comp[i]) - set(self.g_families[i])) - set(self.gamma_plus[i])
            if lhs != rhs:
                raise InternalInvariantError("H_i != (F_i - G_i) - Gamma+(w_i)")
        xy = set(self.x_empty)
        count = len(self.x_empty)
        for fam in self.x_single:
            xy |= set(fam)
            count += len(fam)
        y_all = set()
        for fam in self.y_pairs:
            y_all |= set(fam)
        if xy | y_all != set(self.f_center) or count + len(y_all) != len(self.f_center):
            raise InternalInvariantError("X and Y families do not partition F_v")


def _family_split(tree: Tree, members, center: int):
    """Members containing `center`, and per-component member lists of T - center.

    Components are ordered by (member count desc, smallest vertex asc) and
    padded with empties up to three entries.
    """
    comps = tree.components_without(center)
    label = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            label[v] = ci
    f_center = []
    per_comp = [[] for _ in comps]
    for m in members:
        if center in m.subtree.vertices:
            f_center.append(m.id)
        else:
            per_comp[label[m.subtree.vertices[0]]].append(m.id)
    order = sorted(range(len(comps)), key=lambda ci: (-len(per_comp[ci]), min(comps[ci])))
    comps = [comps[ci] for ci in order]
    per_comp = [sorted(per_comp[ci]) for ci in order]
    while len(comps) < 3:
        comps.append(frozenset())
        per_comp.append([])
    return sorted(f_center), comps, per_comp


class _RootedIndex:
    """Rooted-tree aggregates giving all component family counts in O(1).

    For a member X (a connected vertex set), top(X) is its unique vertex of
    minimum depth; X lies inside subtree(c) iff top(X) does, and X contains
    a vertex v iff v is in its vertex set, which yields every |F_i(v)|.
    """

    def __init__(self, tree: Tree, members):
        self.tree = tree
        n = tree.n
        adj = tree.adjacency()
        self.adj = adj
        parent = [-1] * n
        depth = [0] * n
        order = [0]
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    order.append(y)
                    stack.append(y)
        self.parent = parent
        self.depth = depth
        self.order = order

        self.n_members = len(members)
        contain = [0] * n
        cnt_top = [0] * n
        for m in members:
            verts = m.subtree.vertices
            for v in verts:
                contain[v] += 1
            top = min(verts, key=lambda v: depth[v])
            cnt_top[top] += 1
        self.contain = contain
        sub_cnt = cnt_top[:]
        sub_min = list(range(n))
        for x in reversed(order):
            p = parent[x]
            if p >= 0:
                sub_cnt[p] += sub_cnt[x]
                sub_min[p] = min(sub_min[p], sub_min[x])
        self.sub_cnt = sub_cnt
        self.sub_min = sub_min
        self.cnt_top = cnt_top

    def children(self, v: int):
        return [u for u in self.adj[v] if self.parent[u] == v]

    def component_counts(self, v: int):
        """(count, min_vertex) per component of T - v, unordered."""
        out = [(self.sub_cnt[c], self.sub_min[c]) for c in self.children(v)]
        if self.parent[v] >= 0:
            above = (
                self.n_members
                - self.sub_cnt[v]
                - (self.contain[v] - self.cnt_top[v])
            )
            out.append((above, 0))
        return out


def _walk_to_branch_vertex(tree: Tree, members, center: int, start: int, n_mem: int):
    """Descend away from `center` until both off-side components hold fewer
    than n/9 members each; the walk keeps at least n/9 members strictly on
    its far side, so the final vertex anchors an empty-side family."""
    adj = tree.adjacency()
    w = start
    for _ in range(tree.n + 1):
        # label components of T - w; identify the center side
        label = [-1] * tree.n
        comp_id = 0
        for u in adj[w]:
            if label[u] == -1 and u != w:
                stack = [u]
                label[u] = comp_id
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y != w and label[y] == -1:
                            label[y] = comp_id
                            stack.append(y)
                comp_id += 1
        center_comp = label[center]
        counts = [0] * comp_id
        comp_min = [tree.n] * comp_id
        for x in range(tree.n):
            if label[x] >= 0:
                comp_min[label[x]] = min(comp_min[label[x]], x)
        for m in members:
            verts = m.subtree.vertices
            if w in verts:
                continue
            counts[label[verts[0]]] += 1
        off = [
            (counts[ci], ci)
            for ci in range(comp_id)
            if ci != center_comp
        ]
        off.sort(key=lambda t: (-t[0], comp_min[t[1]]))
        if all(9 * cnt < n_mem for cnt, _ in off):
            off_ids = [[m.id for m in members if w not in m.subtree.vertices and label[m.subtree.vertices[0]] == ci] for _, ci in off]
            while len(off_ids) < 2:
                off_ids.append([])
            # members avoiding the center-side component entirely
            toward = next(u for u in adj[w] if label[u] == center_comp)
            gamma_plus = [
                m.id
                for m in members
                if (w in m.subtree.vertices and toward not in m.subtree.vertices)
                or (w not in m.subtree.vertices and label[m.subtree.vertices[0]] != center_comp)
            ]
            return w, sorted(gamma_plus), sorted(off_ids[0]), sorted(off_ids[1])
        big_ci = off[0][1]
        w = next(u for u in adj[w] if label[u] == big_ci)
    raise InternalInvariantError("branch-vertex walk exceeded the tree size")


def seh_chordal(fam: SubtreeFamily, trace: dict | None = None) -> BicliqueCertificate:
    """Certificate with sides of size floor(2n/9) for a subtree family.

    Early-exit cascade over the normalized representation: a heavy vertex
    gives a clique split; failing that, either a balanced degree-3 split
    vertex exists or a doubly oriented edge gives two big separated
    families; from the split vertex, branch vertices and the path/crossing
    families give one of three further certificates.  Every exit is
    verified before it is returned.
    """
    n = len(fam.members)
    if n < 1:
        raise InputError("need at least one member")
    guarantee = (2 * n) // 9
    tr = trace if trace is not None else {}

    work = normalize_subtrees(fam)
    tree = work.ambient
    members = sorted(work.members, key=lambda m: m.id)

    def done(kind, side_a, side_b, exit_name):
        tr["exit"] = exit_name
        cert = finalize_certificate(kind, side_a, side_b, guarantee, guarantee)
        report = verify_certificate(fam, cert, guarantee)
        if not report.valid:
            raise InternalInvariantError(
                f"chordal exit {exit_name} produced an invalid certificate: "
                + "; ".join(report.problems)
            )
        return cert

    if tree.is_path():
        tr["exit"] = "interval-delegation"
        cert = seh_interval(path_family_to_intervals(work))
        report = verify_certificate(fam, cert, guarantee)
        if not report.valid:
            raise InternalInvariantError("interval delegation produced an invalid certificate")
        return cert

    index = _RootedIndex(tree, members)

    # exit 1: some vertex lies in at least 4n/9 members, a big clique
    for v in range(tree.n):
        if 9 * index.contain[v] >= 4 * n:
            ids = sorted(m.id for m in members if v in m.subtree.vertices)
            half = len(ids) // 2
            return done(KIND_COMPLETE, ids[:half], ids[half:], "clique-vertex")

    # exit 2: a degree-3 vertex splitting the family into three middle thirds
    split_vertex = None
    degrees = tree.degrees()
    for v in range(tree.n):
        counts = index.component_counts(v)
        counts.sort(key=lambda t: (-t[0], t[1]))
        if degrees[v] == 3 and len(counts) == 3:
            if all(9 * c >= n and 9 * c <= 2 * n for c, _ in counts):
                split_vertex = v
                break
        # two separated big families exit, available at any vertex
        if len(counts) >= 2 and 9 * counts[1][0] >= 2 * n:
            f_center, comps, per_comp = _family_split(tree, members, v)
            return done(KIND_EMPTY, per_comp[0], per_comp[1], "two-big-components")

    if split_vertex is None:
        # orientation argument: every vertex points into its heaviest
        # component, so some edge is oriented both ways
        points_to = [-1] * tree.n
        for v in range(tree.n):
            # component_counts lists children first, parent side last
            counts = index.component_counts(v)
            neighbours = index.children(v) + (
                [index.parent[v]] if index.parent[v] >= 0 else []
            )
            ranked = sorted(
                zip(counts, neighbours), key=lambda t: (-t[0][0], t[0][1])
            )
            points_to[v] = ranked[0][1]
        for u, v in sorted(tree.edges):
            if points_to[u] == v and points_to[v] == u:
                _, _, per_u = _family_split(tree, members, u)
                _, _, per_v = _family_split(tree, members, v)
                return done(KIND_EMPTY, per_u[0], per_v[0], "doubly-oriented-edge")
        raise InternalInvariantError("orientation produced no doubly oriented edge")

    # decomposition at the split vertex
    v0 = split_vertex
    f_center, comps, per_comp = _family_split(tree, members, v0)
    tr["center"] = v0
    tr["F_v"] = len(f_center)
    tr["F_i"] = [len(p) for p in per_comp]
    for p in per_comp:
        if not (9 * len(p) >= n and 9 * len(p) <= 2 * n):
            raise InternalInvariantError("split vertex fails the one-ninth window")

    by_id = {m.id: m for m in members}
    branch = []
    gamma = []
    f2w = []
    f3w = []
    adj = tree.adjacency()
    for comp in comps:
        u_i = next(u for u in adj[v0] if u in comp)
        w_i, gplus, f2, f3 = _walk_to_branch_vertex(tree, members, v0, u_i, n)
        if 9 * len(gplus) < n:
            raise InternalInvariantError("branch vertex lost the one-ninth guarantee")
        branch.append(w_i)
        gamma.append(gplus)
        f2w.append(f2)
        f3w.append(f3)

    paths = [set(tree.path(v0, w)) for w in branch]
    g_fams = []
    h_fams = []
    for i in range(3):
        comp_ids = per_comp[i]
        g_i = sorted(
            mid
            for mid in comp_ids
            if set(by_id[mid].subtree.vertices) & paths[i]
        )
        h_i = sorted(set(comp_ids) - set(g_i) - set(gamma[i]))
        g_fams.append(g_i)
        h_fams.append(h_i)

    x_empty = []
    x_single = [[], [], []]
    y_pairs = {(0, 1): [], (0, 2): [], (1, 2): []}
    for mid in f_center:
        verts = set(by_id[mid].subtree.vertices)
        hit = [i for i in range(3) if branch[i] in verts]
        if not hit:
            x_empty.append(mid)
        elif len(hit) == 1:
            x_single[hit[0]].append(mid)
        else:
            for a in range(len(hit)):
                for b in range(a + 1, len(hit)):
                    y_pairs[(hit[a], hit[b])].append(mid)

    decomp = ChordalDecomposition(
        center=v0,
        components=tuple(comps),
        f_center=tuple(f_center),
        f_comp=tuple(tuple(p) for p in per_comp),
        branch_vertices=tuple(branch),
        gamma_plus=tuple(tuple(g) for g in gamma),
        f2_at_w=tuple(tuple(f) for f in f2w),
        f3_at_w=tuple(tuple(f) for f in f3w),
        g_families=tuple(tuple(g) for g in g_fams),
        h_families=tuple(tuple(h) for h in h_fams),
        x_empty=tuple(x_empty),
        x_single=tuple(tuple(x) for x in x_single),
        y_pairs=(tuple(y_pairs[(0, 1)]), tuple(y_pairs[(0, 2)]), tuple(y_pairs[(1, 2)])),
    )
    decomp.validate([m.id for m in members])
    tr["decomposition"] = decomp

    # exit 4: a crossing-free block beats the guarantee
    for i in range(3):
        block = sorted(set(x_empty) | set(x_single[i]) | set(per_comp[i]))
        if len(block) >= guarantee:
            j, l = [t for t in range(3) if t != i]
            other = sorted(set(gamma[j]) | set(gamma[l]))
            return done(KIND_EMPTY, block, other, f"block-vs-gammas-{i + 1}")

    # exit 5: a heavy Y pair meets everything through its shared branch vertex
    pair_sets = {
        0: sorted(set(y_pairs[(0, 1)]) | set(y_pairs[(0, 2)])),
        1: sorted(set(y_pairs[(0, 1)]) | set(y_pairs[(1, 2)])),
        2: sorted(set(y_pairs[(0, 2)]) | set(y_pairs[(1, 2)])),
    }
    common = None
    for a in range(3):
        if 9 * len(pair_sets[a]) > 2 * n:
            common = a
            break
    if common is None:
        raise InternalInvariantError("no heavy Y pair despite the counting bound")
    y_chosen = pair_sets[common][:guarantee] if guarantee >= 1 else pair_sets[common][:1]
    rest = sorted(set(f_center) - set(y_chosen))
    partner = sorted(set(rest) | set(g_fams[common]))
    if len(partner) >= max(guarantee, 1):
        return done(KIND_COMPLETE, y_chosen, partner, "y-pair-clique")

    # exit 6: greedy even split of the five pairwise separated families
    remaining = [t for t in range(3) if t != common]
    side1 = list(per_comp[remaining[0]])
    side2 = list(per_comp[remaining[1]])
    for extra in (h_fams[common], f2w[common], f3w[common]):
        if len(side1) <= len(side2):
            side1.extend(extra)
        else:
            side2.extend(extra)
    tr["split_sizes"] = (len(side1), len(side2))
    return done(KIND_EMPTY, side1, side2, "greedy-split")
