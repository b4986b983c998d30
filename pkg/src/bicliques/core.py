"""Core value types for intersection instances and the certificate verifier.

Instances are families of closed rational intervals or families of subtrees
of an ambient tree; both kinds carry opaque integer member ids and optional
two-part labels.  Every type here is immutable after construction, so shared
instances may be used concurrently without locking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class InputError(ValueError):
    """Malformed instance, certificate or parameter supplied by a caller."""


class UnknownIdError(InputError):
    """A certificate names a member id that the instance does not contain."""


class OverlappingSidesError(InputError):
    """The two sides of a certificate share a member id."""


class CapExceededError(InputError):
    """An exhaustive search was asked to run above its configured cap."""


class InternalInvariantError(RuntimeError):
    """A guarantee the algorithms promise internally failed to hold.

    Raising this signals a bug in this package, not bad input.
    """


# ---------------------------------------------------------------------------
# graphs and trees
# ---------------------------------------------------------------------------

def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise InputError(f"loop edge at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InputError(f"edge ({u}, {v}) out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(n, frozenset(_normalize_edge(u, v) for u, v in pairs))

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self.edges

    def adjacency(self) -> list[set]:
        adj: list[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def complement(self) -> "Graph":
        comp = frozenset(
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        )
        return Graph(self.n, comp)


@dataclass(frozen=True)
class Tree:
    """Tree on vertices 0..n-1, validated to be connected with n-1 edges."""

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InputError("tree needs at least one vertex")
        if len(self.edges) != self.n - 1:
            raise InputError(
                f"tree on {self.n} vertices needs {self.n - 1} edges, "
                f"got {len(self.edges)}"
            )
        seen = set()
        for u, v in self.edges:
            e = _normalize_edge(u, v)
            if not (0 <= e[0] and e[1] < self.n):
                raise InputError(f"edge {e} out of range for n={self.n}")
            if e in seen:
                raise InputError(f"duplicate edge {e}")
            seen.add(e)
        # connectivity check
        if len(self._component_from(0)) != self.n:
            raise InputError("tree is not connected")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Tree":
        return Tree(n, tuple(sorted(_normalize_edge(u, v) for u, v in pairs)))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def _component_from(self, start: int, adj=None, banned: int = -1) -> set:
        if adj is None:
            adj = self.adjacency()
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != banned and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees()) if self.n > 1 else 0

    def leaves(self) -> tuple:
        """Vertices of degree exactly 1; a single-vertex tree has none."""
        deg = self.degrees()
        return tuple(v for v in range(self.n) if deg[v] == 1)

    def is_path(self) -> bool:
        return self.max_degree() <= 2

    def path(self, u: int, v: int) -> tuple:
        """Vertices of the unique u-v path, endpoints included."""
        adj = self.adjacency()
        parent = {u: -1}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        out.reverse()
        return tuple(out)

    def parent_array(self, root: int = 0) -> list:
        """parent[v] for the tree rooted at `root`; the root's parent is -1."""
        adj = self.adjacency()
        parent = [-2] * self.n
        parent[root] = -1
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if parent[y] == -2:
                    parent[y] = x
                    stack.append(y)
        return parent

    def components_without(self, v: int) -> list:
        """Components of T - v as frozensets, ordered by smallest vertex."""
        adj = self.adjacency()
        comps = []
        for u in adj[v]:
            comps.append(frozenset(self._component_from(u, adj, banned=v)))
        comps.sort(key=min)
        return comps

    def minimal_subtree(self, vertices: Iterable[int]) -> frozenset:
        """Vertex set of the inclusion-minimal subtree containing `vertices`."""
        verts = sorted(set(vertices))
        if not verts:
            raise InputError("minimal_subtree of empty set")
        adj = self.adjacency()
        root = verts[0]
        parent = {root: -1}
        order = [root]
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in parent:
                    parent[y] = x
                    order.append(y)
                    stack.append(y)
        marked = {root}
        for w in verts[1:]:
            x = w
            while x not in marked:
                marked.add(x)
                x = parent[x]
        return frozenset(marked)


# ---------------------------------------------------------------------------
# subtrees and families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subtree:
    """Nonempty vertex set inducing a connected subgraph of an ambient tree."""

    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise InputError("subtree must be nonempty")
        ordered = tuple(sorted(set(self.vertices)))
        if ordered != self.vertices:
            object.__setattr__(self, "vertices", ordered)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def is_connected_in(self, tree: Tree, adj=None) -> bool:
        vs = set(self.vertices)
        if any(not (0 <= v < tree.n) for v in vs):
            return False
        if adj is None:
            adj = tree.adjacency()
        start = self.vertices[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(vs)

    def leaf_vertices_in(self, tree: Tree) -> tuple:
        """Vertices with at most one neighbour inside the subtree.

        A single-vertex subtree's only vertex counts as a leaf; these are the
        endpoints that the leaf-separation surgery must make unique.
        """
        vs = set(self.vertices)
        adj = tree.adjacency()
        out = []
        for v in self.vertices:
            inside = sum(1 for y in adj[v] if y in vs)
            if inside <= 1:
                out.append(v)
        return tuple(out)


def intersects(s1: Subtree, s2: Subtree) -> bool:
    """True iff the two subtrees (of one ambient tree) share a vertex."""
    a, b = s1.vertices, s2.vertices
    if len(a) > len(b):
        a, b = b, a
    bset = set(b)
    return any(v in bset for v in a)


@dataclass(frozen=True)
class SubtreeMember:
    id: int
    part: Union[int, None]
    subtree: Subtree


@dataclass(frozen=True)
class IntervalMember:
    id: int
    part: Union[int, None]
    left: Fraction
    right: Fraction

    def __post_init__(self):
        if self.left > self.right:
            raise InputError(f"member {self.id}: left {self.left} > right {self.right}")


def intervals_intersect(m1: IntervalMember, m2: IntervalMember) -> bool:
    return m1.left <= m2.right and m2.left <= m1.right


def _check_members(members) -> None:
    ids = [m.id for m in members]
    if len(ids) != len(set(ids)):
        raise InputError("duplicate member ids")
    parts = [m.part for m in members]
    labelled = [p for p in parts if p is not None]
    if labelled and len(labelled) != len(parts):
        raise InputError("either all members carry a part label or none do")
    for p in labelled:
        if p not in (1, 2):
            raise InputError(f"part label must be 1 or 2, got {p}")


@dataclass(frozen=True)
class SubtreeFamily:
    """Subtrees of one ambient tree; the representation of a chordal graph."""

    ambient: Tree
    members: tuple

    def __post_init__(self):
        _check_members(self.members)
        # a vertex set is connected in a tree iff exactly one of its
        # vertices has its parent outside the set
        parent = self.ambient.parent_array()
        n = self.ambient.n
        for m in self.members:
            verts = m.subtree.vertex_set()
            tops = 0
            for v in verts:
                if not (0 <= v < n):
                    raise InputError(f"member {m.id} has vertex {v} out of range")
                if parent[v] not in verts:
                    tops += 1
            if tops != 1:
                raise InputError(
                    f"member {m.id} is not a connected subtree of the ambient tree"
                )

    def ids(self) -> tuple:
        return tuple(sorted(m.id for m in self.members))

    def by_id(self) -> dict:
        return {m.id: m for m in self.members}

    def has_parts(self) -> bool:
        return bool(self.members) and self.members[0].part is not None

    def part_ids(self, part: int) -> tuple:
        return tuple(sorted(m.id for m in self.members if m.part == part))


@dataclass(frozen=True)
class IntervalFamily:
    """Closed rational intervals with ids; the representation of an interval graph."""

    members: tuple

    def __post_init__(self):
        _check_members(self.members)

    def ids(self) -> tuple:
        return tuple(sorted(m.id for m in self.members))

    def by_id(self) -> dict:
        return {m.id: m for m in self.members}

    def has_parts(self) -> bool:
        return bool(self.members) and self.members[0].part is not None

    def part_ids(self, part: int) -> tuple:
        return tuple(sorted(m.id for m in self.members if m.part == part))


Instance = Union[SubtreeFamily, IntervalFamily, Graph]


@dataclass(frozen=True)
class Partition:
    """Total assignment of instance ids to parts 1 and 2."""

    assignment: tuple  # sorted tuple of (id, part)

    @staticmethod
    def from_mapping(mapping: dict) -> "Partition":
        return Partition(tuple(sorted(mapping.items())))

    @staticmethod
    def from_family(fam) -> "Partition":
        if not fam.has_parts():
            raise InputError("family carries no part labels")
        return Partition(tuple(sorted((m.id, m.part) for m in fam.members)))

    def part_of(self, ident: int) -> int:
        return dict(self.assignment)[ident]

    def part1(self) -> frozenset:
        return frozenset(i for i, p in self.assignment if p == 1)

    def part2(self) -> frozenset:
        return frozenset(i for i, p in self.assignment if p == 2)

    def is_balanced(self) -> bool:
        return abs(len(self.part1()) - len(self.part2())) <= 1

    def check_covers(self, ids: Iterable[int]) -> None:
        have = {i for i, _ in self.assignment}
        missing = [i for i in ids if i not in have]
        if missing:
            raise InputError(f"partition misses ids {missing[:5]}")


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

KIND_COMPLETE = "complete"
KIND_EMPTY = "empty"


@dataclass(frozen=True)
class BicliqueCertificate:
    """Two disjoint id sets plus a flag saying whether every cross pair
    intersects (complete) or no cross pair intersects (empty)."""

    kind: str
    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        if self.kind not in (KIND_COMPLETE, KIND_EMPTY):
            raise InputError(f"unknown certificate kind {self.kind!r}")
        a = tuple(sorted(set(self.side_a)))
        b = tuple(sorted(set(self.side_b)))
        if set(a) & set(b):
            raise OverlappingSidesError(
                f"sides overlap on ids {sorted(set(a) & set(b))[:5]}"
            )
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    def min_side(self) -> int:
        return min(len(self.side_a), len(self.side_b))

    def size(self) -> int:
        """Size of the balanced bi-clique this certificate witnesses."""
        return 2 * self.min_side()


@dataclass(frozen=True)
class CertificateReport:
    valid: bool
    problems: tuple
    kind: str
    side_a_size: int
    side_b_size: int
    min_side: int


def _relation(instance):
    """Pairwise intersects/adjacent predicate over member ids plus the id set."""
    if isinstance(instance, Graph):
        ids = frozenset(range(instance.n))
        edges = instance.edges
        return ids, lambda i, j: ((i, j) if i < j else (j, i)) in edges
    if isinstance(instance, SubtreeFamily):
        by_id = instance.by_id()
        return frozenset(by_id), lambda i, j: intersects(
            by_id[i].subtree, by_id[j].subtree
        )
    if isinstance(instance, IntervalFamily):
        by_id = instance.by_id()
        return frozenset(by_id), lambda i, j: intervals_intersect(by_id[i], by_id[j])
    if hasattr(instance, "to_graph"):
        return _relation(instance.to_graph())
    raise InputError(f"cannot verify against instance of type {type(instance).__name__}")


def verify_certificate(
    instance,
    cert: BicliqueCertificate,
    min_side: int,
    partition: Union[Partition, None] = None,
) -> CertificateReport:
    """Check a certificate against the defining bi-clique property.

    Valid iff both sides have at least `min_side` members, every cross pair
    intersects (kind=complete) or none does (kind=empty), and, when a
    partition is supplied, side A lies in part 1 and side B in part 2.
    Unknown ids and overlapping sides raise instead of reporting.
    """
    ids, related = _relation(instance)
    for i in cert.side_a + cert.side_b:
        if i not in ids:
            raise UnknownIdError(f"certificate id {i} not in instance")
    if set(cert.side_a) & set(cert.side_b):
        raise OverlappingSidesError("certificate sides overlap")

    problems = []
    if len(cert.side_a) < min_side:
        problems.append(f"side A has {len(cert.side_a)} < {min_side} members")
    if len(cert.side_b) < min_side:
        problems.append(f"side B has {len(cert.side_b)} < {min_side} members")
    want = cert.kind == KIND_COMPLETE
    for i in cert.side_a:
        for j in cert.side_b:
            if related(i, j) != want:
                problems.append(
                    f"cross pair ({i}, {j}) violates kind={cert.kind}"
                )
                break
        else:
            continue
        break
    if partition is not None:
        p1, p2 = partition.part1(), partition.part2()
        bad_a = [i for i in cert.side_a if i not in p1]
        bad_b = [i for i in cert.side_b if i not in p2]
        if bad_a:
            problems.append(f"side A ids {bad_a[:5]} not in part 1")
        if bad_b:
            problems.append(f"side B ids {bad_b[:5]} not in part 2")
    return CertificateReport(
        valid=not problems,
        problems=tuple(problems),
        kind=cert.kind,
        side_a_size=len(cert.side_a),
        side_b_size=len(cert.side_b),
        min_side=min_side,
    )


# ---------------------------------------------------------------------------
# intersection graphs
# ---------------------------------------------------------------------------

def intersection_edges_by_id(fam) -> frozenset:
    """Intersecting unordered id pairs of a family, as (lo, hi) tuples."""
    ids, related = _relation(fam)
    ordered = sorted(ids)
    out = set()
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            if related(ordered[i], ordered[j]):
                out.add((ordered[i], ordered[j]))
    return frozenset(out)


def intersection_graph(fam) -> Graph:
    """Graph with vertex i standing for the i-th smallest member id."""
    ordered = sorted(fam.ids())
    index = {ident: i for i, ident in enumerate(ordered)}
    edges = frozenset(
        (index[a], index[b]) for a, b in intersection_edges_by_id(fam)
    )
    return Graph(len(ordered), edges)


def finalize_certificate(
    kind: str,
    side_a: Iterable[int],
    side_b: Iterable[int],
    min_a: int,
    min_b: int,
) -> BicliqueCertificate:
    """Truncate raw sides to their guaranteed sizes, keeping smallest ids.

    With a positive guarantee each side is cut to exactly that many ids;
    a zero guarantee keeps one id per side when both sides are nonempty,
    else returns the legal empty certificate.
    """
    a = sorted(set(side_a))
    b = sorted(set(side_b))
    ta = max(min_a, 1)
    tb = max(min_b, 1)
    if len(a) >= ta and len(b) >= tb:
        return BicliqueCertificate(kind, tuple(a[:ta]), tuple(b[:tb]))
    if min_a == 0 and min_b == 0:
        return BicliqueCertificate(kind, (), ())
    raise InternalInvariantError(
        f"sides of sizes ({len(a)}, {len(b)}) cannot meet guarantees ({min_a}, {min_b})"
    )
