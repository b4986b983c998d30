"""Generators for the tightness constructions and the randomized lower bound.

The random source is splitmix64, a named 64-bit PRNG, so instances written
to files reproduce bit-identically anywhere; output headers carry the
algorithm identifier and the seed.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cograph import Cotree, Leaf, Union_, make_complement
from .core import (
    Graph,
    InputError,
    IntervalFamily,
    IntervalMember,
    Partition,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
)

PRNG_NAME = "splitmix64"

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: x += 0x9E3779B97F4A7C15; mix with shifts and multiplies."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_bit(self) -> int:
        return self.next_u64() >> 63


# ---------------------------------------------------------------------------
# tightness constructions
# ---------------------------------------------------------------------------

def gen_seh_interval(k: int) -> IntervalFamily:
    """k copies each of [0,1], [1,2], [2,3], [3,4]; 4k intervals."""
    if k < 1:
        raise InputError("k must be at least 1")
    members = []
    for copy in range(k):
        for j in range(4):
            members.append(
                IntervalMember(4 * copy + j, None, Fraction(j), Fraction(j + 1))
            )
    return IntervalFamily(tuple(members))


def _clique_node(ids) -> "Leaf | Complement":
    if len(ids) == 1:
        return Leaf(ids[0])
    return make_complement(Union_(tuple(Leaf(i) for i in ids)))


def gen_seh_cograph(k: int) -> Cotree:
    """Complement of three disjoint k-cliques, plus one more k-clique."""
    if k < 1:
        raise InputError("k must be at least 1")
    blocks = [list(range(i * k, (i + 1) * k)) for i in range(4)]
    triple = Union_(tuple(_clique_node(b) for b in blocks[:3]))
    return Cotree(Union_((make_complement(triple), _clique_node(blocks[3]))))


def gen_seh_chordal(k: int) -> SubtreeFamily:
    """k copies of the nine subtrees of the 3-star: three duplicated leaf
    pairs and the three leaf-to-leaf paths."""
    if k < 1:
        raise InputError("k must be at least 1")
    star = Tree.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    shapes = [
        (1,), (1,), (2,), (2,), (3,), (3,),
        (0, 1, 2), (0, 1, 3), (0, 2, 3),
    ]
    members = []
    for copy in range(k):
        for j, shape in enumerate(shapes):
            members.append(SubtreeMember(9 * copy + j, None, Subtree(shape)))
    return SubtreeFamily(star, tuple(members))


def gen_ceh_interval(k: int) -> IntervalFamily:
    """k copies of the alternating six intervals, odd ones in part 2."""
    if k < 1:
        raise InputError("k must be at least 1")
    base = [
        (1, 0, 1), (1, 2, 3), (1, 4, 5),
        (2, 1, 2), (2, 3, 4), (2, 5, 6),
    ]
    members = []
    for copy in range(k):
        for j, (part, lo, hi) in enumerate(base):
            members.append(
                IntervalMember(6 * copy + j, part, Fraction(lo), Fraction(hi))
            )
    return IntervalFamily(tuple(members))


def gen_ceh_cograph(k: int):
    """The eight-block cograph whose cross-partition pattern is the rigid
    bipartite graph; each block is k isolated vertices.

    Returns (cotree, partition) with blocks 1..4 in part 1 and 5..8 in
    part 2.
    """
    if k < 1:
        raise InputError("k must be at least 1")

    def block(i: int):
        ids = list(range((i - 1) * k, i * k))
        if k == 1:
            return Leaf(ids[0])
        return Union_(tuple(Leaf(x) for x in ids))

    g1 = Union_((block(1), block(5)))
    g2 = Union_((make_complement(Union_((block(2), block(6)))),
                 make_complement(Union_((block(3), block(7))))))
    g3 = Union_((make_complement(g1), make_complement(g2)))
    g4 = make_complement(Union_((block(4), block(8))))
    g5 = Union_((make_complement(g3), g4))
    mapping = {}
    for i in range(1, 9):
        for x in range((i - 1) * k, i * k):
            mapping[x] = 1 if i <= 4 else 2
    return Cotree(g5), Partition.from_mapping(mapping)


# ---------------------------------------------------------------------------
# the bipartite realizer and the lower-bound experiment
# ---------------------------------------------------------------------------

def bipartite_to_subtrees(g: Graph, m: int) -> SubtreeFamily:
    """Realize a bipartite graph as two subtree families of a star.

    Vertices 0..m-1 are the left side, realized as the star's leaves
    (singleton subtrees, part 2); every right vertex x becomes the subtree
    spanning the leaves of its neighbourhood (part 1).  Member ids equal
    the graph's vertex ids, so the cross intersection pattern reproduces g
    exactly.  A right vertex with no neighbours becomes the bare centre,
    which meets no leaf.
    """
    if m < 2:
        raise InputError("need at least two left vertices")
    n_right = g.n - m
    if n_right < m:
        raise InputError("left side may not be larger than the right side")
    for u, v in g.edges:
        if (u < m) == (v < m):
            raise InputError(f"edge ({u}, {v}) does not cross the given split")
    star = Tree.from_edges(m + 1, [(0, leaf) for leaf in range(1, m + 1)])
    adj = g.adjacency()
    members = []
    for x in range(m, g.n):
        leaves = sorted(u + 1 for u in adj[x])
        if not leaves:
            verts = (0,)
        elif len(leaves) == 1:
            verts = (leaves[0],)
        else:
            verts = tuple([0] + leaves)
        members.append(SubtreeMember(x, 1, Subtree(verts)))
    for u in range(m):
        members.append(SubtreeMember(u, 2, Subtree((u + 1,))))
    return SubtreeFamily(star, tuple(members))


def lower_bound_dimensions(k: int, n: int) -> tuple:
    """Target (a, b) = (ceil(c*k), ceil(c*n)) with c = 2*ln(k)/(k*ln 2).

    A guard of 2^-40 keeps floating point from pushing an exactly integral
    product up to the next integer.
    """
    c_times_k = 2.0 * math.log2(k)
    a = math.ceil(c_times_k - 2.0 ** -40)
    b = math.ceil(c_times_k * n / k - 2.0 ** -40)
    return a, b


def gen_lower_bound(k: int, n: int, seed: int):
    """Random bipartite K_{k,n} subgraph with edge probability 1/2,
    realized as a subtree family; returns (family, a, b).

    One splitmix64 draw per (left, right) pair in row-major order decides
    each edge, so the instance is a pure function of (k, n, seed).
    """
    if k < 2:
        raise InputError("k must be at least 2")
    if n < k:
        raise InputError("n must be at least k")
    rng = SplitMix64(seed)
    edges = []
    for i in range(k):
        for j in range(n):
            if rng.next_bit():
                edges.append((i, k + j))
    g = Graph.from_edges(k + n, edges)
    fam = bipartite_to_subtrees(g, k)
    a, b = lower_bound_dimensions(k, n)
    return fam, a, b


def equalize_sizes(fam: SubtreeFamily, t: int) -> SubtreeFamily:
    """Duplicate members until both parts have |F_1| * |F_2| * t copies.

    Every part-1 member is copied |F_2|*t times and vice versa; fresh ids
    are assigned in ascending original-id order, part 1 first.  The cross
    intersection pattern is preserved copy-by-copy.
    """
    if t < 1:
        raise InputError("t must be at least 1")
    if not fam.has_parts():
        raise InputError("equalize_sizes needs part labels")
    part1 = [m for m in sorted(fam.members, key=lambda m: m.id) if m.part == 1]
    part2 = [m for m in sorted(fam.members, key=lambda m: m.id) if m.part == 2]
    m1, m2 = len(part1), len(part2)
    total = 2 * m1 * m2 * t
    if total > 1_000_000:
        raise InputError(f"equalized family would have {total} members")
    members = []
    next_id = 0
    for m in part1:
        for _ in range(m2 * t):
            members.append(SubtreeMember(next_id, 1, m.subtree))
            next_id += 1
    for m in part2:
        for _ in range(m1 * t):
            members.append(SubtreeMember(next_id, 2, m.subtree))
            next_id += 1
    return SubtreeFamily(fam.ambient, tuple(members))


def expected_kab(k: int, n: int, a: int | None = None, b: int | None = None):
    """E[X] = C(k,a) * C(n,b) * 2^(1-ab) for the count of K_{a,b} copies.

    Returns (exact Fraction, float approximation).  a and b default to the
    lower-bound targets.
    """
    if k < 2 or n < k:
        raise InputError("need k >= 2 and n >= k")
    if a is None or b is None:
        da, db = lower_bound_dimensions(k, n)
        a = da if a is None else a
        b = db if b is None else b
    if not (0 <= a <= k and 0 <= b <= n):
        raise InputError("need 0 <= a <= k and 0 <= b <= n")
    count = math.comb(k, a) * math.comb(n, b)
    exponent = 1 - a * b
    if exponent >= 0:
        exact = Fraction(count * (1 << exponent))
    else:
        exact = Fraction(count, 1 << (-exponent))
    return exact, float(exact)
