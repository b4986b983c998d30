"""Seeded random instance builders for exercising the finders at desk scale.

Everything takes an explicit random.Random so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cograph import Cotree, Leaf, Union_, make_complement
from .core import (
    IntervalFamily,
    IntervalMember,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
)


def random_tree(n: int, rng: random.Random, max_degree: int = 3) -> Tree:
    """Random tree by attachment to vertices that still have spare degree."""
    if n == 1:
        return Tree(1, ())
    edges = []
    degree = [0] * n
    for v in range(1, n):
        candidates = [u for u in range(v) if degree[u] < max_degree]
        u = rng.choice(candidates)
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1
    return Tree.from_edges(n, edges)


def random_tree_with_leaves(k: int, extra: int, rng: random.Random) -> Tree:
    """Random max-degree-3 tree with exactly k >= 2 leaves.

    Builds a random binary topology over k leaf slots, then subdivides
    `extra` randomly chosen edges; neither step changes the leaf count.
    """
    if k < 2:
        raise ValueError("need k >= 2 leaves")
    if k == 2:
        n = 2 + extra
        return Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    edges = []
    roots = list(range(k))
    nxt = k
    while len(roots) > 1:
        i = rng.randrange(len(roots))
        a = roots.pop(i)
        j = rng.randrange(len(roots))
        b = roots.pop(j)
        edges.append((a, nxt))
        edges.append((b, nxt))
        roots.append(nxt)
        nxt += 1
    n = nxt
    for _ in range(extra):
        idx = rng.randrange(len(edges))
        u, v = edges.pop(idx)
        edges.append((u, n))
        edges.append((n, v))
        n += 1
    return Tree.from_edges(n, edges)


def random_subtree(tree: Tree, rng: random.Random, max_size: int = 0) -> Subtree:
    """Connected random vertex set grown from a random start vertex."""
    if max_size <= 0:
        max_size = max(1, tree.n // 3)
    size = rng.randint(1, max_size)
    adj = tree.adjacency()
    start = rng.randrange(tree.n)
    chosen = {start}
    frontier = set(adj[start])
    while len(chosen) < size and frontier:
        v = rng.choice(sorted(frontier))
        chosen.add(v)
        frontier.discard(v)
        frontier.update(u for u in adj[v] if u not in chosen)
    return Subtree(tuple(sorted(chosen)))


def random_subtree_family(
    n_members: int,
    tree: Tree,
    rng: random.Random,
    with_parts: bool = False,
) -> SubtreeFamily:
    parts = _balanced_parts(n_members, rng) if with_parts else [None] * n_members
    members = tuple(
        SubtreeMember(i, parts[i], random_subtree(tree, rng)) for i in range(n_members)
    )
    return SubtreeFamily(tree, members)


def random_interval_family(
    n_members: int,
    rng: random.Random,
    coord_range: int = 0,
    with_parts: bool = False,
) -> IntervalFamily:
    if coord_range <= 0:
        coord_range = max(4, n_members)
    parts = _balanced_parts(n_members, rng) if with_parts else [None] * n_members
    members = []
    for i in range(n_members):
        a = rng.randint(0, coord_range)
        b = rng.randint(0, coord_range)
        lo, hi = min(a, b), max(a, b)
        members.append(IntervalMember(i, parts[i], Fraction(lo), Fraction(hi)))
    return IntervalFamily(tuple(members))


def random_cotree(n_leaves: int, rng: random.Random) -> Cotree:
    """Random cotree on leaf ids 0..n_leaves-1."""
    counter = iter(range(n_leaves))

    def build(size: int):
        if size == 1:
            return Leaf(next(counter))
        parts = [rng.randint(1, size - 1)]
        remaining = size - parts[0]
        while remaining > 0:
            take = rng.randint(1, remaining)
            parts.append(take)
            remaining -= take
        node = Union_(tuple(build(p) for p in parts))
        if rng.random() < 0.5:
            return make_complement(node)
        return node

    root = build(n_leaves) if n_leaves > 1 else Leaf(next(counter))
    if n_leaves > 1 and rng.random() < 0.5:
        root = make_complement(root)
    return Cotree(root)


def random_graph(n: int, rng: random.Random, p: float = 0.5):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    from .core import Graph

    return Graph.from_edges(n, edges)


def random_bipartite(m: int, n: int, rng: random.Random, p: float = 0.5):
    """Bipartite graph on 0..m-1 (side 1) and m..m+n-1 (side 2)."""
    edges = [
        (u, m + w)
        for u in range(m)
        for w in range(n)
        if rng.random() < p
    ]
    from .core import Graph

    return Graph.from_edges(m + n, edges)


def _balanced_parts(n: int, rng: random.Random) -> list:
    half = (n + 1) // 2
    labels = [1] * half + [2] * (n - half)
    rng.shuffle(labels)
    return labels


def balanced_partition_for(ids, rng: random.Random):
    from .core import Partition

    ordered = sorted(ids)
    labels = _balanced_parts(len(ordered), rng)
    return Partition.from_mapping(dict(zip(ordered, labels)))
