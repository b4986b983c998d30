"""Exhaustive ground-truth solvers for small instances.

Bi-clique sizes follow the convention that a balanced K_{m,m} has size 2m.
Adjacency is held in fixed-width bitmasks; the search enumerates one side
depth-first with common-neighbourhood pruning, which keeps the structured
tightness instances and random graphs up to the cap fast.
"""

from __future__ import annotations

from .core import (
    BicliqueCertificate,
    CapExceededError,
    Graph,
    InputError,
    KIND_COMPLETE,
    KIND_EMPTY,
    Partition,
)

DEFAULT_CAP = 24


def _adj_masks(g: Graph) -> list:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _complement_masks(masks: list) -> list:
    n = len(masks)
    full = (1 << n) - 1
    return [(full ^ masks[v]) & ~(1 << v) for v in range(n)]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _best_one_sided(masks: list, n: int, a_pool: int, b_pool: int):
    """Largest t with A in a_pool, B in b_pool, |A| = |B| = t and every
    A-B pair adjacent under `masks`.  Returns (t, a_mask, b_mask).

    Depth-first over A in ascending vertex order; a state dies once
    min(|A| + remaining, |common cap b_pool - A|) cannot beat the best.
    """
    best_t = 0
    best = (0, 0)
    full = (1 << n) - 1
    order = [v for v in range(n) if (1 << v) & a_pool]

    def dfs(a_mask: int, a_size: int, common: int, start: int):
        nonlocal best_t, best
        avail = common & b_pool & ~a_mask
        t_now = min(a_size, avail.bit_count())
        if t_now > best_t:
            chosen = 0
            need = t_now
            for v in _bits(avail):
                chosen |= 1 << v
                need -= 1
                if not need:
                    break
            best_t = t_now
            best = (a_mask, chosen)
        for idx in range(start, len(order)):
            v = order[idx]
            new_common = common & masks[v]
            remaining = len(order) - idx - 1
            upper = min(
                a_size + 1 + remaining,
                (new_common & b_pool & ~(a_mask | 1 << v)).bit_count(),
            )
            if upper <= best_t:
                continue
            dfs(a_mask | 1 << v, a_size + 1, new_common, idx + 1)

    dfs(0, 0, full, 0)
    return best_t, best[0], best[1]


def _mask_ids(mask: int) -> tuple:
    return tuple(sorted(_bits(mask)))


def max_balanced_biclique(g: Graph, cap: int = DEFAULT_CAP):
    """Exact largest balanced bi-clique in g or its complement.

    Returns (size, certificate) with size = 2t; complete kind wins ties.
    """
    if g.n > cap:
        raise CapExceededError(f"graph has {g.n} > {cap} vertices")
    masks = _adj_masks(g)
    full = (1 << g.n) - 1
    t_c, a_c, b_c = _best_one_sided(masks, g.n, full, full)
    comp = _complement_masks(masks)
    t_e, a_e, b_e = _best_one_sided(comp, g.n, full, full)
    if t_c >= t_e:
        t, cert = t_c, BicliqueCertificate(
            KIND_COMPLETE, _mask_ids(a_c)[:t_c], _mask_ids(b_c)[:t_c]
        )
    else:
        t, cert = t_e, BicliqueCertificate(
            KIND_EMPTY, _mask_ids(a_e)[:t_e], _mask_ids(b_e)[:t_e]
        )
    return 2 * t, cert


def max_biclique_of_kind(g: Graph, kind: str, cap: int = DEFAULT_CAP):
    """Exact largest balanced bi-clique of one kind only; returns (size, cert)."""
    if g.n > cap:
        raise CapExceededError(f"graph has {g.n} > {cap} vertices")
    masks = _adj_masks(g)
    if kind == KIND_EMPTY:
        masks = _complement_masks(masks)
    elif kind != KIND_COMPLETE:
        raise InputError(f"unknown kind {kind!r}")
    full = (1 << g.n) - 1
    t, a_mask, b_mask = _best_one_sided(masks, g.n, full, full)
    cert = BicliqueCertificate(kind, _mask_ids(a_mask)[:t], _mask_ids(b_mask)[:t])
    return 2 * t, cert


def max_colorful_biclique(g: Graph, partition: Partition, cap: int = DEFAULT_CAP):
    """Exact largest partition-respecting balanced bi-clique.

    Side A is drawn from part 1, side B from part 2; both g and its
    complement are searched, complete kind winning ties.
    """
    if g.n > cap:
        raise CapExceededError(f"graph has {g.n} > {cap} vertices")
    partition.check_covers(range(g.n))
    pool1 = 0
    pool2 = 0
    for v in range(g.n):
        if partition.part_of(v) == 1:
            pool1 |= 1 << v
        else:
            pool2 |= 1 << v
    masks = _adj_masks(g)
    comp = _complement_masks(masks)
    t_c, a_c, b_c = _best_one_sided(masks, g.n, pool1, pool2)
    t_e, a_e, b_e = _best_one_sided(comp, g.n, pool1, pool2)
    if t_c >= t_e:
        t, cert = t_c, BicliqueCertificate(
            KIND_COMPLETE, _mask_ids(a_c)[:t_c], _mask_ids(b_c)[:t_c]
        )
    else:
        t, cert = t_e, BicliqueCertificate(
            KIND_EMPTY, _mask_ids(a_e)[:t_e], _mask_ids(b_e)[:t_e]
        )
    return 2 * t, cert


def check_no_kab(g: Graph, m: int, a: int, b: int, cap: int = DEFAULT_CAP) -> bool:
    """True iff neither the bipartite graph nor its bipartite complement
    contains K_{a,b} with the a-side among the left vertices 0..m-1."""
    if m > cap:
        raise CapExceededError(f"left side has {m} > {cap} vertices")
    if a > m or b > g.n - m:
        return True
    masks = _adj_masks(g)
    right_full = 0
    for v in range(m, g.n):
        right_full |= 1 << v
    comp = [(right_full & ~masks[v]) for v in range(m)]
    sides = [
        [masks[v] & right_full for v in range(m)],
        comp,
    ]
    import itertools

    for side in sides:
        for combo in itertools.combinations(range(m), a):
            common = right_full
            for v in combo:
                common &= side[v]
                if common.bit_count() < b:
                    break
            else:
                if common.bit_count() >= b:
                    return False
    return True
