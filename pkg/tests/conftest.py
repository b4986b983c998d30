"""Shared instance builders for the test suite."""

from fractions import Fraction

import pytest

from bicliques.core import (
    IntervalFamily,
    IntervalMember,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
)


def interval(ident, lo, hi, part=None):
    return IntervalMember(ident, part, Fraction(lo), Fraction(hi))


def member(ident, verts, part=None):
    return SubtreeMember(ident, part, Subtree(tuple(verts)))


@pytest.fixture
def star3():
    """The 3-star: centre 0, leaves 1, 2, 3."""
    return Tree.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def nine_subtrees(star3):
    """Three duplicated leaf singletons plus the three leaf-to-leaf paths."""
    return SubtreeFamily(
        star3,
        (
            member(0, [1]),
            member(1, [1]),
            member(2, [2]),
            member(3, [2]),
            member(4, [3]),
            member(5, [3]),
            member(6, [0, 1, 2]),
            member(7, [0, 1, 3]),
            member(8, [0, 2, 3]),
        ),
    )


@pytest.fixture
def touching_intervals():
    """[0,1], [1,2], [2,3], [3,4]: a path of four touching intervals."""
    return IntervalFamily(tuple(interval(i, i, i + 1) for i in range(4)))


@pytest.fixture
def six_labeled_intervals():
    """Alternating unit intervals, odd ones in part 2."""
    return IntervalFamily(
        (
            interval(0, 0, 1, part=1),
            interval(1, 2, 3, part=1),
            interval(2, 4, 5, part=1),
            interval(3, 1, 2, part=2),
            interval(4, 3, 4, part=2),
            interval(5, 5, 6, part=2),
        )
    )
