"""Perfect binary tree of height b over n = 2^b leaves.

A level-l node is a binary string of length l, stored as its integer value
(0 <= value < 2^l; level 0 has the single root string).  A Subset bundles a
level with a sorted member tuple; its canonical encoding (level, members)
is the ordering key everywhere, so listings are lexicographic within a
level.  Logical universes of arbitrary size n are embedded by padding to
the next power of two; elements n..2^b-1 are phantom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAX_HEIGHT = 62


@dataclass(frozen=True, order=True)
class Subset:
    """A set of same-length tree nodes: level plus sorted member values."""

    level: int
    members: tuple

    def __post_init__(self):
        if not 0 <= self.level <= MAX_HEIGHT:
            raise ValueError("level out of range: %d" % self.level)
        last = -1
        top = 1 << self.level
        for m in self.members:
            if not last < m < top:
                raise ValueError(
                    "members must be sorted, distinct, in [0, 2^level): %r"
                    % (self.members,)
                )
            last = m

    @classmethod
    def of(cls, level, members):
        """Build from any iterable; sorts and deduplicates."""
        return cls(level, tuple(sorted(set(members))))

    def size(self):
        return len(self.members)

    def member_set(self):
        return frozenset(self.members)

    def __repr__(self):
        return "Subset(%d, {%s})" % (
            self.level,
            ",".join(str(m) for m in self.members),
        )


def all_strings(level):
    """Ground Subset of every node at the given level."""
    return Subset(level, tuple(range(1 << level)))


def project(subset, level):
    """Prefixes of the members at a shallower level; the empty set maps
    to the empty set."""
    if not 0 <= level <= subset.level:
        raise ValueError("cannot project level %d to %d" % (subset.level, level))
    shift = subset.level - level
    return Subset.of(level, (m >> shift for m in subset.members))


def span(subset, to_level):
    """All level-to_level descendants of the members."""
    if to_level < subset.level:
        raise ValueError("span target above subset level")
    shift = to_level - subset.level
    out = []
    for m in subset.members:
        out.extend(range(m << shift, (m + 1) << shift))
    return Subset(to_level, tuple(out))


def intersect_span(subset, ancestors):
    """Members of ``subset`` lying under any member of ``ancestors``
    (a Subset at a shallower or equal level).  Equals
    subset (intersect) span(ancestors, subset.level) without materializing
    the span."""
    shift = subset.level - ancestors.level
    if shift < 0:
        raise ValueError("ancestors must be at a shallower level")
    anc = ancestors.member_set()
    return Subset(
        subset.level,
        tuple(m for m in subset.members if (m >> shift) in anc),
    )


def intersect(a, b):
    if a.level != b.level:
        raise ValueError("level mismatch")
    bs = b.member_set()
    return Subset(a.level, tuple(m for m in a.members if m in bs))


def child_count(size, cap):
    """Number of one-level refinements of a size-``size`` node set whose
    projection is that set, with at most ``cap`` members: each parent
    contributes one or both children, at most cap - size parents both."""
    if size > cap:
        raise ValueError("size exceeds cap")
    top = min(size, cap - size)
    return sum(math.comb(size, k) * (1 << (size - k)) for k in range(top + 1))


def child_families(subset, cap):
    """All Subsets one level down projecting exactly onto ``subset``, with
    at most ``cap`` members, in canonical order.

    Each member m contributes child 2m, child 2m+1, or both; the number of
    "both" choices is limited by cap.  The empty set refines only to the
    empty set.
    """
    if subset.size() > cap:
        raise ValueError("subset larger than cap")
    level = subset.level + 1
    budget = cap - subset.size()
    results = []

    def extend(idx, acc, used_both):
        if idx == len(subset.members):
            results.append(Subset(level, tuple(sorted(acc))))
            return
        m = subset.members[idx]
        extend(idx + 1, acc + [2 * m], used_both)
        extend(idx + 1, acc + [2 * m + 1], used_both)
        if used_both < budget:
            extend(idx + 1, acc + [2 * m, 2 * m + 1], used_both + 1)

    extend(0, [], 0)
    results.sort(key=lambda s: s.members)
    return results


def subsets_up_to(ground, size):
    """Subsets of ``ground`` with at most ``size`` members, in canonical
    (lexicographic by member tuple) order."""
    elems = ground.members
    level = ground.level
    out = []

    def rec(prefix, start):
        out.append(Subset(level, tuple(prefix)))
        if len(prefix) < size:
            for i in range(start, len(elems)):
                prefix.append(elems[i])
                rec(prefix, i + 1)
                prefix.pop()

    rec([], 0)
    return out


@dataclass(frozen=True)
class Universe:
    """Logical universe of n elements embedded in a 2^b-leaf tree."""

    n: int

    def __post_init__(self):
        if not 1 <= self.n <= (1 << MAX_HEIGHT):
            raise ValueError("universe size out of range: %d" % self.n)

    @property
    def b(self):
        return max(1, (self.n - 1).bit_length())

    @property
    def padded(self):
        return 1 << self.b

    def is_real(self, element):
        return 0 <= element < self.n

    def real_ground(self):
        """All real leaves as a level-b Subset."""
        return Subset(self.b, tuple(range(self.n)))

    def leaf_subset(self, elements):
        """Level-b Subset from element indices, rejecting phantoms."""
        elems = sorted(set(elements))
        if elems and not (0 <= elems[0] and elems[-1] < self.n):
            raise ValueError("element out of range for universe of %d" % self.n)
        return Subset(self.b, tuple(elems))
