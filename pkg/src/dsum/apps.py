"""Applications of disjoint-pair summation: longest/count k-edge paths,
rectangular permanents, and best disjoint feature subsets."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import (
    COUNT_WEIGHT,
    IDENTITY,
    NEG_INF,
    WITNESS_MAX,
    oplus,
    otimes,
)
from .errors import ScaleGuardError
from .summation import intersection_sum, pair_sum

KPATH_ORACLE_VERTICES = 10
KPATH_ORACLE_EDGES = 6


class Graph:
    """Weighted graph without self-loops or duplicate edges."""

    def __init__(self, n, edges, directed=False):
        if n < 1:
            raise ValueError("need at least one vertex")
        self.n = n
        self.directed = directed
        self.edges = []
        weight = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("vertex out of range in edge (%d, %d)" % (u, v))
            if u == v:
                raise ValueError("self-loop at %d" % u)
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in weight:
                raise ValueError("duplicate edge (%d, %d)" % (u, v))
            weight[key] = float(w)
            self.edges.append((u, v, float(w)))
        self._weight = weight

    def edge_weight(self, u, v):
        """Weight of u -> v, or None."""
        key = (u, v) if self.directed else (min(u, v), max(u, v))
        return self._weight.get(key)

    def reversed(self):
        if not self.directed:
            return self
        return Graph(self.n, [(v, u, w) for u, v, w in self.edges], directed=True)


def half_path_table(graph, source, anchor, m):
    """Count/weight of the best m-edge paths from source to anchor,
    grouped by the visited set short of the anchor.

    Keys are the m-subsets X with source in X, anchor not in X; the value
    is the CountWeight pair for maximum-weight simple paths spanning
    exactly X plus the anchor.  Unreachable subsets are absent (additive
    identity).
    """
    n = graph.n
    if source == anchor:
        raise ValueError("source and anchor must differ")
    if m < 1:
        raise ValueError("need m >= 1")
    if m + 1 > n:
        raise ValueError("m + 1 exceeds vertex count")
    # best[(mask, v)] over masks avoiding the anchor, v in mask
    best = {(1 << source, source): (1, 0.0)}
    frontier = {(1 << source, source): (1, 0.0)}
    for _ in range(m - 1):
        nxt = {}
        for (mask, v), value in frontier.items():
            for u in range(n):
                if u == anchor or mask & (1 << u):
                    continue
                w = graph.edge_weight(v, u)
                if w is None:
                    continue
                key = (mask | (1 << u), u)
                term = otimes(COUNT_WEIGHT, value, (1, w))
                nxt[key] = oplus(COUNT_WEIGHT, nxt.get(key, IDENTITY), term)
        frontier = nxt
    table = {}
    for (mask, v), value in frontier.items():
        w = graph.edge_weight(v, anchor)
        if w is None:
            continue
        x_set = frozenset(i for i in range(n) if mask & (1 << i))
        term = otimes(COUNT_WEIGHT, value, (1, w))
        table[x_set] = oplus(COUNT_WEIGHT, table.get(x_set, IDENTITY), term)
    return table


def _renumber(table, order):
    index = {vertex: i for i, vertex in enumerate(order)}
    return {
        frozenset(index[v] for v in key): value for key, value in table.items()
    }


def kpath_count(graph, s, t, k):
    """(number, weight) of maximum-weight simple k-edge paths from s to t.

    Splits every path at the vertex reached after floor(k/2) edges and
    joins the two halves over disjoint vertex sets.  No path gives
    (0, -inf).
    """
    n = graph.n
    if not (0 <= s < n and 0 <= t < n):
        raise ValueError("endpoint out of range")
    if s == t:
        raise ValueError("endpoints must differ")
    if k < 2:
        raise ValueError("need k >= 2")
    first = k // 2
    second = k - first
    if k + 1 > n:
        return (0, NEG_INF)
    reversed_graph = graph.reversed()
    total = IDENTITY
    for middle in range(n):
        if middle == s or middle == t:
            continue
        head = half_path_table(graph, s, middle, first)
        tail = half_path_table(reversed_graph, t, middle, second)
        if not head or not tail:
            continue
        order = [v for v in range(n) if v != middle]
        value = pair_sum(
            n - 1,
            first,
            second,
            _renumber(head, order),
            _renumber(tail, order),
            COUNT_WEIGHT,
        )
        total = oplus(COUNT_WEIGHT, total, value)
    if total is IDENTITY or total[0] == 0:
        return (0, NEG_INF)
    return total


def oracle_kpath(graph, s, t, k):
    """Depth-first enumeration of every simple k-edge path from s to t."""
    n = graph.n
    if n > KPATH_ORACLE_VERTICES or k > KPATH_ORACLE_EDGES:
        raise ScaleGuardError(
            "path oracle limited to %d vertices and %d edges"
            % (KPATH_ORACLE_VERTICES, KPATH_ORACLE_EDGES)
        )
    if not (0 <= s < n and 0 <= t < n) or s == t or k < 1:
        raise ValueError("bad endpoints or length")
    best = IDENTITY

    def walk(v, steps, weight, visited):
        nonlocal best
        if steps == k:
            if v == t:
                best = oplus(COUNT_WEIGHT, best, (1, weight))
            return
        for u in range(n):
            if visited & (1 << u):
                continue
            w = graph.edge_weight(v, u)
            if w is None:
                continue
            walk(u, steps + 1, weight + w, visited | (1 << u))

    walk(s, 0, 0.0, 1 << s)
    if best is IDENTITY or best[0] == 0:
        return (0, NEG_INF)
    return best


def _row_products(rows, n, semiring):
    """Injective-assignment sums for a strip of rows, in row order.

    Returns {column set of size len(rows): sum over injections of the
    ordered entry product}.  Safe for noncommutative products: factors
    append on the right, one per row, top to bottom.
    """
    acc = {frozenset(): semiring.one}
    for row in rows:
        nxt = {}
        for cols, value in acc.items():
            for j in range(n):
                if j in cols:
                    continue
                term = semiring.otimes(value, row[j])
                key = cols | {j}
                prev = nxt.get(key)
                nxt[key] = term if prev is None else semiring.oplus(prev, term)
        acc = nxt
    return acc


def permanent(rows, semiring):
    """Permanent of a k x n matrix, k <= n: the sum over injective column
    choices of the row-ordered entry products.  Split into the first
    floor(k/2) and remaining rows, joined over disjoint column sets."""
    k = len(rows)
    if k < 1:
        raise ValueError("need at least one row")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    if k > n:
        raise ValueError("need k <= n")
    first = k // 2
    head = _row_products(rows[:first], n, semiring)
    tail = _row_products(rows[first:], n, semiring)
    total = pair_sum(n, first, k - first, head, tail, semiring)
    return semiring.zero if total is IDENTITY else total


def oracle_permanent(rows, semiring):
    """Direct enumeration over injective column choices."""
    k = len(rows)
    n = len(rows[0]) if k else 0
    if k < 1 or any(len(r) != n for r in rows) or k > n:
        raise ValueError("bad matrix shape")
    if math.comb(n, k) * math.factorial(k) > 10**7:
        raise ScaleGuardError("permanent oracle budget exceeded")
    total = IDENTITY
    for cols in itertools.permutations(range(n), k):
        value = semiring.one
        for i, j in enumerate(cols):
            value = semiring.otimes(value, rows[i][j])
        total = oplus(semiring, total, value)
    return semiring.zero if total is IDENTITY else total


@dataclass(frozen=True)
class FeatureTable:
    """Precomputed best-disjoint-subset answers."""

    n: int
    p: int
    q: int
    answers: dict  # frozenset E -> (score, witness tuple) or IDENTITY


def featsel_precompute(scores, p, q, n=None, contract=WITNESS_MAX):
    """One summation pass answering every at-most-q exclusion query:
    for each E, the best-scoring at-most-p subset disjoint from E and a
    witness achieving it.  Runs the level recursion directly (sparse), so
    the work is one shared pass instead of a scan per query."""
    if n is None:
        n = 1 + max((max(key) for key in scores if key), default=0)
    lifted = {}
    for key, score in scores.items():
        x_set = frozenset(key)
        if len(x_set) > p:
            raise ValueError("scored subset larger than p: %r" % (sorted(x_set),))
        lifted[(frozenset(), x_set)] = (float(score), tuple(sorted(x_set)))
    answers = intersection_sum(n, p, q, lifted, contract, mode="direct")
    return FeatureTable(n, p, q, answers)


def featsel_query(feature_table, excluded):
    """(score, witness) for one exclusion set, or None when no scored
    subset avoids it."""
    e_set = frozenset(excluded)
    if len(e_set) > feature_table.q:
        raise ValueError("query larger than q")
    if e_set and max(e_set) >= feature_table.n:
        raise ValueError("feature out of range")
    value = feature_table.answers.get(e_set, IDENTITY)
    return None if value is IDENTITY else value


def featsel_brute_force(scores, excluded, contract=WITNESS_MAX):
    """Reference scan over every scored subset; used to validate queries
    and to price the repeated-scan alternative."""
    e_set = frozenset(excluded)
    best = IDENTITY
    for key in sorted(scores, key=lambda s: tuple(sorted(s))):
        x_set = frozenset(key)
        if x_set & e_set:
            continue
        value = (float(scores[key]), tuple(sorted(x_set)))
        best = oplus(contract, best, value)
    return None if best is IDENTITY else best
