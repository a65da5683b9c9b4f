"""Circuit builders.

``build_pq`` is the general construction: a dynamic program over tree
levels whose cells are (leaf subset A, node set W) with A inside the span
of W, refined one level at a time through child families.  The others are
special-case or baseline constructions kept for cross-checking: the
classic p = q = 1 circuit, its one-sided generalizations, and the
subset-sweep baseline.

All builders emit gates in a fixed canonical order, so equal parameters
give byte-identical serializations.
"""

from __future__ import annotations

import math

from .circuit import AddGate, Circuit, GateCounts, InputGate
from .universe import (
    Subset,
    all_strings,
    child_count,
    child_families,
    intersect_span,
    project,
    span,
    subsets_up_to,
)


def predicted_gate_count(b, p, q):
    """Closed-form gate counts for build_pq.

    Inputs: pairs (I, X) with |X| <= p, I a subset of X, |I| <= q.
    Adds: per level, one gate per cell per extra child family, plus one
    output gate per at-most-q leaf subset.
    """
    if b < 1 or p < 0 or q < 0:
        raise ValueError("need b >= 1, p >= 0, q >= 0")
    n = 1 << b
    limit = (1 << 64) - 1
    inputs = sum(
        math.comb(n, i) * math.comb(i, j)
        for i in range(p + 1)
        for j in range(q + 1)
    )
    if inputs > limit:
        raise OverflowError("input count exceeds 64-bit range")
    adds = 0
    for lev in range(b):
        for i in range(p + 1):
            cells = math.comb(1 << lev, i) * sum(
                math.comb(i * (1 << (b - lev)), j) for j in range(q + 1)
            )
            adds += cells * (child_count(i, p) - 1)
        if adds > limit:
            raise OverflowError("add count exceeds 64-bit range")
    outputs = sum(math.comb(n, j) for j in range(q + 1))
    adds += outputs
    if adds > limit:
        raise OverflowError("add count exceeds 64-bit range")
    return GateCounts(inputs, adds, outputs)


def build_pq(b, p, q):
    """General construction for intersection summation.

    Cells are keyed (A, W) with A a level-b subset inside span(W); the
    base level stores the input gates, and each shallower level folds the
    child families of W left-associated.  Outputs combine the root cell
    with the all-empty cell.
    """
    if b < 1 or p < 0 or q < 0:
        raise ValueError("need b >= 1, p >= 0, q >= 0")
    gates = []
    cells = {}
    leaves = all_strings(b)
    for x_label in subsets_up_to(leaves, p):
        for i_label in subsets_up_to(x_label, q):
            cells[(i_label, x_label)] = len(gates)
            gates.append(InputGate(i_label, x_label))
    for lev in range(b - 1, -1, -1):
        for support in subsets_up_to(all_strings(lev), p):
            children = child_families(support, p)
            ground = span(support, b)
            for active in subsets_up_to(ground, q):
                idx = None
                for child in children:
                    op = cells[(intersect_span(active, child), child)]
                    if idx is None:
                        idx = op
                    else:
                        gates.append(AddGate(idx, op))
                        idx = len(gates) - 1
                cells[(active, support)] = idx
    root = Subset(0, (0,))
    root_empty = Subset(0, ())
    empty_leaf = Subset(b, ())
    outputs = {}
    for active in subsets_up_to(leaves, q):
        rest = cells[(empty_leaf, root_empty)]
        if p >= 1:
            gates.append(AddGate(cells[(active, root)], rest))
            outputs[active] = len(gates) - 1
        else:
            # no W = {root} cell exists; the output aliases the lone input
            outputs[active] = rest
    return Circuit(b, p, q, tuple(gates), outputs)


def build_valiant(b):
    """Classic p = q = 1 construction: subtree sums down the tree, then
    sibling-complement sums back up.  Exactly 3n - 6 adds; needs b >= 2."""
    if b < 2:
        raise ValueError("classic construction needs b >= 2")
    n = 1 << b
    gates = []
    empty = Subset(b, ())
    subtree = {}
    for x in range(n):
        subtree[(b, x)] = len(gates)
        gates.append(InputGate(empty, Subset(b, (x,))))
    for lev in range(b - 1, 0, -1):
        for w in range(1 << lev):
            gates.append(AddGate(subtree[(lev + 1, 2 * w)], subtree[(lev + 1, 2 * w + 1)]))
            subtree[(lev, w)] = len(gates) - 1
    excluded = {(1, 0): subtree[(1, 1)], (1, 1): subtree[(1, 0)]}
    for lev in range(2, b + 1):
        for u in range(1 << lev):
            parent, bit = u >> 1, u & 1
            sibling = (parent << 1) | (1 - bit)
            gates.append(AddGate(excluded[(lev - 1, parent)], subtree[(lev, sibling)]))
            excluded[(lev, u)] = len(gates) - 1
    outputs = {Subset(b, (y,)): excluded[(b, y)] for y in range(n)}
    return Circuit(b, 1, 1, tuple(gates), outputs)


def _sibling_complement(members):
    """Siblings of the members that are not themselves members, sorted."""
    present = set(members)
    return sorted(m ^ 1 for m in members if (m ^ 1) not in present)


def build_p1(b, q):
    """Singleton leaf sets, outputs for every at-most-q avoided set.

    Subtree sums as in the classic construction; the avoided-set layer
    steps down one level at a time, adding the subtree sums of the
    uncovered siblings.  The root cell for the full avoided set is the
    adjoined identity and simply drops out of the fold.
    """
    if b < 2:
        raise ValueError("need b >= 2")
    if q < 1:
        raise ValueError("need q >= 1")
    n = 1 << b
    gates = []
    empty = Subset(b, ())
    subtree = {}
    for x in range(n):
        subtree[(b, x)] = len(gates)
        gates.append(InputGate(empty, Subset(b, (x,))))
    for lev in range(b - 1, 0, -1):
        for w in range(1 << lev):
            gates.append(AddGate(subtree[(lev + 1, 2 * w)], subtree[(lev + 1, 2 * w + 1)]))
            subtree[(lev, w)] = len(gates) - 1
    avoided = {Subset(0, (0,)): None}
    gates.append(AddGate(subtree[(1, 0)], subtree[(1, 1)]))
    avoided[Subset(0, ())] = len(gates) - 1
    for lev in range(1, b + 1):
        for group in subsets_up_to(all_strings(lev), q):
            ops = []
            parent_idx = avoided[project(group, lev - 1)]
            if parent_idx is not None:
                ops.append(parent_idx)
            for x in _sibling_complement(group.members):
                ops.append(subtree[(lev, x)])
            idx = None
            for op in ops:
                if idx is None:
                    idx = op
                else:
                    gates.append(AddGate(idx, op))
                    idx = len(gates) - 1
            avoided[group] = idx
    outputs = {}
    for group in subsets_up_to(all_strings(b), q):
        if avoided[group] is not None:
            outputs[group] = avoided[group]
    return Circuit(b, 1, q, tuple(gates), outputs)


def build_q1(b, p):
    """At-most-p leaf sets, singleton outputs.

    Node-set sums are nucleated from the inputs through child families
    (no intersection component); the excluded-leaf layer walks down the
    leaf's root path, adding every node-set sum that contains the sibling
    and avoids the path."""
    if b < 2:
        raise ValueError("need b >= 2")
    if p < 1:
        raise ValueError("need p >= 1")
    gates = []
    empty = Subset(b, ())
    group_sum = {}
    for x_label in subsets_up_to(all_strings(b), p):
        group_sum[x_label] = len(gates)
        gates.append(InputGate(empty, x_label))
    for lev in range(b - 1, 0, -1):
        for support in subsets_up_to(all_strings(lev), p):
            idx = None
            for child in child_families(support, p):
                op = group_sum[child]
                if idx is None:
                    idx = op
                else:
                    gates.append(AddGate(idx, op))
                    idx = len(gates) - 1
            group_sum[support] = idx
    # root path base: sets projecting to nothing are the empty set alone
    excluded = {(0, 0): group_sum[empty]}
    for lev in range(1, b + 1):
        width = 1 << lev
        for u in range(width):
            parent, bit = u >> 1, u & 1
            sibling = (parent << 1) | (1 - bit)
            rest = Subset(
                lev,
                tuple(s for s in range(width) if s != 2 * parent and s != 2 * parent + 1),
            )
            idx = excluded[(lev - 1, parent)]
            for extra in subsets_up_to(rest, p - 1):
                op = group_sum[Subset.of(lev, extra.members + (sibling,))]
                gates.append(AddGate(idx, op))
                idx = len(gates) - 1
            excluded[(lev, u)] = idx
    outputs = {Subset(b, (y,)): excluded[(b, y)] for y in range(1 << b)}
    return Circuit(b, p, 1, tuple(gates), outputs)


def build_yates(b, p, q):
    """Subset-sweep baseline: one element is resolved per stage; a stage
    either strips the element from the key or glues the two families that
    do and do not contain it.  With p and q at least 2^b the sweep is
    unrestricted and performs exactly n * 2^(n-1) unions; otherwise only
    keys reachable from the at-most-q outputs are materialized, and keys
    whose resolved part exceeds p denote empty families (no gate)."""
    if b < 1 or p < 0 or q < 0:
        raise ValueError("need b >= 1, p >= 0, q >= 0")
    n = 1 << b
    gates = []
    leaves = all_strings(b)
    inputs = {}
    for x_label in subsets_up_to(leaves, min(p, n)):
        inputs[x_label.member_set()] = len(gates)
        gates.append(InputGate(Subset(b, ()), x_label))

    if p >= n and q >= n:
        prev = dict(inputs)
        for stage in range(1, n + 1):
            elem = n - stage
            cur = {}
            for key_label in subsets_up_to(leaves, n):
                key = key_label.member_set()
                if elem in key:
                    cur[key] = prev[key - {elem}]
                else:
                    gates.append(AddGate(prev[key | {elem}], prev[key]))
                    cur[key] = len(gates) - 1
            prev = cur
        outputs = {}
        for y_label in subsets_up_to(leaves, n):
            outputs[y_label] = prev[y_label.member_set()]
        return Circuit(b, p, q, tuple(gates), outputs)

    memo = {}

    def family(stage, key):
        """Gate index for the stage-``stage`` family keyed by ``key``, or
        None when the family is empty."""
        resolved = n - stage  # elements below this bound are fixed by key
        if sum(1 for e in key if e < resolved) > p:
            return None
        state = (stage, key)
        if state in memo:
            return memo[state]
        if stage == 0:
            result = inputs.get(key)
        else:
            elem = n - stage
            if elem in key:
                result = family(stage - 1, key - {elem})
            else:
                with_e = family(stage - 1, key | {elem})
                without = family(stage - 1, key)
                if with_e is None:
                    result = without
                elif without is None:
                    result = with_e
                else:
                    gates.append(AddGate(with_e, without))
                    result = len(gates) - 1
        memo[state] = result
        return result

    outputs = {}
    for y_label in subsets_up_to(leaves, q):
        idx = family(n, y_label.member_set())
        if idx is not None:
            outputs[y_label] = idx
    return Circuit(b, p, q, tuple(gates), outputs)
