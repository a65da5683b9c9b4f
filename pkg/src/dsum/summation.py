"""Subset summation over a logical universe of n elements.

Tables are plain mappings: disjoint form keyed by frozenset X, intersection
form keyed by (frozenset I, frozenset X).  The universe is padded to a
power of two internally; phantom labels are never assigned, so they
contribute the adjoined identity, and outputs mentioning phantom elements
are suppressed.  Missing entries and empty sums are IDENTITY throughout.

The brute-force oracles enumerate subsets directly and share no code with
the circuit or the level recursion; they are the independent reference.
"""

from __future__ import annotations

import itertools
import math

from .algebra import IDENTITY, fold, oplus, otimes
from .builders import build_p1, build_pq, build_q1, build_valiant, build_yates
from .circuit import evaluate
from .errors import ScaleGuardError
from .universe import (
    Subset,
    Universe,
    all_strings,
    child_families,
    intersect_span,
    span,
    subsets_up_to,
)

ORACLE_BUDGET = 10**7

_circuit_cache = {}


def _cached_circuit(kind, b, p, q):
    key = (kind, b, p, q)
    if key not in _circuit_cache:
        if kind == "pq":
            _circuit_cache[key] = build_pq(b, p, q)
        elif kind == "valiant":
            _circuit_cache[key] = build_valiant(b)
        elif kind == "p1":
            _circuit_cache[key] = build_p1(b, q)
        elif kind == "q1":
            _circuit_cache[key] = build_q1(b, p)
        elif kind == "yates":
            _circuit_cache[key] = build_yates(b, p, q)
        else:
            raise ValueError("unknown builder %r" % kind)
    return _circuit_cache[key]


def _check_intersection_keys(table, n, p, q):
    for key in table:
        i_part, x_part = key
        if not (i_part <= x_part and len(x_part) <= p and len(i_part) <= q):
            raise ValueError("bad intersection key %r" % (key,))
        if x_part and max(x_part) >= n:
            raise ValueError("element out of range in key %r" % (key,))


def _check_disjoint_keys(table, n, p):
    for key in table:
        if len(key) != p:
            raise ValueError("disjoint keys need exactly %d elements: %r" % (p, key))
        if key and max(key) >= n:
            raise ValueError("element out of range in key %r" % (key,))


def _to_assignment(table, universe):
    return {
        (universe.leaf_subset(i_part), universe.leaf_subset(x_part)): value
        for (i_part, x_part), value in table.items()
    }


def _real_outputs(universe, q):
    return subsets_up_to(universe.real_ground(), q)


def _direct_levels(universe, p, q, assignment, contract):
    """Level recursion on values instead of gates; keeps two levels of
    cells, skips empty cells, and never touches phantom-only labels."""
    b = universe.b
    prev = dict(assignment)
    for lev in range(b - 1, -1, -1):
        cur = {}
        for support in subsets_up_to(all_strings(lev), p):
            children = child_families(support, p)
            ground = span(support, b)
            for active in subsets_up_to(ground, q):
                acc = IDENTITY
                for child in children:
                    part = prev.get((intersect_span(active, child), child))
                    if part is not None:
                        acc = oplus(contract, acc, part)
                if acc is not IDENTITY:
                    cur[(active, support)] = acc
        prev = cur
    return prev


def intersection_sum(n, p, q, table, contract, mode="circuit", threads=1):
    """For every at-most-q subset A of [n], the sum of table[(A & X, X)]
    over all at-most-p subsets X of [n].  Missing entries contribute
    IDENTITY; an output with no contributions is IDENTITY."""
    if mode not in ("circuit", "direct"):
        raise ValueError("mode must be circuit or direct")
    _check_intersection_keys(table, n, p, q)
    universe = Universe(n)
    assignment = _to_assignment(table, universe)
    out = {}
    if mode == "circuit":
        circ = _cached_circuit("pq", universe.b, p, q)
        values = evaluate(circ, assignment, contract, threads=threads)
        for label in _real_outputs(universe, q):
            out[label.member_set()] = values[label]
    else:
        root = Subset(0, (0,))
        root_empty = Subset(0, ())
        empty_leaf = Subset(universe.b, ())
        cells = _direct_levels(universe, p, q, assignment, contract)
        rest = cells.get((empty_leaf, root_empty), IDENTITY)
        for label in _real_outputs(universe, q):
            head = cells.get((label, root), IDENTITY) if p >= 1 else IDENTITY
            out[label.member_set()] = oplus(contract, head, rest)
    return out


def disjoint_sum(n, p, q, table, contract, mode="direct", builder="pq"):
    """For every exactly-q subset Y of [n], the sum of table[X] over
    exactly-p subsets X disjoint from Y.  The disjoint form is the
    intersection form with all value mass on I = empty."""
    _check_disjoint_keys(table, n, p)
    lifted = {(frozenset(), x_part): value for x_part, value in table.items()}
    if mode == "direct":
        full = intersection_sum(n, p, q, lifted, contract, mode="direct")
        return {y: v for y, v in full.items() if len(y) == q}
    if mode != "circuit":
        raise ValueError("mode must be circuit or direct")
    universe = Universe(n)
    _check_builder_applicability(builder, universe.b, p, q)
    circ = _cached_circuit(builder, universe.b, p, q)
    assignment = _to_assignment(lifted, universe)
    values = evaluate(circ, assignment, contract)
    out = {}
    for label in _real_outputs(universe, q):
        if label.size() != q:
            continue
        out[label.member_set()] = values.get(label, IDENTITY)
    return out


def _check_builder_applicability(builder, b, p, q):
    if builder == "pq" or builder == "yates":
        return
    if builder == "valiant":
        if (p, q) != (1, 1) or b < 2:
            raise ValueError("valiant needs p = q = 1 and b >= 2")
    elif builder == "p1":
        if p != 1 or q < 1 or b < 2:
            raise ValueError("p1 needs p = 1, q >= 1, b >= 2")
    elif builder == "q1":
        if q != 1 or p < 1 or b < 2:
            raise ValueError("q1 needs q = 1, p >= 1, b >= 2")
    else:
        raise ValueError("unknown builder %r" % builder)


def pair_sum(n, p, q, left_table, right_table, semiring, mode="direct"):
    """Sum of left[X] (x) right[Y] over disjoint pairs, computed by
    summing left over complements first: sum_Y e(Y) (x) right[Y]."""
    _check_disjoint_keys(right_table, n, q)
    complements = disjoint_sum(n, p, q, left_table, semiring, mode=mode)
    total = IDENTITY
    for y_key in sorted(complements, key=lambda s: tuple(sorted(s))):
        term = otimes(
            semiring, complements[y_key], right_table.get(y_key, IDENTITY)
        )
        total = oplus(semiring, total, term)
    return total


def _guard(budget, what):
    if budget > ORACLE_BUDGET:
        raise ScaleGuardError(
            "%s enumeration of %d pairs exceeds budget %d"
            % (what, budget, ORACLE_BUDGET)
        )


def _subsets_of_range(n, size):
    return [frozenset(c) for c in itertools.combinations(range(n), size)]


def _subsets_up_to_range(n, size):
    out = []
    for k in range(min(size, n) + 1):
        out.extend(_subsets_of_range(n, k))
    return out


def oracle_intersection(n, p, q, table, contract):
    """Literal double enumeration of the intersection summation."""
    _check_intersection_keys(table, n, p, q)
    cost = sum(math.comb(n, i) for i in range(min(p, n) + 1)) * sum(
        math.comb(n, j) for j in range(min(q, n) + 1)
    )
    _guard(cost, "intersection oracle")
    x_sets = _subsets_up_to_range(n, p)
    out = {}
    for a_set in _subsets_up_to_range(n, q):
        acc = IDENTITY
        for x_set in x_sets:
            value = table.get((a_set & x_set, x_set))
            if value is not None:
                acc = oplus(contract, acc, value)
        out[a_set] = acc
    return out


def oracle_disjoint(n, p, q, table, contract):
    """Literal double enumeration of the disjoint summation."""
    _check_disjoint_keys(table, n, p)
    cost = math.comb(n, min(p, n)) * math.comb(n, min(q, n))
    _guard(cost, "disjoint oracle")
    x_sets = _subsets_of_range(n, p)
    out = {}
    for y_set in _subsets_of_range(n, q):
        acc = IDENTITY
        for x_set in x_sets:
            if not (x_set & y_set):
                value = table.get(x_set)
                if value is not None:
                    acc = oplus(contract, acc, value)
        out[y_set] = acc
    return out
