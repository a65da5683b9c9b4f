"""Cross-checking driver: random tables, mode agreement, builder
agreement, and multiset instrumentation.  Used by the command line and by
the acceptance tests."""

from __future__ import annotations

import random

from .algebra import (
    CONTRACTS,
    FREE_MULTISET,
    IDENTITY,
    Multiset,
)
from .circuit import InputGate, evaluate, evaluate_gates
from .errors import ScaleGuardError
from .summation import (
    _cached_circuit,
    _subsets_of_range,
    _subsets_up_to_range,
    disjoint_sum,
    intersection_sum,
    oracle_disjoint,
    oracle_intersection,
)
from .universe import Universe

DEFAULT_CONTRACT_NAMES = ("nat-sum", "max", "min-plus", "count-weight", "multiset")


def random_intersection_table(rng, n, p, q, contract, density=0.85):
    table = {}
    for x_set in _subsets_up_to_range(n, p):
        for i_members in _subsets_up_to_range(len(x_set), q):
            x_sorted = sorted(x_set)
            i_set = frozenset(x_sorted[i] for i in i_members)
            if rng.random() < density:
                table[(i_set, x_set)] = contract.sample(rng)
    return table


def random_disjoint_table(rng, n, p, contract, density=0.85):
    table = {}
    for x_set in _subsets_of_range(n, p):
        if rng.random() < density:
            table[x_set] = contract.sample(rng)
    return table


def applicable_builders(n, p, q):
    """Alternative builders usable for a disjoint instance of this shape."""
    b = Universe(n).b
    out = ["yates"]
    if b >= 2 and p == 1 and q == 1:
        out.append("valiant")
    if b >= 2 and p == 1 and q >= 1:
        out.append("p1")
    if b >= 2 and q == 1 and p >= 1:
        out.append("q1")
    return out


def check_intersection_instance(n, p, q, table, contract):
    """Mismatch descriptions between circuit mode, direct mode, and the
    oracle on one intersection instance.  Empty list means agreement."""
    got_circuit = intersection_sum(n, p, q, table, contract, mode="circuit")
    got_direct = intersection_sum(n, p, q, table, contract, mode="direct")
    want = oracle_intersection(n, p, q, table, contract)
    problems = []
    for key in want:
        if got_circuit.get(key, IDENTITY) != want[key]:
            problems.append("circuit vs oracle at %r" % (sorted(key),))
        if got_direct.get(key, IDENTITY) != want[key]:
            problems.append("direct vs oracle at %r" % (sorted(key),))
    return problems


def check_disjoint_instance(n, p, q, table, contract, builders=None):
    """Mismatch descriptions for one disjoint instance across circuit
    mode, direct mode, the requested alternative builders, and the
    oracle."""
    want = oracle_disjoint(n, p, q, table, contract)
    candidates = {
        "pq-circuit": disjoint_sum(n, p, q, table, contract, mode="circuit", builder="pq"),
        "direct": disjoint_sum(n, p, q, table, contract, mode="direct"),
    }
    for name in builders if builders is not None else applicable_builders(n, p, q):
        candidates[name] = disjoint_sum(
            n, p, q, table, contract, mode="circuit", builder=name
        )
    problems = []
    for key in want:
        for name, got in candidates.items():
            if got.get(key, IDENTITY) != want[key]:
                problems.append("%s vs oracle at %r" % (name, sorted(key)))
    return problems


def label_token_assignment(circ):
    """Every input label assigned its own singleton token."""
    return {
        (g.i_label, g.x_label): Multiset.singleton((g.i_label, g.x_label))
        for g in circ.gates
        if isinstance(g, InputGate)
    }


def check_multiset_discipline(kind, b, p, q):
    """Feed singleton tokens through a builder's circuit and demand
    multiplicity one at every gate: no input is ever double counted."""
    circ = _cached_circuit(kind, b, p, q)
    assignment = label_token_assignment(circ)
    values = evaluate_gates(circ, assignment, FREE_MULTISET)
    problems = []
    for i, value in enumerate(values):
        if value is not IDENTITY and value.max_multiplicity() > 1:
            problems.append("%s gate %d multiplicity %d" % (kind, i, value.max_multiplicity()))
    return problems


def check_output_token_sets(b, p, q):
    """The general circuit's output for A must carry exactly the tokens
    (A & X, X) over all at-most-p leaf subsets X."""
    circ = _cached_circuit("pq", b, p, q)
    assignment = label_token_assignment(circ)
    outputs = evaluate(circ, assignment, FREE_MULTISET)
    n = 1 << b
    problems = []
    for label, value in outputs.items():
        a_set = label.member_set()
        want = set()
        for x_set in _subsets_up_to_range(n, p):
            i_set = a_set & x_set
            want.add(
                (
                    label.__class__(b, tuple(sorted(i_set))),
                    label.__class__(b, tuple(sorted(x_set))),
                )
            )
        got = set() if value is IDENTITY else set(value.tokens())
        if got != want or (value is not IDENTITY and value.max_multiplicity() != 1):
            problems.append("output %r token set mismatch" % (sorted(a_set),))
    return problems


def run_verify(n, p, q, trials, seed, builders=None, contract_names=None):
    """Full cross-check; returns (ok, report lines)."""
    names = contract_names or DEFAULT_CONTRACT_NAMES
    lines = []
    ok = True
    builder_list = builders if builders is not None else applicable_builders(n, p, q)
    try:
        for name in names:
            contract = CONTRACTS[name]
            rng = random.Random("%d:%s" % (seed, name))
            bad = 0
            for _ in range(trials):
                g_table = random_intersection_table(rng, n, p, q, contract)
                bad += len(check_intersection_instance(n, p, q, g_table, contract))
                f_table = random_disjoint_table(rng, n, p, contract)
                bad += len(
                    check_disjoint_instance(n, p, q, f_table, contract, builder_list)
                )
            tag = "ok" if bad == 0 else "%d mismatches" % bad
            lines.append(
                "%s: circuit=direct=oracle%s on %d trials: %s"
                % (
                    name,
                    "".join("=" + bname for bname in builder_list),
                    trials,
                    tag,
                )
            )
            ok = ok and bad == 0
    except ScaleGuardError as exc:
        raise
    b = Universe(n).b
    discipline = check_multiset_discipline("pq", b, p, q)
    lines.append(
        "multiset discipline: %s"
        % ("multiplicity 1 at every gate" if not discipline else discipline[0])
    )
    ok = ok and not discipline
    lines.append("PASS" if ok else "FAIL")
    return ok, lines
