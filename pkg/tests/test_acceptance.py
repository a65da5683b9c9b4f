"""End-to-end acceptance checks, one test per claim, exact tolerances.

Each test prints a single PASS/FAIL line so a captured run reads as a
checklist.  Everything here is driven through the public API plus the
command line; nothing reaches into private state.
"""

import itertools
import math
import random
import time

from dsum.algebra import (
    COUNT_WEIGHT,
    NAT_SUM,
    WITNESS_MAX,
    WORD_SUM,
    CountingContract,
    Multiset,
    check_axioms,
)
from dsum.apps import (
    Graph,
    featsel_brute_force,
    featsel_precompute,
    featsel_query,
    kpath_count,
    oracle_kpath,
    oracle_permanent,
    permanent,
)
from dsum.builders import (
    build_pq,
    build_valiant,
    build_yates,
    predicted_gate_count,
)
from dsum.circuit import AddGate, InputGate, evaluate, gate_counts
from dsum.cli import main
from dsum.universe import Subset
from dsum.verify import (
    applicable_builders,
    check_multiset_discipline,
    check_output_token_sets,
    run_verify,
)


def _report(tag, ok, detail=""):
    suffix = (" -- " + detail) if detail and not ok else ""
    print("%s: %s%s" % (tag, "PASS" if ok else "FAIL", suffix))
    assert ok, "%s%s" % (tag, suffix)


def _physical_adds(circ):
    return sum(1 for g in circ.gates if isinstance(g, AddGate))


def test_criterion_1_exact_gate_counts():
    start = time.monotonic()
    mismatches = []
    for b in range(1, 5):
        for p in range(4):
            for q in range(4):
                got = gate_counts(build_pq(b, p, q))
                want = predicted_gate_count(b, p, q)
                if got != want:
                    mismatches.append((b, p, q, got.as_tuple(), want.as_tuple()))
    valiant_adds = _physical_adds(build_valiant(3))
    elapsed = time.monotonic() - start
    ok = not mismatches and valiant_adds == 18 and elapsed < 60
    _report(
        "criterion 1 exact gate counts (b<=4, p,q<=3; classic circuit 18 adds)",
        ok,
        "mismatches=%r valiant=%d elapsed=%.1fs" % (mismatches, valiant_adds, elapsed),
    )


def test_criterion_2_size_bound_constant():
    def ratio(b, p, q):
        n = 1 << b
        adds = gate_counts(build_pq(b, p, q)).adds
        return adds / ((n ** p + n ** q) * (1 + b))

    reference = max(ratio(3, p, q) for p in range(3) for q in range(3))
    cap = 1.5 * reference
    violations = [
        (b, p, q, ratio(b, p, q))
        for b in range(1, 6)
        for p in range(3)
        for q in range(3)
        if ratio(b, p, q) > cap
    ]
    _report(
        "criterion 2 size bound adds <= C*(n^p+n^q)*(1+log2 n), C=%.4f" % cap,
        not violations,
        repr(violations),
    )


def test_criterion_3_oracle_equivalence_grid():
    start = time.monotonic()
    failures = []
    for n in range(2, 9):
        for p in range(3):
            for q in range(3):
                ok, lines = run_verify(n, p, q, trials=25, seed=1000 * n + 10 * p + q)
                if not ok:
                    failures.append((n, p, q, lines))
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 300
    _report(
        "criterion 3 oracle equivalence, 25 instances x (n in 2..8, p,q in 0..2) x 5 instances",
        ok,
        "failures=%d elapsed=%.1fs" % (len(failures), elapsed),
    )


def test_criterion_4_nucleation_disjointness():
    problems = []
    for b in range(1, 4):
        for p in range(3):
            for q in range(3):
                kinds = ["pq", "yates"]
                if b >= 2 and p == 1 and q == 1:
                    kinds.append("valiant")
                if b >= 2 and p == 1 and q >= 1:
                    kinds.append("p1")
                if b >= 2 and q == 1 and p >= 1:
                    kinds.append("q1")
                for kind in kinds:
                    problems.extend(check_multiset_discipline(kind, b, p, q))
                problems.extend(check_output_token_sets(b, p, q))
    _report(
        "criterion 4 nucleation disjointness and exact output token sets (b<=3, p,q<=2)",
        not problems,
        repr(problems[:3]),
    )


def test_criterion_5_yates_baseline():
    union_ok = True
    for b in (1, 2, 3):
        n = 1 << b
        circ = build_yates(b, n, n)
        union_ok = union_ok and _physical_adds(circ) == n * (1 << (n - 1))

    yates = build_yates(4, 2, 2)
    pq = build_pq(4, 2, 2)
    rng = random.Random(5)
    assignment = {}
    empty = Subset(4, ())
    for size in (0, 1, 2):
        for members in itertools.combinations(range(16), size):
            assignment[(empty, Subset(4, members))] = rng.randrange(1, 100)
    same_outputs = evaluate(yates, assignment, NAT_SUM) == evaluate(
        pq, assignment, NAT_SUM
    )
    more_adds = _physical_adds(yates) > _physical_adds(pq)
    _report(
        "criterion 5 subset-sweep baseline: 2^(n-1)*n unions, output-equal, strictly larger",
        union_ok and same_outputs and more_adds,
        "unions=%s equal=%s larger=%s" % (union_ok, same_outputs, more_adds),
    )


def test_criterion_6_count_weight_axioms():
    report = check_axioms(COUNT_WEIGHT, trials=10**4, seed=2026)
    _report(
        "criterion 6 count-weight semiring laws, 10^4 seeded trials",
        report.ok,
        repr(report.failures()),
    )


def test_criterion_7_kpath_oracle_agreement():
    start = time.monotonic()
    g = Graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)])
    cycle_ok = kpath_count(g, 0, 2, 2) == (2, 2.0)
    mismatches = 0
    for n in range(2, 9):
        for k in (2, 3, 4):
            rng = random.Random(100 * n + k)
            for _ in range(50):
                pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
                count = rng.randint(0, len(pool))
                edges = [
                    (u, v, float(rng.randint(1, 9)))
                    for u, v in rng.sample(pool, count)
                ]
                graph = Graph(n, edges)
                s, t = rng.sample(range(n), 2)
                if kpath_count(graph, s, t, k) != oracle_kpath(graph, s, t, k):
                    mismatches += 1
    elapsed = time.monotonic() - start
    ok = cycle_ok and mismatches == 0 and elapsed < 120
    _report(
        "criterion 7 k-edge path counts vs exhaustive search, 50 graphs x (n<=8, k in 2..4)",
        ok,
        "cycle=%s mismatches=%d elapsed=%.1fs" % (cycle_ok, mismatches, elapsed),
    )


def test_criterion_8_permanent_oracle_agreement():
    square_ok = permanent([[1, 2], [3, 4]], NAT_SUM) == 10
    mismatches = 0
    for k in (1, 2, 3):
        for n in range(k, 6):
            rng = random.Random(10 * k + n)
            for _ in range(10):
                rows = [[rng.randint(0, 6) for _ in range(n)] for _ in range(k)]
                if permanent(rows, NAT_SUM) != oracle_permanent(rows, NAT_SUM):
                    mismatches += 1
                words = [
                    [Multiset.singleton("r%dc%d" % (i, j)) for j in range(n)]
                    for i in range(k)
                ]
                if permanent(words, WORD_SUM) != oracle_permanent(words, WORD_SUM):
                    mismatches += 1
    _report(
        "criterion 8 rectangular permanent vs enumeration, counting and word products",
        square_ok and mismatches == 0,
        "square=%s mismatches=%d" % (square_ok, mismatches),
    )


def test_criterion_9_featsel_shared_pass():
    n, p, q = 10, 2, 2
    rng = random.Random(99)
    pool = [
        tuple(sorted(c))
        for size in (1, 2)
        for c in itertools.combinations(range(n), size)
    ]
    scores = {key: float(rng.randint(1, 999)) for key in pool}

    counting = CountingContract(WITNESS_MAX)
    table = featsel_precompute(scores, p, q, n=n, contract=counting)
    shared_cost = counting.oplus_calls

    query_mismatches = 0
    for size in range(q + 1):
        for excl in itertools.combinations(range(n), size):
            if featsel_query(table, frozenset(excl)) != featsel_brute_force(
                scores, frozenset(excl)
            ):
                query_mismatches += 1

    brute_cost = 0
    for excl in itertools.combinations(range(n), q):
        counter = CountingContract(WITNESS_MAX)
        featsel_brute_force(scores, frozenset(excl), contract=counter)
        brute_cost += counter.oplus_calls

    ok = query_mismatches == 0 and shared_cost < brute_cost
    _report(
        "criterion 9 feature selection: every query exact, one pass cheaper than 45 scans",
        ok,
        "mismatches=%d shared=%d brute=%d" % (query_mismatches, shared_cost, brute_cost),
    )


def test_bench_reporting_completes(tmp_path):
    csv = tmp_path / "bench.csv"
    code = main(
        ["bench", "--max-b", "4", "--p", "2", "--q", "2", "--csv", str(csv)]
    )
    rows = csv.read_text().strip().splitlines()
    pq_adds = [
        int(r.split(",")[5]) for r in rows[1:] if r.split(",")[3] == "pq"
    ]
    ok = (
        code == 0
        and rows[0] == "b,p,q,builder,inputs,adds,outputs,predicted_adds,build_ms"
        and pq_adds == sorted(pq_adds)
        and len(pq_adds) == 4
    )
    _report("bench reporting: CSV complete with monotone gate growth", ok)
