"""Command line entry point.

Exit codes: 0 success, 1 usage or failed verification, 2 malformed input,
3 numeric overflow or an oracle scale guard.
"""

from __future__ import annotations

import argparse
import sys
import time

from .algebra import CONTRACTS, IDENTITY
from .apps import (
    featsel_precompute,
    featsel_query,
    kpath_count,
    permanent,
)
from .builders import (
    build_p1,
    build_pq,
    build_q1,
    build_valiant,
    build_yates,
    predicted_gate_count,
)
from .circuit import deserialize, evaluate, gate_counts, serialize, to_dot, validate
from .errors import FormatError, ScaleGuardError
from .summation import intersection_sum
from .textio import (
    format_subset,
    parse_graph,
    parse_input_table,
    parse_matrix,
    parse_scores,
    parse_subset,
    render_output_table,
    render_value,
)
from .universe import Universe
from .verify import run_verify


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_circuit(builder, universe, p, q):
    b = universe.b
    if builder == "pq":
        return build_pq(b, p, q)
    if builder == "valiant":
        if (p, q) != (1, 1):
            raise UsageError("builder valiant needs p = q = 1")
        return build_valiant(b)
    if builder == "p1":
        if p != 1:
            raise UsageError("builder p1 needs p = 1")
        return build_p1(b, q)
    if builder == "q1":
        if q != 1:
            raise UsageError("builder q1 needs q = 1")
        return build_q1(b, p)
    if builder == "yates":
        return build_yates(b, p, q)
    raise UsageError("unknown builder %r" % builder)


def _cmd_build(args):
    universe = Universe(args.n)
    try:
        circ = _build_circuit(args.builder, universe, args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    counts = gate_counts(circ)
    if args.stats:
        print(
            "b=%d inputs=%d adds=%d outputs=%d"
            % (circ.b, counts.inputs, counts.adds, counts.outputs)
        )
        if args.builder == "pq":
            predicted = predicted_gate_count(circ.b, args.p, args.q)
            print(
                "predicted inputs=%d adds=%d outputs=%d"
                % (predicted.inputs, predicted.adds, predicted.outputs)
            )
            if counts != predicted:
                print("MISMATCH: actual counts differ from prediction")
                return 1
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(serialize(circ))
    if args.dot:
        with open(args.dot, "w") as handle:
            handle.write(to_dot(circ))
    if not (args.stats or args.out or args.dot):
        print(
            "built %s circuit: b=%d inputs=%d adds=%d outputs=%d"
            % (args.builder, circ.b, counts.inputs, counts.adds, counts.outputs)
        )
    return 0


def _read(path):
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as exc:
        raise FormatError("cannot read %s: %s" % (path, exc))


def _cmd_eval(args):
    contract = CONTRACTS.get(args.semiring)
    if contract is None:
        raise UsageError("unknown instance %r" % args.semiring)
    circ = deserialize(_read(args.circuit))
    report = validate(circ)
    if not report.ok:
        raise FormatError("invalid circuit: %s" % report.message)
    kind, table = parse_input_table(
        _read(args.input).decode("utf-8"), args.semiring
    )
    n = args.n if args.n is not None else 1 << circ.b
    universe = Universe(n)
    if universe.b != circ.b:
        raise UsageError("--n %d does not fit a height-%d circuit" % (n, circ.b))
    if kind == "disjoint":
        table = {(frozenset(), key): value for key, value in table.items()}
    assignment = {}
    try:
        for (i_part, x_part), value in table.items():
            assignment[
                (universe.leaf_subset(i_part), universe.leaf_subset(x_part))
            ] = value
    except ValueError as exc:
        raise FormatError(str(exc))
    known = circ.input_index()
    for label in assignment:
        if label not in known:
            raise FormatError(
                "table entry (%s | %s) does not label any input of this circuit"
                % (
                    ",".join(map(str, label[0].members)) or "-",
                    ",".join(map(str, label[1].members)) or "-",
                )
            )
    if args.direct:
        lifted = {
            (label_i.member_set(), label_x.member_set()): value
            for (label_i, label_x), value in assignment.items()
        }
        try:
            out = intersection_sum(
                n, circ.p, circ.q, lifted, contract, mode="direct"
            )
        except ValueError as exc:
            raise FormatError(str(exc))
    else:
        values = evaluate(circ, assignment, contract, threads=args.threads)
        out = {
            label.member_set(): value
            for label, value in values.items()
            if not label.members or label.members[-1] < n
        }
    text = render_output_table(out, args.semiring)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args):
    ok, lines = run_verify(
        args.n,
        args.p,
        args.q,
        args.trials,
        args.seed,
        builders=[args.builder] if args.builder else None,
    )
    for line in lines:
        print(line)
    return 0 if ok else 1


def _cmd_bench(args):
    rows = ["b,p,q,builder,inputs,adds,outputs,predicted_adds,build_ms"]
    for b in range(1, args.max_b + 1):
        for builder in ("pq", "yates"):
            start = time.perf_counter()
            if builder == "pq":
                circ = build_pq(b, args.p, args.q)
            else:
                circ = build_yates(b, args.p, args.q)
            elapsed = (time.perf_counter() - start) * 1000.0
            counts = gate_counts(circ)
            predicted = (
                str(predicted_gate_count(b, args.p, args.q).adds)
                if builder == "pq"
                else ""
            )
            rows.append(
                "%d,%d,%d,%s,%d,%d,%d,%s,%.2f"
                % (
                    b,
                    args.p,
                    args.q,
                    builder,
                    counts.inputs,
                    counts.adds,
                    counts.outputs,
                    predicted,
                    elapsed,
                )
            )
    text = "\n".join(rows) + "\n"
    if args.csv:
        with open(args.csv, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_kpath(args):
    graph = parse_graph(_read(args.graph).decode("utf-8"))
    if args.directed and not graph.directed:
        raise UsageError("graph file is undirected; omit --directed or fix the file")
    try:
        count, weight = kpath_count(graph, args.s, args.t, args.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    if count == 0:
        print("no path")
    else:
        print("count=%d weight=%g" % (count, weight))
    return 0


def _cmd_permanent(args):
    contract = CONTRACTS.get(args.semiring)
    if contract is None or not hasattr(contract, "otimes"):
        raise UsageError("permanent needs a semiring instance")
    matrix = parse_matrix(_read(args.matrix).decode("utf-8"), args.semiring)
    try:
        value = permanent(matrix, contract)
    except ValueError as exc:
        raise FormatError(str(exc))
    print(render_value(args.semiring, value))
    return 0


def _cmd_featsel(args):
    scores = parse_scores(_read(args.scores).decode("utf-8"))
    try:
        table = featsel_precompute(scores, args.p, args.q, n=args.n)
    except ValueError as exc:
        raise FormatError(str(exc))
    for raw in sys.stdin:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            answer = featsel_query(table, parse_subset(line))
        except (FormatError, ValueError):
            print("error")
            continue
        if answer is None:
            print("empty")
        else:
            print("%g : %s" % (answer[0], format_subset(answer[1])))
    return 0


def _make_parser():
    parser = _Parser(prog="dsum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="construct a circuit")
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--p", type=int, required=True)
    build.add_argument("--q", type=int, required=True)
    build.add_argument(
        "--builder",
        default="pq",
        choices=["pq", "valiant", "p1", "q1", "yates"],
    )
    build.add_argument("--out")
    build.add_argument("--dot")
    build.add_argument("--stats", action="store_true")
    build.set_defaults(func=_cmd_build)

    evalp = sub.add_parser("eval", help="evaluate a serialized circuit")
    evalp.add_argument("--circuit", required=True)
    evalp.add_argument("--input", required=True)
    evalp.add_argument("--semiring", required=True, choices=sorted(CONTRACTS))
    evalp.add_argument("--n", type=int)
    evalp.add_argument("--out")
    evalp.add_argument("--direct", action="store_true")
    evalp.add_argument("--threads", type=int, default=1)
    evalp.set_defaults(func=_cmd_eval)

    verify = sub.add_parser("verify", help="cross-check modes and builders")
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--p", type=int, required=True)
    verify.add_argument("--q", type=int, required=True)
    verify.add_argument("--trials", type=int, default=10)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--builder", choices=["valiant", "p1", "q1", "yates"], default=None
    )
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="gate counts and build times")
    bench.add_argument("--max-b", type=int, required=True)
    bench.add_argument("--p", type=int, required=True)
    bench.add_argument("--q", type=int, required=True)
    bench.add_argument("--csv")
    bench.set_defaults(func=_cmd_bench)

    kpath = sub.add_parser("kpath", help="count maximum-weight k-edge paths")
    kpath.add_argument("--graph", required=True)
    kpath.add_argument("--s", type=int, required=True)
    kpath.add_argument("--t", type=int, required=True)
    kpath.add_argument("--k", type=int, required=True)
    kpath.add_argument("--directed", action="store_true")
    kpath.set_defaults(func=_cmd_kpath)

    perm = sub.add_parser("permanent", help="rectangular matrix permanent")
    perm.add_argument("--matrix", required=True)
    perm.add_argument(
        "--semiring",
        default="nat-sum",
        choices=["nat-sum", "min-plus", "count-weight", "word-sum"],
    )
    perm.set_defaults(func=_cmd_permanent)

    featsel = sub.add_parser(
        "featsel", help="precompute best disjoint feature subsets"
    )
    featsel.add_argument("--scores", required=True)
    featsel.add_argument("--p", type=int, required=True)
    featsel.add_argument("--q", type=int, required=True)
    featsel.add_argument("--n", type=int)
    featsel.set_defaults(func=_cmd_featsel)

    return parser


def main(argv=None):
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except FormatError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except (OverflowError, ScaleGuardError) as exc:
        print("numeric error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
