"""Monotone summation circuits over a 2^b-leaf universe.

Gates are either inputs, labelled by a pair (intersection part I, leaf set
X) with I a subset of X, or strictly binary sum gates referencing earlier
gate indices.  Outputs name gates by leaf subsets.  Evaluation plugs an
assignment of input labels to semigroup values; labels without an
assignment contribute the adjoined identity, which is how phantom padding
and sparse tables are absorbed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import IDENTITY, oplus
from .errors import CircuitFormatError
from .universe import Subset


@dataclass(frozen=True)
class InputGate:
    i_label: Subset
    x_label: Subset


@dataclass(frozen=True)
class AddGate:
    left: int
    right: int


@dataclass(frozen=True)
class Circuit:
    b: int
    p: int
    q: int
    gates: tuple
    outputs: dict  # Subset -> gate index; insertion order is canonical

    def input_index(self):
        """Map from (I, X) label pair to gate index."""
        return {
            (g.i_label, g.x_label): i
            for i, g in enumerate(self.gates)
            if isinstance(g, InputGate)
        }


@dataclass(frozen=True)
class GateCounts:
    inputs: int
    adds: int
    outputs: int

    def as_tuple(self):
        return (self.inputs, self.adds, self.outputs)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str


def evaluate_gates(circuit, assignment, contract, threads=1):
    """Per-gate values for an assignment {(I, X): value}; unassigned input
    labels evaluate to IDENTITY.  ``threads > 1`` evaluates gates grouped
    by dependency depth concurrently; results are identical by
    construction."""
    gates = circuit.gates
    values = [IDENTITY] * len(gates)

    def eval_one(i):
        g = gates[i]
        if isinstance(g, InputGate):
            values[i] = assignment.get((g.i_label, g.x_label), IDENTITY)
        else:
            values[i] = oplus(contract, values[g.left], values[g.right])

    if threads <= 1:
        for i in range(len(gates)):
            eval_one(i)
        return values

    from concurrent.futures import ThreadPoolExecutor

    depth = [0] * len(gates)
    groups = {}
    for i, g in enumerate(gates):
        d = 0 if isinstance(g, InputGate) else 1 + max(depth[g.left], depth[g.right])
        depth[i] = d
        groups.setdefault(d, []).append(i)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for d in sorted(groups):
            list(pool.map(eval_one, groups[d]))
    return values


def evaluate(circuit, assignment, contract, threads=1):
    """Output table {A: value}; IDENTITY marks an empty sum."""
    values = evaluate_gates(circuit, assignment, contract, threads=threads)
    return {label: values[idx] for label, idx in circuit.outputs.items()}


def validate(circuit):
    """Structural check: acyclic forward references, strictly binary sums,
    label bounds, output indices in range."""
    seen_inputs = set()
    for i, g in enumerate(circuit.gates):
        if isinstance(g, InputGate):
            if g.i_label.level != circuit.b or g.x_label.level != circuit.b:
                return ValidationReport(False, "gate %d: label level mismatch" % i)
            if g.x_label.size() > circuit.p:
                return ValidationReport(
                    False, "gate %d: leaf set larger than p" % i
                )
            if g.i_label.size() > circuit.q:
                return ValidationReport(
                    False, "gate %d: intersection part larger than q" % i
                )
            if not g.i_label.member_set() <= g.x_label.member_set():
                return ValidationReport(
                    False, "gate %d: intersection part not inside leaf set" % i
                )
            key = (g.i_label, g.x_label)
            if key in seen_inputs:
                return ValidationReport(False, "gate %d: duplicate input" % i)
            seen_inputs.add(key)
        elif isinstance(g, AddGate):
            if not (0 <= g.left < i and 0 <= g.right < i):
                return ValidationReport(False, "gate %d: operand order" % i)
        else:
            return ValidationReport(False, "gate %d: unknown kind" % i)
    for label, idx in circuit.outputs.items():
        if not 0 <= idx < len(circuit.gates):
            return ValidationReport(False, "output %r: index out of range" % (label,))
        if label.level != circuit.b:
            return ValidationReport(False, "output %r: level mismatch" % (label,))
    return ValidationReport(True, "ok")


def gate_counts(circuit):
    """Exact counts by kind.  Accounting treats every output label as one
    sum gate: a label that aliases an input gate (the degenerate p = 0
    shape, where no second operand exists) still counts as an add."""
    inputs = 0
    adds = 0
    for g in circuit.gates:
        if isinstance(g, InputGate):
            inputs += 1
        else:
            adds += 1
    aliased = sum(
        1
        for idx in circuit.outputs.values()
        if isinstance(circuit.gates[idx], InputGate)
    )
    return GateCounts(inputs, adds + aliased, len(circuit.outputs))


def _subset_text(subset):
    if not subset.members:
        return "-"
    return ",".join(str(m) for m in subset.members)


def _parse_subset_text(text, level):
    text = text.strip()
    if text == "-":
        return Subset(level, ())
    try:
        members = tuple(sorted(int(t) for t in text.split(",")))
    except ValueError as exc:
        raise CircuitFormatError("bad subset text %r" % text) from exc
    return Subset(level, members)


def serialize(circuit):
    """Deterministic JSON bytes; the same circuit always serializes to the
    same bytes."""
    gates = []
    for g in circuit.gates:
        if isinstance(g, InputGate):
            gates.append(["in", _subset_text(g.i_label), _subset_text(g.x_label)])
        else:
            gates.append(["add", g.left, g.right])
    outputs = {_subset_text(label): idx for label, idx in circuit.outputs.items()}
    doc = {
        "format": "dsum-circuit",
        "b": circuit.b,
        "p": circuit.p,
        "q": circuit.q,
        "gates": gates,
        "outputs": outputs,
    }
    return json.dumps(doc, separators=(",", ":")).encode("ascii")


def deserialize(data):
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CircuitFormatError("not a circuit document: %s" % exc) from exc
    try:
        if doc.get("format") != "dsum-circuit":
            raise CircuitFormatError("unrecognized format tag")
        b, p, q = int(doc["b"]), int(doc["p"]), int(doc["q"])
        gates = []
        for row in doc["gates"]:
            if row[0] == "in":
                gates.append(
                    InputGate(_parse_subset_text(row[1], b), _parse_subset_text(row[2], b))
                )
            elif row[0] == "add":
                gates.append(AddGate(int(row[1]), int(row[2])))
            else:
                raise CircuitFormatError("unknown gate kind %r" % (row[0],))
        outputs = {
            _parse_subset_text(key, b): int(idx)
            for key, idx in doc["outputs"].items()
        }
    except CircuitFormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CircuitFormatError("malformed circuit document: %s" % exc) from exc
    circuit = Circuit(b, p, q, tuple(gates), outputs)
    report = validate(circuit)
    if not report.ok:
        raise CircuitFormatError("invalid circuit: %s" % report.message)
    return circuit


def to_dot(circuit):
    """Graphviz rendering; one node per gate, outputs annotated in place."""
    by_index = {}
    for label, idx in circuit.outputs.items():
        by_index.setdefault(idx, []).append(_subset_text(label))
    lines = ["digraph circuit {", "  rankdir=BT;"]
    for i, g in enumerate(circuit.gates):
        if isinstance(g, InputGate):
            text = "(%s | %s)" % (_subset_text(g.i_label), _subset_text(g.x_label))
            shape = "box"
        else:
            text = "+"
            shape = "ellipse"
        if i in by_index:
            text += "\\nout " + "; ".join(sorted(by_index[i]))
        lines.append('  g%d [shape=%s,label="%s"];' % (i, shape, text))
    for i, g in enumerate(circuit.gates):
        if isinstance(g, AddGate):
            lines.append("  g%d -> g%d;" % (g.left, i))
            lines.append("  g%d -> g%d;" % (g.right, i))
    lines.append("}")
    return "\n".join(lines) + "\n"
