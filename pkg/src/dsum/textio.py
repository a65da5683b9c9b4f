"""Text formats: subsets, per-instance values, tables, graphs, matrices,
score files.  Subsets are comma-separated decimal element indices with "-"
for the empty set.  Lines starting with "#" and blank lines are skipped
in all file formats."""

from __future__ import annotations

import re

from .algebra import IDENTITY, Multiset
from .errors import FormatError

_TOKEN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def format_subset(elements):
    elems = sorted(elements)
    if not elems:
        return "-"
    return ",".join(str(e) for e in elems)


def parse_subset(text):
    text = text.strip()
    if text == "-":
        return frozenset()
    try:
        elems = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise FormatError("bad subset %r" % text) from exc
    if any(e < 0 for e in elems):
        raise FormatError("negative element in %r" % text)
    out = frozenset(elems)
    if len(out) != len(elems):
        raise FormatError("repeated element in %r" % text)
    return out


def _format_float(x):
    return "%g" % x


def _parse_float(text):
    try:
        return float(text)
    except ValueError as exc:
        raise FormatError("bad number %r" % text) from exc


def _format_multiset(value):
    if len(value) == 0:
        return "0"
    parts = []
    for token, mult in value.items():
        if not isinstance(token, str):
            raise FormatError("only string tokens render to text")
        word = token if token else "1"
        parts.append(word if mult == 1 else "%s^%d" % (word, mult))
    return "+".join(parts)


def _parse_multiset(text, allow_empty_word):
    text = text.strip()
    if text == "0":
        return Multiset()
    counts = {}
    for part in text.split("+"):
        part = part.strip()
        if "^" in part:
            word, _, mult_text = part.rpartition("^")
            try:
                mult = int(mult_text)
            except ValueError as exc:
                raise FormatError("bad multiplicity in %r" % part) from exc
        else:
            word, mult = part, 1
        if word == "1" and allow_empty_word:
            word = ""
        elif not _TOKEN.match(word):
            raise FormatError("bad token %r" % word)
        if mult < 1:
            raise FormatError("multiplicity must be positive in %r" % part)
        counts[word] = counts.get(word, 0) + mult
    return Multiset(counts)


def render_value(contract_name, value):
    if value is IDENTITY:
        return "empty"
    if contract_name == "nat-sum":
        return str(value)
    if contract_name in ("max", "min-plus"):
        return _format_float(value)
    if contract_name == "count-weight":
        return "%d,%s" % (value[0], _format_float(value[1]))
    if contract_name in ("multiset", "word-sum"):
        return _format_multiset(value)
    if contract_name == "witness-max":
        return "%s@%s" % (_format_float(value[0]), format_subset(value[1]))
    raise FormatError("no text form for instance %r" % contract_name)


def parse_value(contract_name, text):
    text = text.strip()
    if contract_name == "nat-sum":
        try:
            value = int(text)
        except ValueError as exc:
            raise FormatError("bad natural %r" % text) from exc
        if value < 0:
            raise FormatError("negative count %r" % text)
        return value
    if contract_name in ("max", "min-plus"):
        return _parse_float(text)
    if contract_name == "count-weight":
        count_text, sep, weight_text = text.partition(",")
        if not sep:
            raise FormatError("count-weight values look like count,weight")
        try:
            count = int(count_text)
        except ValueError as exc:
            raise FormatError("bad count %r" % count_text) from exc
        if count < 0:
            raise FormatError("negative count %r" % count_text)
        return (count, _parse_float(weight_text))
    if contract_name == "multiset":
        return _parse_multiset(text, allow_empty_word=False)
    if contract_name == "word-sum":
        return _parse_multiset(text, allow_empty_word=True)
    if contract_name == "witness-max":
        score_text, sep, witness_text = text.partition("@")
        if not sep:
            raise FormatError("witness-max values look like score@subset")
        return (_parse_float(score_text), tuple(sorted(parse_subset(witness_text))))
    raise FormatError("no text form for instance %r" % contract_name)


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_input_table(text, contract_name):
    """Returns ("intersection", {(I, X): value}) or ("disjoint",
    {X: value}) depending on whether lines carry an I part."""
    kind = None
    table = {}
    for lineno, line in _content_lines(text):
        left, sep, value_text = line.rpartition(":")
        if not sep:
            raise FormatError("line %d: missing ':'" % lineno)
        value = parse_value(contract_name, value_text)
        if "|" in left:
            i_text, _, x_text = left.partition("|")
            line_kind = "intersection"
            key = (parse_subset(i_text), parse_subset(x_text))
            if not key[0] <= key[1]:
                raise FormatError("line %d: I not inside X" % lineno)
        else:
            line_kind = "disjoint"
            key = parse_subset(left)
        if kind is None:
            kind = line_kind
        elif kind != line_kind:
            raise FormatError("line %d: mixed table forms" % lineno)
        if key in table:
            raise FormatError("line %d: duplicate key" % lineno)
        table[key] = value
    if kind is None:
        raise FormatError("empty table")
    return kind, table


def render_output_table(table, contract_name):
    lines = []
    for key in sorted(table, key=lambda s: tuple(sorted(s))):
        lines.append("%s : %s" % (format_subset(key), render_value(contract_name, table[key])))
    return "\n".join(lines) + "\n"


def parse_graph(text):
    from .apps import Graph

    rows = list(_content_lines(text))
    if not rows:
        raise FormatError("empty graph file")
    head = rows[0][1].split()
    if len(head) not in (2, 3):
        raise FormatError("graph header is 'n m [directed]'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("bad graph header") from exc
    directed = False
    if len(head) == 3:
        if head[2] != "directed":
            raise FormatError("graph header flag must be 'directed'")
        directed = True
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError("line %d: edge lines are 'u v w'" % lineno)
        try:
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError as exc:
            raise FormatError("line %d: bad edge" % lineno) from exc
    if len(edges) != m:
        raise FormatError("header promises %d edges, found %d" % (m, len(edges)))
    try:
        return Graph(n, edges, directed=directed)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def parse_matrix(text, contract_name):
    rows = list(_content_lines(text))
    if not rows:
        raise FormatError("empty matrix file")
    head = rows[0][1].split()
    if len(head) != 2:
        raise FormatError("matrix header is 'k n'")
    try:
        k, n = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("bad matrix header") from exc
    body = rows[1:]
    if len(body) != k:
        raise FormatError("header promises %d rows, found %d" % (k, len(body)))
    matrix = []
    for lineno, line in body:
        entries = line.split()
        if len(entries) != n:
            raise FormatError("line %d: expected %d entries" % (lineno, n))
        matrix.append([parse_value(contract_name, e) for e in entries])
    return matrix


def parse_scores(text):
    scores = {}
    for lineno, line in _content_lines(text):
        left, sep, value_text = line.rpartition(":")
        if not sep:
            raise FormatError("line %d: missing ':'" % lineno)
        key = parse_subset(left)
        if key in scores:
            raise FormatError("line %d: duplicate subset" % lineno)
        scores[key] = _parse_float(value_text)
    if not scores:
        raise FormatError("empty score file")
    return scores
