"""Reading and writing delegation graphs.

Two input formats are supported.

JSON::

    {"nodes": [{"id": "A", "votes": true}, ...],
     "delegations": [{"from": "A", "to": "B", "weight": 0.5}, ...]}

``weight`` is optional; it may also be a ``"p/q"`` string for an exact
fraction.

Edge list (UTF-8 text, one statement per line, ``#`` starts a comment)::

    voter A
    node B
    B -> A          # unweighted
    B -> C 1/2      # weighted

Both go through :func:`~liquidtally.graph.build_graph`, so the usual
validation errors apply after parsing succeeds.
"""

import enum
import json
from fractions import Fraction

from .errors import ParseError
from .graph import WeightMode, build_graph


class InputFormat(str, enum.Enum):
    JSON = "json"
    EDGELIST = "edgelist"


def _weight(tok, line=None):
    if isinstance(tok, bool):
        raise ParseError(f"weight must be a number, got {tok!r}", line)
    if isinstance(tok, (int, float)):
        return tok
    if isinstance(tok, str):
        try:
            return Fraction(tok) if "/" in tok else float(tok)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"bad weight {tok!r}", line)


def _decode(data):
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    return data


def sniff_format(text):
    return InputFormat.JSON if text.lstrip().startswith("{") else InputFormat.EDGELIST


def parse_input(data, format=None):
    """Parse bytes or text into a :class:`~liquidtally.graph.DelegationGraph`.

    ``format=None`` guesses from the first non-blank character.
    """
    text = _decode(data)
    fmt = InputFormat(format) if format is not None else sniff_format(text)
    if fmt is InputFormat.JSON:
        nodes, edges = _parse_json(text)
    else:
        nodes, edges = _parse_edgelist(text)
    if not nodes:
        raise ParseError("no nodes")
    return build_graph(nodes, edges)


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{exc.msg} (column {exc.colno})", exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    nodes = []
    for i, item in enumerate(doc.get("nodes") or []):
        if not isinstance(item, dict) or "id" not in item:
            raise ParseError(f"nodes[{i}] must be an object with an 'id'")
        votes = item.get("votes", False)
        if not isinstance(votes, bool):
            raise ParseError(f"nodes[{i}].votes must be true or false")
        nodes.append((item["id"], votes))
    edges = []
    for i, item in enumerate(doc.get("delegations") or []):
        if not isinstance(item, dict) or "from" not in item or "to" not in item:
            raise ParseError(f"delegations[{i}] needs 'from' and 'to'")
        w = item.get("weight")
        edges.append((item["from"], item["to"], None if w is None else _weight(w)))
    return nodes, edges


def _parse_edgelist(text):
    nodes, edges = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) >= 3 and toks[1] == "->":
            if len(toks) > 4:
                raise ParseError(f"trailing tokens {toks[4:]}", lineno)
            w = _weight(toks[3], lineno) if len(toks) == 4 else None
            edges.append((toks[0], toks[2], w))
        elif len(toks) == 2 and toks[0] in ("voter", "node"):
            nodes.append((toks[1], toks[0] == "voter"))
        else:
            raise ParseError(f"cannot parse {line.strip()!r}", lineno)
    return nodes, edges


def _emit_weight(w):
    if isinstance(w, Fraction):
        return w if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return w


def dump_json(graph):
    """Serialise ``graph`` so that :func:`parse_input` returns an equal graph."""
    explicit = graph.weight_mode is WeightMode.EXPLICIT
    doc = {
        "nodes": [{"id": v.id, "votes": v.is_voter} for v in graph.nodes],
        "delegations": [
            {"from": e.source, "to": e.target, **({"weight": _emit_weight(e.weight)} if explicit else {})}
            for e in graph.edges
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True, default=int) + "\n"


def dump_edgelist(graph):
    explicit = graph.weight_mode is WeightMode.EXPLICIT
    lines = [f"{'voter' if v.is_voter else 'node'} {v.id}" for v in graph.nodes]
    for e in graph.edges:
        tail = f" {_emit_weight(e.weight)}" if explicit else ""
        lines.append(f"{e.source} -> {e.target}{tail}")
    return "\n".join(lines) + "\n"


def to_dot(graph):
    """Graphviz DOT text; voters are filled green, non-voters blue."""
    lines = ["digraph delegation {", "  node [style=filled];"]
    for v in graph.nodes:
        color = "green" if v.is_voter else "blue"
        lines.append(f"  {json.dumps(v.id)} [fillcolor={color}];")
    for e in graph.edges:
        label = _emit_weight(e.weight)
        if isinstance(label, float):
            label = f"{label:.6g}"
        lines.append(f"  {json.dumps(e.source)} -> {json.dumps(e.target)} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
