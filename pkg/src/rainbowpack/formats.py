"""Line-oriented text formats for instances and certificates.

Every record starts with a header line naming its type.  ``#`` starts a
comment, blank lines are skipped.  An empty part of a packing or arc
partition is written as a single ``-``.

=========  =========================  ==================================
type       header                     body
=========  =========================  ==================================
ecg        ``ecg <n> <m> <colors>``   m lines ``u v color``
dig        ``dig <n> <m> <root>``     m lines ``tail head``
pgr        ``pgr <n> <m>``            m lines ``u v pair``
nae        ``nae <n> <m>``            m lines ``v1 v2 v3`` (1-based)
packing    ``packing <k>``            k lines of edge ids
arcpart    ``arcpart <k>``            k lines of arc ids
assign     ``assign <n>``             one line of n values 0/1
=========  =========================  ==================================
"""

from __future__ import annotations

from typing import Iterator

from .errors import InstanceError, ParseError
from .graphs import (
    ArcPartition,
    Assignment,
    Digraph,
    EdgeColoredGraph,
    NaeFormula,
    PairedGraph,
    TreePacking,
)

__all__ = ["NONE_TOKEN", "serialize", "parse", "parse_as", "significant_lines"]

NONE_TOKEN = "NONE"


def significant_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line_number, tokens)`` for non-blank, comment-stripped lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _ints(tokens, lineno, count=None):
    if count is not None and len(tokens) != count:
        raise ParseError(f"expected {count} fields, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(tokens)!r}", lineno) from None


def _body(lines, lineno, count, what):
    body = lines[1:]
    if len(body) != count:
        where = body[-1][0] if body else lineno
        raise ParseError(f"header announces {count} {what} lines, found {len(body)}", where)
    return body


def _build(factory, lineno, *args):
    try:
        return factory(*args)
    except ParseError:
        raise
    except InstanceError as exc:
        raise ParseError(str(exc), lineno) from None


def _parse_ecg(lines):
    lineno, head = lines[0]
    n, m, colors = _ints(head[1:], lineno, 3)
    edges, cols = [], []
    for ln, toks in _body(lines, lineno, m, "edge"):
        u, v, c = _ints(toks, ln, 3)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", ln)
        if not 0 <= c < colors:
            raise ParseError(f"color {c} out of range 0..{colors - 1}", ln)
        edges.append((u, v))
        cols.append(c)
    g = _build(EdgeColoredGraph, lineno, n, edges, cols)
    if g.color_count != colors:
        raise ParseError(f"header announces {colors} colors, {g.color_count} used", lineno)
    return g


def _parse_dig(lines):
    lineno, head = lines[0]
    n, m, root = _ints(head[1:], lineno, 3)
    arcs = []
    for ln, toks in _body(lines, lineno, m, "arc"):
        t, h = _ints(toks, ln, 2)
        if not (0 <= t < n and 0 <= h < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", ln)
        arcs.append((t, h))
    return _build(Digraph, lineno, n, arcs, root)


def _parse_pgr(lines):
    lineno, head = lines[0]
    n, m = _ints(head[1:], lineno, 2)
    edges, pairs = [], []
    for ln, toks in _body(lines, lineno, m, "edge"):
        u, v, p = _ints(toks, ln, 3)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", ln)
        edges.append((u, v))
        pairs.append(p)
    return _build(PairedGraph, lineno, n, edges, pairs)


def _parse_nae(lines):
    lineno, head = lines[0]
    n, m = _ints(head[1:], lineno, 2)
    clauses = []
    for ln, toks in _body(lines, lineno, m, "clause"):
        c = _ints(toks, ln, 3)
        if any(not 1 <= x <= n for x in c):
            raise ParseError(f"variable id out of range 1..{n}", ln)
        clauses.append(tuple(x - 1 for x in c))
    return _build(NaeFormula, lineno, n, clauses)


def _parse_parts(lines, factory):
    lineno, head = lines[0]
    (k,) = _ints(head[1:], lineno, 1)
    parts = []
    for ln, toks in _body(lines, lineno, k, "part"):
        if toks == ["-"]:
            parts.append(())
            continue
        ids = _ints(toks, ln)
        if any(x < 0 for x in ids):
            raise ParseError("negative index", ln)
        parts.append(ids)
    return factory(parts)


def _parse_assign(lines):
    lineno, head = lines[0]
    (n,) = _ints(head[1:], lineno, 1)
    body = lines[1:]
    if n == 0 and not body:
        return Assignment(())
    if len(body) != 1:
        raise ParseError(f"expected one value line, found {len(body)}", lineno)
    ln, toks = body[0]
    if len(toks) == 1 and n > 1:
        toks = list(toks[0])
    vals = _ints(toks, ln, n)
    if any(v not in (0, 1) for v in vals):
        raise ParseError("assignment values must be 0 or 1", ln)
    return Assignment(tuple(bool(v) for v in vals))


_PARSERS = {
    "ecg": _parse_ecg,
    "dig": _parse_dig,
    "pgr": _parse_pgr,
    "nae": _parse_nae,
    "packing": lambda lines: _parse_parts(lines, TreePacking),
    "arcpart": lambda lines: _parse_parts(lines, ArcPartition),
    "assign": _parse_assign,
}


def parse(text: str):
    """Parse one record, dispatching on its header keyword.

    Returns ``None`` for the bare ``NONE`` marker emitted by solvers.
    """
    lines = list(significant_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, head = lines[0]
    if head == [NONE_TOKEN] and len(lines) == 1:
        return None
    parser = _PARSERS.get(head[0])
    if parser is None:
        raise ParseError(f"unknown header {head[0]!r}", lineno)
    return parser(lines)


def parse_as(text: str, cls):
    """Parse and insist on a given type (``None`` is allowed only for certificates)."""
    obj = parse(text)
    if not isinstance(obj, cls):
        got = "NONE" if obj is None else type(obj).__name__
        raise ParseError(f"expected {cls.__name__}, got {got}")
    return obj


def _fmt_part(part):
    return " ".join(str(x) for x in sorted(part)) if part else "-"


def serialize(obj) -> str:
    """Text form of any instance or certificate type; ``None`` becomes ``NONE``."""
    if obj is None:
        return NONE_TOKEN + "\n"
    out: list[str]
    if isinstance(obj, EdgeColoredGraph):
        out = [f"ecg {obj.vertex_count} {obj.edge_count} {obj.color_count}"]
        out += [f"{u} {v} {c}" for (u, v), c in zip(obj.edges, obj.colors)]
    elif isinstance(obj, Digraph):
        out = [f"dig {obj.vertex_count} {obj.arc_count} {obj.root}"]
        out += [f"{t} {h}" for t, h in obj.arcs]
    elif isinstance(obj, PairedGraph):
        out = [f"pgr {obj.vertex_count} {obj.edge_count}"]
        out += [f"{u} {v} {p}" for (u, v), p in zip(obj.edges, obj.pairs)]
    elif isinstance(obj, NaeFormula):
        out = [f"nae {obj.variable_count} {obj.clause_count}"]
        out += [" ".join(str(x + 1) for x in c) for c in obj.clauses]
    elif isinstance(obj, TreePacking):
        out = [f"packing {obj.k}"] + [_fmt_part(p) for p in obj.parts]
    elif isinstance(obj, ArcPartition):
        out = [f"arcpart {obj.k}"] + [_fmt_part(p) for p in obj.parts]
    elif isinstance(obj, Assignment):
        out = [f"assign {len(obj)}"]
        if len(obj):
            out.append(" ".join("1" if v else "0" for v in obj))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(out) + "\n"
