"""Certificate verifiers for the three packing problems.

Each verifier returns a :class:`Verdict`; a failing verdict names the first
violated condition and carries a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import InstanceError
from .graphs import (
    ArcPartition,
    Digraph,
    DisjointSet,
    EdgeColoredGraph,
    PairedGraph,
    TreePacking,
)

__all__ = [
    "Verdict",
    "verify_rainbow_packing",
    "verify_digraph_decomposition",
    "verify_parity_packing",
    "forest_violation",
]

OVERLAP = "overlap"
REPEATED_COLOR = "repeated color"
CYCLE = "cycle"
NOT_SPANNING = "not spanning"
UNCOVERED = "uncovered"
BROKEN_PAIR = "broken pair"
IN_DEGREE = "in-degree"
PART_COUNT = "part count"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: str | None = None
    part: int | None = None
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = f" in part {self.part}" if self.part is not None else ""
        text = f"{self.violation}{where}"
        if self.detail:
            text += f": {self.detail}"
        return text


OK = Verdict(True)


def _fail(violation, part=None, witness=None, detail=""):
    return Verdict(False, violation, part, witness, detail)


def _check_indices(parts, count, what):
    for i, part in enumerate(parts):
        for e in part:
            if not 0 <= e < count:
                raise InstanceError(f"part {i} references {what} {e}, outside 0..{count - 1}")


def _first_overlap(parts):
    seen: dict[int, int] = {}
    for i, part in enumerate(parts):
        for e in sorted(part):
            if e in seen:
                return e, seen[e], i
            seen[e] = i
    return None


def _tree_path(vertex_count, edges, chosen, u, v):
    """Edge ids on the path from ``u`` to ``v`` in the forest ``chosen``."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in chosen:
        a, b = edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    via = {u: None}
    stack = [u]
    while stack:
        a = stack.pop()
        for b, e in adj.get(a, ()):
            if b not in via:
                via[b] = (a, e)
                stack.append(b)
    path = []
    node = v
    while via.get(node) is not None:
        node, e = via[node]
        path.append(e)
    return path


def forest_violation(vertex_count, edges, part):
    """Return the edge ids of a cycle inside ``part``, or ``None`` if it is a forest."""
    ds = DisjointSet(vertex_count)
    kept = []
    for e in sorted(part):
        u, v = edges[e]
        if not ds.union(u, v):
            return sorted(_tree_path(vertex_count, edges, kept, u, v) + [e])
        kept.append(e)
    return None


def _unreached(vertex_count, edges, part):
    ds = DisjointSet(vertex_count)
    for e in part:
        ds.union(*edges[e])
    if ds.components <= 1:
        return None
    anchor = ds.find(0)
    return [x for x in range(vertex_count) if ds.find(x) != anchor]


def _spanning_tree_violation(vertex_count, edges, i, part):
    cycle = forest_violation(vertex_count, edges, part)
    if cycle is not None:
        return _fail(CYCLE, i, tuple(cycle), f"edges {cycle} form a cycle")
    missing = _unreached(vertex_count, edges, part)
    if missing is not None:
        return _fail(NOT_SPANNING, i, tuple(missing), f"vertices {missing} not reached from vertex 0")
    return None


def verify_rainbow_packing(g: EdgeColoredGraph, p: TreePacking, require_partition: bool = False,
                           k: int | None = None) -> Verdict:
    """Disjoint rainbow spanning trees; with ``require_partition`` they must also cover E."""
    _check_indices(p.parts, g.edge_count, "edge")
    if k is not None and p.k != k:
        return _fail(PART_COUNT, None, p.k, f"{p.k} parts, expected {k}")
    clash = _first_overlap(p.parts)
    if clash is not None:
        e, a, b = clash
        return _fail(OVERLAP, b, e, f"edge {e} is in parts {a} and {b}")
    for i, part in enumerate(p.parts):
        first: dict[int, int] = {}
        for e in sorted(part):
            c = g.colors[e]
            if c in first:
                return _fail(REPEATED_COLOR, i, (c, first[c], e),
                             f"color {c} on edges {first[c]} and {e}")
            first[c] = e
        bad = _spanning_tree_violation(g.vertex_count, g.edges, i, part)
        if bad is not None:
            return bad
    if require_partition:
        missing = sorted(set(range(g.edge_count)) - p.edges())
        if missing:
            return _fail(UNCOVERED, None, tuple(missing), f"edges {missing} are in no part")
    return OK


def verify_parity_packing(g: PairedGraph, p: TreePacking, require_partition: bool | None = None,
                          k: int | None = None) -> Verdict:
    """Disjoint spanning trees that are unions of whole pairs.

    ``require_partition`` defaults to ``|E| == k (|V| - 1)``.
    """
    _check_indices(p.parts, g.edge_count, "edge")
    if k is not None and p.k != k:
        return _fail(PART_COUNT, None, p.k, f"{p.k} parts, expected {k}")
    if require_partition is None:
        require_partition = g.edge_count == p.k * (g.vertex_count - 1)
    clash = _first_overlap(p.parts)
    if clash is not None:
        e, a, b = clash
        return _fail(OVERLAP, b, e, f"edge {e} is in parts {a} and {b}")
    mate = g.mate()
    for i, part in enumerate(p.parts):
        for e in sorted(part):
            if mate[e] not in part:
                return _fail(BROKEN_PAIR, i, (e, mate[e]),
                             f"edge {e} is present but its mate {mate[e]} is not")
        bad = _spanning_tree_violation(g.vertex_count, g.edges, i, part)
        if bad is not None:
            return bad
    if require_partition:
        missing = sorted(set(range(g.edge_count)) - p.edges())
        if missing:
            return _fail(UNCOVERED, None, tuple(missing), f"edges {missing} are in no part")
    return OK


def verify_digraph_decomposition(d: Digraph, p: ArcPartition, k: int | None = None) -> Verdict:
    """Arc partition into weakly connected spanning parts, each entering every non-root vertex.

    Loops count toward the in-degree of their vertex but never toward connectivity.
    """
    _check_indices(p.parts, d.arc_count, "arc")
    if k is not None and p.k != k:
        return _fail(PART_COUNT, None, p.k, f"{p.k} parts, expected {k}")
    if p.k == 0:
        # zero parts are asked for, so there is nothing to cover (vacuous convention)
        return OK
    clash = _first_overlap(p.parts)
    if clash is not None:
        e, a, b = clash
        return _fail(OVERLAP, b, e, f"arc {e} is in parts {a} and {b}")
    covered = set().union(*p.parts) if p.parts else set()
    missing = sorted(set(range(d.arc_count)) - covered)
    if missing:
        return _fail(UNCOVERED, None, tuple(missing), f"arcs {missing} are in no part")
    for i, part in enumerate(p.parts):
        unreached = _unreached(d.vertex_count, d.arcs, part)
        if unreached is not None:
            detail = "empty part" if not part else f"vertices {unreached} not weakly connected to vertex 0"
            return _fail(NOT_SPANNING, i, tuple(unreached), detail)
        entered = {d.arcs[a][1] for a in part}
        for v in range(d.vertex_count):
            if v != d.root and v not in entered:
                return _fail(IN_DEGREE, i, v, f"vertex {v} has in-degree 0")
    return OK
