"""Gadget reductions between the packing problems, with solution mappers.

* monotone NAE-3SAT (each variable in exactly 4 clauses) -> two rainbow spanning trees
* two rainbow spanning trees -> decomposition of a digraph into two weakly
  connected spanning parts with positive in-degree
* two rainbow spanning trees -> two parity spanning trees

Every reduction returns the target instance together with a map object that
records where each gadget landed.  Maps are plain data; the mappers only need
the map and a certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InstanceError, ParseError, PreconditionError, SizeError, SoundnessError
from .formats import significant_lines
from .graphs import (
    ArcPartition,
    Assignment,
    Digraph,
    EdgeColoredGraph,
    NaeFormula,
    PairedGraph,
    TreePacking,
)
from .matroid import GraphicMatroid, matroid_union
from .verify import verify_digraph_decomposition, verify_parity_packing, verify_rainbow_packing

__all__ = [
    "Nae2RstMap",
    "Rst2DigMap",
    "Rst2ParityMap",
    "reduce_nae_to_rst",
    "assignment_to_packing",
    "packing_to_assignment",
    "orient_indegree_two",
    "reduce_rst_to_digraph",
    "packing_to_arc_partition",
    "arc_partition_to_packing",
    "reduce_rst_to_parity",
    "parity_packing_maps",
    "nae_bruteforce",
    "nae_solutions",
    "NAE_CAP",
    "serialize_map",
    "parse_map",
]

#: Largest variable count accepted by the exhaustive NAE solver.
NAE_CAP = 24

# edge roles inside one (variable, occurrence) block
BLOCK_ROLES = ("ru1", "ru2", "uv", "uw", "uz", "vw", "vz", "wz", "zc", "cc")
# color classes owned by one block: root pair, then the four gadget classes
CLASS_ROLES = ("root", "wz|zc", "vz|uv+", "uz|vw", "uw|cc")
TRUE_EDGES = ("uw", "uz", "vz", "zc")
FALSE_EDGES = ("uv", "vw", "wz", "cc")


# --------------------------------------------------------------------------- NAE -> rainbow

@dataclass(frozen=True)
class Nae2RstMap:
    """Layout of the NAE gadget graph.

    ``blocks[i][p]`` describes occurrence ``p`` (0-based) of variable ``i``:
    vertex ids ``u v w z``, edge ids per :data:`BLOCK_ROLES`, the clause slot
    ``(j, q)`` that ``z`` is joined to, and color ids per :data:`CLASS_ROLES`.
    """

    formula: NaeFormula
    graph: EdgeColoredGraph
    root: int
    blocks: tuple
    clause_vertices: tuple[tuple[int, int, int], ...]
    triangle_edges: tuple[tuple[int, int, int], ...]

    kind = "nae2rst"

    def zc_edges(self, i: int) -> list[int]:
        return [self.blocks[i][p]["edges"]["zc"] for p in range(4)]


def _input_verdict(check, *args, **kw):
    # ids outside the instance mean the certificate belongs to some other instance
    try:
        return check(*args, **kw)
    except InstanceError as exc:
        raise PreconditionError(f"certificate does not fit this instance: {exc}") from None


def _require_exactly4(f: NaeFormula):
    problem = f.exactly4_problem()
    if problem is not None:
        raise InstanceError(problem)


def reduce_nae_to_rst(f: NaeFormula) -> tuple[EdgeColoredGraph, Nae2RstMap]:
    """Rainbow instance that splits into two rainbow spanning trees iff ``f`` is NAE-satisfiable.

    Vertex layout: root 0, then per variable and occurrence the K4 vertices
    ``u v w z``, then one triangle per clause.  Occurrences of a variable are
    ordered by clause index, then position in the clause; occurrence indices
    and triangle positions wrap cyclically.
    """
    _require_exactly4(f)
    n, m = f.variable_count, f.clause_count
    occ = f.occurrences()
    root = 0
    nxt = 1
    verts = []
    for i in range(n):
        row = []
        for p in range(4):
            row.append(tuple(range(nxt, nxt + 4)))
            nxt += 4
        verts.append(row)
    cverts = []
    for j in range(m):
        cverts.append(tuple(range(nxt, nxt + 3)))
        nxt += 3
    vertex_count = nxt

    edges: list[tuple[int, int]] = []

    def add(u, v):
        edges.append((u, v))
        return len(edges) - 1

    block_edges = []
    for i in range(n):
        row = []
        for p in range(4):
            u, v, w, z = verts[i][p]
            j, q = occ[i][p]
            ids = {
                "ru1": add(root, u), "ru2": add(root, u),
                "uv": add(u, v), "uw": add(u, w), "uz": add(u, z),
                "vw": add(v, w), "vz": add(v, z), "wz": add(w, z),
                "zc": add(z, cverts[j][q]),
            }
            row.append(ids)
        block_edges.append(row)
    tri = []
    for j in range(m):
        c = cverts[j]
        tri.append(tuple(add(c[q], c[(q + 1) % 3]) for q in range(3)))
    for i in range(n):
        for p in range(4):
            j, q = occ[i][p]
            block_edges[i][p]["cc"] = tri[j][q]

    colors = [-1] * len(edges)
    block_classes = []
    cid = 0
    for i in range(n):
        row = []
        for p in range(4):
            b = block_edges[i][p]
            b_next = block_edges[i][(p + 1) % 4]
            members = [
                (b["ru1"], b["ru2"]),
                (b["wz"], b["zc"]),
                (b["vz"], b_next["uv"]),
                (b["uz"], b["vw"]),
                (b["uw"], b["cc"]),
            ]
            ids = {}
            for role, (e1, e2) in zip(CLASS_ROLES, members):
                colors[e1] = colors[e2] = cid
                ids[role] = cid
                cid += 1
            row.append(ids)
        block_classes.append(row)
    assert -1 not in colors

    g = EdgeColoredGraph(vertex_count, edges, colors)
    blocks = tuple(
        tuple({"vertices": verts[i][p], "edges": dict(block_edges[i][p]),
               "slot": occ[i][p], "classes": block_classes[i][p]} for p in range(4))
        for i in range(n)
    )
    mp = Nae2RstMap(f, g, root, blocks, tuple(cverts), tuple(tri))
    return g, mp


def assignment_to_packing(mp: Nae2RstMap, a) -> TreePacking:
    """Two rainbow spanning trees built from a NAE-satisfying assignment.

    A true variable sends ``uw uz vz zc`` of each of its blocks to the first
    tree, a false one ``uv vw wz cc``; the first parallel root edge of every
    root pair goes to the first tree; the second tree is the rest.
    """
    values = tuple(bool(x) for x in a)
    f = mp.formula
    if len(values) != f.variable_count:
        raise PreconditionError(f"assignment has {len(values)} values for {f.variable_count} variables")
    bad = f.first_violated_clause(values)
    if bad is not None:
        raise PreconditionError(f"assignment is not NAE-satisfying: clause {bad + 1} "
                                f"{tuple(x + 1 for x in f.clauses[bad])} is all-equal")
    first = set()
    for i, row in enumerate(mp.blocks):
        roles = TRUE_EDGES if values[i] else FALSE_EDGES
        for blk in row:
            first.add(blk["edges"]["ru1"])
            first.update(blk["edges"][r] for r in roles)
    second = set(range(mp.graph.edge_count)) - first
    packing = TreePacking((sorted(first), sorted(second)))
    verdict = verify_rainbow_packing(mp.graph, packing, require_partition=True, k=2)
    if not verdict:
        raise SoundnessError(f"constructed packing fails verification: {verdict}")
    return packing


def packing_to_assignment(mp: Nae2RstMap, p: TreePacking) -> Assignment:
    """Read the assignment off a partition into two rainbow spanning trees.

    ``x_i`` is true iff the ``z``-to-clause edges of its blocks lie in the
    first tree; all four of them must agree, which is checked.
    """
    verdict = _input_verdict(verify_rainbow_packing, mp.graph, p, require_partition=True, k=2)
    if not verdict:
        raise PreconditionError(f"not a partition into two rainbow spanning trees: {verdict}")
    first = p.parts[0]
    values = []
    for i in range(mp.formula.variable_count):
        sides = {e in first for e in mp.zc_edges(i)}
        if len(sides) != 1:
            raise SoundnessError(f"z-edges of variable x{i + 1} are split between the trees")
        values.append(sides.pop())
    bad = mp.formula.first_violated_clause(values)
    if bad is not None:
        raise SoundnessError(f"recovered assignment violates clause {bad + 1}")
    return Assignment(values)


# --------------------------------------------------------------------------- orientation

def orient_indegree_two(g, root: int = 0) -> Digraph:
    """Orient a union of two spanning trees so every non-root vertex has in-degree 2.

    The edge set is split into two spanning trees by matroid union and each
    tree is oriented away from ``root``.  Arc ``i`` is the orientation of edge ``i``.
    """
    n, edges = g.vertex_count, list(g.edges)
    if not 0 <= root < n:
        raise InstanceError(f"root {root} outside 0..{n - 1}")
    if len(edges) != 2 * (n - 1):
        raise InstanceError(f"|E| = {len(edges)}, a union of two spanning trees has {2 * (n - 1)}")
    gm = GraphicMatroid(n, edges)
    parts = matroid_union([gm, gm])
    if sum(len(t) for t in parts) != len(edges):
        raise InstanceError("edge set is not the union of two spanning trees")
    arcs: list[tuple[int, int] | None] = [None] * len(edges)
    for tree in parts:
        adj: dict[int, list[int]] = {}
        for e in tree:
            u, v = edges[e]
            adj.setdefault(u, []).append(e)
            adj.setdefault(v, []).append(e)
        seen = {root}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for e in sorted(adj.get(x, ())):
                u, v = edges[e]
                y = v if u == x else u
                if y not in seen:
                    seen.add(y)
                    arcs[e] = (x, y)
                    queue.append(y)
    return Digraph(n, arcs, root)


# --------------------------------------------------------------------------- rainbow -> digraph

@dataclass(frozen=True)
class Rst2DigMap:
    """Layout of the digraph built from a two-tree rainbow instance.

    ``ports[v] = (in1, in2, out)`` for every original vertex except the root
    (``None`` there); ``image[e] = (arc id, slot)``; ``parallel[v]`` holds the
    two arc pairs ``in1 -> out`` and ``in2 -> out``; ``gadgets[c] = (w_c,
    (e, f), (arc to e's in-port, arc to f's in-port), (loop, loop))``.
    """

    source: EdgeColoredGraph
    source_root: int
    orientation: Digraph
    target: Digraph
    ports: tuple
    image: tuple
    parallel: tuple
    gadgets: tuple

    kind = "rst2dig"


def reduce_rst_to_digraph(g: EdgeColoredGraph, root: int = 0) -> tuple[Digraph, Rst2DigMap]:
    """Digraph that splits into two good parts iff ``g`` splits into two rainbow spanning trees.

    Target layout: vertex 0 is the root copy, then ``in1 in2 out`` for every
    other original vertex in id order, then one ``w_c`` per color.  Arcs:
    four parallel port arcs per vertex, one image arc per original edge, and
    per color two outgoing arcs plus two loops.
    """
    g.require_normal_form()
    n = g.vertex_count
    oriented = orient_indegree_two(g, root)
    ports: list[tuple[int, int, int] | None] = [None] * n
    nxt = 1
    for v in range(n):
        if v != root:
            ports[v] = (nxt, nxt + 1, nxt + 2)
            nxt += 3

    def copy_of(v, role):
        return 0 if v == root else ports[v][role]

    arcs: list[tuple[int, int]] = []

    def add(t, h):
        arcs.append((t, h))
        return len(arcs) - 1

    parallel: list = [None] * n
    for v in range(n):
        if v == root:
            continue
        in1, in2, out = ports[v]
        parallel[v] = ((add(in1, out), add(in1, out)), (add(in2, out), add(in2, out)))

    slot_used = [0] * n
    image = []
    for e, (t, h) in enumerate(oriented.arcs):
        slot = slot_used[h]
        slot_used[h] += 1
        image.append((add(copy_of(t, 2), ports[h][slot]), slot))

    gadgets = []
    for c, (e, f) in enumerate(g.color_classes()):
        w = nxt
        nxt += 1
        to_e = add(w, arcs[image[e][0]][1])
        to_f = add(w, arcs[image[f][0]][1])
        loops = (add(w, w), add(w, w))
        gadgets.append((w, (e, f), (to_e, to_f), loops))

    target = Digraph(nxt, arcs, 0)
    mp = Rst2DigMap(g, root, oriented, target, tuple(ports), tuple(image), tuple(parallel), tuple(gadgets))
    return target, mp


def packing_to_arc_partition(mp: Rst2DigMap, p: TreePacking) -> ArcPartition:
    """Arc partition from two rainbow spanning trees.

    Part i takes the images of tree i, the i-th arc of every parallel pair,
    the i-th loop of every color gadget, and the gadget arc pointing at the
    in-port whose image arc went to the other part.
    """
    verdict = _input_verdict(verify_rainbow_packing, mp.source, p, require_partition=True, k=2)
    if not verdict:
        raise PreconditionError(f"not a partition into two rainbow spanning trees: {verdict}")
    parts: list[set[int]] = [set(), set()]
    for i in range(2):
        parts[i].update(mp.image[e][0] for e in p.parts[i])
    for pair in mp.parallel:
        if pair is None:
            continue
        for a1, a2 in pair:
            parts[0].add(a1)
            parts[1].add(a2)
    for w, (e, f), (to_e, to_f), (l1, l2) in mp.gadgets:
        parts[0].add(l1)
        parts[1].add(l2)
        side_e = 0 if e in p.parts[0] else 1
        parts[1 - side_e].add(to_e)
        parts[side_e].add(to_f)
    out = ArcPartition(parts)
    verdict = verify_digraph_decomposition(mp.target, out, k=2)
    if not verdict:
        raise SoundnessError(f"constructed arc partition fails verification: {verdict}")
    return out


def arc_partition_to_packing(mp: Rst2DigMap, ap: ArcPartition) -> TreePacking:
    """Tree i is the set of original edges whose image arc lies in part i."""
    verdict = _input_verdict(verify_digraph_decomposition, mp.target, ap, k=2)
    if not verdict:
        raise PreconditionError(f"not a valid two-part decomposition: {verdict}")
    trees: list[list[int]] = [[], []]
    for e, (arc, _) in enumerate(mp.image):
        trees[0 if arc in ap.parts[0] else 1].append(e)
    out = TreePacking(trees)
    verdict = verify_rainbow_packing(mp.source, out, require_partition=True, k=2)
    if not verdict:
        raise SoundnessError(f"recovered packing fails verification: {verdict}")
    return out


# --------------------------------------------------------------------------- rainbow -> parity

@dataclass(frozen=True)
class Rst2ParityMap:
    """``gadgets[c] = (w_c, (e, f), (e_c, f_c))``; edge ``x`` of the source keeps id ``x``."""

    source: EdgeColoredGraph
    target: PairedGraph
    gadgets: tuple

    kind = "rst2parity"


def reduce_rst_to_parity(g: EdgeColoredGraph) -> tuple[PairedGraph, Rst2ParityMap]:
    """Paired graph with two disjoint parity spanning trees iff ``g`` has two rainbow ones.

    Color ``c = {e, f}`` gets a new vertex ``w_c`` joined to the lower endpoint
    of ``e`` (edge ``e_c``) and of ``f`` (edge ``f_c``); ``e`` is paired with
    ``e_c`` and ``f`` with ``f_c``.
    """
    g.require_normal_form()
    n, m = g.vertex_count, g.edge_count
    edges = list(g.edges)
    pairs = [-1] * m
    gadgets = []
    for c, (e, f) in enumerate(g.color_classes()):
        w = n + c
        e_c = len(edges)
        edges.append((w, min(g.edges[e])))
        f_c = len(edges)
        edges.append((w, min(g.edges[f])))
        pairs[e] = 2 * c
        pairs[f] = 2 * c + 1
        pairs += [2 * c, 2 * c + 1]
        gadgets.append((w, (e, f), (e_c, f_c)))
    target = PairedGraph(n + g.color_count, edges, pairs)
    return target, Rst2ParityMap(g, target, tuple(gadgets))


def parity_packing_maps(mp: Rst2ParityMap, direction: str, certificate: TreePacking) -> TreePacking:
    """Translate between rainbow and parity packings.

    ``forward`` closes each rainbow tree under the pairing; ``backward``
    keeps only the original edges of each parity tree.
    """
    m = mp.source.edge_count
    if direction == "forward":
        verdict = _input_verdict(verify_rainbow_packing, mp.source, certificate,
                                 require_partition=True, k=2)
        if not verdict:
            raise PreconditionError(f"not a partition into two rainbow spanning trees: {verdict}")
        mate = mp.target.mate()
        out = TreePacking([sorted(set(t) | {mate[e] for e in t}) for t in certificate.parts])
        verdict = verify_parity_packing(mp.target, out, k=2)
    elif direction == "backward":
        verdict = _input_verdict(verify_parity_packing, mp.target, certificate, k=2)
        if not verdict:
            raise PreconditionError(f"not two disjoint parity spanning trees: {verdict}")
        out = TreePacking([sorted(e for e in t if e < m) for t in certificate.parts])
        verdict = verify_rainbow_packing(mp.source, out, require_partition=True, k=2)
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    if not verdict:
        raise SoundnessError(f"{direction} map produced an invalid certificate: {verdict}")
    return out


# --------------------------------------------------------------------------- NAE brute force

def _nae_mask_chunks(f: NaeFormula, chunk_bits: int = 20):
    n = f.variable_count
    if n > NAE_CAP:
        raise SizeError(f"{n} variables exceeds exhaustive cap {NAE_CAP}")
    total = 1 << n
    step = 1 << min(chunk_bits, n)
    clauses = np.array(f.clauses, dtype=np.int64).reshape(-1, 3)
    for start in range(0, total, step):
        xs = np.arange(start, min(start + step, total), dtype=np.int64)
        ok = np.ones(xs.shape, dtype=bool)
        for a, b, c in clauses:
            s = ((xs >> a) & 1) + ((xs >> b) & 1) + ((xs >> c) & 1)
            ok &= (s == 1) | (s == 2)
        yield xs[ok]


def _to_assignment(x: int, n: int) -> Assignment:
    return Assignment(tuple(bool(x >> i & 1) for i in range(n)))


def nae_bruteforce(f: NaeFormula) -> Assignment | None:
    """First NAE-satisfying assignment in binary counting order (x1 is the low bit), or ``None``."""
    for hits in _nae_mask_chunks(f):
        if hits.size:
            return _to_assignment(int(hits[0]), f.variable_count)
    return None


def nae_solutions(f: NaeFormula):
    """Every NAE-satisfying assignment, in binary counting order."""
    for hits in _nae_mask_chunks(f):
        for x in hits.tolist():
            yield _to_assignment(x, f.variable_count)


# --------------------------------------------------------------------------- map sidecars

def _rows(mp) -> list[str]:
    if isinstance(mp, Nae2RstMap):
        f = mp.formula
        out = [f"formula {f.variable_count} {f.clause_count}"]
        out += ["cl " + " ".join(str(x + 1) for x in c) for c in f.clauses]
        out.append(f"root {mp.root}")
        for i, row in enumerate(mp.blocks):
            for p, blk in enumerate(row):
                vals = [i, p, *blk["vertices"], *(blk["edges"][r] for r in BLOCK_ROLES),
                        *blk["slot"], *(blk["classes"][r] for r in CLASS_ROLES)]
                out.append("block " + " ".join(map(str, vals)))
        for j, (cv, te) in enumerate(zip(mp.clause_vertices, mp.triangle_edges)):
            out.append("clause " + " ".join(map(str, (j, *cv, *te))))
        return out
    src = mp.source
    out = [f"source {src.vertex_count} {src.edge_count} {src.color_count}"]
    out += [f"edge {u} {v} {c}" for (u, v), c in zip(src.edges, src.colors)]
    if isinstance(mp, Rst2DigMap):
        out.append(f"root {mp.source_root}")
        out.append(f"target {mp.target.vertex_count} {mp.target.arc_count} {mp.target.root}")
        for v, ports in enumerate(mp.ports):
            if ports is not None:
                (a, b), (c, d) = mp.parallel[v]
                out.append("vertex " + " ".join(map(str, (v, *ports, a, b, c, d))))
        for e, (arc, slot) in enumerate(mp.image):
            t, h = mp.orientation.arcs[e]
            out.append(f"image {e} {t} {h} {slot + 1} {arc}")
        for c, (w, (e, f), (te, tf), (l1, l2)) in enumerate(mp.gadgets):
            out.append("gadget " + " ".join(map(str, (c, w, e, f, te, tf, l1, l2))))
        return out
    if isinstance(mp, Rst2ParityMap):
        out.append(f"target {mp.target.vertex_count} {mp.target.edge_count}")
        for c, (w, (e, f), (ec, fc)) in enumerate(mp.gadgets):
            out.append("gadget " + " ".join(map(str, (c, w, e, f, ec, fc))))
        return out
    raise TypeError(f"not a reduction map: {type(mp).__name__}")


def serialize_map(mp) -> str:
    """Text sidecar: ``map <kind>`` followed by labelled integer rows."""
    return "\n".join([f"map {mp.kind}"] + _rows(mp)) + "\n"


def parse_map(text: str):
    """Parse a map sidecar.

    The map is rebuilt from its embedded source instance and every stored
    table must agree with the rebuild, so a tampered sidecar is rejected.
    """
    lines = list(significant_lines(text))
    if not lines or lines[0][1][0] != "map" or len(lines[0][1]) != 2:
        raise ParseError("expected 'map <kind>' header", lines[0][0] if lines else None)
    kind = lines[0][1][1]
    tables: dict[str, list[list[int]]] = {}
    for lineno, toks in lines[1:]:
        try:
            tables.setdefault(toks[0], []).append([int(t) for t in toks[1:]])
        except ValueError:
            raise ParseError(f"non-integer field in {' '.join(toks)!r}", lineno) from None

    def one(label, width):
        rows = tables.get(label, [])
        if len(rows) != 1 or len(rows[0]) != width:
            raise ParseError(f"map needs exactly one '{label}' row with {width} fields")
        return rows[0]

    try:
        if kind == "nae2rst":
            n, m = one("formula", 2)
            clauses = [tuple(x - 1 for x in row) for row in tables.get("cl", [])]
            if len(clauses) != m:
                raise ParseError(f"formula announces {m} clauses, map lists {len(clauses)}")
            _, mp = reduce_nae_to_rst(NaeFormula(n, clauses))
        elif kind in ("rst2dig", "rst2parity"):
            n, m, _ = one("source", 3)
            rows = tables.get("edge", [])
            if len(rows) != m or any(len(r) != 3 for r in rows):
                raise ParseError(f"source announces {m} edges, map lists {len(rows)}")
            src = EdgeColoredGraph(n, [(u, v) for u, v, _ in rows], [c for _, _, c in rows])
            if kind == "rst2dig":
                (root,) = one("root", 1)
                _, mp = reduce_rst_to_digraph(src, root)
            else:
                _, mp = reduce_rst_to_parity(src)
        else:
            raise ParseError(f"unknown map kind {kind!r}")
    except ParseError:
        raise
    except InstanceError as exc:
        raise ParseError(f"map source is not a valid instance: {exc}") from None
    if serialize_map(mp) != "\n".join([f"map {kind}"] + [
            " ".join([toks[0], *toks[1:]]) for _, toks in lines[1:]]) + "\n":
        raise ParseError("map tables disagree with the reduction of their source instance")
    return mp
