"""Instance and certificate value types.

Vertices, edges, arcs and variables are dense 0-based integer ids.  All
types are frozen dataclasses; constructors normalise sequences to tuples and
validate the structural invariants, raising :class:`InstanceError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InstanceError
from .matroid import GraphicMatroid, PartitionMatroid, UNBOUNDED, packing_number

__all__ = [
    "DisjointSet",
    "EdgeColoredGraph",
    "Digraph",
    "PairedGraph",
    "NaeFormula",
    "TreePacking",
    "ArcPartition",
    "Assignment",
    "is_k_partition_connected",
    "component_count",
]


class DisjointSet:
    """Union-find over ``0..n-1`` with path halving."""

    __slots__ = ("parent", "components")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.components -= 1
        return True


def component_count(vertex_count: int, edges: Iterable[tuple[int, int]]) -> int:
    ds = DisjointSet(vertex_count)
    for u, v in edges:
        ds.union(u, v)
    return ds.components


def _check_endpoints(n, pairs, what):
    for idx, (u, v) in enumerate(pairs):
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"{what} {idx} = ({u}, {v}) has an endpoint outside 0..{n - 1}")


@dataclass(frozen=True)
class EdgeColoredGraph:
    """Undirected multigraph with one color per edge (colors contiguous from 0)."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "colors", colors)
        if self.vertex_count < 1:
            raise InstanceError("vertex_count must be positive")
        if len(colors) != len(edges):
            raise InstanceError(f"{len(edges)} edges but {len(colors)} colors")
        _check_endpoints(self.vertex_count, edges, "edge")
        used = set(colors)
        if used != set(range(len(used))):
            raise InstanceError(f"color ids must be contiguous from 0, got {sorted(used)}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def color_classes(self) -> list[tuple[int, ...]]:
        classes: list[list[int]] = [[] for _ in range(self.color_count)]
        for e, c in enumerate(self.colors):
            classes[c].append(e)
        return [tuple(c) for c in classes]

    def graphic_matroid(self) -> GraphicMatroid:
        return GraphicMatroid(self.vertex_count, self.edges)

    def color_matroid(self) -> PartitionMatroid:
        return PartitionMatroid(self.colors)

    def normal_form_problem(self) -> str | None:
        """Why the graph is not a two-tree union with size-2 color classes, or ``None``."""
        n, m = self.vertex_count, self.edge_count
        if m != 2 * (n - 1):
            return f"|E| = {m} but a union of two spanning trees has {2 * (n - 1)} edges"
        for c, cls in enumerate(self.color_classes()):
            if len(cls) != 2:
                return f"color class {c} has {len(cls)} edges, expected 2"
        # packing_number counts disjoint spanning forests, so connectivity is checked separately
        if component_count(n, self.edges) > 1:
            return "graph is disconnected"
        gamma = packing_number(self.graphic_matroid())
        if gamma is not UNBOUNDED and gamma < 2:
            return "edge set is not the union of two spanning trees"
        return None

    def is_normal_form(self) -> bool:
        return self.normal_form_problem() is None

    def require_normal_form(self):
        problem = self.normal_form_problem()
        if problem is not None:
            raise InstanceError(f"instance is not in two-tree normal form: {problem}")


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph with loops and a designated root."""

    vertex_count: int
    arcs: tuple[tuple[int, int], ...]
    root: int = 0

    def __post_init__(self):
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.vertex_count < 1:
            raise InstanceError("vertex_count must be positive")
        if not 0 <= self.root < self.vertex_count:
            raise InstanceError(f"root {self.root} outside 0..{self.vertex_count - 1}")
        _check_endpoints(self.vertex_count, arcs, "arc")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def in_arcs(self) -> list[list[int]]:
        """Arc ids entering each vertex; a loop enters its vertex."""
        ins: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for a, (_, h) in enumerate(self.arcs):
            ins[h].append(a)
        return ins

    def in_degrees(self) -> list[int]:
        return [len(x) for x in self.in_arcs()]

    def indegree_problem(self, k: int) -> str | None:
        """Why the root/in-degree conditions of the decomposition problem fail for ``k``."""
        deg = self.in_degrees()
        if deg[self.root] != 0:
            return f"root {self.root} has in-degree {deg[self.root]}, expected 0"
        for v, d in enumerate(deg):
            if v != self.root and d < k:
                return f"vertex {v} has in-degree {d} < {k}"
        return None

    def underlying_edges(self) -> tuple[tuple[int, int], ...]:
        return self.arcs


@dataclass(frozen=True)
class PairedGraph:
    """Undirected multigraph whose edges are grouped into pairs by ``pairs[e]``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    pairs: tuple[int, ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        pairs = tuple(int(p) for p in self.pairs)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "pairs", pairs)
        if self.vertex_count < 1:
            raise InstanceError("vertex_count must be positive")
        if len(pairs) != len(edges):
            raise InstanceError(f"{len(edges)} edges but {len(pairs)} pair ids")
        _check_endpoints(self.vertex_count, edges, "edge")
        counts: dict[int, int] = {}
        for p in pairs:
            counts[p] = counts.get(p, 0) + 1
        if set(counts) != set(range(len(counts))):
            raise InstanceError("pair ids must be contiguous from 0")
        for p, c in counts.items():
            if c != 2:
                raise InstanceError(f"pair {p} occurs on {c} edges, expected 2")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def pair_count(self) -> int:
        return len(self.edges) // 2

    def pair_members(self) -> list[tuple[int, int]]:
        members: list[list[int]] = [[] for _ in range(self.pair_count)]
        for e, p in enumerate(self.pairs):
            members[p].append(e)
        return [(a, b) for a, b in members]

    def mate(self) -> list[int]:
        out = [0] * self.edge_count
        for a, b in self.pair_members():
            out[a], out[b] = b, a
        return out


@dataclass(frozen=True)
class NaeFormula:
    """Monotone CNF; each clause is a tuple of 3 distinct 0-based variable ids."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.variable_count < 0:
            raise InstanceError("variable_count must be non-negative")
        for j, c in enumerate(clauses):
            if len(c) != 3:
                raise InstanceError(f"clause {j} has {len(c)} literals, expected 3")
            if len(set(c)) != 3:
                raise InstanceError(f"clause {j} repeats a variable: {c}")
            for x in c:
                if not 0 <= x < self.variable_count:
                    raise InstanceError(f"clause {j} uses variable {x} outside 0..{self.variable_count - 1}")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> list[list[tuple[int, int]]]:
        """For each variable, its (clause, position) slots in clause order."""
        occ: list[list[tuple[int, int]]] = [[] for _ in range(self.variable_count)]
        for j, c in enumerate(self.clauses):
            for q, x in enumerate(c):
                occ[x].append((j, q))
        return occ

    def exactly4_problem(self) -> str | None:
        for i, slots in enumerate(self.occurrences()):
            if len(slots) != 4:
                return f"variable x{i + 1} occurs {len(slots)} times, expected 4"
        return None

    def is_nae_satisfied(self, assignment: Sequence[bool]) -> bool:
        return self.first_violated_clause(assignment) is None

    def first_violated_clause(self, assignment: Sequence[bool]) -> int | None:
        if len(assignment) != self.variable_count:
            raise InstanceError(f"assignment has {len(assignment)} values for {self.variable_count} variables")
        for j, c in enumerate(self.clauses):
            vals = {bool(assignment[x]) for x in c}
            if len(vals) != 2:
                return j
        return None


def _parts(parts) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(int(e) for e in p) for p in parts)


@dataclass(frozen=True)
class TreePacking:
    """``k`` edge-index sets; validity is the verifier's business, not the constructor's."""

    parts: tuple[frozenset[int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "parts", _parts(self.parts))

    @property
    def k(self) -> int:
        return len(self.parts)

    def edges(self) -> frozenset[int]:
        return frozenset().union(*self.parts) if self.parts else frozenset()


@dataclass(frozen=True)
class ArcPartition:
    parts: tuple[frozenset[int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "parts", _parts(self.parts))

    @property
    def k(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class Assignment:
    values: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(bool(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def complement(self) -> "Assignment":
        return Assignment(tuple(not v for v in self.values))


def is_k_partition_connected(g, k: int) -> bool:
    """Whether the undirected (multi)graph ``g`` splits into ``k`` connected spanning subgraphs.

    ``g`` needs ``vertex_count`` and ``edges``; a :class:`Digraph` is read as
    its underlying graph.  Decided as "connected and graphic packing number >= k"
    (bases of a disconnected graph's matroid are spanning forests, not trees).
    """
    if k < 1:
        raise InstanceError("k must be at least 1")
    edges = g.arcs if isinstance(g, Digraph) else g.edges
    if component_count(g.vertex_count, edges) > 1:
        # the partition into components is crossed by no edge at all
        return False
    gamma = packing_number(GraphicMatroid(g.vertex_count, edges))
    return gamma is UNBOUNDED or gamma >= k
