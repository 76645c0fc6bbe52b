"""Rank oracles for graphic, partition and explicit matroids.

Elements of a matroid are the integers ``0 .. ground_size - 1``.  Every
matroid exposes :meth:`Matroid.rank` and :meth:`Matroid.fundamental_circuit`;
the union and intersection algorithms below only talk to those two methods,
so they work for any of the three kinds.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceError, SizeError

__all__ = [
    "BRUTE_FORCE_CAP",
    "UNBOUNDED",
    "Matroid",
    "GraphicMatroid",
    "PartitionMatroid",
    "ExplicitMatroid",
    "free_matroid",
    "uniform_matroid",
    "binary_matroid",
    "random_matroid",
    "rank",
    "rank_table",
    "check_rank_axioms",
    "matroid_union",
    "matroid_union_rank",
    "covering_number",
    "packing_number",
    "covering_number_formula",
    "packing_number_formula",
    "max_common_independent",
    "common_independent_masks",
    "common_cover_number_bf",
    "common_packing_number_bf",
]

#: Largest ground set accepted by the subset-enumeration routines.
BRUTE_FORCE_CAP = 12


class _Unbounded:
    """Packing number of a rank-0 matroid: the empty basis packs without limit."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


def _as_elements(m: "Matroid", subset) -> tuple[int, ...]:
    out = tuple(sorted(set(int(e) for e in subset)))
    if out and (out[0] < 0 or out[-1] >= m.ground_size):
        bad = out[0] if out[0] < 0 else out[-1]
        raise InstanceError(f"element {bad} outside ground set of size {m.ground_size}")
    return out


def _mask_elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Matroid:
    """Base class. Subclasses are immutable after construction."""

    kind = "abstract"
    ground_size: int

    def rank(self, subset: Iterable[int]) -> int:
        return self._rank(_as_elements(self, subset))

    def _rank(self, elements: tuple[int, ...]) -> int:
        raise NotImplementedError

    def is_independent(self, subset: Iterable[int]) -> bool:
        elements = _as_elements(self, subset)
        return self._rank(elements) == len(elements)

    def full_rank(self) -> int:
        return self._rank(tuple(range(self.ground_size)))

    def fundamental_circuit(self, independent: Iterable[int], y: int) -> frozenset[int] | None:
        """Elements ``x`` of ``independent`` such that ``independent - x + y`` is independent.

        Returns ``None`` when ``independent + y`` is itself independent.  For a
        loop the result is the empty set.
        """
        base = frozenset(independent)
        if self.is_independent(base | {y}):
            return None
        return frozenset(x for x in base if self.is_independent((base - {x}) | {y}))

    def is_loop(self, e: int) -> bool:
        return self.rank((e,)) == 0


class GraphicMatroid(Matroid):
    """Cycle matroid of an undirected multigraph; loops are matroid loops."""

    kind = "graphic"

    def __init__(self, vertex_count: int, edges: Sequence[tuple[int, int]]):
        self.vertex_count = int(vertex_count)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InstanceError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}")
        self.ground_size = len(self.edges)

    def __repr__(self):
        return f"GraphicMatroid({self.vertex_count}, {list(self.edges)})"

    def _rank(self, elements):
        parent = {}

        def find(a):
            root = a
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(a, a) != root:
                parent[a], a = root, parent[a]
            return root

        r = 0
        for e in elements:
            u, v = self.edges[e]
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                r += 1
        return r

    def fundamental_circuit(self, independent, y):
        u, v = self.edges[y]
        if u == v:
            return frozenset()
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in independent:
            a, b = self.edges[e]
            adj.setdefault(a, []).append((b, e))
            adj.setdefault(b, []).append((a, e))
        # BFS for the forest path u -> v
        via = {u: None}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                break
            for b, e in adj.get(a, ()):
                if b not in via:
                    via[b] = (a, e)
                    queue.append(b)
        if v not in via:
            return None
        path = []
        node = v
        while via[node] is not None:
            node, e = via[node]
            path.append(e)
        return frozenset(path)


class PartitionMatroid(Matroid):
    """At most one element per class; ``classes[e]`` is the class id of element ``e``."""

    kind = "partition"

    def __init__(self, classes: Sequence[int]):
        self.classes = tuple(int(c) for c in classes)
        self.ground_size = len(self.classes)

    def __repr__(self):
        return f"PartitionMatroid({list(self.classes)})"

    def _rank(self, elements):
        return len({self.classes[e] for e in elements})

    def fundamental_circuit(self, independent, y):
        cy = self.classes[y]
        for x in independent:
            if self.classes[x] == cy and x != y:
                return frozenset((x,))
        return None


class ExplicitMatroid(Matroid):
    """Matroid given by its full family of independent sets (as bitmasks).

    Only meant for tiny ground sets; the constructor validates the
    independence axioms and tabulates the rank of every subset.
    """

    kind = "explicit"

    def __init__(self, ground_size: int, independent_masks: Iterable[int]):
        ground_size = int(ground_size)
        if ground_size > BRUTE_FORCE_CAP:
            raise SizeError(f"explicit matroids are limited to {BRUTE_FORCE_CAP} elements")
        self.ground_size = ground_size
        family = frozenset(int(x) for x in independent_masks)
        full = (1 << ground_size) - 1
        if 0 not in family:
            raise InstanceError("the empty set must be independent")
        for mask in family:
            if mask & ~full:
                raise InstanceError(f"mask {mask:#x} has elements outside the ground set")
            for e in _mask_elements(mask):
                if mask & ~(1 << e) not in family:
                    raise InstanceError(f"family is not closed under subsets at mask {mask:#x}")
        self.family = family
        table = np.zeros(1 << ground_size, dtype=np.int64)
        for mask in range(1, full + 1):
            if mask in family:
                table[mask] = bin(mask).count("1")
            else:
                table[mask] = max(table[mask & ~(1 << e)] for e in _mask_elements(mask))
        self._table = table
        bad = _local_submodularity_violation(table, ground_size)
        if bad is not None:
            raise InstanceError(f"family violates the exchange axiom near mask {bad:#x}")

    def __repr__(self):
        return f"ExplicitMatroid({self.ground_size}, {sorted(self.family)})"

    def _rank(self, elements):
        mask = 0
        for e in elements:
            mask |= 1 << e
        return int(self._table[mask])


def _local_submodularity_violation(table, n):
    # r(X+e) + r(X+f) >= r(X+e+f) + r(X) for all X, e, f is equivalent to the
    # exchange axiom for a down-closed family.
    masks = np.arange(1 << n)
    for e in range(n):
        for f in range(e + 1, n):
            sel = masks[((masks >> e) & 1 == 0) & ((masks >> f) & 1 == 0)]
            be, bf = 1 << e, 1 << f
            lhs = table[sel | be] + table[sel | bf]
            rhs = table[sel | be | bf] + table[sel]
            bad = np.nonzero(lhs < rhs)[0]
            if bad.size:
                return int(sel[bad[0]])
    return None


def free_matroid(n: int) -> PartitionMatroid:
    """Every subset is independent."""
    return PartitionMatroid(range(n))


def uniform_matroid(r: int, n: int) -> ExplicitMatroid:
    return ExplicitMatroid(n, [m for m in range(1 << n) if bin(m).count("1") <= r])


def binary_matroid(vectors: Sequence[int], dim: int | None = None) -> ExplicitMatroid:
    """Column matroid of GF(2) vectors given as integer bit patterns."""
    n = len(vectors)
    indep = []
    for mask in range(1 << n):
        basis: list[int] = []
        ok = True
        for e in _mask_elements(mask):
            v = vectors[e]
            for b in basis:
                v = min(v, v ^ b)
            if v == 0:
                ok = False
                break
            basis.append(v)
        if ok:
            indep.append(mask)
    return ExplicitMatroid(n, indep)


def random_matroid(rng: np.random.Generator, max_ground: int = 10, kind: str | None = None,
                   loopless: bool = False, ground: int | None = None) -> Matroid:
    """Draw a small matroid of the requested (or a random) kind.

    ``ground`` fixes the ground-set size (otherwise drawn from ``1..max_ground``).

    Graphic matroids come from multigraphs on at most 6 vertices; explicit
    ones are GF(2) column matroids or uniform matroids.
    """
    if kind is None:
        kind = ("graphic", "partition", "explicit")[int(rng.integers(3))]
    size = int(rng.integers(1, max_ground + 1)) if ground is None else ground
    if kind == "graphic":
        nv = int(rng.integers(2, 7))
        edges = []
        while len(edges) < size:
            u, v = (int(x) for x in rng.integers(nv, size=2))
            if loopless and u == v:
                continue
            edges.append((u, v))
        return GraphicMatroid(nv, edges)
    if kind == "partition":
        q = int(rng.integers(1, size + 1))
        return PartitionMatroid(rng.integers(q, size=size).tolist())
    if kind == "explicit":
        if ground is None:
            size = min(size, BRUTE_FORCE_CAP)
        if rng.random() < 0.25:
            lo = 1 if loopless else 0
            return uniform_matroid(int(rng.integers(lo, size + 1)), size)
        dim = int(rng.integers(1, 5))
        lo = 1 if loopless else 0
        vectors = rng.integers(lo, 1 << dim, size=size).tolist()
        return binary_matroid(vectors, dim)
    raise ValueError(f"unknown matroid kind {kind!r}")


def rank(m: Matroid, subset: Iterable[int]) -> int:
    return m.rank(subset)


def _check_cap(n, cap):
    cap = BRUTE_FORCE_CAP if cap is None else cap
    if n > cap:
        raise SizeError(f"ground set of size {n} exceeds brute-force cap {cap}")


def rank_table(m: Matroid, cap: int | None = None) -> np.ndarray:
    """Rank of every subset, indexed by bitmask."""
    n = m.ground_size
    _check_cap(n, cap)
    if isinstance(m, ExplicitMatroid):
        return m._table.copy()
    return np.array([m._rank(tuple(_mask_elements(mask))) for mask in range(1 << n)], dtype=np.int64)


def check_rank_axioms(m: Matroid, cap: int | None = None) -> list[str]:
    """Exhaustively test the rank axioms; returns human-readable violations (empty if none)."""
    n = m.ground_size
    table = rank_table(m, cap)
    masks = np.arange(1 << n)
    problems = []
    if table[0] != 0:
        problems.append("rank of the empty set is not 0")
    if np.any(table < 0):
        problems.append("negative rank")
    for e in range(n):
        sel = masks[(masks >> e) & 1 == 0]
        step = table[sel | (1 << e)] - table[sel]
        bad = np.nonzero((step < 0) | (step > 1))[0]
        if bad.size:
            problems.append(f"adding element {e} to mask {int(sel[bad[0]]):#x} changes rank by {int(step[bad[0]])}")
    # full pairwise submodularity; chunked to bound memory
    size = 1 << n
    chunk = max(1, (1 << 20) // size)
    for start in range(0, size, chunk):
        xs = masks[start:start + chunk, None]
        lhs = table[xs] + table[None, :]
        rhs = table[xs | masks[None, :]] + table[xs & masks[None, :]]
        bad = np.argwhere(lhs < rhs)
        if bad.size:
            x, y = int(xs[bad[0][0], 0]), int(bad[0][1])
            problems.append(f"submodularity fails for masks {x:#x}, {y:#x}")
            break
    return problems


# --------------------------------------------------------------------------- union

def _same_ground(ms: Sequence[Matroid]) -> int:
    if not ms:
        raise InstanceError("need at least one matroid")
    n = ms[0].ground_size
    for m in ms[1:]:
        if m.ground_size != n:
            raise InstanceError(f"ground sizes differ: {n} vs {m.ground_size}")
    return n


def matroid_union(ms: Sequence[Matroid], subset: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Disjoint sets ``I_j`` independent in ``ms[j]`` with maximum total size inside ``subset``.

    Elements are inserted one at a time; each insertion runs a BFS in the
    exchange graph, where ``y -> x`` (labelled ``j``) means ``I_j - x + y`` is
    independent in ``ms[j]``.  Following a shortest path to an element that
    fits directly into some ``I_j`` keeps every part independent.
    """
    n = _same_ground(ms)
    elements = range(n) if subset is None else _as_elements(ms[0], subset)
    parts: list[set[int]] = [set() for _ in ms]
    owner: dict[int, int] = {}
    for s in elements:
        via: dict[int, tuple[int, int] | None] = {s: None}
        queue = deque([s])
        sink = None
        while queue and sink is None:
            y = queue.popleft()
            for j, m in enumerate(ms):
                if owner.get(y) == j:
                    continue
                circuit = m.fundamental_circuit(parts[j], y)
                if circuit is None:
                    sink = (y, j)
                    break
                for x in sorted(circuit):
                    if x not in via:
                        via[x] = (y, j)
                        queue.append(x)
        if sink is None:
            continue
        y, j = sink
        # walk back: y joins part j, leaving its current part to the predecessor
        while True:
            old = owner.get(y)
            if old is not None:
                parts[old].discard(y)
            parts[j].add(y)
            owner[y] = j
            step = via[y]
            if step is None:
                break
            prev, _ = step
            # prev takes y's old slot
            j = old
            y = prev
    return [frozenset(p) for p in parts]


def matroid_union_rank(ms: Sequence[Matroid], subset: Iterable[int] | None = None) -> int:
    return sum(len(p) for p in matroid_union(ms, subset))


def _require_loopless(m: Matroid):
    for e in range(m.ground_size):
        if m.is_loop(e):
            raise InstanceError(f"element {e} is a loop: infinite covering number")


def covering_number(m: Matroid) -> int:
    """Fewest independent sets covering the ground set (0 for an empty ground set)."""
    _require_loopless(m)
    n = m.ground_size
    if n == 0:
        return 0
    lo, hi = 1, n
    while lo < hi:
        k = (lo + hi) // 2
        if matroid_union_rank([m] * k) == n:
            hi = k
        else:
            lo = k + 1
    return lo


def packing_number(m: Matroid):
    """Most pairwise disjoint bases, or :data:`UNBOUNDED` when the rank is 0."""
    r = m.full_rank()
    if r == 0:
        return UNBOUNDED
    lo, hi = 0, m.ground_size // r
    while lo < hi:
        k = (lo + hi + 1) // 2
        if matroid_union_rank([m] * k) == k * r:
            lo = k
        else:
            hi = k - 1
    return lo


def covering_number_formula(m: Matroid, cap: int | None = None) -> int:
    """max ceil(|X| / r(X)) over nonempty X, by subset enumeration."""
    _require_loopless(m)
    table = rank_table(m, cap)
    sizes = np.array([bin(x).count("1") for x in range(len(table))])
    if len(table) == 1:
        return 0
    return int(max(-(-sizes[1:] // table[1:])))


def packing_number_formula(m: Matroid, cap: int | None = None):
    """min floor(|S - X| / (r(S) - r(X))) over X with r(X) < r(S), by subset enumeration."""
    table = rank_table(m, cap)
    n = m.ground_size
    full = (1 << n) - 1
    top = table[full]
    if top == 0:
        return UNBOUNDED
    sizes = np.array([bin(x).count("1") for x in range(len(table))])
    sel = table < top
    return int(min((n - sizes[sel]) // (top - table[sel])))


# --------------------------------------------------------------------------- intersection

def max_common_independent(m1: Matroid, m2: Matroid) -> frozenset[int]:
    """Maximum-cardinality common independent set via exchange-graph augmentation."""
    n = _same_ground([m1, m2])
    current: set[int] = set()
    while True:
        outside = [x for x in range(n) if x not in current]
        circ1 = {x: m1.fundamental_circuit(current, x) for x in outside}
        circ2 = {x: m2.fundamental_circuit(current, x) for x in outside}
        sources = [x for x in outside if circ1[x] is None]
        sinks = {x for x in outside if circ2[x] is None}
        # y in current -> x outside when current - y + x is independent in m1
        out_of: dict[int, list[int]] = {y: [] for y in current}
        for x in outside:
            if circ1[x] is not None:
                for y in circ1[x]:
                    out_of[y].append(x)
        via: dict[int, int | None] = {}
        queue = deque()
        for x in sources:
            via[x] = None
            queue.append(x)
        end = None
        while queue:
            a = queue.popleft()
            if a not in current and a in sinks:
                end = a
                break
            if a in current:
                nxt = out_of[a]
            else:
                nxt = sorted(circ2[a]) if circ2[a] is not None else []
            for b in nxt:
                if b not in via:
                    via[b] = a
                    queue.append(b)
        if end is None:
            return frozenset(current)
        node = end
        while node is not None:
            current ^= {node}
            node = via[node]


def common_independent_masks(m1: Matroid, m2: Matroid, cap: int | None = None) -> list[int]:
    n = _same_ground([m1, m2])
    _check_cap(n, cap)
    t1, t2 = rank_table(m1, cap), rank_table(m2, cap)
    sizes = np.array([bin(x).count("1") for x in range(1 << n)])
    return np.nonzero((t1 == sizes) & (t2 == sizes))[0].tolist()


def common_cover_number_bf(m1: Matroid, m2: Matroid, cap: int | None = None) -> int:
    """Fewest common independent sets covering the ground set, by exhaustive set cover."""
    n = _same_ground([m1, m2])
    _check_cap(n, cap)
    _require_loopless(m1)
    _require_loopless(m2)
    if n == 0:
        return 0
    masks = common_independent_masks(m1, m2, cap)
    maskset = set(masks)
    # a cover may always be taken from inclusion-maximal sets
    maximal = np.array([a for a in masks
                        if not any(((a | (1 << e)) in maskset) for e in range(n) if not a >> e & 1)],
                       dtype=np.int64)
    full = (1 << n) - 1
    reach = np.zeros(1 << n, dtype=bool)
    reach[0] = True
    for k in range(1, n + 1):
        idx = np.nonzero(reach)[0]
        nxt = np.zeros_like(reach)
        nxt[(idx[:, None] | maximal[None, :]).ravel()] = True
        reach = nxt
        if reach[full]:
            return k
    raise AssertionError("singletons are common independent in loopless matroids")


def common_packing_number_bf(m1: Matroid, m2: Matroid, cap: int | None = None):
    """Most pairwise disjoint common bases, by exhaustive search.

    Returns :data:`UNBOUNDED` when both matroids have rank 0 (the empty set is
    a common basis that may be repeated).
    """
    n = _same_ground([m1, m2])
    _check_cap(n, cap)
    r1, r2 = m1.full_rank(), m2.full_rank()
    if r1 != r2:
        return 0
    if r1 == 0:
        return UNBOUNDED
    bases = [a for a in common_independent_masks(m1, m2, cap) if bin(a).count("1") == r1]
    best = 0

    def extend(start, used, count):
        nonlocal best
        best = max(best, count)
        if count + (n - bin(used).count("1")) // r1 <= best:
            return
        for i in range(start, len(bases)):
            if not bases[i] & used:
                extend(i + 1, used | bases[i], count + 1)

    extend(0, 0, 0)
    return best
