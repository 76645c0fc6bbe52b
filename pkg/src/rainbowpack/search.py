"""Exact backtracking over "items placed into k interchangeable parts".

An *item* is a tuple of ground elements (edges or arcs) that are decided
together; a *placement* gives a part id (``-1`` = unused) to each element of
the item.  Subclasses supply the problem-specific pieces:

* ``_local_ok``: can this placement be added to the partial state?  Must be
  monotone (a placement rejected now stays rejected deeper in the tree).
* ``_apply``: record a placement in the state.
* ``_global_filter``: bounds that look at the whole state; may shrink
  domains, returns ``False`` on a dead end.
* ``_final_ok``: acceptance test once every item is placed.

Parts are interchangeable in all problems solved here, so a placement that
opens previously empty parts is only tried in one canonical labelling:
newly opened parts, sorted by (element count descending, first position in
the item), must be exactly the next unused part ids.
"""

from __future__ import annotations

from typing import Sequence

from .errors import SearchBudgetExceeded

__all__ = ["DEFAULT_BUDGET", "PartSearch", "find_bridges", "connected"]

#: Default number of search nodes before giving up with SearchBudgetExceeded.
DEFAULT_BUDGET = 500_000


def connected(n: int, edges) -> bool:
    parent = list(range(n))
    comps = n

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            comps -= 1
            if comps == 1:
                return True
    return comps <= 1


def find_bridges(n: int, edges: Sequence[tuple[int, int, int]]) -> tuple[bool, list[int]]:
    """Connectivity and bridge ids of an undirected multigraph.

    ``edges`` holds ``(u, v, edge_id)`` triples; loops are ignored.  Returns
    ``(is_connected, bridge_ids)``.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for u, v, eid in edges:
        if u != v:
            adj[u].append((v, eid))
            adj[v].append((u, eid))
    disc = [-1] * n
    low = [0] * n
    bridges = []
    disc[0] = low[0] = 0
    timer = 1
    # iterative DFS: frames of (vertex, parent edge id, neighbour iterator index)
    stack = [(0, -1, 0)]
    while stack:
        v, pe, i = stack[-1]
        if i < len(adj[v]):
            stack[-1] = (v, pe, i + 1)
            w, eid = adj[v][i]
            if eid == pe:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, eid, 0))
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] > disc[u]:
                    bridges.append(pe)
    return timer == n, bridges


class _Placement:
    __slots__ = ("parts", "opened", "counts")

    def __init__(self, parts: tuple[int, ...]):
        self.parts = parts
        counts: dict[int, int] = {}
        first: dict[int, int] = {}
        for pos, j in enumerate(parts):
            if j < 0:
                continue
            counts[j] = counts.get(j, 0) + 1
            first.setdefault(j, pos)
        self.counts = counts
        # touched parts in canonical order
        self.opened = sorted(counts, key=lambda j: (-counts[j], first[j]))


class PartSearch:
    """Base class; see the module docstring for the subclass contract."""

    def __init__(self, k: int, items: Sequence[tuple[int, ...]],
                 placements: Sequence[Sequence[tuple[int, ...]]],
                 priority: Sequence | None = None, budget: int | None = None,
                 probing: bool = False):
        self.k = k
        self.probing = probing
        self.items = [tuple(it) for it in items]
        self.placements = [[_Placement(tuple(p)) for p in ps] for ps in placements]
        self.priority = list(priority) if priority is not None else list(range(len(self.items)))
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.nodes = 0

    # -- hooks
    def _initial_state(self):
        raise NotImplementedError

    def _local_ok(self, state, item: int, placement: _Placement) -> bool:
        return True

    def _apply(self, state, item: int, placement: _Placement):
        raise NotImplementedError

    def _global_filter(self, state) -> bool:
        return True

    def _final_ok(self, state) -> bool:
        return True

    # -- engine
    def _canonical(self, state, placement: _Placement) -> bool:
        t = state.opened
        for j in placement.opened:
            if j >= t:
                if j != t:
                    return False
                t += 1
        return True

    def _assign(self, state, item: int, idx: int):
        placement = self.placements[item][idx]
        state.choice[item] = idx
        state.domain[item] = None
        for j in placement.opened:
            if j == state.opened:
                state.opened += 1
        self._apply(state, item, placement)

    def restrict(self, state, item: int, keep) -> bool:
        """Filter an undecided item's domain with predicate ``keep(placement)``.

        Returns whether the domain shrank.
        """
        dom = state.domain[item]
        new = [i for i in dom if keep(self.placements[item][i])]
        if len(new) != len(dom):
            state.domain[item] = new
            return True
        return False

    def _propagate(self, state) -> bool:
        while True:
            changed = False
            for item in range(len(self.items)):
                dom = state.domain[item]
                if dom is None:
                    continue
                ps = self.placements[item]
                dom = [i for i in dom if self._local_ok(state, item, ps[i])]
                state.domain[item] = dom
                cdom = [i for i in dom if self._canonical(state, ps[i])]
                if not cdom:
                    return False
                if len(cdom) == 1:
                    self._assign(state, item, cdom[0])
                    changed = True
            if changed:
                continue
            before = [None if d is None else len(d) for d in state.domain]
            if not self._global_filter(state):
                return False
            after = [None if d is None else len(d) for d in state.domain]
            if before == after:
                return True

    def _branch_item(self, state):
        best, best_key, best_dom = None, None, None
        for item in range(len(self.items)):
            dom = state.domain[item]
            if dom is None:
                continue
            cdom = [i for i in dom if self._canonical(state, self.placements[item][i])]
            key = (len(cdom), self.priority[item])
            if best_key is None or key < best_key:
                best, best_key, best_dom = item, key, cdom
        return best, best_dom

    def _probe(self, state) -> bool:
        """Drop placements whose propagation fails on its own; repeat to a fixpoint."""
        while True:
            shrunk = False
            for item in range(len(self.items)):
                dom = state.domain[item]
                if dom is None:
                    continue
                keep = []
                for idx in dom:
                    if not self._canonical(state, self.placements[item][idx]):
                        keep.append(idx)
                        continue
                    trial = state.copy()
                    self._assign(trial, item, idx)
                    if self._propagate(trial):
                        keep.append(idx)
                if len(keep) != len(dom):
                    state.domain[item] = keep
                    shrunk = True
                    if not self._propagate(state):
                        return False
            if not shrunk:
                return True

    def _dfs(self, state):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"search budget of {self.budget} nodes exhausted", self.nodes)
        if not self._propagate(state):
            return None
        if self.probing and not self._probe(state):
            return None
        item, dom = self._branch_item(state)
        if item is None:
            return state if self._final_ok(state) else None
        for idx in dom:
            child = state.copy()
            self._assign(child, item, idx)
            found = self._dfs(child)
            if found is not None:
                return found
        return None

    def solve(self):
        """Run the search; returns the final state or ``None`` when no solution exists."""
        self.nodes = 0
        state = self._initial_state()
        state.domain = [list(range(len(ps))) for ps in self.placements]
        state.choice = [None] * len(self.items)
        state.opened = 0
        return self._dfs(state)

    def element_parts(self, state) -> dict[int, int]:
        out = {}
        for item, idx in enumerate(state.choice):
            for e, j in zip(self.items[item], self.placements[item][idx].parts):
                out[e] = j
        return out


class _State:
    """Plain attribute bag; ``copy`` duplicates every per-node container."""

    def copy(self):
        new = _State.__new__(_State)
        for name, value in self.__dict__.items():
            if isinstance(value, list):
                value = [v.copy() if isinstance(v, (list, set)) else v for v in value]
            setattr(new, name, value)
        return new


class TreePackingSearch(PartSearch):
    """k disjoint spanning trees; optional per-part color uniqueness.

    State per part: component labels (relabel-on-union), edge count and the
    set of colors used.  The global filter requires that every part, together
    with all edges some remaining placement could still give it, is connected;
    a bridge of that graph is forced into the part.
    """

    def __init__(self, vertex_count, edges, k, items, placements, colors=None, **kw):
        super().__init__(k, items, placements, **kw)
        self.n = vertex_count
        self.edges = edges
        self.colors = colors

    def _initial_state(self):
        st = _State()
        st.comp = [list(range(self.n)) for _ in range(self.k)]
        st.size = [0] * self.k
        st.used = [set() for _ in range(self.k)]
        st.where = [None] * len(self.edges)
        return st

    def _local_ok(self, st, item, placement):
        merged: dict[tuple[int, int], int] = {}
        seen_colors: set[tuple[int, int]] = set()

        def label(j, x):
            x = st.comp[j][x]
            while (j, x) in merged:
                x = merged[(j, x)]
            return x

        for e, j in zip(self.items[item], placement.parts):
            if j < 0:
                continue
            u, v = self.edges[e]
            a, b = label(j, u), label(j, v)
            if a == b:
                return False
            merged[(j, a)] = b
            if self.colors is not None:
                c = self.colors[e]
                if c in st.used[j] or (j, c) in seen_colors:
                    return False
                seen_colors.add((j, c))
        return True

    def _apply(self, st, item, placement):
        for e, j in zip(self.items[item], placement.parts):
            st.where[e] = j
            if j < 0:
                continue
            u, v = self.edges[e]
            comp = st.comp[j]
            a, b = comp[u], comp[v]
            st.comp[j] = [a if x == b else x for x in comp]
            st.size[j] += 1
            if self.colors is not None:
                st.used[j].add(self.colors[e])

    def _potential(self, st, j):
        out = []
        owner = {}
        for e, w in enumerate(st.where):
            if w == j:
                u, v = self.edges[e]
                out.append((u, v, e))
        for item, dom in enumerate(st.domain):
            if dom is None:
                continue
            ps = self.placements[item]
            for pos, e in enumerate(self.items[item]):
                if any(ps[i].parts[pos] == j for i in dom):
                    u, v = self.edges[e]
                    out.append((u, v, e))
                    owner[e] = (item, pos)
        return out, owner

    def _global_filter(self, st):
        if self.n <= 1:
            return True
        for j in range(self.k):
            if st.size[j] == self.n - 1:
                continue
            edges, owner = self._potential(st, j)
            ok, bridges = find_bridges(self.n, edges)
            if not ok:
                return False
            for e in bridges:
                if e in owner:
                    item, pos = owner[e]
                    if st.domain[item] is not None:
                        self.restrict(st, item, lambda p, pos=pos, j=j: p.parts[pos] == j)
                        if not st.domain[item]:
                            return False
        return True

    def _final_ok(self, st):
        return all(s == self.n - 1 for s in st.size)


class ArcDecompositionSearch(PartSearch):
    """Partition arcs into k weakly connected spanning parts covering every non-root in-degree.

    Loops count for in-degree only.  Filters: for every non-root vertex and
    part still lacking an in-arc, the undecided items able to supply one must
    exist (and a single candidate is forced); each part plus its potential
    arcs must be connected, bridges being forced into the part.
    """

    def __init__(self, digraph, k, items, placements, **kw):
        super().__init__(k, items, placements, **kw)
        self.d = digraph
        self.n = digraph.vertex_count
        self.arcs = digraph.arcs
        self.item_of = {}
        for item, members in enumerate(self.items):
            for pos, a in enumerate(members):
                self.item_of[a] = (item, pos)
        self.in_items = [sorted({self.item_of[a][0] for a in arcs}) for arcs in digraph.in_arcs()]

    def _initial_state(self):
        st = _State()
        st.indeg = [[0] * self.n for _ in range(self.k)]
        st.where = [None] * len(self.arcs)
        return st

    def _apply(self, st, item, placement):
        for a, j in zip(self.items[item], placement.parts):
            st.where[a] = j
            st.indeg[j][self.arcs[a][1]] += 1

    def _gives(self, item, head, j):
        # placements of ``item`` that put at least one arc into ``head`` on part j
        members = self.items[item]
        return lambda p: any(jj == j and self.arcs[a][1] == head for a, jj in zip(members, p.parts))

    def _global_filter(self, st):
        root = self.d.root
        for v in range(self.n):
            if v == root:
                continue
            for j in range(self.k):
                if st.indeg[j][v]:
                    continue
                cands = []
                for item in self.in_items[v]:
                    dom = st.domain[item]
                    if dom is None:
                        continue
                    test = self._gives(item, v, j)
                    if any(test(self.placements[item][i]) for i in dom):
                        cands.append(item)
                if not cands:
                    return False
                if len(cands) == 1:
                    self.restrict(st, cands[0], self._gives(cands[0], v, j))
                    if not st.domain[cands[0]]:
                        return False
        if self.n <= 1:
            return True
        for j in range(self.k):
            edges, owner = [], {}
            for a, w in enumerate(st.where):
                if w == j:
                    t, h = self.arcs[a]
                    edges.append((t, h, a))
            for item, dom in enumerate(st.domain):
                if dom is None:
                    continue
                ps = self.placements[item]
                for pos, a in enumerate(self.items[item]):
                    if any(ps[i].parts[pos] == j for i in dom):
                        t, h = self.arcs[a]
                        edges.append((t, h, a))
                        owner[a] = (item, pos)
            ok, bridges = find_bridges(self.n, edges)
            if not ok:
                return False
            for a in bridges:
                if a in owner:
                    item, pos = owner[a]
                    if st.domain[item] is not None:
                        members = self.items[item]
                        t, h = self.arcs[a]
                        # any arc of the item joining the same endpoints serves as the bridge
                        self.restrict(st, item, lambda p, members=members, j=j, t=t, h=h: any(
                            jj == j and {self.arcs[b][0], self.arcs[b][1]} == {t, h}
                            for b, jj in zip(members, p.parts)))
                        if not st.domain[item]:
                            return False
        return True

    def _final_ok(self, st):
        root = self.d.root
        for j in range(self.k):
            if any(st.indeg[j][v] == 0 for v in range(self.n) if v != root):
                return False
            part = [self.arcs[a] for a, w in enumerate(st.where) if w == j]
            if not connected(self.n, part):
                return False
        return True
