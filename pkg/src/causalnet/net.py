"""Causal-nets, directed paths and queries on their path categories."""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleFound,
    DanglingEndpoint,
    DuplicateId,
    LimitExceeded,
    NonComposable,
    UnknownEdge,
    UnknownVertex,
)

DEFAULT_CAP = 100_000


@dataclass(frozen=True, eq=False)
class CausalNet:
    """A finite acyclic multidigraph.

    Vertex and edge ids are opaque strings living in separate namespaces.
    Declaration order is kept for serialization; equality ignores it.
    Build instances with :func:`validate_net` or :meth:`build`.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    ends: Mapping[str, tuple[str, str]]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()) -> "CausalNet":
        return validate_net(vertices, edges)

    # -- structural equality -------------------------------------------------
    @cached_property
    def _key(self):
        return (frozenset(self.vertices), frozenset(self.ends.items()))

    def __eq__(self, other):
        if not isinstance(other, CausalNet):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        es = ", ".join(f"{e}:{s}->{t}" for e, (s, t) in ((e, self.ends[e]) for e in self.edges))
        return f"CausalNet(V=[{', '.join(self.vertices)}], E=[{es}])"

    # -- basic accessors -----------------------------------------------------
    def src(self, e: str) -> str:
        return self.ends[e][0]

    def tgt(self, e: str) -> str:
        return self.ends[e][1]

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def has_vertex(self, v: str) -> bool:
        return v in self.vertex_set

    def check_vertex(self, v: str) -> None:
        if v not in self.vertex_set:
            raise UnknownVertex(v)

    def check_edge(self, e: str) -> None:
        if e not in self.ends:
            raise UnknownEdge(e)

    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[self.ends[e][0]].append(e)
        return {v: tuple(sorted(es)) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[self.ends[e][1]].append(e)
        return {v: tuple(sorted(es)) for v, es in inc.items()}

    @cached_property
    def between(self) -> dict[tuple[str, str], tuple[str, ...]]:
        """Edges grouped by (source, target), each group sorted by id."""
        groups: dict[tuple[str, str], list[str]] = {}
        for e in self.edges:
            groups.setdefault(self.ends[e], []).append(e)
        return {k: tuple(sorted(v)) for k, v in groups.items()}

    @cached_property
    def topological_order(self) -> tuple[str, ...]:
        order = _kahn(self.vertices, self.edges, self.ends)
        assert order is not None
        return order

    @cached_property
    def position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.topological_order)}

    @cached_property
    def descendants(self) -> dict[str, frozenset[str]]:
        """Vertices reachable from each vertex (reflexive)."""
        reach: dict[str, frozenset[str]] = {}
        for v in reversed(self.topological_order):
            acc = {v}
            for e in self.out_edges[v]:
                acc |= reach[self.ends[e][1]]
            reach[v] = frozenset(acc)
        return reach

    def degree(self, v: str) -> int:
        return len(self.out_edges[v]) + len(self.in_edges[v])

    def isolated(self, v: str) -> bool:
        return not self.out_edges[v] and not self.in_edges[v]

    @cached_property
    def components(self) -> tuple[tuple[str, ...], ...]:
        """Connected components of the underlying undirected graph, sorted."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t in self.ends.values():
            a, b = find(s), find(t)
            if a != b:
                parent[a] = b
        groups: dict[str, list[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return tuple(sorted(tuple(sorted(g)) for g in groups.values()))

    @cached_property
    def is_simple(self) -> bool:
        return all(len(g) == 1 for g in self.between.values())

    def sub_net(self, vertices: Iterable[str], edges: Iterable[str]) -> "CausalNet":
        """Sub-causal-net on the given ids, keeping declaration order."""
        vs, es = set(vertices), set(edges)
        for e in es:
            self.check_edge(e)
            s, t = self.ends[e]
            if s not in vs or t not in vs:
                raise DanglingEndpoint(e, s if s not in vs else t)
        for v in vs:
            self.check_vertex(v)
        return CausalNet(
            tuple(v for v in self.vertices if v in vs),
            tuple(e for e in self.edges if e in es),
            {e: self.ends[e] for e in self.edges if e in es},
        )

    def induced(self, vertices: Iterable[str]) -> "CausalNet":
        vs = set(vertices)
        return self.sub_net(vs, [e for e in self.edges if self.ends[e][0] in vs and self.ends[e][1] in vs])

    # -- paths ---------------------------------------------------------------
    def identity(self, v: str) -> "DirectedPath":
        self.check_vertex(v)
        return DirectedPath(v, v, ())

    def path(self, edges: Sequence[str]) -> "DirectedPath":
        """Directed path from a nonempty source-first edge sequence."""
        edges = tuple(edges)
        if not edges:
            raise ValueError("use identity() for length-0 paths")
        for e in edges:
            self.check_edge(e)
        for a, b in zip(edges, edges[1:]):
            if self.ends[a][1] != self.ends[b][0]:
                raise NonComposable(self.ends[a][1], self.ends[b][0])
        return DirectedPath(self.ends[edges[0]][0], self.ends[edges[-1]][1], edges)

    def edge_path(self, e: str) -> "DirectedPath":
        s, t = self.ends[e]
        return DirectedPath(s, t, (e,))

    def path_vertices(self, p: "DirectedPath") -> tuple[str, ...]:
        if not p.edges:
            return (p.source,)
        return (p.source,) + tuple(self.ends[e][1] for e in p.edges)


@dataclass(frozen=True)
class DirectedPath:
    """A morphism of the path category: source-first edge sequence.

    A length-0 path is the identity at ``source`` (= ``target``).
    """

    source: str
    target: str
    edges: tuple[str, ...] = ()

    @property
    def base(self) -> str:
        return self.source

    def __len__(self):
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return not self.edges

    def __repr__(self):
        if not self.edges:
            return f"Id[{self.source}]"
        return "[" + " ".join(self.edges) + "]"


def _kahn(vertices, edges, ends):
    indeg = {v: 0 for v in vertices}
    out: dict[str, list[str]] = {v: [] for v in vertices}
    for e in edges:
        s, t = ends[e]
        indeg[t] += 1
        out[s].append(t)
    ready = sorted(v for v in vertices if indeg[v] == 0)
    order = []
    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for t in out[v]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(ready, t)
    if len(order) != len(vertices):
        return None
    return tuple(order)


def _find_cycle(vertices, edges, ends) -> list[str]:
    out: dict[str, list[str]] = {v: [] for v in vertices}
    for e in sorted(edges):
        out[ends[e][0]].append(e)
    color = {v: 0 for v in vertices}
    stack_edges: list[str] = []

    def visit(v):
        color[v] = 1
        for e in out[v]:
            t = ends[e][1]
            stack_edges.append(e)
            if color[t] == 1:
                # cycle: edges on the stack from the first one leaving t
                idx = next(i for i, x in enumerate(stack_edges) if ends[x][0] == t)
                return stack_edges[idx:]
            if color[t] == 0:
                found = visit(t)
                if found:
                    return found
            stack_edges.pop()
        color[v] = 2
        return None

    for v in sorted(vertices):
        if color[v] == 0:
            found = visit(v)
            if found:
                k = found.index(min(found))
                return found[k:] + found[:k]
    return []


def validate_net(vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()) -> CausalNet:
    """Check raw vertex/edge lists and return a :class:`CausalNet`.

    ``edges`` holds ``(id, src, tgt)`` triples. Raises the first violated
    invariant: duplicate ids, :class:`DanglingEndpoint`, :class:`CycleFound`.
    """
    vs = tuple(vertices)
    seen = set()
    for v in vs:
        if v in seen:
            raise DuplicateId("vertex", v)
        seen.add(v)
    es: list[str] = []
    ends: dict[str, tuple[str, str]] = {}
    for e, s, t in edges:
        if e in ends:
            raise DuplicateId("edge", e)
        for x in (s, t):
            if x not in seen:
                raise DanglingEndpoint(e, x)
        es.append(e)
        ends[e] = (s, t)
    if _kahn(vs, es, ends) is None:
        raise CycleFound(_find_cycle(vs, es, ends))
    return CausalNet(vs, tuple(es), ends)


def enumerate_paths(net: CausalNet, u: str, v: str, cap: int | None = DEFAULT_CAP) -> list[DirectedPath]:
    """All directed paths from ``u`` to ``v`` in lexicographic edge-id order."""
    net.check_vertex(u)
    net.check_vertex(v)
    return list(_paths(net, u, v, cap))


def _paths(net: CausalNet, u: str, v: str, cap):
    if u == v:
        return (DirectedPath(u, u, ()),)
    if v not in net.descendants[u]:
        return ()
    result: list[DirectedPath] = []
    trail: list[str] = []
    desc = net.descendants

    def walk(x):
        for e in net.out_edges[x]:
            t = net.ends[e][1]
            if v not in desc[t]:
                continue
            trail.append(e)
            if t == v:
                if cap is not None and len(result) >= cap:
                    raise LimitExceeded(cap, "paths")
                result.append(DirectedPath(u, v, tuple(trail)))
            else:
                walk(t)
            trail.pop()

    walk(u)
    return result


def count_paths(net: CausalNet, u: str, v: str) -> int:
    """Size of Hom(u, v) by dynamic programming over the topological order."""
    net.check_vertex(u)
    net.check_vertex(v)
    if v not in net.descendants[u]:
        return 0
    counts = {u: 1}
    pos = net.position
    for x in net.topological_order[pos[u] :]:
        c = counts.get(x, 0)
        if not c:
            continue
        if x == v:
            break
        for e in net.out_edges[x]:
            t = net.ends[e][1]
            counts[t] = counts.get(t, 0) + c
    return counts.get(v, 0)


def all_paths(net: CausalNet, cap: int | None = DEFAULT_CAP) -> list[DirectedPath]:
    """Every morphism of the path category, identities included."""
    out: list[DirectedPath] = []
    for u in sorted(net.vertices):
        for v in sorted(net.descendants[u]):
            out.extend(_paths(net, u, v, None))
            if cap is not None and len(out) > cap:
                raise LimitExceeded(cap, "paths")
    return out


def compose_paths(p: DirectedPath, q: DirectedPath) -> DirectedPath:
    """``p`` followed by ``q`` (diagrammatic order)."""
    if p.target != q.source:
        raise NonComposable(p.target, q.source)
    return DirectedPath(p.source, q.target, p.edges + q.edges)


def reachable(net: CausalNet, u: str, v: str) -> bool:
    """Whether a directed path of length >= 0 runs from ``u`` to ``v``."""
    net.check_vertex(u)
    net.check_vertex(v)
    return v in net.descendants[u]


def comparable(net: CausalNet, u: str, v: str) -> bool:
    return reachable(net, u, v) or reachable(net, v, u)


# -- structure ---------------------------------------------------------------


def simple_pairs(net: CausalNet) -> list[tuple[str, str]]:
    """Edge endpoints of the simplification, one pair per multi-edge."""
    return sorted(net.between)


def _is_forest_connected(vertices, pairs) -> bool:
    """Underlying undirected graph on ``pairs`` is a tree."""
    if not vertices:
        return False
    if len(pairs) != len(vertices) - 1:
        return False
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in pairs:
        a, b = find(s), find(t)
        if a == b:
            return False
        parent[a] = b
    return True


def _is_directed_chain(vertices, pairs) -> bool:
    if not vertices:
        return False
    if len(pairs) != len(vertices) - 1:
        return False
    outd = Counter(s for s, _ in pairs)
    ind = Counter(t for _, t in pairs)
    if any(c > 1 for c in outd.values()) or any(c > 1 for c in ind.values()):
        return False
    return _is_forest_connected(vertices, pairs)


@dataclass(frozen=True)
class StructureFlags:
    is_connected: bool
    is_simple: bool
    is_point: bool
    is_causal_tree: bool
    is_causal_Tree: bool
    is_directed_Path: bool
    is_path: bool
    is_complete: bool
    is_discrete: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def is_connected(net: CausalNet) -> bool:
    return len(net.components) <= 1


def is_causal_tree(net: CausalNet) -> bool:
    return _is_forest_connected(net.vertices, [net.ends[e] for e in net.edges])


def is_causal_Tree(net: CausalNet) -> bool:  # noqa: N802 - name mirrors the notion
    return _is_forest_connected(net.vertices, simple_pairs(net))


def is_directed_Path(net: CausalNet) -> bool:  # noqa: N802
    return _is_directed_chain(net.vertices, simple_pairs(net))


def is_complete(net: CausalNet) -> bool:
    """Simple, nonempty, and every two distinct vertices joined by exactly one edge."""
    n = len(net.vertices)
    if n == 0 or not net.is_simple:
        return False
    return len(net.edges) == n * (n - 1) // 2


def structure_flags(net: CausalNet) -> StructureFlags:
    n = len(net.vertices)
    return StructureFlags(
        is_connected=is_connected(net),
        is_simple=net.is_simple,
        is_point=n == 1 and not net.edges,
        is_causal_tree=is_causal_tree(net),
        is_causal_Tree=is_causal_Tree(net),
        is_directed_Path=is_directed_Path(net),
        # unique directed path between any two vertices forces a simple chain
        is_path=n >= 1 and _is_directed_chain(net.vertices, [net.ends[e] for e in net.edges]),
        is_complete=is_complete(net),
        is_discrete=not net.edges,
    )


@dataclass(frozen=True)
class HomotopySignature:
    components: int
    betti: tuple[int, ...]


def homotopy_signature(net: CausalNet) -> HomotopySignature:
    """Component count and sorted per-component first Betti numbers of the simplification."""
    pairs = simple_pairs(net)
    comp_of = {}
    for i, comp in enumerate(net.components):
        for v in comp:
            comp_of[v] = i
    ecount = Counter(comp_of[s] for s, _ in pairs)
    betti = sorted(ecount.get(i, 0) - len(c) + 1 for i, c in enumerate(net.components))
    return HomotopySignature(len(net.components), tuple(betti))
