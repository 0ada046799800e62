"""Quotient-causal-nets, mergings, contractions, subdivisions, fundamental builders."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .classify import FundamentalKind
from .errors import (
    CycleFound,
    NotCoclique,
    NotMultiEdge,
    QuotientNotAcyclic,
    SpecViolation,
    UnknownEdge,
    UnknownVertex,
    WrongClass,
    ZeroLength,
)
from .morphism import Morphism, census
from .net import CausalNet, DirectedPath, _find_cycle, _kahn, reachable


def fresh(base: str, taken) -> str:
    """``base`` with primes appended until it avoids ``taken``."""
    name = base
    while name in taken:
        name += "'"
    return name


@dataclass(frozen=True)
class QuotientSpec:
    """Vertex partition, induced segment set, and partition of the segments."""

    vertex_blocks: tuple[frozenset[str], ...]
    segments: frozenset[str]
    edge_blocks: tuple[frozenset[str], ...]

    @classmethod
    def of(cls, vertex_blocks: Iterable[Iterable[str]], segments: Iterable[str], edge_blocks: Iterable[Iterable[str]]):
        # blocks are kept sorted so equal partitions compare equal
        return cls(
            tuple(sorted((frozenset(b) for b in vertex_blocks), key=sorted)),
            frozenset(segments),
            tuple(sorted((frozenset(b) for b in edge_blocks), key=sorted)),
        )

    @classmethod
    def identity(cls, G: CausalNet) -> "QuotientSpec":
        return cls.of([[v] for v in G.vertices], G.edges, [[e] for e in G.edges])


def _check_partition(kind: str, blocks, universe: Iterable[str]) -> dict[str, frozenset[str]]:
    owner: dict[str, frozenset[str]] = {}
    for b in blocks:
        if not b:
            raise SpecViolation("partition", f"empty {kind} block")
        for x in b:
            if x in owner:
                raise SpecViolation("partition", f"{kind} {x} lies in two blocks")
            owner[x] = b
    universe = set(universe)
    extra = set(owner) - universe
    if extra:
        raise SpecViolation("partition", f"unknown {kind} {min(extra)}")
    missing = universe - set(owner)
    if missing:
        raise SpecViolation("partition", f"{kind} {min(missing)} is in no block")
    return owner


def check_spec(G: CausalNet, spec: QuotientSpec) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
    """Validate ``spec`` against ``G``; returns the block-owner maps."""
    vown = _check_partition("vertex", spec.vertex_blocks, G.vertices)
    for e in spec.segments:
        if e not in G.ends:
            raise SpecViolation("partition", f"unknown edge {e}")
    eown = _check_partition("edge", spec.edge_blocks, spec.segments)
    for e in sorted(spec.segments):
        for f in G.between[G.ends[e]]:
            if f not in spec.segments:
                raise SpecViolation("induced", f"{e} is a segment but its parallel edge {f} is not")
    for e in sorted(G.edges):
        s, t = G.ends[e]
        same = vown[s] is vown[t]
        if e in spec.segments and same:
            raise SpecViolation("(1)", f"segment {e} has both ends in one vertex block")
        if e not in spec.segments and not same:
            raise SpecViolation("(2)", f"contracted edge {e} joins two vertex blocks")
    for b in spec.edge_blocks:
        es = sorted(b)
        s0, t0 = G.ends[es[0]]
        for e in es[1:]:
            s, t = G.ends[e]
            if vown[s] is not vown[s0] or vown[t] is not vown[t0]:
                raise SpecViolation("(3)", f"edges {es[0]} and {e} have unrelated ends")
    return vown, eown


def build_quotient(G: CausalNet, spec: QuotientSpec) -> Morphism:
    """The coarse-graining ``G -> G/spec``; blocks are named by their least member."""
    vown, eown = check_spec(G, spec)
    vname = {b: min(b) for b in spec.vertex_blocks}
    ename = {b: min(b) for b in spec.edge_blocks}
    verts: list[str] = []
    for v in G.vertices:
        n = vname[vown[v]]
        if n not in verts:
            verts.append(n)
    edges: list[str] = []
    ends: dict[str, tuple[str, str]] = {}
    for e in G.edges:
        if e not in spec.segments:
            continue
        n = ename[eown[e]]
        if n not in ends:
            s, t = G.ends[e]
            edges.append(n)
            ends[n] = (vname[vown[s]], vname[vown[t]])
    if _kahn(verts, edges, ends) is None:
        raise QuotientNotAcyclic(_find_cycle(verts, edges, ends))
    H = CausalNet(tuple(verts), tuple(edges), ends)
    vmap = {v: vname[vown[v]] for v in G.vertices}
    emap = {}
    for e in G.edges:
        if e in spec.segments:
            emap[e] = H.edge_path(ename[eown[e]])
        else:
            w = vmap[G.ends[e][0]]
            emap[e] = DirectedPath(w, w, ())
    return Morphism(G, H, vmap, emap)


def spec_of(m: Morphism) -> QuotientSpec:
    """The relation data of a coarse-graining (inverse of :func:`build_quotient`)."""
    vb: dict[str, set[str]] = {}
    for v in m.dom.vertices:
        vb.setdefault(m.vmap[v], set()).add(v)
    c = census(m)
    eb: dict[str, set[str]] = {}
    for e in c.segments:
        eb.setdefault(m.emap[e].edges[0], set()).add(e)
    return QuotientSpec.of(vb.values(), c.segments, eb.values())


def merge_coclique(G: CausalNet, S: Iterable[str]) -> Morphism:
    """Merging that identifies the pairwise incomparable vertices ``S``."""
    S = sorted(set(S))
    for v in S:
        G.check_vertex(v)
    for u, v in combinations(S, 2):
        if reachable(G, u, v):
            raise NotCoclique(u, v)
        if reachable(G, v, u):
            raise NotCoclique(v, u)
    blocks = [frozenset(S)] + [frozenset([v]) for v in G.vertices if v not in S] if S else [frozenset([v]) for v in G.vertices]
    return build_quotient(G, QuotientSpec.of(blocks, G.edges, [[e] for e in G.edges]))


def contract_multiedge(G: CausalNet, eps: Iterable[str]) -> Morphism:
    """Simple contraction of a complete multi-edge ``eps``."""
    eps = sorted(set(eps))
    if not eps:
        raise NotMultiEdge("empty edge set")
    for e in eps:
        G.check_edge(e)
    pair = G.ends[eps[0]]
    if any(G.ends[e] != pair for e in eps):
        raise NotMultiEdge("edges are not parallel")
    if tuple(eps) != G.between[pair]:
        missing = sorted(set(G.between[pair]) - set(eps))
        raise NotMultiEdge(f"parallel edge {missing[0]} is missing")
    s, t = pair
    blocks = [frozenset(pair)] + [frozenset([v]) for v in G.vertices if v not in pair]
    segs = [e for e in G.edges if e not in eps]
    return build_quotient(G, QuotientSpec.of(blocks, segs, [[e] for e in segs]))


def simplify(G: CausalNet) -> Morphism:
    """Edge-coarse-graining onto the simplification of ``G``."""
    return build_quotient(G, QuotientSpec.of([[v] for v in G.vertices], G.edges, G.between.values()))


# -- the six fundamental morphisms ------------------------------------------------


def subdivide_edge(G: CausalNet, e: str, vertex: str | None = None, names: Sequence[str] | None = None) -> Morphism:
    """``G -> G'`` where ``e`` becomes a length-2 path through a new vertex."""
    G.check_edge(e)
    s, t = G.ends[e]
    m = vertex or fresh(f"{e}.m", G.vertex_set)
    if m in G.vertex_set:
        raise WrongClass("fresh vertex id", m)
    taken = set(G.ends) - {e}
    a = names[0] if names else fresh(f"{e}.1", taken)
    b = names[1] if names else fresh(f"{e}.2", taken | {a})
    verts = G.vertices + (m,)
    edges = tuple(x for f in G.edges for x in ((a, b) if f == e else (f,)))
    ends = {f: G.ends[f] for f in G.edges if f != e}
    ends[a] = (s, m)
    ends[b] = (m, t)
    H = CausalNet(verts, edges, ends)
    emap = {f: H.edge_path(f) for f in G.edges if f != e}
    emap[e] = H.path((a, b))
    return Morphism(G, H, {v: v for v in G.vertices}, emap)


def add_edge(G: CausalNet, u: str, v: str, name: str | None = None) -> Morphism:
    """Embedding of ``G`` into ``G`` plus a new edge ``u -> v``."""
    G.check_vertex(u)
    G.check_vertex(v)
    if reachable(G, v, u):
        raise CycleFound([name or "new"])
    n = name or fresh("x", G.ends)
    if n in G.ends:
        raise WrongClass("fresh edge id", n)
    ends = dict(G.ends)
    ends[n] = (u, v)
    H = CausalNet(G.vertices, G.edges + (n,), ends)
    return Morphism(G, H, {x: x for x in G.vertices}, {e: H.edge_path(e) for e in G.edges})


def add_isolated_vertex(G: CausalNet, name: str | None = None) -> Morphism:
    n = name or fresh("z", G.vertex_set)
    if n in G.vertex_set:
        raise WrongClass("fresh vertex id", n)
    H = CausalNet(G.vertices + (n,), G.edges, dict(G.ends))
    return Morphism(G, H, {x: x for x in G.vertices}, {e: H.edge_path(e) for e in G.edges})


def merge_two_vertices(G: CausalNet, u: str, v: str) -> Morphism:
    if u == v:
        raise NotCoclique(u, v)
    return merge_coclique(G, [u, v])


def coarse_grain_parallel(G: CausalNet, e1: str, e2: str) -> Morphism:
    G.check_edge(e1)
    G.check_edge(e2)
    if e1 == e2 or G.ends[e1] != G.ends[e2]:
        raise NotMultiEdge(f"{e1} and {e2} are not distinct parallel edges")
    blocks = [[e1, e2]] + [[e] for e in G.edges if e not in (e1, e2)]
    return build_quotient(G, QuotientSpec.of([[v] for v in G.vertices], G.edges, blocks))


def contract_edge(G: CausalNet, e: str) -> Morphism:
    """Contract a single edge; parallel siblings must be coarse-grained first."""
    G.check_edge(e)
    group = G.between[G.ends[e]]
    if len(group) > 1:
        raise NotMultiEdge(f"{e} has parallel edges; apply coarse_grain_parallel first")
    return contract_multiedge(G, [e])


def fundamental(G: CausalNet, kind: FundamentalKind | str, *args: str) -> Morphism:
    """Dispatch to one of the six fundamental builders."""
    kind = FundamentalKind(kind) if not isinstance(kind, FundamentalKind) else kind
    if kind is FundamentalKind.SUBDIVIDE_EDGE:
        return subdivide_edge(G, *args)
    if kind is FundamentalKind.ADD_EDGE:
        return add_edge(G, *args)
    if kind is FundamentalKind.ADD_ISOLATED_VERTEX:
        return add_isolated_vertex(G, *args)
    if kind is FundamentalKind.MERGE_TWO_VERTICES:
        return merge_two_vertices(G, *args)
    if kind is FundamentalKind.COARSE_GRAIN_PARALLEL:
        return coarse_grain_parallel(G, *args)
    return contract_edge(G, *args)


def subdivide(G: CausalNet, lengths: Mapping[str, int]) -> Morphism:
    """Replace each edge ``e`` by a chain of ``lengths[e]`` edges (default 1)."""
    for e, k in lengths.items():
        G.check_edge(e)
        if k < 1:
            raise ZeroLength(e)
    vtaken = set(G.vertices)
    etaken = {e for e in G.edges if lengths.get(e, 1) == 1}
    verts = list(G.vertices)
    edges: list[str] = []
    ends: dict[str, tuple[str, str]] = {}
    chains: dict[str, tuple[str, ...]] = {}
    for e in G.edges:
        k = lengths.get(e, 1)
        s, t = G.ends[e]
        if k == 1:
            edges.append(e)
            ends[e] = (s, t)
            chains[e] = (e,)
            continue
        inner = []
        for i in range(1, k):
            v = fresh(f"{e}.v{i}", vtaken)
            vtaken.add(v)
            inner.append(v)
        verts.extend(inner)
        stops = [s] + inner + [t]
        names = []
        for i in range(k):
            n = fresh(f"{e}.{i + 1}", etaken)
            etaken.add(n)
            names.append(n)
            edges.append(n)
            ends[n] = (stops[i], stops[i + 1])
        chains[e] = tuple(names)
    H = CausalNet(tuple(verts), tuple(edges), ends)
    emap = {e: H.path(chains[e]) for e in G.edges}
    return Morphism(G, H, {v: v for v in G.vertices}, emap)


# -- sub-nets and deletions ----------------------------------------------------------


def inclusion_of(K: CausalNet, G: CausalNet) -> Morphism:
    """The embedding of a sub-causal-net ``K`` of ``G`` given by identity on ids."""
    for v in K.vertices:
        G.check_vertex(v)
    for e in K.edges:
        if G.ends.get(e) != K.ends[e]:
            raise UnknownEdge(e)
    return Morphism(K, G, {v: v for v in K.vertices}, {e: G.edge_path(e) for e in K.edges})


def delete_edge(G: CausalNet, e: str) -> Morphism:
    """Embedding ``G - e -> G``."""
    G.check_edge(e)
    return inclusion_of(G.sub_net(G.vertices, [f for f in G.edges if f != e]), G)


def delete_isolated_vertex(G: CausalNet, v: str) -> Morphism:
    """Embedding ``G - v -> G`` for an isolated vertex ``v``."""
    G.check_vertex(v)
    if not G.isolated(v):
        raise UnknownVertex(v)
    return inclusion_of(G.sub_net([x for x in G.vertices if x != v], G.edges), G)


def sub_nets(G: CausalNet) -> Iterator[CausalNet]:
    """All sub-causal-nets: edge subsets, then vertex supersets of their endpoints."""
    edges = sorted(G.edges)
    verts = sorted(G.vertices)
    for r in range(len(edges) + 1):
        for es in combinations(edges, r):
            need = {x for e in es for x in G.ends[e]}
            free = [v for v in verts if v not in need]
            for k in range(len(free) + 1):
                for extra in combinations(free, k):
                    yield G.sub_net(need | set(extra), es)


# -- codomain-free enumeration of coarse-grainings --------------------------------


def set_partitions(items: Sequence[str]) -> Iterator[list[list[str]]]:
    """All set partitions in a fixed recursive order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + [list(b) for b in part]
        for i in range(len(part)):
            yield [list(b) for b in part[:i]] + [[first] + part[i]] + [list(b) for b in part[i + 1 :]]


def iter_quotient_specs(G: CausalNet, allow_contraction: bool = True, merge_edges: bool = True) -> Iterator[QuotientSpec]:
    """Every valid spec on ``G`` (acyclicity is left to :func:`build_quotient`)."""
    for vpart in set_partitions(sorted(G.vertices)):
        owner = {v: i for i, b in enumerate(vpart) for v in b}
        segs = [e for e in sorted(G.edges) if owner[G.ends[e][0]] != owner[G.ends[e][1]]]
        if not allow_contraction and len(segs) != len(G.edges):
            continue
        groups: dict[tuple[int, int], list[str]] = {}
        for e in segs:
            groups.setdefault((owner[G.ends[e][0]], owner[G.ends[e][1]]), []).append(e)
        group_parts = [list(set_partitions(g)) if merge_edges else [[[e] for e in g]] for g in groups.values()]
        vblocks = [frozenset(b) for b in vpart]

        def rec(i, acc):
            if i == len(group_parts):
                yield QuotientSpec.of(vblocks, segs, acc)
                return
            for p in group_parts[i]:
                yield from rec(i + 1, acc + p)

        yield from rec(0, [])


def iter_coarse_grainings(
    G: CausalNet, allow_contraction: bool = True, merge_edges: bool = True
) -> Iterator[Morphism]:
    """All coarse-grainings out of ``G``, one per relation datum."""
    for spec in iter_quotient_specs(G, allow_contraction, merge_edges):
        try:
            yield build_quotient(G, spec)
        except QuotientNotAcyclic:
            continue
