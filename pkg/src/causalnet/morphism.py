"""Morphisms of causal-nets: functors between path categories."""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DeadlineExceeded,
    DomainMismatch,
    EndpointMismatch,
    LimitExceeded,
    PartialMap,
    PathNotInCodomain,
    UnknownVertex,
)
from .net import DEFAULT_CAP, CausalNet, DirectedPath, _paths


@dataclass(frozen=True, eq=False)
class Morphism:
    """Vertex map plus edge-to-path map; equality is structural."""

    dom: CausalNet
    cod: CausalNet
    vmap: Mapping[str, str]
    emap: Mapping[str, DirectedPath]

    @cached_property
    def _key(self):
        return (self.dom, self.cod, frozenset(self.vmap.items()), frozenset(self.emap.items()))

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        vs = ", ".join(f"{v}->{self.vmap[v]}" for v in self.dom.vertices)
        es = ", ".join(f"{e}->{self.emap[e]!r}" for e in self.dom.edges)
        return f"Morphism({vs}; {es})"

    def __call__(self, p: DirectedPath) -> DirectedPath:
        return self.apply(p)

    def apply(self, p: DirectedPath) -> DirectedPath:
        """Image of a directed path of the domain."""
        if not p.edges:
            w = self.vmap[p.source]
            return DirectedPath(w, w, ())
        out: list[str] = []
        for e in p.edges:
            out.extend(self.emap[e].edges)
        s, t = self.vmap[p.source], self.vmap[p.target]
        return DirectedPath(s, t, tuple(out))

    def lengths(self) -> dict[str, int]:
        return {e: len(self.emap[e].edges) for e in self.dom.edges}

    def vertex_preimages(self) -> dict[str, list[str]]:
        pre: dict[str, list[str]] = {w: [] for w in self.cod.vertices}
        for v in self.dom.vertices:
            pre[self.vmap[v]].append(v)
        return {w: sorted(vs) for w, vs in pre.items()}

    def edge_preimages(self) -> dict[str, list[str]]:
        """Domain edges whose image path runs through each codomain edge."""
        pre: dict[str, list[str]] = {h: [] for h in self.cod.edges}
        for e in self.dom.edges:
            for h in self.emap[e].edges:
                pre[h].append(e)
        return {h: sorted(es) for h, es in pre.items()}

    @property
    def is_identity(self) -> bool:
        return (
            self.dom == self.cod
            and all(self.vmap[v] == v for v in self.dom.vertices)
            and all(self.emap[e].edges == (e,) for e in self.dom.edges)
        )


def identity(net: CausalNet) -> Morphism:
    return Morphism(net, net, {v: v for v in net.vertices}, {e: net.edge_path(e) for e in net.edges})


def _coerce_path(cod: CausalNet, e: str, raw, vmap) -> DirectedPath:
    if isinstance(raw, DirectedPath):
        p = raw
        for h in p.edges:
            if h not in cod.ends:
                raise PathNotInCodomain(e)
        if p.edges:
            try:
                q = cod.path(p.edges)
            except Exception:
                raise PathNotInCodomain(e) from None
            if (q.source, q.target) != (p.source, p.target):
                raise PathNotInCodomain(e)
        elif p.source not in cod.vertex_set:
            raise PathNotInCodomain(e)
        return p
    if isinstance(raw, str):
        if raw.startswith("@"):
            w = raw[1:]
            if w not in cod.vertex_set:
                raise PathNotInCodomain(e)
            return DirectedPath(w, w, ())
        raw = (raw,)
    edges = tuple(raw)
    if not edges:
        raise PathNotInCodomain(e)
    for h in edges:
        if h not in cod.ends:
            raise PathNotInCodomain(e)
    for a, b in zip(edges, edges[1:]):
        if cod.ends[a][1] != cod.ends[b][0]:
            raise PathNotInCodomain(e)
    return DirectedPath(cod.ends[edges[0]][0], cod.ends[edges[-1]][1], edges)


def validate_morphism(
    dom: CausalNet,
    cod: CausalNet,
    vmap: Mapping[str, str],
    emap: Mapping[str, object],
) -> Morphism:
    """Check functoriality of raw maps and return a :class:`Morphism`.

    ``emap`` values may be :class:`DirectedPath` objects, sequences of codomain
    edge ids (source-first), or ``"@w"`` for the identity at ``w``.
    """
    for v in dom.vertices:
        if v not in vmap:
            raise PartialMap(v)
        if vmap[v] not in cod.vertex_set:
            raise UnknownVertex(vmap[v])
    for e in dom.edges:
        if e not in emap:
            raise PartialMap(e)
    vm = {v: vmap[v] for v in dom.vertices}
    em: dict[str, DirectedPath] = {}
    for e in dom.edges:
        p = _coerce_path(cod, e, emap[e], vm)
        s, t = dom.ends[e]
        if p.source != vm[s] or p.target != vm[t]:
            raise EndpointMismatch(e)
        em[e] = p
    return Morphism(dom, cod, vm, em)


def compose(second: Morphism, first: Morphism) -> Morphism:
    """``second`` after ``first``."""
    if first.cod != second.dom:
        raise DomainMismatch()
    vmap = {v: second.vmap[first.vmap[v]] for v in first.dom.vertices}
    emap = {e: second.apply(first.emap[e]) for e in first.dom.edges}
    return Morphism(first.dom, second.cod, vmap, emap)


def compose_all(stages: Sequence[Morphism]) -> Morphism:
    """Composite of stages listed in application order."""
    result = stages[0]
    for m in stages[1:]:
        result = compose(m, result)
    return result


@dataclass(frozen=True)
class MorphismCensus:
    null_vertices: tuple[str, ...]
    simple_vertices: tuple[str, ...]
    multiple_vertices: tuple[str, ...]
    null_edges: tuple[str, ...]
    simple_edges: tuple[str, ...]
    multiple_edges: tuple[str, ...]
    contractions: tuple[str, ...]
    segments: tuple[str, ...]
    subdivisions: tuple[str, ...]


def census(m: Morphism) -> MorphismCensus:
    """Three-way classifications of codomain vertices/edges and domain edges.

    A codomain edge's preimage is the set of domain edges whose image path
    runs through it.
    """
    vpre = m.vertex_preimages()
    epre = m.edge_preimages()

    def split(pre):
        null, simple, multi = [], [], []
        for k in sorted(pre):
            n = len(pre[k])
            (null if n == 0 else simple if n == 1 else multi).append(k)
        return tuple(null), tuple(simple), tuple(multi)

    nv, sv, mv = split(vpre)
    ne, se, me = split(epre)
    con, seg, sub = [], [], []
    for e in sorted(m.dom.edges):
        n = len(m.emap[e].edges)
        (con if n == 0 else seg if n == 1 else sub).append(e)
    return MorphismCensus(nv, sv, mv, ne, se, me, tuple(con), tuple(seg), tuple(sub))


def fiber(m: Morphism, w: str) -> CausalNet:
    """Induced sub-causal-net on the preimage of ``w`` with edges mapped to Id_w."""
    m.cod.check_vertex(w)
    vs = [v for v in m.dom.vertices if m.vmap[v] == w]
    es = [e for e in m.dom.edges if not m.emap[e].edges and m.emap[e].source == w]
    return m.dom.sub_net(vs, es)


# -- isomorphism search -------------------------------------------------------


def _vertex_signature(net: CausalNet, v: str):
    anc = sum(1 for u in net.vertices if v in net.descendants[u])
    return (len(net.in_edges[v]), len(net.out_edges[v]), len(net.descendants[v]), anc)


def find_isomorphism(
    G: CausalNet,
    H: CausalNet,
    fixed_vertices: Mapping[str, str] | None = None,
    fixed_edges: Mapping[str, str] | None = None,
) -> Morphism | None:
    """First isomorphism ``G -> H`` under lexicographic backtracking, or None.

    Optional ``fixed_*`` maps pin some vertex/edge images.
    """
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return None
    fixed_vertices = dict(fixed_vertices or {})
    fixed_edges = dict(fixed_edges or {})
    for e, h in fixed_edges.items():
        if h not in H.ends:
            return None
    sigG = {v: _vertex_signature(G, v) for v in G.vertices}
    sigH = {w: _vertex_signature(H, w) for w in H.vertices}
    if sorted(sigG.values()) != sorted(sigH.values()):
        return None
    order = G.topological_order
    candidates = {v: sorted(w for w in H.vertices if sigH[w] == sigG[v]) for v in order}
    for v, w in fixed_vertices.items():
        if w not in candidates.get(v, []):
            return None
        candidates[v] = [w]
    # an edge pin forces its endpoints
    for e, h in fixed_edges.items():
        for a, b in zip(G.ends[e], H.ends[h]):
            if b not in candidates[a]:
                return None
            candidates[a] = [b]
    mult_G = {k: len(v) for k, v in G.between.items()}
    mult_H = {k: len(v) for k, v in H.between.items()}
    assign: dict[str, str] = {}
    used: set[str] = set()
    # edges of G grouped by partner vertex that is earlier in the order
    pos = G.position

    def consistent(v, w):
        for e in G.in_edges[v]:
            s = G.ends[e][0]
            if pos[s] < pos[v] and mult_H.get((assign[s], w), 0) != mult_G[(s, v)]:
                return False
        for e in G.out_edges[v]:
            t = G.ends[e][1]
            if pos[t] < pos[v] and mult_H.get((w, assign[t]), 0) != mult_G[(v, t)]:
                return False
        return True

    def edge_map():
        emap: dict[str, DirectedPath] = {}
        for (s, t), es in G.between.items():
            hs = list(H.between[(assign[s], assign[t])])
            pinned = {e: fixed_edges[e] for e in es if e in fixed_edges}
            if len(set(pinned.values())) != len(pinned):
                return None
            free_h = [h for h in hs if h not in pinned.values()]
            free_e = [e for e in es if e not in pinned]
            for e, h in pinned.items():
                if h not in hs:
                    return None
                emap[e] = H.edge_path(h)
            for e, h in zip(free_e, free_h):
                emap[e] = H.edge_path(h)
        return emap

    def search(i):
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            assign[v] = w
            used.add(w)
            if search(i + 1):
                return True
            used.discard(w)
            del assign[v]
        return False

    if not search(0):
        return None
    emap = edge_map()
    if emap is None:
        return None
    return Morphism(G, H, dict(assign), emap)


def inverse(m: Morphism) -> Morphism:
    """Inverse of an isomorphism."""
    vmap = {w: v for v, w in m.vmap.items()}
    emap = {m.emap[e].edges[0]: m.dom.edge_path(e) for e in m.dom.edges}
    return Morphism(m.cod, m.dom, vmap, emap)


# -- bounded enumeration -------------------------------------------------------


class Deadline:
    """Wall-clock budget checked cooperatively by searches."""

    def __init__(self, ms: float | None):
        self.end = None if ms is None else time.monotonic() + ms / 1000.0
        self._tick = 0

    def check(self):
        if self.end is None:
            return
        self._tick += 1
        if self._tick & 255 == 0 and time.monotonic() > self.end:
            raise DeadlineExceeded()


def _requirements(labels: frozenset[str]) -> dict[str, bool]:
    """Necessary structural conditions implied by requested labels."""
    from .classify import QUOTIENT_FAMILY, INCLUSION_FAMILY, NO_SUBDIVISION, NO_CONTRACTION, NO_MULTIPLE_EDGE

    return {
        "surjective": bool(labels & QUOTIENT_FAMILY),
        "injective": bool(labels & INCLUSION_FAMILY) or "edge_cg" in labels,
        "no_subdivision": bool(labels & NO_SUBDIVISION),
        "no_contraction": bool(labels & NO_CONTRACTION),
        "no_multiple_edge": bool(labels & NO_MULTIPLE_EDGE),
    }


def iter_morphisms(
    G: CausalNet,
    H: CausalNet,
    labels: Iterable[str] | None = None,
    deadline: Deadline | None = None,
    vertex_hint: Mapping[str, str | Iterable[str]] | None = None,
) -> Iterator[Morphism]:
    """Lazily enumerate functors ``P(G) -> P(H)`` whose labels include ``labels``.

    Vertices are assigned in the domain's topological order, candidates in
    codomain id order; edge images follow in domain edge order with paths in
    lexicographic order. Label requirements prune the search but the final
    verdict always comes from :func:`classify.has_labels`.
    """
    from .classify import has_labels

    want = frozenset(str(x.value if hasattr(x, "value") else x) for x in (labels or ()))
    req = _requirements(want)
    if req["surjective"] and len(G.vertices) < len(H.vertices):
        return
    if req["injective"] and len(G.vertices) > len(H.vertices):
        return
    if req["surjective"] and req["no_subdivision"] and len(G.edges) < len(H.edges):
        return
    order = G.topological_order
    pos = G.position
    hverts = sorted(H.vertices)
    hdesc = H.descendants
    hbetween = H.between
    cover_need = len(H.vertices)
    vmap: dict[str, str] = {}
    hits: dict[str, int] = {}
    deadline = deadline or Deadline(None)
    edges = G.edges
    back_edges = {
        v: [(e, G.ends[e][0], True) for e in G.in_edges[v] if pos[G.ends[e][0]] < pos[v]]
        + [(e, G.ends[e][1], False) for e in G.out_edges[v] if pos[G.ends[e][1]] < pos[v]]
        for v in order
    }

    def edge_ok(a, b):
        if req["no_contraction"] and a == b:
            return False
        if b not in hdesc[a]:
            return False
        if req["no_subdivision"] and a != b and (a, b) not in hbetween:
            return False
        return True

    def path_options(e):
        a, b = vmap[G.ends[e][0]], vmap[G.ends[e][1]]
        opts = _paths(H, a, b, None)
        if req["no_subdivision"]:
            opts = [p for p in opts if len(p.edges) <= 1]
        if req["no_contraction"]:
            opts = [p for p in opts if p.edges]
        return opts

    def emit():
        options = [path_options(e) for e in edges]
        if any(not o for o in options):
            return
        for choice in product(*options):
            deadline.check()
            if req["no_multiple_edge"]:
                seen = set()
                bad = False
                for p in choice:
                    if len(p.edges) == 1:
                        if p.edges[0] in seen:
                            bad = True
                            break
                        seen.add(p.edges[0])
                if bad:
                    continue
            m = Morphism(G, H, dict(vmap), dict(zip(edges, choice)))
            if not want or has_labels(m, want):
                yield m

    def assign(i):
        if i == len(order):
            if req["surjective"] and len(hits) < cover_need:
                return
            yield from emit()
            return
        v = order[i]
        remaining = len(order) - i
        cands = hverts
        if vertex_hint and v in vertex_hint:
            h = vertex_hint[v]
            cands = [h] if isinstance(h, str) else sorted(h)
        for w in cands:
            deadline.check()
            if req["injective"] and w in hits:
                continue
            newly = 0 if w in hits else 1
            if req["surjective"] and cover_need - len(hits) - newly > remaining - 1:
                continue
            ok = True
            for e, other, incoming in back_edges[v]:
                a, b = (vmap[other], w) if incoming else (w, vmap[other])
                if not edge_ok(a, b):
                    ok = False
                    break
            if not ok:
                continue
            vmap[v] = w
            hits[w] = hits.get(w, 0) + 1
            yield from assign(i + 1)
            hits[w] -= 1
            if not hits[w]:
                del hits[w]
            del vmap[v]

    yield from assign(0)


def enumerate_morphisms(
    G: CausalNet,
    H: CausalNet,
    labels: Iterable[str] | None = None,
    cap: int | None = DEFAULT_CAP,
    deadline_ms: float | None = None,
) -> list[Morphism]:
    """All morphisms ``G -> H`` carrying every label in ``labels``.

    Raises :class:`LimitExceeded` when more than ``cap`` morphisms exist.
    """
    out: list[Morphism] = []
    for m in iter_morphisms(G, H, labels, Deadline(deadline_ms)):
        if cap is not None and len(out) >= cap:
            raise LimitExceeded(cap, "morphisms")
        out.append(m)
    return out


def first_morphism(G: CausalNet, H: CausalNet, labels: Iterable[str] | None = None, deadline=None) -> Morphism | None:
    return next(iter_morphisms(G, H, labels, deadline), None)


def restrict(m: Morphism, sub: CausalNet) -> Morphism:
    """Restriction of ``m`` to a sub-causal-net of its domain."""
    return Morphism(sub, m.cod, {v: m.vmap[v] for v in sub.vertices}, {e: m.emap[e] for e in sub.edges})


def corestrict(m: Morphism, sub: CausalNet) -> Morphism:
    """Same maps with a sub-causal-net of the codomain as new codomain."""
    for w in m.vmap.values():
        sub.check_vertex(w)
    for p in m.emap.values():
        for h in p.edges:
            sub.check_edge(h)
    return Morphism(m.dom, sub, dict(m.vmap), dict(m.emap))


def image_net(m: Morphism) -> CausalNet:
    """Smallest sub-causal-net of the codomain containing the image."""
    vs = set(m.vmap.values())
    es = set()
    for p in m.emap.values():
        es.update(p.edges)
        for h in p.edges:
            vs.update(m.cod.ends[h])
    return m.cod.sub_net(vs, es)


def rename(m: Morphism, vertex_names: Mapping[str, str], edge_names: Mapping[str, str]) -> tuple[CausalNet, Morphism]:
    """Codomain renamed; returns the renamed net and the isomorphism into it."""
    cod = m.cod
    vs = tuple(vertex_names.get(v, v) for v in cod.vertices)
    es = tuple(edge_names.get(e, e) for e in cod.edges)
    ends = {edge_names.get(e, e): (vertex_names.get(s, s), vertex_names.get(t, t)) for e, (s, t) in cod.ends.items()}
    new = CausalNet(vs, es, ends)
    iso = Morphism(
        cod,
        new,
        {v: vertex_names.get(v, v) for v in cod.vertices},
        {e: new.edge_path(edge_names.get(e, e)) for e in cod.edges},
    )
    return new, iso
