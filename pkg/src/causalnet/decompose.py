"""Factorization theorems: every morphism splits into canonical stages."""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import FundamentalKind, classify, fundamental_type, is_a
from .construct import (
    QuotientSpec,
    add_edge,
    add_isolated_vertex,
    build_quotient,
    coarse_grain_parallel,
    contract_multiedge,
    merge_two_vertices,
    subdivide,
    subdivide_edge,
)
from .errors import WrongClass
from .morphism import Morphism, census, compose, compose_all, find_isomorphism, identity
from .net import CausalNet, DirectedPath

KIND_LABEL = {
    FundamentalKind.SUBDIVIDE_EDGE: "subdivision_morphism",
    FundamentalKind.ADD_EDGE: "embedding",
    FundamentalKind.ADD_ISOLATED_VERTEX: "embedding",
    FundamentalKind.MERGE_TWO_VERTICES: "merging",
    FundamentalKind.COARSE_GRAIN_PARALLEL: "edge_cg",
    FundamentalKind.CONTRACT_EDGE: "simple_contraction",
}


@dataclass(frozen=True)
class Factorization:
    """Stages in application order; ``stage_labels[i]`` is promised for stage ``i``.

    With no stages the input is an isomorphism kept in ``residual`` (``None``
    for an identity).
    """

    source: Morphism
    stages: tuple[Morphism, ...]
    stage_labels: tuple[frozenset[str], ...]
    residual: Morphism | None = None
    kinds: tuple[FundamentalKind, ...] = field(default=())

    def composite(self) -> Morphism:
        if not self.stages:
            return self.residual if self.residual is not None else identity(self.source.dom)
        return compose_all(self.stages)

    def recomposes(self) -> bool:
        return self.composite() == self.source

    def labels_hold(self) -> bool:
        return all(set(lab) <= {str(x) for x in classify(s)} for s, lab in zip(self.stages, self.stage_labels))

    def __len__(self):
        return len(self.stages)


def _factor(source: Morphism, stages, labels) -> Factorization:
    return Factorization(source, tuple(stages), tuple(frozenset([lab]) for lab in labels))


def _require(m: Morphism, label: str) -> None:
    if not is_a(m, label):
        raise WrongClass(label)


def _tail(M: CausalNet, m: Morphism, vmap_of_block, edge_image) -> Morphism:
    """Second stage ``M -> cod``: vertices via ``vmap_of_block``, edges via ``edge_image``."""
    return Morphism(M, m.cod, {x: vmap_of_block(x) for x in M.vertices}, {e: edge_image(e) for e in M.edges})


def _fibers(m: Morphism) -> list[list[str]]:
    blocks: dict[str, list[str]] = {}
    for v in m.dom.vertices:
        blocks.setdefault(m.vmap[v], []).append(v)
    return list(blocks.values())


def factor_cg(m: Morphism) -> Factorization:
    """Coarse-graining = edge-cg after vertex-cg."""
    _require(m, "coarse_graining")
    c = census(m)
    first = build_quotient(m.dom, QuotientSpec.of(_fibers(m), c.segments, [[e] for e in c.segments]))
    second = _tail(first.cod, m, lambda x: m.vmap[x], lambda e: m.emap[e])
    return _factor(m, [first, second], ["vertex_cg", "edge_cg"])


def _components(net: CausalNet) -> list[list[str]]:
    return [list(c) for c in net.components]


def factor_vcg(m: Morphism) -> Factorization:
    """Vertex-cg = merging after contraction (contract connected pieces of fibers)."""
    _require(m, "vertex_cg")
    from .morphism import fiber

    blocks = []
    for w in m.cod.vertices:
        blocks.extend(_components(fiber(m, w)))
    c = census(m)
    first = build_quotient(m.dom, QuotientSpec.of(blocks, c.segments, [[e] for e in c.segments]))
    second = _tail(first.cod, m, lambda x: m.vmap[x], lambda e: m.emap[e])
    return _factor(m, [first, second], ["contraction", "merging"])


def _image_classes(m: Morphism, edges) -> list[list[str]]:
    groups: dict[tuple[str, ...], list[str]] = {}
    for e in edges:
        groups.setdefault(m.emap[e].edges, []).append(e)
    return list(groups.values())


def factor_quotient_inclusion(m: Morphism) -> Factorization:
    """Any morphism = inclusion after coarse-graining (identify edges with equal images)."""
    c = census(m)
    kept = sorted(set(c.segments) | set(c.subdivisions))
    first = build_quotient(m.dom, QuotientSpec.of(_fibers(m), kept, _image_classes(m, kept)))
    second = _tail(first.cod, m, lambda x: m.vmap[x], lambda e: m.emap[e])
    return _factor(m, [first, second], ["coarse_graining", "inclusion"])


def _unfold(m: Morphism) -> tuple[Morphism, Morphism]:
    """Split off subdivisions: ``m = rest . s`` with ``s`` a subdivision and ``rest`` subdivision-free."""
    lengths = {e: len(p.edges) for e, p in m.emap.items() if len(p.edges) > 1}
    s = subdivide(m.dom, lengths)
    G1 = s.cod
    vmap = {}
    emap = {}
    for v in m.dom.vertices:
        vmap[v] = m.vmap[v]
    for e in m.dom.edges:
        chain = s.emap[e].edges
        img = m.emap[e]
        if len(chain) == 1:
            emap[chain[0]] = img
            continue
        stops = G1.path_vertices(s.emap[e])
        ivs = m.cod.path_vertices(img)
        for x, w in zip(stops, ivs):
            vmap[x] = w
        for f, h in zip(chain, img.edges):
            emap[f] = m.cod.edge_path(h)
    rest = Morphism(G1, m.cod, vmap, emap)
    return s, rest


def factor_sce(m: Morphism) -> Factorization:
    """Any morphism = embedding after coarse-graining after subdivision."""
    s, rest = _unfold(m)
    qi = factor_quotient_inclusion(rest)
    return _factor(m, [s, *qi.stages], ["subdivision_morphism", "coarse_graining", "embedding"])


def factor_fusion(m: Morphism) -> Factorization:
    """Fusion = edge-cg after merging."""
    _require(m, "fusion")
    first = build_quotient(m.dom, QuotientSpec.of(_fibers(m), m.dom.edges, [[e] for e in m.dom.edges]))
    second = _tail(first.cod, m, lambda x: m.vmap[x], lambda e: m.emap[e])
    return _factor(m, [first, second], ["merging", "edge_cg"])


def factor_inclusion_family(m: Morphism) -> Factorization:
    """Inclusion = embedding . fusion . subdivision, sharpened for immersions and topological embeddings."""
    _require(m, "inclusion")
    s, rest = _unfold(m)
    q, e = factor_quotient_inclusion(rest).stages
    if is_a(m, "topological_embedding"):
        return _factor(m, [s, compose(e, q)], ["subdivision_morphism", "embedding"])
    if is_a(m, "immersion"):
        return _factor(m, [s, q, e], ["subdivision_morphism", "merging", "embedding"])
    return _factor(m, [s, q, e], ["subdivision_morphism", "fusion", "embedding"])


# -- contraction chains -----------------------------------------------------------


def _push(mu: Morphism, q: Morphism) -> Morphism:
    """The morphism ``mu'`` with ``mu = mu' . q`` for a quotient step ``q`` that mu factors through."""
    vmap = {q.vmap[v]: mu.vmap[v] for v in q.dom.vertices}
    emap: dict[str, DirectedPath] = {}
    for e in q.dom.edges:
        img = q.emap[e].edges
        if len(img) == 1:
            emap[img[0]] = mu.emap[e]
    return Morphism(q.cod, mu.cod, vmap, emap)


def _contraction_step(mu: Morphism) -> tuple[str, ...] | None:
    """Multi-edge to contract next: maximal target within a fiber, maximal source among its in-neighbours."""
    N = mu.dom
    by_fiber: dict[str, list[str]] = {}
    for v in N.vertices:
        by_fiber.setdefault(mu.vmap[v], []).append(v)
    for w in sorted(by_fiber):
        vs = set(by_fiber[w])
        if len(vs) < 2:
            continue
        inner = [e for e in N.edges if N.ends[e][0] in vs and N.ends[e][1] in vs and not mu.emap[e].edges]
        if not inner:
            continue
        heads = {N.ends[e][1] for e in inner}
        maximal = sorted(t for t in heads if not (N.descendants[t] & vs) - {t})
        t = maximal[0]
        sources = sorted({N.ends[e][0] for e in inner if N.ends[e][1] == t})
        top = [u for u in sources if not any(x != u and x in N.descendants[u] for x in sources)]
        return N.between[(top[0], t)]
    return None


def _contraction_chain(m: Morphism, label: str) -> Factorization:
    stages: list[Morphism] = []
    mu = m
    while True:
        eps = _contraction_step(mu)
        if eps is None:
            break
        q = contract_multiedge(mu.dom, eps)
        stages.append(q)
        mu = _push(mu, q)
    if not stages:
        return Factorization(m, (), (), None if m.is_identity else m)
    stages[-1] = compose(mu, stages[-1])
    return _factor(m, stages, [label] * len(stages))


def factor_contraction_simple(m: Morphism) -> Factorization:
    """Contraction = composite of simple contractions."""
    _require(m, "contraction")
    return _contraction_chain(m, "simple_contraction")


def factor_tree_contraction_primitive(m: Morphism) -> Factorization:
    """Tree-contraction = composite of primitive simple contractions."""
    _require(m, "tree_contraction")
    return _contraction_chain(m, "simple_contraction")


# -- fundamental theorem -----------------------------------------------------------


def _absorb(stages: list[Morphism], target: Morphism) -> None:
    """Replace the last stage by (iso . last) so the chain composes to ``target``."""
    c = compose_all(stages)
    fixed_v = {c.vmap[v]: target.vmap[v] for v in c.dom.vertices}
    fixed_e = {}
    for e in c.dom.edges:
        for a, b in zip(c.emap[e].edges, target.emap[e].edges):
            fixed_e[a] = b
    phi = find_isomorphism(c.cod, target.cod, fixed_v, fixed_e)
    assert phi is not None, "fundamental chain does not reach the codomain"
    stages[-1] = compose(phi, stages[-1])


def factor_fundamental(m: Morphism) -> Factorization:
    """Composite of fundamental morphisms: subdivisions, contractions, mergings, parallel
    coarse-grainings, then added vertices and edges."""
    stages: list[Morphism] = []
    mu = m

    def step(f: Morphism, new_mu: Morphism):
        nonlocal mu
        stages.append(f)
        mu = new_mu

    # subdivisions, one vertex at a time
    while True:
        subs = sorted(e for e, p in mu.emap.items() if len(p.edges) > 1)
        if not subs:
            break
        e = subs[0]
        f = subdivide_edge(mu.dom, e)
        a, b = f.emap[e].edges
        mid = f.cod.ends[a][1]
        img = mu.emap[e]
        vmap = dict(mu.vmap)
        vmap[mid] = mu.cod.ends[img.edges[0]][1]
        emap = {x: p for x, p in mu.emap.items() if x != e}
        emap[a] = mu.cod.edge_path(img.edges[0])
        emap[b] = DirectedPath(vmap[mid], img.target, img.edges[1:])
        step(f, Morphism(f.cod, mu.cod, vmap, emap))
    # contractions: coarse-grain the multi-edge down to one edge, then contract it
    while True:
        eps = _contraction_step(mu)
        if eps is None:
            break
        keep = eps[0]
        for other in eps[1:]:
            f = coarse_grain_parallel(mu.dom, keep, other)
            keep = f.emap[keep].edges[0]
            step(f, _push(mu, f))
        f = contract_multiedge(mu.dom, [keep])
        step(f, _push(mu, f))
    # mergings
    while True:
        seen: dict[str, str] = {}
        pair = None
        for v in sorted(mu.dom.vertices):
            w = mu.vmap[v]
            if w in seen:
                pair = (seen[w], v)
                break
            seen[w] = v
        if pair is None:
            break
        f = merge_two_vertices(mu.dom, *pair)
        step(f, _push(mu, f))
    # parallel coarse-grainings
    while True:
        seen = {}
        pair = None
        for e in sorted(mu.dom.edges):
            h = mu.emap[e].edges
            if h in seen:
                pair = (seen[h], e)
                break
            seen[h] = e
        if pair is None:
            break
        f = coarse_grain_parallel(mu.dom, *pair)
        step(f, _push(mu, f))
    # additions: mu is now an embedding
    hit_v = set(mu.vmap.values())
    for w in mu.cod.vertices:
        if w in hit_v:
            continue
        f = add_isolated_vertex(mu.dom)
        new = f.cod.vertices[-1]
        vmap = dict(mu.vmap)
        vmap[new] = w
        step(f, Morphism(f.cod, mu.cod, vmap, dict(mu.emap)))
    hit_e = {p.edges[0] for p in mu.emap.values()}
    inv = {w: v for v, w in mu.vmap.items()}
    for h in mu.cod.edges:
        if h in hit_e:
            continue
        s, t = mu.cod.ends[h]
        f = add_edge(mu.dom, inv[s], inv[t])
        new = f.cod.edges[-1]
        emap = dict(mu.emap)
        emap[new] = mu.cod.edge_path(h)
        step(f, Morphism(f.cod, mu.cod, dict(mu.vmap), emap))
    if not stages:
        return Factorization(m, (), (), None if m.is_identity else m)
    _absorb(stages, m)
    kinds = tuple(fundamental_type(s) for s in stages)
    return Factorization(m, tuple(stages), tuple(frozenset([KIND_LABEL[k]]) for k in kinds), None, kinds)


THEOREMS = {
    "ve": factor_cg,
    "cm": factor_vcg,
    "cg-inc": factor_quotient_inclusion,
    "sce": factor_sce,
    "simple-contractions": factor_contraction_simple,
    "primitive": factor_tree_contraction_primitive,
    "fusion": factor_fusion,
    "inclusion": factor_inclusion_family,
    "fundamental": factor_fundamental,
}

# label each factorization requires of its input (None: any morphism)
PRECONDITION = {
    "ve": "coarse_graining",
    "cm": "vertex_cg",
    "cg-inc": None,
    "sce": None,
    "simple-contractions": "contraction",
    "primitive": "tree_contraction",
    "fusion": "fusion",
    "inclusion": "inclusion",
    "fundamental": None,
}
