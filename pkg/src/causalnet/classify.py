"""Morphism classification lattice, epi/mono oracles, fundamental morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

from .errors import LimitExceeded
from .net import DEFAULT_CAP, CausalNet, DirectedPath, all_paths, is_causal_Tree, is_connected, is_directed_Path
from .morphism import Morphism, census, compose, fiber, iter_morphisms


class ClassLabel(str, Enum):
    QUOTIENT = "quotient"
    SURJECTION = "surjection"
    COARSE_GRAINING = "coarse_graining"
    VERTEX_CG = "vertex_cg"
    EDGE_CG = "edge_cg"
    MERGING = "merging"
    CONTRACTION = "contraction"
    SIMPLE_CONTRACTION = "simple_contraction"
    TREE_CONTRACTION = "tree_contraction"
    PATH_CONTRACTION = "path_contraction"
    FUSION = "fusion"
    COLORING = "coloring"
    INCLUSION = "inclusion"
    EMBEDDING = "embedding"
    IMMERSION = "immersion"
    STRONG_IMMERSION = "strong_immersion"
    WEAK_EMBEDDING = "weak_embedding"
    TOPOLOGICAL_EMBEDDING = "topological_embedding"
    SUBDIVISION_MORPHISM = "subdivision_morphism"
    ISOMORPHISM = "isomorphism"
    STRONG = "strong"
    EDGE_DISJOINT = "edge_disjoint"
    VERTEX_DISJOINT = "vertex_disjoint"

    def __str__(self):
        return self.value


ALL_LABELS = tuple(ClassLabel)

_CG_FAMILY = {
    "coarse_graining", "vertex_cg", "edge_cg", "merging", "contraction", "simple_contraction",
    "tree_contraction", "path_contraction", "fusion", "coloring",
}
_INCL_FAMILY = {
    "inclusion", "embedding", "immersion", "strong_immersion", "weak_embedding",
    "topological_embedding", "subdivision_morphism",
}
# labels that force vertex-surjectivity / vertex-injectivity etc.; used for search pruning
QUOTIENT_FAMILY = frozenset(_CG_FAMILY | {"quotient", "surjection", "isomorphism"})
INCLUSION_FAMILY = frozenset(_INCL_FAMILY | {"isomorphism", "edge_cg"})
NO_SUBDIVISION = frozenset(_CG_FAMILY | {"embedding", "isomorphism"})
NO_CONTRACTION = frozenset(_INCL_FAMILY | {"edge_cg", "merging", "fusion", "coloring", "isomorphism"})
NO_MULTIPLE_EDGE = frozenset(
    {"vertex_cg", "merging", "contraction", "simple_contraction", "tree_contraction", "path_contraction",
     "immersion", "strong_immersion", "weak_embedding", "topological_embedding", "subdivision_morphism",
     "embedding", "isomorphism", "edge_disjoint", "vertex_disjoint"}
)

# stated implications of the lattice (premise -> consequence)
IMPLICATIONS: tuple[tuple[str, str], ...] = (
    ("coloring", "fusion"),
    ("fusion", "coarse_graining"),
    ("coarse_graining", "quotient"),
    ("surjection", "quotient"),
    ("merging", "vertex_cg"),
    ("contraction", "vertex_cg"),
    ("simple_contraction", "contraction"),
    ("path_contraction", "tree_contraction"),
    ("tree_contraction", "contraction"),
    ("vertex_cg", "coarse_graining"),
    ("edge_cg", "coarse_graining"),
    ("embedding", "topological_embedding"),
    ("topological_embedding", "strong_immersion"),
    ("topological_embedding", "weak_embedding"),
    ("weak_embedding", "immersion"),
    ("immersion", "inclusion"),
    ("subdivision_morphism", "topological_embedding"),
    ("isomorphism", "quotient"),
    ("isomorphism", "embedding"),
)

# classes closed under composition
CLOSED_LABELS = (
    "quotient", "surjection", "coarse_graining", "vertex_cg", "edge_cg", "merging", "contraction",
    "tree_contraction", "fusion", "inclusion", "immersion", "strong_immersion", "topological_embedding",
    "subdivision_morphism", "embedding",
)


class _Analysis:
    """Lazily computed label predicates for one morphism."""

    def __init__(self, m: Morphism, cap: int | None = DEFAULT_CAP):
        self.m = m
        self.cap = cap

    @cached_property
    def c(self):
        return census(self.m)

    @cached_property
    def lengths(self):
        return self.m.lengths()

    # -- primitive facts -------------------------------------------------------
    @cached_property
    def vertex_injective(self):
        return len(set(self.m.vmap.values())) == len(self.m.dom.vertices)

    @cached_property
    def fibers(self) -> list[CausalNet]:
        return [fiber(self.m, w) for w in sorted(self.m.cod.vertices)]

    @cached_property
    def internal_vertices(self) -> dict[str, tuple[str, ...]]:
        cod = self.m.cod
        return {e: cod.path_vertices(self.m.emap[e])[1:-1] for e in self.c.subdivisions}

    # -- labels ----------------------------------------------------------------
    @cached_property
    def quotient(self):
        return not self.c.null_vertices and not self.c.null_edges

    @cached_property
    def surjection(self):
        if not self.quotient:
            return False
        m = self.m
        for p in all_paths(m.cod, self.cap):
            if p.edges and not _has_preimage(m, p):
                return False
        return True

    @cached_property
    def coarse_graining(self):
        return self.quotient and not self.c.subdivisions

    @cached_property
    def vertex_cg(self):
        return self.coarse_graining and not self.c.multiple_edges

    @cached_property
    def edge_cg(self):
        return self.coarse_graining and not self.c.multiple_vertices and not self.c.contractions

    @cached_property
    def merging(self):
        return self.vertex_cg and not self.c.contractions

    @cached_property
    def contraction(self):
        return self.vertex_cg and all(is_connected(f) for f in self.fibers)

    @cached_property
    def simple_contraction(self):
        if not self.contraction:
            return False
        big = [f for f in self.fibers if len(f.vertices) > 1]
        if len(big) != 1:
            return False
        f = big[0]
        return len(f.vertices) == 2 and len(f.between) == 1

    @cached_property
    def tree_contraction(self):
        return self.vertex_cg and all(is_causal_Tree(f) for f in self.fibers)

    @cached_property
    def path_contraction(self):
        return self.vertex_cg and all(is_directed_Path(f) for f in self.fibers)

    @cached_property
    def fusion(self):
        return self.coarse_graining and not self.c.contractions

    @cached_property
    def coloring(self):
        return self.fusion and self.m.cod.is_simple

    @cached_property
    def inclusion(self):
        if not self.vertex_injective:
            return False
        seen: set[tuple[str, ...]] = set()
        for p in all_paths(self.m.dom, self.cap):
            if not p.edges:
                continue
            img = self.m.apply(p).edges
            if img in seen:
                return False
            seen.add(img)
        return True

    @cached_property
    def edge_disjoint(self):
        owner: dict[str, str] = {}
        for e in self.m.dom.edges:
            for h in self.m.emap[e].edges:
                if h in owner:
                    return False
                owner[h] = e
        return True

    @cached_property
    def vertex_disjoint(self):
        if not self.edge_disjoint:
            return False
        seen: set[str] = set()
        for e in self.c.subdivisions:
            inner = set(self.internal_vertices[e])
            if inner & seen:
                return False
            seen |= inner
        return True

    @cached_property
    def strong(self):
        null = set(self.c.null_vertices)
        return all(set(vs) <= null for vs in self.internal_vertices.values())

    @cached_property
    def immersion(self):
        return self.inclusion and self.edge_disjoint

    @cached_property
    def strong_immersion(self):
        return self.immersion and self.strong

    @cached_property
    def weak_embedding(self):
        return self.inclusion and self.vertex_disjoint

    @cached_property
    def topological_embedding(self):
        return self.inclusion and self.strong and self.vertex_disjoint

    @cached_property
    def subdivision_morphism(self):
        if not self.topological_embedding:
            return False
        m = self.m
        covered: set[str] = set()
        traversed: set[str] = set()
        for e in m.dom.edges:
            covered.update(m.cod.path_vertices(m.emap[e]))
            traversed.update(m.emap[e].edges)
        for w in m.cod.vertices:
            if m.cod.isolated(w):
                if w in self.c.null_vertices:
                    return False
            elif w not in covered:
                return False
        return len(traversed) == len(m.cod.edges)

    @cached_property
    def embedding(self):
        return self.inclusion and not self.c.subdivisions

    @cached_property
    def isomorphism(self):
        m = self.m
        if len(m.dom.vertices) != len(m.cod.vertices) or len(m.dom.edges) != len(m.cod.edges):
            return False
        return self.vertex_injective and self.quotient and not self.c.subdivisions and not self.c.contractions and not self.c.multiple_edges

    def holds(self, label: str) -> bool:
        return bool(getattr(self, str(label)))


def _has_preimage(m: Morphism, p: DirectedPath) -> bool:
    """Whether some directed path of the domain maps onto ``p``."""
    dom, k = m.dom, len(p.edges)
    target = p.edges
    frontier = {(v, 0) for v in dom.vertices if m.vmap[v] == p.source}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for v, i in frontier:
            for e in dom.out_edges[v]:
                img = m.emap[e].edges
                j = i + len(img)
                if j > k or target[i:j] != img:
                    continue
                if j == k:
                    return True
                st = (dom.ends[e][1], j)
                if st not in seen:
                    seen.add(st)
                    nxt.add(st)
        frontier = nxt
    return False


def classify(m: Morphism, cap: int | None = DEFAULT_CAP) -> frozenset[ClassLabel]:
    """Every label of the lattice carried by ``m``."""
    a = _Analysis(m, cap)
    return frozenset(lab for lab in ALL_LABELS if a.holds(lab.value))


def has_labels(m: Morphism, labels: Iterable[str]) -> bool:
    """Whether ``m`` carries every label in ``labels`` (computed lazily)."""
    a = _Analysis(m)
    return all(a.holds(str(lab.value if isinstance(lab, ClassLabel) else lab)) for lab in labels)


def is_a(m: Morphism, label) -> bool:
    return has_labels(m, [label])


# -- epi / mono oracles --------------------------------------------------------


def _size(net: CausalNet) -> int:
    return len(net.vertices) + len(net.edges)


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def epi_probes(H: CausalNet) -> list[CausalNet]:
    """Codomain-side probes: two extra isolated vertices, a doubled edge, a stretched vertex."""
    probes = []
    a = _fresh("iso.a", H.vertex_set)
    b = _fresh("iso.b", H.vertex_set | {a})
    probes.append(CausalNet(H.vertices + (a, b), H.edges, dict(H.ends)))
    for h in H.edges:
        h2 = _fresh(h + ".twin", H.ends)
        ends = dict(H.ends)
        ends[h2] = H.ends[h]
        probes.append(CausalNet(H.vertices, H.edges + (h2,), ends))
    for v in H.vertices:
        if H.isolated(v):
            continue
        probes.append(_stretch(H, v))
    return probes


def _stretch(H: CausalNet, v: str) -> CausalNet:
    """Split ``v`` into ``v.in -> v.out``; in-edges end at v.in, out-edges start at v.out."""
    vin = _fresh(v + ".in", H.vertex_set)
    vout = _fresh(v + ".out", H.vertex_set | {vin})
    link = _fresh(v + ".link", H.ends)
    verts = tuple(x for u in H.vertices for x in ((vin, vout) if u == v else (u,)))
    ends = {}
    for e in H.edges:
        s, t = H.ends[e]
        ends[e] = (vout if s == v else s, vin if t == v else t)
    ends[link] = (vin, vout)
    return CausalNet(verts, H.edges + (link,), ends)


def _image_key(g: Morphism, m: Morphism):
    return (
        tuple(g.vmap[m.vmap[v]] for v in m.dom.vertices),
        tuple(g.apply(m.emap[e]).edges for e in m.dom.edges),
    )


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    witness: tuple[Morphism, Morphism] | None = None
    skipped: int = 0


def epi_verdict(m: Morphism, probe_size_bound: int = 8) -> OracleVerdict:
    """Right-cancellation test over the recipe probes within the size bound."""
    skipped = 0
    for T in epi_probes(m.cod):
        if _size(T) > probe_size_bound:
            skipped += 1
            continue
        buckets: dict[object, Morphism] = {}
        for g in iter_morphisms(m.cod, T):
            key = _image_key(g, m)
            other = buckets.get(key)
            if other is not None:
                return OracleVerdict(False, (other, g))
            buckets[key] = g
    return OracleVerdict(True, None, skipped)


def mono_probes() -> list[CausalNet]:
    return [CausalNet(("p",), (), {}), CausalNet(("p", "q"), ("a",), {"a": ("p", "q")})]


def mono_verdict(m: Morphism, probe_size_bound: int = 8) -> OracleVerdict:
    """Left-cancellation test over the point and single-edge probes."""
    skipped = 0
    for P in mono_probes():
        if _size(P) > probe_size_bound:
            skipped += 1
            continue
        buckets: dict[object, Morphism] = {}
        for g in iter_morphisms(P, m.dom):
            c = compose(m, g)
            key = (tuple(sorted(c.vmap.items())), tuple(sorted((e, p.edges) for e, p in c.emap.items())))
            other = buckets.get(key)
            if other is not None:
                return OracleVerdict(False, (other, g))
            buckets[key] = g
    return OracleVerdict(True, None, skipped)


def epi_oracle(m: Morphism, probe_size_bound: int = 8) -> bool:
    """Whether the cancellation verdict agrees with the quotient label.

    Raises :class:`LimitExceeded` when a disagreement could stem from probes
    skipped for exceeding the bound.
    """
    v = epi_verdict(m, probe_size_bound)
    agrees = v.holds == is_a(m, "quotient")
    if not agrees and v.skipped:
        raise LimitExceeded(probe_size_bound, "probe size")
    return agrees


def mono_oracle(m: Morphism, probe_size_bound: int = 8) -> bool:
    v = mono_verdict(m, probe_size_bound)
    agrees = v.holds == is_a(m, "inclusion")
    if not agrees and v.skipped:
        raise LimitExceeded(probe_size_bound, "probe size")
    return agrees


# -- fundamental morphisms -----------------------------------------------------


class FundamentalKind(str, Enum):
    SUBDIVIDE_EDGE = "subdividing-an-edge"
    ADD_EDGE = "adding-an-edge"
    ADD_ISOLATED_VERTEX = "adding-an-isolated-vertex"
    MERGE_TWO_VERTICES = "merging-two-vertices"
    COARSE_GRAIN_PARALLEL = "coarse-graining-two-parallel-edges"
    CONTRACT_EDGE = "contracting-an-edge"

    def __str__(self):
        return self.value


def fundamental_type(m: Morphism) -> FundamentalKind | None:
    """Recognize the six fundamental morphisms structurally (ids are irrelevant)."""
    c = census(m)
    dv, de = len(m.dom.vertices), len(m.dom.edges)
    cv, ce = len(m.cod.vertices), len(m.cod.edges)
    vpre = m.vertex_preimages()
    epre = m.edge_preimages()
    segs_bijective = not c.multiple_edges and not c.contractions
    if (cv, ce) == (dv + 1, de + 1):
        if (
            len(c.null_vertices) == 1 and not c.multiple_vertices and not c.null_edges and segs_bijective
            and len(c.subdivisions) == 1 and len(m.emap[c.subdivisions[0]].edges) == 2
        ):
            return FundamentalKind.SUBDIVIDE_EDGE
        return None
    if (cv, ce) == (dv, de + 1):
        if (
            not c.null_vertices and not c.multiple_vertices and len(c.null_edges) == 1
            and segs_bijective and not c.subdivisions
        ):
            return FundamentalKind.ADD_EDGE
        return None
    if (cv, ce) == (dv + 1, de):
        if (
            len(c.null_vertices) == 1 and m.cod.isolated(c.null_vertices[0]) and not c.multiple_vertices
            and not c.null_edges and segs_bijective and not c.subdivisions
        ):
            return FundamentalKind.ADD_ISOLATED_VERTEX
        return None
    if (cv, ce) == (dv - 1, de):
        if (
            not c.null_vertices and len(c.multiple_vertices) == 1 and len(vpre[c.multiple_vertices[0]]) == 2
            and not c.null_edges and segs_bijective and not c.subdivisions
        ):
            return FundamentalKind.MERGE_TWO_VERTICES
        return None
    if (cv, ce) == (dv, de - 1):
        if (
            not c.null_vertices and not c.multiple_vertices and not c.null_edges and not c.contractions
            and not c.subdivisions and len(c.multiple_edges) == 1 and len(epre[c.multiple_edges[0]]) == 2
        ):
            return FundamentalKind.COARSE_GRAIN_PARALLEL
        return None
    if (cv, ce) == (dv - 1, de - 1):
        if (
            not c.null_vertices and len(c.multiple_vertices) == 1 and len(vpre[c.multiple_vertices[0]]) == 2
            and not c.null_edges and not c.multiple_edges and not c.subdivisions and len(c.contractions) == 1
        ):
            return FundamentalKind.CONTRACT_EDGE
        return None
    return None


# -- indecomposability -----------------------------------------------------------


@dataclass(frozen=True)
class IndecomposableResult:
    verdict: str  # "yes", "no", "unknown"
    witness: tuple[Morphism, Morphism] | None = None
    reason: str = ""


def indecomposable_check(
    m: Morphism, intermediate_size_bound: int = 6, cap: int = DEFAULT_CAP
) -> IndecomposableResult:
    """Search ``m = g . f`` through nets of size (vertices + edges) up to the bound.

    Neither factor may be an isomorphism. "yes" means no such factorization
    exists within the bound; "unknown" means the bound is smaller than the
    endpoints or the cap was hit before the search finished.
    """
    from .enumeration import nets_up_to_size

    if is_a(m, "isomorphism"):
        return IndecomposableResult("no", None, "isomorphism")
    if intermediate_size_bound < max(_size(m.dom), _size(m.cod)):
        return IndecomposableResult("unknown", None, "bound below endpoint sizes")
    work = 0
    for M in nets_up_to_size(intermediate_size_bound):
        for f in iter_morphisms(m.dom, M):
            work += 1
            if work > cap:
                return IndecomposableResult("unknown", None, "cap reached")
            if is_a(f, "isomorphism"):
                continue
            hint = {f.vmap[v]: m.vmap[v] for v in m.dom.vertices}
            for g in iter_morphisms(M, m.cod, vertex_hint=hint):
                work += 1
                if work > cap:
                    return IndecomposableResult("unknown", None, "cap reached")
                if any(g.apply(f.emap[e]) != m.emap[e] for e in m.dom.edges):
                    continue
                if is_a(g, "isomorphism"):
                    continue
                return IndecomposableResult("no", (f, g))
    return IndecomposableResult("yes")
