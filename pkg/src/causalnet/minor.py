"""Zig-zag minors, defects and their duals, and generalized minor searches."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .classify import FundamentalKind, fundamental_type, has_labels, is_a
from .construct import (
    coarse_grain_parallel,
    contract_multiedge,
    inclusion_of,
    iter_coarse_grainings,
    merge_coclique,
    sub_nets,
)
from .enumeration import canonical_key
from .errors import DeadlineExceeded, EndpointMismatch, LimitExceeded, NoLemmaApplies, QuotientNotAcyclic, WrongClass
from .morphism import Deadline, Morphism, compose, inverse, iter_morphisms
from .net import CausalNet, DirectedPath, reachable

DEFAULT_VERTEX_BOUND = 7


def _size(net: CausalNet) -> int:
    return len(net.vertices) + len(net.edges)


# -- minor pairs -------------------------------------------------------------------


@dataclass(frozen=True)
class MinorPair:
    """A class of quotients paired with a class of embeddings, given by labels."""

    name: str
    quotient_labels: frozenset[str]
    embedding_labels: frozenset[str]

    def is_quotient(self, m: Morphism) -> bool:
        return has_labels(m, self.quotient_labels)

    def is_embedding(self, m: Morphism) -> bool:
        return has_labels(m, self.embedding_labels)


MINOR_PAIRS: dict[str, MinorPair] = {}


def register_pair(pair: MinorPair) -> MinorPair:
    MINOR_PAIRS[pair.name] = pair
    return pair


CG = register_pair(MinorPair("cg", frozenset({"coarse_graining"}), frozenset({"embedding"})))
CONTRACTION = register_pair(MinorPair("contraction", frozenset({"contraction"}), frozenset({"embedding"})))
HOMOTOPICAL = register_pair(MinorPair("homotopical", frozenset({"tree_contraction"}), frozenset({"embedding"})))
PATH = register_pair(MinorPair("path", frozenset({"path_contraction"}), frozenset({"embedding"})))


@dataclass(frozen=True)
class PairReport:
    ok: bool
    problem: str = ""
    witness: tuple[Morphism, ...] = ()


def check_minor_pair(pair: MinorPair, sample: Iterable[Morphism]) -> PairReport:
    """Check closure of both classes and that their intersection holds only isomorphisms."""
    sample = list(sample)
    qs = [m for m in sample if pair.is_quotient(m)]
    es = [m for m in sample if pair.is_embedding(m)]
    for m in qs:
        if pair.is_embedding(m) and not is_a(m, "isomorphism"):
            return PairReport(False, "quotient and embedding but not an isomorphism", (m,))
        if not is_a(m, "quotient"):
            return PairReport(False, "quotient class member is not an epimorphism", (m,))
    for m in es:
        if not is_a(m, "inclusion"):
            return PairReport(False, "embedding class member is not a monomorphism", (m,))
    for members, check in ((qs, pair.is_quotient), (es, pair.is_embedding)):
        by_dom: dict[CausalNet, list[Morphism]] = {}
        for g in members:
            by_dom.setdefault(g.dom, []).append(g)
        for f in members:
            for g in by_dom.get(f.cod, ()):
                if not check(compose(g, f)):
                    return PairReport(False, "class not closed under composition", (f, g))
    return PairReport(True)


# -- zig-zag minors ------------------------------------------------------------------

Q, E = "q", "e"


@dataclass(frozen=True)
class ZigZagMinor:
    """``objects[0]`` is the minor, ``objects[-1]`` the host.

    ``kinds[i] == "q"``: ``arrows[i]`` is a quotient ``objects[i+1] -> objects[i]``;
    ``kinds[i] == "e"``: an embedding ``objects[i] -> objects[i+1]``.
    """

    objects: tuple[CausalNet, ...]
    arrows: tuple[Morphism, ...] = ()
    kinds: tuple[str, ...] = ()
    pair: MinorPair = field(default=CG, compare=False)

    def __post_init__(self):
        if len(self.objects) != len(self.arrows) + 1 or len(self.arrows) != len(self.kinds):
            raise WrongClass("zig-zag minor", "length mismatch")
        for i, (a, k) in enumerate(zip(self.arrows, self.kinds)):
            left, right = self.objects[i], self.objects[i + 1]
            if k == Q:
                if a.dom != right or a.cod != left:
                    raise EndpointMismatch(f"arrow {i}")
            elif k == E:
                if a.dom != left or a.cod != right:
                    raise EndpointMismatch(f"arrow {i}")
            else:
                raise WrongClass("zig-zag minor", f"unknown arrow kind {k}")

    @property
    def source(self) -> CausalNet:
        return self.objects[0]

    @property
    def target(self) -> CausalNet:
        return self.objects[-1]

    def __len__(self):
        return len(self.arrows)

    def valid_classes(self) -> bool:
        return all(
            (self.pair.is_quotient(a) if k == Q else self.pair.is_embedding(a)) for a, k in zip(self.arrows, self.kinds)
        )

    @classmethod
    def trivial(cls, G: CausalNet, pair: MinorPair = CG) -> "ZigZagMinor":
        return cls((G,), (), (), pair)

    @classmethod
    def span(cls, q: Morphism, iota: Morphism, pair: MinorPair = CG) -> "ZigZagMinor":
        """Minor ``q.cod ~> iota.cod`` through the common source."""
        return cls((q.cod, q.dom, iota.cod), (q, iota), (Q, E), pair)

    @classmethod
    def cospan(cls, iota: Morphism, q: Morphism, pair: MinorPair = CG) -> "ZigZagMinor":
        """Minor ``iota.dom ~> q.dom`` through the common sink."""
        return cls((iota.dom, iota.cod, q.dom), (iota, q), (E, Q), pair)


def compose_minors(T1: ZigZagMinor, T2: ZigZagMinor) -> ZigZagMinor:
    """Juxtaposition: ``T1`` then ``T2``."""
    if T1.target != T2.source:
        raise EndpointMismatch("minor endpoints")
    return ZigZagMinor(T1.objects + T2.objects[1:], T1.arrows + T2.arrows, T1.kinds + T2.kinds, T1.pair)


def _replace(T: ZigZagMinor, i: int, j: int, objects, arrows, kinds) -> ZigZagMinor:
    """Replace arrows i..j-1 (and interior objects) by the given pieces."""
    return ZigZagMinor(
        T.objects[: i + 1] + tuple(objects) + T.objects[j:],
        T.arrows[:i] + tuple(arrows) + T.arrows[j:],
        T.kinds[:i] + tuple(kinds) + T.kinds[j:],
        T.pair,
    )


def reduction_steps(T: ZigZagMinor) -> Iterator[ZigZagMinor]:
    """Every single composable or isomorphic reduction of ``T``."""
    n = len(T)
    for i in range(n - 1):
        k1, k2 = T.kinds[i], T.kinds[i + 1]
        if k1 == k2 == Q:
            yield _replace(T, i, i + 2, (), (compose(T.arrows[i], T.arrows[i + 1]),), (Q,))
        elif k1 == k2 == E:
            yield _replace(T, i, i + 2, (), (compose(T.arrows[i + 1], T.arrows[i]),), (E,))
    for i in range(n):
        a = T.arrows[i]
        if not is_a(a, "isomorphism") or n == 1:
            continue
        fwd = a if T.kinds[i] == E else inverse(a)  # objects[i] -> objects[i+1]
        if i + 1 < n:
            nxt, k = T.arrows[i + 1], T.kinds[i + 1]
            new = compose(nxt, fwd) if k == E else compose(inverse(fwd), nxt)
            yield _replace(T, i, i + 2, (), (new,), (k,))
        else:
            prev, k = T.arrows[i - 1], T.kinds[i - 1]
            new = compose(fwd, prev) if k == E else compose(prev, inverse(fwd))
            yield _replace(T, i - 1, i + 1, (), (new,), (k,))


def reduce(T: ZigZagMinor) -> ZigZagMinor:
    """Apply reductions (composable pairs first, leftmost) until none applies."""
    while True:
        step = next(reduction_steps(T), None)
        if step is None:
            return T
        T = step


@dataclass(frozen=True)
class Defect:
    """``span``: q and iota share their domain; ``cospan``: they share their codomain."""

    kind: str
    q: Morphism
    iota: Morphism

    def __post_init__(self):
        if self.kind == "span" and self.q.dom != self.iota.dom:
            raise EndpointMismatch("span legs")
        if self.kind == "cospan" and self.q.cod != self.iota.cod:
            raise EndpointMismatch("cospan legs")

    def commutes_with(self, dual: "Defect") -> bool:
        """Whether ``dual`` closes the square with this defect."""
        if self.kind == "cospan":
            # dual span: dual.q -> iota.dom, dual.iota -> q.dom
            return compose(self.q, dual.iota) == compose(self.iota, dual.q)
        # dual cospan: dual.iota from q.cod, dual.q from iota.cod
        return compose(dual.iota, self.q) == compose(dual.q, self.iota)


def defects(T: ZigZagMinor) -> list[tuple[int, Defect]]:
    out = []
    for i in range(len(T) - 1):
        k1, k2 = T.kinds[i], T.kinds[i + 1]
        if (k1, k2) == (E, Q):
            out.append((i, Defect("cospan", T.arrows[i + 1], T.arrows[i])))
        elif (k1, k2) == (Q, E):
            out.append((i, Defect("span", T.arrows[i], T.arrows[i + 1])))
    return out


def dual_transform(T: ZigZagMinor, i: int, dual: Defect) -> ZigZagMinor:
    """Replace the defect at arrows i, i+1 by its dual."""
    if dual.kind == "span":
        return _replace(T, i, i + 2, (dual.q.dom,), (dual.q, dual.iota), (Q, E))
    return _replace(T, i, i + 2, (dual.q.cod,), (dual.iota, dual.q), (E, Q))


# -- lemma constructions ---------------------------------------------------------------


def _embedding_effect(iota: Morphism) -> tuple[str, str]:
    """(``"edge"``|``"vertex"``, id of the codomain element the embedding misses)."""
    kind = fundamental_type(iota)
    if kind is FundamentalKind.ADD_EDGE:
        hit = {p.edges[0] for p in iota.emap.values()}
        return "edge", next(h for h in iota.cod.edges if h not in hit)
    if kind is FundamentalKind.ADD_ISOLATED_VERTEX:
        hit = set(iota.vmap.values())
        return "vertex", next(w for w in iota.cod.vertices if w not in hit)
    raise NoLemmaApplies("embedding leg is not a fundamental embedding")


def _pull_back_cospan(q: Morphism, iota: Morphism, drop_v: set[str], drop_e: set[str], quotient: Callable) -> Defect:
    A = q.dom
    D = A.sub_net([v for v in A.vertices if v not in drop_v], [e for e in A.edges if e not in drop_e])
    iota2 = inclusion_of(D, A)
    back_v = {w: v for v, w in iota.vmap.items()}
    back_e = {p.edges[0]: e for e, p in iota.emap.items()}
    vmap = {d: back_v[q.vmap[d]] for d in D.vertices}
    emap = {}
    for e in D.edges:
        p = q.emap[e]
        if p.edges:
            emap[e] = iota.dom.edge_path(back_e[p.edges[0]])
        else:
            w = vmap[D.ends[e][0]]
            emap[e] = DirectedPath(w, w, ())
    q2 = Morphism(D, iota.dom, vmap, emap)
    quotient(q2)
    return Defect("span", q2, iota2)


def dualize_defect_lemma(defect: Defect) -> Defect:
    """Explicit commuting dual for a defect of a fundamental quotient and a fundamental embedding."""
    q, iota = defect.q, defect.iota
    qkind = fundamental_type(q)
    if qkind not in (
        FundamentalKind.CONTRACT_EDGE,
        FundamentalKind.MERGE_TWO_VERTICES,
        FundamentalKind.COARSE_GRAIN_PARALLEL,
    ) and not (defect.kind == "cospan" and is_a(q, "simple_contraction")):
        raise NoLemmaApplies("quotient leg is not a simple contraction, a merging of two vertices, or a parallel coarse-graining")
    if defect.kind == "cospan":
        return _dual_of_cospan(q, iota, qkind)
    return _dual_of_span(q, iota, qkind)


def _dual_of_cospan(q: Morphism, iota: Morphism, qkind) -> Defect:
    what, x = _embedding_effect(iota)
    A = q.dom
    pre_v = [v for v in A.vertices if q.vmap[v] == x] if what == "vertex" else []
    if qkind is FundamentalKind.COARSE_GRAIN_PARALLEL:
        check = _expect_cg_or_iso
        if what == "edge":
            pre_e = {e for e in A.edges if q.emap[e].edges == (x,)}
            return _pull_back_cospan(q, iota, set(), pre_e, check)
        return _pull_back_cospan(q, iota, set(pre_v), set(), check)
    check = _expect_merge_or_iso if qkind is FundamentalKind.MERGE_TWO_VERTICES else _expect_contraction_or_iso
    if what == "edge":
        pre_e = {e for e in A.edges if q.emap[e].edges == (x,)}
        return _pull_back_cospan(q, iota, set(), pre_e, check)
    # deleting an isolated vertex: drop its whole fibre, with any contracted edges inside it
    inner = {e for e in A.edges if not q.emap[e].edges and q.vmap[A.ends[e][0]] == x}
    return _pull_back_cospan(q, iota, set(pre_v), inner, check)


def _expect_cg_or_iso(m: Morphism):
    if not (is_a(m, "isomorphism") or fundamental_type(m) is FundamentalKind.COARSE_GRAIN_PARALLEL):
        raise NoLemmaApplies("pulled-back quotient is not a parallel coarse-graining")


def _expect_merge_or_iso(m: Morphism):
    if not (is_a(m, "isomorphism") or fundamental_type(m) is FundamentalKind.MERGE_TWO_VERTICES):
        raise NoLemmaApplies("pulled-back quotient is not a merging of two vertices")


def _expect_contraction_or_iso(m: Morphism):
    if not (is_a(m, "isomorphism") or is_a(m, "simple_contraction")):
        raise NoLemmaApplies("pulled-back quotient is not a simple contraction")


def _dual_of_span(q: Morphism, iota: Morphism, qkind) -> Defect:
    """Span ``X <-q- S -iota-> Y``: push ``q`` forward along ``iota``."""
    if qkind is FundamentalKind.CONTRACT_EDGE:
        raise NoLemmaApplies("contractions do not commute with embeddings in span position")
    what, x = _embedding_effect(iota)
    Y = iota.cod
    if qkind is FundamentalKind.MERGE_TWO_VERTICES:
        w = next(w for w, vs in q.vertex_preimages().items() if len(vs) == 2)
        v1, v2 = (iota.vmap[v] for v in q.vertex_preimages()[w])
        if what == "edge" and (reachable(Y, v1, v2) or reachable(Y, v2, v1)):
            s, t = Y.ends[x]
            if {s, t} == {v1, v2} and len(Y.between[(s, t)]) == 1:
                # the new edge joins the merged pair: contract it instead
                q2 = contract_multiedge(Y, [x])
            else:
                raise NoLemmaApplies("the added edge makes the merged vertices comparable")
        else:
            q2 = merge_coclique(Y, [v1, v2])
    else:
        h = next(h for h, es in q.edge_preimages().items() if len(es) == 2)
        e1, e2 = (iota.emap[e].edges[0] for e in q.edge_preimages()[h])
        q2 = coarse_grain_parallel(Y, e1, e2)
    L = q2.cod
    vmap = {q.vmap[s]: q2.vmap[iota.vmap[s]] for s in q.dom.vertices}
    emap = {}
    for e in q.dom.edges:
        img = q.emap[e]
        if img.edges:
            emap[img.edges[0]] = q2.apply(iota.emap[e])
    iota2 = Morphism(q.cod, L, vmap, emap)
    return Defect("cospan", q2, iota2)


# -- exhaustive dual search --------------------------------------------------------------


@dataclass(frozen=True)
class DualSearch:
    dual: Defect | None
    exhaustive: bool

    @property
    def provably_none(self) -> bool:
        return self.dual is None and self.exhaustive


def iter_dual_defects(defect: Defect, pair: MinorPair = CG, size_bound: int | None = None, deadline: Deadline | None = None):
    """Every commuting dual (middle nets up to renaming); yields ``(dual, exhaustive_so_far)`` pairs."""
    q, iota = defect.q, defect.iota
    if defect.kind == "cospan":
        A, B = q.dom, iota.dom
        if size_bound is not None and size_bound < len(B.vertices):
            raise LimitExceeded(size_bound, "middle-net size (below the forced range)")
        back_v = {w: v for v, w in iota.vmap.items()}
        for D in sub_nets(A):
            if size_bound is not None and _size(D) > size_bound:
                continue
            if len(D.vertices) < len(B.vertices):
                continue
            hint = {}
            ok = True
            for d in D.vertices:
                w = q.vmap[d]
                if w not in back_v:
                    ok = False
                    break
                hint[d] = back_v[w]
            if not ok:
                continue
            iota2 = inclusion_of(D, A)
            qi = compose(q, iota2)
            for q2 in iter_morphisms(D, B, pair.quotient_labels, deadline, vertex_hint=hint):
                if compose(iota, q2) == qi:
                    yield Defect("span", q2, iota2)
        return
    X, Y = q.cod, iota.cod
    if size_bound is not None and size_bound < _size(X):
        raise LimitExceeded(size_bound, "middle-net size (below the forced range)")
    for q2 in iter_coarse_grainings(Y):
        if deadline:
            deadline.check()
        L = q2.cod
        if size_bound is not None and _size(L) > size_bound:
            continue
        if not pair.is_quotient(q2):
            continue
        hint = {q.vmap[s]: q2.vmap[iota.vmap[s]] for s in q.dom.vertices}
        if len(hint) != len(X.vertices):
            continue
        target = compose(q2, iota)
        for i2 in iter_morphisms(X, L, pair.embedding_labels, deadline, vertex_hint=hint):
            if compose(i2, q) == target:
                yield Defect("cospan", q2, i2)


def find_dual_defect(defect: Defect, pair: MinorPair = CG, size_bound: int | None = None, deadline_ms=None) -> DualSearch:
    """First commuting dual, or a verdict saying whether the search covered the forced range."""
    forced = _size(defect.q.dom) if defect.kind == "cospan" else _size(defect.iota.cod)
    exhaustive = size_bound is None or size_bound >= forced
    dual = next(iter_dual_defects(defect, pair, size_bound, Deadline(deadline_ms)), None)
    return DualSearch(dual, exhaustive)


# -- minor relations ----------------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    relation: str
    middle: CausalNet | None
    morphisms: tuple[Morphism, ...]


@dataclass(frozen=True)
class MinorSearch:
    witness: MinorWitness | None
    exhaustive: bool


def _fits(H: CausalNet, K: CausalNet) -> bool:
    return len(K.vertices) >= len(H.vertices) and len(K.edges) >= len(H.edges)


def _span(H, G, relation, bound, dl, accept) -> MinorSearch:
    """Sub-nets ``K`` of ``G`` with at most ``bound`` vertices; ``accept(K)`` returns morphisms or None."""
    complete = True
    if not _fits(H, G):
        return MinorSearch(None, True)
    for K in sub_nets(G):
        if not _fits(H, K):
            continue
        if len(K.vertices) > bound:
            complete = False
            continue
        found = accept(K)
        if found is not None:
            return MinorSearch(MinorWitness(relation, K, (inclusion_of(K, G),) + found), True)
    return MinorSearch(None, complete)


def _cospan(H, G, relation, quotient_label, bound, dl) -> MinorSearch:
    complete = True
    for q in iter_coarse_grainings(G):
        dl.check()
        L = q.cod
        if not _fits(H, L) or not is_a(q, quotient_label):
            continue
        if len(L.vertices) > bound:
            complete = False
            continue
        i = next(iter_morphisms(H, L, ["embedding"], dl), None)
        if i is not None:
            return MinorSearch(MinorWitness(relation, L, (i, q)), True)
    return MinorSearch(None, complete)


def _direct(H, G, relation, label, bound, dl) -> MinorSearch:
    if len(G.vertices) > bound:
        return MinorSearch(None, False)
    m = next(iter_morphisms(H, G, [label], dl), None)
    return MinorSearch(None if m is None else MinorWitness(relation, None, (m,)), True)


SPAN_LABELS = {
    "cg": "coarse_graining",
    "contraction": "contraction",
    "homotopical": "tree_contraction",
    "path": "path_contraction",
}
COSPAN_LABELS = {"exact_cg": "coarse_graining", "exact_contraction": "contraction"}
DIRECT_LABELS = {
    "topological": "topological_embedding",
    "immersion": "immersion",
    "strong_immersion": "strong_immersion",
}
RELATIONS = tuple(SPAN_LABELS) + tuple(DIRECT_LABELS) + tuple(COSPAN_LABELS) + ("invertible_path",)
VARIANTS = ("homotopical", "path", "topological", "immersion", "strong_immersion", "exact_cg", "exact_contraction")


def minor_search(H: CausalNet, G: CausalNet, relation: str, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorSearch:
    """Search for a witness; middle nets (or, for direct searches, hosts) above ``bound`` vertices are skipped.

    ``exhaustive`` is False when anything was skipped or the deadline ran out.
    """
    dl = Deadline(deadline_ms)
    try:
        if relation in SPAN_LABELS:
            label = SPAN_LABELS[relation]
            return _span(H, G, relation, bound, dl, lambda K: _first(iter_morphisms(K, H, [label], dl)))
        if relation == "invertible_path":
            return _span(H, G, relation, bound, dl, lambda K: _invertible(K, H, dl))
        if relation in COSPAN_LABELS:
            return _cospan(H, G, relation, COSPAN_LABELS[relation], bound, dl)
        if relation in DIRECT_LABELS:
            return _direct(H, G, relation, DIRECT_LABELS[relation], bound, dl)
    except DeadlineExceeded:
        return MinorSearch(None, False)
    raise WrongClass("minor relation", relation)


def _first(it):
    m = next(it, None)
    return None if m is None else (m,)


def _invertible(K, H, dl):
    for q in iter_morphisms(K, H, ["path_contraction"], dl):
        s = next(sections(q, dl), None)
        if s is not None:
            return (q, s)
    return None


def sections(q: Morphism, deadline: Deadline | None = None) -> Iterator[Morphism]:
    """Right inverses ``s`` of ``q`` (``q . s = id``)."""
    hint = q.vertex_preimages()
    for s in iter_morphisms(q.cod, q.dom, None, deadline, vertex_hint=hint):
        if compose(q, s).is_identity:
            yield s


def decide_minor(H: CausalNet, G: CausalNet, relation: str, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorWitness | None:
    """Exhaustive decision; raises :class:`LimitExceeded` when ``G`` has more than ``bound`` vertices."""
    if len(G.vertices) > bound:
        raise LimitExceeded(bound, "host vertices")
    res = minor_search(H, G, relation, bound, deadline_ms)
    if not res.exhaustive:
        raise DeadlineExceeded()
    return res.witness


def is_cg_minor(H: CausalNet, G: CausalNet, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorWitness | None:
    """``H`` is a coarse-graining of a sub-causal-net of ``G``."""
    return decide_minor(H, G, "cg", bound, deadline_ms)


def is_contraction_minor(H: CausalNet, G: CausalNet, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorWitness | None:
    """``H`` is a contraction of a sub-causal-net of ``G``."""
    return decide_minor(H, G, "contraction", bound, deadline_ms)


def is_variant_minor(H: CausalNet, G: CausalNet, variant: str, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorWitness | None:
    if variant not in VARIANTS:
        raise WrongClass("minor variant", variant)
    return decide_minor(H, G, variant, bound, deadline_ms)


def invertible_path_minor(H: CausalNet, G: CausalNet, bound: int = DEFAULT_VERTEX_BOUND, deadline_ms=None) -> MinorWitness | None:
    """A sub-net ``K`` of ``G`` with a path-contraction ``K -> H`` that has a right inverse."""
    return decide_minor(H, G, "invertible_path", bound, deadline_ms)


# -- move-based closures ----------------------------------------------------------------


def _delete_edge(G: CausalNet, e: str) -> CausalNet:
    return G.sub_net(G.vertices, [f for f in G.edges if f != e])


def cg_moves(G: CausalNet) -> Iterator[CausalNet]:
    """Nets reached by one fundamental deletion or fundamental quotient."""
    yield from contraction_moves(G)
    from itertools import combinations

    for u, v in combinations(sorted(G.vertices), 2):
        if u not in G.descendants[v] and v not in G.descendants[u]:
            yield merge_coclique(G, [u, v]).cod
    for group in G.between.values():
        if len(group) > 1:
            yield coarse_grain_parallel(G, group[0], group[1]).cod


def contraction_moves(G: CausalNet) -> Iterator[CausalNet]:
    """Deleting an edge, deleting an isolated vertex, contracting a multi-edge."""
    for e in G.edges:
        yield _delete_edge(G, e)
    for v in G.vertices:
        if G.isolated(v):
            yield G.sub_net([x for x in G.vertices if x != v], G.edges)
    for group in G.between.values():
        try:
            yield contract_multiedge(G, group).cod
        except QuotientNotAcyclic:
            continue


def move_closure(G: CausalNet, moves: Callable[[CausalNet], Iterable[CausalNet]]) -> set[tuple]:
    """Canonical keys of every net reachable from ``G`` (``G`` included)."""
    seen = {canonical_key(G)}
    queue = deque([G])
    while queue:
        cur = queue.popleft()
        for nxt in moves(cur):
            k = canonical_key(nxt)
            if k not in seen:
                seen.add(k)
                queue.append(nxt)
    return seen


# -- congruence and gauge equivalence ------------------------------------------------------


def _isos(A: CausalNet, B: CausalNet) -> Iterator[Morphism]:
    return iter_morphisms(A, B, ["isomorphism"])


def congruent(T1: ZigZagMinor, T2: ZigZagMinor) -> bool:
    """Isomorphisms between corresponding objects, identities at both ends, commuting with every arrow."""
    if T1.kinds != T2.kinds or T1.source != T2.source or T1.target != T2.target:
        return False
    n = len(T1)

    def rec(i: int, phi: Morphism) -> bool:
        if i == n:
            return phi.is_identity
        a1, a2 = T1.arrows[i], T2.arrows[i]
        for psi in _isos(T1.objects[i + 1], T2.objects[i + 1]):
            if T1.kinds[i] == E:
                ok = compose(psi, a1) == compose(a2, phi)
            else:
                ok = compose(phi, a1) == compose(a2, psi)
            if ok and rec(i + 1, psi):
                return True
        return False

    from .morphism import identity

    return rec(0, identity(T1.source))


def gauge_moves(T: ZigZagMinor, deadline: Deadline | None = None) -> Iterator[ZigZagMinor]:
    yield from reduction_steps(T)
    for i, d in defects(T):
        for dual in iter_dual_defects(d, T.pair, None, deadline):
            yield dual_transform(T, i, dual)


@dataclass(frozen=True)
class GaugeVerdict:
    verdict: str  # "equivalent", "distinct", "unknown"
    explored: int


def _shape(T: ZigZagMinor) -> tuple:
    return T.kinds, tuple(canonical_key(K) for K in T.objects[1:-1])


class _Classes:
    """Congruence classes of minors, bucketed by shape."""

    def __init__(self):
        self.buckets: dict[tuple, list[ZigZagMinor]] = {}
        self.size = 0

    def find(self, T: ZigZagMinor) -> bool:
        return any(congruent(T, x) for x in self.buckets.get(_shape(T), ()))

    def add(self, T: ZigZagMinor) -> bool:
        if self.find(T):
            return False
        self.buckets.setdefault(_shape(T), []).append(T)
        self.size += 1
        return True


def _explore(start: ZigZagMinor, goal: _Classes, limit: int, dl: Deadline):
    """BFS over gauge moves; returns (reached goal, closure, complete)."""
    seen = _Classes()
    seen.add(start)
    if goal.find(start):
        return True, seen, True
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in gauge_moves(cur, dl):
            if not seen.add(nxt):
                continue
            if goal.find(nxt):
                return True, seen, True
            if seen.size >= limit:
                return False, seen, False
            queue.append(nxt)
    return False, seen, True


def gauge_equivalent(T1: ZigZagMinor, T2: ZigZagMinor, search_bound: int = 200, deadline_ms=None) -> GaugeVerdict:
    """Bounded search over reductions and dual transformations, up to congruence.

    "distinct" means both closures under these (non-lengthening) moves were
    explored completely and share no congruence class.
    """
    if T1.source != T2.source or T1.target != T2.target:
        return GaugeVerdict("distinct", 0)
    dl = Deadline(deadline_ms)
    try:
        g2 = _Classes()
        g2.add(T2)
        hit, c1, done1 = _explore(T1, g2, search_bound, dl)
        if hit:
            return GaugeVerdict("equivalent", c1.size)
        hit, c2, done2 = _explore(T2, c1, search_bound, dl)
        if hit:
            return GaugeVerdict("equivalent", c1.size + c2.size)
    except DeadlineExceeded:
        return GaugeVerdict("unknown", 0)
    if done1 and done2:
        return GaugeVerdict("distinct", c1.size + c2.size)
    return GaugeVerdict("unknown", c1.size + c2.size)


def defect_count(T: ZigZagMinor) -> int:
    return len(defects(reduce(T)))
