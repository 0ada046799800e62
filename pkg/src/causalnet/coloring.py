"""Fusions as colorings, harmonic and complete nets, linear colorings, sorting-nets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping

from .classify import is_a
from .construct import iter_coarse_grainings, merge_coclique, simplify
from .enumeration import canonical_key
from .errors import DifferentNets, LimitExceeded, NotAGap, WrongClass
from .morphism import Morphism, compose, find_isomorphism
from .net import CausalNet, is_connected

HARMONIC_BOUND = 6


def has_hamiltonian_path(net: CausalNet) -> bool:
    """Whether a directed path visits every vertex exactly once."""
    n = len(net.vertices)
    if n == 0:
        return False
    succ = {v: sorted({net.ends[e][1] for e in net.out_edges[v]}) for v in net.vertices}

    def extend(v, visited):
        if len(visited) == n:
            return True
        for w in succ[v]:
            if w not in visited:
                visited.add(w)
                if extend(w, visited):
                    return True
                visited.discard(w)
        return False

    starts = [v for v in net.topological_order if not net.in_edges[v]]
    return any(extend(s, {s}) for s in starts)


def is_harmonic(net: CausalNet) -> bool:
    return net.is_simple and is_connected(net) and len(net.vertices) > 0 and has_hamiltonian_path(net)


def iter_fusions(net: CausalNet):
    return iter_coarse_grainings(net, allow_contraction=False)


def harmonic_oracle(net: CausalNet, bound: int = HARMONIC_BOUND) -> bool:
    """Brute force: simple, connected, and every fusion out of ``net`` is an isomorphism."""
    if len(net.vertices) > bound:
        raise LimitExceeded(bound, "vertices")
    if not net.vertices or not net.is_simple or not is_connected(net):
        return False
    return all(is_a(f, "isomorphism") for f in iter_fusions(net))


def _chain_with_chords(n: int, chords) -> CausalNet:
    vs = tuple(str(i) for i in range(1, n + 1))
    pairs = [(i, i + 1) for i in range(1, n)] + list(chords)
    pairs.sort()
    es = tuple(f"e{i}_{j}" for i, j in pairs)
    return CausalNet(vs, es, {f"e{i}_{j}": (str(i), str(j)) for i, j in pairs})


def enumerate_harmonic(n: int, bound: int = HARMONIC_BOUND) -> list[CausalNet]:
    """One harmonic net per isomorphism class: hamiltonian backbone plus forward chords."""
    if n > bound:
        raise LimitExceeded(bound, "vertices")
    if n <= 0:
        return []
    chords = [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1)]
    reps: list[CausalNet] = []
    buckets: dict[tuple, list[CausalNet]] = {}
    for r in range(len(chords) + 1):
        for chosen in combinations(chords, r):
            G = _chain_with_chords(n, chosen)
            key = canonical_key(G)
            bucket = buckets.setdefault(key, [])
            if any(find_isomorphism(G, H) is not None for H in bucket):
                continue
            bucket.append(G)
            reps.append(G)
    return reps


def complete_net(n: int) -> CausalNet:
    """K_n: vertices 1..n and one edge i -> j for every i < j."""
    vs = tuple(str(i) for i in range(1, n + 1))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return CausalNet(vs, tuple(f"e{i}_{j}" for i, j in pairs), {f"e{i}_{j}": (str(i), str(j)) for i, j in pairs})


# -- linear colorings and sorting-nets ------------------------------------------------


@dataclass(frozen=True)
class LinearColoring:
    net: CausalNet
    label: Mapping[str, int]

    def __post_init__(self):
        for v in self.net.vertices:
            if v not in self.label:
                raise WrongClass("linear coloring", f"vertex {v} has no label")
        for e in self.net.edges:
            s, t = self.net.ends[e]
            if not self.label[s] < self.label[t]:
                raise WrongClass("linear coloring", f"edge {e} does not increase the label")

    def normalized(self) -> dict[str, int]:
        """Labels renumbered densely to 1..k keeping their order."""
        values = sorted(set(self.label.values()))
        rank = {x: i + 1 for i, x in enumerate(values)}
        return {v: rank[self.label[v]] for v in self.net.vertices}


@dataclass(frozen=True)
class SortingNet:
    net: CausalNet
    order: tuple[str, ...]

    def __post_init__(self):
        if not self.net.is_simple:
            raise WrongClass("sorting-net", "net is not simple")
        if sorted(self.order) != sorted(self.net.vertices):
            raise WrongClass("sorting-net", "order is not a permutation of the vertices")
        pos = {v: i for i, v in enumerate(self.order)}
        for e in self.net.edges:
            s, t = self.net.ends[e]
            if pos[s] >= pos[t]:
                raise WrongClass("sorting-net", f"edge {e} runs backwards")


def coloring_of_linear(L: LinearColoring) -> tuple[SortingNet, Morphism]:
    """Sorting-net on the used labels and the causal-coloring onto it."""
    lab = L.normalized()
    k = max(lab.values(), default=0)
    G = L.net
    vs = tuple(str(i) for i in range(1, k + 1))
    pairs = sorted({(lab[G.ends[e][0]], lab[G.ends[e][1]]) for e in G.edges})
    names = {p: f"e{p[0]}_{p[1]}" for p in pairs}
    S = CausalNet(vs, tuple(names[p] for p in pairs), {names[p]: (str(p[0]), str(p[1])) for p in pairs})
    vmap = {v: str(lab[v]) for v in G.vertices}
    emap = {e: S.edge_path(names[(lab[G.ends[e][0]], lab[G.ends[e][1]])]) for e in G.edges}
    return SortingNet(S, vs), Morphism(G, S, vmap, emap)


def similar(L1: LinearColoring, L2: LinearColoring) -> bool:
    """Whether a bijection of label values carries ``L1`` to ``L2``."""
    if L1.net != L2.net:
        raise DifferentNets()
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    for v in L1.net.vertices:
        a, b = L1.label[v], L2.label[v]
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return False
    return True


def gaps(S: SortingNet) -> list[tuple[str, str]]:
    """Consecutive pairs of the order joined by no edge."""
    out = []
    for a, b in zip(S.order, S.order[1:]):
        if (a, b) not in S.net.between:
            out.append((a, b))
    return out


def condense(S: SortingNet, gap: tuple[str, str] | int) -> SortingNet:
    """Eliminate a gap: merge the pair, then simplify. ``gap`` may be a 1-based position."""
    if isinstance(gap, int):
        if not 1 <= gap < len(S.order):
            raise NotAGap(gap)
        gap = (S.order[gap - 1], S.order[gap])
    if gap not in gaps(S):
        raise NotAGap(gap)
    a, b = gap
    m = merge_coclique(S.net, [a, b])
    s = simplify(m.cod)
    merged = m.vmap[a]
    order = []
    for v in S.order:
        x = s.vmap[m.vmap[v]]
        if x not in order:
            order.append(x)
    assert merged in order
    return SortingNet(s.cod, tuple(order))


def minimal_sorting_net(S: SortingNet) -> SortingNet:
    """Condense the leftmost gap until none remain."""
    while True:
        gs = gaps(S)
        if not gs:
            return S
        S = condense(S, gs[0])


def all_gap_orders(S: SortingNet) -> list[SortingNet]:
    """Minimal sorting-nets reached by every possible sequence of gap choices."""
    results = []
    stack = [S]
    while stack:
        cur = stack.pop()
        gs = gaps(cur)
        if not gs:
            results.append(cur)
        for g in gs:
            stack.append(condense(cur, g))
    return results


def topological_sortings(net: CausalNet) -> list[tuple[str, ...]]:
    """All linear extensions, in lexicographic order."""
    out: list[tuple[str, ...]] = []
    indeg = {v: len(net.in_edges[v]) for v in net.vertices}
    trail: list[str] = []

    def rec():
        if len(trail) == len(net.vertices):
            out.append(tuple(trail))
            return
        for v in sorted(net.vertices):
            if indeg[v] == 0 and v not in trail:
                trail.append(v)
                for e in net.out_edges[v]:
                    indeg[net.ends[e][1]] -= 1
                rec()
                for e in net.out_edges[v]:
                    indeg[net.ends[e][1]] += 1
                trail.pop()

    rec()
    return out


# -- colorings --------------------------------------------------------------------


def iter_mergings(G: CausalNet):
    """All mergings out of ``G``, one per admissible vertex partition."""
    return iter_coarse_grainings(G, allow_contraction=False, merge_edges=False)


def enumerate_colorings(G: CausalNet, bound: int = 5) -> list[Morphism]:
    """Causal-colorings out of ``G`` up to codomain isomorphism (merging then simplification)."""
    if len(G.vertices) > bound:
        raise LimitExceeded(bound, "vertices")
    out = []
    for m in iter_mergings(G):
        out.append(compose(simplify(m.cod), m))
    return out


def coloring_partition(m: Morphism) -> frozenset[frozenset[str]]:
    blocks: dict[str, set[str]] = {}
    for v in m.dom.vertices:
        blocks.setdefault(m.vmap[v], set()).add(v)
    return frozenset(frozenset(b) for b in blocks.values())


def linear_colorings_upto_similarity(G: CausalNet) -> list[LinearColoring]:
    """One linear coloring per similarity class, by brute force over labelings with values 1..n."""
    n = len(G.vertices)
    seen = set()
    out = []
    for values in product(range(1, n + 1), repeat=n):
        lab = dict(zip(G.vertices, values))
        if any(lab[G.ends[e][0]] >= lab[G.ends[e][1]] for e in G.edges):
            continue
        L = LinearColoring(G, lab)
        key = frozenset(
            frozenset(v for v in G.vertices if lab[v] == x) for x in set(values)
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(L)
    return out
