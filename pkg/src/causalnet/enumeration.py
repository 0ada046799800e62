"""Exhaustive enumeration of small causal-nets up to isomorphism."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

from .morphism import find_isomorphism
from .net import CausalNet


def _refine(net: CausalNet) -> dict[str, tuple]:
    """Colour refinement seeded by in/out degree; isomorphism-invariant."""
    colour = {v: (len(net.in_edges[v]), len(net.out_edges[v])) for v in net.vertices}
    for _ in range(len(net.vertices)):
        new = {}
        for v in net.vertices:
            ins = sorted((colour[net.ends[e][0]]) for e in net.in_edges[v])
            outs = sorted((colour[net.ends[e][1]]) for e in net.out_edges[v])
            new[v] = (colour[v], tuple(ins), tuple(outs))
        ranks = {c: i for i, c in enumerate(sorted(set(new.values())))}
        new = {v: (ranks[new[v]],) for v in net.vertices}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    return colour


def canonical_key(net: CausalNet) -> tuple:
    """Isomorphism-invariant key: equal keys iff the nets are isomorphic."""
    colour = _refine(net)
    classes: dict[tuple, list[str]] = {}
    for v in net.vertices:
        classes.setdefault(colour[v], []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    best = None
    for perms in product(*(permutations(c) for c in ordered)):
        index = {}
        for block in perms:
            for v in block:
                index[v] = len(index)
        edges = tuple(sorted((index[s], index[t]) for s, t in net.ends.values()))
        if best is None or edges < best:
            best = edges
    return (len(net.vertices), best or ())


def standard_net(n: int, pairs) -> CausalNet:
    vs = tuple(f"v{i + 1}" for i in range(n))
    es = tuple(f"e{k + 1}" for k in range(len(pairs)))
    ends = {f"e{k + 1}": (f"v{i + 1}", f"v{j + 1}") for k, (i, j) in enumerate(pairs)}
    return CausalNet(vs, es, ends)


@lru_cache(maxsize=None)
def _nets(n: int, m: int) -> tuple[CausalNet, ...]:
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if m and not slots:
        return ()
    seen = set()
    out = []
    for pairs in combinations_with_replacement(slots, m):
        net = standard_net(n, pairs)
        key = canonical_key(net)
        if key in seen:
            continue
        seen.add(key)
        out.append(net)
    return tuple(out)


def nets(n: int, m: int) -> tuple[CausalNet, ...]:
    """One representative per isomorphism class with ``n`` vertices and ``m`` edges."""
    return _nets(n, m)


def nets_up_to(max_vertices: int, max_edges: int, min_vertices: int = 0) -> Iterator[CausalNet]:
    for n in range(min_vertices, max_vertices + 1):
        for m in range(max_edges + 1):
            yield from _nets(n, m)


def nets_up_to_size(size: int) -> Iterator[CausalNet]:
    """Nets with vertices + edges at most ``size``, smaller ones first."""
    for total in range(size + 1):
        for n in range(total + 1):
            yield from _nets(n, total - n)


def isomorphic(G: CausalNet, H: CausalNet) -> bool:
    return find_isomorphism(G, H) is not None
