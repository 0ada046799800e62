"""Named example nets and morphisms used by tests, the CLI corpus and docs."""

from __future__ import annotations

from .morphism import Morphism, validate_morphism
from .net import CausalNet, validate_net


def net(vertices: str, *edges: str) -> CausalNet:
    """Shorthand: ``net("a b c", "e1 a b", "e2 b c")``."""
    return validate_net(vertices.split(), [tuple(e.split()) for e in edges])


def mor(dom: CausalNet, cod: CausalNet, vmap: str, emap: dict[str, str]) -> Morphism:
    """Shorthand: ``vmap="a:x b:y"``; ``emap={"e": "h1 h2"}`` or ``"@w"``."""
    vm = dict(pair.split(":") for pair in vmap.split())
    em = {e: (p if p.startswith("@") else p.split()) for e, p in emap.items()}
    return validate_morphism(dom, cod, vm, em)


def path_net(n: int) -> CausalNet:
    """P_n: vertices v1..vn joined by e1..e_{n-1}."""
    return net(" ".join(f"v{i}" for i in range(1, n + 1)), *(f"e{i} v{i} v{i + 1}" for i in range(1, n)))


def X1() -> CausalNet:
    return net("v1 v2 v3 v4", "e1 v1 v2", "e2 v1 v2", "e3 v2 v3", "e4 v1 v3")


def Q1() -> Morphism:
    G = net("v1 v2 v3 v4", "e1 v1 v2", "e2 v3 v4")
    H = net("w1 w2 w3", "h1 w1 w2", "h2 w2 w3")
    return mor(G, H, "v1:w1 v2:w2 v3:w2 v4:w3", {"e1": "h1", "e2": "h2"})


def S1() -> Morphism:
    G = net("v1 v2 v3", "e1 v1 v2", "e2 v2 v3", "e3 v1 v3")
    H = net("w1 w2 w3", "h1 w1 w2", "h2 w2 w3")
    return mor(G, H, "v1:w1 v2:w2 v3:w3", {"e1": "h1", "e2": "h2", "e3": "h1 h2"})


def lambda1() -> Morphism:
    """Coarse-graining of X1's triangle part onto a single edge (v4 kept apart)."""
    H = net("w1 w2 w4", "h w1 w2")
    return mor(X1(), H, "v1:w1 v2:w1 v3:w2 v4:w4", {"e1": "@w1", "e2": "@w1", "e3": "h", "e4": "h"})


def vcg_example() -> Morphism:
    G = net(
        "a b v1 v2 v3 v4 c d f g",
        "x1 a v1", "x2 b v1", "e1 v1 v3", "x3 v3 c", "e2 v1 v2", "e3 v2 v3", "x4 v4 d", "x5 f v4", "x6 f g",
    )
    H = net("w a' b' c' d' f' g'", "x1 a' w", "x2 b' w", "x3 w c'", "x5 f' w", "x4 w d'", "x6 f' g'")
    return mor(
        G, H, "a:a' b:b' c:c' d:d' f:f' g:g' v1:w v2:w v3:w v4:w",
        {"x1": "x1", "x2": "x2", "x3": "x3", "x4": "x4", "x5": "x5", "x6": "x6",
         "e1": "@w", "e2": "@w", "e3": "@w"},
    )


def ecg_example() -> Morphism:
    G = net("v1 v2", "e1 v1 v2", "e2 v1 v2", "e3 v1 v2", "e4 v1 v2")
    H = net("u1 u2", "h1 u1 u2", "h2 u1 u2")
    return mor(G, H, "v1:u1 v2:u2", {"e1": "h1", "e2": "h1", "e3": "h2", "e4": "h2"})


def causal_tree_example() -> CausalNet:
    """Net whose multi-edge {e1, e2} contracts to a single vertex."""
    return net("a b c d f", "x1 a b", "e1 b c", "e2 b c", "x2 c d", "x3 f c", "x4 f c")


def R3() -> CausalNet:
    return net("v1 v2 v3", "e1 v1 v2", "e2 v1 v3", "e3 v3 v2")


def five_vertex_sorting():
    from .coloring import SortingNet

    G = net("v1 v2 v3 v4 v5", "a v1 v3", "b v2 v5", "c v4 v5")
    return SortingNet(G, ("v1", "v2", "v3", "v4", "v5"))


def six_vertex_sorting():
    from .coloring import SortingNet

    G = net(
        "v1 v2 v3 v4 v5 v6",
        "a v1 v2", "b v1 v3", "c v1 v5", "d v2 v4", "f v3 v4", "g v3 v5", "h v3 v6", "k v4 v5",
    )
    return SortingNet(G, ("v1", "v2", "v3", "v4", "v5", "v6"))


def six_vertex_condensed() -> CausalNet:
    return net("v1 u v4 v5 v6", "a v1 u", "b u v4", "c u v5", "d u v6", "f v4 v5", "g v1 v5")


def inclusion_example() -> Morphism:
    H = net("a b", "h1 a b", "h2 a b")
    G = net("x v y", "e1 x v", "e2 x v", "e3 v y")
    return mor(H, G, "a:x b:y", {"h1": "e1 e3", "h2": "e2 e3"})


def immersion_example() -> Morphism:
    H = net("a b w", "h1 a b", "h2 a b", "h a w")
    G = net("x v y", "e1 x v", "e2 x v", "e x v", "e3 v y", "e4 v y")
    return mor(H, G, "a:x b:y w:v", {"h1": "e1 e3", "h2": "e2 e4", "h": "e"})


def strong_immersion_example() -> Morphism:
    H = net("a b w", "h1 a b", "h2 a b", "h a w")
    G = net("x v y z", "e1 x v", "e2 x v", "e3 v y", "e4 v y", "e x z")
    return mor(H, G, "a:x b:y w:z", {"h1": "e1 e3", "h2": "e2 e4", "h": "e"})


def edge_lift_example() -> Morphism:
    H = net("a b w", "h a b")
    G = net("p v q r", "e1 p v", "e2 v q", "e3 v r")
    return mor(H, G, "a:p b:q w:r", {"h": "e1 e2"})


def weak_embedding_example() -> Morphism:
    H = net("a b c", "h1 a b", "h2 a c")
    G = net("x v y", "e1 x v", "e2 x v", "e3 v y")
    return mor(H, G, "a:x b:v c:y", {"h1": "e1", "h2": "e2 e3"})


def topological_example() -> tuple[Morphism, Morphism]:
    H = net("v1 v2 v3", "h1 v1 v2", "h2 v1 v3", "h3 v2 v3")
    G = net("w1 w2 w3 w4 w5", "e1 w1 w4", "e2 w1 w2", "e3 w2 w3", "e4 w3 w4", "e5 w3 w5")
    l1 = mor(H, G, "v1:w1 v2:w2 v3:w4", {"h1": "e2", "h2": "e1", "h3": "e3 e4"})
    l2 = mor(H, G, "v1:w1 v2:w3 v3:w4", {"h1": "e2 e3", "h2": "e1", "h3": "e4"})
    return l1, l2


def p2_to_p3() -> Morphism:
    P2 = net("v1 v2", "h v1 v2")
    P3 = net("w1 w2 w3", "e1 w1 w2", "e2 w2 w3")
    return mor(P2, P3, "v1:w1 v2:w3", {"h": "e1 e2"})


def D1():
    """Span defect with no dual: contract e2 in K, delete e4 from G."""
    K = net("a b c d", "e1 a b", "e2 a d", "e3 c d")
    G = net("a b c d", "e1 a b", "e2 a d", "e3 c d", "e4 b c")
    H = net("m b c", "e1 m b", "e3 c m")
    q = mor(K, H, "a:m d:m b:b c:c", {"e1": "e1", "e2": "@m", "e3": "e3"})
    iota = mor(K, G, "a:a b:b c:c d:d", {"e1": "e1", "e2": "e2", "e3": "e3"})
    return q, iota


def exact_minor_example() -> tuple[CausalNet, CausalNet]:
    """(H, G): H is a contraction of a sub-net of G."""
    G = net(
        "p q v1 v2 s t u",
        "a p v1", "b p q", "c q v1", "e v1 v2", "f v2 s", "g v2 t", "h t s", "k t u",
    )
    H = net("p q m s t", "a p m", "c q m", "f m s", "g m t")
    return H, G


def topological_minor_figure() -> tuple[CausalNet, CausalNet]:
    """(H, G): triangle H and a net G containing a subdivided triangle."""
    G = net("a b c d f", "x a c", "e1 a b", "e2 b d", "y d c", "z d f")
    H = net("x z y", "p x z", "r z y", "s x y")
    return H, G


def complete(n: int) -> CausalNet:
    from .coloring import complete_net

    return complete_net(n)


def weak_embedding_pair() -> tuple[Morphism, Morphism]:
    """Two weak-embeddings whose composite is the immersion fixture, which is not weak."""
    H = immersion_example().dom
    M = net("a b w", "f1 a w", "f2 w b", "h2 a b", "h a w")
    G = immersion_example().cod
    first = mor(H, M, "a:a b:b w:w", {"h1": "f1 f2", "h2": "h2", "h": "h"})
    second = mor(M, G, "a:x b:y w:v", {"f1": "e1", "f2": "e3", "h2": "e2 e4", "h": "e"})
    return first, second
