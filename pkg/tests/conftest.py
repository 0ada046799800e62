from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

from causalnet.morphism import iter_morphisms
from causalnet.net import validate_net

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("repo")

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@st.composite
def causal_nets(draw, max_vertices=5, max_edges=6, min_vertices=0):
    """Random causal-nets: edges only run forward along a shuffled vertex order."""
    n = draw(st.integers(min_vertices, max_vertices))
    names = draw(st.permutations([f"v{i}" for i in range(1, n + 1)]))
    pairs = []
    if n >= 2:
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1])
        pairs = draw(st.lists(pair, max_size=max_edges))
    return validate_net(names, [(f"e{i}", names[a], names[b]) for i, (a, b) in enumerate(pairs, 1)])


@st.composite
def morphisms(draw, max_vertices=3, max_edges=3, labels=None):
    G = draw(causal_nets(max_vertices, max_edges))
    H = draw(causal_nets(max_vertices, max_edges, min_vertices=1))
    options = []
    for m in iter_morphisms(G, H, labels):
        options.append(m)
        if len(options) >= 50:
            break
    if not options:
        from hypothesis import assume

        assume(False)
    return draw(st.sampled_from(options))


# defect shapes: fundamental quotient kind, then span or cospan position
LEMMAS = ("contract-cospan", "merge-cospan", "parallel-cospan", "merge-span", "parallel-span")


def _quotient_options(A, lemma):
    from causalnet.construct import coarse_grain_parallel, contract_multiedge, merge_two_vertices
    from causalnet.errors import QuotientNotAcyclic
    from causalnet.net import comparable

    vs = sorted(A.vertices)
    if lemma in ("merge-cospan", "merge-span"):
        return [(merge_two_vertices, (A, u, v)) for i, u in enumerate(vs) for v in vs[i + 1:] if not comparable(A, u, v)]
    if lemma in ("parallel-cospan", "parallel-span"):
        return [(coarse_grain_parallel, (A, g[0], g[1])) for g in A.between.values() if len(g) > 1]
    out = []
    for g in A.between.values():
        try:
            contract_multiedge(A, g)
        except QuotientNotAcyclic:
            continue
        out.append((contract_multiedge, (A, g)))
    return out


def _embedding_options(C, lemma):
    from causalnet.construct import add_edge, add_isolated_vertex, delete_edge, delete_isolated_vertex
    from causalnet.net import reachable

    if lemma in ("merge-span", "parallel-span"):
        opts = [(add_isolated_vertex, (C,))]
        opts += [(add_edge, (C, u, v)) for u in C.vertices for v in C.vertices if u != v and not reachable(C, v, u)]
        return opts
    opts = [(delete_edge, (C, e)) for e in C.edges]
    return opts + [(delete_isolated_vertex, (C, v)) for v in C.vertices if C.isolated(v)]


@st.composite
def lemma_defects(draw, lemma, max_vertices=4, max_edges=4):
    """A defect of a fundamental quotient and a fundamental embedding, shaped for ``lemma``."""
    from hypothesis import assume

    from causalnet.minor import Defect

    A = draw(causal_nets(max_vertices, max_edges, min_vertices=1))
    qs = _quotient_options(A, lemma)
    assume(qs)
    f, args = draw(st.sampled_from(qs))
    q = f(*args)
    C = A if lemma in ("merge-span", "parallel-span") else q.cod
    es = _embedding_options(C, lemma)
    assume(es)
    g, gargs = draw(st.sampled_from(es))
    iota = g(*gargs)
    return Defect("span" if lemma in ("merge-span", "parallel-span") else "cospan", q, iota)
