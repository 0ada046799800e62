from collections import Counter

import pytest
from hypothesis import given

from causalnet.classify import (
    IMPLICATIONS,
    FundamentalKind,
    classify,
    epi_verdict,
    fundamental_type,
    has_labels,
    indecomposable_check,
    is_a,
    mono_verdict,
)
from causalnet.construct import (
    add_edge,
    add_isolated_vertex,
    coarse_grain_parallel,
    contract_edge,
    iter_coarse_grainings,
    merge_two_vertices,
    subdivide_edge,
)
from causalnet.fixtures import (
    Q1,
    S1,
    X1,
    ecg_example,
    edge_lift_example,
    immersion_example,
    inclusion_example,
    lambda1,
    net,
    p2_to_p3,
    path_net,
    strong_immersion_example,
    vcg_example,
    weak_embedding_example,
    weak_embedding_pair,
)
from causalnet.enumeration import nets_up_to
from causalnet.morphism import compose, identity

from conftest import causal_nets, morphisms


def labels(m):
    return {str(x) for x in classify(m)}


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def test_q1_is_non_surjective_quotient():
    L = labels(Q1())
    assert {"quotient", "coarse_graining", "merging"} <= L
    assert "surjection" not in L


def test_s1_is_surjection_not_coarse_graining():
    L = labels(S1())
    assert "surjection" in L and "coarse_graining" not in L


def test_immersion_fixtures():
    L = labels(immersion_example())
    assert "immersion" in L and "strong" not in L and "weak_embedding" not in L
    assert "strong_immersion" in labels(strong_immersion_example())
    assert "immersion" in labels(edge_lift_example())
    assert "weak_embedding" in labels(weak_embedding_example())


def test_quotient_fixtures():
    L = labels(lambda1())
    assert "coarse_graining" in L and "vertex_cg" not in L and "edge_cg" not in L
    L = labels(vcg_example())
    assert "vertex_cg" in L and "contraction" not in L and "merging" not in L
    assert "edge_cg" in labels(ecg_example())
    assert "subdivision_morphism" in labels(p2_to_p3())
    assert "inclusion" in labels(inclusion_example())


def test_identity_is_isomorphism():
    m = identity(X1())
    assert is_a(m, "isomorphism") and has_labels(m, ["quotient", "embedding"])


def test_fundamental_builders_are_recognized():
    G = net("a b c", "e a b", "f a b", "g a c")
    cases = {
        FundamentalKind.SUBDIVIDE_EDGE: subdivide_edge(G, "g"),
        FundamentalKind.ADD_EDGE: add_edge(G, "b", "c"),
        FundamentalKind.ADD_ISOLATED_VERTEX: add_isolated_vertex(G),
        FundamentalKind.MERGE_TWO_VERTICES: merge_two_vertices(G, "b", "c"),
        FundamentalKind.COARSE_GRAIN_PARALLEL: coarse_grain_parallel(G, "e", "f"),
        FundamentalKind.CONTRACT_EDGE: contract_edge(G, "g"),
    }
    for kind, m in cases.items():
        assert fundamental_type(m) is kind
    assert fundamental_type(identity(G)) is None


def test_fundamental_morphisms_factor_further():
    """Adding an isolated vertex first lets every fundamental morphism split."""
    res = indecomposable_check(subdivide_edge(path_net(2), "e1"))
    assert res.verdict == "no"
    f, g = res.witness
    assert compose(g, f) == subdivide_edge(path_net(2), "e1")


def test_indecomposable_reports_unknown_below_endpoints():
    assert indecomposable_check(Q1(), intermediate_size_bound=2).verdict == "unknown"


def test_weak_embeddings_not_closed():
    f, g = weak_embedding_pair()
    assert is_a(f, "weak_embedding") and is_a(g, "weak_embedding")
    assert not is_a(compose(g, f), "weak_embedding")


@pytest.mark.parametrize("G", list(nets_up_to(3, 4)), ids=str)
def test_edge_cg_count_is_congruence_count(G):
    """Edge coarse-grainings out of G correspond to partitions of each parallel class."""
    n = sum(1 for m in iter_coarse_grainings(G, allow_contraction=False) if is_a(m, "edge_cg"))
    sizes = Counter(G.ends[e] for e in G.edges).values()
    expected = 1
    for k in sizes:
        expected *= bell(k)
    assert n == expected


@given(morphisms())
def test_lattice_implications(m):
    """Every label implies the labels above it."""
    L = labels(m)
    for a, b in IMPLICATIONS:
        if a in L:
            assert b in L, (a, b)
    assert ("strong_immersion" in L) == ("immersion" in L and "strong" in L)
    assert ("isomorphism" in L) == ("quotient" in L and "embedding" in L)


@given(morphisms())
def test_quotient_iff_epi(m):
    """The quotient label agrees with right-cancellation on the probes."""
    assert epi_verdict(m).holds == is_a(m, "quotient")


@given(morphisms())
def test_inclusion_iff_mono(m):
    """The inclusion label agrees with left-cancellation on the probes."""
    assert mono_verdict(m).holds == is_a(m, "inclusion")


@given(causal_nets(max_vertices=4, max_edges=4))
def test_coarse_grainings_compose(G):
    """Coarse-grainings stay coarse-grainings after composing."""
    firsts = list(iter_coarse_grainings(G))[:6]
    for f in firsts:
        for g in list(iter_coarse_grainings(f.cod))[:6]:
            assert is_a(compose(g, f), "coarse_graining")
