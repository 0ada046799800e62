from itertools import combinations, permutations, product

import pytest
from hypothesis import given, strategies as st

from causalnet.classify import is_a
from causalnet.coloring import (
    LinearColoring,
    SortingNet,
    all_gap_orders,
    coloring_of_linear,
    coloring_partition,
    complete_net,
    condense,
    enumerate_colorings,
    enumerate_harmonic,
    gaps,
    harmonic_oracle,
    has_hamiltonian_path,
    is_harmonic,
    iter_mergings,
    linear_colorings_upto_similarity,
    minimal_sorting_net,
    similar,
    topological_sortings,
)
from causalnet.construct import simplify
from causalnet.errors import DifferentNets, LimitExceeded, NotAGap, WrongClass
from causalnet.fixtures import five_vertex_sorting, net, path_net, six_vertex_condensed, six_vertex_sorting
from causalnet.morphism import find_isomorphism
from causalnet.net import validate_net

from conftest import causal_nets


def test_small_harmonic_counts():
    assert [len(enumerate_harmonic(n)) for n in (1, 2, 3, 4)] == [1, 1, 2, 8]


def test_harmonic_count_formula():
    # a unique topological order fixes the backbone, so chord sets are the classes
    for n in range(2, 6):
        assert len(enumerate_harmonic(n)) == 2 ** ((n - 1) * (n - 2) // 2)


def test_harmonic_bound():
    with pytest.raises(LimitExceeded):
        enumerate_harmonic(7)


def test_harmonic_examples():
    assert is_harmonic(complete_net(4)) and has_hamiltonian_path(path_net(5))
    assert not is_harmonic(net("a b c", "e a b"))
    assert not is_harmonic(net("a b", "e a b", "f a b"))
    assert not harmonic_oracle(net("a b"))


def test_complete_net_sizes():
    assert complete_net(0).vertices == ()
    assert len(complete_net(4).edges) == 6


def test_five_vertex_gaps():
    assert gaps(five_vertex_sorting()) == [("v1", "v2"), ("v2", "v3"), ("v3", "v4")]


def test_six_vertex_condensation():
    S = condense(six_vertex_sorting(), 2)
    assert len(S.order) == 5
    assert find_isomorphism(S.net, six_vertex_condensed()) is not None


def test_condense_errors():
    with pytest.raises(NotAGap):
        condense(six_vertex_sorting(), 1)
    with pytest.raises(NotAGap):
        condense(six_vertex_sorting(), 9)


def test_discrete_pair_condenses_to_point():
    S = SortingNet(net("a b"), ("a", "b"))
    assert len(gaps(S)) == 1
    assert condense(S, 1).order == ("a",)


def test_sorting_net_rejects_backwards_order():
    with pytest.raises(WrongClass):
        SortingNet(path_net(2), ("v2", "v1"))


def test_similar_needs_same_net():
    with pytest.raises(DifferentNets):
        similar(LinearColoring(path_net(2), {"v1": 1, "v2": 2}), LinearColoring(net("a b"), {"a": 1, "b": 1}))


def test_linear_coloring_of_parallel_pair_is_simplification():
    G = net("a b", "e a b", "f a b")
    S, lam = coloring_of_linear(LinearColoring(G, {"a": 1, "b": 2}))
    assert len(S.net.edges) == 1 and is_a(lam, "coloring")


def test_six_vertex_identity_labelling_round_trips():
    S = six_vertex_sorting()
    L = LinearColoring(S.net, {v: i + 1 for i, v in enumerate(S.order)})
    T, lam = coloring_of_linear(L)
    assert find_isomorphism(T.net, S.net) is not None and is_a(lam, "isomorphism")


def test_coloring_counts():
    assert len(enumerate_colorings(net("p"))) == 1
    assert len(enumerate_colorings(net("a b"))) == 2
    assert len(enumerate_colorings(path_net(2))) == 1


def test_complete_class_is_unique():
    """Every acyclic orientation of the complete graph is isomorphic to K_n."""
    for n in range(1, 6):
        K = complete_net(n)
        pairs = list(combinations(range(n), 2))
        vs = [f"x{i}" for i in range(n)]
        for flips in product((False, True), repeat=len(pairs)):
            edges = [
                (f"e{k}", vs[j], vs[i]) if flip else (f"e{k}", vs[i], vs[j])
                for k, ((i, j), flip) in enumerate(zip(pairs, flips))
            ]
            try:
                G = validate_net(vs, edges)
            except Exception:
                continue
            assert find_isomorphism(G, K) is not None


@given(causal_nets(max_vertices=5, max_edges=7))
def test_harmonic_matches_oracle(G):
    """The hamiltonian criterion agrees with brute-force fusion minimality."""
    assert is_harmonic(G) == harmonic_oracle(G)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_harmonic_nets_have_one_sorting(n):
    for G in enumerate_harmonic(n):
        assert is_harmonic(G)
        assert len(topological_sortings(G)) == 1


def positional(S):
    """Sorting-net shape with vertices replaced by their order positions."""
    pos = {v: i for i, v in enumerate(S.order)}
    return len(S.order), tuple(sorted((pos[S.net.ends[e][0]], pos[S.net.ends[e][1]]) for e in S.net.edges))


@given(causal_nets(max_vertices=5, max_edges=6, min_vertices=1), st.randoms(use_true_random=False))
def test_gap_elimination_ends_harmonic(G, rnd):
    """Whatever the gap order, elimination stops at a harmonic sorting-net."""
    S = SortingNet(simplify(G).cod, rnd.choice(topological_sortings(G)))
    for r in all_gap_orders(S):
        assert not gaps(r) and is_harmonic(r.net)


def test_six_vertex_gap_orders_agree():
    results = {positional(r) for r in all_gap_orders(six_vertex_sorting())}
    assert results == {positional(minimal_sorting_net(six_vertex_sorting()))}


def test_gap_order_can_change_minimal_result():
    # two disjoint edges interleaved: the middle gap gives P3, the outer gaps give P2
    S = SortingNet(net("v1 v2 v3 v4", "e1 v1 v2", "e2 v3 v4"), ("v1", "v3", "v2", "v4"))
    assert {positional(r) for r in all_gap_orders(S)} == {(2, ((0, 1),)), (3, ((0, 1), (1, 2)))}


@given(causal_nets(max_vertices=4, max_edges=5))
def test_colorings_biject_with_mergings(G):
    """Colorings and mergings have matching counts and partitions."""
    cs = enumerate_colorings(G)
    assert len(cs) == sum(1 for _ in iter_mergings(G))
    assert all(is_a(c, "coloring") for c in cs)


@given(causal_nets(max_vertices=4, max_edges=5))
def test_similarity_classes_match_colorings(G):
    """Similarity classes of linear colorings biject with colorings out of G."""
    Ls = linear_colorings_upto_similarity(G)
    parts = {coloring_partition(coloring_of_linear(L)[1]) for L in Ls}
    assert len(parts) == len(Ls)
    assert parts == {coloring_partition(c) for c in enumerate_colorings(G)}


@given(causal_nets(max_vertices=4, max_edges=4), st.data())
def test_similar_iff_same_partition(G, data):
    """Similarity holds exactly when a label bijection exists, checked by permutations."""
    n = len(G.vertices)
    if n == 0:
        return
    Ls = linear_colorings_upto_similarity(G)
    L1 = data.draw(st.sampled_from(Ls))
    values = sorted(set(L1.label.values()))
    perm = data.draw(st.permutations(values))
    sigma = dict(zip(values, perm))
    L2 = LinearColoring(G, {v: sigma[L1.label[v]] for v in G.vertices}) if _increasing(G, sigma, L1) else L1
    assert similar(L1, L2)
    for L3 in Ls:
        a, b = sorted(set(L1.label.values())), sorted(set(L3.label.values()))
        brute = len(a) == len(b) and any(
            all(dict(zip(a, p))[L1.label[v]] == L3.label[v] for v in G.vertices) for p in permutations(b)
        )
        assert similar(L1, L3) == brute


def _increasing(G, sigma, L):
    return all(sigma[L.label[G.ends[e][0]]] < sigma[L.label[G.ends[e][1]]] for e in G.edges)
