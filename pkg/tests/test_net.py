import pytest
from hypothesis import given, strategies as st

from causalnet.construct import simplify
from causalnet.errors import CycleFound, DanglingEndpoint, DuplicateId, NonComposable
from causalnet.fixtures import X1, net, path_net
from causalnet.net import (
    compose_paths,
    count_paths,
    enumerate_paths,
    homotopy_signature,
    is_causal_Tree,
    is_causal_tree,
    is_complete,
    is_connected,
    reachable,
    structure_flags,
    validate_net,
)

from conftest import causal_nets


def dfs_count(G, u, v):
    """Independent oracle: plain recursion over out-edges."""
    if u == v:
        return 1
    return sum(dfs_count(G, G.ends[e][1], v) for e in G.edges if G.ends[e][0] == u)


def test_validate_rejects_cycle():
    with pytest.raises(CycleFound):
        validate_net(["a", "b"], [("e", "a", "b"), ("f", "b", "a")])


def test_validate_rejects_loop():
    with pytest.raises(CycleFound):
        validate_net(["a"], [("e", "a", "a")])


def test_validate_rejects_dangling_and_duplicates():
    with pytest.raises(DanglingEndpoint):
        validate_net(["a"], [("e", "a", "b")])
    with pytest.raises(DuplicateId):
        validate_net(["a", "a"])
    with pytest.raises(DuplicateId):
        validate_net(["a", "b"], [("e", "a", "b"), ("e", "a", "b")])


def test_x1_hom_sets():
    G = X1()
    assert {p.edges for p in enumerate_paths(G, "v1", "v3")} == {("e1", "e3"), ("e2", "e3"), ("e4",)}
    assert len(enumerate_paths(G, "v1", "v2")) == 2
    assert enumerate_paths(G, "v3", "v1") == []


def test_reachability_is_reflexive():
    G = X1()
    assert all(reachable(G, v, v) for v in G.vertices)
    assert not reachable(G, "v4", "v1")


def test_compose_paths_checks_endpoints():
    G = X1()
    with pytest.raises(NonComposable):
        compose_paths(G.path(["e3"]), G.path(["e1"]))
    assert compose_paths(G.path(["e1"]), G.path(["e3"])).edges == ("e1", "e3")


def test_structure_flags_small_cases():
    assert is_connected(validate_net([]))
    assert not is_complete(validate_net([]))
    assert is_causal_tree(path_net(3))
    assert not is_causal_tree(net("a b", "e a b", "f a b"))
    assert is_causal_Tree(net("a b", "e a b", "f a b"))
    assert not is_causal_Tree(net("a b c", "e a b", "f b c", "g a c"))


@given(causal_nets(max_vertices=6, max_edges=8))
def test_hom_sizes_match_dfs_oracle(G):
    """Hom-set sizes agree with an independent DFS count."""
    for u in G.vertices:
        for v in G.vertices:
            assert count_paths(G, u, v) == len(enumerate_paths(G, u, v)) == dfs_count(G, u, v)


@given(causal_nets(max_vertices=5, max_edges=6))
def test_identity_hom_is_singleton(G):
    """Acyclicity: every endo hom-set holds only the identity."""
    for v in G.vertices:
        paths = enumerate_paths(G, v, v)
        assert len(paths) == 1 and paths[0].edges == ()


@given(causal_nets(max_vertices=5, max_edges=6), st.data())
def test_composition_stays_in_hom(G, data):
    """Composable paths compose into the right hom-set."""
    vs = sorted(G.vertices)
    if not vs:
        return
    u, v, w = (data.draw(st.sampled_from(vs)) for _ in range(3))
    for p in enumerate_paths(G, u, v):
        for q in enumerate_paths(G, v, w):
            assert compose_paths(p, q) in enumerate_paths(G, u, w)


@given(causal_nets(max_vertices=5, max_edges=6))
def test_flag_implications(G):
    """point => causal-tree => causal-Tree; complete => simple and connected."""
    f = structure_flags(G)
    if f.is_point:
        assert f.is_causal_tree
    if f.is_causal_tree:
        assert f.is_causal_Tree
    if f.is_complete:
        assert f.is_simple and f.is_connected


@given(causal_nets(max_vertices=5, max_edges=6))
def test_signature_invariant_under_simplification(G):
    """Simplification keeps the homotopy signature."""
    assert homotopy_signature(G) == homotopy_signature(simplify(G).cod)


@given(causal_nets(max_vertices=5, max_edges=6))
def test_equality_ignores_declaration_order(G):
    """Re-declaring vertices and edges in reverse order gives an equal net."""
    H = validate_net(reversed(G.vertices), [(e, *G.ends[e]) for e in reversed(G.edges)])
    assert H == G and hash(H) == hash(G)
