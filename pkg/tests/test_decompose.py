import pytest
from hypothesis import given

from causalnet.classify import classify, fundamental_type
from causalnet.decompose import (
    PRECONDITION,
    THEOREMS,
    factor_cg,
    factor_fundamental,
    factor_inclusion_family,
    factor_sce,
    factor_vcg,
)
from causalnet.errors import WrongClass
from causalnet.fixtures import Q1, S1, X1, immersion_example, lambda1, net, vcg_example
from causalnet.morphism import find_isomorphism, identity

from conftest import morphisms


def stage_labels(F):
    return [sorted(lab) for lab in F.stage_labels]


def test_fixture_stage_lists():
    assert stage_labels(factor_cg(lambda1())) == [["vertex_cg"], ["edge_cg"]]
    assert stage_labels(factor_vcg(vcg_example())) == [["contraction"], ["merging"]]
    assert stage_labels(factor_sce(S1())) == [["subdivision_morphism"], ["coarse_graining"], ["embedding"]]
    assert stage_labels(factor_inclusion_family(immersion_example())) == [
        ["subdivision_morphism"], ["merging"], ["embedding"],
    ]
    assert stage_labels(factor_fundamental(Q1())) == [["merging"]]


def test_identity_has_no_stages():
    F = factor_fundamental(identity(X1()))
    assert len(F) == 0 and F.residual is None and F.recomposes()


def test_isomorphism_kept_as_residual():
    G = net("a b", "e a b")
    iso = find_isomorphism(G, net("x y", "f x y"))
    F = factor_fundamental(iso)
    assert len(F) == 0 and F.residual == iso and F.recomposes()


def test_precondition_enforced():
    with pytest.raises(WrongClass):
        factor_cg(S1())


@pytest.mark.parametrize("name", sorted(THEOREMS))
def test_fixtures_recompose(name):
    for m in (Q1(), S1(), lambda1(), vcg_example(), immersion_example()):
        pre = PRECONDITION[name]
        if pre and pre not in {str(x) for x in classify(m)}:
            continue
        if name == "cg-inc" and m == S1():
            continue  # S1 is not faithful, so no inclusion stage exists
        F = THEOREMS[name](m)
        assert F.recomposes() and F.labels_hold()


@given(morphisms(max_vertices=3, max_edges=3))
def test_fundamental_factorization(m):
    """Every morphism is a composite of recognized fundamental morphisms."""
    F = factor_fundamental(m)
    assert F.recomposes()
    assert all(fundamental_type(s) is k for s, k in zip(F.stages, F.kinds))


@given(morphisms(max_vertices=3, max_edges=3))
def test_sce_factorization(m):
    """Subdivision, coarse-graining, embedding always recomposes with the promised labels."""
    F = factor_sce(m)
    assert F.recomposes() and F.labels_hold()
