import pytest

from racgkit.cfs import CfsFailure, is_cfs, is_strongly_cfs
from racgkit.constructions import (
    ConstructionError, behrstock_ladder, cfs_embed, complete_graph, cycle_graph, distance3_set,
    isolated_square_fixture, ladder_size,
)
from racgkit.convexity import is_finite_index_special, is_stable_special, is_strongly_quasiconvex_special
from racgkit.graph import SimplicialGraph, enumerate_squares


def test_ladder_shape():
    g = behrstock_ladder(4)
    assert len(g) == 8 and len(g.edges) == 12
    assert ladder_size(g) == 4
    assert not g.adjacent("a1", "b1") and g.adjacent("a1", "b2")
    # 12 squares on consecutive level pairs and 4 around each of the 11 interior levels
    assert len(enumerate_squares(behrstock_ladder(13))) == 56


def test_ladder_rejects_bad_size():
    with pytest.raises(ConstructionError):
        behrstock_ladder(0)
    with pytest.raises(ConstructionError):
        ladder_size(cycle_graph(6))


def test_distance3_set():
    assert distance3_set(behrstock_ladder(7), 3) == ["a1", "a4", "a7"]
    with pytest.raises(ConstructionError):
        distance3_set(behrstock_ladder(6), 3)


@pytest.mark.parametrize("gamma, stable", [(cycle_graph(5), True), (cycle_graph(4), False),
                                           (complete_graph(1), True), (complete_graph(3), True)])
def test_cfs_embed_post_conditions(gamma, stable):
    omega, emb = cfs_embed(gamma)
    assert emb.is_induced()
    assert is_cfs(omega)
    assert is_strongly_quasiconvex_special(omega, emb.image)
    assert not is_finite_index_special(omega, emb.image)
    assert is_stable_special(omega, emb.image) == stable


def test_cfs_embed_sizes():
    assert len(cfs_embed(cycle_graph(5))[0]) == 26
    assert len(cfs_embed(cycle_graph(4))[0]) == 20


def test_cfs_embed_strongness():
    assert is_strongly_cfs(cfs_embed(cycle_graph(5))[0])
    assert not is_strongly_cfs(cfs_embed(cycle_graph(4))[0])


def test_cfs_embed_rejects_empty():
    with pytest.raises(ConstructionError):
        cfs_embed(SimplicialGraph([], []))


def test_isolated_square_default_fixture():
    g = isolated_square_fixture(13, "b1", "a3", "a6", "b9")
    v = is_strongly_cfs(g)
    assert is_cfs(g) and not v
    assert v.reason is CfsFailure.SQUARE_GRAPH_DISCONNECTED
    assert len(enumerate_squares(g)) == 64


def test_isolated_square_strict_mode():
    with pytest.raises(ConstructionError, match="ladder square destroyed"):
        isolated_square_fixture(13, "b1", "a3", "a6", "b9", strict=True)
    g = isolated_square_fixture(13, "b1", "a5", "a9", "b13", strict=True)
    assert len(enumerate_squares(g)) == 57
    assert is_cfs(g) and not is_strongly_cfs(g)


@pytest.mark.parametrize("quad, msg", [
    (("a1", "a2", "a3", "a4"), "already adjacent"),
    (("a1", "a1", "a3", "a5"), "distinct"),
    (("a1", "zz", "a3", "a5"), "not a vertex"),
])
def test_isolated_square_errors(quad, msg):
    with pytest.raises(ConstructionError, match=msg):
        isolated_square_fixture(13, *quad)


def test_isolated_square_shared_diagonal():
    with pytest.raises(ConstructionError, match="shared"):
        isolated_square_fixture(3, "a1", "a3", "b1", "b3")
