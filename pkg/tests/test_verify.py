import itertools

import pytest

from clusterlab.quiver import quiver_from_json
from clusterlab.seeds import ExploreLimits, TruncatedGraph, explore
from clusterlab.skein import SurfaceAlgebra
from clusterlab.surface import (
    AnnulusSurface,
    DiskSurface,
    Triangulation,
    disk_arc,
    fan_triangulation,
    standard_annulus_triangulation,
)
from clusterlab.verify import (
    LimitExceeded,
    NotABijection,
    SurfaceContext,
    check_cluster_automorphism,
    compatibility_relation,
    incompatible_pairs,
    verify_clusters_maximal,
    verify_compatibility_crosscheck,
    verify_disjoint_union_property,
    verify_exchange_graph_reconstruction,
    verify_incompatible_products,
    verify_incompatible_products_annulus,
    verify_triangulation,
    verify_unistructural_finite,
)


def quiver(n, arrows):
    return quiver_from_json({"n": n, "arrows": arrows})


A1 = quiver(1, [])
A2 = quiver(2, [[1, 2, 1]])
A3 = quiver(3, [[1, 2, 1], [2, 3, 1]])
A1A1 = quiver(2, [])
A1A2 = quiver(3, [[2, 3, 1]])

X1 = "x1"
X2 = "x2"
U = "x1^-1 + x1^-1*x2"  # (1+x2)/x1
V = "x1^-1*x2^-1 + x2^-1 + x1^-1"  # (1+x1+x2)/(x1 x2)
W = "x2^-1 + x1*x2^-1"  # (1+x1)/x2


@pytest.fixture(scope="module")
def g_a2():
    return explore(A2)


@pytest.fixture(scope="module")
def g_a3():
    return explore(A3)


def test_compatibility_pentagon(g_a2):
    relation = compatibility_relation(g_a2)
    assert frozenset((X1, X2)) in relation
    assert frozenset((X1, W)) in relation
    assert frozenset((X1, V)) not in relation
    assert frozenset((X1, U)) not in relation
    # symmetric and reflexive-by-convention
    assert all(frozenset((a,)) in relation for a in g_a2.variables)


def test_compatibility_rank_one():
    g = explore(A1)
    assert frozenset(("x1", "2*x1^-1")) not in compatibility_relation(g)


def test_compatibility_requires_complete():
    g = explore(quiver(2, [[1, 2, 2]]), ExploreLimits(max_seeds=4))
    with pytest.raises(TruncatedGraph):
        compatibility_relation(g)


def test_clusters_maximal(g_a2, g_a3):
    assert verify_clusters_maximal(g_a2).ok()
    assert verify_clusters_maximal(g_a3).ok()
    assert verify_clusters_maximal(explore(A1A1)).ok()


def test_incompatible_products(g_a2):
    report = verify_incompatible_products(g_a2)
    assert report.ok()
    # the crossing pair of A2
    assert (min(X1, V), max(X1, V)) in incompatible_pairs(g_a2)


def test_incompatible_products_with_surface_context():
    t0 = fan_triangulation(DiskSurface(6))
    g = explore(t0.quiver())
    ctx = SurfaceContext(SurfaceAlgebra(t0), g)
    report = verify_incompatible_products(g, ctx)
    assert report.ok()
    assert verify_compatibility_crosscheck(ctx).ok()


def test_incompatible_products_annulus():
    algebra = SurfaceAlgebra(standard_annulus_triangulation(AnnulusSurface(1, 1)))
    report = verify_incompatible_products_annulus(algebra, winding_bound=2)
    assert report.ok()


def test_reconstruction(g_a2, g_a3):
    assert verify_exchange_graph_reconstruction(g_a2).ok()
    assert verify_exchange_graph_reconstruction(g_a3).ok()
    g = explore(A1A2)
    assert verify_exchange_graph_reconstruction(g).ok()
    # pentagonal prism: 10 nodes, 15 edges, 3-regular
    assert len(g.nodes) == 10 and len(g.edges) == 15


def test_disjoint_union_counts():
    r = verify_disjoint_union_property(A1, A1)
    assert r.ok()
    g = explore(A1A1)
    assert len(g.variables) == 4 and len(g.clusters) == 4

    assert verify_disjoint_union_property(A1, A2).ok()
    g = explore(A1A2)
    assert len(g.variables) == 7 and len(g.clusters) == 10

    assert verify_disjoint_union_property(A2, A2).ok()
    g = explore(quiver(4, [[1, 2, 1], [3, 4, 1]]))
    assert len(g.variables) == 10 and len(g.clusters) == 25


def test_disjoint_union_limit():
    kron = quiver(2, [[1, 2, 2]])
    with pytest.raises(LimitExceeded):
        verify_disjoint_union_property(A1, kron, ExploreLimits(max_seeds=5))


def test_unistructural_disks():
    for m in (4, 5, 6, 7):
        surface = DiskSurface(m)
        t0 = (
            Triangulation(surface, [disk_arc(1, 3)])
            if m == 4
            else fan_triangulation(surface)
        )
        report = verify_triangulation(t0)
        assert report.ok(), report.to_text()


def test_unistructural_products():
    assert verify_unistructural_finite(explore(A1A2)).ok()
    assert verify_unistructural_finite(
        explore(quiver(4, [[1, 2, 1], [3, 4, 1]]))
    ).ok()


def test_automorphism_identity(g_a2, g_a3):
    for g in (g_a2, g_a3):
        identity = {v: v for v in g.variables}
        ok, witness = check_cluster_automorphism(g, identity)
        assert ok and witness is None


def test_automorphism_pentagon_rotation(g_a2):
    rotation = {X1: X2, X2: U, U: V, V: W, W: X1}
    ok, witness = check_cluster_automorphism(g_a2, rotation)
    assert ok, witness


def test_automorphism_counterexample(g_a2):
    swap = {X1: V, V: X1, X2: X2, U: U, W: W}
    ok, witness = check_cluster_automorphism(g_a2, swap)
    assert not ok
    assert witness is not None and "cluster" in witness


def test_automorphism_group_order_ten(g_a2):
    names = sorted(g_a2.variables)
    count = 0
    for perm in itertools.permutations(names):
        sigma = dict(zip(names, perm))
        ok, _ = check_cluster_automorphism(g_a2, sigma)
        if ok:
            count += 1
    assert count == 10


def test_automorphism_not_a_bijection(g_a2):
    with pytest.raises(NotABijection):
        check_cluster_automorphism(g_a2, {X1: X1})


def test_report_serialization(g_a2):
    report = verify_unistructural_finite(g_a2)
    data = report.to_json()
    assert data["ok"] is True
    assert all("seconds" in c for c in data["checks"])
    text = report.to_text()
    assert "result: OK" in text
