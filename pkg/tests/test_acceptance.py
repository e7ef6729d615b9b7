"""Acceptance suite: one criterion per test, exact arithmetic throughout
(zero tolerance), with the runtime budget asserted.  Run with -s to see
the one-line pass/fail summary per criterion."""

import itertools
import random
import time
from contextlib import contextmanager
from math import comb

from sampling import exchange_size_estimate, random_quiver, sample_walk

from clusterlab.laurent import Laurent
from clusterlab.quiver import quiver_from_json
from clusterlab.seeds import explore, mutate_seed
from clusterlab.skein import (
    Multicurve,
    SurfaceAlgebra,
    crossings,
    enumerate_basis,
    expand_in_basis,
    resolve_multicurve,
)
from clusterlab.surface import (
    AnnulusSurface,
    DiskSurface,
    Triangulation,
    arcs_cross,
    bridge,
    canonical_curve,
    disk_arc,
    enumerate_triangulations,
    fan_triangulation,
    is_internal_arc,
    peripheral,
    standard_annulus_triangulation,
)
from clusterlab.verify import (
    check_cluster_automorphism,
    verify_exchange_graph_reconstruction,
    verify_triangulation,
    verify_unistructural_finite,
)


@contextmanager
def criterion(name: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"\n[FAIL] {name}")
        raise
    elapsed = time.perf_counter() - start
    print(f"\n[PASS] {name} ({elapsed:.1f}s, budget {budget:.0f}s)")
    assert elapsed <= budget, f"{name} exceeded its runtime budget"


def quiver(n, arrows):
    return quiver_from_json({"n": n, "arrows": arrows})


def disk_algebra(m):
    surface = DiskSurface(m)
    t0 = Triangulation(surface, [disk_arc(1, 3)]) if m == 4 else fan_triangulation(surface)
    return SurfaceAlgebra(t0)


def internal_arcs(surface):
    if isinstance(surface, DiskSurface):
        return [
            disk_arc(a, b)
            for a in range(1, surface.m + 1)
            for b in range(a + 2, surface.m + 1)
            if is_internal_arc(surface, disk_arc(a, b))
        ]
    arcs = [
        bridge(i, j, w)
        for i in range(1, surface.p + 1)
        for j in range(1, surface.q + 1)
        for w in range(-2, 3)
    ]
    for side, count in (("outer", surface.p), ("inner", surface.q)):
        for i in range(1, count + 1):
            c = canonical_curve(surface, peripheral(side, i, i, 1))
            if is_internal_arc(surface, c):
                arcs.append(c)
    return arcs


def test_mutation_involution():
    with criterion("mutation involution (1000 quivers, 500 seeds)", 30):
        rng = random.Random(20240801)
        for _ in range(1000):
            q = random_quiver(rng, rng.randint(1, 8), max_mult=3)
            for i in range(q.n):
                assert q.mutate(i).mutate(i) == q
        checked = 0
        while checked < 500:
            s = sample_walk(rng, length=4)
            for i in range(s.n):
                if exchange_size_estimate(s, i) > 4000:
                    continue
                assert mutate_seed(mutate_seed(s, i), i) == s
                checked += 1


def test_laurent_phenomenon_and_positivity():
    with criterion("Laurent phenomenon + positivity (500 walks x 15)", 60):
        rng = random.Random(20240802)

        def check(seed):
            # mutate_seed raises NonExactDivision on any inexact division
            assert all(v.is_positive() for v in seed.cluster)

        for _ in range(500):
            sample_walk(rng, length=15, on_step=check)


def _connected(graph):
    if not graph.nodes:
        return True
    seen = {graph.nodes[0]}
    stack = [graph.nodes[0]]
    while stack:
        for neighbor in graph.neighbors(stack.pop()):
            if neighbor not in seen:
                seen.add(neighbor)
                stack.append(neighbor)
    return len(seen) == len(graph.nodes)


def test_finite_type_counts():
    with criterion("finite-type counts (A2 pentagon, A3, hexagon bijections)", 10):
        g2 = explore(quiver(2, [[1, 2, 1]]))
        assert not g2.truncated
        assert len(g2.variables) == 5
        assert len(g2.clusters) == 5
        assert len(g2.nodes) == 5 and len(g2.edges) == 5
        # connected and 2-regular on 5 nodes: the pentagon
        assert all(g2.degree(k) == 2 for k in g2.nodes)
        assert _connected(g2)

        a3 = quiver(3, [[1, 2, 1], [2, 3, 1]])
        g3 = explore(a3)
        assert len(g3.variables) == 9
        assert len(g3.nodes) == 14
        assert all(g3.degree(k) == 3 for k in g3.nodes)
        assert _connected(g3)

        # hexagon counted independently by flip search
        surface = DiskSurface(6)
        tris = enumerate_triangulations(surface)
        assert len(tris) == 14
        arcs = internal_arcs(surface)
        assert len(arcs) == 9

        # surface/algebra bijections: arcs <-> variables, triangulations
        # <-> seeds, flips <-> mutations, exhaustively
        algebra = SurfaceAlgebra(fan_triangulation(surface))
        g_fan = explore(fan_triangulation(surface).quiver())
        arc_vars = {str(algebra.arc_variable(c)) for c in arcs}
        assert arc_vars == set(g_fan.variables)
        tri_clusters = {
            frozenset(str(algebra.arc_variable(c)) for c in t.arcs) for t in tris
        }
        assert tri_clusters == g_fan.clusters
        for t in tris:
            q = t.quiver()
            for pos in range(3):
                assert t.flip(pos).quiver() == q.mutate(pos)


def test_skein_identities():
    with criterion("skein identities (disks m=4..7, annuli (1,1),(2,1))", 60):
        square = SurfaceAlgebra(Triangulation(DiskSurface(4), [disk_arc(1, 3)]))
        prod = square.arc_variable(disk_arc(1, 3)) * square.arc_variable(disk_arc(2, 4))
        assert prod == Laurent.const(1, 2)

        surfaces = [DiskSurface(m) for m in (4, 5, 6, 7)]
        surfaces += [AnnulusSurface(1, 1), AnnulusSurface(2, 1)]
        for surface in surfaces:
            if isinstance(surface, DiskSurface):
                algebra = disk_algebra(surface.m)
            else:
                algebra = SurfaceAlgebra(standard_annulus_triangulation(surface))
            arcs = internal_arcs(surface)
            pairs = 0
            for c1, c2 in itertools.combinations(arcs, 2):
                if arcs_cross(surface, c1, c2) == 0:
                    continue
                ok, pattern = algebra.skein_identity_check(c1, c2)
                assert ok and pattern == (1, 1), (surface, c1, c2)
                pairs += 1
            if isinstance(surface, DiskSurface):
                # crossing chord pairs of an m-gon are counted by C(m,4)
                assert pairs == comb(surface.m, 4)
            else:
                assert pairs > 0


def test_bracelets():
    with criterion("bracelets (pair independence, positivity, recurrence)", 10):
        algebra = SurfaceAlgebra(standard_annulus_triangulation(AnnulusSurface(1, 1)))
        z = algebra.loop_polynomial()
        for base in (bridge(1, 1, 0), bridge(1, 1, 1), bridge(1, 1, -1)):
            assert algebra._extract_loop(base) == z
        assert algebra.bracelet_polynomial(0) == Laurent.const(2, 2)
        for m in range(1, 5):
            b = algebra.bracelet_polynomial(m)
            assert b.is_positive()
            assert z * b == algebra.bracelet_polynomial(m + 1) + algebra.bracelet_polynomial(m - 1)


def test_loop_free_resolution_leaves():
    with criterion("loop-free resolution leaves (<=3-arc multicurves, <=4 crossings)", 30):
        cases = 0
        for surface in (DiskSurface(6), AnnulusSurface(1, 1), AnnulusSurface(2, 1)):
            arcs = internal_arcs(surface)
            for r in (2, 3):
                for combo in itertools.combinations_with_replacement(arcs, r):
                    mc = Multicurve.of(surface, combo)
                    n = len(crossings(mc))
                    if n == 0 or n > 4:
                        continue
                    leaves = resolve_multicurve(mc)
                    good = [
                        leaf
                        for leaf in leaves
                        if not leaf.loops
                        and leaf.contractibles == 0
                        and len(leaf.arcs) == r
                        and all(a.kind != "null" for a in leaf.arcs)
                    ]
                    assert good, (surface, combo)
                    cases += 1
        assert cases > 100


def test_crossing_products_expand_positively():
    with criterion("basis expansion of crossing products (natural, positive arc part)", 60):
        for m in (4, 5, 6):
            algebra = disk_algebra(m)
            basis = enumerate_basis(algebra, 2)
            arcs = internal_arcs(algebra.surface)
            for c1, c2 in itertools.combinations(arcs, 2):
                if arcs_cross(algebra.surface, c1, c2) == 0:
                    continue
                p = algebra.arc_variable(c1) * algebra.arc_variable(c2)
                coeffs = expand_in_basis(p, basis)
                assert all(v.denominator == 1 and v >= 0 for v in coeffs.values())
                assert sum(v for b, v in coeffs.items() if b.flavor == "B") > 0

        algebra = SurfaceAlgebra(standard_annulus_triangulation(AnnulusSurface(1, 1)))
        basis = enumerate_basis(algebra, 2, 2)
        arcs = [bridge(1, 1, w) for w in range(-2, 3)]
        for c1, c2 in itertools.combinations(arcs, 2):
            if arcs_cross(algebra.surface, c1, c2) == 0:
                continue
            p = algebra.arc_variable(c1) * algebra.arc_variable(c2)
            coeffs = expand_in_basis(p, basis)
            assert all(v.denominator == 1 and v >= 0 for v in coeffs.values())
            assert sum(v for b, v in coeffs.items() if b.flavor == "B") > 0


def test_unistructurality_desk_scale():
    with criterion("unistructurality (disks m=4..7, A1+A2, A2+A2)", 120):
        reports = []
        graphs = []
        for m in (4, 5, 6, 7):
            surface = DiskSurface(m)
            t0 = (
                Triangulation(surface, [disk_arc(1, 3)])
                if m == 4
                else fan_triangulation(surface)
            )
            report = verify_triangulation(t0)
            reports.append((f"disk m={m}", report))
            graphs.append(explore(t0.quiver()))

        for name, q in (
            ("A1+A2", quiver(3, [[2, 3, 1]])),
            ("A2+A2", quiver(4, [[1, 2, 1], [3, 4, 1]])),
        ):
            g = explore(q)
            reports.append((name, verify_unistructural_finite(g)))
            graphs.append(g)

        for name, report in reports:
            assert report.ok(), f"{name}:\n{report.to_text()}"
        for g in graphs:
            assert verify_exchange_graph_reconstruction(g).ok()


def test_cluster_automorphisms():
    with criterion("cluster automorphisms (identity, D5 order 10, witness)", 10):
        graphs = [
            explore(quiver(2, [[1, 2, 1]])),
            explore(quiver(3, [[1, 2, 1], [2, 3, 1]])),
            explore(quiver(3, [[2, 3, 1]])),
        ]
        for g in graphs:
            ok, witness = check_cluster_automorphism(g, {v: v for v in g.variables})
            assert ok and witness is None

        g2 = graphs[0]
        names = sorted(g2.variables)
        count = 0
        for perm in itertools.permutations(names):
            ok, _ = check_cluster_automorphism(g2, dict(zip(names, perm)))
            if ok:
                count += 1
        assert count == 10

        x1, x2 = "x1", "x2"
        v = "x1^-1*x2^-1 + x2^-1 + x1^-1"
        others = [n for n in names if n not in (x1, v)]
        swap = {x1: v, v: x1, **{n: n for n in others}}
        ok, witness = check_cluster_automorphism(g2, swap)
        assert not ok
        assert witness is not None and sorted(witness["cluster"]) in (
            [x1, x2],
            sorted([x1, x2]),
            witness["cluster"],
        )
        assert "cluster" in witness and "image" in witness
