import itertools

import pytest

from clusterlab.laurent import Laurent, parse
from clusterlab.skein import (
    Multicurve,
    NoSuchCrossing,
    NotInSpan,
    SurfaceAlgebra,
    crossings,
    enumerate_basis,
    expand_in_basis,
    resolve_multicurve,
    smooth_crossing,
)
from clusterlab.surface import (
    AnnulusSurface,
    DiskSurface,
    NotAnArc,
    Triangulation,
    arcs_cross,
    bracelet,
    bridge,
    canonical_curve,
    disk_arc,
    fan_triangulation,
    is_internal_arc,
    loop,
    peripheral,
    standard_annulus_triangulation,
)

D4 = DiskSurface(4)
D6 = DiskSurface(6)
A11 = AnnulusSurface(1, 1)
A21 = AnnulusSurface(2, 1)


@pytest.fixture(scope="module")
def alg11():
    return SurfaceAlgebra(standard_annulus_triangulation(A11))


@pytest.fixture(scope="module")
def alg21():
    return SurfaceAlgebra(standard_annulus_triangulation(A21))


@pytest.fixture(scope="module")
def alg6():
    return SurfaceAlgebra(fan_triangulation(D6))


def bridges11(lo=-2, hi=2):
    return [bridge(1, 1, w) for w in range(lo, hi + 1)]


# ----------------------------------------------------------------------
# arc_variable

def test_arc_variable_initial_arcs(alg6):
    t0 = fan_triangulation(D6)
    for i, arc in enumerate(t0.arcs):
        assert alg6.arc_variable(arc) == Laurent.variable(3, i)


def test_arc_variable_square():
    alg = SurfaceAlgebra(Triangulation(D4, [disk_arc(1, 3)]))
    assert str(alg.arc_variable(disk_arc(2, 4))) == "2*x1^-1"


def test_arc_variable_matches_mutation(alg6):
    # flipping (1,3) in the fan yields (2,4); its variable equals
    # mutate_seed at vertex 1
    from clusterlab.seeds import initial_seed, mutate_seed

    t0 = fan_triangulation(D6)
    assert t0.flip(0).arcs[0] == disk_arc(2, 4)
    mutated = mutate_seed(initial_seed(t0.quiver()), 0)
    assert alg6.arc_variable(disk_arc(2, 4)) == mutated.cluster[0]
    # (2,6) crosses all three fan arcs; its variable is three flips out
    assert alg6.arc_variable(disk_arc(2, 6)).term_count() == 4


def test_arc_variable_rejects_closed_curves(alg11):
    with pytest.raises(NotAnArc):
        alg11.arc_variable(loop())
    with pytest.raises(NotAnArc):
        alg11.arc_variable(canonical_curve(A11, peripheral("outer", 1, 1, 1)))


def test_arc_variable_budget():
    from clusterlab.surface import SearchLimitExceeded

    alg = SurfaceAlgebra(standard_annulus_triangulation(A11), flip_budget=3)
    with pytest.raises(SearchLimitExceeded):
        alg.arc_variable(bridge(1, 1, 30))


# ----------------------------------------------------------------------
# smoothing

def test_square_smoothing_is_ptolemy():
    mc = Multicurve.of(D4, [disk_arc(1, 3), disk_arc(2, 4)])
    (crossing,) = crossings(mc)
    m1, m2 = smooth_crossing(mc, crossing)
    labels = {tuple(str(a) for a in m.arcs) for m in (m1, m2)}
    assert labels == {
        ("bnd(disk,1,2)", "bnd(disk,3,4)"),
        ("bnd(disk,1,4)", "bnd(disk,2,3)"),
    }


def test_hexagon_smoothing():
    mc = Multicurve.of(D6, [disk_arc(1, 3), disk_arc(2, 6)])
    m1, m2 = smooth_crossing(mc, crossings(mc)[0])
    arcs = {tuple(str(a) for a in m.arcs) for m in (m1, m2)}
    assert arcs == {
        ("bnd(disk,1,2)", "(3,6)"),
        ("bnd(disk,1,6)", "bnd(disk,2,3)"),
    }


def test_bracelet2_self_smoothing():
    mc = Multicurve.of(A11, [bracelet(2)])
    (crossing,) = crossings(mc)
    split, crossed = smooth_crossing(mc, crossing)
    assert split.loops == (1, 1) and split.contractibles == 0
    assert crossed.loops == () and crossed.contractibles == 1


def test_no_such_crossing():
    mc = Multicurve.of(D6, [disk_arc(1, 3), disk_arc(1, 4)])
    assert crossings(mc) == []
    with pytest.raises(NoSuchCrossing):
        smooth_crossing(mc, ("pair", 0, 1, 0))


def test_resolution_leaf_count_and_signs():
    mc = Multicurve.of(D4, [disk_arc(1, 3), disk_arc(2, 4)])
    leaves = resolve_multicurve(mc)
    assert len(leaves) == 2
    assert all(leaf.sign == 1 for leaf in leaves)
    assert resolve_multicurve(Multicurve.of(D4, [disk_arc(1, 3)])) == [
        Multicurve.of(D4, [disk_arc(1, 3)])
    ]


def test_resolution_preserves_arc_count():
    mc = Multicurve.of(A11, [bridge(1, 1, -1), bridge(1, 1, 1), bridge(1, 1, 2)])
    for leaf in resolve_multicurve(mc):
        assert len(leaf.arcs) == 3
        assert not crossings(leaf)


def test_loop_free_leaf_annulus():
    arcs = bridges11()
    checked = 0
    for combo in itertools.combinations_with_replacement(arcs, 3):
        mc = Multicurve.of(A11, combo)
        n = len(crossings(mc))
        if n == 0 or n > 4:
            continue
        leaves = resolve_multicurve(mc)
        good = [
            leaf
            for leaf in leaves
            if not leaf.loops
            and leaf.contractibles == 0
            and all(a.kind != "null" for a in leaf.arcs)
            and len(leaf.arcs) == 3
        ]
        assert good, combo
        checked += 1
    assert checked >= 10


def test_loop_free_leaf_disk(alg6):
    chords = [
        disk_arc(a, b)
        for a in range(1, 7)
        for b in range(a + 2, 7)
        if is_internal_arc(D6, disk_arc(a, b))
    ]
    for combo in itertools.combinations(chords, 3):
        mc = Multicurve.of(D6, combo)
        n = len(crossings(mc))
        if n == 0 or n > 4:
            continue
        leaves = resolve_multicurve(mc)
        assert all(not leaf.loops for leaf in leaves)
        assert any(
            len(leaf.arcs) == 3 and all(a.kind != "null" for a in leaf.arcs)
            for leaf in leaves
        )


# ----------------------------------------------------------------------
# skein identities

def test_square_skein_value():
    alg = SurfaceAlgebra(Triangulation(D4, [disk_arc(1, 3)]))
    u = alg.arc_variable(disk_arc(1, 3))
    v = alg.arc_variable(disk_arc(2, 4))
    assert u * v == Laurent.const(1, 2)
    ok, pattern = alg.skein_identity_check(disk_arc(1, 3), disk_arc(2, 4))
    assert ok and pattern == (1, 1)


def test_hexagon_skein_value(alg6):
    lhs = alg6.arc_variable(disk_arc(1, 3)) * alg6.arc_variable(disk_arc(2, 6))
    assert lhs == alg6.arc_variable(disk_arc(3, 6)) + 1
    ok, pattern = alg6.skein_identity_check(disk_arc(1, 3), disk_arc(2, 6))
    assert ok and pattern == (1, 1)


def test_skein_exhaustive_disks():
    for m in (4, 5, 6, 7):
        surf = DiskSurface(m)
        alg = SurfaceAlgebra(fan_triangulation(surf) if m > 4 else Triangulation(surf, [disk_arc(1, 3)]))
        chords = [
            disk_arc(a, b)
            for a in range(1, m + 1)
            for b in range(a + 2, m + 1)
            if is_internal_arc(surf, disk_arc(a, b))
        ]
        for c1, c2 in itertools.combinations(chords, 2):
            if arcs_cross(surf, c1, c2):
                ok, pattern = alg.skein_identity_check(c1, c2)
                assert ok and pattern == (1, 1), (m, c1, c2)


def annulus_universe(surface, wmax):
    out = []
    for i in range(1, surface.p + 1):
        for j in range(1, surface.q + 1):
            for w in range(-wmax, wmax + 1):
                out.append(bridge(i, j, w))
    for side, count in (("outer", surface.p), ("inner", surface.q)):
        for i in range(1, count + 1):
            c = canonical_curve(surface, peripheral(side, i, i, 1))
            if is_internal_arc(surface, c):
                out.append(c)
    return out


def test_skein_exhaustive_annuli(alg11, alg21):
    for surface, alg in ((A11, alg11), (A21, alg21)):
        universe = annulus_universe(surface, 2)
        for c1, c2 in itertools.combinations(universe, 2):
            if arcs_cross(surface, c1, c2):
                ok, pattern = alg.skein_identity_check(c1, c2)
                assert ok and pattern == (1, 1), (surface, c1, c2)


def test_skein_wider_annuli():
    # q >= 2 (inner lassos) and p = 3 (wide dips), winding bound 1
    for p, q in ((2, 2), (1, 2), (3, 1)):
        surface = AnnulusSurface(p, q)
        alg = SurfaceAlgebra(standard_annulus_triangulation(surface))
        universe = [
            bridge(i, j, w)
            for i in range(1, p + 1)
            for j in range(1, q + 1)
            for w in (-1, 0, 1)
        ]
        for side, count in (("outer", p), ("inner", q)):
            for i in range(1, count + 1):
                c = canonical_curve(surface, peripheral(side, i, i, 1))
                if is_internal_arc(surface, c):
                    universe.append(c)
        for c1, c2 in itertools.combinations(universe, 2):
            mc = Multicurve.of(surface, [c1, c2])
            product = alg.arc_variable(c1) * alg.arc_variable(c2)
            assert alg.multicurve_value(mc) == product, (p, q, c1, c2)
            if arcs_cross(surface, c1, c2):
                ok, pattern = alg.skein_identity_check(c1, c2)
                assert ok and pattern == (1, 1), (p, q, c1, c2)
        assert alg.loop_polynomial().is_positive()


def test_products_via_full_resolution(alg11):
    # stronger than the one-step identity: the complete resolution value
    # equals the product computed by the mutation engine
    arcs = bridges11(-3, 3)
    for c1, c2 in itertools.combinations(arcs, 2):
        mc = Multicurve.of(A11, [c1, c2])
        assert alg11.multicurve_value(mc) == alg11.arc_variable(c1) * alg11.arc_variable(c2)


def test_three_arc_deep_resolutions(alg11, alg21):
    # beyond the acceptance bounds: triples with up to 10 crossings all
    # resolve to the exact product of their cluster variables
    arcs11 = bridges11(-3, 3)
    for combo in itertools.combinations_with_replacement(arcs11, 3):
        mc = Multicurve.of(A11, combo)
        product = Laurent.one(2)
        for c in combo:
            product = product * alg11.arc_variable(c)
        assert alg11.multicurve_value(mc) == product, combo

    universe = [bridge(i, 1, w) for i in (1, 2) for w in range(-2, 3)]
    universe += [
        canonical_curve(A21, peripheral("outer", i, i, 1)) for i in (1, 2)
    ]
    for combo in itertools.combinations(universe, 3):
        mc = Multicurve.of(A21, combo)
        product = Laurent.one(3)
        for c in combo:
            product = product * alg21.arc_variable(c)
        assert alg21.multicurve_value(mc) == product, combo


def test_compatibility_matches_co_triangulability_annulus(alg21):
    # independent cross-check of the annulus crossing formulas: two arcs
    # are non-crossing iff a triangulation found by flip search contains
    # both (the flip engine knows nothing about crossing numbers)
    surface = A21
    seen: set = {standard_annulus_triangulation(surface).arc_set()}
    frontier = [standard_annulus_triangulation(surface)]
    for _ in range(8):
        nxt = []
        for t in frontier:
            for pos in range(3):
                t2 = t.flip(pos)
                if t2.arc_set() not in seen:
                    seen.add(t2.arc_set())
                    nxt.append(t2)
        frontier = nxt
    universe = annulus_universe(surface, 2)
    for c1, c2 in itertools.combinations(universe, 2):
        together = any(c1 in s and c2 in s for s in seen)
        if arcs_cross(surface, c1, c2) == 0:
            assert together, (c1, c2)
        else:
            assert not together, (c1, c2)


def test_loop_bearing_multicurve_values(alg11, alg21):
    # multicurves containing closed components resolve to the product of
    # their component values (exercises arc x loop smoothings)
    for surface, alg in ((A11, alg11), (A21, alg21)):
        arcs = (
            [bridge(1, 1, w) for w in (-1, 0, 1, 2)]
            if surface is A11
            else [bridge(1, 1, 0), bridge(2, 1, 1)]
        )
        for c in arcs:
            for m in (1, 2):
                mc = Multicurve.of(surface, [c, bracelet(m)])
                expected = alg.arc_variable(c) * alg.bracelet_polynomial(m)
                assert alg.multicurve_value(mc) == expected, (surface, c, m)
        mc = Multicurve.of(surface, [arcs[0], arcs[1], bracelet(1)])
        expected = (
            alg.arc_variable(arcs[0])
            * alg.arc_variable(arcs[1])
            * alg.bracelet_polynomial(1)
        )
        assert alg.multicurve_value(mc) == expected


# ----------------------------------------------------------------------
# loop and bracelet polynomials

def test_loop_polynomial_value(alg11):
    assert alg11.loop_polynomial() == parse("(x1^2 + x2^2 + 1)/(x1*x2)", 2)


def test_loop_polynomial_pair_independence(alg11):
    for base in (bridge(1, 1, 0), bridge(1, 1, 1), bridge(1, 1, -2)):
        assert alg11._extract_loop(base) == alg11.loop_polynomial()


def test_loop_polynomial_positivity(alg11, alg21):
    assert alg11.loop_polynomial().is_positive()
    assert alg21.loop_polynomial().is_positive()


def test_bracelet_recurrence(alg11):
    z = alg11.loop_polynomial()
    assert alg11.bracelet_polynomial(0) == Laurent.const(2, 2)
    assert alg11.bracelet_polynomial(1) == z
    assert alg11.bracelet_polynomial(2) == z * z - 2
    for m in range(1, 5):
        assert alg11.bracelet_polynomial(m).is_positive()
        assert z * alg11.bracelet_polynomial(m) == alg11.bracelet_polynomial(
            m + 1
        ) + alg11.bracelet_polynomial(m - 1)


def test_loop_skein_against_bridges(alg11):
    # smoothing the loop against a bridge shifts the winding by one
    z = alg11.loop_polynomial()
    for w in range(-2, 3):
        lhs = z * alg11.arc_variable(bridge(1, 1, w))
        rhs = alg11.arc_variable(bridge(1, 1, w - 1)) + alg11.arc_variable(
            bridge(1, 1, w + 1)
        )
        assert lhs == rhs


# ----------------------------------------------------------------------
# basis

def test_basis_disk4():
    alg = SurfaceAlgebra(Triangulation(D4, [disk_arc(1, 3)]))
    basis = enumerate_basis(alg, 1)
    labels = sorted(b.label() for b in basis)
    assert labels == ["(1,3)", "(2,4)", "1"]
    assert all(b.flavor == "B" for b in basis)


def test_basis_disk5_degree1():
    alg = SurfaceAlgebra(fan_triangulation(DiskSurface(5)))
    basis = enumerate_basis(alg, 1)
    assert len(basis) == 6  # 1 + five arcs


def test_basis_annulus_bprime(alg11):
    basis = enumerate_basis(alg11, 2, 2)
    bprime = [b for b in basis if b.flavor == "B'"]
    assert sorted(b.label() for b in bprime) == ["bracelet(2)", "loop"]
    assert all(not b.arcs for b in bprime)  # every bridge crosses the loop


def test_basis_positivity_at_truncation(alg11):
    basis = enumerate_basis(alg11, 2, 2)
    small = [b for b in basis if b.flavor == "B'" or len(b.arcs) <= 1]
    for b1, b2 in itertools.combinations_with_replacement(small, 2):
        product = b1.value * b2.value
        try:
            coeffs = expand_in_basis(product, enumerate_basis(alg11, 4, 4))
        except NotInSpan:
            continue
        assert all(v >= 0 and v.denominator == 1 for v in coeffs.values()), (
            b1.label(),
            b2.label(),
        )


def test_expand_in_basis_unit_vector(alg11):
    basis = enumerate_basis(alg11, 2, 2)
    for b in basis[:5]:
        coeffs = expand_in_basis(b.value, basis)
        assert coeffs == {b: 1}


def test_expand_hexagon_product(alg6):
    basis = enumerate_basis(alg6, 2)
    p = alg6.arc_variable(disk_arc(1, 3)) * alg6.arc_variable(disk_arc(2, 6))
    coeffs = {b.label(): v for b, v in expand_in_basis(p, basis).items()}
    assert coeffs == {"1": 1, "(3,6)": 1}


def test_expand_annulus_crossing_pair(alg11):
    basis = enumerate_basis(alg11, 2, 2)
    p = alg11.arc_variable(bridge(1, 1, 0)) * alg11.arc_variable(bridge(1, 1, 2))
    coeffs = expand_in_basis(p, basis)
    assert all(v >= 0 and v.denominator == 1 for v in coeffs.values())
    b_part = sum(v for b, v in coeffs.items() if b.flavor == "B")
    assert b_part > 0
    # the loop appears with coefficient 1 for the once-crossing pair that
    # wraps: (w=-1) x (w=1) ... checked via labels on a loop-bearing pair
    p2 = alg11.arc_variable(bridge(1, 1, -1)) * alg11.arc_variable(bridge(1, 1, 2))
    coeffs2 = {b.label(): v for b, v in expand_in_basis(p2, basis).items()}
    assert coeffs2.get("loop") == 1


def test_expand_not_in_span(alg11):
    basis = enumerate_basis(alg11, 1, 0)
    p = alg11.bracelet_polynomial(2)
    with pytest.raises(NotInSpan):
        expand_in_basis(p, basis)


def test_expand_ambiguous_on_dependent_family(alg11):
    from clusterlab.skein import AmbiguousExpansion

    basis = enumerate_basis(alg11, 1, 0)
    doubled = list(basis) + [basis[0]]
    with pytest.raises(AmbiguousExpansion):
        expand_in_basis(basis[0].value, doubled)
