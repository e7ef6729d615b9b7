"""Skein smoothing, multicurve resolution, bracelets, and the basis.

A multicurve is a multiset of open curves (arcs, possibly with
self-intersections while a resolution is in flight), closed essential
loops (bracelets, stored by winding number), and a count of contractible
loops.  Smoothing a crossing is computed on curve classes directly: an
open curve on the annulus is determined up to isotopy by its endpoint
lifts in the universal cover, so the two resolutions of a crossing are
obtained by redistributing endpoint lifts (with the deck translate of
the crossing folded in).  No drawings are ever constructed.

Resolution recursion: each smoothing strictly decreases the total
minimal crossing number, every leaf is crossing-free, and the leaf count
is 2^(number of smoothings).  With trivial coefficients the skein
identities hold with plus signs throughout once contractible loops are
evaluated at the configured scalar (default -2); a degenerate arc that
bounds an empty monogon (it can appear when a doubly-wound peripheral
curve is smoothed) evaluates to 0.

Evaluation against an initial triangulation maps arcs to cluster
variables by flip search, boundary segments to 1, and bracelets to the
Chebyshev-style polynomials b_0 = 2, b_1 = loop polynomial,
b_m = b_1 b_{m-1} - b_{m-2}.  The loop polynomial itself is extracted by
resolving a twice-crossing bridge pair and solving for the unique leaf
containing the essential loop.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import Laurent, divide_exact
from .linalg import solve_unique
from .seeds import Seed, initial_seed, mutate_seed
from .surface import (
    AnnulusSurface,
    Curve,
    DiskSurface,
    NotAnArc,
    SearchLimitExceeded,
    SurfaceError,
    SurfaceMismatch,
    Triangulation,
    _dips_linked,
    _ints_strictly_between,
    arcs_cross,
    bracelet,
    canonical_curve,
    curve_from_lifts,
    disk_arc,
    disk_boundary,
    is_internal_arc,
    peripheral_interval,
)


class SkeinError(Exception):
    pass


class NoSuchCrossing(SkeinError):
    pass


class NotInSpan(SkeinError):
    pass


class AmbiguousExpansion(SkeinError):
    pass


NULL_ARC = Curve("null", ())

DEFAULT_LOOP_VALUE = -2


@dataclass(frozen=True)
class Multicurve:
    """Multiset of curves with smoothing bookkeeping: accumulated sign
    (always +1 under the plus-sign convention, kept for the record) and
    the number of contractible loops produced so far."""

    surface: object
    arcs: tuple[Curve, ...] = ()
    loops: tuple[int, ...] = ()
    contractibles: int = 0
    sign: int = 1

    @staticmethod
    def of(surface, curves: Iterable[Curve], contractibles: int = 0, sign: int = 1):
        arcs: list[Curve] = []
        loops: list[int] = []
        for c in curves:
            c = canonical_curve(surface, c)
            if c.kind == "bracelet":
                loops.append(c.data[0])
            else:
                arcs.append(c)
        return Multicurve(
            surface, tuple(sorted(arcs)), tuple(sorted(loops)), contractibles, sign
        )

    def curves(self) -> list[Curve]:
        return list(self.arcs) + [bracelet(m) for m in self.loops]

    def __str__(self) -> str:
        parts = [str(c) for c in self.arcs] + [str(bracelet(m)) for m in self.loops]
        parts += ["O"] * self.contractibles
        return "{" + ", ".join(parts) + "}"


def _endpoint_lifts(c: Curve):
    """Canonical endpoint lifts (side, index, shift) of an open curve."""
    if c.kind == "bridge":
        i, j, w = c.data
        return ("outer", i, 0), ("inner", j, w)
    if c.kind == "peripheral":
        side, i, j, l = c.data
        return (side, i, 0), (side, j, l)
    raise SkeinError(f"{c} has no endpoint lifts")


def _shift(end, k):
    return (end[0], end[1], end[2] + k)


def _classify(surface, end1, end2) -> Curve:
    if isinstance(surface, DiskSurface):
        raise SkeinError("disk endpoints are classified inline")
    try:
        return curve_from_lifts(surface, end1, end2)
    except SurfaceError:
        return NULL_ARC


def _pair_crossing_translates(surface, a: Curve, b: Curve) -> list[int]:
    """Deck translates k such that a crosses b + k, for open curves on
    the annulus."""
    if a.kind == "bridge" and b.kind == "bridge":
        ia, ja, wa = a.data
        ib, jb, wb = b.data
        alpha = surface.outer_pos(ia) - surface.outer_pos(ib)
        beta = (surface.inner_pos(ja) + wa) - (surface.inner_pos(jb) + wb)
        return _ints_strictly_between(alpha, beta)
    if a.kind == "peripheral" and b.kind == "peripheral":
        if a.data[0] != b.data[0]:
            return []
        xa, xb = peripheral_interval(surface, a)
        yc, yd = peripheral_interval(surface, b)
        from math import ceil, floor

        out = []
        for k in range(floor(xa - yd) - 1, ceil(xb - yc) + 2):
            if _dips_linked(xa, xb, yc + k, yd + k):
                out.append(k)
        return out
    if a.kind == "bridge" and b.kind == "peripheral":
        i, j, w = a.data
        side = b.data[0]
        lo, hi = peripheral_interval(surface, b)
        x = surface.outer_pos(i) if side == "outer" else surface.inner_pos(j) + w
        return _ints_strictly_between(x - hi, x - lo)
    if a.kind == "peripheral" and b.kind == "bridge":
        return [-k for k in _pair_crossing_translates(surface, b, a)]
    return []


def crossings(mc: Multicurve) -> list[tuple]:
    """Deterministic list of crossings of a multicurve.

    Entries:
      ('pair', ia, ib, k)  arcs[ia] crosses arcs[ib] shifted by deck
                           translate k (k = 0 on the disk)
      ('self', ia, k)      self-crossing of arcs[ia] at translate k >= 1
      ('arcloop', ia, il, j)  arcs[ia] crosses loop il (j-th strand)
      ('loopself', il, k)  self-crossing of the il-th loop
    """
    surface = mc.surface
    out: list[tuple] = []
    disk = isinstance(surface, DiskSurface)
    for ia, ib in itertools.combinations(range(len(mc.arcs)), 2):
        a, b = mc.arcs[ia], mc.arcs[ib]
        if a.kind in ("boundary", "null") or b.kind in ("boundary", "null"):
            continue
        if disk:
            if arcs_cross(surface, a, b):
                out.append(("pair", ia, ib, 0))
        else:
            for k in _pair_crossing_translates(surface, a, b):
                out.append(("pair", ia, ib, k))
    if not disk:
        for ia, a in enumerate(mc.arcs):
            if a.kind == "peripheral":
                lo, hi = peripheral_interval(surface, a)
                for k in _ints_strictly_between(Fraction(0), hi - lo):
                    if k >= 1:
                        out.append(("self", ia, k))
        for ia, a in enumerate(mc.arcs):
            if a.kind == "bridge":
                for il, m in enumerate(mc.loops):
                    for j in range(m):
                        out.append(("arcloop", ia, il, j))
        for il, m in enumerate(mc.loops):
            for k in range(1, m):
                out.append(("loopself", il, k))
    return out


def smooth_crossing(mc: Multicurve, crossing: tuple) -> tuple[Multicurve, Multicurve]:
    """The two local resolutions of one crossing.  The first result uses
    the start-with-start endpoint pairing (for a pair crossing), or the
    splitting resolution (for a self-crossing)."""
    if crossing not in crossings(mc):
        raise NoSuchCrossing(f"{crossing} is not a crossing of {mc}")
    surface = mc.surface
    kind = crossing[0]

    def rebuild(keep_arc_idx, keep_loop_idx, new_curves, extra_contractibles=0):
        curves = [mc.arcs[i] for i in keep_arc_idx] + [
            bracelet(m) for i, m in enumerate(mc.loops) if i in keep_loop_idx
        ]
        curves += new_curves
        return Multicurve.of(
            surface, curves, mc.contractibles + extra_contractibles, mc.sign
        )

    if kind == "pair":
        _, ia, ib, k = crossing
        a, b = mc.arcs[ia], mc.arcs[ib]
        keep = [i for i in range(len(mc.arcs)) if i not in (ia, ib)]
        all_loops = set(range(len(mc.loops)))
        if isinstance(surface, DiskSurface):
            (a1, a2), (b1, b2) = a.data, b.data
            m1 = [_disk_classify(surface, a1, b1), _disk_classify(surface, a2, b2)]
            m2 = [_disk_classify(surface, a1, b2), _disk_classify(surface, a2, b1)]
        else:
            a_s, a_e = _endpoint_lifts(a)
            b_s, b_e = _endpoint_lifts(b)
            m1 = [
                _classify(surface, a_s, _shift(b_s, k)),
                _classify(surface, a_e, _shift(b_e, k)),
            ]
            m2 = [
                _classify(surface, a_s, _shift(b_e, k)),
                _classify(surface, a_e, _shift(b_s, k)),
            ]
        return (
            rebuild(keep, all_loops, m1),
            rebuild(keep, all_loops, m2),
        )

    if kind == "self":
        _, ia, k = crossing
        a = mc.arcs[ia]
        keep = [i for i in range(len(mc.arcs)) if i != ia]
        all_loops = set(range(len(mc.loops)))
        a_s, a_e = _endpoint_lifts(a)
        split_arc = _classify(surface, a_s, _shift(a_e, -k))
        split = rebuild(keep, all_loops, [split_arc, bracelet(k)])
        crossed_arc = _classify(surface, a_s, _shift(a_e, -2 * k))
        crossed = rebuild(keep, all_loops, [crossed_arc])
        # the crossed resolution reverses the smaller wound segment; when
        # the curve keeps its net direction (width > 2k) it contributes
        # with a minus sign (pinned by z*L_w = L_{w+1} + L_{w-1})
        lo, hi = peripheral_interval(surface, a)
        if hi - lo - 2 * k > 0:
            crossed = Multicurve(
                surface, crossed.arcs, crossed.loops, crossed.contractibles,
                -crossed.sign,
            )
        return (split, crossed)

    if kind == "arcloop":
        _, ia, il, _j = crossing
        a = mc.arcs[ia]
        m = mc.loops[il]
        keep = [i for i in range(len(mc.arcs)) if i != ia]
        keep_loops = set(range(len(mc.loops))) - {il}
        a_s, a_e = _endpoint_lifts(a)
        plus = rebuild(keep, keep_loops, [_classify(surface, a_s, _shift(a_e, m))])
        minus = rebuild(keep, keep_loops, [_classify(surface, a_s, _shift(a_e, -m))])
        return (plus, minus)

    if kind == "loopself":
        _, il, k = crossing
        m = mc.loops[il]
        keep_loops = set(range(len(mc.loops))) - {il}
        keep = list(range(len(mc.arcs)))
        split = rebuild(keep, keep_loops, [bracelet(k), bracelet(m - k)])
        rest = abs(m - 2 * k)
        if rest == 0:
            crossed = rebuild(keep, keep_loops, [], extra_contractibles=1)
        else:
            crossed = rebuild(keep, keep_loops, [bracelet(rest)])
        return (split, crossed)

    raise NoSuchCrossing(f"unknown crossing {crossing}")


def _disk_classify(surface: DiskSurface, u: int, v: int) -> Curve:
    u, v = min(u, v), max(u, v)
    if u == v:
        return NULL_ARC
    gap = (v - u) % surface.m
    if gap in (1, surface.m - 1):
        return disk_boundary(u, v)
    return disk_arc(u, v)


def resolve_multicurve(mc: Multicurve) -> list[Multicurve]:
    """Full binary resolution: leaves are crossing-free multicurves.
    Leaf count is 2^(number of smoothings performed)."""
    found = crossings(mc)
    if not found:
        return [mc]
    m1, m2 = smooth_crossing(mc, found[0])
    total = len(found)
    for child in (m1, m2):
        child_total = len(crossings(child))
        if child_total >= total:
            raise SkeinError(
                f"smoothing did not reduce crossings: {mc} -> {child}"
            )
    return resolve_multicurve(m1) + resolve_multicurve(m2)


# ----------------------------------------------------------------------
# evaluation against an initial triangulation

class SurfaceAlgebra:
    """Cluster-algebra evaluation context over an initial triangulation.

    Maps arcs to cluster variables by breadth-first flip search mirrored
    by seed mutation (the bijection sending arcs of the initial
    triangulation to the initial variables), evaluates multicurves
    through skein resolution, and builds bracelet polynomials."""

    def __init__(
        self,
        t0: Triangulation,
        loop_value: int = DEFAULT_LOOP_VALUE,
        flip_budget: int = 64,
        max_triangulations: int = 200000,
    ):
        self.t0 = t0
        self.surface = t0.surface
        self.rank = len(t0.arcs)
        self.loop_value = loop_value
        self.flip_budget = flip_budget
        self.max_triangulations = max_triangulations
        seed = initial_seed(t0.quiver())
        self._arc_values: dict[Curve, Laurent] = {}
        self._frontier: list[tuple[Triangulation, Seed]] = [(t0, seed)]
        self._depth = 0
        self._seen: set[frozenset] = {t0.arc_set()}
        self._absorb(t0, seed)
        self._loop_poly: Laurent | None = None
        self._bracelets: dict[int, Laurent] = {}

    def _absorb(self, t: Triangulation, seed: Seed) -> None:
        for arc, var in zip(t.arcs, seed.cluster):
            self._arc_values.setdefault(arc, var)

    def arc_variable(self, c: Curve) -> Laurent:
        """The cluster variable of a non-self-intersecting internal arc;
        boundary segments evaluate to 1, a null arc to 0."""
        if c.kind == "boundary":
            return Laurent.one(self.rank)
        if c.kind == "null":
            return Laurent.zero(self.rank)
        if c.kind == "bracelet":
            raise NotAnArc("closed curves are not arcs")
        c = canonical_curve(self.surface, c)
        if not is_internal_arc(self.surface, c):
            raise NotAnArc(f"{c} is not an internal arc")
        while c not in self._arc_values:
            if not self._advance_search():
                raise SearchLimitExceeded(
                    f"no triangulation containing {c} within {self.flip_budget} flips"
                )
        return self._arc_values[c]

    def _advance_search(self) -> bool:
        if not self._frontier or self._depth >= self.flip_budget:
            return False
        if len(self._seen) >= self.max_triangulations:
            raise SearchLimitExceeded("triangulation search limit hit")
        next_frontier: list[tuple[Triangulation, Seed]] = []
        for t, seed in self._frontier:
            for pos in range(self.rank):
                t2 = t.flip(pos)
                if t2.arc_set() in self._seen:
                    continue
                self._seen.add(t2.arc_set())
                seed2 = mutate_seed(seed, pos)
                self._absorb(t2, seed2)
                next_frontier.append((t2, seed2))
        self._frontier = next_frontier
        self._depth += 1
        return bool(next_frontier)

    def curve_value(self, c: Curve) -> Laurent:
        if c.kind == "bracelet":
            return self.bracelet_polynomial(c.data[0])
        return self.arc_variable(c)

    def multicurve_value(self, mc: Multicurve) -> Laurent:
        """Sum over resolution leaves of the product of component values
        times loop_value^(contractible count)."""
        total = Laurent.zero(self.rank)
        for leaf in resolve_multicurve(mc):
            term = Laurent.const(self.rank, leaf.sign)
            for arc in leaf.arcs:
                term = term * self.arc_variable(arc)
            for m in leaf.loops:
                term = term * self.bracelet_polynomial(m)
            term = term * (self.loop_value ** leaf.contractibles)
            total = total + term
        return total

    # ------------------------------------------------------------------

    def loop_polynomial(self) -> Laurent:
        """Polynomial of the essential loop, extracted from the
        resolution of a twice-crossing bridge pair: the loop-free leaves
        are evaluated directly and the unique loop-bearing contribution
        is solved for by exact division."""
        if not isinstance(self.surface, AnnulusSurface):
            raise SurfaceMismatch("essential loops need an annulus")
        if self._loop_poly is None:
            base = next(c for c in self.t0.arcs if c.kind == "bridge")
            self._loop_poly = self._extract_loop(base)
        return self._loop_poly

    def _extract_loop(self, base: Curve) -> Laurent:
        i, j, w = base.data
        partner = Curve("bridge", (i, j, w + 3))
        product = self.arc_variable(base) * self.arc_variable(partner)
        known = Laurent.zero(self.rank)
        coeff = Laurent.zero(self.rank)
        for leaf in resolve_multicurve(Multicurve.of(self.surface, [base, partner])):
            term = Laurent.const(self.rank, leaf.sign * self.loop_value ** leaf.contractibles)
            for arc in leaf.arcs:
                term = term * self.arc_variable(arc)
            if not leaf.loops:
                known = known + term
            elif leaf.loops == (1,):
                coeff = coeff + term
            else:
                raise SkeinError(f"unexpected loop content in leaf {leaf}")
        if coeff.is_zero():
            raise SkeinError("no loop-bearing leaf; cannot extract the loop polynomial")
        return divide_exact(product - known, coeff)

    def bracelet_polynomial(self, m: int) -> Laurent:
        """Chebyshev-style recurrence b_0 = 2, b_1 = loop polynomial,
        b_m = b_1 b_{m-1} - b_{m-2} (the smoothing of one
        self-intersection of the m-fold bracelet)."""
        if m < 0:
            raise SkeinError("bracelet index must be >= 0")
        if m not in self._bracelets:
            if m == 0:
                self._bracelets[0] = Laurent.const(self.rank, 2)
            elif m == 1:
                self._bracelets[1] = self.loop_polynomial()
            else:
                self._bracelets[m] = (
                    self.bracelet_polynomial(1) * self.bracelet_polynomial(m - 1)
                    - self.bracelet_polynomial(m - 2)
                )
        return self._bracelets[m]

    # ------------------------------------------------------------------

    def skein_identity_check(self, c1: Curve, c2: Curve) -> tuple[bool, tuple | None]:
        """Verify x_{c1} x_{c2} = +- x_{M1} +- x_{M2} for the smoothing at
        the first crossing; returns the sign pattern that holds (expected
        (+1, +1)) or (False, None) if none does."""
        mc = Multicurve.of(self.surface, [c1, c2])
        found = crossings(mc)
        if not found:
            raise NoSuchCrossing(f"{c1} and {c2} do not cross")
        m1, m2 = smooth_crossing(mc, found[0])
        lhs = self.curve_value(c1) * self.curve_value(c2)
        v1 = self.multicurve_value(m1)
        v2 = self.multicurve_value(m2)
        for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            if lhs == v1 * s1 + v2 * s2:
                return True, (s1, s2)
        return False, None


# ----------------------------------------------------------------------
# bracelet basis

@dataclass(frozen=True)
class BasisElement:
    flavor: str  # "B" or "B'"
    arcs: tuple[Curve, ...]
    bracelet_index: int  # 0 for flavor B
    value: Laurent

    def label(self) -> str:
        parts = [str(c) for c in self.arcs]
        if self.bracelet_index:
            parts.append(str(bracelet(self.bracelet_index)))
        return "*".join(parts) if parts else "1"


def _arc_universe(surface, winding_bound: int) -> list[Curve]:
    if isinstance(surface, DiskSurface):
        m = surface.m
        return [
            disk_arc(a, b)
            for a in range(1, m + 1)
            for b in range(a + 2, m + 1)
            if is_internal_arc(surface, disk_arc(a, b))
        ]
    arcs = []
    for i in range(1, surface.p + 1):
        for j in range(1, surface.q + 1):
            for w in range(-winding_bound, winding_bound + 1):
                arcs.append(Curve("bridge", (i, j, w)))
    for side, count in (("outer", surface.p), ("inner", surface.q)):
        for i in range(1, count + 1):
            for j in range(1, count + 1):
                for l in range(-1, 2):
                    c = canonical_curve(surface, Curve("peripheral", (side, i, j, l)))
                    if is_internal_arc(surface, c):
                        arcs.append(c)
    return sorted(set(arcs))


def enumerate_basis(
    algebra: SurfaceAlgebra, degree_bound: int, winding_bound: int = 0
) -> list[BasisElement]:
    """All C-compatible arc multisets of total multiplicity <= d (flavor
    B, including the empty product 1) and all C'-compatible collections
    with one bracelet Brac_m, m <= winding bound (flavor B')."""
    surface = algebra.surface
    universe = _arc_universe(surface, winding_bound)
    compatible = {
        (i, j): arcs_cross(surface, universe[i], universe[j]) == 0
        for i in range(len(universe))
        for j in range(i, len(universe))
    }

    multisets: list[tuple[int, ...]] = []

    def extend(prefix: list[int], start: int) -> None:
        multisets.append(tuple(prefix))
        if len(prefix) >= degree_bound:
            return
        for idx in range(start, len(universe)):
            if all(compatible[(min(p, idx), max(p, idx))] for p in set(prefix)):
                extend(prefix + [idx], idx)

    extend([], 0)

    out: list[BasisElement] = []
    seen_values: dict[str, str] = {}

    def emit(flavor, arcs, brac, value):
        key = str(value)
        label = "*".join(map(str, arcs)) + f"|{brac}"
        if key in seen_values:
            raise SkeinError(
                f"basis elements {seen_values[key]} and {label} coincide"
            )
        seen_values[key] = label
        out.append(BasisElement(flavor, tuple(arcs), brac, value))

    for ms in multisets:
        arcs = [universe[i] for i in ms]
        value = Laurent.one(algebra.rank)
        for c in arcs:
            value = value * algebra.arc_variable(c)
        emit("B", arcs, 0, value)

    if isinstance(surface, AnnulusSurface):
        loop_compatible = [
            idx for idx, c in enumerate(universe) if arcs_cross(surface, bracelet(1), c) == 0
        ]
        loop_ok = set(loop_compatible)
        for ms in multisets:
            if len(ms) >= degree_bound:
                continue
            if not all(i in loop_ok for i in ms):
                continue
            arcs = [universe[i] for i in ms]
            base = Laurent.one(algebra.rank)
            for c in arcs:
                base = base * algebra.arc_variable(c)
            for m in range(1, winding_bound + 1):
                emit("B'", arcs, m, base * algebra.bracelet_polynomial(m))

    return out


def expand_in_basis(
    p: Laurent, basis: Sequence[BasisElement]
) -> dict[BasisElement, Fraction]:
    """Unique expansion of p in the given basis elements, solved exactly
    over the rationals on monomial coefficients."""
    if not basis:
        raise NotInSpan("empty basis")
    support = sorted({e for b in basis for e, _ in b.value.items()} | {e for e, _ in p.items()})
    matrix = [
        [Fraction(b.value.coefficient(e)) for b in basis] for e in support
    ]
    rhs = [Fraction(p.coefficient(e)) for e in support]
    try:
        solution = solve_unique(matrix, rhs)
    except ValueError as exc:
        raise AmbiguousExpansion(str(exc)) from exc
    if solution is None:
        raise NotInSpan("polynomial is outside the span of the basis slice")
    return {b: x for b, x in zip(basis, solution) if x != 0}
