"""Unpunctured-surface model: disks, annuli, arcs, triangulations, flips.

Disk (S, M): m >= 4 marked points on the boundary circle, labeled 1..m
counterclockwise.  Internal arcs are chords between non-adjacent points;
two chords cross iff their endpoints strictly interleave.

Annulus (p, q): p marked points on the outer boundary, q on the inner,
both labeled counterclockwise.  Curves are classified by lifts to the
universal cover, a strip with the outer boundary on top: the outer point
i lifts to x = (i-1)/p + k, the inner point j to x = (j-1)/q + eps + k
(eps is a small rational offset so outer and inner lifts never align).

  - a bridge arc (i, j, w) runs from outer i to inner j; its lift joins
    x = (i-1)/p on top to x = (j-1)/q + eps + w on the bottom;
  - a peripheral arc (i, j, l) joins two points of one boundary; its
    lift covers the interval [pos(i), pos(j) + l]; it is an internal arc
    iff the interval is at most one period wide (else the curve
    self-intersects) and contains a marked lift strictly inside (else it
    is isotopic into the boundary);
  - the essential loop is unique up to isotopy; the bracelet Brac_m
    winds m times and has m - 1 self-intersections.

Minimal crossing numbers are exact integer-counting formulas on lift
positions (number of deck translates separating the endpoint data); the
same lift bookkeeping drives the skein smoothing in ``skein``.

Triangulations of the annulus are handled by cutting along a bridge arc,
which unrolls the triangulation to a polygon triangulation; triangles,
quiver extraction and flips then reduce to the disk case.  The quiver
convention: marked points counterclockwise, triangle sides read in
clockwise order, one arrow i -> j per triangle in which side j
immediately follows side i.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .quiver import Quiver


class SurfaceError(Exception):
    pass


class SurfaceMismatch(SurfaceError):
    pass


class NotAnArc(SurfaceError):
    pass


class ArcNotInTriangulation(SurfaceError):
    pass


class InvalidTriangulation(SurfaceError):
    pass


class SearchLimitExceeded(SurfaceError):
    pass


# ----------------------------------------------------------------------
# surfaces

@dataclass(frozen=True)
class DiskSurface:
    m: int

    def __post_init__(self):
        if self.m < 4:
            raise SurfaceError("disk needs at least 4 marked points")

    @property
    def rank(self) -> int:
        return self.m - 3


@dataclass(frozen=True)
class AnnulusSurface:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise SurfaceError("annulus needs marked points on both boundaries")

    @property
    def rank(self) -> int:
        return self.p + self.q

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 4 * self.p * self.q)

    def outer_pos(self, i: int) -> Fraction:
        if not 1 <= i <= self.p:
            raise SurfaceError(f"outer index {i} out of range 1..{self.p}")
        return Fraction(i - 1, self.p)

    def inner_pos(self, j: int) -> Fraction:
        if not 1 <= j <= self.q:
            raise SurfaceError(f"inner index {j} out of range 1..{self.q}")
        return Fraction(j - 1, self.q) + self.eps

    def pos(self, side: str, index: int) -> Fraction:
        return self.outer_pos(index) if side == "outer" else self.inner_pos(index)

    def boundary_count(self, side: str) -> int:
        return self.p if side == "outer" else self.q

    def lifts_strictly_inside(self, side: str, a: Fraction, b: Fraction) -> int:
        """Marked lifts of one boundary strictly between positions a < b."""
        n = self.boundary_count(side)
        count = 0
        for i in range(1, n + 1):
            base = self.pos(side, i)
            k = _ceil_strict(a - base)
            while base + k < b:
                count += 1
                k += 1
        return count


@dataclass(frozen=True)
class GenericSurface:
    """Combinatorial triangulated surface given by triangle side lists
    (each listed in clockwise order) and the set of boundary labels.
    Supports quiver extraction and flips only; no arc geometry.

    Triangles are stored rotated to start at their smallest label and
    sorted, so equality ignores listing order."""

    triangles: tuple[tuple[str, str, str], ...]
    boundary: tuple[str, ...]

    def __post_init__(self):
        canon = []
        for tri in self.triangles:
            tri = tuple(tri)
            k = tri.index(min(tri))
            canon.append(tri[k:] + tri[:k])
        object.__setattr__(self, "triangles", tuple(sorted(canon)))
        object.__setattr__(self, "boundary", tuple(sorted(set(self.boundary))))

    @property
    def rank(self) -> int:
        labels = {s for tri in self.triangles for s in tri}
        return len(labels - set(self.boundary))


# ----------------------------------------------------------------------
# curves

@dataclass(frozen=True, order=True)
class Curve:
    """An isotopy class of a curve on a disk or annulus.

    kinds:
      disk_arc(a, b)                   chord of the disk, a < b
      boundary(side, a, b)             boundary segment, value 1
      bridge(i, j, w)                  outer i to inner j, winding w
      peripheral(side, i, j, l)        same-boundary arc, lift interval
                                       [pos(i), pos(j) + l], normalized
                                       rightward
      bracelet(m)                      m-fold essential loop (m=1: loop)
    """

    kind: str
    data: tuple

    def __str__(self) -> str:
        if self.kind == "disk_arc":
            return f"({self.data[0]},{self.data[1]})"
        if self.kind == "boundary":
            return f"bnd({','.join(str(x) for x in self.data)})"
        if self.kind == "bridge":
            i, j, w = self.data
            return f"bridge({i},{j};w={w})"
        if self.kind == "peripheral":
            side, i, j, l = self.data
            return f"peri({side},{i},{j};w={l})"
        if self.kind == "bracelet":
            m = self.data[0]
            return "loop" if m == 1 else f"bracelet({m})"
        return f"{self.kind}{self.data}"

    __repr__ = __str__


def disk_arc(a: int, b: int) -> Curve:
    a, b = min(a, b), max(a, b)
    return Curve("disk_arc", (a, b))


def disk_boundary(a: int, b: int) -> Curve:
    return Curve("boundary", ("disk", min(a, b), max(a, b)))


def bridge(i: int, j: int, w: int = 0) -> Curve:
    return Curve("bridge", (i, j, w))


def peripheral(side: str, i: int, j: int, l: int) -> Curve:
    if side not in ("outer", "inner"):
        raise SurfaceError(f"bad boundary side {side!r}")
    return Curve("peripheral", (side, i, j, l))


def annulus_boundary(side: str, j: int, l: int = 1) -> Curve:
    return Curve("boundary", (side, j, l))


def loop() -> Curve:
    return Curve("bracelet", (1,))


def bracelet(m: int) -> Curve:
    if m < 1:
        raise SurfaceError("bracelet index must be >= 1")
    return Curve("bracelet", (m,))


def _ceil_strict(x) -> int:
    """Smallest integer strictly greater than x."""
    from math import floor

    return floor(x) + 1


def _ints_strictly_between(a, b) -> list[int]:
    lo, hi = min(a, b), max(a, b)
    out = []
    k = _ceil_strict(lo)
    while k < hi:
        out.append(k)
        k += 1
    return out


def _dips_linked(a, b, c, d) -> bool:
    """Two same-boundary lift intervals force a crossing iff their
    endpoints strictly interleave; intervals sharing an endpoint (a
    common root marked point) nest freely and never cross."""
    return (a < c < b and d > b) or (a < d < b and c < a)


# lift endpoint: (side, index, shift) with position pos(side, index) + shift


def _normalize_peripheral(surface: AnnulusSurface, side, i, j, l) -> Curve:
    a = surface.pos(side, i)
    b = surface.pos(side, j) + l
    if b < a:
        i, j, l = j, i, -l
    return peripheral(side, i, j, l)


def canonical_curve(surface, c: Curve) -> Curve:
    """Normalize the stored representation (peripheral arcs are oriented
    rightward along their lift interval)."""
    if c.kind == "peripheral" and isinstance(surface, AnnulusSurface):
        return _normalize_peripheral(surface, *c.data)
    return c


def curve_from_lifts(surface: AnnulusSurface, end1, end2) -> Curve:
    """Classify the open curve with the given endpoint lifts.

    Endpoints are (side, index, shift) triples.  Boundary-parallel
    results come back as boundary markers (value 1); a degenerate curve
    (same endpoint lift, no interior) is rejected."""
    (s1, i1, k1), (s2, i2, k2) = end1, end2
    if s1 == "inner" and s2 == "outer":
        (s1, i1, k1), (s2, i2, k2) = end2, end1
    if s1 == "outer" and s2 == "inner":
        return bridge(i1, i2, k2 - k1)
    # same boundary
    side = s1
    a = surface.pos(side, i1) + k1
    b = surface.pos(side, i2) + k2
    if a > b:
        (i1, k1, a), (i2, k2, b) = (i2, k2, b), (i1, k1, a)
    if a == b:
        raise SurfaceError("degenerate curve (empty monogon) in smoothing")
    c = peripheral(side, i1, i2, k2 - k1)
    if is_boundary_parallel(surface, c):
        return annulus_boundary(side, i1, k2 - k1)
    return c


def peripheral_interval(surface: AnnulusSurface, c: Curve) -> tuple[Fraction, Fraction]:
    side, i, j, l = c.data
    a = surface.pos(side, i)
    b = surface.pos(side, j) + l
    return (a, b) if a <= b else (b, a)


def is_boundary_parallel(surface: AnnulusSurface, c: Curve) -> bool:
    """A simple same-boundary curve is isotopic into the boundary iff no
    marked lift lies strictly inside its interval."""
    side = c.data[0]
    a, b = peripheral_interval(surface, c)
    return surface.lifts_strictly_inside(side, a, b) == 0


def self_crossings(surface, c: Curve) -> int:
    if c.kind in ("disk_arc", "boundary", "bridge"):
        return 0
    if c.kind == "bracelet":
        return c.data[0] - 1
    if c.kind == "peripheral":
        a, b = peripheral_interval(surface, c)
        return len(_ints_strictly_between(Fraction(0), b - a))
    raise SurfaceError(f"unknown curve kind {c.kind}")


def is_internal_arc(surface, c: Curve) -> bool:
    """True for non-self-intersecting internal arcs (the curves in
    bijection with cluster variables)."""
    if isinstance(surface, DiskSurface):
        if c.kind != "disk_arc":
            return False
        a, b = c.data
        if not (1 <= a <= surface.m and 1 <= b <= surface.m):
            raise SurfaceMismatch(f"arc {c} outside disk with m={surface.m}")
        gap = (b - a) % surface.m
        return gap not in (0, 1, surface.m - 1)
    if isinstance(surface, AnnulusSurface):
        if c.kind == "bridge":
            i, j, _ = c.data
            surface.outer_pos(i), surface.inner_pos(j)
            return True
        if c.kind == "peripheral":
            if self_crossings(surface, c) > 0:
                return False
            return not is_boundary_parallel(surface, c)
        return False
    raise SurfaceMismatch(f"no arc model on {surface}")


def arcs_cross(surface, c1: Curve, c2: Curve) -> int:
    """Minimal crossing number of two curve classes (interior crossings
    of minimal-position representatives; shared endpoints do not count)."""
    if isinstance(surface, DiskSurface):
        return _disk_cross(surface, c1, c2)
    if isinstance(surface, AnnulusSurface):
        return _annulus_cross(surface, c1, c2)
    raise SurfaceMismatch(f"no crossing model on {surface}")


def _disk_cross(surface: DiskSurface, c1: Curve, c2: Curve) -> int:
    for c in (c1, c2):
        if c.kind == "boundary":
            return 0
        if c.kind != "disk_arc":
            raise SurfaceMismatch(f"{c} is not a disk curve")
    a, b = c1.data
    c, d = c2.data
    if len({a, b, c, d}) < 4:
        return 0
    inside_c = a < c < b
    inside_d = a < d < b
    return 1 if inside_c != inside_d else 0


def _annulus_cross(surface: AnnulusSurface, c1: Curve, c2: Curve) -> int:
    for c in (c1, c2):
        if c.kind not in ("boundary", "bracelet", "bridge", "peripheral", "null"):
            raise SurfaceMismatch(f"{c} is not an annulus curve")
    if c1.kind in ("boundary", "null") or c2.kind in ("boundary", "null"):
        return 0
    if c1.kind == "bracelet" or c2.kind == "bracelet":
        if c1.kind == c2.kind == "bracelet":
            return 0
        m = c1.data[0] if c1.kind == "bracelet" else c2.data[0]
        other = c2 if c1.kind == "bracelet" else c1
        if other.kind == "bridge":
            return m
        if other.kind == "peripheral":
            return 0
        raise SurfaceMismatch(f"{other} is not an annulus curve")
    if c1.kind == "bridge" and c2.kind == "bridge":
        i1, j1, w1 = c1.data
        i2, j2, w2 = c2.data
        alpha = surface.outer_pos(i1) - surface.outer_pos(i2)
        beta = (surface.inner_pos(j1) + w1) - (surface.inner_pos(j2) + w2)
        return len(_ints_strictly_between(alpha, beta))
    if c1.kind == "peripheral" and c2.kind == "peripheral":
        if c1.data[0] != c2.data[0]:
            return 0
        a, b = peripheral_interval(surface, c1)
        c, d = peripheral_interval(surface, c2)
        count = 0
        from math import ceil, floor

        for k in range(floor(a - d) - 1, ceil(b - c) + 2):
            if _dips_linked(a, b, c + k, d + k):
                count += 1
        return count
    # bridge x peripheral
    if c1.kind == "peripheral":
        c1, c2 = c2, c1
    i, j, w = c1.data
    side = c2.data[0]
    a, b = peripheral_interval(surface, c2)
    x = surface.outer_pos(i) if side == "outer" else surface.inner_pos(j) + w
    return len(_ints_strictly_between(x - b, x - a))


# ----------------------------------------------------------------------
# triangulations

class Triangulation:
    """Maximal collection of pairwise non-crossing internal arcs.

    ``arcs`` is an ordered tuple; positions are the quiver vertices, and
    flips preserve positions so that flip at position i mirrors seed
    mutation at vertex i."""

    __slots__ = ("surface", "arcs", "_triangles")

    def __init__(self, surface, arcs: Sequence[Curve]):
        if isinstance(surface, GenericSurface):
            raise SurfaceError("generic surfaces carry their own triangle lists")
        arcs = tuple(canonical_curve(surface, c) for c in arcs)
        expected = surface.rank
        if len(arcs) != expected:
            raise InvalidTriangulation(
                f"expected {expected} arcs, got {len(arcs)}"
            )
        if len(set(arcs)) != len(arcs):
            raise InvalidTriangulation("duplicate arcs")
        for c in arcs:
            if not is_internal_arc(surface, c):
                raise InvalidTriangulation(f"{c} is not an internal arc here")
        for c1, c2 in itertools.combinations(arcs, 2):
            if arcs_cross(surface, c1, c2):
                raise InvalidTriangulation(f"arcs {c1} and {c2} cross")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_triangles", None)

    def __setattr__(self, name, value):
        raise AttributeError("Triangulation is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.surface == other.surface
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.surface, self.arcs))

    def __repr__(self):
        return f"Triangulation({self.surface}, [{', '.join(map(str, self.arcs))}])"

    def arc_set(self) -> frozenset:
        return frozenset(self.arcs)

    # ------------------------------------------------------------------

    def triangles(self) -> list[tuple]:
        """Triangles as tuples of sides in clockwise order; each side is
        ('arc', position) or ('boundary', descriptor)."""
        if self._triangles is None:
            if isinstance(self.surface, DiskSurface):
                tris = _disk_triangles(self.surface.m, {
                    arc.data: pos for pos, arc in enumerate(self.arcs)
                })
            else:
                tris = _annulus_triangles(self)
            object.__setattr__(self, "_triangles", tris)
        return self._triangles

    def quiver(self) -> Quiver:
        n = len(self.arcs)
        counts = [[0] * n for _ in range(n)]
        for sides in self.triangles():
            for idx in range(len(sides)):
                cur = sides[idx]
                nxt = sides[(idx + 1) % len(sides)]
                if cur[0] == "arc" and nxt[0] == "arc" and cur[1] != nxt[1]:
                    counts[cur[1]][nxt[1]] += 1
        b = [[counts[i][j] - counts[j][i] for j in range(n)] for i in range(n)]
        return Quiver(b)

    def flip(self, arc: Curve | int) -> "Triangulation":
        """Flip the given arc (or position), replacing it by the other
        diagonal of its quadrilateral; positions are preserved."""
        if isinstance(arc, int):
            pos = arc
            if not 0 <= pos < len(self.arcs):
                raise ArcNotInTriangulation(f"position {pos} out of range")
        else:
            try:
                pos = self.arcs.index(arc)
            except ValueError:
                raise ArcNotInTriangulation(f"{arc} not in triangulation") from None
        new_arc = _flipped_arc(self, pos)
        arcs = list(self.arcs)
        arcs[pos] = new_arc
        return Triangulation(self.surface, arcs)


def _disk_triangles(m: int, chord_pos: dict) -> list[tuple]:
    """Triangles of a polygon triangulation: mutually adjacent vertex
    triples, sides in clockwise order (vertices labeled ccw)."""

    def side(u, v):
        u, v = min(u, v), max(u, v)
        if (u, v) in chord_pos:
            return ("arc", chord_pos[(u, v)])
        if v - u == 1 or (u == 1 and v == m):
            return ("boundary", ("disk", u, v))
        return None

    adjacency = {}
    for u in range(1, m + 1):
        for v in range(u + 1, m + 1):
            s = side(u, v)
            if s is not None:
                adjacency[(u, v)] = s
    tris = []
    vertices = range(1, m + 1)
    for u, v, w in itertools.combinations(vertices, 3):
        if (u, v) in adjacency and (v, w) in adjacency and (u, w) in adjacency:
            # clockwise order of ccw-labeled vertices: descending
            tris.append((adjacency[(v, w)], adjacency[(u, v)], adjacency[(u, w)]))
    if len(tris) != m - 2:
        raise InvalidTriangulation(
            f"face count {len(tris)} != {m - 2}; arcs do not triangulate"
        )
    return tris


def _pick_cut_bridge(t: Triangulation, avoid_pos: int | None = None) -> int:
    for pos, c in enumerate(t.arcs):
        if c.kind == "bridge" and pos != avoid_pos:
            return pos
    raise InvalidTriangulation("annulus triangulation must contain a bridge arc")


def _unroll(t: Triangulation, cut_pos: int):
    """Cut the annulus along the bridge at cut_pos and unroll to a
    polygon.  Returns (m', vertex lifts in ccw order, chord positions
    {(u,v): arc position}, cut edge descriptor pairs)."""
    surface: AnnulusSurface = t.surface
    beta = t.arcs[cut_pos]
    bi, bj, bw = beta.data
    s = surface.outer_pos(bi)
    tpos = surface.inner_pos(bj) + bw

    bottom: list[tuple] = []
    for j in range(1, surface.q + 1):
        base = surface.inner_pos(j)
        k = _ceil_strict(tpos - base) - 1
        while base + k <= tpos + 1:
            if tpos <= base + k:
                bottom.append(("inner", j, k))
            k += 1
    bottom.sort(key=lambda e: surface.pos(e[0], e[1]) + e[2])
    top: list[tuple] = []
    for i in range(1, surface.p + 1):
        base = surface.outer_pos(i)
        k = _ceil_strict(s - base) - 1
        while base + k <= s + 1:
            if s <= base + k:
                top.append(("outer", i, k))
            k += 1
    top.sort(key=lambda e: surface.pos(e[0], e[1]) + e[2], reverse=True)

    vertices = bottom + top  # ccw: bottom left->right, then top right->left
    m = len(vertices)
    assert m == surface.p + surface.q + 2, "fundamental polygon size mismatch"
    index_of = {lift: idx + 1 for idx, lift in enumerate(vertices)}

    def candidate_shifts(side, i, x_lo, x_hi):
        base = surface.pos(side, i)
        k = _ceil_strict(x_lo - base) - 1
        out = []
        while base + k <= x_hi:
            if x_lo <= base + k:
                out.append(k)
            k += 1
        return out

    def domain_lift(c: Curve) -> tuple[tuple, tuple]:
        """The unique lift of a beta-compatible arc inside the domain."""
        if c.kind == "bridge":
            i, j, w = c.data
            found = []
            for k in candidate_shifts("outer", i, s, s + 1):
                bot = surface.inner_pos(j) + w + k
                if tpos <= bot <= tpos + 1:
                    found.append((("outer", i, k), ("inner", j, w + k)))
        else:
            side, i, j, l = c.data
            lo, hi = (tpos, tpos + 1) if side == "inner" else (s, s + 1)
            found = []
            for k in candidate_shifts(side, i, lo, hi):
                other = surface.pos(side, j) + l + k
                if lo <= other <= hi:
                    found.append(((side, i, k), (side, j, l + k)))
        if len(found) != 1:
            raise InvalidTriangulation(
                f"{c} has {len(found)} lifts in the fundamental domain of the cut"
            )
        return found[0]

    chord_pos: dict = {}
    for pos, c in enumerate(t.arcs):
        if pos == cut_pos:
            continue
        e1, e2 = domain_lift(c)
        u, v = index_of[e1], index_of[e2]
        chord_pos[(min(u, v), max(u, v))] = pos

    cut_left = (index_of[("inner", bj, bw)], index_of[("outer", bi, 0)])
    cut_right = (index_of[("inner", bj, bw + 1)], index_of[("outer", bi, 1)])
    return m, vertices, chord_pos, (cut_left, cut_right), cut_pos


def _annulus_triangles(t: Triangulation) -> list[tuple]:
    cut_pos = _pick_cut_bridge(t)
    m, vertices, chord_pos, cuts, _ = _unroll(t, cut_pos)
    chords = dict(chord_pos)
    for u, v in cuts:
        chords[(min(u, v), max(u, v))] = cut_pos
    tris = _disk_triangles_general(m, chords, vertices, t.surface)
    if len(tris) != t.surface.rank:
        raise InvalidTriangulation(
            f"face count {len(tris)} != {t.surface.rank}"
        )
    return tris


def _disk_triangles_general(m, chords, vertices, surface) -> list[tuple]:
    """Triangles of the unrolled polygon; boundary sides are mapped back
    to annulus boundary segments."""

    def side(u, v):
        u, v = min(u, v), max(u, v)
        if (u, v) in chords:
            return ("arc", chords[(u, v)])
        if v - u == 1 or (u == 1 and v == m):
            side_a = vertices[u - 1]
            side_b = vertices[v - 1]
            if side_a[0] == side_b[0]:
                return ("boundary", (side_a[0], side_a[1:], side_b[1:]))
            return None
        return None

    tris = []
    for u, v, w in itertools.combinations(range(1, m + 1), 3):
        s_uv, s_vw, s_uw = side(u, v), side(v, w), side(u, w)
        if s_uv is not None and s_vw is not None and s_uw is not None:
            tris.append((s_vw, s_uv, s_uw))
    return tris


def _flipped_arc(t: Triangulation, pos: int) -> Curve:
    """The other diagonal of the quadrilateral around arcs[pos]."""
    if isinstance(t.surface, DiskSurface):
        a, b = t.arcs[pos].data
        adjacent = []
        for sides in t.triangles():
            if ("arc", pos) in sides:
                adjacent.append(sides)
        assert len(adjacent) == 2, "internal arc must bound two triangles"
        corners = []
        for sides in adjacent:
            verts = _tri_vertices_disk(t, sides)
            (other,) = set(verts) - {a, b}
            corners.append(other)
        return disk_arc(corners[0], corners[1])

    cut_pos = _pick_cut_bridge(t, avoid_pos=pos)
    m, vertices, chord_pos, cuts, _ = _unroll(t, cut_pos)
    chords = dict(chord_pos)
    for u, v in cuts:
        chords[(min(u, v), max(u, v))] = cut_pos
    target = [uv for uv, p in chords.items() if p == pos]
    assert len(target) == 1, "flipped arc must have a unique lift"
    a, b = min(target[0]), max(target[0])

    def connected(u, v):
        u, v = min(u, v), max(u, v)
        return (u, v) in chords or v - u == 1 or (u == 1 and v == m)

    # in a triangulated polygon every 3-clique is a face, so the corners
    # of the quadrilateral are the vertices adjacent to both ends
    corners = [
        v
        for v in range(1, m + 1)
        if v not in (a, b) and connected(a, v) and connected(b, v)
    ]
    assert len(corners) == 2, f"expected 2 quadrilateral corners, got {corners}"
    surface: AnnulusSurface = t.surface
    return curve_from_lifts(surface, vertices[corners[0] - 1], vertices[corners[1] - 1])


def _tri_vertices_disk(t: Triangulation, sides) -> set[int]:
    verts: set[int] = set()
    for kind, data in sides:
        if kind == "arc":
            verts.update(t.arcs[data].data)
        else:
            verts.update(data[1:3])
    return verts


def quiver_of_triangulation(t: Triangulation) -> Quiver:
    return t.quiver()


def flip_mutation_compatibility(t: Triangulation, position: int) -> bool:
    """Whether the flip at the given position matches quiver mutation at
    the same vertex (always true; a False return is an engine bug)."""
    return t.flip(position).quiver() == t.quiver().mutate(position)


# ----------------------------------------------------------------------
# default triangulations

def fan_triangulation(surface: DiskSurface) -> Triangulation:
    return Triangulation(
        surface, [disk_arc(1, k) for k in range(3, surface.m)]
    )


def standard_annulus_triangulation(surface: AnnulusSurface) -> Triangulation:
    """Snake triangulation: bridges (i,1,0) for every outer point, then
    (p,j,0) into the remaining inner points, closed by the diagonal
    (p,1,1)."""
    arcs: list[Curve] = []
    for i in range(1, surface.p + 1):
        arcs.append(bridge(i, 1, 0))
    for j in range(2, surface.q + 1):
        arcs.append(bridge(surface.p, j, 0))
    arcs.append(bridge(surface.p, 1, 1))
    return Triangulation(surface, arcs)


def default_triangulation(surface) -> Triangulation:
    if isinstance(surface, DiskSurface):
        return fan_triangulation(surface)
    if isinstance(surface, AnnulusSurface):
        return standard_annulus_triangulation(surface)
    raise SurfaceError(f"no default triangulation for {surface}")


def enumerate_triangulations(surface, limit: int = 100000) -> list[Triangulation]:
    """All triangulations reachable by flips from the default one (all of
    them, for disks and annuli of finite flip graph; annuli are infinite,
    so a limit guards the search)."""
    start = default_triangulation(surface)
    seen = {start.arc_set(): start}
    queue = [start]
    while queue:
        t = queue.pop()
        for pos in range(len(t.arcs)):
            t2 = t.flip(pos)
            if t2.arc_set() not in seen:
                if len(seen) >= limit:
                    raise SearchLimitExceeded("triangulation enumeration limit hit")
                seen[t2.arc_set()] = t2
                queue.append(t2)
    return sorted(seen.values(), key=lambda t: tuple(str(a) for a in t.arcs))


# ----------------------------------------------------------------------
# generic surfaces: flips and quiver only

def generic_quiver(surface: GenericSurface) -> tuple[Quiver, list[str]]:
    labels = sorted(
        {s for tri in surface.triangles for s in tri} - set(surface.boundary)
    )
    index = {lbl: i for i, lbl in enumerate(labels)}
    n = len(labels)
    counts = [[0] * n for _ in range(n)]
    for tri in surface.triangles:
        for idx in range(3):
            cur, nxt = tri[idx], tri[(idx + 1) % 3]
            if cur in index and nxt in index and cur != nxt:
                counts[index[cur]][index[nxt]] += 1
    b = [[counts[i][j] - counts[j][i] for j in range(n)] for i in range(n)]
    return Quiver(b), labels


def generic_flip(surface: GenericSurface, label: str) -> GenericSurface:
    """Flip an internal arc of a generic triangulated surface; the new
    arc keeps the label, so quiver vertices are stable."""
    if label in surface.boundary:
        raise ArcNotInTriangulation(f"{label} is a boundary segment")
    holding = [tri for tri in surface.triangles if label in tri]
    if len(holding) != 2:
        raise ArcNotInTriangulation(
            f"{label} must bound exactly two triangles, found {len(holding)}"
        )
    x, y = holding

    def rotate_to_last(tri):
        i = tri.index(label)
        return (tri[(i + 1) % 3], tri[(i + 2) % 3], tri[i])

    a, b, _ = rotate_to_last(x)
    c, d, _ = rotate_to_last(y)
    new_x = (b, c, label)
    new_y = (d, a, label)
    triangles = tuple(
        new_x if tri == x else new_y if tri == y else tri for tri in surface.triangles
    )
    return GenericSurface(triangles, surface.boundary)


# ----------------------------------------------------------------------
# JSON formats

def surface_from_json(data: dict):
    spec = data.get("surface", data)
    kind = spec.get("kind")
    if kind == "disk":
        return DiskSurface(int(spec["m"]))
    if kind == "annulus":
        return AnnulusSurface(int(spec["p"]), int(spec["q"]))
    if kind == "generic":
        triangles = tuple(tuple(tri) for tri in spec["triangles"])
        boundary = tuple(spec.get("boundary", ()))
        return GenericSurface(triangles, boundary)
    raise SurfaceError(f"unknown surface kind {kind!r}")


def curve_from_json(surface, data) -> Curve:
    if isinstance(data, (list, tuple)):
        if not isinstance(surface, DiskSurface):
            raise SurfaceError(f"plain pair {data} only valid on a disk")
        return disk_arc(int(data[0]), int(data[1]))
    if "outer" in data and "inner" in data:
        return bridge(int(data["outer"]), int(data["inner"]), int(data.get("winding", 0)))
    if "boundary" in data:
        return _normalize_peripheral(
            surface,
            data["boundary"],
            int(data["from"]),
            int(data["to"]),
            int(data.get("winding", 0)),
        )
    if "bracelet" in data:
        return bracelet(int(data["bracelet"]))
    raise SurfaceError(f"unrecognized curve JSON {data!r}")


def curve_to_json(c: Curve):
    if c.kind == "disk_arc":
        return [c.data[0], c.data[1]]
    if c.kind == "bridge":
        return {"outer": c.data[0], "inner": c.data[1], "winding": c.data[2]}
    if c.kind == "peripheral":
        side, i, j, l = c.data
        return {"boundary": side, "from": i, "to": j, "winding": l}
    if c.kind == "bracelet":
        return {"bracelet": c.data[0]}
    if c.kind == "boundary":
        return {"boundary_segment": list(c.data)}
    raise SurfaceError(f"cannot serialize {c}")


def triangulation_from_json(data: dict):
    surface = surface_from_json(data)
    if isinstance(surface, GenericSurface):
        return surface
    arcs = data.get("arcs")
    if arcs is None:
        return default_triangulation(surface)
    return Triangulation(surface, [curve_from_json(surface, a) for a in arcs])


def triangulation_to_json(t: Triangulation) -> dict:
    if isinstance(t.surface, DiskSurface):
        spec = {"kind": "disk", "m": t.surface.m}
    else:
        spec = {"kind": "annulus", "p": t.surface.p, "q": t.surface.q}
    return {"surface": spec, "arcs": [curve_to_json(c) for c in t.arcs]}


def triangulation_from_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return triangulation_from_json(json.load(fh))
