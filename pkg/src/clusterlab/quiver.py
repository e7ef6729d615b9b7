"""Quivers without loops or 2-cycles, mutation, components, isomorphism.

A quiver on n vertices is stored as its skew-symmetric exchange matrix b,
where b[i][j] = (#arrows i->j) - (#arrows j->i).  The no-2-cycle condition
is automatic in this encoding: the multiplicity of arrows i->j is
max(b[i][j], 0).

Vertices are 0-based internally; all JSON I/O and CLI output is 1-based.

Two mutation implementations are provided: ``mutate`` applies the matrix
formula, ``mutate_by_arrows`` applies the three-step rule on an explicit
arrow multiset.  Tests cross-check them against each other.
"""

from __future__ import annotations

import itertools
import json
from typing import Sequence


class QuiverError(Exception):
    pass


class VertexOutOfRange(QuiverError):
    pass


class SizeLimitExceeded(QuiverError):
    """Brute-force canonicalization refused; raise the bound explicitly
    if a larger instance is really wanted."""


Matrix = tuple[tuple[int, ...], ...]

CANONICAL_SIZE_BOUND = 12


class Quiver:
    """Immutable quiver encoded by a skew-symmetric integer matrix."""

    __slots__ = ("n", "b")

    n: int
    b: Matrix

    def __init__(self, b: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in b)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise QuiverError("exchange matrix must be square")
            if rows[i][i] != 0:
                raise QuiverError(f"loop at vertex {i + 1}")
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise QuiverError("exchange matrix must be skew-symmetric")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "b", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Quiver is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and self.b == other.b

    def __hash__(self) -> int:
        return hash(self.b)

    def __repr__(self) -> str:
        return f"Quiver({[list(row) for row in self.b]})"

    # ------------------------------------------------------------------

    def arrows(self) -> list[tuple[int, int, int]]:
        """List of (source, target, multiplicity) with multiplicity > 0."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    out.append((i, j, self.b[i][j]))
        return out

    def opposite(self) -> "Quiver":
        return Quiver([[-x for x in row] for row in self.b])

    def arrow_count(self) -> int:
        return sum(m for _, _, m in self.arrows())

    def permuted(self, perm: Sequence[int]) -> "Quiver":
        """Relabel vertices: new vertex a is old vertex perm[a]."""
        return Quiver(
            [[self.b[perm[a]][perm[b]] for b in range(self.n)] for a in range(self.n)]
        )

    def degree_key(self, v: int) -> tuple:
        """Isomorphism-invariant local key of a vertex (multiset of row
        entries and column entries)."""
        row = tuple(sorted(self.b[v]))
        col = tuple(sorted(self.b[u][v] for u in range(self.n)))
        return (row, col)

    # ------------------------------------------------------------------

    def check_vertex(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise VertexOutOfRange(f"vertex {i + 1} out of range 1..{self.n}")

    def mutate(self, i: int) -> "Quiver":
        """Mutation at vertex i via the matrix formula."""
        self.check_vertex(i)
        b = self.b
        n = self.n
        out = [[0] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                if r == i or c == i:
                    out[r][c] = -b[r][c]
                else:
                    sign = (b[r][i] > 0) - (b[r][i] < 0)
                    out[r][c] = b[r][c] + sign * max(0, b[r][i] * b[i][c])
        return Quiver(out)

    def mutate_by_arrows(self, i: int) -> "Quiver":
        """Mutation at vertex i via the three-step rule on arrows:
        complete length-2 paths through i, reverse arrows at i, cancel
        2-cycles.  Independent of ``mutate``; used as a cross-check."""
        self.check_vertex(i)
        n = self.n
        count = [[max(self.b[r][c], 0) for c in range(n)] for r in range(n)]
        # step 1: for each path h -> i -> j add an arrow h -> j
        for h in range(n):
            for j in range(n):
                count[h][j] += count[h][i] * count[i][j]
        # step 2: reverse arrows incident to i
        for v in range(n):
            count[v][i], count[i][v] = count[i][v], count[v][i]
        # step 3: cancel 2-cycles (net count per pair)
        out = [[0] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                out[r][c] = count[r][c] - count[c][r]
        return Quiver(out)


def connected_components(q: Quiver) -> tuple[list[list[int]], list[Quiver]]:
    """Partition of vertices into connected components of the underlying
    undirected graph, plus the induced sub-quivers."""
    seen = [False] * q.n
    parts: list[list[int]] = []
    for start in range(q.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(q.n):
                if not seen[w] and (q.b[v][w] or q.b[w][v]):
                    seen[w] = True
                    stack.append(w)
        parts.append(sorted(comp))
    subs = [
        Quiver([[q.b[u][v] for v in comp] for u in comp])
        for comp in parts
    ]
    return parts, subs


def disjoint_union(q1: Quiver, q2: Quiver) -> Quiver:
    n = q1.n + q2.n
    out = [[0] * n for _ in range(n)]
    for i in range(q1.n):
        for j in range(q1.n):
            out[i][j] = q1.b[i][j]
    for i in range(q2.n):
        for j in range(q2.n):
            out[q1.n + i][q1.n + j] = q2.b[i][j]
    return Quiver(out)


def _refined_keys(q: Quiver, rounds: int = 2) -> list[tuple]:
    """Per-vertex invariants refined Weisfeiler-Leman style."""
    keys: list[tuple] = [q.degree_key(v) for v in range(q.n)]
    for _ in range(rounds):
        keys = [
            (keys[v], tuple(sorted((q.b[v][w], keys[w]) for w in range(q.n) if q.b[v][w])))
            for v in range(q.n)
        ]
    return keys


def canonical_form(
    q: Quiver, size_bound: int = CANONICAL_SIZE_BOUND
) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical representative of the isomorphism class of q.

    Returns (canonical matrix, permutation p) where the canonical matrix
    row a, column b equals q.b[p[a]][p[b]], minimal in row-major
    lexicographic order over all permutations compatible with vertex
    invariants.  Two quivers are isomorphic iff their canonical matrices
    are equal.  Brute force with invariant grouping and prefix pruning;
    refuses n > size_bound.
    """
    if q.n > size_bound:
        raise SizeLimitExceeded(f"n={q.n} exceeds canonicalization bound {size_bound}")
    if q.n == 0:
        return ((), ())

    keys = _refined_keys(q)
    # vertices grouped by invariant; groups ordered by invariant value
    order = sorted(range(q.n), key=lambda v: (repr(keys[v]), v))
    groups: list[list[int]] = []
    for v in order:
        if groups and keys[groups[-1][0]] == keys[v]:
            groups[-1].append(v)
        else:
            groups.append([v])

    best: list[list[int]] | None = None
    best_perm: tuple[int, ...] | None = None

    def compare_prefix(perm: list[int]) -> int:
        """-1 if perm's partial matrix < best's, 0 tie, 1 worse."""
        assert best is not None
        k = len(perm)
        for r in range(k):
            for c in range(k):
                x = q.b[perm[r]][perm[c]]
                y = best[r][c]
                if x != y:
                    return -1 if x < y else 1
        return 0

    def extend(perm: list[int], remaining: list[list[int]]) -> None:
        nonlocal best, best_perm
        if best is not None and compare_prefix(perm) > 0:
            return
        if not remaining:
            mat = [[q.b[r][c] for c in perm] for r in perm]
            if best is None or mat < best:
                best = mat
                best_perm = tuple(perm)
            return
        head, *rest = remaining
        for idx, v in enumerate(head):
            nxt = head[:idx] + head[idx + 1 :]
            extend(perm + [v], ([nxt] if nxt else []) + rest)

    extend([], [list(g) for g in groups])
    assert best is not None and best_perm is not None
    return tuple(tuple(row) for row in best), best_perm


def are_isomorphic(q1: Quiver, q2: Quiver, size_bound: int = CANONICAL_SIZE_BOUND) -> bool:
    if q1.n != q2.n:
        return False
    return canonical_form(q1, size_bound)[0] == canonical_form(q2, size_bound)[0]


def isomorphic_up_to_component_opposites(
    q: Quiver, r: Quiver, size_bound: int = CANONICAL_SIZE_BOUND
) -> tuple[bool, dict | None]:
    """Test whether q is isomorphic to r after replacing some connected
    components of r by their opposites.

    On success the witness holds the flipped component index set and a
    vertex map {r-vertex: q-vertex} realizing the isomorphism.
    """
    if q.n != r.n:
        return False, None
    parts, _subs = connected_components(r)
    canon_q, perm_q = canonical_form(q, size_bound)
    for flips in itertools.product([False, True], repeat=len(parts)):
        mat = [list(row) for row in r.b]
        for flip, comp in zip(flips, parts):
            if not flip:
                continue
            for u in comp:
                for v in comp:
                    mat[u][v] = -r.b[u][v]
        candidate = Quiver(mat)
        canon_r, perm_r = canonical_form(candidate, size_bound)
        if canon_r == canon_q:
            vertex_map = {perm_r[a]: perm_q[a] for a in range(q.n)}
            witness = {
                "flipped_components": [i for i, f in enumerate(flips) if f],
                "vertex_map": vertex_map,
            }
            return True, witness
    return False, None


# ----------------------------------------------------------------------
# JSON format: {"n": 3, "arrows": [[1,2,1],[2,3,2]]}  (1-based, m arrows i->j)

def quiver_to_json(q: Quiver) -> dict:
    return {
        "n": q.n,
        "arrows": [[i + 1, j + 1, m] for i, j, m in q.arrows()],
    }


def quiver_from_json(data: dict) -> Quiver:
    try:
        n = int(data["n"])
        arrows = data.get("arrows", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise QuiverError(f"malformed quiver JSON: {exc}") from exc
    if n < 0:
        raise QuiverError("vertex count must be nonnegative")
    b = [[0] * n for _ in range(n)]
    for entry in arrows:
        if len(entry) == 2:
            i, j, m = entry[0], entry[1], 1
        elif len(entry) == 3:
            i, j, m = entry
        else:
            raise QuiverError(f"arrow entry {entry} must be [i,j] or [i,j,m]")
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"arrow {entry} out of range 1..{n}")
        if i == j:
            raise QuiverError(f"loop at vertex {i} rejected")
        if m <= 0:
            raise QuiverError(f"arrow multiplicity must be positive in {entry}")
        if b[j - 1][i - 1] != 0:
            raise QuiverError(f"simultaneous arrows {i}->{j} and {j}->{i} rejected")
        if b[i - 1][j - 1] != 0:
            raise QuiverError(f"duplicate arrow entry for {i}->{j}")
        b[i - 1][j - 1] = m
        b[j - 1][i - 1] = -m
    return Quiver(b)


def quiver_from_file(path: str) -> Quiver:
    with open(path, "r", encoding="utf-8") as fh:
        return quiver_from_json(json.load(fh))
