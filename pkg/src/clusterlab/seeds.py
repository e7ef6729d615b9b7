"""Seeds, seed mutation, and bounded exchange-graph exploration.

A seed is an ordered cluster of Laurent polynomials (each cluster
variable written in the fixed initial variables x_1..x_n) together with
a quiver on n vertices.  Mutation replaces one variable through the
exchange relation and mutates the quiver; the division is exact
whenever the seed is valid (Laurent phenomenon), so a division failure
here is always a bug or an invalid input seed.

Exchange graphs are explored breadth-first over seed-isomorphism
classes, so truncated graphs are metric balls around the initial seed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import Laurent, NotDivisible, divide_exact, embed
from .linalg import solve_unique
from .quiver import Quiver, disjoint_union, quiver_from_json, quiver_to_json


class SeedError(Exception):
    pass


class NonExactDivision(SeedError):
    """The exchange relation did not divide exactly: invalid seed or
    engine bug."""


class TruncatedGraph(SeedError):
    """Operation requires a complete exchange graph."""


class RaggedInput(SeedError):
    """Cluster subsets of unequal size."""


class Seed:
    """Immutable (cluster, quiver) pair."""

    __slots__ = ("cluster", "quiver")

    cluster: tuple[Laurent, ...]
    quiver: Quiver

    def __init__(self, cluster: Sequence[Laurent], quiver: Quiver):
        cluster = tuple(cluster)
        if len(cluster) != quiver.n:
            raise SeedError(f"cluster size {len(cluster)} != quiver size {quiver.n}")
        for v in cluster:
            if v.rank != quiver.n:
                raise SeedError("cluster variables must live in rank n")
        object.__setattr__(self, "cluster", cluster)
        object.__setattr__(self, "quiver", quiver)

    def __setattr__(self, name, value):
        raise AttributeError("Seed is immutable")

    @property
    def n(self) -> int:
        return self.quiver.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Seed)
            and self.cluster == other.cluster
            and self.quiver == other.quiver
        )

    def __hash__(self) -> int:
        return hash((self.cluster, self.quiver))

    def __repr__(self) -> str:
        return f"Seed([{', '.join(str(v) for v in self.cluster)}], {self.quiver!r})"


def initial_seed(q: Quiver) -> Seed:
    return Seed([Laurent.variable(q.n, i) for i in range(q.n)], q)


def mutate_seed(s: Seed, i: int) -> Seed:
    """Mutation at vertex i through the exchange relation.

    An m-fold arrow contributes the m-th power to its side of the
    exchange binomial; empty products are 1.
    """
    s.quiver.check_vertex(i)
    n = s.n
    into = Laurent.one(n)
    out = Laurent.one(n)
    for j in range(n):
        m = s.quiver.b[j][i]
        if m > 0:
            into = into * s.cluster[j] ** m
        elif m < 0:
            out = out * s.cluster[j] ** (-m)
    try:
        new_var = divide_exact(into + out, s.cluster[i])
    except NotDivisible as exc:
        raise NonExactDivision(f"exchange relation at vertex {i + 1}: {exc}") from exc
    cluster = list(s.cluster)
    cluster[i] = new_var
    return Seed(cluster, s.quiver.mutate(i))


def disjoint_union_seed(s1: Seed, s2: Seed) -> Seed:
    """Seed of the disjoint-union quiver on the concatenated cluster,
    re-expressed in the joint ambient rank n1 + n2."""
    n = s1.n + s2.n
    cluster = [embed(v, n, 0) for v in s1.cluster] + [
        embed(v, n, s1.n) for v in s2.cluster
    ]
    return Seed(cluster, disjoint_union(s1.quiver, s2.quiver))


# ----------------------------------------------------------------------
# seed isomorphism classes

def seed_class_key(s: Seed) -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """Canonical key: two seeds get the same key iff they agree up to
    reordering of cluster variables and the induced vertex relabeling.

    Variables are sorted by canonical string; the quiver matrix is then
    minimized over all permutations preserving that order (ties between
    equal strings cannot occur for valid seeds, but are broken by brute
    force anyway)."""
    rendered = [str(v) for v in s.cluster]
    order = sorted(range(s.n), key=lambda i: rendered[i])
    sorted_strings = tuple(rendered[i] for i in order)

    groups: list[list[int]] = []
    for i in order:
        if groups and rendered[groups[-1][-1]] == rendered[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best: tuple[tuple[int, ...], ...] | None = None
    for perm_parts in itertools.product(
        *[itertools.permutations(g) for g in groups]
    ):
        perm = [v for part in perm_parts for v in part]
        mat = tuple(tuple(s.quiver.b[r][c] for c in perm) for r in perm)
        if best is None or mat < best:
            best = mat
    assert best is not None
    return sorted_strings, best


@dataclass(frozen=True)
class ExploreLimits:
    max_seeds: int = 10000
    max_terms: int = 100000
    max_depth: int = 64

    def validate(self) -> None:
        if self.max_seeds <= 0 or self.max_terms <= 0 or self.max_depth <= 0:
            raise SeedError("exploration limits must be positive")


@dataclass
class ExchangeGraph:
    """Exchange graph discovered by bounded BFS.

    Nodes are seed-isomorphism class keys ordered canonically; each node
    carries a representative seed.  Edges are unordered key pairs labeled
    by the shared (n-1)-subset of variable renderings."""

    rank: int
    nodes: list[tuple] = field(default_factory=list)
    representatives: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    truncated: bool = False
    limits: ExploreLimits = field(default_factory=ExploreLimits)
    variables: dict = field(default_factory=dict)

    def node_cluster(self, key) -> frozenset:
        return frozenset(key[0])

    @property
    def clusters(self) -> set[frozenset]:
        return {self.node_cluster(k) for k in self.nodes}

    def neighbors(self, key) -> list:
        out = []
        for a, b in self.edges:
            if a == key:
                out.append(b)
            elif b == key:
                out.append(a)
        return out

    def degree(self, key) -> int:
        return len(self.neighbors(key))

    def require_complete(self) -> None:
        if self.truncated:
            raise TruncatedGraph("operation requires a complete exchange graph")


def explore(
    q: Quiver, limits: ExploreLimits | None = None, start: Seed | None = None
) -> ExchangeGraph:
    """BFS over seed classes from the initial seed of q (or from an
    explicit start seed, giving the metric ball around it).

    Limit overruns never raise; they set the truncated flag.  For finite
    type the full exchange graph is returned with truncated=False."""
    limits = limits or ExploreLimits()
    limits.validate()
    graph = ExchangeGraph(rank=q.n, limits=limits)

    if start is not None and start.quiver != q:
        raise SeedError("start seed must carry the given quiver")
    start = start or initial_seed(q)
    start_key = seed_class_key(start)
    graph.representatives[start_key] = start
    queue: list[tuple[Seed, tuple, int]] = [(start, start_key, 0)]
    head = 0
    while head < len(queue):
        seed, key, depth = queue[head]
        head += 1
        for i in range(q.n):
            neighbor = mutate_seed(seed, i)
            if any(v.term_count() > limits.max_terms for v in neighbor.cluster):
                graph.truncated = True
                continue
            nkey = seed_class_key(neighbor)
            if nkey not in graph.representatives:
                if depth + 1 > limits.max_depth or len(graph.representatives) >= limits.max_seeds:
                    graph.truncated = True
                    continue
                graph.representatives[nkey] = neighbor
                queue.append((neighbor, nkey, depth + 1))
            shared = frozenset(key[0]) & frozenset(nkey[0])
            edge = (min(key, nkey), max(key, nkey))
            graph.edges.setdefault(edge, shared)

    graph.nodes = sorted(graph.representatives)
    for key in graph.nodes:
        for v in graph.representatives[key].cluster:
            graph.variables.setdefault(str(v), v)
    return graph


# ----------------------------------------------------------------------
# cluster-monomial recognition

def _monomial_part_solve(
    monomials: list[tuple[int, tuple[int, ...]]], coeff: int, exponents: tuple[int, ...]
) -> list[int] | None:
    """Solve prod (c_i X^{a_i})^{e_i} == coeff * X^exponents with e_i >= 0
    integers.  The a_i of distinct cluster variables in one cluster are
    linearly independent, so the rational solution is unique when it
    exists."""
    if not monomials:
        return [] if coeff == 1 and not any(exponents) else None
    rank = len(exponents)
    matrix = [[Fraction(mono[1][k]) for mono in monomials] for k in range(rank)]
    rhs = [Fraction(e) for e in exponents]
    try:
        sol = solve_unique(matrix, rhs)
    except ValueError:
        raise SeedError("degenerate monomial system in a cluster") from None
    if sol is None:
        return None
    exps = []
    for x in sol:
        if x.denominator != 1 or x < 0:
            return None
        exps.append(int(x))
    prod_coeff = 1
    for (c, _), e in zip(monomials, exps):
        prod_coeff *= c ** e
    if prod_coeff != coeff:
        return None
    return exps


def _express_as_monomial(p: Laurent, cluster: Sequence[Laurent]) -> list[int] | None:
    """Exponents e >= 0 with p == prod cluster[i]**e[i], or None."""
    if p.is_zero():
        return None
    poly_vars = [(i, v) for i, v in enumerate(cluster) if v.term_count() > 1]
    mono_vars = [(i, v) for i, v in enumerate(cluster) if v.term_count() == 1]

    def weight(poly: Laurent) -> int:
        return sum(hi - lo for lo, hi in poly.degrees())

    result: list[int] | None = None

    def search(idx: int, remainder: Laurent, chosen: list[int]) -> bool:
        nonlocal result
        if idx == len(poly_vars):
            kind, coeff, exponents = remainder.classify()
            if kind != "monomial":
                return False
            monos = [(v.classify()[1], v.classify()[2]) for _, v in mono_vars]
            exps = _monomial_part_solve(monos, coeff, exponents)
            if exps is None:
                return False
            out = [0] * len(cluster)
            for (i, _), e in zip(poly_vars, chosen):
                out[i] = e
            for (i, _), e in zip(mono_vars, exps):
                out[i] = e
            result = out
            return True
        _, v = poly_vars[idx]
        w = weight(v)
        bound = weight(remainder) // w if w else 0
        current = remainder
        for e in range(bound + 1):
            if search(idx + 1, current, chosen + [e]):
                return True
            try:
                current = divide_exact(current, v)
            except NotDivisible:
                return False
        return False

    if search(0, p, []):
        return result
    return None


def is_cluster_monomial(
    p: Laurent, g: ExchangeGraph
) -> tuple[bool, dict | None]:
    """Test whether p is a monomial in the variables of a single cluster.

    Returns (True, witness) with the witness cluster key and exponent
    vector, or (False, None)."""
    g.require_complete()
    if not p.is_positive():
        return False, None
    for key in g.nodes:
        seed = g.representatives[key]
        exps = _express_as_monomial(p, seed.cluster)
        if exps is not None:
            witness = {
                "cluster": sorted(str(v) for v in seed.cluster),
                "exponents": {str(v): e for v, e in zip(seed.cluster, exps) if e},
            }
            return True, witness
    return False, None


def assert_monomial_lemma(g: ExchangeGraph) -> list[str]:
    """Every cluster variable that is a Laurent monomial with coefficient
    +-1 must be an initial variable; returns renderings of violations
    (expected empty)."""
    g.require_complete()
    violations = []
    for text, poly in g.variables.items():
        kind, coeff, exponents = poly.classify()
        if kind != "monomial" or coeff not in (1, -1):
            continue
        is_initial = coeff == 1 and sorted(exponents) == [0] * (poly.rank - 1) + [1]
        if not is_initial:
            violations.append(text)
    return sorted(violations)


def reconstruct_exchange_graph(
    clusters: Iterable[Iterable[str]],
) -> tuple[list[frozenset], set[tuple[frozenset, frozenset]]]:
    """Rebuild the exchange graph from its clusters alone: nodes are the
    given clusters, edges join clusters sharing exactly n-1 variables."""
    nodes = sorted({frozenset(c) for c in clusters}, key=sorted)
    if nodes:
        n = len(nodes[0])
        if any(len(c) != n for c in nodes):
            raise RaggedInput("clusters must all have the same size")
    edges = set()
    for a, b in itertools.combinations(nodes, 2):
        if len(a & b) == len(a) - 1:
            edges.add((min(a, b, key=sorted), max(a, b, key=sorted)))
    return nodes, edges


# ----------------------------------------------------------------------
# serialization

def seed_to_json(s: Seed) -> dict:
    data = quiver_to_json(s.quiver)
    data["cluster"] = [str(v) for v in s.cluster]
    return data


def seed_from_json(data: dict) -> Seed:
    from .laurent import parse

    q = quiver_from_json(data)
    cluster_texts = data.get("cluster")
    if cluster_texts is None:
        return initial_seed(q)
    if len(cluster_texts) != q.n:
        raise SeedError("cluster length must equal the vertex count")
    return Seed([parse(t, q.n) for t in cluster_texts], q)


def graph_to_json(g: ExchangeGraph) -> dict:
    index = {key: i for i, key in enumerate(g.nodes)}
    return {
        "rank": g.rank,
        "truncated": g.truncated,
        "limits": {
            "max_seeds": g.limits.max_seeds,
            "max_terms": g.limits.max_terms,
            "max_depth": g.limits.max_depth,
        },
        "nodes": [
            {
                "id": index[key],
                "cluster": sorted(key[0]),
                "quiver": quiver_to_json(g.representatives[key].quiver),
            }
            for key in g.nodes
        ],
        "edges": [
            {
                "source": index[a],
                "target": index[b],
                "shared": sorted(shared),
            }
            for (a, b), shared in sorted(
                g.edges.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]])
            )
        ],
        "variables": sorted(g.variables),
    }


def graph_to_dot(g: ExchangeGraph) -> str:
    index = {key: i for i, key in enumerate(g.nodes)}
    lines = ["graph exchange {"]
    for key in g.nodes:
        label = ", ".join(sorted(key[0]))
        lines.append(f'  n{index[key]} [label="{label}"];')
    for (a, b), _ in sorted(
        g.edges.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]])
    ):
        lines.append(f"  n{index[a]} -- n{index[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
