"""Mechanical unistructurality checks at desk scale.

Condition (U) quantifies over all seeds on the ambient field and is not
brute-forceable; for finite types the verifier instead checks the
consequences the proof establishes, which jointly pin the clusters-only
condition (U'):

  * the clusters are exactly the maximal pairwise-compatible variable
    sets, each of size n;
  * products of incompatible variables are never cluster monomials (and
    never Laurent monomials), and on surfaces they expand in the
    bracelet basis with natural coefficients and a positive pure-arc
    part;
  * the exchange graph is reconstructible from the clusters alone via
    the shared-(n-1)-subset adjacency rule, with no duplicate clusters;
  * every n-subset of variables that is not a cluster contains an
    incompatible pair, so no alternative seed structure could promote it
    to a cluster.

Compatibility means co-occurrence in some cluster; on surface types it
is cross-checked against vanishing crossing numbers.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from math import comb

from .quiver import Quiver, disjoint_union
from .seeds import (
    ExchangeGraph,
    ExploreLimits,
    explore,
    is_cluster_monomial,
    reconstruct_exchange_graph,
)
from .skein import NotInSpan, SurfaceAlgebra, enumerate_basis, expand_in_basis
from .surface import DiskSurface, Triangulation, arcs_cross, is_internal_arc


class VerifyError(Exception):
    pass


class LimitExceeded(VerifyError):
    pass


class NotABijection(VerifyError):
    pass


SUBSET_SCREEN_CAP = 10**6


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    detail: str = ""
    witness: object = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "seconds": round(self.seconds, 6),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        if result.status == "fail" and result.witness is None:
            raise VerifyError(f"failing check {result.name} must carry a witness")
        self.checks.append(result)

    def extend(self, other: "VerificationReport") -> None:
        for c in other.checks:
            self.add(c)

    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "ok": self.ok(),
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def to_text(self) -> str:
        lines = []
        for c in sorted(self.checks, key=lambda c: c.name):
            mark = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[c.status]
            line = f"[{mark}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.status == "fail" and c.witness is not None:
                line += f" (witness: {c.witness})"
            lines.append(line)
        lines.append("result: " + ("OK" if self.ok() else "FAILED"))
        return "\n".join(lines) + "\n"


def _timed(name: str, fn) -> CheckResult:
    start = time.perf_counter()
    status, detail, witness = fn()
    return CheckResult(name, status, detail, witness, time.perf_counter() - start)


# ----------------------------------------------------------------------
# surface context: variable <-> arc dictionary for a complete graph

class SurfaceContext:
    """Ties a complete exchange graph to its surface model: renders the
    variable <-> arc bijection and provides the bracelet basis."""

    def __init__(self, algebra: SurfaceAlgebra, graph: ExchangeGraph):
        graph.require_complete()
        if not isinstance(algebra.surface, DiskSurface):
            raise VerifyError("complete graphs only arise from disks here")
        self.algebra = algebra
        self.graph = graph
        m = algebra.surface.m
        self.arc_of: dict[str, object] = {}
        from .surface import disk_arc

        for a in range(1, m + 1):
            for b in range(a + 2, m + 1):
                arc = disk_arc(a, b)
                if is_internal_arc(algebra.surface, arc):
                    self.arc_of[str(algebra.arc_variable(arc))] = arc
        missing = set(graph.variables) - set(self.arc_of)
        if missing:
            raise VerifyError(f"variables without arcs: {sorted(missing)}")

    def basis(self, degree: int = 2):
        return enumerate_basis(self.algebra, degree)


# ----------------------------------------------------------------------
# checks

def compatibility_relation(g: ExchangeGraph) -> set[frozenset]:
    """Pairs of variables co-occurring in some cluster (includes the
    reflexive singletons: powers of one variable are cluster monomials)."""
    g.require_complete()
    relation: set[frozenset] = set()
    for cluster in g.clusters:
        for a in cluster:
            for b in cluster:
                relation.add(frozenset((a, b)))
    return relation


def incompatible_pairs(g: ExchangeGraph) -> list[tuple[str, str]]:
    relation = compatibility_relation(g)
    names = sorted(g.variables)
    return [
        (a, b)
        for a, b in itertools.combinations(names, 2)
        if frozenset((a, b)) not in relation
    ]


def verify_compatibility_crosscheck(ctx: SurfaceContext) -> VerificationReport:
    """Compatibility (cluster co-occurrence) must coincide with
    non-crossing of the corresponding arcs."""

    def run():
        relation = compatibility_relation(ctx.graph)
        surface = ctx.algebra.surface
        for a, b in itertools.combinations(sorted(ctx.graph.variables), 2):
            crossing = arcs_cross(surface, ctx.arc_of[a], ctx.arc_of[b])
            if (crossing == 0) != (frozenset((a, b)) in relation):
                return "fail", "compatibility and crossing disagree", {
                    "pair": [a, b],
                    "crossing": crossing,
                }
        return "pass", f"{len(ctx.graph.variables)} variables cross-checked", None

    report = VerificationReport()
    report.add(_timed("compatibility_surface_crosscheck", run))
    return report


def verify_clusters_maximal(g: ExchangeGraph) -> VerificationReport:
    """Clusters are exactly the maximal pairwise-compatible subsets, all
    of size n; a failure exhibits an alternative cluster candidate."""
    g.require_complete()

    def run():
        relation = compatibility_relation(g)
        names = sorted(g.variables)
        adjacency = {
            v: {
                w
                for w in names
                if w != v and frozenset((v, w)) in relation
            }
            for v in names
        }

        cliques: list[frozenset] = []

        def bron_kerbosch(r: set, p: set, x: set) -> None:
            if not p and not x:
                cliques.append(frozenset(r))
                return
            for v in sorted(p):
                bron_kerbosch(r | {v}, p & adjacency[v], x & adjacency[v])
                p = p - {v}
                x = x | {v}

        bron_kerbosch(set(), set(names), set())
        maximal = set(cliques)
        clusters = g.clusters
        if maximal != clusters:
            extra = maximal - clusters
            missing = clusters - maximal
            witness = {
                "not_a_cluster": sorted(next(iter(extra))) if extra else None,
                "not_maximal": sorted(next(iter(missing))) if missing else None,
            }
            return "fail", "maximal compatible sets differ from clusters", witness
        wrong_size = [c for c in maximal if len(c) != g.rank]
        if wrong_size:
            return "fail", "maximal compatible set of wrong size", sorted(
                wrong_size[0]
            )
        return "pass", f"{len(maximal)} maximal sets = clusters of size {g.rank}", None

    report = VerificationReport()
    report.add(_timed("clusters_are_maximal_compatible_sets", run))
    return report


def verify_incompatible_products(
    g: ExchangeGraph, context: SurfaceContext | None = None
) -> VerificationReport:
    """Products of incompatible variables are not cluster monomials and
    not Laurent monomials; with a surface context, their bracelet-basis
    expansion has natural coefficients and a positive pure-arc part."""
    g.require_complete()
    report = VerificationReport()

    def run_monomials():
        for a, b in incompatible_pairs(g):
            product = g.variables[a] * g.variables[b]
            ok, _witness = is_cluster_monomial(product, g)
            if ok:
                return "fail", "incompatible product is a cluster monomial", {
                    "pair": [a, b]
                }
            # the mechanism only forbids unit-coefficient monomials (a
            # rank-1 pair multiplies to the constant 2, which is fine)
            kind, coeff, _ = product.classify()
            if kind == "monomial" and coeff in (1, -1):
                return "fail", "incompatible product is a unit Laurent monomial", {
                    "pair": [a, b]
                }
        return "pass", f"{len(incompatible_pairs(g))} incompatible pairs screened", None

    report.add(_timed("incompatible_products_not_cluster_monomials", run_monomials))

    if context is not None:

        def run_basis():
            basis = context.basis(degree=2)
            for a, b in incompatible_pairs(g):
                product = g.variables[a] * g.variables[b]
                try:
                    coeffs = expand_in_basis(product, basis)
                except NotInSpan:
                    return "skipped", f"basis bounds too small for {a} * {b}", None
                bad = {
                    be.label(): str(v)
                    for be, v in coeffs.items()
                    if v < 0 or v.denominator != 1
                }
                if bad:
                    return "fail", "non-natural basis coefficients", {
                        "pair": [a, b],
                        "coefficients": bad,
                    }
                arc_part = sum(v for be, v in coeffs.items() if be.flavor == "B")
                if arc_part <= 0:
                    return "fail", "pure-arc part of the expansion vanishes", {
                        "pair": [a, b]
                    }
            return "pass", "all incompatible products expand positively", None

        report.add(_timed("incompatible_products_basis_expansion", run_basis))
    return report


def verify_incompatible_products_annulus(
    algebra: SurfaceAlgebra,
    winding_bound: int = 2,
    basis_degree: int = 2,
    basis_winding: int = 2,
) -> VerificationReport:
    """Annulus variant on a bounded arc universe (the exchange graph is
    infinite): every crossing pair's product expands with natural
    coefficients and a positive pure-arc part."""
    from .surface import AnnulusSurface, canonical_curve, peripheral

    surface = algebra.surface
    if not isinstance(surface, AnnulusSurface):
        raise VerifyError("annulus check needs an annulus")

    def run():
        from .surface import bridge

        universe = []
        for i in range(1, surface.p + 1):
            for j in range(1, surface.q + 1):
                for w in range(-winding_bound, winding_bound + 1):
                    universe.append(bridge(i, j, w))
        for side, count in (("outer", surface.p), ("inner", surface.q)):
            for i in range(1, count + 1):
                c = canonical_curve(surface, peripheral(side, i, i, 1))
                if is_internal_arc(surface, c):
                    universe.append(c)
        basis = enumerate_basis(algebra, basis_degree, basis_winding)
        pairs = 0
        for c1, c2 in itertools.combinations(universe, 2):
            if arcs_cross(surface, c1, c2) == 0:
                continue
            product = algebra.arc_variable(c1) * algebra.arc_variable(c2)
            try:
                coeffs = expand_in_basis(product, basis)
            except NotInSpan:
                return "skipped", f"basis bounds too small for {c1} * {c2}", None
            if any(v < 0 or v.denominator != 1 for v in coeffs.values()):
                return "fail", "non-natural basis coefficients", {
                    "pair": [str(c1), str(c2)]
                }
            if sum(v for be, v in coeffs.items() if be.flavor == "B") <= 0:
                return "fail", "pure-arc part vanishes", {"pair": [str(c1), str(c2)]}
            pairs += 1
        return "pass", f"{pairs} crossing pairs expanded positively", None

    report = VerificationReport()
    report.add(_timed("incompatible_products_annulus_bounded", run))
    return report


def verify_exchange_graph_reconstruction(g: ExchangeGraph) -> VerificationReport:
    """The exchange graph is recovered from its clusters alone, and no
    cluster appears in two different seeds."""
    g.require_complete()

    def run():
        if len(g.clusters) != len(g.nodes):
            seen: dict[frozenset, tuple] = {}
            for key in g.nodes:
                cluster = g.node_cluster(key)
                if cluster in seen:
                    return "fail", "one cluster appears in two seeds", sorted(cluster)
                seen[cluster] = key
        nodes, edges = reconstruct_exchange_graph(g.clusters)
        explored_edges = {
            frozenset((g.node_cluster(a), g.node_cluster(b))) for a, b in g.edges
        }
        rebuilt_edges = {frozenset(e) for e in edges}
        if rebuilt_edges != explored_edges:
            diff = rebuilt_edges.symmetric_difference(explored_edges)
            sample = next(iter(diff))
            return "fail", "reconstructed edges differ", [
                sorted(sorted(c) for c in sample)
            ]
        return (
            "pass",
            f"graph on {len(nodes)} clusters rebuilt from shared (n-1)-subsets",
            None,
        )

    report = VerificationReport()
    report.add(_timed("exchange_graph_reconstruction", run))
    return report


def verify_disjoint_union_property(
    q1: Quiver, q2: Quiver, limits: ExploreLimits | None = None
) -> VerificationReport:
    """Variables of the union split into block-supported copies of the
    component variables; clusters are exactly all concatenations."""
    limits = limits or ExploreLimits()
    g1 = explore(q1, limits)
    g2 = explore(q2, limits)
    gu = explore(disjoint_union(q1, q2), limits)
    if g1.truncated or g2.truncated or gu.truncated:
        raise LimitExceeded("component or union exploration truncated")
    report = VerificationReport()

    from .laurent import embed, support_block

    n1, n = q1.n, q1.n + q2.n

    def run_variables():
        lifted = {str(embed(p, n, 0)) for p in g1.variables.values()} | {
            str(embed(p, n, n1)) for p in g2.variables.values()
        }
        if lifted != set(gu.variables):
            diff = lifted.symmetric_difference(set(gu.variables))
            return "fail", "union variables differ from component variables", sorted(
                diff
            )[:3]
        for name, p in gu.variables.items():
            block = support_block(p)
            if block and not (max(block) < n1 or min(block) >= n1):
                return "fail", "variable mixes ambient blocks", name
        return "pass", f"{len(gu.variables)} variables split into blocks", None

    def run_clusters():
        expected = {
            frozenset(
                {str(embed(g1.variables[a], n, 0)) for a in c1}
                | {str(embed(g2.variables[b], n, n1)) for b in c2}
            )
            for c1 in g1.clusters
            for c2 in g2.clusters
        }
        if expected != gu.clusters:
            return "fail", "union clusters are not all concatenations", {
                "expected": len(expected),
                "found": len(gu.clusters),
            }
        return "pass", f"{len(gu.clusters)} clusters = all concatenations", None

    report.add(_timed("disjoint_union_variables", run_variables))
    report.add(_timed("disjoint_union_clusters", run_clusters))
    return report


def verify_unistructural_finite(
    g: ExchangeGraph, context: SurfaceContext | None = None
) -> VerificationReport:
    """Composite finite-type unistructurality check: maximal-compatible
    = clusters, incompatible products are not cluster monomials, the
    graph is reconstructible, and every non-cluster n-subset contains an
    incompatible pair."""
    g.require_complete()
    report = VerificationReport()
    report.extend(verify_clusters_maximal(g))
    report.extend(verify_incompatible_products(g, context))
    report.extend(verify_exchange_graph_reconstruction(g))
    if context is not None:
        report.extend(verify_compatibility_crosscheck(context))

    def run_subsets():
        names = sorted(g.variables)
        total = comb(len(names), g.rank)
        if total > SUBSET_SCREEN_CAP:
            return "skipped", f"{total} subsets exceed the screening cap", None
        relation = compatibility_relation(g)
        clusters = g.clusters
        for subset in itertools.combinations(names, g.rank):
            fs = frozenset(subset)
            if fs in clusters:
                continue
            if all(
                frozenset((a, b)) in relation
                for a, b in itertools.combinations(subset, 2)
            ):
                return "fail", "compatible n-subset that is not a cluster", sorted(fs)
        return "pass", f"{total} subsets screened", None

    report.add(_timed("non_cluster_subsets_have_incompatibilities", run_subsets))
    return report


def check_cluster_automorphism(
    g: ExchangeGraph, sigma: dict[str, str]
) -> tuple[bool, object]:
    """True iff sigma permutes the variables mapping every cluster to a
    cluster (adjacency is then preserved automatically, but checked);
    the witness on failure is a violated cluster or edge."""
    g.require_complete()
    names = set(g.variables)
    if set(sigma) != names or set(sigma.values()) != names:
        raise NotABijection("sigma must permute the variable set")
    clusters = g.clusters
    for cluster in sorted(clusters, key=sorted):
        image = frozenset(sigma[v] for v in cluster)
        if image not in clusters:
            return False, {"cluster": sorted(cluster), "image": sorted(image)}
    edges = {
        frozenset((g.node_cluster(a), g.node_cluster(b))) for a, b in g.edges
    }
    for a, b in edges:
        image = frozenset(
            (frozenset(sigma[v] for v in a), frozenset(sigma[v] for v in b))
        )
        if image not in edges:
            return False, {"edge": [sorted(a), sorted(b)]}
    return True, None


# ----------------------------------------------------------------------
# suite runners

def verify_quiver(q: Quiver, limits: ExploreLimits | None = None) -> VerificationReport:
    limits = limits or ExploreLimits()
    g = explore(q, limits)
    report = VerificationReport()
    if g.truncated:
        report.add(
            CheckResult(
                "exploration_complete",
                "skipped",
                "exchange graph truncated; unistructurality checks need a finite type",
            )
        )
        return report
    report.extend(verify_unistructural_finite(g))
    return report


def verify_triangulation(
    t0: Triangulation, limits: ExploreLimits | None = None
) -> VerificationReport:
    from .surface import AnnulusSurface

    algebra = SurfaceAlgebra(t0)
    report = VerificationReport()

    def run_flip_mutation():
        for pos in range(len(t0.arcs)):
            if t0.flip(pos).quiver() != t0.quiver().mutate(pos):
                return "fail", "flip and mutation disagree", {"position": pos + 1}
        return "pass", f"{len(t0.arcs)} flips match mutations", None

    report.add(_timed("flip_mutation_compatibility", run_flip_mutation))

    if isinstance(t0.surface, AnnulusSurface):
        report.extend(verify_incompatible_products_annulus(algebra))
        return report

    g = explore(t0.quiver(), limits or ExploreLimits())
    if g.truncated:
        report.add(
            CheckResult(
                "exploration_complete", "skipped", "exchange graph truncated"
            )
        )
        return report
    context = SurfaceContext(algebra, g)
    report.extend(verify_unistructural_finite(g, context))
    return report


def report_to_json_text(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
