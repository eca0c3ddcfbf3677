"""Finite-graph Helly machinery.

Ball-family Helly checks reduce a family of combinatorial balls to the
maximal cliques of its pairwise-intersection graph (enumerated by a pivoting
Bron-Kerbosch with an output cap): a family of balls has the Helly property
exactly when every maximal pairwise-intersecting subfamily has a common
vertex, since any pairwise-intersecting subfamily extends to a maximal one.

Also here: clique-Helly verification, epsilon-graphs of finite metric
samples, coarse-injectivity probes, and the thickening graph of a graded
poset (edges between elements sharing a lower and an upper bound, degenerate
chains allowed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from .poset import CapExceeded, FinitePoset, PosetError, _iter_bits


class GraphError(ValueError):
    pass


class SimpleGraph:
    """Undirected simple graph over hashable vertex identifiers."""

    __slots__ = ("vertices", "_index", "_adj")

    def __init__(self, vertices: Sequence[Any], edges: Iterable[tuple[Any, Any]]):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("vertices are not distinct")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        for u, v in edges:
            if u not in self._index or v not in self._index:
                raise GraphError(f"edge ({u!r}, {v!r}) uses unknown vertex")
            if u == v:
                raise GraphError(f"loop at {u!r}")
            i, j = self._index[u], self._index[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._adj = tuple(adj)

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: Any) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: Any, v: Any) -> bool:
        return (self._adj[self.index(u)] >> self.index(v)) & 1 == 1

    def neighbors(self, v: Any) -> list[Any]:
        return [self.vertices[j] for j in _iter_bits(self._adj[self.index(v)])]

    def degree(self, v: Any) -> int:
        return bin(self._adj[self.index(v)]).count("1")

    def edges(self) -> list[tuple[Any, Any]]:
        out = []
        for i, row in enumerate(self._adj):
            for j in _iter_bits(row):
                if j > i:
                    out.append((self.vertices[i], self.vertices[j]))
        return out

    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj


@dataclass(frozen=True)
class BallSpec:
    center: Any
    radius: int


@dataclass(frozen=True)
class HellyViolation:
    """A pairwise-intersecting subfamily (by index) with empty intersection."""
    family: tuple[int, ...]


@dataclass(frozen=True)
class HellyPass:
    families_checked: int


def ball(g: SimpleGraph, spec: BallSpec) -> frozenset:
    """Vertices at graph distance <= radius from the center (BFS);
    unreachable vertices are excluded."""
    if spec.radius < 0:
        raise GraphError("radius must be >= 0")
    start = g.index(spec.center)
    seen = 1 << start
    frontier = seen
    for _ in range(spec.radius):
        new = 0
        for i in _iter_bits(frontier):
            new |= g._adj[i]
        new &= ~seen
        if not new:
            break
        seen |= new
        frontier = new
    return frozenset(g.vertices[i] for i in _iter_bits(seen))


def bron_kerbosch_pivot(adj: Sequence[int], cap: int = 1_000_000) -> Iterator[int]:
    """Maximal cliques of the graph given by adjacency bitmasks, as bitmasks.
    Pivoting branch and bound; raises CapExceeded past the output cap."""
    n = len(adj)
    emitted = 0

    def expand(r: int, p: int, x: int) -> Iterator[int]:
        nonlocal emitted
        if p == 0 and x == 0:
            emitted += 1
            if emitted > cap:
                raise CapExceeded(f"more than {cap} maximal cliques")
            yield r
            return
        both = p | x
        pivot = -1
        best = -1
        for u in _iter_bits(both):
            cnt = bin(p & adj[u]).count("1")
            if cnt > best:
                best, pivot = cnt, u
        for v in list(_iter_bits(p & ~adj[pivot])):
            bit = 1 << v
            yield from expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    yield from expand(0, (1 << n) - 1, 0)


def helly_check(g: SimpleGraph, family: Sequence[BallSpec],
                cap: int = 200_000):
    """Check the Helly property for a family of combinatorial balls.

    Enumerates the maximal pairwise-intersecting subfamilies (maximal cliques
    of the ball-intersection graph) and verifies each has a common vertex.
    Returns HellyPass or a HellyViolation carrying the offending subfamily.
    """
    balls = [ball(g, spec) for spec in family]
    masks = []
    for b in balls:
        m = 0
        for v in b:
            m |= 1 << g.index(v)
        masks.append(m)
    k = len(masks)
    inter_adj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if masks[i] & masks[j]:
                inter_adj[i] |= 1 << j
                inter_adj[j] |= 1 << i
    checked = 0
    for clique in bron_kerbosch_pivot(inter_adj, cap=cap):
        members = list(_iter_bits(clique))
        common = (1 << len(g)) - 1
        for i in members:
            common &= masks[i]
        checked += 1
        if common == 0 and len(members) >= 2:
            return HellyViolation(tuple(members))
    return HellyPass(checked)


def exhaustive_ball_family(g: SimpleGraph, core: Sequence[Any],
                           max_radius: int) -> list[BallSpec]:
    """All balls of radius <= max_radius centered in the designated core.

    The margin convention: callers must pick the core so that each ball is
    independent of vertices outside the window (e.g. core at distance >=
    max_radius from the boundary), otherwise truncation can fabricate
    violations.
    """
    return [BallSpec(c, r) for c in core for r in range(max_radius + 1)]


def clique_helly_check(g: SimpleGraph, cap: int = 200_000):
    """Helly property for the family of maximal cliques of g."""
    cliques = list(bron_kerbosch_pivot(g.adjacency_masks(), cap=cap))
    k = len(cliques)
    inter_adj = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if cliques[i] & cliques[j]:
                inter_adj[i] |= 1 << j
                inter_adj[j] |= 1 << i
    checked = 0
    for fam in bron_kerbosch_pivot(inter_adj, cap=cap):
        members = list(_iter_bits(fam))
        common = (1 << len(g)) - 1
        for i in members:
            common &= cliques[i]
        checked += 1
        if common == 0 and len(members) >= 2:
            return HellyViolation(tuple(members))
    return HellyPass(checked)


# -- metric samples ----------------------------------------------------------

class MetricSample:
    """A finite metric space given by an explicit symmetric distance table."""

    __slots__ = ("points", "_index", "dist")

    def __init__(self, points: Sequence[Any], dist: dict[tuple[Any, Any], Any]):
        self.points = tuple(points)
        self._index = {p: i for i, p in enumerate(self.points)}
        table: dict[tuple[Any, Any], Any] = {}
        for p in self.points:
            for q in self.points:
                if p == q:
                    d = dist.get((p, q), 0)
                    if d != 0:
                        raise GraphError("nonzero diagonal distance")
                    continue
                d = dist.get((p, q), dist.get((q, p)))
                if d is None:
                    raise GraphError(f"missing distance ({p!r}, {q!r})")
                if d <= 0:
                    raise GraphError("distances must be positive off-diagonal")
                table[(p, q)] = d
        self.dist = table
        self._check_triangle()

    def _check_triangle(self) -> None:
        pts = self.points
        tol = 1e-9
        for p in pts:
            for q in pts:
                if p == q:
                    continue
                for r in pts:
                    if r == p or r == q:
                        continue
                    if self.d(p, q) > self.d(p, r) + self.d(r, q) + tol:
                        raise GraphError(
                            f"triangle inequality fails on ({p!r},{q!r},{r!r})")

    def d(self, p: Any, q: Any):
        if p == q:
            return 0
        return self.dist[(p, q)]

    @classmethod
    def from_points(cls, points: Sequence[Any], metric) -> "MetricSample":
        table = {}
        pts = tuple(points)
        for i, p in enumerate(pts):
            for q in pts[i + 1:]:
                table[(p, q)] = metric(p, q)
        return cls(pts, table)


def epsilon_graph(m: MetricSample, eps) -> SimpleGraph:
    """Graph with an edge between samples at distance <= eps."""
    if eps <= 0:
        raise GraphError("eps must be positive")
    edges = []
    pts = m.points
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if m.d(p, q) <= eps:
                edges.append((p, q))
    return SimpleGraph(pts, edges)


@dataclass(frozen=True)
class CoarseWitness:
    point: Any


@dataclass(frozen=True)
class CoarseNoWitness:
    """No sample point sits within r_i + eps of every center.  This means the
    sample is too sparse or the space fails the property; the report does not
    distinguish further."""
    eps: Any


def coarse_injectivity_check(m: MetricSample, family: Sequence[tuple[Any, Any]],
                             eps):
    """Search the sample for a point within r_i + eps of every center.

    family is a sequence of (center, radius) pairs that must be pairwise
    compatible: d(x_i, x_j) <= r_i + r_j, otherwise the family is rejected
    as ill-posed.
    """
    for (p, rp), (q, rq) in ((a, b) for i, a in enumerate(family)
                             for b in family[i + 1:]):
        if m.d(p, q) > rp + rq:
            raise GraphError(
                f"ill-posed family: d({p!r},{q!r}) > {rp} + {rq}")
    for candidate in m.points:
        if all(m.d(candidate, c) <= r + eps for c, r in family):
            return CoarseWitness(candidate)
    return CoarseNoWitness(eps)


# -- thickening of a graded poset ---------------------------------------------

def thickening_from_poset(p: FinitePoset) -> SimpleGraph:
    """Graph on the elements of a graded poset with an edge between x and y
    whenever some a <= x, y and x, y <= b (degenerate chains allowed, so the
    intervals I(a, b) are exactly the closed neighborhood cliques)."""
    n = len(p.elements)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if (p._down[i] & p._down[j]) and (p._up[i] & p._up[j]):
                edges.append((p.elements[i], p.elements[j]))
    return SimpleGraph(p.elements, edges)


# -- JSON interchange ---------------------------------------------------------

def graph_to_json(g: SimpleGraph) -> str:
    doc = {"vertices": [str(v) for v in g.vertices],
           "edges": sorted([sorted((str(u), str(v))) for u, v in g.edges()])}
    return json.dumps(doc, sort_keys=True)


def graph_from_json(text: str) -> SimpleGraph:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphError('graph JSON needs "vertices" and "edges"')
    return SimpleGraph([str(v) for v in doc["vertices"]],
                       [(str(u), str(v)) for u, v in doc["edges"]])


def metric_sample_from_json(text: str) -> MetricSample:
    doc = json.loads(text)
    pts = [str(p) for p in doc["points"]]
    table = {}
    for entry in doc["dist"]:
        p, q, d = entry
        table[(str(p), str(q))] = Fraction(d) if isinstance(d, str) else d
    return MetricSample(pts, table)
