"""Space handles: finite metric spaces, graphs, weighted graphs.

A space handle is an immutable object exposing two queries:

* ``distance(a, b)`` -> exact rational distance (or ``math.inf`` between
  components),
* ``neighbors(x, delta)`` -> the sorted finite list of points ``y != x``
  with ``d(x, y) <= delta``.

Handles never mutate after construction; distance caches are internal,
write-once-per-key and observationally transparent, so handles may be
shared across threads.  Generated (infinite) spaces live in
:mod:`coarseentropy.spaces.catalog`; they subclass :class:`MetricSpace`
and add an explicit budget window.
"""

from __future__ import annotations

import csv
import heapq
import math
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..errors import InvalidInputError, UnknownPointError
from ..numbers import INF, Dist, as_dist

__all__ = [
    "PointRef",
    "MetricSpace",
    "FiniteMetricSpace",
    "Graph",
    "WeightedGraph",
    "MeasuredSpace",
    "build_graph",
    "build_weighted_graph",
    "build_finite_space",
    "subspace",
    "load_edges_csv",
    "ball",
    "validate_metric",
]

PointRef = Hashable


class MetricSpace:
    """Base class for every space handle.

    Subclasses must implement ``distance`` and ``neighbors`` and set
    ``kind``.  ``tol`` is the comparison tolerance (zero everywhere except
    the float-backed logarithmic line).
    """

    kind: str = "abstract"
    name: str = "space"
    tol: float = 0.0
    vertex_transitive: bool = False
    growth_tag: Optional[str] = None
    annotations: frozenset = frozenset()
    basepoint: PointRef = None

    def distance(self, a: PointRef, b: PointRef) -> Dist:
        raise NotImplementedError

    def neighbors(self, x: PointRef, delta: Dist) -> List[PointRef]:
        raise NotImplementedError

    def check_point(self, x: PointRef) -> None:
        """Raise UnknownPointError if x is not a point of this space."""

    # -- comparison helpers honouring the space tolerance ------------------

    def le(self, d: Dist, bound: Dist) -> bool:
        """d <= bound up to the space tolerance."""
        return d <= bound + self.tol

    def lt(self, d: Dist, bound: Dist) -> bool:
        """d < bound up to the space tolerance."""
        return d < bound - self.tol

    def ge(self, d: Dist, bound: Dist) -> bool:
        """d >= bound up to the space tolerance."""
        return d >= bound - self.tol

    # -- optional hooks used by higher layers when available ---------------

    def hop_lower_bound(self, a: PointRef, b: PointRef, delta: Dist) -> Optional[int]:
        """A proven lower bound on the number of delta-steps from a to b."""
        return None

    def hop_distance(self, a: PointRef, b: PointRef, delta: Dist) -> Optional[int]:
        """Exact delta-step distance when the space has a closed form."""
        return None

    def bg_witness_family(self, s: Dist, depth: int):
        """Catalog-provided s-separated bounded-diameter family, or None.

        Returns ``(points, diameter_bound)`` for the witness family at the
        given depth when the space declares one.
        """
        return None

    def bg_evidence_defaults(self):
        """Default (s, D, depths) for bounded-geometry evidence, or None."""
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


def _pairkey(a, b):
    return (a, b) if repr(a) <= repr(b) else (b, a)


class FiniteMetricSpace(MetricSpace):
    """A finite point set with an explicit metric.

    ``dist_fn`` is only trusted after ``validate_metric`` passes it in the
    builder; the class itself just caches values.
    """

    kind = "finite"

    def __init__(self, points: Sequence[PointRef], dist_fn: Callable[[PointRef, PointRef], Dist],
                 name: str = "finite", annotations: Iterable[str] = (),
                 vertex_transitive: bool = False):
        self._points = tuple(sorted(set(points)))
        if not self._points:
            raise InvalidInputError("a finite space needs at least one point")
        self._point_set = frozenset(self._points)
        self._dist_fn = dist_fn
        self._cache: Dict[Tuple[PointRef, PointRef], Dist] = {}
        self.name = name
        self.annotations = frozenset(annotations)
        self.vertex_transitive = vertex_transitive
        self.basepoint = self._points[0]

    @property
    def points(self) -> Tuple[PointRef, ...]:
        return self._points

    def check_point(self, x):
        if x not in self._point_set:
            raise UnknownPointError(f"{x!r} is not a point of {self.name}")

    def distance(self, a, b):
        if a == b:
            self.check_point(a)
            return 0
        self.check_point(a)
        self.check_point(b)
        key = _pairkey(a, b)
        got = self._cache.get(key)
        if got is None:
            got = as_dist(self._dist_fn(a, b))
            self._cache[key] = got
        return got

    def neighbors(self, x, delta):
        self.check_point(x)
        return sorted(y for y in self._points if y != x and self.le(self.distance(x, y), delta))

    def diameter(self) -> Dist:
        best: Dist = 0
        for i, a in enumerate(self._points):
            for b in self._points[i + 1:]:
                d = self.distance(a, b)
                if d > best:
                    best = d
        return best


class Graph(MetricSpace):
    """Finite unweighted graph with the shortest-path (hop) metric."""

    kind = "graph"

    def __init__(self, adjacency: Dict[PointRef, Tuple[PointRef, ...]], name: str = "graph",
                 annotations: Iterable[str] = (), vertex_transitive: bool = False):
        self._adj = {v: tuple(sorted(ns)) for v, ns in sorted(adjacency.items(), key=lambda kv: kv[0])}
        self._vertices = tuple(sorted(self._adj))
        self._vertex_set = frozenset(self._vertices)
        self._dist_cache: Dict[PointRef, Dict[PointRef, int]] = {}
        self.name = name
        # a finite graph trivially has bounded degree; the flags matter when
        # a handle stands in for a whole family, which catalog spaces declare
        self.annotations = frozenset({"graph", "bounded-degree"} | set(annotations))
        self.vertex_transitive = vertex_transitive
        self.basepoint = self._vertices[0]

    @property
    def points(self):
        return self._vertices

    def adjacency(self, x):
        self.check_point(x)
        return self._adj[x]

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def check_point(self, x):
        if x not in self._vertex_set:
            raise UnknownPointError(f"{x!r} is not a vertex of {self.name}")

    def _bfs(self, source) -> Dict[PointRef, int]:
        done = self._dist_cache.get(source)
        if done is not None:
            return done
        dist = {source: 0}
        frontier = [source]
        hops = 0
        while frontier:
            hops += 1
            nxt = []
            for v in frontier:
                for w in self._adj[v]:
                    if w not in dist:
                        dist[w] = hops
                        nxt.append(w)
            frontier = nxt
        self._dist_cache[source] = dist
        return dist

    def distance(self, a, b):
        self.check_point(a)
        self.check_point(b)
        if a == b:
            return 0
        return self._bfs(a).get(b, INF)

    def neighbors(self, x, delta):
        self.check_point(x)
        if delta < 1:
            return []
        radius = math.floor(delta)
        dist = self._bfs(x)
        return sorted(y for y, d in dist.items() if y != x and d <= radius)

    def is_connected(self) -> bool:
        return len(self._bfs(self._vertices[0])) == len(self._vertices)


class WeightedGraph(MetricSpace):
    """Finite graph with positive rational edge weights, Dijkstra metric."""

    kind = "weighted_graph"

    def __init__(self, adjacency: Dict[PointRef, Tuple[Tuple[PointRef, Dist], ...]],
                 name: str = "weighted_graph", annotations: Iterable[str] = ()):
        self._adj = {v: tuple(sorted(ns)) for v, ns in sorted(adjacency.items(), key=lambda kv: kv[0])}
        self._vertices = tuple(sorted(self._adj))
        self._vertex_set = frozenset(self._vertices)
        self._dist_cache: Dict[PointRef, Dict[PointRef, Dist]] = {}
        self.name = name
        self.annotations = frozenset({"weighted-graph"} | set(annotations))
        self.basepoint = self._vertices[0]

    @property
    def points(self):
        return self._vertices

    def check_point(self, x):
        if x not in self._vertex_set:
            raise UnknownPointError(f"{x!r} is not a vertex of {self.name}")

    def _dijkstra(self, source) -> Dict[PointRef, Dist]:
        done = self._dist_cache.get(source)
        if done is not None:
            return done
        dist: Dict[PointRef, Dist] = {}
        heap = [(0, 0, source)]
        counter = 0
        while heap:
            d, _, v = heapq.heappop(heap)
            if v in dist:
                continue
            dist[v] = d
            for w, weight in self._adj[v]:
                if w not in dist:
                    counter += 1
                    heapq.heappush(heap, (d + weight, counter, w))
        self._dist_cache[source] = dist
        return dist

    def distance(self, a, b):
        self.check_point(a)
        self.check_point(b)
        if a == b:
            return 0
        return self._dijkstra(a).get(b, INF)

    def neighbors(self, x, delta):
        self.check_point(x)
        dist = self._dijkstra(x)
        return sorted(y for y, d in dist.items() if y != x and self.le(d, delta))


class MeasuredSpace(MetricSpace):
    """A space handle together with a point measure (exact rationals).

    Delegates every metric query to the wrapped space; adds ``mass`` for a
    single point and ``mass_of`` for a finite point set.
    """

    def __init__(self, space: MetricSpace, mass_fn: Callable[[PointRef], Fraction],
                 name: Optional[str] = None, annotations: Iterable[str] = ()):
        self.space = space
        self._mass_fn = mass_fn
        self.kind = "measured:" + space.kind
        self.name = name or (space.name + "/measured")
        self.tol = space.tol
        self.vertex_transitive = space.vertex_transitive
        self.growth_tag = space.growth_tag
        self.annotations = space.annotations | frozenset(annotations) | frozenset({"measured"})
        self.basepoint = space.basepoint

    def distance(self, a, b):
        return self.space.distance(a, b)

    def neighbors(self, x, delta):
        return self.space.neighbors(x, delta)

    def check_point(self, x):
        self.space.check_point(x)

    def hop_lower_bound(self, a, b, delta):
        return self.space.hop_lower_bound(a, b, delta)

    def hop_distance(self, a, b, delta):
        return self.space.hop_distance(a, b, delta)

    def bg_witness_family(self, s, depth):
        return self.space.bg_witness_family(s, depth)

    def bg_evidence_defaults(self):
        return self.space.bg_evidence_defaults()

    def mass(self, x) -> Fraction:
        self.check_point(x)
        value = self._mass_fn(x)
        if value < 0:
            raise InvalidInputError(f"negative mass at {x!r}")
        return Fraction(value)

    def mass_of(self, points: Iterable[PointRef]) -> Fraction:
        # group identical masses so large balls do not pay one Fraction
        # addition per point
        counts: Dict[Fraction, int] = {}
        for p in points:
            m = self.mass(p)
            counts[m] = counts.get(m, 0) + 1
        total = Fraction(0)
        for value, count in sorted(counts.items()):
            total += value * count
        return total


# ---------------------------------------------------------------------------
# builders


def _normalize_edges(edges):
    seen = set()
    out = []
    for edge in edges:
        if len(edge) < 2:
            raise InvalidInputError(f"edge needs two endpoints: {edge!r}")
        a, b = edge[0], edge[1]
        if a == b:
            raise InvalidInputError(f"loop edge rejected: {edge!r}")
        rest = tuple(edge[2:])
        key = (a, b) if repr(a) <= repr(b) else (b, a)
        out.append((key, rest))
        seen.add(key)
    return out


def build_graph(edges: Iterable[Sequence[PointRef]], vertices: Iterable[PointRef] = (),
                name: str = "graph", require_connected: bool = False,
                vertex_transitive: bool = False) -> Graph:
    """Build an unweighted graph handle from an edge list.

    Duplicate edges collapse; loops are rejected.  Disconnected input is
    accepted (distance across components is infinity) unless
    ``require_connected`` is set.
    """
    adj: Dict[PointRef, set] = {v: set() for v in vertices}
    for (a, b), rest in _normalize_edges(edges):
        if rest:
            raise InvalidInputError("unweighted edge must be a pair; got extra fields")
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        raise InvalidInputError("graph needs at least one vertex")
    graph = Graph({v: tuple(ns) for v, ns in adj.items()}, name=name,
                  vertex_transitive=vertex_transitive)
    if require_connected and not graph.is_connected():
        raise InvalidInputError("graph is disconnected and connectivity was required")
    return graph


def build_weighted_graph(edges: Iterable[Sequence], vertices: Iterable[PointRef] = (),
                         name: str = "weighted_graph",
                         require_connected: bool = False) -> WeightedGraph:
    """Build a weighted graph; weights are positive exact rationals.

    Parallel edges keep the minimum weight.
    """
    best: Dict[Tuple[PointRef, PointRef], Dist] = {}
    for (a, b), rest in _normalize_edges(edges):
        if len(rest) != 1:
            raise InvalidInputError(f"weighted edge must be (src, dst, weight): {(a, b) + rest!r}")
        w = as_dist(rest[0])
        if not w > 0:
            raise InvalidInputError(f"edge weight must be positive: {(a, b, w)!r}")
        key = (a, b)
        if key not in best or w < best[key]:
            best[key] = w
    adj: Dict[PointRef, set] = {v: set() for v in vertices}
    for (a, b), w in best.items():
        adj.setdefault(a, set()).add((b, w))
        adj.setdefault(b, set()).add((a, w))
    if not adj:
        raise InvalidInputError("graph needs at least one vertex")
    graph = WeightedGraph({v: tuple(ns) for v, ns in adj.items()}, name=name)
    if require_connected:
        reach = graph._dijkstra(graph.points[0])
        if len(reach) != len(graph.points):
            raise InvalidInputError("graph is disconnected and connectivity was required")
    return graph


def build_finite_space(points: Sequence[PointRef], dist_fn, name: str = "finite",
                       validate: bool = True, **kwargs) -> FiniteMetricSpace:
    """Wrap an explicit finite metric; optionally verify the axioms."""
    space = FiniteMetricSpace(points, dist_fn, name=name, **kwargs)
    if validate:
        validate_metric(space)
    return space


def validate_metric(space: FiniteMetricSpace) -> None:
    """Exhaustively check metric axioms on a finite space (raises on failure)."""
    pts = space.points
    for a in pts:
        if space.distance(a, a) != 0:
            raise InvalidInputError(f"d({a!r},{a!r}) != 0")
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            d = space.distance(a, b)
            if not d > 0:
                raise InvalidInputError(f"d({a!r},{b!r}) = {d} is not positive")
            if space.distance(b, a) != d:
                raise InvalidInputError(f"d not symmetric on ({a!r},{b!r})")
    for a in pts:
        for b in pts:
            for c in pts:
                if space.distance(a, c) > space.distance(a, b) + space.distance(b, c) + space.tol:
                    raise InvalidInputError(f"triangle inequality fails on ({a!r},{b!r},{c!r})")


def subspace(space: MetricSpace, points: Sequence[PointRef], name: Optional[str] = None) -> FiniteMetricSpace:
    """Finite metric subspace: the induced distance on a subset of points."""
    pts = tuple(sorted(set(points)))
    for p in pts:
        space.check_point(p)
    sub = FiniteMetricSpace(pts, space.distance, name=name or (space.name + "/sub"))
    sub.tol = space.tol
    return sub


def ball(space: MetricSpace, x: PointRef, radius: Dist) -> List[PointRef]:
    """Closed metric ball as a sorted point list (center included)."""
    if radius < 0:
        return []
    return sorted(space.neighbors(x, radius) + [x])


def load_edges_csv(path: str):
    """Read an edge list CSV with header ``src,dst`` or ``src,dst,weight``.

    Node labels parse to int when every label is an integer literal,
    otherwise they stay strings.  Weights parse exactly ("3", "1/2",
    "0.25" are all exact rationals).  Returns ``(edges, weighted)``.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InvalidInputError(f"empty edge file: {path}")
    header = [cell.strip().lower() for cell in rows[0]]
    if header[:2] != ["src", "dst"]:
        raise InvalidInputError("edge CSV must start with header src,dst[,weight]")
    weighted = len(header) >= 3 and header[2] == "weight"
    raw = []
    for row in rows[1:]:
        if len(row) < 2 + (1 if weighted else 0):
            raise InvalidInputError(f"short edge row: {row!r}")
        raw.append([cell.strip() for cell in row])
    labels = {cell for row in raw for cell in row[:2]}

    def _intlike(s):
        try:
            int(s)
            return True
        except ValueError:
            return False

    to_label = (lambda s: int(s)) if all(_intlike(s) for s in labels) else (lambda s: s)
    edges = []
    for row in raw:
        a, b = to_label(row[0]), to_label(row[1])
        if weighted:
            edges.append((a, b, as_dist(row[2])))
        else:
            edges.append((a, b))
    return edges, weighted
