"""Structural probes: bounded-geometry evidence, quasi-geodesicity, Rips
graphs, and net retractions.

Everything here is a finite-window check.  Unboundedness can never be
proven from a finite window, so the evidence verdicts are explicitly
"evidence"; certification happens only when a catalog space supplies its
own verified witness families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError, InvalidInputError
from .extremal import MetricItems, greedy_net, max_band_clique
from .numbers import Dist, dist_to_jsonable
from .paths import step_ball
from .spaces.base import Graph, MetricSpace, PointRef, ball, build_graph

__all__ = [
    "BGEvidence",
    "bounded_geometry_evidence",
    "quasi_geodesic_check",
    "rips_graph",
    "net_retraction",
]


@dataclass(frozen=True)
class BGEvidence:
    """Cardinalities of s-separated, diameter <= D sets found at each depth.

    verdict: "unbounded-evidence" when the cardinalities strictly increase
    across all depths, "bounded-evidence" when they are all equal, else
    "inconclusive".  Every recorded set passed an independent separation
    and diameter check.  ``witnessed`` marks families supplied (and
    verified) by the space's own catalog construction.
    """

    space: str
    s: Dist
    D: Dist
    depths: Tuple[int, ...]
    sizes: Tuple[int, ...]
    verdict: str
    witnessed: bool
    certificates: Tuple[str, ...] = ()

    def to_jsonable(self) -> dict:
        return {
            "space": self.space,
            "s": dist_to_jsonable(self.s),
            "D": dist_to_jsonable(self.D),
            "depths": list(self.depths),
            "sizes": list(self.sizes),
            "verdict": self.verdict,
            "witnessed": self.witnessed,
            "certificates": list(self.certificates),
        }


def _check_family(space: MetricSpace, points: Sequence[PointRef], s: Dist, D: Dist) -> None:
    """Independent check: pairwise distances within [s, D]."""
    pts = list(points)
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            d = space.distance(a, b)
            if not space.ge(d, s):
                raise InvalidInputError(
                    f"witness points {a!r},{b!r} at distance {d} are not {s}-separated")
            if not space.le(d, D):
                raise InvalidInputError(
                    f"witness points {a!r},{b!r} at distance {d} exceed the diameter bound {D}")


def _verdict(sizes: Sequence[int]) -> str:
    if len(sizes) >= 2 and all(b > a for a, b in zip(sizes, sizes[1:])):
        return "unbounded-evidence"
    # a trailing plateau means deepening the window stopped finding larger
    # families: evidence that the [s, D] family size is bounded
    if len(sizes) >= 2 and sizes[-1] == sizes[-2]:
        return "bounded-evidence"
    return "inconclusive"


def bounded_geometry_evidence(space: MetricSpace, s: Optional[Dist] = None,
                              D: Optional[Dist] = None,
                              window_depths: Optional[Sequence[int]] = None,
                              exact_limit: int = 40) -> BGEvidence:
    """Largest s-separated diameter-<=D families found at increasing depths.

    Catalog spaces with their own witness constructions supply verified
    families directly; otherwise the search runs an exact band-clique
    solver over the ball of each depth (greedy above ``exact_limit``).
    """
    defaults = space.bg_evidence_defaults() if hasattr(space, "bg_evidence_defaults") else None
    if defaults is not None:
        ds, dD, ddepths = defaults
        s = ds if s is None else s
        D = dD if D is None else D
        window_depths = list(ddepths) if window_depths is None else list(window_depths)
    if s is None or D is None:
        raise InvalidInputError("s and D are required for spaces without catalog defaults")
    if window_depths is None:
        window_depths = [1, 2, 3, 4]
    if not (s > 0 and D > 0):
        raise InvalidInputError("s and D must be positive")
    depths = [int(d) for d in window_depths]
    if depths != sorted(depths) or len(set(depths)) != len(depths):
        raise InvalidInputError("window depths must be strictly increasing")

    sizes: List[int] = []
    certs: List[str] = []
    witnessed = False
    maker = getattr(space, "bg_witness_family", None)
    for depth in depths:
        family = maker(s, depth) if maker is not None else None
        if family is not None:
            points, _diam_bound = family
            _check_family(space, points, s, D)
            sizes.append(len(points))
            certs.append("witness")
            witnessed = True
            continue
        window = ball(space, space.basepoint, depth)
        items = MetricItems.from_points(window, space)
        res = max_band_clique(items, s, D, exact_limit=exact_limit)
        _check_family(space, [items.items[i] for i in res.selected], s, D)
        sizes.append(res.size)
        certs.append(res.certificate)
    return BGEvidence(space=space.name, s=s, D=D, depths=tuple(depths), sizes=tuple(sizes),
                      verdict=_verdict(sizes), witnessed=witnessed,
                      certificates=tuple(certs))


def _ceil_dist(d: Dist) -> int:
    return int(math.ceil(d))


def _hop_within(space: MetricSpace, a: PointRef, b: PointRef, delta: Dist,
                budget: int, node_cap: int = 200_000) -> Optional[int]:
    """BFS in the hop metric; returns hops if <= budget, else None."""
    if a == b:
        return 0
    seen = {a}
    frontier = [a]
    for hop in range(1, budget + 1):
        nxt: List[PointRef] = []
        for v in frontier:
            for w in space.neighbors(v, delta):
                if w in seen:
                    continue
                if w == b:
                    return hop
                seen.add(w)
                nxt.append(w)
                if len(seen) > node_cap:
                    raise BudgetExceededError(
                        f"hop search exceeded {node_cap} visited points")
        if not nxt:
            return None
        frontier = nxt
    return None


def quasi_geodesic_check(space: MetricSpace, delta: Dist,
                         sample_pairs: Optional[Sequence[Tuple[PointRef, PointRef]]] = None,
                         node_cap: int = 200_000) -> dict:
    """For each pair, decide whether a delta-path of length <= ceil(d) joins it.

    Uses the space's closed-form hop distance or hop lower bound when
    available, falling back to breadth-first search capped at ceil(d)
    rounds.  Overall verdict "consistent" iff every pair passes.
    """
    if not delta > 0:
        raise InvalidInputError("delta must be positive")
    if sample_pairs is None:
        sample_pairs = default_sample_pairs(space)
    rows = []
    all_ok = True
    for a, b in sample_pairs:
        space.check_point(a)
        space.check_point(b)
        d = space.distance(a, b)
        budget = _ceil_dist(d)
        hops: Optional[int] = None
        method = "bfs"
        closed = space.hop_distance(a, b, delta) if hasattr(space, "hop_distance") else None
        if closed is not None:
            hops = closed
            method = "closed-form"
        else:
            lower = space.hop_lower_bound(a, b, delta) if hasattr(space, "hop_lower_bound") else None
            if lower is not None and lower > budget:
                hops = lower
                method = "lower-bound"
            else:
                hops = _hop_within(space, a, b, delta, budget, node_cap=node_cap)
        ok = hops is not None and hops <= budget
        all_ok = all_ok and ok
        rows.append({
            "pair": [repr(a), repr(b)],
            "distance": dist_to_jsonable(d),
            "budget": budget,
            "hops": hops if hops is not None else f"> {budget}",
            "method": method,
            "ok": bool(ok),
        })
    return {
        "space": space.name,
        "delta": dist_to_jsonable(delta),
        "pairs": rows,
        "verdict": "consistent" if all_ok else "fails",
    }


def default_sample_pairs(space: MetricSpace, scales: int = 20):
    """Geometrically spaced pairs from the basepoint (integer-coded spaces)."""
    x0 = space.basepoint
    if not isinstance(x0, int):
        raise InvalidInputError(
            "default sampling needs an integer-coded space; pass sample_pairs explicitly")
    pairs = []
    for i in range(scales + 1):
        target = x0 + 2 ** i
        try:
            space.check_point(target)
        except Exception:
            break
        pairs.append((x0, target))
    if not pairs:
        raise InvalidInputError("no sample pairs within the space bounds")
    return pairs


def rips_graph(space: MetricSpace, delta: Dist, window: Sequence[PointRef]) -> Graph:
    """Graph on the window with edges exactly the pairs at distance in (0, delta]."""
    pts = list(dict.fromkeys(window))
    for p in pts:
        space.check_point(p)
    edges = []
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            d = space.distance(a, b)
            if d > 0 and space.le(d, delta):
                edges.append((a, b))
    return build_graph(edges, vertices=pts)


def net_retraction(space: MetricSpace, r: Dist, window: Sequence[PointRef]):
    """Maximal 3r-separated net (seeded at the window's first point) plus
    the closest-point retraction, ties broken by net construction order.

    Every preimage sits inside the closed 3r-ball of its net point, and
    contains the r-ball of the net point within the window.
    """
    if not r > 0:
        raise InvalidInputError("r must be positive")
    pts = list(dict.fromkeys(window))
    if not pts:
        raise InvalidInputError("window must be nonempty")
    scale = 3 * r
    net = greedy_net(space, pts, scale)
    retraction: Dict[PointRef, PointRef] = {}
    for p in pts:
        best = None
        best_d: Optional[Dist] = None
        for z in net:
            d = space.distance(p, z)
            if best_d is None or space.lt(d, best_d):
                best_d = d
                best = z
        if not space.le(best_d, scale):
            raise InvalidInputError(
                f"net is not {scale}-dense on the window: {p!r} is {best_d} away")
        retraction[p] = best
    return net, retraction
