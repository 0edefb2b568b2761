"""Ping-pong witness families: certified lower bounds for separated counts.

A witness family is built from a base path (from the basepoint to a hub)
and A >= 2 arm paths leaving the hub whose out-and-back profiles are
pairwise R-separated.  Each word w in {0..A-1}^p yields one delta-path:
follow the base, then for each letter run the arm out and back.  Two paths
with different words are R-separated at the first differing round trip, so
the family witnesses s(n, R) >= A**p with n = len(base) + 2*p*len(arm).

The family is lazy: members are generated on demand (``path_at``), and the
pairwise separation check runs on the A-by-A arm profile matrix instead of
materializing A**p paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CapExceededError, InvalidInputError
from ..numbers import Dist, dist_to_jsonable
from ..paths import DeltaPath, OrbitSet, orbit_distance, pad_path, validate_path
from ..spaces.base import MetricSpace

__all__ = ["WitnessFamily", "build_witness", "pingpong_witness", "catalog_pingpong",
           "pad_arms", "spot_check_members"]


@dataclass(frozen=True)
class WitnessFamily:
    """A ping-pong family of delta-paths certified pairwise R-separated."""

    space: MetricSpace
    base: DeltaPath
    arms: Tuple[DeltaPath, ...]
    p: int
    R: Dist
    profile: Tuple[Tuple[Dist, ...], ...] = field(repr=False)

    @property
    def delta(self) -> Dist:
        return self.base.delta

    @property
    def arm_count(self) -> int:
        return len(self.arms)

    @property
    def arm_length(self) -> int:
        return self.arms[0].length

    @property
    def n(self) -> int:
        """Length of every member path."""
        return self.base.length + 2 * self.p * self.arm_length

    @property
    def size(self) -> int:
        return self.arm_count ** self.p

    @property
    def rate_bound(self) -> float:
        """ln(size)/n: the separated-count rate this family witnesses."""
        return self.p * math.log(self.arm_count) / self.n

    def word_at(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.size:
            raise InvalidInputError(f"witness index out of range: {index}")
        digits = []
        for _ in range(self.p):
            digits.append(index % self.arm_count)
            index //= self.arm_count
        return tuple(reversed(digits))

    def path_at(self, index: int) -> DeltaPath:
        points: List = list(self.base.points)
        for letter in self.word_at(index):
            arm = self.arms[letter].points
            points.extend(arm[1:])
            points.extend(reversed(arm[:-1]))
        return DeltaPath(tuple(points), self.delta)

    def iter_paths(self) -> Iterator[DeltaPath]:
        for i in range(self.size):
            yield self.path_at(i)

    def to_orbit_set(self, limit: int = 10 ** 5) -> OrbitSet:
        if self.size > limit:
            raise CapExceededError(
                f"witness family has {self.size} members, above the limit {limit}",
                partial=0)
        return OrbitSet(tuple(self.iter_paths()), x0=self.base.start, n=self.n,
                        delta=self.delta, exhaustive=False, map_label="identity")

    def pair_distance_bound(self, i: int, j: int) -> Dist:
        """Lower bound for the orbit distance of members i and j, from the
        arm profile matrix (equals the true distance restricted to arms)."""
        wi, wj = self.word_at(i), self.word_at(j)
        best: Dist = 0
        for a, b in zip(wi, wj):
            d = self.profile[a][b]
            if d > best:
                best = d
        return best

    def check_pairwise_separated(self, block: int = 256) -> int:
        """Verify all member pairs are R-separated using the profile matrix.

        Exhaustive over words (vectorized); returns the number of ordered
        pairs checked.  Raises when any pair comes out below R.
        """
        A, p, size = self.arm_count, self.p, self.size
        words = np.zeros((size, p), dtype=np.int64)
        idx = np.arange(size, dtype=np.int64)
        rem = idx.copy()
        for pos in range(p - 1, -1, -1):
            words[:, pos] = rem % A
            rem //= A
        prof = np.array([[float(self.profile[a][b]) for b in range(A)] for a in range(A)])
        threshold = float(self.R) - self.space.tol
        checked = 0
        for lo in range(0, size, block):
            chunk = words[lo:lo + block]
            dists = prof[chunk[:, None, :], words[None, :, :]].max(axis=2)
            for r in range(chunk.shape[0]):
                dists[r, lo + r] = np.inf
            if dists.min() < threshold:
                bad = np.unravel_index(int(dists.argmin()), dists.shape)
                raise InvalidInputError(
                    f"witness members {lo + bad[0]} and {bad[1]} are only "
                    f"{dists[bad]} apart, below R={self.R}")
            checked += chunk.shape[0] * size
        return checked

    def to_jsonable(self) -> dict:
        return {
            "space": self.space.name,
            "delta": dist_to_jsonable(self.delta),
            "R": dist_to_jsonable(self.R),
            "arms": self.arm_count,
            "arm_length": self.arm_length,
            "base_length": self.base.length,
            "p": self.p,
            "n": self.n,
            "size": self.size,
            "rate_bound": self.rate_bound,
        }


def _arm_profile(space: MetricSpace, arms: Sequence[DeltaPath]) -> List[List[Dist]]:
    A = len(arms)
    prof: List[List[Dist]] = [[0] * A for _ in range(A)]
    for i in range(A):
        for j in range(i + 1, A):
            best: Dist = 0
            for a, b in zip(arms[i].points, arms[j].points):
                d = space.distance(a, b)
                if d > best:
                    best = d
            prof[i][j] = prof[j][i] = best
    return prof


def pad_arms(arms: Sequence[DeltaPath], length: Optional[int] = None) -> List[DeltaPath]:
    """Pad arms to a common length by repeating their last points."""
    if not arms:
        return []
    target = max(a.length for a in arms) if length is None else length
    return [pad_path(a, target) for a in arms]


def build_witness(space: MetricSpace, base: DeltaPath, arms: Sequence[DeltaPath],
                  p: int, R: Dist) -> WitnessFamily:
    """Assemble and fully validate a ping-pong witness family.

    Checks: base and arms are valid delta-paths with one shared delta, all
    arms start at the base's end with one shared positive length (pad with
    ``pad_arms`` first if needed), and the arm endpoints are pairwise at
    least R apart — which is what makes any two distinct members
    R-separated at the first round trip where their words differ.
    """
    if p < 1:
        raise InvalidInputError(f"p must be >= 1: {p!r}")
    if len(arms) < 1:
        raise InvalidInputError("a witness family needs at least one arm")
    if not R > 0:
        raise InvalidInputError(f"R must be positive: {R!r}")
    delta = base.delta
    if not validate_path(base.points, delta, space):
        raise InvalidInputError("base is not a valid delta-path")
    lengths = {arm.length for arm in arms}
    if len(lengths) != 1:
        raise InvalidInputError(
            f"arms must share one length, got {sorted(lengths)}; pad_arms can fix this")
    if lengths == {0}:
        raise InvalidInputError("arms must have positive length")
    hub = base.end
    for k, arm in enumerate(arms):
        if arm.delta != delta:
            raise InvalidInputError(f"arm {k} uses delta={arm.delta}, base uses {delta}")
        if arm.start != hub:
            raise InvalidInputError(f"arm {k} starts at {arm.start!r}, not the base end {hub!r}")
        if not validate_path(arm.points, delta, space):
            raise InvalidInputError(f"arm {k} is not a valid delta-path")
    for i in range(len(arms)):
        for j in range(i + 1, len(arms)):
            d = space.distance(arms[i].end, arms[j].end)
            if not space.ge(d, R):
                raise InvalidInputError(
                    f"arm endpoints {i} and {j} are only {d} apart, below R={R}")
    prof = _arm_profile(space, arms)
    fam = WitnessFamily(space=space, base=base, arms=tuple(arms), p=p, R=R,
                        profile=tuple(tuple(row) for row in prof))
    return fam


def pingpong_witness(space: MetricSpace, x0, base: DeltaPath, arms: Sequence[DeltaPath],
                     p: int, R: Dist, point_budget: int = 8_000_000):
    """Validated ping-pong family, materialized: returns (OrbitSet, rate bound).

    The rate bound is p*ln|arms| / (L + 2pD) with L the base length and D
    the arm length; the family of |arms|**p members witnesses
    separated_count >= |arms|**p at length L + 2pD.  Raises
    CapExceededError when materializing would exceed ``point_budget``
    total points — use build_witness for the lazy family in that regime.
    """
    if base.start != x0:
        raise InvalidInputError(f"base starts at {base.start!r}, expected x0={x0!r}")
    fam = build_witness(space, base, arms, p, R)
    if fam.arm_count > 1:
        fam.check_pairwise_separated()
        spot = sorted({0, fam.size // 2, fam.size - 1})
        spot_check_members(fam, spot)
    total_points = fam.size * (fam.n + 1)
    if total_points > point_budget:
        raise CapExceededError(
            f"materializing {fam.size} members of length {fam.n} needs {total_points} "
            f"points, above the budget {point_budget}; use build_witness for the lazy "
            "family", partial=0)
    return fam.to_orbit_set(limit=fam.size), fam.rate_bound


def catalog_pingpong(space: MetricSpace, delta: Dist, R: Dist, p: int) -> WitnessFamily:
    """Witness family from a space's own arm construction (lazy).

    Only spaces that expose ``pingpong_arms(delta, R)`` (the line with
    attached trees does) support this; everything else raises.
    """
    maker = getattr(space, "pingpong_arms", None)
    if maker is None:
        raise InvalidInputError(
            f"space {space.name} does not provide a ping-pong arm construction")
    base, arms = maker(delta, R)
    return build_witness(space, base, arms, p, R)


def spot_check_members(family: WitnessFamily, indices: Sequence[int]) -> dict:
    """Materialize selected members, re-validate them as delta-paths, and
    recompute their pairwise orbit distances exactly (no profile shortcut)."""
    paths = {}
    for i in indices:
        path = family.path_at(i)
        if not validate_path(path.points, family.delta, family.space):
            raise InvalidInputError(f"witness member {i} is not a valid delta-path")
        if path.start != family.base.start:
            raise InvalidInputError("witness member does not start at the basepoint")
        if path.length != family.n:
            raise InvalidInputError("witness member has the wrong length")
        paths[i] = path
    idx = sorted(paths)
    min_pair: Optional[Dist] = None
    for a_i, i in enumerate(idx):
        for j in idx[a_i + 1:]:
            d = orbit_distance(paths[i], paths[j], family.space)
            bound = family.pair_distance_bound(i, j)
            # base positions coincide and arm positions realize the profile,
            # so the exact distance must equal the profile value
            if not (family.space.ge(d, bound) and family.space.le(d, bound)):
                raise InvalidInputError(
                    f"members {i},{j}: exact distance {d} != profile value {bound}")
            if min_pair is None or d < min_pair:
                min_pair = d
    return {"checked": len(idx), "min_pairwise": min_pair}
