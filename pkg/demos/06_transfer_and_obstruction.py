"""Transfer maps and coarse-embedding obstructions.

Transfer converts identity delta-paths into delta-pseudoorbits of a
distance-preserving map (and back), checking the isometry on every point
pair it touches, so orbit distances survive exactly.  The obstruction
report combines two classifications: an infinite-entropy space cannot
coarsely embed into a zero-entropy one.
"""

from coarseentropy import (
    cycle_graph,
    enumerate_orbits,
    make_example,
    obstruction,
    orbit_distance,
    round_trip_check,
    transfer_orbits,
)

# --- transfer along a rotation of the 8-cycle --------------------------------
space = cycle_graph(8)
rotate = lambda x: (x + 3) % 8

orbits = enumerate_orbits(space, 0, n=2, delta=1)
image = transfer_orbits(space, rotate, orbits, direction="forward")
print(f"transferred {len(image.paths)} paths along x -> x+3 (mod 8); "
      f"label: {image.map_label}")
u, v = orbits.paths[0], orbits.paths[-1]
fu, fv = image.paths[0], image.paths[-1]
print("  source pair distance:", orbit_distance(u, v, space),
      "| image pair distance:", orbit_distance(fu, fv, space))
print("  round trip:", round_trip_check(space, rotate, orbits))
print()

# --- a map that is not an isometry is refused --------------------------------
from coarseentropy import NotDistancePreservingError

try:
    transfer_orbits(space, lambda x: 0, orbits)
except NotDistancePreservingError as exc:
    print("constant maps are rejected with the offending pair:")
    print(" ", str(exc)[:72], "...")
print()

# --- embedding obstruction ----------------------------------------------------
source = make_example("tree_line", {"max_tree": 4, "schedule": "2^n"})
target = make_example("prime_cycle", {"max_line": 64})
report = obstruction(source, target)
print(f"{source.name}  -->  {target.name}")
print("  obstruction:", report["obstruction"], "| certified:", report["certified"])
print("  reason:", report["reason"])
print()
report = obstruction(make_example("int_line"), source)
print("int_line --> tree_line: obstruction =", report["obstruction"],
      "(monotonicity only forbids infinite -> zero)")
