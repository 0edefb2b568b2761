"""Delta-paths, orbit distance, and exhaustive path enumeration.

The central object is the finite family P(n, delta, x0) of all paths of n
steps of size at most delta starting at x0, compared under the *orbit
distance* -- the largest pointwise distance at any time step.  Everything
downstream (separated counts, covering counts, entropy rates) is built on
this family.
"""

from coarseentropy import (
    DeltaPath,
    enumerate_orbits,
    make_example,
    orbit_distance,
    step_ball,
    validate_path,
)

line = make_example("int_line")

# --- enumerate the whole family -------------------------------------------
orbits = enumerate_orbits(line, x0=0, n=3, delta=1)
print(f"P(n=3, delta=1, x0=0) on the integer line has {len(orbits.paths)} paths")
print("  (each step moves by -1, 0 or +1, so the count is 3^3 = 27)")
print("  first paths in enumeration order:",
      [p.points for p in orbits.paths[:4]])
print("  exhaustive:", orbits.exhaustive)
print()

# --- orbit distance is the sup over time ----------------------------------
u = DeltaPath((0, 1, 2, 3), 1)
v = DeltaPath((0, -1, -2, -3), 1)
print("orbit_distance walks two paths in parallel and takes the worst step:")
print(f"  d_orbit({u.points}, {v.points}) =", orbit_distance(u, v, line))
print()

# --- step balls: how far n delta-steps can reach ---------------------------
print("step_ball(0, n, delta=1) =", [len(step_ball(line, 0, n, 1)) for n in range(6)],
      "points for n = 0..5")
um = make_example("ultrametric_product", {"max_index": 8})
print("on the ultrametric product the delta-component is bounded:")
print("  reachable points after n steps of size 2:",
      [len(step_ball(um, um.basepoint, n, 2)) for n in range(4)],
      "(stabilizes at the 2-component)")
print()

# --- paths validate against the space they live in -------------------------
good = (0, 1, 1, 2)
bad = (0, 5, 6, 7)
print(f"validate_path({good}, delta=1): {validate_path(good, 1, line)}")
print(f"validate_path({bad}, delta=1): {validate_path(bad, 1, line)} "
      "(the first step jumps by 5)")
print()

# --- budget discipline ------------------------------------------------------
from coarseentropy import CapExceededError

try:
    enumerate_orbits(line, 0, n=16, delta=1, cap=1000)
except CapExceededError as exc:
    print("enumeration halts at the configured cap rather than thrashing:")
    print(" ", exc)
