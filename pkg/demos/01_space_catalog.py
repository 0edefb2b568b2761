"""Tour of the example-space catalog.

Every space in the catalog is a *window* onto an infinite metric space:
distances are exact (integers or rationals), points outside the window
raise instead of silently wrapping, and each handle advertises structural
annotations that the classifier later keys on.
"""

from coarseentropy import CATALOG_TAGS, make_example

print("catalog tags:", ", ".join(CATALOG_TAGS))
print()

# --- the integer line: the simplest unbounded geometry -------------------
line = make_example("int_line")
print(line.name)
print("  d(3, -4) =", line.distance(3, -4))
print("  unit neighbors of 0:", line.neighbors(0, 1))
print("  annotations:", sorted(line.annotations))
print()

# --- an ultrametric product: every delta-component is bounded ------------
um = make_example("ultrametric_product", {"max_index": 6})
a = (0, 2, 0, 0, 0, 0)
b = (0, 0, 3, 0, 0, 0)
print(um.name)
print("  points are choice tuples; coordinate k is 0 or k")
print(f"  d({a}, {b}) =", um.distance(a, b), "(largest disagreeing coordinate)")
print("  ball sizes around the basepoint double:",
      [len(um.neighbors(um.basepoint, r)) + 1 for r in range(5)])
print()

# --- the log-step line: connected but badly non-geodesic -----------------
log = make_example("log_line", {"max_abs": 4096})
print(log.name)
print("  d(0, 4096) =", log.distance(0, 4096))
print("  one step of size delta=3 moves at most", log.max_step(3),
      "in coordinates (2^delta - 1)")
print()

# --- trees: regular trees grow exponentially ------------------------------
tree = make_example("regular_tree", {"degree": 3, "max_depth": 6})
print(tree.name)
print("  |B(root, l)| for l = 0..4:",
      [len(tree.neighbors(tree.basepoint, l)) + 1 for l in range(5)])
print()

# --- tree_line: a line with binary trees planted at x = 4^n ---------------
tl = make_example("tree_line", {"max_tree": 4, "schedule": "2^n"})
print(tl.name)
leaf = ("tree", 3, (0, 1, 1))
print("  tree 3 is rooted at line coordinate", tl.attachment(3))
print(f"  d({leaf}, ('line', 0)) =", tl.distance(leaf, ("line", 0)))
print()

# --- branch_tree: vertex degrees grow with depth --------------------------
bt = make_example("branch_tree", {"max_depth": 5})
print(bt.name)
print("  children counts along the leftmost ray:",
      [len(bt.children((0,) * d)) for d in range(4)])
measured = make_example("branch_tree", {"max_depth": 5, "measured": True})
print("  measured variant: mass of root ball of radius 3 =",
      measured.mass_of([measured.basepoint]
                       + measured.neighbors(measured.basepoint, 3)))
print()

# --- prime_cycle: a line decorated with chorded cycles at prime powers ----
pc = make_example("prime_cycle", {"max_line": 64})
print(pc.name)
print("  cycle glued at 2^5 = 32 has", len(pc.cycle_points(2, 5)), "extra vertices")
print("  d(('line', 32), farthest cycle vertex) =",
      max(pc.distance(("line", 32), v) for v in pc.cycle_points(2, 5)))
print()

# --- finite graphs from edge lists ----------------------------------------
from coarseentropy import build_graph

square = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)], name="square")
print(square.name, "-- d(0, 2) =", square.distance(0, 2))
