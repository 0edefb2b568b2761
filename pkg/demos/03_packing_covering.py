"""Packing and covering path families: separated and dense counts.

s(n, R) is the size of the largest pairwise R-separated subfamily of
P(n, delta, x0); r(n, R) is the smallest subfamily that comes strictly
within R of every path.  The two are sandwiched: s(2R) <= r(R) <= s(R).
Solvers return certificates -- "exact" when optimality was proven,
"lower-bound"/"upper-bound" when a greedy pass supplied a valid bound.
"""

import random

from coarseentropy import (
    MetricItems,
    covering_bound,
    dense_count,
    make_example,
    max_separated,
    min_dense,
    separated_count,
)

line = make_example("int_line")

# --- separated and dense counts on the integer line ------------------------
for n in (2, 4):
    s = separated_count(line, 0, n, delta=1, R=2)
    r = dense_count(line, 0, n, delta=1, R=2)
    print(f"n={n}: separated s(R=2) = {s.count} [{s.certificate}], "
          f"dense r(R=2) = {r.count} [{r.certificate}], "
          f"rate = {s.rate:.4f}")
print()

# --- the ball-volume bound for covering counts ------------------------------
bound = covering_bound(line, 0, delta=1, R=4, ns=[3, 6, 9])
print("when R = (k+1) delta, dense counts obey a ball-volume bound:")
print(f"  k = {bound['k']}, |step ball| = {bound['ball_size']}, "
      f"scope = {bound['ball_scope']}")
for n in (3, 6, 9):
    r = dense_count(line, 0, n, delta=1, R=4)
    print(f"  n={n}: dense count {r.count} <= bound {bound['bounds'][n]}")
print()

# --- the duality sandwich on a random finite metric -------------------------
rng = random.Random(7)
m = 12
d = [[0] * m for _ in range(m)]
for i in range(m):
    for j in range(i + 1, m):
        d[i][j] = d[j][i] = rng.randint(1, 9)
for k in range(m):  # Floyd-Warshall completion makes it a metric
    for i in range(m):
        for j in range(m):
            d[i][j] = min(d[i][j], d[i][k] + d[k][j])

items = MetricItems(list(range(m)), lambda i, j: d[i][j])
R = 3
s_R = max_separated(items, R)
s_2R = max_separated(items, 2 * R)
r_R = min_dense(items, R)
print(f"random 12-point metric at R = {R}:")
print(f"  s(2R) = {s_2R.size} <= r(R) = {r_R.size} <= s(R) = {s_R.size}")
print(f"  all certificates exact: "
      f"{ {s_2R.certificate, r_R.certificate, s_R.certificate} == {'exact'} }")
print(f"  a maximum separated selection: {s_R.selected}")
