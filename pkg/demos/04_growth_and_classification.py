"""Ball growth, log-slope fits, and the zero/infinite classifier.

The classifier walks an ordered rule list: exact structural certificates
first (ultrametric, bounded components, coding maps, measured volume,
failure of bounded geometry), then growth-slope evidence over a finite
window, which is honest but *uncertified* -- a finite window can never
prove an asymptotic statement, and the report says so in its caveat.
"""

import math

from coarseentropy import (
    ClassifyConfig,
    classify,
    fit_log_slope,
    growth_series,
    make_example,
)

# --- growth series -----------------------------------------------------------
line = make_example("int_line")
series = growth_series(line, delta=1, l_max=8)
print("integer line |B(0, l)|:", list(series.values), "-> slope",
      round(fit_log_slope(series), 4))

tree = make_example("regular_tree", {"degree": 3, "max_depth": 12})
series = growth_series(tree, delta=1, l_max=11)
print("3-regular tree |B(root, l)|:", list(series.values)[:7], "...",
      "-> slope", round(fit_log_slope(series), 4),
      f"(ln 2 = {math.log(2):.4f})")

measured = make_example("branch_tree", {"max_depth": 8, "measured": True})
series = growth_series(measured, delta=1, l_max=7)
print("measured branching tree vol B(root, l):",
      [str(v) for v in series.values], "(exact rationals, doubling)")
print()

# --- classification across the catalog ---------------------------------------
cases = [
    ("ultrametric_product", {}),
    ("int_line", {}),
    ("regular_tree", {"degree": 3, "max_depth": 15}),
    ("branch_tree", {"max_depth": 8}),
    ("branch_tree", {"max_depth": 8, "measured": True}),
    ("tree_line", {"max_tree": 4, "schedule": "2^n"}),
    ("prime_cycle", {"max_line": 64}),
    ("log_line", {}),
]
print(f"{'space':34} {'verdict':13} {'rule':36} certified")
for tag, params in cases:
    space = make_example(tag, params)
    config = ClassifyConfig(l_max=14) if tag == "regular_tree" else None
    report = classify(space, config)
    print(f"{space.name:34} {report.verdict:13} {str(report.rule):36} "
          f"{report.certified}")
print()
print("uncertified slope verdicts carry an explicit caveat, e.g.:")
print(" ", classify(make_example("int_line")).caveat)
