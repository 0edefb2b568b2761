"""Space handles: builders, finite spaces and the generated catalog."""

from .base import (FiniteMetricSpace, Graph, MeasuredSpace, MetricSpace, PointRef,
                   WeightedGraph, ball, build_finite_space, build_graph,
                   build_weighted_graph, load_edges_csv, subspace, validate_metric)
from .catalog import (CATALOG_TAGS, BranchTree, CoarseUnion, IntLine, LogLine,
                      PrimeCycle, RegularTree, TreeLine, UltrametricProduct,
                      branch_tree_measured, complete_graph, cycle_graph,
                      make_example, path_graph)

__all__ = [
    "MetricSpace", "FiniteMetricSpace", "Graph", "WeightedGraph", "MeasuredSpace",
    "PointRef", "ball", "build_finite_space", "build_graph", "build_weighted_graph",
    "load_edges_csv", "subspace", "validate_metric",
    "UltrametricProduct", "LogLine", "IntLine", "RegularTree", "TreeLine",
    "BranchTree", "PrimeCycle", "CoarseUnion", "branch_tree_measured",
    "make_example", "path_graph", "cycle_graph", "complete_graph", "CATALOG_TAGS",
]
