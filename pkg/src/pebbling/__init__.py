"""Exact graph pebbling toolkit.

Pebbling semantics and exact solvers (`solve`), named graph families and the
tree formula (`families`), structural properties and product conjecture
checks (`properties`), Monte Carlo threshold estimation (`thresholds`), the
number-theoretic partition solver on divisor grids (`lemke`), and
bounded-multiset lattice bounds (`lattice`).  `pebbling repro` on the command
line recomputes every headline number.
"""

from .errors import (InternalInvariantError, InvalidParameterError,
                     NotATreeError, PebblingError, ResourceLimitError)
from .families import (FamilySpec, PathPartition, formula, generate,
                       grid_graph, max_path_partition, parse_family,
                       tree_formula)
from .graphs import (Graph, GraphStructure, are_isomorphic,
                     cartesian_product, format_graph, parse_distribution,
                     parse_graph, product_costs, structure)
from .properties import (GenProdReport, PropertyReport, ProductComparison,
                         class0, class0_sufficient, genprod_check,
                         graham_check, join_graphs, two_pebbling)
from .solve import (Move, SolveMode, SolveResult, max_unsolvable,
                    pebbling_number, replay, solvable, verify_witness,
                    weight)
from .thresholds import (CurveRow, ScanResult, TrialConfig,
                         clique_solvable_probability, estimate,
                         sample_distribution, threshold_scan,
                         wilson_interval)

__version__ = "0.1.0"

__all__ = [
    "CurveRow", "FamilySpec", "GenProdReport", "Graph", "GraphStructure",
    "InternalInvariantError", "InvalidParameterError", "Move",
    "NotATreeError", "PathPartition", "PebblingError", "ProductComparison",
    "PropertyReport", "ResourceLimitError", "ScanResult", "SolveMode",
    "SolveResult", "TrialConfig", "are_isomorphic", "cartesian_product",
    "class0", "class0_sufficient", "clique_solvable_probability", "estimate",
    "format_graph", "formula", "generate", "genprod_check", "graham_check",
    "grid_graph", "join_graphs", "max_path_partition", "max_unsolvable",
    "parse_distribution", "parse_family", "parse_graph", "pebbling_number",
    "product_costs", "replay", "sample_distribution", "solvable",
    "structure", "threshold_scan", "tree_formula", "two_pebbling",
    "verify_witness", "weight", "wilson_interval",
]
