"""Max Dense Graph Partition: exact search, approximation algorithms, bounds,
and executable hardness reductions, all in exact rational arithmetic."""

from .core import (DGPError, Graph, InvalidPartitionError, InvariantError, Partition,
                   PreconditionError, Rat, SolveReport, complement, connected_components,
                   density, density_upper_bound, missing_edge_count, partition_density,
                   utility)
from .exact import SearchConfig, enumerate_partitions, solve_exact
from ._kernel import BACKEND

__all__ = [
    "BACKEND", "DGPError", "Graph", "InvalidPartitionError", "InvariantError", "Partition",
    "PreconditionError", "Rat", "SearchConfig", "SolveReport", "complement",
    "connected_components", "density", "density_upper_bound", "enumerate_partitions",
    "missing_edge_count", "partition_density", "solve_exact", "utility",
]
