"""Connected set cover partitioning of randomly deployed sensor fields."""

from .ccsp import CcspResult, Partition, ccsp_partition, maximum_spanning_tree
from .cellgraph import (WeightedCellGraph, build_weighted_cell_graph,
                        disjoint_edges, remove_nodes)
from .comm_graph import (CommGraph, build_comm_graph, induced_subgraph,
                         is_connected, is_connected_cover)
from .dcsp import (DcspOutcome, DcspSim, EnergyConfig, LifetimeReport,
                   leader_election, lifetime_simulation, run_dcsp)
from .geometry import (Deployment, Grid, Node, block_index, deploy,
                       make_grid_explicit, make_grid_from_ranges,
                       read_deployment, write_deployment)
from .harness import (ExperimentConfig, ResultRow, derive_seed, run_experiment,
                      summarize)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
