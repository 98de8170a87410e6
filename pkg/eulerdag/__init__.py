from .init import reset_log
reset_log()

from .graph import DirectedGraph, EdgeSet, Decomposition, scc_decompose
from .ingest import VertexNameMap, parse_edge_list, read_edge_list, write_decomposition
from .solvers import ALGORITHMS, solve, simple, dfseven, greedy_and_refine, greedy_decompose
from .hierarchy import Ranking, assign_ranks, agony, rank_distribution
from .analysis import build_gcal, kcycle_stats, theoretical_bound, mobility_matrix, predict_directions
from .oracle import brute_force_max_euler
from .utils import EulerDagError, UsageError, DataIOError, InvariantError

__version__ = "0.1.0"
