from .working import WorkingGraph
from .baseline import (
  RelaxState, dfs_spfa, unwind_cycle, dfseven, simple, negative_cycle, bellman_ford_audit,
  SIMPLE_MAX_EDGES,
)
from .greedy import (
  LabelState, LSubgraph, compute_labels, l_subgraph, length_l_delete, length_l_reverse,
  greedy, greedy_d, greedy_r, move_cycles,
)
from .refine import RefineState, init_dst, refine, greedy_and_refine, greedy_decompose

ALGORITHMS = ("simple", "dfseven", "gr-d", "gr-r")

def solve(g, algo: str = "gr-r", threads: int = 1, greedy_only: bool = False, check: bool = True):
  """One entry point for every pipeline, ``algo`` is one of ``ALGORITHMS``."""
  if algo not in ALGORITHMS:
    raise ValueError(f"algo must be one of {ALGORITHMS}, got '{algo}'")
  if algo == "simple":
    return simple(g, check = check)
  if algo == "dfseven":
    return dfseven(g, check = check)
  variant = algo[-1]
  if greedy_only:
    return greedy_decompose(g, variant, threads, check = check)
  return greedy_and_refine(g, variant, threads, check = check)
