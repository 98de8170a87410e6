"""
Refine
======

Second phase of Greedy-&-Refine. The greedy Eulerian subgraph starts out reversed (+1), the
rest keeps -1, and DFS-SPFA runs from a queue of candidate vertices until no negative cycle
is left. Distances start from one topological pass over the acyclic remainder so that no
remainder edge can be relaxed before its tail has been.

``greedy_and_refine`` runs both phases on every strongly connected component; edges between
components never lie on a cycle and go straight to the DAG part.
"""

from collections import deque
from typing import List

from logging import getLogger
logger = getLogger()

from .baseline import RelaxState, dfs_spfa, unwind_cycle
from .greedy import greedy, move_cycles, VARIANTS
from .working import WorkingGraph
from ..graph import (
  DirectedGraph, Decomposition, EdgeSet, induced_component, is_eulerian,
  scc_decompose, topological_order,
)
from ..records import ComponentRecord, SolveStats
from ..utils import InvariantError, run_many


class RefineState(RelaxState):
  __slots__ = ["queue"]

  def __init__(self, wg: WorkingGraph, dst: List[int] = None):
    super().__init__(wg, dst)
    self.queue = deque(range(wg.g.n))


def init_dst(g: DirectedGraph, residual: EdgeSet) -> List[int]:
  """0 on sources of the residual and on vertices it does not touch, otherwise the minimum
  of ``dst(v) - 1`` over residual in-edges ``(v, u)``."""
  order = topological_order(g, residual)
  dst = [0] * g.n
  for u in order:
    best = 0
    first = True
    for e in g.in_adj[u]:
      if e in residual:
        d = dst[g.edges[e][0]] - 1
        if first or d < best:
          best = d
          first = False
    dst[u] = best

  for e in residual:
    v, u = g.edges[e]
    if dst[u] > dst[v] - 1:
      raise InvariantError(f"residual edge ({v}, {u}) is relaxable right after init_dst", g)
  return dst


def refine(approx: EdgeSet, g: DirectedGraph, check: bool = True) -> Decomposition:
  if not is_eulerian(g, approx):
    raise InvariantError("refine needs an Eulerian starting set", g)
  wg = WorkingGraph(g)
  for e in approx:
    wg.reverse(e)
  state = RefineState(wg, init_dst(g, approx.complement()))

  queue, relax = state.queue, state.relax
  while queue:
    u = queue[0]
    if relax[u] and dfs_spfa(wg, state, u):
      snapshot = list(state.sv)
      unwind_cycle(state)
      queue.extend(snapshot) # duplicates are fine, they fail fast on relax == False
    else:
      queue.popleft()

  state.check_range(-4 * g.m)
  d = Decomposition(g, wg.flipped(), wg.kept(), stats = state.stats("refine"))
  if check:
    d.check()
  return d


# pipeline/

def _solve_component(g: DirectedGraph, part, i: int, variant: str, refine_phase: bool = True):
  sub, vertex_map, edge_map = induced_component(g, part, i)
  trace = greedy(sub, variant)
  _, approx = move_cycles(sub, trace.approx.complement(), trace.approx)
  if refine_phase:
    local = refine(approx, sub, check = False)
    refine_iterations = local.stats.iterations
  else:
    local = Decomposition(sub, approx)
    refine_iterations = 0
  record = ComponentRecord(
    component_id = i,
    n = sub.n,
    m = sub.m,
    greedy_size = len(trace.approx),
    moved_edges = len(approx) - len(trace.approx),
    e_euler = local.e_euler,
    refine_iterations = refine_iterations,
    l_max = trace.l_max,
    paths_per_l = dict(trace.paths_per_l),
  )
  return record, local, approx, trace, edge_map


def _assemble(g: DirectedGraph, comps, results, algo: str) -> Decomposition:
  euler = EdgeSet(g.m)
  approx = EdgeSet(g.m)
  edge_paths = {}
  records = []
  stats = SolveStats(algo = algo, iterations = 0, relaxations = 0, edge_scans = 0, min_dst = 0)
  offset = 0
  for record, local, local_approx, trace, edge_map in results:
    euler.update(edge_map[e] for e in local.euler)
    approx.update(edge_map[e] for e in local_approx)
    for e, pids in trace.edge_paths.items():
      edge_paths[edge_map[e]] = [p + offset for p in pids]
    offset += len(trace.paths)
    records.append(record)
    if local.stats is not None:
      stats.iterations += local.stats.iterations
      stats.relaxations += local.stats.relaxations
      stats.edge_scans += local.stats.edge_scans
      stats.min_dst = min(stats.min_dst, local.stats.min_dst)

  d = Decomposition(g, euler, stats = stats)
  d.components = records
  d.approx = approx
  d.edge_paths = edge_paths
  logger.debug(f"{algo}: {len(comps)} non-trivial components, e_euler={d.e_euler}, greedy={len(approx)}")
  return d


def greedy_and_refine(g: DirectedGraph, variant: str = "r", threads: int = 1, check: bool = True) -> Decomposition:
  """SCC split, then greedy, cycle moving and refine per component.

  Args:
    g (DirectedGraph): input graph
    variant (str): ``"d"`` deletes pn-paths, ``"r"`` reverses them
    threads (int): components solved side by side, output does not depend on it
    check (bool): run the decomposition invariants on the result
  """
  if variant not in VARIANTS:
    raise ValueError(f"variant must be one of {VARIANTS}, got '{variant}'")
  part = scc_decompose(g)
  comps = part.nontrivial()
  results = run_many(_solve_component, [(g, part, i, variant) for i in comps], threads)
  d = _assemble(g, comps, results, f"gr-{variant}")
  if check:
    d.check()
  return d


def greedy_decompose(g: DirectedGraph, variant: str = "r", threads: int = 1, check: bool = True) -> Decomposition:
  """Greedy and cycle moving without refine: a valid decomposition, not always maximum.
  Cheaper approximate hierarchy for graphs where refine is too slow."""
  if variant not in VARIANTS:
    raise ValueError(f"variant must be one of {VARIANTS}, got '{variant}'")
  part = scc_decompose(g)
  comps = part.nontrivial()
  results = run_many(_solve_component, [(g, part, i, variant, False) for i in comps], threads)
  d = _assemble(g, comps, results, f"greedy-{variant}")
  if check:
    d.check()
  return d

# /pipeline
