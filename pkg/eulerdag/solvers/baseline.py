"""
Baseline solvers
================

Both solvers give every edge weight -1 and look for negative cycles; reversing one flips
its edges to +1 and grows the set of +1 edges. When no negative cycle is left the +1 edges
form a maximum Eulerian subgraph and the -1 edges are acyclic.

``simple`` runs a full Bellman-Ford per cycle, ``dfseven`` keeps its distance estimates
across cycles and searches depth first (DFS-SPFA), closing a cycle the moment the search
path meets itself.
"""

from typing import List, Optional

from logging import getLogger
logger = getLogger()

from .working import WorkingGraph
from ..graph import DirectedGraph, Decomposition, EdgeSet
from ..records import SolveStats
from ..utils import InvariantError, SizeCapError, env_int

SIMPLE_MAX_EDGES = 50000


class RelaxState:
  """Mutable state of a DFS-SPFA search over a ``WorkingGraph``.

  ``sv``/``se`` are the vertex and edge stacks of the current search path; ``se[i]`` is the
  edge from ``sv[i]`` to ``sv[i + 1]``. ``nv`` is the vertex where the last cycle closed.
  """
  __slots__ = [
    "wg", "dst", "relax", "pos", "sv", "se", "on_stack", "nv",
    "iterations", "relaxations", "edge_scans",
  ]

  def __init__(self, wg: WorkingGraph, dst: List[int] = None):
    n = wg.g.n
    self.wg = wg
    self.dst = [0] * n if dst is None else list(dst)
    self.relax = [True] * n
    self.pos = [0] * n
    self.sv = []
    self.se = []
    self.on_stack = [False] * n
    self.nv = None
    self.iterations = 0
    self.relaxations = 0
    self.edge_scans = 0

  def w(self, e: int) -> int:
    return self.wg.weight(e)

  def reset_stacks(self):
    for v in self.sv:
      self.on_stack[v] = False
    self.sv.clear()
    self.se.clear()
    self.nv = None

  def check_range(self, low: int):
    m = self.wg.g.m
    lo = min(self.dst, default = 0)
    hi = max(self.dst, default = 0)
    if lo < low or hi > 0:
      raise InvariantError(f"dst left [{low}, 0]: min={lo} max={hi} on m={m}", self.wg.g)

  def stats(self, algo: str) -> SolveStats:
    return SolveStats(
      algo = algo,
      iterations = self.iterations,
      relaxations = self.relaxations,
      edge_scans = self.edge_scans,
      min_dst = min(self.dst, default = 0),
    )


def dfs_spfa(wg: WorkingGraph, state: RelaxState, u: int) -> bool:
  """Depth first relaxation from ``u``.

  Returns True when an edge relaxes a vertex that is already on the search path; the path
  is left on ``state.sv``/``state.se`` and ``state.nv`` names the vertex the cycle closes on.
  On False every vertex touched by the call has ``relax`` cleared and the stacks are empty.
  """
  dst, relax, pos = state.dst, state.relax, state.pos
  sv, se, on_stack = state.sv, state.se, state.on_stack
  out, stamp, reversed_, edges = wg.out, wg.stamp, wg.reversed, wg.g.edges
  base = len(sv)

  sv.append(u)
  on_stack[u] = True
  while len(sv) > base:
    x = sv[-1]
    lst = out[x]
    dx = dst[x]
    descended = False
    while pos[x] < len(lst):
      e, s = lst[pos[x]]
      pos[x] += 1
      if s != stamp[e]:
        continue
      state.edge_scans += 1
      a, b = edges[e]
      if reversed_[e]:
        y, nd = a, dx + 1
      else:
        y, nd = b, dx - 1
      if nd < dst[y]:
        dst[y] = nd
        relax[y] = True
        pos[y] = 0
        state.relaxations += 1
        se.append(e)
        if on_stack[y]:
          state.nv = y
          return True
        sv.append(y)
        on_stack[y] = True
        descended = True
        break
    if descended:
      continue
    relax[x] = False
    sv.pop()
    on_stack[x] = False
    if len(sv) > base:
      se.pop() # the edge that reached x
  return False


def unwind_cycle(state: RelaxState) -> List[int]:
  """Pop the closed cycle off ``se`` and reverse it, then clear the search path."""
  wg, se, nv = state.wg, state.se, state.nv
  if nv is None or len(se) != len(state.sv):
    raise InvariantError(f"edge stack out of step with the vertex stack ({len(se)} vs {len(state.sv)})", wg.g)
  cycle = []
  while True:
    e = se.pop()
    tail = wg.tail(e)
    wg.reverse(e)
    cycle.append(e)
    if tail == nv:
      break
    if not se:
      raise InvariantError(f"cycle through vertex {nv} not found on the edge stack", wg.g)
  cycle.reverse()
  state.reset_stacks()
  state.iterations += 1
  return cycle


def dfseven(g: DirectedGraph, order: List[int] = None, check: bool = True) -> Decomposition:
  """Scan vertices in ``order`` (ascending ids by default) and run DFS-SPFA from every one
  still marked relaxable; after a cycle the scan resumes at the earliest vertex of its path."""
  order = list(range(g.n)) if order is None else list(order)
  if sorted(order) != list(range(g.n)):
    raise ValueError("order must be a permutation of the vertex ids")
  at = [0] * g.n
  for i, u in enumerate(order):
    at[u] = i

  wg = WorkingGraph(g)
  state = RelaxState(wg)
  relax = state.relax
  i = 0
  while i < g.n:
    u = order[i]
    if relax[u] and dfs_spfa(wg, state, u):
      # vertices relaxed by the call are all on the path
      low = min(at[v] for v in state.sv)
      unwind_cycle(state)
      i = min(i, low)
    else:
      i += 1

  state.check_range(-4 * g.m)
  d = Decomposition(g, wg.flipped(), wg.kept(), stats = state.stats("dfseven"))
  logger.debug(f"dfseven: {state.iterations} cycles, {state.edge_scans} edge scans, e_euler={d.e_euler}")
  if check:
    d.check()
  return d


# bellman-ford/

def negative_cycle(wg: WorkingGraph, stats: RelaxState = None) -> Optional[List[int]]:
  """Full Bellman-Ford from a virtual source tied to every vertex with weight 0.

  Returns the edge ids of a negative cycle in path order, or None. The cycle is found by
  walking predecessors back from the lowest vertex relaxed in round ``n``.
  """
  g = wg.g
  n, m = g.n, g.m
  if n == 0 or m == 0:
    return None
  dst = [0] * n
  pred = [-1] * n
  changed = []
  for _ in range(n):
    changed = []
    for e in range(m):
      if not wg.active[e]:
        continue
      u, v = wg.tail(e), wg.head(e)
      nd = dst[u] + wg.weight(e)
      if stats is not None:
        stats.edge_scans += 1
      if nd < dst[v]:
        dst[v] = nd
        pred[v] = e
        changed.append(v)
        if stats is not None:
          stats.relaxations += 1
    if not changed:
      return None

  x = min(changed)
  for _ in range(n):
    if pred[x] == -1:
      raise InvariantError(f"predecessor walk left the graph at vertex {x}", g)
    x = wg.tail(pred[x])
  cycle = []
  y = x
  while True:
    e = pred[y]
    cycle.append(e)
    y = wg.tail(e)
    if y == x:
      break
    if len(cycle) > n:
      raise InvariantError("predecessor walk did not close a cycle", g)
  cycle.reverse()
  return cycle


def bellman_ford_audit(g: DirectedGraph, euler: EdgeSet) -> Optional[List[int]]:
  """Negative cycle left under the final weights (+1 on ``euler`` reversed, -1 elsewhere)."""
  wg = WorkingGraph(g)
  for e in euler:
    wg.reverse(e)
  return negative_cycle(wg)

# /bellman-ford


def simple(g: DirectedGraph, cap: int = None, check: bool = True) -> Decomposition:
  """Reverse negative cycles found by a fresh Bellman-Ford until there are none. Quadratic
  in the number of edges per cycle, only meant for small graphs.

  Raises:
    SizeCapError: when ``g`` has more edges than ``cap`` (``EULERDAG_SIMPLE_CAP`` or 50,000)
  """
  cap = cap if cap is not None else env_int("EULERDAG_SIMPLE_CAP", SIMPLE_MAX_EDGES)
  if g.m > cap:
    raise SizeCapError("simple", g.m, cap)

  wg = WorkingGraph(g)
  state = RelaxState(wg)
  while True:
    cycle = negative_cycle(wg, state)
    if cycle is None:
      break
    for e in cycle:
      wg.reverse(e)
    state.iterations += 1

  d = Decomposition(g, wg.flipped(), wg.kept(), stats = state.stats("simple"))
  logger.debug(f"simple: {state.iterations} cycles, e_euler={d.e_euler}")
  if check:
    d.check()
  return d
