"""
Greedy
======

First phase of Greedy-&-Refine. A vertex label is ``d_O - d_I`` over the kept edges; while
some label is positive, the shortest paths from positive to negative vertices (pn-paths)
are removed, shortest first. Greedy-D deletes them, Greedy-R reverses them so a later path
may hand an edge back. The kept edges end up Eulerian.

For every length ``l`` the search is restricted to the l-Subgraph: vertices whose BFS
distance from the positive side plus distance to the negative side is exactly ``l``, and
edges that step one level forward. Every pn-path of length ``l`` lives in it.
"""

from collections import deque
from typing import List, Tuple

from logging import getLogger
logger = getLogger()

from .working import WorkingGraph
from ..graph import DirectedGraph, EdgeSet, find_any_cycle, is_eulerian
from ..records import GreedyResult
from ..utils import InvariantError

DELETE = "d"
REVERSE = "r"
VARIANTS = (DELETE, REVERSE)


class LabelState:
  """Per-vertex labels plus the two BFS levellings of the last l-Subgraph built."""
  __slots__ = ["label", "level", "rlevel", "N"]

  def __init__(self, label: List[int]):
    self.label = label
    self.level = None
    self.rlevel = None
    self.N = sum(x for x in label if x > 0)

  def positive(self) -> List[int]:
    return [u for u, x in enumerate(self.label) if x > 0]

  def negative(self) -> List[int]:
    return [u for u, x in enumerate(self.label) if x < 0]


class LSubgraph:
  __slots__ = ["l", "level", "rlevel", "keep", "adj", "m"]

  def __init__(self, l, level, rlevel, keep, adj):
    self.l = l
    self.level = level
    self.rlevel = rlevel
    self.keep = keep
    self.adj = adj
    self.m = sum(len(x) for x in adj)

  def edges(self) -> List[int]:
    return sorted(e for adj in self.adj for e in adj)


def compute_labels(wg: WorkingGraph) -> LabelState:
  label = [0] * wg.g.n
  for e, (u, v) in enumerate(wg.g.edges):
    if wg.active[e] and not wg.reversed[e]:
      label[u] += 1
      label[v] -= 1
  return LabelState(label)


def _bfs(n: int, sources: List[int], lists, stamp, end) -> List[int]:
  # unreached vertices stay at -1
  dist = [-1] * n
  queue = deque(sources)
  for s in sources:
    dist[s] = 0
  while queue:
    x = queue.popleft()
    dx = dist[x] + 1
    for e, s in lists[x]:
      if s != stamp[e]:
        continue
      y = end(e)
      if dist[y] == -1:
        dist[y] = dx
        queue.append(y)
  return dist


def l_subgraph(wg: WorkingGraph, labels: LabelState, l: int) -> LSubgraph:
  assert l >= 1, "l-Subgraph needs l >= 1"
  n = wg.g.n
  level = _bfs(n, labels.positive(), wg.out, wg.stamp, wg.head)
  rlevel = _bfs(n, labels.negative(), wg.inn, wg.stamp, wg.tail)
  labels.level = level
  labels.rlevel = rlevel

  keep = [level[u] >= 0 and rlevel[u] >= 0 and level[u] + rlevel[u] == l for u in range(n)]
  adj = [[] for _ in range(n)]
  for u in range(n):
    if not keep[u]:
      continue
    for e in wg.out_edges(u):
      v = wg.head(e)
      if keep[v] and level[v] == level[u] + 1:
        adj[u].append(e)
  return LSubgraph(l, level, rlevel, keep, adj)


def _length_l(wg: WorkingGraph, labels: LabelState, gl: LSubgraph, mode: str, trace: GreedyResult = None) -> int:
  """Remove every pn-path of length ``gl.l``; each G_l edge is looked at once per call."""
  l = gl.l
  label, level = labels.label, gl.level
  n = wg.g.n
  queue = deque(u for u in range(n) if gl.keep[u] and level[u] == 0 and label[u] > 0)
  cur = [0] * n
  traversed = 0
  found = 0
  while queue:
    u = queue[0]
    if label[u] <= 0:
      queue.popleft()
      continue

    path = None
    stack_v = [u]
    stack_e = []
    while stack_v:
      x = stack_v[-1]
      if level[x] == l:
        if label[x] < 0:
          path = list(stack_e)
          break
        stack_v.pop()
        stack_e.pop()
        continue
      adj = gl.adj[x]
      if cur[x] < len(adj):
        e = adj[cur[x]]
        cur[x] += 1
        traversed += 1
        stack_v.append(wg.head(e))
        stack_e.append(e)
      else:
        stack_v.pop()
        if stack_e:
          stack_e.pop()

    if path is None:
      queue.popleft()
      continue

    v = stack_v[-1]
    for e in path:
      if mode == DELETE:
        wg.delete(e)
      else:
        wg.reverse(e)
    label[u] -= 1
    label[v] += 1
    labels.N -= 1
    found += 1
    if trace is not None:
      pid = len(trace.paths)
      trace.paths.append(path)
      for e in path:
        trace.edge_paths.setdefault(e, []).append(pid)
    if label[u] == 0:
      queue.popleft()

  if traversed > gl.m:
    raise InvariantError(f"length-{l} pass looked at {traversed} edges of a {gl.m}-edge l-Subgraph", wg.g)
  return found


def length_l_delete(wg: WorkingGraph, labels: LabelState, l: int, trace: GreedyResult = None) -> int:
  return _length_l(wg, labels, l_subgraph(wg, labels, l), DELETE, trace)


def length_l_reverse(wg: WorkingGraph, labels: LabelState, l: int, trace: GreedyResult = None) -> int:
  return _length_l(wg, labels, l_subgraph(wg, labels, l), REVERSE, trace)


def greedy(g: DirectedGraph, variant: str = REVERSE) -> GreedyResult:
  """Greedy-D (``variant="d"``) or Greedy-R (``variant="r"``) on one strongly connected graph.

  Returns:
    GreedyResult: ``approx`` is the kept edge set (Eulerian), ``l_max`` the longest path
    length that removed anything, ``paths_per_l`` how many paths each length removed
  """
  if variant not in VARIANTS:
    raise ValueError(f"variant must be one of {VARIANTS}, got '{variant}'")
  wg = WorkingGraph(g)
  labels = compute_labels(wg)
  trace = GreedyResult(variant = variant, l_max = 0, paths_per_l = {}, paths = [], edge_paths = {})
  step = length_l_delete if variant == DELETE else length_l_reverse

  l = 0
  while labels.N > 0:
    l += 1
    if l > g.n:
      raise InvariantError(f"pn-path length {l} exceeds {g.n} vertices, input is not strongly connected?", g)
    found = step(wg, labels, l, trace)
    if found:
      trace.paths_per_l[l] = found
      trace.l_max = l

  if any(labels.label):
    raise InvariantError("labels left non-zero after the greedy loop", g)
  trace.approx = wg.kept()
  if not is_eulerian(g, trace.approx):
    raise InvariantError("greedy output is not Eulerian", g)
  return trace


def greedy_d(g: DirectedGraph) -> GreedyResult:
  return greedy(g, DELETE)


def greedy_r(g: DirectedGraph) -> GreedyResult:
  return greedy(g, REVERSE)


def move_cycles(g: DirectedGraph, residual: EdgeSet, euler: EdgeSet) -> Tuple[EdgeSet, EdgeSet]:
  """Move cycles of ``residual`` into ``euler`` until the residual is acyclic."""
  residual = residual.copy()
  euler = euler.copy()
  while True:
    cycle = find_any_cycle(g, residual)
    if cycle is None:
      break
    residual.difference_update(cycle)
    euler.update(cycle)
  return residual, euler
