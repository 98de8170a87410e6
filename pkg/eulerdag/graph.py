"""
Graph core
==========

The simple directed graph every solver reads, edge sets over it, strongly connected
components and the two cycle helpers (peeling an Eulerian edge set, finding any cycle).

Vertex ids are dense ``0..n-1`` and edges are numbered in input order. The out-adjacency
of a vertex lists its edge ids in that order, which is what makes every search in this
package reproducible.
"""

from collections import deque
from typing import Iterable, List, Optional, Tuple

from logging import getLogger
logger = getLogger()

from .utils import InvariantError


class DirectedGraph:
  """Immutable simple directed graph.

  Args:
    n (int): number of vertices
    edges (Iterable[Tuple[int, int]]): ``(source, target)`` pairs, no self-loops and no
      duplicates (ingest normalises files before they get here)
  """
  __slots__ = ["n", "edges", "out_adj", "in_adj", "out_deg", "in_deg", "_index"]

  def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
    if n < 0:
      raise ValueError(f"vertex count must be non-negative, got {n}")
    self.n = n
    self.edges = []
    self.out_adj = [[] for _ in range(n)]
    self.in_adj = [[] for _ in range(n)]
    self._index = {}
    for u, v in edges:
      u, v = int(u), int(v)
      if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"edge ({u}, {v}) outside vertex range [0, {n})")
      if u == v:
        raise ValueError(f"self-loop on vertex {u}")
      if (u, v) in self._index:
        raise ValueError(f"duplicate edge ({u}, {v})")
      e = len(self.edges)
      self._index[(u, v)] = e
      self.edges.append((u, v))
      self.out_adj[u].append(e)
      self.in_adj[v].append(e)
    self.out_deg = [len(x) for x in self.out_adj]
    self.in_deg = [len(x) for x in self.in_adj]

  @property
  def m(self) -> int:
    return len(self.edges)

  def source(self, e: int) -> int:
    return self.edges[e][0]

  def target(self, e: int) -> int:
    return self.edges[e][1]

  def index(self, u: int, v: int) -> int:
    return self._index[(u, v)]

  def has_edge(self, u: int, v: int) -> bool:
    return (u, v) in self._index

  def edge_set(self):
    return set(self.edges)

  def __repr__(self):
    return f"DirectedGraph(n={self.n}, m={self.m})"


class EdgeSet:
  """Membership set over the edge ids of a host graph with ``m`` edges. Iteration is always
  in ascending edge id."""
  __slots__ = ["m", "_members"]

  def __init__(self, m: int, members: Iterable[int] = ()):
    self.m = m
    self._members = set()
    for e in members:
      self.add(e)

  @classmethod
  def full(cls, m: int):
    s = cls(m)
    s._members = set(range(m))
    return s

  def add(self, e: int):
    assert 0 <= e < self.m, f"edge id {e} outside host with {self.m} edges"
    self._members.add(e)

  def discard(self, e: int):
    self._members.discard(e)

  def update(self, es: Iterable[int]):
    for e in es:
      self.add(e)

  def difference_update(self, es: Iterable[int]):
    for e in es:
      self._members.discard(e)

  def copy(self):
    s = EdgeSet(self.m)
    s._members = set(self._members)
    return s

  def complement(self):
    s = EdgeSet(self.m)
    s._members = set(range(self.m)) - self._members
    return s

  def _check_host(self, other):
    if self.m != other.m:
      raise ValueError(f"edge sets over different hosts ({self.m} vs {other.m} edges)")

  def __or__(self, other):
    self._check_host(other)
    s = EdgeSet(self.m)
    s._members = self._members | other._members
    return s

  def __and__(self, other):
    self._check_host(other)
    s = EdgeSet(self.m)
    s._members = self._members & other._members
    return s

  def __sub__(self, other):
    self._check_host(other)
    s = EdgeSet(self.m)
    s._members = self._members - other._members
    return s

  def __contains__(self, e) -> bool:
    return e in self._members

  def __iter__(self):
    return iter(sorted(self._members))

  def __len__(self) -> int:
    return len(self._members)

  def __eq__(self, other) -> bool:
    return isinstance(other, EdgeSet) and self.m == other.m and self._members == other._members

  def __hash__(self):
    return hash((self.m, frozenset(self._members)))

  def isdisjoint(self, other) -> bool:
    return self._members.isdisjoint(other._members)

  def to_list(self) -> List[int]:
    return sorted(self._members)

  def __repr__(self):
    return f"EdgeSet(m={self.m}, size={len(self)})"


class SccPartition:
  __slots__ = ["component_id", "components", "internal_edges"]

  def __init__(self, component_id, components, internal_edges):
    self.component_id = component_id
    self.components = components
    self.internal_edges = internal_edges

  def __len__(self):
    return len(self.components)

  def nontrivial(self) -> List[int]:
    # components that hold at least one edge, the only ones a solver has to look at
    return [i for i, s in enumerate(self.internal_edges) if len(s)]

  def cross_edges(self, g: DirectedGraph) -> EdgeSet:
    cid = self.component_id
    return EdgeSet(g.m, (e for e, (u, v) in enumerate(g.edges) if cid[u] != cid[v]))


class Decomposition:
  """Partition of the host's edges into an Eulerian part and an acyclic remainder.

  ``stats`` carries the solver counters, ``components`` the per-SCC records of
  Greedy-&-Refine, ``approx`` its approximate Eulerian set and ``edge_paths`` the greedy
  path ids per edge; all of them are optional.
  """
  __slots__ = ["host", "euler", "dag", "stats", "components", "approx", "edge_paths"]

  def __init__(self, host: DirectedGraph, euler: EdgeSet, dag: EdgeSet = None, stats = None):
    self.host = host
    self.euler = euler
    self.dag = dag if dag is not None else euler.complement()
    self.stats = stats
    self.components = None
    self.approx = None
    self.edge_paths = None

  @property
  def e_euler(self) -> int:
    return len(self.euler)

  @property
  def v_euler(self) -> int:
    return vertex_count(self.host, self.euler)

  def check(self):
    g = self.host
    if self.euler.m != g.m or self.dag.m != g.m:
      raise InvariantError("decomposition edge sets do not belong to the host graph", g)
    if not self.euler.isdisjoint(self.dag) or len(self.euler) + len(self.dag) != g.m:
      raise InvariantError("euler and dag do not partition the edges", g)
    if not is_eulerian(g, self.euler):
      raise InvariantError("euler part is not Eulerian", g)
    cycle = find_any_cycle(g, self.dag)
    if cycle is not None:
      raise InvariantError(f"dag part has a cycle through edges {cycle}", g)
    return self

  def __repr__(self):
    return f"Decomposition(n={self.host.n}, m={self.host.m}, e_euler={self.e_euler})"


# ops/

def transpose(g: DirectedGraph) -> DirectedGraph:
  return DirectedGraph(g.n, ((v, u) for u, v in g.edges))


def permute(g: DirectedGraph, perm: List[int]) -> DirectedGraph:
  """relabel vertex ``u`` as ``perm[u]``; edge ids are kept so edge sets map back as is"""
  if sorted(perm) != list(range(g.n)):
    raise ValueError("perm must be a permutation of the vertex ids")
  return DirectedGraph(g.n, ((perm[u], perm[v]) for u, v in g.edges))


def scc_decompose(g: DirectedGraph) -> SccPartition:
  """Iterative Tarjan, one pass with an explicit frame stack. Components are numbered by
  their smallest member and list their members in ascending order."""
  n = g.n
  index = [-1] * n
  low = [0] * n
  on_stack = [False] * n
  stack = []
  found = []
  counter = 0
  for root in range(n):
    if index[root] != -1:
      continue
    index[root] = low[root] = counter
    counter += 1
    stack.append(root)
    on_stack[root] = True
    frames = [[root, 0]]
    while frames:
      frame = frames[-1]
      v, i = frame
      adj = g.out_adj[v]
      if i < len(adj):
        frame[1] = i + 1
        w = g.edges[adj[i]][1]
        if index[w] == -1:
          index[w] = low[w] = counter
          counter += 1
          stack.append(w)
          on_stack[w] = True
          frames.append([w, 0])
        elif on_stack[w] and index[w] < low[v]:
          low[v] = index[w]
        continue
      frames.pop()
      if frames:
        p = frames[-1][0]
        if low[v] < low[p]:
          low[p] = low[v]
      if low[v] == index[v]:
        comp = []
        while True:
          w = stack.pop()
          on_stack[w] = False
          comp.append(w)
          if w == v:
            break
        found.append(sorted(comp))

  found.sort(key = lambda c: c[0])
  component_id = [0] * n
  for i, comp in enumerate(found):
    for v in comp:
      component_id[v] = i
  internal = [EdgeSet(g.m) for _ in found]
  for e, (u, v) in enumerate(g.edges):
    if component_id[u] == component_id[v]:
      internal[component_id[u]].add(e)
  return SccPartition(component_id, found, internal)


def induced_component(g: DirectedGraph, part: SccPartition, i: int):
  """Component ``i`` as a standalone graph.

  Returns:
    (DirectedGraph, vertex_map, edge_map): local vertex ``j`` is ``vertex_map[j]`` in ``g``
    and local edge ``f`` is ``edge_map[f]``; both maps are ascending so local adjacency keeps
    the global input order.
  """
  vertex_map = list(part.components[i])
  local = {v: j for j, v in enumerate(vertex_map)}
  edge_map = list(part.internal_edges[i])
  sub = DirectedGraph(len(vertex_map), ((local[g.edges[e][0]], local[g.edges[e][1]]) for e in edge_map))
  return sub, vertex_map, edge_map


def degree_balance(g: DirectedGraph, s: Iterable[int]) -> List[int]:
  # d_O - d_I restricted to s
  balance = [0] * g.n
  for e in s:
    u, v = g.edges[e]
    balance[u] += 1
    balance[v] -= 1
  return balance


def is_eulerian(g: DirectedGraph, s: EdgeSet) -> bool:
  return not any(degree_balance(g, s))


def vertex_count(g: DirectedGraph, s: Iterable[int]) -> int:
  seen = set()
  for e in s:
    seen.update(g.edges[e])
  return len(seen)


def walk_peel(n: int, out_lists: List[List[int]], head) -> List[List[int]]:
  """Split a balanced edge collection into edge-disjoint simple cycles.

  Walks from the lowest vertex that still has an unused out-edge and cuts a cycle off
  every time the walk revisits a vertex on its current path. Works for multigraphs since
  only edge ids are consumed.

  Args:
    n (int): vertex count
    out_lists (List[List[int]]): per-vertex edge ids, consumed in list order
    head (Callable[[int], int]): target vertex of an edge id
  """
  ptr = [0] * n
  cycles = []
  for start in range(n):
    while ptr[start] < len(out_lists[start]):
      path_v = [start]
      path_e = []
      where = {start: 0}
      v = start
      while True:
        if ptr[v] == len(out_lists[v]):
          if len(path_v) == 1:
            break
          raise InvariantError(f"walk stuck at vertex {v}, edge collection is not balanced")
        e = out_lists[v][ptr[v]]
        ptr[v] += 1
        w = head(e)
        path_e.append(e)
        if w in where:
          i = where[w]
          cycles.append(path_e[i:])
          for x in path_v[i + 1:]:
            del where[x]
          del path_v[i + 1:]
          del path_e[i:]
          v = w
          if len(path_v) == 1 and ptr[start] == len(out_lists[start]):
            break
        else:
          where[w] = len(path_v)
          path_v.append(w)
          v = w
  return cycles


def peel_cycles(g: DirectedGraph, s: EdgeSet) -> List[List[int]]:
  """Edge-disjoint simple cycles whose union is exactly ``s``."""
  if not is_eulerian(g, s):
    raise ValueError("peel_cycles needs an Eulerian edge set")
  out_lists = [[e for e in adj if e in s] for adj in g.out_adj]
  cycles = walk_peel(g.n, out_lists, g.target)
  used = [e for c in cycles for e in c]
  if len(used) != len(s) or set(used) != set(s):
    raise InvariantError("peeled cycles do not cover the edge set exactly", g)
  return cycles


def find_any_cycle(g: DirectedGraph, s: EdgeSet) -> Optional[List[int]]:
  """A simple cycle inside ``s`` as a list of edge ids, or ``None`` when ``s`` is acyclic."""
  n = g.n
  color = [0] * n # 0 new, 1 on path, 2 done
  depth = [-1] * n
  for root in range(n):
    if color[root]:
      continue
    color[root] = 1
    depth[root] = 0
    frames = [[root, 0]]
    path_e = []
    while frames:
      frame = frames[-1]
      v, i = frame
      adj = g.out_adj[v]
      while i < len(adj) and adj[i] not in s:
        i += 1
      if i == len(adj):
        color[v] = 2
        frames.pop()
        if path_e:
          path_e.pop()
        continue
      frame[1] = i + 1
      e = adj[i]
      w = g.edges[e][1]
      if color[w] == 1:
        return path_e[depth[w]:] + [e]
      if color[w] == 0:
        color[w] = 1
        depth[w] = len(frames)
        frames.append([w, 0])
        path_e.append(e)
  return None


def is_acyclic(g: DirectedGraph, s: EdgeSet) -> bool:
  return find_any_cycle(g, s) is None


def topological_order(g: DirectedGraph, s: EdgeSet) -> List[int]:
  """Kahn order over the edges in ``s``, ties by ascending vertex id of discovery."""
  indeg = [0] * g.n
  for e in s:
    indeg[g.edges[e][1]] += 1
  queue = deque(v for v in range(g.n) if indeg[v] == 0)
  order = []
  while queue:
    u = queue.popleft()
    order.append(u)
    for e in g.out_adj[u]:
      if e in s:
        v = g.edges[e][1]
        indeg[v] -= 1
        if indeg[v] == 0:
          queue.append(v)
  if len(order) != g.n:
    raise InvariantError("edge set has a cycle, no topological order", g)
  return order

# /ops
