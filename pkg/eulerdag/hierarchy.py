"""
Hierarchy
=========

Ranks come from the DAG part of a decomposition: every vertex gets the smallest
non-negative rank with ``r(u) < r(v)`` on each DAG edge ``(u, v)``, i.e. its longest-path
level. Edges point from low rank to high rank, a follower points at whom it follows.

.. code-block:: python

  d = greedy_and_refine(g, "r")
  r = assign_ranks(d)
  rank_distribution(r).fractions # bottom heavy for social graphs
  agony(g, r) >= d.e_euler       # always
"""

import math
from collections import deque
from typing import Iterable, List, Set, Tuple

import numpy as np

from logging import getLogger
logger = getLogger()

from .graph import DirectedGraph, Decomposition, scc_decompose, topological_order
from .records import RankHistogram
from .utils import InvariantError


class Ranking:
  __slots__ = ["r", "host"]

  def __init__(self, r: List[int], host: DirectedGraph = None):
    self.r = list(r)
    self.host = host

  def __len__(self):
    return len(self.r)

  def __getitem__(self, u):
    return self.r[u]

  def __iter__(self):
    return iter(self.r)

  @property
  def max_rank(self) -> int:
    return max(self.r, default = -1)

  def to_list(self) -> List[int]:
    return list(self.r)

  def __repr__(self):
    return f"Ranking(n={len(self)}, max_rank={self.max_rank})"


def _levels(n: int, edges: Iterable[Tuple[int, int]]) -> List[int]:
  # longest-path levels of an acyclic edge list
  out = [[] for _ in range(n)]
  indeg = [0] * n
  for u, v in edges:
    out[u].append(v)
    indeg[v] += 1
  level = [0] * n
  queue = deque(u for u in range(n) if indeg[u] == 0)
  seen = 0
  while queue:
    u = queue.popleft()
    seen += 1
    for v in out[u]:
      if level[u] + 1 > level[v]:
        level[v] = level[u] + 1
      indeg[v] -= 1
      if indeg[v] == 0:
        queue.append(v)
  if seen != n:
    raise InvariantError("levelling an edge list that has a cycle")
  return level


def assign_ranks(d: Decomposition) -> Ranking:
  g = d.host
  order = topological_order(g, d.dag)
  r = [0] * g.n
  for u in order:
    for e in g.out_adj[u]:
      if e in d.dag:
        v = g.edges[e][1]
        if r[u] + 1 > r[v]:
          r[v] = r[u] + 1
  for e in d.dag:
    u, v = g.edges[e]
    if not r[u] < r[v]:
      raise InvariantError(f"rank order broken on dag edge ({u}, {v})", g)
  return Ranking(r, g)


def agony(g: DirectedGraph, r) -> int:
  """Sum over edges of ``max(r(u) - r(v) + 1, 0)``."""
  total = 0
  for u, v in g.edges:
    x = r[u] - r[v] + 1
    if x > 0:
      total += x
  return total


def rank_distribution(r: Ranking, g: DirectedGraph = None) -> RankHistogram:
  g = g if g is not None else r.host
  n = len(r)
  counts = [0] * (r.max_rank + 1)
  for x in r:
    counts[x] += 1
  fractions = [c / n for c in counts] if n else []

  degree_summary = None
  if g is not None:
    if g.n != n:
      raise ValueError(f"ranking covers {n} vertices, graph has {g.n}")
    sums = [0] * len(counts)
    for u in range(n):
      sums[r[u]] += g.in_deg[u] - g.out_deg[u]
    degree_summary = [s / c for s, c in zip(sums, counts)]
  return RankHistogram(counts = counts, fractions = fractions, degree_summary = degree_summary)


# queries/

def _dag_reach(d: Decomposition, v: int) -> Set[int]:
  g = d.host
  seen = {v}
  queue = deque([v])
  while queue:
    x = queue.popleft()
    for e in g.out_adj[x]:
      if e in d.dag:
        y = g.edges[e][1]
        if y not in seen:
          seen.add(y)
          queue.append(y)
  return seen


def strictly_higher(d: Decomposition, r: Ranking, u: int, v: int) -> bool:
  """``u`` ranks above ``v`` and ``u`` is reachable from ``v`` in the DAG part."""
  if u == v or r[u] <= r[v]:
    return False
  return u in _dag_reach(d, v)


def strictly_higher_pairs(d: Decomposition, r: Ranking) -> Set[Tuple[int, int]]:
  # every (u, v) with u strictly higher than v
  pairs = set()
  for v in range(d.host.n):
    for u in _dag_reach(d, v):
      if r[u] > r[v]:
        pairs.add((u, v))
  return pairs


def order_by_rank(r, in_deg: List[int]) -> List[int]:
  """Vertices top first: rank descending, then in-degree descending, then id ascending."""
  return sorted(range(len(r)), key = lambda u: (-r[u], -in_deg[u], u))


def top_fraction(r: Ranking, p: float, g: DirectedGraph = None) -> List[int]:
  if not 0 <= p <= 1:
    raise ValueError(f"fraction must be in [0, 1], got {p}")
  g = g if g is not None else r.host
  in_deg = g.in_deg if g is not None else [0] * len(r)
  k = math.ceil(p * len(r))
  return order_by_rank(r, in_deg)[:k]

# /queries


# baselines/

def baseline_ranking(g: DirectedGraph, kind: str = "scc", seed: int = 0) -> Ranking:
  """Comparison hierarchies.

  ``scc``: every vertex takes the level of its component in the condensation.
  ``random``: keep the edges that go forward in a random vertex order and level those.
  """
  if kind == "scc":
    part = scc_decompose(g)
    cid = part.component_id
    quotient = {(cid[u], cid[v]) for u, v in g.edges if cid[u] != cid[v]}
    level = _levels(len(part), sorted(quotient))
    return Ranking([level[cid[u]] for u in range(g.n)], g)
  if kind == "random":
    rng = np.random.default_rng(seed)
    position = np.empty(g.n, dtype = np.int64)
    position[rng.permutation(g.n)] = np.arange(g.n)
    kept = [(u, v) for u, v in g.edges if position[u] < position[v]]
    return Ranking(_levels(g.n, kept), g)
  raise ValueError(f"unknown baseline '{kind}', use 'scc' or 'random'")

# /baselines
