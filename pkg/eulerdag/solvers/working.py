# Working view over an immutable DirectedGraph: every edge keeps its id, reversal flips an
# orientation bit and deletion clears an active bit. Adjacency lists are append only, a
# reversed edge is appended to its new tail and the old entry goes stale through a stamp,
# so cursors into a list stay meaningful while the search mutates the graph.

from ..graph import DirectedGraph, EdgeSet


class WorkingGraph:
  __slots__ = ["g", "reversed", "active", "stamp", "out", "inn"]

  def __init__(self, g: DirectedGraph, active: EdgeSet = None):
    self.g = g
    m = g.m
    self.reversed = [False] * m
    self.active = [True] * m if active is None else [e in active for e in range(m)]
    self.stamp = [0] * m
    self.out = [[(e, 0) for e in adj if self.active[e]] for adj in g.out_adj]
    self.inn = [[(e, 0) for e in adj if self.active[e]] for adj in g.in_adj]

  def tail(self, e: int) -> int:
    u, v = self.g.edges[e]
    return v if self.reversed[e] else u

  def head(self, e: int) -> int:
    u, v = self.g.edges[e]
    return u if self.reversed[e] else v

  def weight(self, e: int) -> int:
    # +1 exactly on reversed edges
    return 1 if self.reversed[e] else -1

  def reverse(self, e: int):
    assert self.active[e], f"edge {e} is deleted"
    self.stamp[e] += 1
    self.reversed[e] = not self.reversed[e]
    s = self.stamp[e]
    self.out[self.tail(e)].append((e, s))
    self.inn[self.head(e)].append((e, s))

  def delete(self, e: int):
    self.active[e] = False
    self.stamp[e] += 1

  def out_edges(self, u: int):
    stamp = self.stamp
    return [e for e, s in self.out[u] if s == stamp[e]]

  def in_edges(self, v: int):
    stamp = self.stamp
    return [e for e, s in self.inn[v] if s == stamp[e]]

  def kept(self) -> EdgeSet:
    """active edges still in original orientation"""
    return EdgeSet(self.g.m, (e for e in range(self.g.m) if self.active[e] and not self.reversed[e]))

  def flipped(self) -> EdgeSet:
    return EdgeSet(self.g.m, (e for e in range(self.g.m) if self.active[e] and self.reversed[e]))

  def __repr__(self):
    return f"WorkingGraph(n={self.g.n}, m={self.g.m}, flipped={sum(self.reversed)})"
