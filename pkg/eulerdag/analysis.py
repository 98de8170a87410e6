"""
Analysis
========

How far is the greedy Eulerian subgraph from the maximum one, and what do ranks say about
the graph over time.

The gap is audited on a signed multigraph: every edge missing from the greedy set comes in
reversed with weight +1, every edge missing from the maximum set comes in as is with weight
-1. The result is balanced, peels into cycles that alternate positive and negative runs, and
the total weight of those cycles is the gap. An edge missing from both sets gives a pair
that cancels to a weight-0 2-cycle; pairs are peeled first.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from logging import getLogger
logger = getLogger()

from .graph import DirectedGraph, Decomposition, EdgeSet, is_eulerian, walk_peel
from .hierarchy import Ranking, assign_ranks, order_by_rank
from .records import GeneralPath, KCycle, KCycleReport, PredictionReport
from .utils import InvariantError


class SignedMultigraph:
  """Parallel edges allowed. ``edges[i] = (source, target, weight, host_edge)``."""
  __slots__ = ["n", "edges", "expected_gap"]

  def __init__(self, n: int, edges: List[Tuple[int, int, int, int]], expected_gap: int = None):
    self.n = n
    self.edges = edges
    self.expected_gap = expected_gap

  def balance(self) -> List[int]:
    b = [0] * self.n
    for u, v, _, _ in self.edges:
      b[u] += 1
      b[v] -= 1
    return b

  def is_balanced(self) -> bool:
    return not any(self.balance())

  def __len__(self):
    return len(self.edges)

  def __repr__(self):
    return f"SignedMultigraph(n={self.n}, edges={len(self)})"


def build_gcal(g: DirectedGraph, approx: EdgeSet, exact: EdgeSet) -> SignedMultigraph:
  if not is_eulerian(g, approx) or not is_eulerian(g, exact):
    raise ValueError("both edge sets must be Eulerian subgraphs of g")
  edges = []
  for e in approx.complement():
    u, v = g.edges[e]
    edges.append((v, u, 1, e))
  for e in exact.complement():
    u, v = g.edges[e]
    edges.append((u, v, -1, e))
  mg = SignedMultigraph(g.n, edges, len(exact) - len(approx))
  if not mg.is_balanced():
    raise InvariantError("audit multigraph is not balanced", g)
  return mg


def _runs(signs: List[int]) -> Tuple[List[Tuple[int, int]], int]:
  # maximal same-sign runs of a cyclic sequence as (sign, length), rotated to start on a boundary
  k = len(signs)
  start = next(i for i in range(k) if signs[i] != signs[i - 1])
  runs = []
  for j in range(k):
    s = signs[(start + j) % k]
    if runs and runs[-1][0] == s:
      runs[-1][1] += 1
    else:
      runs.append([s, 1])
  return [(s, c) for s, c in runs], start


def kcycle_stats(mg: SignedMultigraph, edge_paths: Dict[int, List[int]] = None) -> KCycleReport:
  """Peel the audit multigraph and describe every cycle by its runs.

  Args:
    mg (SignedMultigraph): output of ``build_gcal``
    edge_paths (Dict[int, List[int]], optional): greedy path ids per host edge; when given,
      positive runs that do not sit inside a single greedy path feed the W correction
  """
  if not mg.is_balanced():
    raise ValueError("kcycle_stats needs a balanced multigraph")

  # weight-0 pairs first
  pos_of = {}
  neg_of = {}
  for i, (_, _, w, e) in enumerate(mg.edges):
    (pos_of if w > 0 else neg_of)[e] = i
  paired = set()
  cycles = []
  for e in sorted(set(pos_of) & set(neg_of)):
    paired.add(pos_of[e])
    paired.add(neg_of[e])
    cycles.append(KCycle(k = 1, delta = 1, delta_prime = 1, length = 2, cancel_pair = True))

  out_lists = [[] for _ in range(mg.n)]
  for i, (u, _, _, _) in enumerate(mg.edges):
    if i not in paired:
      out_lists[u].append(i)
  peeled = walk_peel(mg.n, out_lists, lambda i: mg.edges[i][1])

  general = []
  W = 0
  for c in peeled:
    signs = [mg.edges[i][2] for i in c]
    if all(s == signs[0] for s in signs):
      kind = "positive" if signs[0] > 0 else "negative"
      raise InvariantError(f"audit cycle of {len(c)} edges is all {kind}")
    runs, start = _runs(signs)
    delta = sum(1 for s in signs if s < 0)
    delta_prime = len(signs) - delta
    if delta_prime < delta:
      raise InvariantError(f"audit cycle with negative weight {delta_prime - delta}")
    k = sum(1 for s, _ in runs if s > 0)
    index = len(cycles)
    cycles.append(KCycle(k = k, delta = delta, delta_prime = delta_prime, length = len(c), cancel_pair = False))

    if edge_paths is None:
      continue
    shortest_negative = min(n for s, n in runs if s < 0)
    offset = start
    for s, length in runs:
      if s > 0:
        run = [mg.edges[c[(offset + j) % len(c)]][3] for j in range(length)]
        common = set(edge_paths.get(run[0], ()))
        for e in run[1:]:
          common &= set(edge_paths.get(e, ()))
        if not common:
          general.append(GeneralPath(cycle = index, w_p = length, w_u = shortest_negative))
          if length > shortest_negative:
            W += length - shortest_negative
      offset += length

  violations = [i for i, c in enumerate(cycles) if c.delta_prime > c.k * c.delta]
  if violations:
    logger.warning(f"{len(violations)} audit cycle(s) with positive weight above k times the negative weight")

  gap = sum(c.weight for c in cycles)
  if mg.expected_gap is not None and gap != mg.expected_gap:
    raise InvariantError(f"cycle weights add up to {gap}, size difference is {mg.expected_gap}")

  totals = {}
  for c in cycles:
    dp, d = totals.get(c.k, (0, 0))
    totals[c.k] = (dp + c.delta_prime, d + c.delta)
  ratio_by_k = {k: dp / d for k, (dp, d) in sorted(totals.items())}

  return KCycleReport(
    cycles = cycles,
    W = W if edge_paths is not None else None,
    K = max((c.k for c in cycles), default = 0),
    g_cal_edges = len(mg) - len(paired),
    g_cal_edges_total = len(mg),
    cancelled_pairs = len(paired) // 2,
    gap = gap,
    ratio_by_k = ratio_by_k,
    violations = violations,
    general_paths = general,
    w_is_approximation = True,
  )


def theoretical_bound(K: int, m_total: int) -> Fraction:
  """Upper bound ``(K - 1) / (K + 1) * m_total`` on the greedy gap."""
  if K < 1:
    raise ValueError(f"K must be at least 1, got {K}")
  return Fraction(K - 1, K + 1) * m_total


def audit(d: Decomposition) -> KCycleReport:
  """``kcycle_stats`` of a Greedy-&-Refine decomposition against its own greedy set."""
  if d.approx is None:
    raise ValueError("decomposition carries no greedy set, run a gr pipeline")
  return kcycle_stats(build_gcal(d.host, d.approx, d.euler), d.edge_paths)


def gap_report(d: Decomposition, report: KCycleReport = None) -> dict:
  """Measured gap next to the closed-form bound over all edges of the host."""
  report = report if report is not None else audit(d)
  bound = theoretical_bound(report.K, d.host.m) if report.K >= 1 else Fraction(0)
  return {
    "gap": report.gap,
    "K": report.K,
    "bound": float(bound),
    "within_bound": report.gap <= bound,
  }


# mobility/

def _groups(r, in_deg: List[int], groups: int) -> np.ndarray:
  order = np.asarray(order_by_rank(r, in_deg), dtype = np.int64)
  gid = np.empty(len(r), dtype = np.int64)
  # top chunk is the highest group
  for i, chunk in enumerate(np.array_split(order, groups)):
    gid[chunk] = groups - 1 - i
  return gid


def mobility_matrix(r1: Ranking, r2: Ranking, groups: int = 5, in_deg1: List[int] = None, in_deg2: List[int] = None) -> np.ndarray:
  """Row-stochastic ``groups x groups`` matrix, entry ``[i][j]`` is the share of group ``i``
  in the first ranking that sits in group ``j`` in the second."""
  n = len(r1)
  if len(r2) != n:
    raise ValueError(f"rankings cover different vertex sets ({n} vs {len(r2)})")
  if groups < 1 or n < groups:
    raise ValueError(f"cannot split {n} vertices into {groups} groups")
  in_deg1 = in_deg1 if in_deg1 is not None else (r1.host.in_deg if r1.host is not None else [0] * n)
  in_deg2 = in_deg2 if in_deg2 is not None else (r2.host.in_deg if r2.host is not None else [0] * n)
  g1 = _groups(r1, in_deg1, groups)
  g2 = _groups(r2, in_deg2, groups)
  counts = np.zeros((groups, groups), dtype = np.float64)
  np.add.at(counts, (g1, g2), 1.0)
  return counts / counts.sum(axis = 1, keepdims = True)

# /mobility


# prediction/

def predict_directions(
    training: DirectedGraph,
    test_pairs: List[Tuple[Optional[int], Optional[int]]],
    truth: List[Tuple[int, int]] = None,
    ranking: Ranking = None,
    algo: str = "gr-r",
    threads: int = 1,
  ) -> PredictionReport:
  """Orient every test pair from low rank to high rank, abstain on ties.

  Args:
    training (DirectedGraph): graph the ranks are learned on
    test_pairs (List[Tuple]): vertex pairs, ``None`` for a vertex unknown to training
    truth (List[Tuple], optional): the true directed edge of every pair, same order
    ranking (Ranking, optional): reuse ranks computed elsewhere
  """
  if ranking is None:
    from .solvers import solve
    ranking = assign_ranks(solve(training, algo, threads))
  if truth is not None and len(truth) != len(test_pairs):
    raise ValueError(f"{len(truth)} truth edges for {len(test_pairs)} pairs")

  predictions = []
  decided = correct = 0
  for i, (a, b) in enumerate(test_pairs):
    if a is None or b is None or ranking[a] == ranking[b]:
      predictions.append((a, b, None))
      continue
    edge = (a, b) if ranking[a] < ranking[b] else (b, a)
    predictions.append((a, b, edge))
    decided += 1
    if truth is not None and tuple(truth[i]) == edge:
      correct += 1

  total = len(test_pairs)
  return PredictionReport(
    predictions = predictions,
    accuracy = (correct / decided) if (truth is not None and decided) else None,
    coverage = (decided / total) if total else None,
    decided = decided,
    correct = correct,
    total = total,
  )

# /prediction


def prediction_report(report: PredictionReport) -> dict:
  return {
    "accuracy": report.accuracy,
    "coverage": report.coverage,
    "decided": report.decided,
    "correct": report.correct,
    "total": report.total,
  }
