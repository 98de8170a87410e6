"""
Oracle
======

Exhaustive maximum Eulerian subgraph for small graphs, the ground truth the solvers are
tested against. Edge subsets are enumerated as bitmasks in vectorised chunks; a subset is
Eulerian when the signed incidence matrix times its indicator vector is zero.

Two prunings never change the answer: only edges inside one strongly connected component
can be on a cycle, so components are enumerated apart and their optima added up; and an
edge whose tail has no in-edge or whose head has no out-edge among the candidates is in
no Eulerian subset. With ``prune`` on, masks no larger than the best so far are skipped.
"""

from typing import List, Tuple

import numpy as np

from logging import getLogger
logger = getLogger()

from .graph import DirectedGraph, EdgeSet, scc_decompose
from .records import OracleResult
from .utils import SizeCapError, InvariantError, run_many

ORACLE_MAX_EDGES = 20
CHUNK = 1 << 15


def _candidates(g: DirectedGraph, edges: List[int]) -> List[int]:
  # drop edges that cannot close a cycle, repeat until nothing changes
  alive = list(edges)
  while True:
    indeg = {}
    outdeg = {}
    for e in alive:
      u, v = g.edges[e]
      outdeg[u] = outdeg.get(u, 0) + 1
      indeg[v] = indeg.get(v, 0) + 1
    keep = [e for e in alive if indeg.get(g.edges[e][0], 0) and outdeg.get(g.edges[e][1], 0)]
    if len(keep) == len(alive):
      return keep
    alive = keep


def _incidence(g: DirectedGraph, edges: List[int]) -> np.ndarray:
  verts = sorted({x for e in edges for x in g.edges[e]})
  col = {v: i for i, v in enumerate(verts)}
  B = np.zeros((len(edges), max(len(verts), 1)), dtype = np.int32)
  for i, e in enumerate(edges):
    u, v = g.edges[e]
    B[i, col[u]] += 1
    B[i, col[v]] -= 1
  return B


def _scan(B: np.ndarray, start: int, stop: int, prune: bool) -> Tuple[int, int, int]:
  """Best ``(size, mask, examined)`` over masks in ``[start, stop)``, ties to the smaller mask."""
  k = B.shape[0]
  shifts = np.arange(k, dtype = np.int64)
  best, best_mask, examined = 0, 0, 0
  for lo in range(start, stop, CHUNK):
    masks = np.arange(lo, min(lo + CHUNK, stop), dtype = np.int64)
    bits = ((masks[:, None] >> shifts) & 1).astype(np.int32)
    sizes = bits.sum(axis = 1)
    if prune:
      sel = sizes > best
      masks, bits, sizes = masks[sel], bits[sel], sizes[sel]
    examined += len(masks)
    if not len(masks):
      continue
    ok = ~(bits @ B).any(axis = 1)
    scored = np.where(ok, sizes, -1)
    i = int(np.argmax(scored))
    if scored[i] > best:
      best, best_mask = int(scored[i]), int(masks[i])
  return best, best_mask, examined


def _best_subset(g: DirectedGraph, edges: List[int], prune: bool, threads: int) -> Tuple[int, List[int], int]:
  if prune:
    edges = _candidates(g, edges)
  k = len(edges)
  if k == 0:
    return 0, [], 1
  B = _incidence(g, edges)
  total = 1 << k
  if threads > 1 and total > CHUNK:
    step = -(-total // threads)
    ranges = [(B, lo, min(lo + step, total), prune) for lo in range(0, total, step)]
  else:
    ranges = [(B, 0, total, prune)]
  best, best_mask, examined = 0, 0, 0
  for size, mask, seen in run_many(_scan, ranges, threads):
    examined += seen
    # ranges come back in order, so strict > keeps the smallest mask
    if size > best:
      best, best_mask = size, mask
  return best, [edges[i] for i in range(k) if best_mask >> i & 1], examined


def brute_force_max_euler(
    g: DirectedGraph,
    cap: int = None,
    prune: bool = True,
    split_scc: bool = True,
    threads: int = 1,
  ) -> OracleResult:
  """Size of the maximum Eulerian subgraph by exhaustive search.

  Args:
    g (DirectedGraph): graph with at most ``cap`` edges
    cap (int, optional): size limit, defaults to 20, never above 20
    prune (bool): skip subsets that cannot beat the best so far
    split_scc (bool): enumerate every strongly connected component on its own
    threads (int): split the mask range across workers

  Returns:
    OracleResult: ``best_size``, ``witness`` (an edge set of that size) and ``subsets_examined``

  Raises:
    SizeCapError: if ``g.m`` is above the cap
  """
  cap = ORACLE_MAX_EDGES if cap is None else min(cap, ORACLE_MAX_EDGES)
  if g.m > cap:
    raise SizeCapError("oracle", g.m, cap)

  if split_scc:
    part = scc_decompose(g)
    groups = [part.internal_edges[i] for i in part.nontrivial()]
  else:
    groups = [list(range(g.m))]

  best = 0
  witness = EdgeSet(g.m)
  examined = 0
  for edges in groups:
    size, chosen, seen = _best_subset(g, list(edges), prune, threads)
    best += size
    witness.update(chosen)
    examined += seen

  if len(witness) != best:
    raise InvariantError(f"oracle witness has {len(witness)} edges, best size is {best}", g)
  logger.debug(f"oracle: m={g.m} best={best} examined={examined}")
  return OracleResult(best_size = best, witness = witness, subsets_examined = examined)
