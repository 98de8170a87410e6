"""
Synthetic graphs
================

Seeded generators standing in for datasets that cannot be shipped: random digraphs for the
oracle checks, graphs with a planted hierarchy for direction recovery, and drifting
snapshot series for mobility. Same arguments and seed, same edges in the same order.

.. code-block:: python

  edges, levels = planted_hierarchy(200, levels = 4, m = 1200, noise = 0.1, seed = 3)
  train, test = split_edges(edges, 0.8, seed = 3)
"""

from typing import Iterator, List, Tuple

import numpy as np

from logging import getLogger
logger = getLogger()

from .graph import DirectedGraph


def _rng(seed, *stream) -> np.random.Generator:
  return np.random.default_rng([seed, *stream]) if stream else np.random.default_rng(seed)


def random_digraph(n: int, m: int, seed: int = 0) -> DirectedGraph:
  """Simple digraph with ``min(m, n(n - 1))`` distinct edges in random order."""
  if n < 0 or m < 0:
    raise ValueError(f"n and m must be non-negative, got n={n} m={m}")
  space = n * (n - 1)
  m = min(m, space)
  if m == 0:
    return DirectedGraph(n, [])
  rng = _rng(seed)
  picks = rng.choice(space, size = m, replace = False)
  u = picks // (n - 1)
  r = picks % (n - 1)
  v = np.where(r < u, r, r + 1)
  return DirectedGraph(n, zip(u.tolist(), v.tolist()))


def random_instances(count: int, max_edges: int, seed: int = 0, max_vertices: int = 8) -> Iterator[DirectedGraph]:
  """``count`` random digraphs of mixed density, sparse ones split into several components."""
  for i in range(count):
    rng = _rng(seed, i)
    n = int(rng.integers(2, max_vertices + 1))
    m = int(rng.integers(0, min(max_edges, n * (n - 1)) + 1))
    yield random_digraph(n, m, seed = int(rng.integers(0, 2 ** 31)))


def _planted_levels(n: int, levels: int, rng) -> np.ndarray:
  # bottom heavy, each level about half the size of the one below
  p = 0.5 ** np.arange(levels)
  return rng.choice(levels, size = n, p = p / p.sum())


def _hierarchy_edges(level: np.ndarray, m: int, noise: float, rng, allowed = None, taken = None) -> List[Tuple[int, int]]:
  # edges go from a lower level to a higher one; a noise share is flipped
  n = len(level)
  taken = set() if taken is None else taken
  edges = []
  budget = 50 * max(m, 1)
  while len(edges) < m and budget > 0:
    batch = max(m - len(edges), 16)
    budget -= batch
    us = rng.integers(0, n, size = batch)
    vs = rng.integers(0, n, size = batch)
    flips = rng.random(batch) < noise
    for u, v, flip in zip(us.tolist(), vs.tolist(), flips.tolist()):
      if level[u] >= level[v]:
        continue
      if allowed is not None and not (allowed[u] or allowed[v]):
        continue
      if flip:
        u, v = v, u
      if (u, v) in taken or (v, u) in taken:
        continue
      taken.add((u, v))
      edges.append((u, v))
      if len(edges) == m:
        break
  if len(edges) < m:
    logger.warning(f"planted hierarchy: only {len(edges)} of {m} edges fit")
  return edges


def planted_hierarchy(n: int, levels: int, m: int, noise: float = 0.1, seed: int = 0) -> Tuple[List[Tuple[int, int]], List[int]]:
  """Edges over ``n`` vertices spread on ``levels`` levels, returned with the planted levels.

  Args:
    noise (float): share of edges that point from a higher level to a lower one
  """
  if levels < 2:
    raise ValueError(f"need at least 2 levels, got {levels}")
  if not 0 <= noise <= 1:
    raise ValueError(f"noise must be in [0, 1], got {noise}")
  rng = _rng(seed)
  level = _planted_levels(n, levels, rng)
  edges = _hierarchy_edges(level, m, noise, rng)
  return edges, level.tolist()


def drift_series(n: int, levels: int, m: int, steps: int, rate: float, seed: int = 0, noise: float = 0.1) -> List[Tuple[List[Tuple[int, int]], List[int]]]:
  """``steps`` snapshots of one vertex universe. Each step moves a ``rate`` share of the
  vertices to a random level and redraws their edges, everything else stays."""
  if not 0 <= rate <= 1:
    raise ValueError(f"rate must be in [0, 1], got {rate}")
  rng = _rng(seed)
  level = _planted_levels(n, levels, rng)
  edges = _hierarchy_edges(level, m, noise, rng)
  series = [(list(edges), level.tolist())]
  for _ in range(1, steps):
    level = level.copy()
    moved = np.zeros(n, dtype = bool)
    count = int(round(rate * n))
    if count:
      who = rng.choice(n, size = count, replace = False)
      moved[who] = True
      level[who] = rng.integers(0, levels, size = count)
    kept = [(u, v) for u, v in edges if not (moved[u] or moved[v])]
    fresh = _hierarchy_edges(level, m - len(kept), noise, rng, allowed = moved, taken = set(kept))
    edges = kept + fresh
    series.append((list(edges), level.tolist()))
  return series


def split_edges(edges: List[Tuple[int, int]], train_fraction: float = 0.8, seed: int = 0) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
  if not 0 <= train_fraction <= 1:
    raise ValueError(f"train_fraction must be in [0, 1], got {train_fraction}")
  rng = _rng(seed)
  order = rng.permutation(len(edges))
  cut = int(round(train_fraction * len(edges)))
  train = [edges[i] for i in sorted(order[:cut].tolist())]
  test = [edges[i] for i in sorted(order[cut:].tolist())]
  return train, test
