"""
Ingest
======

SNAP style edge lists in and out. One edge per line as ``src dst`` separated by any run of
spaces or tabs, ``#`` comments and blank lines are skipped. Labels are arbitrary tokens and
get dense vertex ids in order of first appearance.

.. code-block::

  # n=3 m=2
  alice bob
  bob carol

Self-loops and repeated edges are dropped and counted, the graph core only holds simple
graphs.
"""

from typing import Iterable, List, Optional, Tuple

from logging import getLogger
logger = getLogger()

from .graph import DirectedGraph, Decomposition
from .utils import DataIOError, ParseError, UsageError


class VertexNameMap:
  """Bijection between external labels and dense vertex ids."""
  __slots__ = ["labels", "_ids"]

  def __init__(self, labels: Iterable[str] = ()):
    self.labels = []
    self._ids = {}
    for x in labels:
      self.intern(x)

  def intern(self, label: str) -> int:
    i = self._ids.get(label)
    if i is None:
      i = len(self.labels)
      self._ids[label] = i
      self.labels.append(label)
    return i

  def get(self, label: str, default = None) -> Optional[int]:
    return self._ids.get(label, default)

  def label(self, i: int) -> str:
    return self.labels[i]

  def __contains__(self, label) -> bool:
    return label in self._ids

  def __len__(self) -> int:
    return len(self.labels)

  def __eq__(self, other) -> bool:
    return isinstance(other, VertexNameMap) and self.labels == other.labels

  def __repr__(self):
    return f"VertexNameMap(n={len(self)})"


class SnapshotSeries:
  __slots__ = ["names", "graphs"]

  def __init__(self, names: VertexNameMap, graphs: List[DirectedGraph]):
    self.names = names
    self.graphs = graphs

  def __len__(self):
    return len(self.graphs)

  def __getitem__(self, i):
    return self.graphs[i]


# parse/

def parse_edge_list(lines: Iterable[str], path: str = "<stream>") -> Tuple[DirectedGraph, VertexNameMap]:
  names = VertexNameMap()
  edges = []
  seen = set()
  self_loops = 0
  duplicates = 0
  for lineno, line in enumerate(lines, start = 1):
    tokens = line.split()
    if not tokens or tokens[0].startswith("#"):
      continue
    if len(tokens) != 2:
      raise ParseError(f"expected 'src dst', got {len(tokens)} tokens", lineno, path)
    u = names.intern(tokens[0])
    v = names.intern(tokens[1])
    if u == v:
      self_loops += 1
      continue
    if (u, v) in seen:
      duplicates += 1
      continue
    seen.add((u, v))
    edges.append((u, v))

  if self_loops or duplicates:
    logger.warning(f"{path}: dropped {self_loops} self-loop(s) and {duplicates} duplicate edge(s)")
  g = DirectedGraph(len(names), edges)
  logger.debug(f"{path}: n={g.n} m={g.m}")
  return g, names


def read_edge_list(path: str) -> Tuple[DirectedGraph, VertexNameMap]:
  try:
    with open(path, "r", encoding = "utf-8") as f:
      return parse_edge_list(f, path)
  except OSError as e:
    raise DataIOError(f"cannot read '{path}': {e}") from e
  except UnicodeDecodeError as e:
    raise DataIOError(f"'{path}' is not utf-8 text: {e}") from e


def read_pairs(path: str, names: VertexNameMap = None) -> List[Tuple]:
  """Test pairs for direction recovery, same line format as an edge list. With ``names``
  labels come back as vertex ids, ``None`` where a label is unknown."""
  pairs = []
  try:
    with open(path, "r", encoding = "utf-8") as f:
      for lineno, line in enumerate(f, start = 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
          continue
        if len(tokens) != 2:
          raise ParseError(f"expected 'a b', got {len(tokens)} tokens", lineno, path)
        pairs.append((tokens[0], tokens[1]))
  except OSError as e:
    raise DataIOError(f"cannot read '{path}': {e}") from e
  except UnicodeDecodeError as e:
    raise DataIOError(f"'{path}' is not utf-8 text: {e}") from e
  if names is not None:
    return [(names.get(a), names.get(b)) for a, b in pairs]
  return pairs

# /parse


# serialise/

def format_edge_list(g: DirectedGraph, names: VertexNameMap = None) -> List[str]:
  label = names.label if names is not None else str
  out = [f"# n={g.n} m={g.m}"]
  out.extend(f"{label(u)} {label(v)}" for u, v in g.edges)
  return out


def format_decomposition(d: Decomposition, names: VertexNameMap = None) -> List[str]:
  label = names.label if names is not None else str
  g = d.host
  return [f"{label(u)} {label(v)} {'E' if e in d.euler else 'D'}" for e, (u, v) in enumerate(g.edges)]


def write_lines(path: str, lines: Iterable[str]):
  try:
    with open(path, "w", encoding = "utf-8", newline = "\n") as f:
      for line in lines:
        f.write(line + "\n")
  except OSError as e:
    raise DataIOError(f"cannot write '{path}': {e}") from e
  return path


def write_edge_list(path: str, g: DirectedGraph, names: VertexNameMap = None):
  return write_lines(path, format_edge_list(g, names))


def write_decomposition(path: str, d: Decomposition, names: VertexNameMap = None):
  return write_lines(path, format_decomposition(d, names))

# /serialise


# snapshots/

def align_snapshots(snapshots: List[Tuple[DirectedGraph, VertexNameMap]]) -> SnapshotSeries:
  """Re-index every snapshot into the union of their labels.

  Labels keep the order in which they are first met, walking the snapshots in order, so
  the first snapshot's ids are unchanged.
  """
  if len(snapshots) < 2:
    raise UsageError(f"aligning needs at least 2 snapshots, got {len(snapshots)}")

  names = VertexNameMap()
  for _, local in snapshots:
    for x in local.labels:
      names.intern(x)

  graphs = []
  for g, local in snapshots:
    remap = [names.get(x) for x in local.labels]
    graphs.append(DirectedGraph(len(names), ((remap[u], remap[v]) for u, v in g.edges)))
  logger.debug(f"aligned {len(graphs)} snapshots over {len(names)} vertices")
  return SnapshotSeries(names, graphs)

# /snapshots
