# slot records shared by the solvers, the analyses and the cli. Everything that ends up
# in a metrics file is one of these, ``get_dict`` is the only serialization path.

from logging import getLogger
logger = getLogger()

# ==================

# dataclasses are not that good: these classes keep a fixed set of slots

class DBase:
  __slots__ = []

  def __init__(self, **kwargs):
    for k in self.__slots__:
      setattr(self, k, None)
    for k, v in kwargs.items():
      setattr(self, k, v)

  def get(self, k, v = None):
    return getattr(self, k, v)

  def get_dict(self, skip = ()):
    data = {}
    for k in self.__slots__:
      if k in skip:
        continue
      data[k] = _to_plain(getattr(self, k, None))
    return data

  def __repr__(self):
    return f"{self.__class__.__name__}({self.get_dict()})"


def _to_plain(_obj):
  if isinstance(_obj, DBase):
    return _obj.get_dict()
  if isinstance(_obj, (list, tuple)):
    return [_to_plain(x) for x in _obj]
  if isinstance(_obj, dict):
    # json keys are strings, sort them so files diff cleanly
    return {str(k): _to_plain(v) for k, v in sorted(_obj.items(), key = lambda x: str(x[0]))}
  if hasattr(_obj, "to_list"):
    return _obj.to_list()
  return _obj


# solvers/

class SolveStats(DBase):
  __slots__ = [
    "algo", # :str
    "iterations", # :int negative cycles reversed
    "relaxations", # :int
    "edge_scans", # :int
    "min_dst", # :int
  ]

class ComponentRecord(DBase):
  __slots__ = [
    "component_id", # :int
    "n", # :int
    "m", # :int
    "greedy_size", # :int
    "moved_edges", # :int
    "e_euler", # :int
    "refine_iterations", # :int
    "l_max", # :int
    "paths_per_l", # :Dict[int, int]
  ]

class GreedyResult(DBase):
  __slots__ = [
    "variant", # :str
    "approx", # :EdgeSet
    "l_max", # :int
    "paths_per_l", # :Dict[int, int]
    "paths", # :List[List[int]] edge ids of each processed pn-path
    "edge_paths", # :Dict[int, List[int]] edge id -> path ids
  ]

# /solvers

# oracle/

class OracleResult(DBase):
  __slots__ = [
    "best_size", # :int
    "witness", # :EdgeSet
    "subsets_examined", # :int
  ]

# /oracle

# analysis/

class KCycle(DBase):
  __slots__ = [
    "k", # :int
    "delta", # :int weight of negative edges, as a magnitude
    "delta_prime", # :int weight of positive edges
    "length", # :int
    "cancel_pair", # :bool
  ]

  @property
  def weight(self):
    return self.delta_prime - self.delta

class GeneralPath(DBase):
  __slots__ = [
    "cycle", # :int index into the report's cycles
    "w_p", # :int
    "w_u", # :int
  ]

class KCycleReport(DBase):
  __slots__ = [
    "cycles", # :List[KCycle]
    "W", # :int
    "K", # :int
    "g_cal_edges", # :int edges left once weight-0 pairs are cancelled
    "g_cal_edges_total", # :int
    "cancelled_pairs", # :int
    "gap", # :int
    "ratio_by_k", # :Dict[int, float]
    "violations", # :List[int] cycles with delta_prime > k * delta
    "general_paths", # :List[GeneralPath]
    "w_is_approximation", # :bool
  ]

class RankHistogram(DBase):
  __slots__ = [
    "counts", # :List[int]
    "fractions", # :List[float]
    "degree_summary", # :List[float] mean of d_I - d_O per rank
  ]

class PredictionReport(DBase):
  __slots__ = [
    "predictions", # :List[Tuple[a, b, Optional[Tuple[int, int]]]]
    "accuracy", # :Optional[float]
    "coverage", # :Optional[float]
    "decided", # :int
    "correct", # :int
    "total", # :int
  ]

# /analysis
