"""
Functions behind ``python -m eulerdag``. Every command reads its inputs, writes plain files
into ``--out`` (``runs/<random-name>`` when not given), logs a table and, unless
``--emit_metrics False``, drops a ``metrics.json`` next to the outputs. Nothing in the
output depends on wall clock or thread count.
"""

import os
import json
from contextlib import contextmanager

import numpy as np
from tabulate import tabulate

from logging import getLogger
logger = getLogger()

from .analysis import (
  audit, gap_report, mobility_matrix, predict_directions, prediction_report,
)
from .graph import DirectedGraph
from .hierarchy import assign_ranks, rank_distribution
from .ingest import (
  VertexNameMap, read_edge_list, read_pairs, write_decomposition, write_edge_list,
  write_lines, align_snapshots,
)
from .oracle import brute_force_max_euler
from .records import DBase, _to_plain
from .solvers import ALGORITHMS, solve, dfseven, bellman_ford_audit
from .synthetic import planted_hierarchy, drift_series, random_digraph, random_instances, split_edges
from .utils import (
  DataIOError, InvariantError, UsageError, ensure_folder, get_random_name, join,
)

SCHEMA = 1
GR_ALGORITHMS = ("gr-d", "gr-r")


class RunConfig(DBase):
  __slots__ = [
    "inputs", # :List[str]
    "algo", # :str
    "out", # :str
    "groups", # :int
    "threads", # :int
    "seed", # :int
    "oracle_cap", # :int
    "emit_metrics", # :bool
    "baseline", # :bool
    "greedy_only", # :bool
  ]

  def __init__(self, **kwargs):
    super().__init__(
      inputs = [],
      algo = "gr-r",
      groups = 5,
      threads = os.cpu_count() or 1,
      seed = 0,
      oracle_cap = 14,
      emit_metrics = True,
      baseline = False,
      greedy_only = False,
    )
    for k, v in kwargs.items():
      if v is not None:
        setattr(self, k, v)

  def validate(self, min_inputs: int = 1, max_inputs: int = None):
    self.inputs = [str(x) for x in self.inputs]
    if len(self.inputs) < min_inputs:
      raise UsageError(f"expected at least {min_inputs} input file(s), got {len(self.inputs)}")
    if max_inputs is not None and len(self.inputs) > max_inputs:
      raise UsageError(f"expected at most {max_inputs} input file(s), got {len(self.inputs)}")
    if self.algo not in ALGORITHMS:
      raise UsageError(f"--algo must be one of {', '.join(ALGORITHMS)}, got '{self.algo}'")
    for k in ["groups", "threads", "oracle_cap"]:
      x = getattr(self, k)
      if not isinstance(x, int) or isinstance(x, bool) or x < 1:
        raise UsageError(f"--{k} must be a positive integer, got '{x}'")
    for path in self.inputs:
      if not os.path.isfile(path):
        raise DataIOError(f"input file not found: '{path}'")
    self.out = ensure_folder(str(self.out) if self.out is not None else join("runs", get_random_name()))
    logger.info(f"writing to: {self.out}")
    return self


# helpers/

def _log_table(rows, headers):
  for x in tabulate(rows, headers = headers).splitlines():
    logger.info(x)


def _write_json(path: str, data: dict):
  write_lines(path, [json.dumps(data, indent = 2, sort_keys = True)])


@contextmanager
def _dump_on_invariant(config: RunConfig):
  try:
    yield
  except InvariantError as e:
    if e.graph is not None and config.out is not None:
      path = join(config.out, "invariant_dump.txt")
      write_edge_list(path, e.graph)
      logger.error(f"invariant broken, offending graph dumped to {path}")
    raise


def _decompose(config: RunConfig, g: DirectedGraph):
  if config.greedy_only and config.algo not in GR_ALGORITHMS:
    raise UsageError(f"--greedy_only needs a gr algorithm, got '{config.algo}'")
  return solve(g, config.algo, config.threads, greedy_only = config.greedy_only)


def _metrics(config: RunConfig, d, command: str) -> dict:
  g = d.host
  m = {
    "schema": SCHEMA,
    "command": command,
    "algo": config.algo,
    "greedy_only": bool(config.greedy_only),
    "n": g.n,
    "m": g.m,
    "e_euler": d.e_euler,
    "v_euler": d.v_euler,
    "iterations": d.stats.iterations if d.stats is not None else 0,
  }
  if d.components is not None:
    report = audit(d)
    m.update({
      "refine_iterations": d.stats.iterations,
      "greedy_size": len(d.approx),
      "l_max": max((c.l_max for c in d.components), default = 0),
      "g_cal_edges": report.g_cal_edges,
      "w_correction": report.W,
      "components": [c.get_dict() for c in d.components],
    })
    if config.baseline:
      base = dfseven(g).stats.iterations
      m["dfseven_iterations"] = base
      m["iterations_saved_pct"] = round(100.0 * (1 - d.stats.iterations / base), 4) if base else 0.0
  return m


def _summary(d):
  rows = [["vertices", d.host.n], ["edges", d.host.m], ["euler edges", d.e_euler], ["euler vertices", d.v_euler]]
  if d.stats is not None:
    rows.append(["cycles reversed", d.stats.iterations])
  if d.components is not None:
    rows.append(["components", len(d.components)])
    rows.append(["greedy edges", len(d.approx)])
  _log_table(rows, headers = ["", d.stats.algo if d.stats is not None else ""])
  if d.components:
    _log_table(
      [[c.component_id, c.n, c.m, c.greedy_size, c.moved_edges, c.e_euler, c.refine_iterations, c.l_max] for c in d.components[:20]],
      headers = ["scc", "n", "m", "greedy", "moved", "euler", "refine", "l_max"],
    )
    if len(d.components) > 20:
      logger.info(f"... {len(d.components) - 20} more components in metrics.json")

# /helpers


def decompose(path, algo = "gr-r", out = None, threads = None, baseline = False, greedy_only = False, emit_metrics = True):
  """Split a graph into its maximum Eulerian part and a DAG.

  Writes ``edges.txt`` with one ``src dst E|D`` line per input edge.

  Args:
    path (str): edge list, one ``src dst`` pair per line
    algo (str): ``simple``, ``dfseven``, ``gr-d`` or ``gr-r``
    baseline (bool): with a gr algorithm, also run dfseven and report the iterations saved
    greedy_only (bool): stop after the greedy phase, valid but not always maximum
  """
  config = RunConfig(inputs = [path], algo = algo, out = out, threads = threads, baseline = baseline,
                     greedy_only = greedy_only, emit_metrics = emit_metrics).validate(1, 1)
  g, names = read_edge_list(config.inputs[0])
  with _dump_on_invariant(config):
    d = _decompose(config, g)
    write_decomposition(join(config.out, "edges.txt"), d, names)
    _summary(d)
    if config.emit_metrics:
      _write_json(join(config.out, "metrics.json"), _metrics(config, d, "decompose"))


def rank(path, algo = "gr-r", out = None, threads = None, greedy_only = False, emit_metrics = True):
  """Rank every vertex by the DAG part, writes ``ranking.tsv`` and ``histogram.json``."""
  config = RunConfig(inputs = [path], algo = algo, out = out, threads = threads,
                     greedy_only = greedy_only, emit_metrics = emit_metrics).validate(1, 1)
  g, names = read_edge_list(config.inputs[0])
  with _dump_on_invariant(config):
    d = _decompose(config, g)
    r = assign_ranks(d)
    hist = rank_distribution(r, g)
    write_lines(join(config.out, "ranking.tsv"), [f"{names.label(u)}\t{r[u]}" for u in range(g.n)])
    _write_json(join(config.out, "histogram.json"), {"schema": SCHEMA, "max_rank": r.max_rank, **hist.get_dict()})
    _log_table(
      [[i, c, f"{f:.4f}", f"{s:.3f}"] for i, (c, f, s) in enumerate(zip(hist.counts, hist.fractions, hist.degree_summary))],
      headers = ["rank", "vertices", "share", "mean d_I - d_O"],
    )
    if config.emit_metrics:
      _write_json(join(config.out, "metrics.json"), _metrics(config, d, "rank"))


def stats(path, algo = "gr-d", out = None, threads = None, emit_metrics = True):
  """Audit the greedy phase against the exact result, writes ``kcycles.json``."""
  config = RunConfig(inputs = [path], algo = algo, out = out, threads = threads, emit_metrics = emit_metrics).validate(1, 1)
  if config.algo not in GR_ALGORITHMS:
    raise UsageError(f"stats needs a gr algorithm (gr-d or gr-r), got '{config.algo}'")
  g, _ = read_edge_list(config.inputs[0])
  with _dump_on_invariant(config):
    d = _decompose(config, g)
    report = audit(d)
    gap = gap_report(d, report)

    per_k = {}
    for c in report.cycles:
      per_k[c.k] = per_k.get(c.k, 0) + 1
    data = {
      "schema": SCHEMA,
      "algo": config.algo,
      "e_euler": d.e_euler,
      "greedy_size": len(d.approx),
      "g_cal_edges": report.g_cal_edges,
      "g_cal_edges_total": report.g_cal_edges_total,
      "cancelled_pairs": report.cancelled_pairs,
      "w_correction": report.W,
      "w_is_approximation": report.w_is_approximation,
      "cycles_per_k": per_k,
      "ratio_by_k": report.ratio_by_k,
      "violations": report.violations,
      "general_paths": report.general_paths,
      "cycles": [c for c in report.cycles if not c.cancel_pair],
      **gap,
    }
    _write_json(join(config.out, "kcycles.json"), _to_plain(data))
    _log_table(
      [[k, per_k[k], f"{report.ratio_by_k[k]:.4f}"] for k in sorted(per_k)],
      headers = ["k", "cycles", "delta' / delta"],
    )
    _log_table([[gap["gap"], gap["bound"], report.g_cal_edges, report.W]], headers = ["gap", "bound", "|G|", "W"])
    if config.emit_metrics:
      _write_json(join(config.out, "metrics.json"), _metrics(config, d, "stats"))


def mobility(*paths, algo = "gr-r", out = None, groups = 5, threads = None, emit_metrics = True):
  """Rank-group transition matrices between consecutive snapshots of one graph.

  Writes ``mobility.csv`` for two snapshots, ``mobility_<i>_<j>.csv`` per consecutive pair
  otherwise.
  """
  config = RunConfig(inputs = list(paths), algo = algo, out = out, groups = groups, threads = threads,
                     emit_metrics = emit_metrics).validate(2)
  series = align_snapshots([read_edge_list(p) for p in config.inputs])
  n = len(series.names)
  if n < config.groups:
    raise UsageError(f"cannot split {n} vertices into {config.groups} groups")

  with _dump_on_invariant(config):
    ranks = [assign_ranks(solve(g, config.algo, config.threads)) for g in series.graphs]
    matrices = []
    for i in range(len(ranks) - 1):
      M = mobility_matrix(ranks[i], ranks[i + 1], config.groups)
      matrices.append(M)
      name = "mobility.csv" if len(ranks) == 2 else f"mobility_{i}_{i + 1}.csv"
      write_lines(join(config.out, name), [",".join(f"{x:.6f}" for x in row) for row in M])
      logger.info(f"snapshot {i} -> {i + 1}")
      _log_table([[f"group {j}", *[f"{x:.3f}" for x in row]] for j, row in enumerate(M)],
                 headers = ["", *[f"group {j}" for j in range(config.groups)]])

    if config.emit_metrics:
      _write_json(join(config.out, "metrics.json"), {
        "schema": SCHEMA,
        "algo": config.algo,
        "groups": config.groups,
        "vertices": n,
        "snapshots": len(ranks),
        "stay_share": [round(float(np.trace(M)) / config.groups, 6) for M in matrices],
      })


def predict(train, test, algo = "gr-r", out = None, threads = None, truth = True, emit_metrics = True):
  """Orient every pair of ``test`` from low to high rank learned on ``train``.

  Writes ``predictions.tsv`` (``a<TAB>b<TAB>x->y`` or ``abstain``) and ``prediction.json``.

  Args:
    truth (bool): the lines of ``test`` are the true directed edges, score against them
  """
  config = RunConfig(inputs = [train, test], algo = algo, out = out, threads = threads,
                     emit_metrics = emit_metrics).validate(2, 2)
  g, names = read_edge_list(config.inputs[0])
  labels = read_pairs(config.inputs[1])
  pairs = [(names.get(a), names.get(b)) for a, b in labels]

  with _dump_on_invariant(config):
    report = predict_directions(g, pairs, truth = pairs if truth else None, algo = config.algo, threads = config.threads)
    lines = []
    for (a, b), (_, _, edge) in zip(labels, report.predictions):
      if edge is None:
        lines.append(f"{a}\t{b}\tabstain")
      else:
        lines.append(f"{a}\t{b}\t{names.label(edge[0])}->{names.label(edge[1])}")
    write_lines(join(config.out, "predictions.tsv"), lines)
    data = {"schema": SCHEMA, "algo": config.algo, **prediction_report(report)}
    _write_json(join(config.out, "prediction.json"), data)
    _log_table([[report.total, report.decided, report.correct, report.coverage, report.accuracy]],
               headers = ["pairs", "decided", "correct", "coverage", "accuracy"])
    if config.emit_metrics:
      _write_json(join(config.out, "metrics.json"), data)


def oracle_check(path = None, count = 100, oracle_cap = 14, seed = 0, out = None, threads = None):
  """Compare every solver with the brute-force optimum.

  Checks ``path`` when given, else ``count`` seeded random graphs with at most
  ``oracle_cap`` edges. Any disagreement or failed audit exits with code 3.
  """
  config = RunConfig(inputs = [path] if path is not None else [], out = out, threads = threads,
                     oracle_cap = oracle_cap, seed = seed).validate(0, 1)
  if config.inputs:
    graphs = [read_edge_list(config.inputs[0])[0]]
  else:
    graphs = list(random_instances(count, config.oracle_cap, config.seed))

  failures = []
  agree = {a: 0 for a in ALGORITHMS}
  with _dump_on_invariant(config):
    for i, g in enumerate(graphs):
      best = brute_force_max_euler(g, cap = config.oracle_cap).best_size
      sizes = {}
      audits = []
      for a in ALGORITHMS:
        d = solve(g, a, 1)
        sizes[a] = d.e_euler
        if sizes[a] == best:
          agree[a] += 1
        if bellman_ford_audit(g, d.euler) is not None:
          audits.append(a)
      if audits or any(s != best for s in sizes.values()):
        failures.append({"index": i, "n": g.n, "m": g.m, "oracle": best, "sizes": sizes, "audit_failed": audits})

    _log_table([[a, agree[a], len(graphs)] for a in ALGORITHMS], headers = ["algo", "match oracle", "graphs"])
    _write_json(join(config.out, "oracle_check.json"), {
      "schema": SCHEMA,
      "seed": config.seed,
      "oracle_cap": config.oracle_cap,
      "count": len(graphs),
      "passed": not failures,
      "failures": failures,
    })
    if failures:
      first = graphs[failures[0]["index"]]
      raise InvariantError(f"{len(failures)} of {len(graphs)} graphs disagree with the oracle", first)
  logger.info(f"all {len(graphs)} graphs agree with the oracle")


# synth/

def _numbered(n: int) -> VertexNameMap:
  return VertexNameMap(str(u) for u in range(n))


def synth_hierarchy(n = 500, levels = 4, m = 3000, noise = 0.1, seed = 0, out = None, split = None):
  """Planted hierarchy, writes ``hierarchy.txt`` and ``levels.tsv``; with ``--split 0.8``
  also ``train.txt`` and ``test.txt``."""
  out = ensure_folder(str(out) if out is not None else join("runs", get_random_name()))
  edges, level = planted_hierarchy(n, levels, m, noise, seed)
  names = _numbered(n)
  write_edge_list(join(out, "hierarchy.txt"), DirectedGraph(n, edges), names)
  write_lines(join(out, "levels.tsv"), [f"{u}\t{x}" for u, x in enumerate(level)])
  if split is not None:
    train, test = split_edges(edges, float(split), seed)
    write_edge_list(join(out, "train.txt"), DirectedGraph(n, train), names)
    write_edge_list(join(out, "test.txt"), DirectedGraph(n, test), names)
  logger.info(f"planted hierarchy with {len(edges)} edges written to {out}")


def synth_drift(n = 500, levels = 4, m = 3000, steps = 2, rate = 0.1, seed = 0, out = None):
  """Drifting snapshot series, writes ``snapshot_<i>.txt`` for every step."""
  out = ensure_folder(str(out) if out is not None else join("runs", get_random_name()))
  names = _numbered(n)
  for i, (edges, _) in enumerate(drift_series(n, levels, m, steps, rate, seed)):
    write_edge_list(join(out, f"snapshot_{i}.txt"), DirectedGraph(n, edges), names)
  logger.info(f"{steps} snapshots written to {out}")


def synth_random(n = 8, m = 14, seed = 0, out = None):
  out = ensure_folder(str(out) if out is not None else join("runs", get_random_name()))
  g = random_digraph(n, m, seed)
  write_edge_list(join(out, "random.txt"), g, _numbered(n))
  logger.info(f"random graph n={g.n} m={g.m} written to {out}")

# /synth
