import os
import random
import itertools
import unittest
from functools import lru_cache

import numpy as np

from eulerdag import utils
from eulerdag.graph import DirectedGraph, EdgeSet, permute
from eulerdag.hierarchy import assign_ranks, strictly_higher_pairs
from eulerdag.ingest import read_edge_list
from eulerdag.oracle import brute_force_max_euler
from eulerdag.solvers import (
    WorkingGraph, RelaxState, dfs_spfa, unwind_cycle, dfseven, simple, negative_cycle,
    bellman_ford_audit, solve,
)
from eulerdag.synthetic import random_digraph, random_instances
from eulerdag.utils import SizeCapError


@lru_cache()
def get_graph(name):
    return read_edge_list(os.path.join(utils.folder(__file__), "assets", name))


def ids(names, *labels):
    return [names.get(x) for x in labels]


def edge_disjoint_cycles(n, tries, seed):
    """Eulerian simple digraph: a union of random cycles that share no edge."""
    rng = random.Random(seed)
    edges = set()
    for _ in range(tries):
        ring = rng.sample(range(n), rng.randint(2, n))
        cycle = list(zip(ring, ring[1:] + ring[:1]))
        if not edges.intersection(cycle):
            edges.update(cycle)
    return DirectedGraph(n, sorted(edges))


def slots_of(n):
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def canonical_masks(n):
    """One edge mask per isomorphism class of digraphs on ``n`` vertices, the smallest
    mask over all vertex relabellings."""
    slots = slots_of(n)
    index = {s: i for i, s in enumerate(slots)}
    masks = np.arange(1 << len(slots), dtype = np.int64)
    canon = masks.copy()
    bits = (np.arange(256, dtype = np.int64)[:, None] >> np.arange(8)) & 1
    chunks = [(masks >> (8 * b)) & 0xff for b in range((len(slots) + 7) // 8)]
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for b, chunk in enumerate(chunks):
            weights = np.zeros(8, dtype = np.int64)
            for k, i in enumerate(range(8 * b, min(8 * b + 8, len(slots)))):
                u, v = slots[i]
                weights[k] = 1 << index[(perm[u], perm[v])]
            image |= (bits @ weights)[chunk]
        np.minimum(canon, image, out = canon)
    return np.unique(canon).tolist()


class DfsSpfaTraceTest(unittest.TestCase):
    def test_first_cycle_on_trace_example(self):
        g, names = get_graph("trace_example.txt")
        v6, v3, v1, v2, v8 = ids(names, "v6", "v3", "v1", "v2", "v8")
        wg = WorkingGraph(g)
        state = RelaxState(wg)

        self.assertTrue(dfs_spfa(wg, state, v6))
        self.assertEqual(state.dst[v3], -4)
        self.assertEqual(state.dst[v1], -2)
        self.assertEqual(state.dst[v2], -3)
        self.assertEqual(state.dst[v6], 0)
        self.assertEqual(state.nv, v3)
        self.assertEqual(state.sv, [v6, v3, v1, v2])
        self.assertEqual(state.pos[v6], 1)

        cycle = unwind_cycle(state)
        self.assertEqual(sorted(cycle), [g.index(v3, v1), g.index(v1, v2), g.index(v2, v3)])
        self.assertEqual(state.sv, [])
        self.assertEqual(state.iterations, 1)

    def test_dfseven_trace_example(self):
        g, names = get_graph("trace_example.txt")
        d = dfseven(g)
        euler = sorted((names.label(g.edges[e][0]), names.label(g.edges[e][1])) for e in d.euler)
        self.assertEqual(euler, [("v1", "v2"), ("v2", "v3"), ("v3", "v1")])
        self.assertEqual(d.stats.iterations, 1)

    def test_no_cycle_from_a_sink(self):
        g = DirectedGraph(2, [(0, 1)])
        wg = WorkingGraph(g)
        state = RelaxState(wg)
        self.assertFalse(dfs_spfa(wg, state, 1))
        self.assertFalse(state.relax[1])
        self.assertEqual(state.sv, [])


class SolverTest(unittest.TestCase):
    def test_running_example(self):
        g, _ = get_graph("running_example.txt")
        for algo in ["simple", "dfseven"]:
            d = solve(g, algo)
            self.assertEqual(d.e_euler, 16, algo)
            self.assertIsNone(bellman_ford_audit(g, d.euler))

    def test_trivial_graphs(self):
        self.assertEqual(dfseven(DirectedGraph(0)).e_euler, 0)
        self.assertEqual(simple(DirectedGraph(3, [(0, 1), (1, 2), (0, 2)])).e_euler, 0)
        ring = DirectedGraph(5, [(i, (i + 1) % 5) for i in range(5)])
        self.assertEqual(dfseven(ring).e_euler, 5)
        self.assertEqual(simple(ring).e_euler, 5)

    def test_dst_stays_in_range(self):
        for seed in range(30):
            g = random_digraph(9, 30, seed)
            d = dfseven(g)
            self.assertGreaterEqual(d.stats.min_dst, -4 * g.m)
            self.assertLessEqual(d.stats.min_dst, 0)

    def test_dst_on_eulerian_input(self):
        for seed in range(60):
            g = edge_disjoint_cycles(8, 6, seed)
            d = dfseven(g)
            self.assertEqual(d.e_euler, g.m)
            self.assertGreaterEqual(d.stats.min_dst, -2 * g.m, f"edges={g.edges}")
            self.assertLessEqual(d.stats.min_dst, 0)

    def test_simple_cap(self):
        g = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
        with self.assertRaises(SizeCapError):
            simple(g, cap = 2)

    def test_negative_cycle(self):
        g = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
        cycle = negative_cycle(WorkingGraph(g))
        self.assertEqual(sorted(cycle), [0, 1, 2])
        self.assertIsNone(bellman_ford_audit(g, EdgeSet.full(g.m)))
        self.assertEqual(sorted(bellman_ford_audit(g, EdgeSet(g.m))), [0, 1, 2])

    def test_scan_order(self):
        g, _ = get_graph("running_example.txt")
        d = dfseven(g, order = list(reversed(range(g.n))))
        self.assertEqual(d.e_euler, 16)
        with self.assertRaises(ValueError):
            dfseven(g, order = [0])


class OracleAgreementTest(unittest.TestCase):
    def test_random_graphs(self):
        for i, g in enumerate(random_instances(500, 14, seed = 7)):
            best = brute_force_max_euler(g).best_size
            for algo in ["simple", "dfseven", "gr-d", "gr-r"]:
                d = solve(g, algo)
                self.assertEqual(d.e_euler, best, f"graph {i} algo {algo}")
                self.assertIsNone(bellman_ford_audit(g, d.euler))


class RepresentativenessTest(unittest.TestCase):
    # two maximum decompositions never order a pair of vertices in opposite ways

    def check(self, g):
        reverse = list(reversed(range(g.n)))
        decompositions = [dfseven(g), dfseven(g, order = reverse), solve(g, "gr-r")]
        pairs = [strictly_higher_pairs(d, assign_ranks(d)) for d in decompositions]
        for a in range(len(pairs)):
            for b in range(a + 1, len(pairs)):
                for u, v in pairs[a]:
                    self.assertNotIn((v, u), pairs[b], f"edges={g.edges}")

    def test_exhaustive_small(self):
        for n in range(2, 5):
            slots = slots_of(n)
            for mask in range(1 << len(slots)):
                self.check(DirectedGraph(n, [s for i, s in enumerate(slots) if mask >> i & 1]))

    def test_exhaustive_five_vertices(self):
        slots = slots_of(5)
        classes = canonical_masks(5)
        self.assertEqual(len(classes), 9608)
        for mask in classes:
            self.check(DirectedGraph(5, [s for i, s in enumerate(slots) if mask >> i & 1]))

    def test_random(self):
        for seed in range(200):
            rng = random.Random(seed)
            n = rng.randint(5, 7)
            g = random_digraph(n, rng.randint(n, n * (n - 1) // 2), seed)
            self.check(g)
            perm = list(range(n))
            rng.shuffle(perm)
            self.check(permute(g, perm))
