import os
import unittest
from functools import lru_cache

from eulerdag import utils
from eulerdag.graph import DirectedGraph, EdgeSet
from eulerdag.ingest import read_edge_list
from eulerdag.solvers import (
    greedy_d, greedy_r, move_cycles, init_dst, refine, greedy_and_refine, dfseven,
    bellman_ford_audit,
)
from eulerdag.synthetic import random_digraph
from eulerdag.utils import InvariantError


@lru_cache()
def get_running():
    return read_edge_list(os.path.join(utils.folder(__file__), "assets", "running_example.txt"))


class InitDstTest(unittest.TestCase):
    def test_running_example_after_greedy_d(self):
        g, names = get_running()
        trace = greedy_d(g)
        dst = init_dst(g, trace.approx.complement())
        expected = {"v1": -2, "v3": -1, "v7": -5, "v11": -1, "v12": -2, "v13": -3, "v14": -4}
        for u in range(g.n):
            self.assertEqual(dst[u], expected.get(names.label(u), 0), names.label(u))

    def test_nothing_left(self):
        g = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
        self.assertEqual(init_dst(g, EdgeSet(g.m)), [0, 0, 0])

    def test_cyclic_residual(self):
        g = DirectedGraph(2, [(0, 1), (1, 0)])
        with self.assertRaises(InvariantError):
            init_dst(g, EdgeSet.full(g.m))


class RefineTest(unittest.TestCase):
    def test_running_example_from_greedy_d(self):
        g, _ = get_running()
        trace = greedy_d(g)
        d = refine(trace.approx, g)
        self.assertEqual(d.e_euler, 16)
        self.assertEqual(d.stats.iterations, 1)
        self.assertGreaterEqual(d.stats.min_dst, -4 * g.m)
        self.assertIsNone(bellman_ford_audit(g, d.euler))

    def test_running_example_from_greedy_r(self):
        g, _ = get_running()
        trace = greedy_r(g)
        d = refine(trace.approx, g)
        self.assertEqual(d.e_euler, 16)
        self.assertEqual(d.stats.iterations, 0)
        self.assertEqual(d.euler, trace.approx)

    def test_needs_eulerian_start(self):
        g = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
        with self.assertRaises(InvariantError):
            refine(EdgeSet(g.m, [0]), g)

    def test_fewer_cycles_than_dfseven(self):
        g, _ = get_running()
        self.assertLess(greedy_and_refine(g, "d").stats.iterations, dfseven(g).stats.iterations)


class PipelineTest(unittest.TestCase):
    def test_running_example_records(self):
        g, _ = get_running()
        d = greedy_and_refine(g, "d")
        self.assertEqual(d.e_euler, 16)
        self.assertEqual(len(d.components), 1)
        c = d.components[0]
        self.assertEqual((c.n, c.m, c.greedy_size, c.moved_edges, c.e_euler), (14, 22, 14, 0, 16))
        self.assertEqual(c.refine_iterations, 1)
        self.assertEqual(c.l_max, 5)
        self.assertEqual(c.paths_per_l, {1: 1, 2: 1, 5: 1})
        self.assertEqual(len(d.approx), 14)

        d = greedy_and_refine(g, "r")
        self.assertEqual(d.e_euler, 16)
        self.assertEqual(d.stats.iterations, 0)

    def test_variants_agree(self):
        for seed in range(40):
            g = random_digraph(12, 36, seed)
            a = greedy_and_refine(g, "d")
            b = greedy_and_refine(g, "r")
            self.assertEqual(a.e_euler, b.e_euler)
            self.assertEqual(a.e_euler, dfseven(g).e_euler)

    def test_threads_do_not_change_output(self):
        for seed in range(10):
            g = random_digraph(40, 90, seed)
            one = greedy_and_refine(g, "r", threads = 1)
            four = greedy_and_refine(g, "r", threads = 4)
            self.assertEqual(one.euler, four.euler)
            self.assertEqual(one.approx, four.approx)
            self.assertEqual([c.get_dict() for c in one.components], [c.get_dict() for c in four.components])

    def test_cross_edges_go_to_the_dag(self):
        # two 2-cycles joined by one edge
        g = DirectedGraph(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)])
        d = greedy_and_refine(g, "r")
        self.assertEqual(d.dag.to_list(), [2])
        self.assertEqual(len(d.components), 2)

    def test_move_cycles_in_pipeline(self):
        g, _ = get_running()
        trace = greedy_d(g)
        residual, euler = move_cycles(g, trace.approx.complement(), trace.approx)
        self.assertEqual(residual, trace.approx.complement())
        self.assertEqual(euler, trace.approx)
