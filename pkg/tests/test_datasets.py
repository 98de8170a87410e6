# SNAP edge lists are not shipped, point EULERDAG_DATA at a folder holding
# wiki-Vote.txt and gnutella.txt to run these

import os
import unittest
from functools import lru_cache

from eulerdag.analysis import audit
from eulerdag.ingest import read_edge_list
from eulerdag.solvers import solve
from eulerdag.utils import EULERDAG_DATA_DIR


def data_file(name):
    return os.path.join(EULERDAG_DATA_DIR, name)


@lru_cache()
def get_graph(name):
    g, _ = read_edge_list(data_file(name))
    return g


@lru_cache()
def get_decomposition(name, algo):
    return solve(get_graph(name), algo, os.cpu_count() or 1)


class WikiVoteTest(unittest.TestCase):
    name = "wiki-Vote.txt"

    @unittest.skipUnless(os.path.isfile(data_file("wiki-Vote.txt")), "wiki-Vote.txt not found")
    def test_size(self):
        g = get_graph(self.name)
        self.assertEqual((g.n, g.m), (7115, 103689))

    @unittest.skipUnless(os.path.isfile(data_file("wiki-Vote.txt")), "wiki-Vote.txt not found")
    def test_every_pipeline(self):
        for algo in ["dfseven", "gr-d", "gr-r"]:
            d = get_decomposition(self.name, algo)
            self.assertEqual(d.e_euler, 17676, algo)
            self.assertEqual(d.v_euler, 1286, algo)
            d.check()

    @unittest.skipUnless(os.path.isfile(data_file("wiki-Vote.txt")), "wiki-Vote.txt not found")
    def test_refine_saves_iterations(self):
        base = get_decomposition(self.name, "dfseven").stats.iterations
        for algo in ["gr-d", "gr-r"]:
            self.assertLess(get_decomposition(self.name, algo).stats.iterations, 0.1 * base, algo)

    @unittest.skipUnless(os.path.isfile(data_file("wiki-Vote.txt")), "wiki-Vote.txt not found")
    def test_greedy_quality(self):
        d = get_decomposition(self.name, "gr-r")
        self.assertGreaterEqual(len(d.approx) / d.e_euler, 0.9)

    @unittest.skipUnless(os.path.isfile(data_file("wiki-Vote.txt")), "wiki-Vote.txt not found")
    def test_gcal(self):
        report = audit(get_decomposition(self.name, "gr-d"))
        self.assertEqual(report.gap, 17676 - len(get_decomposition(self.name, "gr-d").approx))
        self.assertTrue(all(c.weight >= 0 for c in report.cycles))
        print(f"wiki-Vote gr-d: |G|={report.g_cal_edges} W={report.W}")


class GnutellaTest(unittest.TestCase):
    name = "gnutella.txt"

    @unittest.skipUnless(os.path.isfile(data_file("gnutella.txt")), "gnutella.txt not found")
    def test_every_pipeline(self):
        for algo in ["dfseven", "gr-d", "gr-r"]:
            d = get_decomposition(self.name, algo)
            self.assertEqual(d.e_euler, 18964, algo)
            self.assertEqual(d.v_euler, 11952, algo)

    @unittest.skipUnless(os.path.isfile(data_file("gnutella.txt")), "gnutella.txt not found")
    def test_greedy_quality(self):
        d = get_decomposition(self.name, "gr-r")
        self.assertGreaterEqual(len(d.approx) / d.e_euler, 0.9)
        # gr-d is reported only
        d = get_decomposition(self.name, "gr-d")
        print(f"gnutella gr-d greedy ratio: {len(d.approx) / d.e_euler:.4f}")
