import os
import json
import shutil
import tempfile
import unittest

from eulerdag import utils
from eulerdag.__main__ import main
from eulerdag.cli import RunConfig, _dump_on_invariant
from eulerdag.graph import DirectedGraph
from eulerdag.utils import InvariantError

ASSETS = os.path.join(utils.folder(__file__), "assets")
RUNNING = os.path.join(ASSETS, "running_example.txt")


def read(path):
    with open(path) as f:
        return f.read()


class CliTest(unittest.TestCase):
    def setUp(self):
        self.folder = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.folder, ignore_errors = True)

    def out(self, name):
        return os.path.join(self.folder, name)

    def write(self, name, lines):
        path = self.out(name)
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
        return path

    def test_decompose(self):
        self.assertEqual(main(["decompose", RUNNING, "--out", self.out("a"), "--threads", "1", "--baseline"]), 0)
        lines = read(self.out("a/edges.txt")).splitlines()
        self.assertEqual(len(lines), 22)
        self.assertEqual(sum(1 for x in lines if x.endswith(" E")), 16)
        self.assertEqual(lines[0].split()[:2], ["v8", "v10"])
        metrics = json.loads(read(self.out("a/metrics.json")))
        self.assertEqual(metrics["schema"], 1)
        self.assertEqual(metrics["e_euler"], 16)
        self.assertEqual(metrics["refine_iterations"], 0)
        self.assertIn("iterations_saved_pct", metrics)
        self.assertEqual(len(metrics["components"]), 1)

    def test_deterministic(self):
        for name, threads in [("a", "1"), ("b", "1"), ("c", "4")]:
            self.assertEqual(main(["decompose", RUNNING, "--algo", "gr-d", "--out", self.out(name), "--threads", threads]), 0)
        for f in ["edges.txt", "metrics.json"]:
            self.assertEqual(read(self.out(f"a/{f}")), read(self.out(f"b/{f}")))
            self.assertEqual(read(self.out(f"a/{f}")), read(self.out(f"c/{f}")))

    def test_every_algo(self):
        for algo in ["simple", "dfseven", "gr-d", "gr-r"]:
            self.assertEqual(main(["decompose", RUNNING, "--algo", algo, "--out", self.out(algo)]), 0)
            metrics = json.loads(read(self.out(f"{algo}/metrics.json")))
            self.assertEqual(metrics["e_euler"], 16, algo)

    def test_empty_graph(self):
        path = self.write("empty.txt", ["# nothing"])
        self.assertEqual(main(["decompose", path, "--out", self.out("e")]), 0)
        self.assertEqual(read(self.out("e/edges.txt")), "")
        self.assertEqual(json.loads(read(self.out("e/metrics.json")))["e_euler"], 0)

    def test_exit_codes(self):
        self.assertEqual(main(["decompose", RUNNING, "--algo", "fast", "--out", self.out("x")]), 1)
        self.assertEqual(main(["decompose", self.out("missing.txt"), "--out", self.out("x")]), 2)
        self.assertEqual(main(["decompose", self.write("bad.txt", ["a b c"]), "--out", self.out("x")]), 2)
        binary = self.out("binary.txt")
        with open(binary, "wb") as f:
            f.write(b"a b\n\xff\xfe c\n")
        self.assertEqual(main(["decompose", binary, "--out", self.out("x")]), 2)
        train = self.write("train.txt", ["a b"])
        self.assertEqual(main(["predict", train, binary, "--out", self.out("x")]), 2)
        self.assertEqual(main(["stats", RUNNING, "--algo", "dfseven", "--out", self.out("x")]), 1)
        self.assertEqual(main(["mobility", RUNNING, "--out", self.out("x")]), 1)

    def test_rank(self):
        path = self.write("chain.txt", ["a b", "b c", "c d"])
        self.assertEqual(main(["rank", path, "--out", self.out("r")]), 0)
        self.assertEqual(read(self.out("r/ranking.tsv")).splitlines(), ["a\t0", "b\t1", "c\t2", "d\t3"])
        hist = json.loads(read(self.out("r/histogram.json")))
        self.assertEqual(hist["counts"], [1, 1, 1, 1])

    def test_stats(self):
        self.assertEqual(main(["stats", RUNNING, "--algo", "gr-d", "--out", self.out("s")]), 0)
        report = json.loads(read(self.out("s/kcycles.json")))
        self.assertEqual(report["gap"], 2)
        self.assertEqual(report["g_cal_edges"], 10)
        self.assertEqual(report["g_cal_edges_total"], 14)
        self.assertTrue(report["within_bound"])
        self.assertTrue(report["w_is_approximation"])

    def test_mobility(self):
        # reversed line order renumbers vertices, alignment goes by label
        shuffled = read(RUNNING).splitlines()
        shuffled = [x for x in shuffled if not x.startswith("#")]
        path = self.write("shuffled.txt", list(reversed(shuffled)))
        chain = self.write("chain.txt", [f"n{i} n{i + 1}" for i in range(9)])
        chain_again = self.write("chain_again.txt", list(reversed([f"n{i} n{i + 1}" for i in range(9)])))
        self.assertEqual(main(["mobility", chain, chain_again, "--out", self.out("m")]), 0)
        rows = [[float(x) for x in line.split(",")] for line in read(self.out("m/mobility.csv")).splitlines()]
        for i, row in enumerate(rows):
            self.assertEqual(row, [1.0 if j == i else 0.0 for j in range(5)])

        self.assertEqual(main(["mobility", RUNNING, path, RUNNING, "--groups", "2", "--out", self.out("m3")]), 0)
        self.assertTrue(os.path.exists(self.out("m3/mobility_0_1.csv")))
        self.assertTrue(os.path.exists(self.out("m3/mobility_1_2.csv")))

    def test_predict(self):
        train = self.write("train.txt", ["a b", "b c", "c d"])
        test = self.write("test.txt", ["a d", "d b", "a zed"])
        self.assertEqual(main(["predict", train, test, "--out", self.out("p")]), 0)
        lines = read(self.out("p/predictions.tsv")).splitlines()
        self.assertEqual(lines, ["a\td\ta->d", "d\tb\tb->d", "a\tzed\tabstain"])
        report = json.loads(read(self.out("p/prediction.json")))
        self.assertEqual((report["decided"], report["correct"], report["total"]), (2, 1, 3))

        empty = self.write("empty.txt", ["# no pairs"])
        self.assertEqual(main(["predict", train, empty, "--out", self.out("q")]), 0)
        self.assertIsNone(json.loads(read(self.out("q/prediction.json")))["coverage"])

    def test_oracle_check(self):
        self.assertEqual(main(["oracle-check", "--count", "25", "--seed", "3", "--out", self.out("o")]), 0)
        report = json.loads(read(self.out("o/oracle_check.json")))
        self.assertTrue(report["passed"])
        self.assertEqual(report["count"], 25)

        ring = self.write("ring.txt", ["a b", "b c", "c a"])
        self.assertEqual(main(["oracle-check", "--path", ring, "--out", self.out("o2")]), 0)

    def test_synth(self):
        for name in ["s1", "s2"]:
            self.assertEqual(main(["synth", "hierarchy", "--n", "60", "--m", "200", "--seed", "4", "--split", "0.8", "--out", self.out(name)]), 0)
        for f in ["hierarchy.txt", "levels.tsv", "train.txt", "test.txt"]:
            self.assertEqual(read(self.out(f"s1/{f}")), read(self.out(f"s2/{f}")))
        self.assertEqual(main(["synth", "drift", "--n", "40", "--m", "120", "--steps", "3", "--out", self.out("d")]), 0)
        self.assertTrue(os.path.exists(self.out("d/snapshot_2.txt")))
        self.assertEqual(main(["synth", "random", "--out", self.out("rnd")]), 0)

    def test_invariant_dump(self):
        config = RunConfig(out = self.folder)
        g = DirectedGraph(2, [(0, 1), (1, 0)])
        with self.assertRaises(InvariantError):
            with _dump_on_invariant(config):
                raise InvariantError("broken", g)
        self.assertEqual(read(self.out("invariant_dump.txt")).splitlines(), ["# n=2 m=2", "0 1", "1 0"])
