# This file is part of qec_clifford.
#
# Developed for the LSST Data Management System.
# This product includes software developed by the LSST Project
# (http://www.lsst.org/).
# See the COPYRIGHT file at the top-level directory of this distribution
# for details of code ownership.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.


"""Tests of device connectivity graphs and the routing baseline."""

import os
import unittest

import numpy as np

import lsst.utils.tests
from lsst.qec.clifford import (CircuitFormatError, DomainError, InvalidParameterError, LengthError,
                               NotFoundError)
from lsst.qec.clifford.compile import (ConnectivityGraph, baselineCompile, decomposeSymplectic, packLayers,
                                       routeGates)
from lsst.qec.clifford.gf2 import BitMatrix
from lsst.qec.clifford.pauli import SymplecticMap, circuitSymplectic, namedLogicalGate, randomSymplectic

TESTDIR = os.path.abspath(os.path.dirname(__file__))


def randomConnected(n, rng):
    """A random spanning tree plus a few random extra edges."""
    edges = {(int(rng.integers(0, v)), v) for v in range(1, n)}
    for _ in range(int(rng.integers(0, n))):
        u, v = sorted(int(q) for q in rng.choice(n, size=2, replace=False))
        edges.add((u, v))
    return ConnectivityGraph.fromEdges(n, sorted(edges))


class ConnectivityTestCase(unittest.TestCase):

    def testPresets(self):
        self.assertEqual(ConnectivityGraph.line(4).edgeList(), [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(ConnectivityGraph.ring(4).edgeList(), [(0, 1), (0, 3), (1, 2), (2, 3)])
        self.assertEqual(ConnectivityGraph.ring(2).edgeList(), [(0, 1)])
        self.assertEqual(ConnectivityGraph.star(4).edgeList(), [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(len(ConnectivityGraph.complete(5).edgeList()), 10)
        self.assertEqual(len(ConnectivityGraph.grid(3, 4).edgeList()), 17)
        cube = ConnectivityGraph.cube8()
        self.assertEqual(len(cube.edgeList()), 12)
        self.assertTrue(cube.allows(0, 4))
        self.assertFalse(cube.allows(0, 3))
        self.assertFalse(cube.allows(2, 2))

    def testPresetParsing(self):
        self.assertEqual(ConnectivityGraph.preset("ring(4)"), ConnectivityGraph.ring(4))
        self.assertEqual(ConnectivityGraph.preset("ring", 4), ConnectivityGraph.ring(4))
        self.assertEqual(ConnectivityGraph.preset(" grid(3, 4) "), ConnectivityGraph.grid(3, 4))
        self.assertEqual(ConnectivityGraph.preset("cube8"), ConnectivityGraph.cube8())
        self.assertEqual(ConnectivityGraph.preset("complete", 3).name, "complete(3)")
        with self.assertRaises(NotFoundError):
            ConnectivityGraph.preset("hexagon(6)")
        with self.assertRaises(NotFoundError):
            ConnectivityGraph.preset("ring[4]")
        with self.assertRaises(InvalidParameterError):
            ConnectivityGraph.preset("grid(3)")

    def testEdgeFile(self):
        graph = ConnectivityGraph.fromEdgeFile(os.path.join(TESTDIR, "data", "ring4.edges"))
        self.assertEqual(graph, ConnectivityGraph.ring(4))
        self.assertEqual(ConnectivityGraph.fromEdgeFile(os.path.join(TESTDIR, "data", "ring4.edges"), 6).n, 6)
        with self.assertRaises(CircuitFormatError) as cm:
            ConnectivityGraph.fromEdgeFile(os.path.join(TESTDIR, "data", "bad.edges"))
        self.assertEqual(cm.exception.lineno, 2)

    def testValidation(self):
        with self.assertRaises(InvalidParameterError):
            ConnectivityGraph.fromEdges(3, [(1, 1)])
        with self.assertRaises(InvalidParameterError):
            ConnectivityGraph.fromEdges(3, [(0, 3)])
        with self.assertRaises(InvalidParameterError):
            ConnectivityGraph(BitMatrix.fromArray([[0, 1], [0, 0]]))
        with self.assertRaises(InvalidParameterError):
            ConnectivityGraph(BitMatrix.identity(2))

    def testPermits(self):
        line = ConnectivityGraph.line(3)
        self.assertTrue(line.permits(BitMatrix.fromArray([[0, 1, 0], [1, 0, 0], [0, 0, 0]])))
        self.assertFalse(line.permits(BitMatrix.fromArray([[0, 0, 1], [0, 0, 0], [1, 0, 0]])))
        self.assertTrue(line.isConnected())
        self.assertFalse(ConnectivityGraph.fromEdges(3, [(0, 1)]).isConnected())
        self.assertTrue(ConnectivityGraph.fromEdges(1, []).isConnected())
        self.assertEqual(line.toNetworkx().number_of_edges(), 2)


class BaselineTestCase(unittest.TestCase):

    def testIdentity(self):
        circuit = baselineCompile(SymplecticMap.identity(3), ConnectivityGraph.line(3))
        self.assertEqual(circuit.length, 0)
        self.assertEqual(circuit.czCount, 0)

    def testSwapOnLine(self):
        swap = namedLogicalGate("SWAP@1,2", 2).symplectic
        circuit = baselineCompile(swap, ConnectivityGraph.line(2))
        self.assertEqual(circuit.length, 3)
        self.assertEqual(circuit.czCount, 3)
        self.assertEqual(circuitSymplectic(circuit).mat, swap.mat)

    def testDecomposition(self):
        rng = np.random.default_rng(7)
        for n in range(1, 6):
            smap = randomSymplectic(n, rng)
            sequence = decomposeSymplectic(smap)
            self.assertEqual(sequence.symplectic().mat, smap.mat)
            self.assertTrue({g.name for g in sequence.gates} <= {"H", "S", "SQRT_X", "CX"})

    def testRouting(self):
        line = ConnectivityGraph.line(4)
        routed = routeGates([("CZ", (0, 3))], line)
        self.assertTrue(all(line.allows(*qubits) for name, qubits in routed if name == "CZ"))
        direct = packLayers(4, [("CZ", (0, 3))])
        self.assertEqual(circuitSymplectic(packLayers(4, routed)).mat, circuitSymplectic(direct).mat)

    def testPacking(self):
        circuit = packLayers(3, [("H", (0,)), ("CZ", (0, 1)), ("CZ", (1, 2)), ("CZ", (1, 2)), ("S", (2,))])
        self.assertEqual(circuit.length, 2)
        self.assertEqual(circuit.czEdges(0), [(0, 1), (1, 2)])
        self.assertEqual(circuit.czEdges(1), [(1, 2)])

    def testRandomRoundTrip(self):
        rng = np.random.default_rng(2024)
        for trial in range(100):
            n = int(rng.integers(2, 7))
            connectivity = randomConnected(n, rng)
            smap = randomSymplectic(n, rng)
            circuit = baselineCompile(smap, connectivity)
            with self.subTest(trial=trial, n=n):
                self.assertEqual(circuitSymplectic(circuit).mat, smap.mat)
                self.assertTrue(all(connectivity.permits(gamma) for gamma in circuit.czls))

    def testErrors(self):
        with self.assertRaises(DomainError):
            baselineCompile(SymplecticMap.identity(3), ConnectivityGraph.fromEdges(3, [(0, 1)]))
        with self.assertRaises(LengthError):
            baselineCompile(SymplecticMap.identity(3), ConnectivityGraph.line(4))


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
