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


"""Tests of the propositional encoding and the DIMACS exchange files."""

import unittest

from pysat.formula import WCNF

import lsst.utils.tests
from lsst.qec.clifford import CircuitFormatError, InvalidParameterError, LengthError
from lsst.qec.clifford.code import StabilizerCode, buildEncoding, reduceEncoding
from lsst.qec.clifford.compile import (CdclSolver, ConnectivityGraph, compileCircuit, decodeModel, encode,
                                       prepareInstance, readCnf, readModel, targetMatrix, writeCnf,
                                       writeWcnf)
from lsst.qec.clifford.gf2 import BitMatrix
from lsst.qec.clifford.pauli import namedLogicalGate

BARE_ONE = StabilizerCode([], ["X"], ["Z"], name="bare-1")
BARE_TWO = StabilizerCode([], ["XI", "IX"], ["ZI", "IZ"], name="bare-2")


class SatInstanceTestCase(unittest.TestCase):

    def testVariableLayout(self):
        instance = prepareInstance(BARE_TWO, namedLogicalGate("CZ@1,2", 2), 1, ConnectivityGraph.line(2))
        self.assertEqual((instance.n, instance.k, instance.length), (2, 2, 1))
        self.assertEqual(instance.sclVar(0, 0, "xx"), 1)
        self.assertEqual(instance.sclVar(0, 0, "zz"), 4)
        self.assertEqual(instance.sclVar(1, 1, "zz"), 16)
        self.assertEqual(instance.czVar(0, 1, 0), instance.czVar(0, 0, 1))
        self.assertEqual(instance.costLiterals, [instance.czVar(0, 0, 1)])
        self.assertEqual(instance.costWeights, [1])
        self.assertGreater(instance.numAuxVars, 0)
        self.assertEqual(instance.numVars, 17 + instance.numAuxVars)
        self.assertFalse(instance.trivial)
        self.assertIn("n=2", repr(instance))

    def testDisallowedEdges(self):
        instance = prepareInstance(BARE_TWO, namedLogicalGate("I@1", 2), 2,
                                   ConnectivityGraph.fromEdges(2, []))
        self.assertIsNone(instance.czVar(0, 0, 1))
        self.assertEqual(instance.costLiterals, [])

    def testFreeVariables(self):
        code = StabilizerCode(["ZZ"], ["XX"], ["ZI"])
        instance = prepareInstance(code, namedLogicalGate("X@1", 1), 0, ConnectivityGraph.complete(2))
        # One free row of width n + k.
        self.assertEqual(instance.freeVar(2, 0), 9)
        self.assertEqual(instance.freeVar(2, 2), 11)
        with self.assertRaises(KeyError):
            instance.freeVar(1, 0)

    def testSingleQubitIdentity(self):
        instance = prepareInstance(BARE_ONE, namedLogicalGate("I@1", 1), 0, ConnectivityGraph.complete(1))
        solver = CdclSolver(instance.clauses)
        self.assertTrue(solver.solve())
        decoded = decodeModel(instance, solver.getModel())
        self.assertEqual(decoded.czCount, 0)
        self.assertEqual(decoded.circuit.length, 0)
        self.assertEqual(decoded.circuit.symplectic().mat, BitMatrix.identity(2))

    def testEncodeErrors(self):
        encoding = reduceEncoding(buildEncoding(BARE_TWO))
        target = namedLogicalGate("H@1", 2)
        with self.assertRaises(InvalidParameterError):
            encode(encoding, target, -1, ConnectivityGraph.line(2))
        with self.assertRaises(LengthError):
            encode(encoding, target, 1, ConnectivityGraph.line(3))
        with self.assertRaises(LengthError):
            encode(encoding, namedLogicalGate("H@1", 1), 1, ConnectivityGraph.line(2))
        with self.assertRaises(InvalidParameterError):
            encode(encoding, BitMatrix.identity(4).withEntry(0, 1, 1), 1, ConnectivityGraph.line(2))
        with self.assertRaises(InvalidParameterError):
            targetMatrix("H@1", 2)

    def testModelRoundTrip(self):
        target = namedLogicalGate("CZ@1,2", 2)
        connectivity = ConnectivityGraph.line(2)
        result = compileCircuit(BARE_TWO, target, 1, connectivity)
        instance = prepareInstance(BARE_TWO, target, 1, connectivity)
        model = instance.modelFor(result.circuit, result.gauge)
        self.assertEqual(len(model), instance.numVars)
        self.assertTrue(instance.isSatisfiedBy(model))
        decoded = instance.decode(model)
        self.assertEqual(decoded.circuit, result.circuit.withPauliFrame(None))
        self.assertEqual(decoded.gauge, result.gauge)
        self.assertEqual(decoded.czCount, 1)

        cz = instance.czVar(0, 0, 1)
        mutated = [-lit if abs(lit) == cz else lit for lit in model]
        self.assertFalse(instance.isSatisfiedBy(mutated))

        with self.assertRaises(LengthError):
            prepareInstance(BARE_TWO, target, 2, connectivity).modelFor(result.circuit, result.gauge)


class DimacsTestCase(unittest.TestCase):

    def setUp(self):
        self.target = namedLogicalGate("CZ@1,2", 2)
        self.connectivity = ConnectivityGraph.line(2)
        self.instance = prepareInstance(BARE_TWO, self.target, 1, self.connectivity)

    def testCnf(self):
        with lsst.utils.tests.getTempFilePath(".cnf") as path:
            written = writeCnf(self.instance, path)
            with open(path) as fd:
                header = fd.readline()
            self.assertEqual(header.strip(), "c qec-clifford n=2 k=2 l=1")
            cnf = readCnf(path)
        self.assertEqual(cnf.clauses, self.instance.clauses)
        self.assertEqual(cnf.clauses, written.clauses)
        self.assertEqual(written.nv, self.instance.numVars)
        self.assertLessEqual(cnf.nv, self.instance.numVars)

    def testCnfWithBound(self):
        cz = self.instance.czVar(0, 0, 1)
        with lsst.utils.tests.getTempFilePath(".cnf") as path:
            writeCnf(self.instance, path, extraClauses=[[-cz]])
            solver = CdclSolver(readCnf(path).clauses)
        self.assertFalse(solver.solve())

    def testWcnf(self):
        with lsst.utils.tests.getTempFilePath(".wcnf") as path:
            writeWcnf(self.instance, path)
            wcnf = WCNF(from_file=path)
        self.assertEqual(wcnf.hard, self.instance.clauses)
        self.assertEqual(wcnf.soft, [[-lit] for lit in self.instance.costLiterals])
        self.assertEqual(wcnf.wght, [1])

    def testExternalModel(self):
        with lsst.utils.tests.getTempFilePath(".cnf") as path:
            writeCnf(self.instance, path)
            solver = CdclSolver(readCnf(path).clauses)
        self.assertTrue(solver.solve())
        values = " ".join(str(lit) for lit in solver.getModel())
        text = f"c solved elsewhere\ns SATISFIABLE\nv {values} 0\n"
        with lsst.utils.tests.getTempFilePath(".out") as path:
            with open(path, "w") as fd:
                fd.write(text)
            parsed = readModel(path)
        self.assertEqual(parsed.status, "SATISFIABLE")
        result = compileCircuit(BARE_TWO, self.target, 1, self.connectivity, model=parsed.model)
        self.assertEqual(result.status.value, "feasible")
        self.assertEqual(result.czCount, 1)
        with self.assertRaises(InvalidParameterError):
            compileCircuit(BARE_TWO, self.target, 1, self.connectivity,
                           model=[-lit for lit in parsed.model])

    def testReadModel(self):
        parsed = readModel("s SATISFIABLE\nv 1 -2\nv 3 0\n", fromText=True)
        self.assertEqual(parsed.status, "SATISFIABLE")
        self.assertEqual(parsed.model, [1, -2, 3])
        self.assertIsNone(parsed.cost)

        parsed = readModel("o 7\no 4\ns OPTIMUM FOUND\nv 0110\n", fromText=True)
        self.assertEqual(parsed.status, "OPTIMUM FOUND")
        self.assertEqual(parsed.model, [-1, 2, 3, -4])
        self.assertEqual(parsed.cost, 4)

        parsed = readModel("s UNSATISFIABLE\n", fromText=True)
        self.assertEqual(parsed.status, "UNSATISFIABLE")
        self.assertIsNone(parsed.model)

        with self.assertRaises(CircuitFormatError):
            readModel("v 1 x 0\n", fromText=True)
        with self.assertRaises(CircuitFormatError):
            readModel("o\n", fromText=True)


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
