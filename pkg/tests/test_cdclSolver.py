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


"""Tests of the bundled CDCL solver and the engine adapters."""

import itertools
import random
import unittest

import lsst.utils.tests
from lsst.qec.clifford import InvalidParameterError, NotFoundError
from lsst.qec.clifford.compile import BuiltinEngine, CdclSolver, SolverConfig, luby, makeEngine

try:
    import pysat.solvers  # noqa: F401
    HAVE_PYSAT_SOLVERS = True
except ImportError:
    HAVE_PYSAT_SOLVERS = False


def pigeonhole(pigeons, holes):
    """Clauses saying ``pigeons`` pigeons fit into ``holes`` holes."""
    def var(i, j):
        return i*holes + j + 1

    clauses = [[var(i, j) for j in range(holes)] for i in range(pigeons)]
    for j in range(holes):
        for a, b in itertools.combinations(range(pigeons), 2):
            clauses.append([-var(a, j), -var(b, j)])
    return clauses


def randomClauses(rng, numVars, numClauses, width=3):
    clauses = []
    for _ in range(numClauses):
        chosen = rng.sample(range(1, numVars + 1), width)
        clauses.append([v if rng.random() < 0.5 else -v for v in chosen])
    return clauses


def bruteForceSat(clauses, numVars):
    for bits in itertools.product((False, True), repeat=numVars):
        if all(any(bits[abs(lit) - 1] == (lit > 0) for lit in clause) for clause in clauses):
            return True
    return False


def satisfies(model, clauses):
    truth = set(model)
    return all(any(lit in truth for lit in clause) for clause in clauses)


class CdclSolverTestCase(unittest.TestCase):

    def testSmall(self):
        clauses = [[1, 2], [-1, 2], [1, -2]]
        solver = CdclSolver(clauses)
        self.assertTrue(solver.solve())
        model = solver.getModel()
        self.assertEqual(model, [1, 2])
        solver.addClause([-1, -2])
        self.assertFalse(solver.solve())
        self.assertIsNone(solver.getModel())
        # Once refuted the solver stays refuted.
        self.assertFalse(solver.addClause([3]))
        self.assertFalse(solver.solve())

    def testEmptyFormula(self):
        solver = CdclSolver()
        self.assertTrue(solver.solve())
        self.assertEqual(solver.getModel(), [])
        self.assertEqual(solver.numVars, 0)

    def testEmptyClause(self):
        solver = CdclSolver()
        self.assertFalse(solver.addClause([]))
        self.assertFalse(solver.solve())

    def testTautologiesAndDuplicates(self):
        solver = CdclSolver([[1, -1], [2, 2, 2]])
        self.assertEqual(solver.numClauses, 0)
        self.assertTrue(solver.solve())
        self.assertIn(2, solver.getModel())

    def testZeroLiteral(self):
        with self.assertRaises(InvalidParameterError):
            CdclSolver([[1, 0]])
        with self.assertRaises(InvalidParameterError):
            CdclSolver(randomFreq=1.5)
        with self.assertRaises(InvalidParameterError):
            CdclSolver(restartBase=0)

    def testPigeonhole(self):
        self.assertTrue(CdclSolver(pigeonhole(4, 4)).solve())
        for holes in (2, 3, 4):
            with self.subTest(holes=holes):
                solver = CdclSolver(pigeonhole(holes + 1, holes))
                self.assertFalse(solver.solve())
                self.assertGreater(solver.conflicts, 0)

    def testAssumptions(self):
        solver = CdclSolver([[1, 2], [-2, 3]])
        self.assertTrue(solver.solve([-1]))
        model = solver.getModel()
        self.assertIn(2, model)
        self.assertIn(3, model)
        self.assertFalse(solver.solve([-1, -3]))
        # Assumptions do not persist between calls.
        self.assertTrue(solver.solve())
        self.assertTrue(solver.solve([-1]))
        # Assumptions may mention fresh variables.
        self.assertTrue(solver.solve([7]))
        self.assertIn(7, solver.getModel())

    def testTimeLimit(self):
        solver = CdclSolver(pigeonhole(3, 2))
        self.assertIsNone(solver.solve(timeLimit=0))
        self.assertIsNone(solver.getModel())
        self.assertFalse(solver.solve(timeLimit=60))

    def testConflictLimit(self):
        solver = CdclSolver(pigeonhole(5, 4))
        self.assertIsNone(solver.solve(conflictLimit=1))
        self.assertEqual(solver.conflicts, 1)
        self.assertFalse(solver.solve())

    def testRandomAgainstBruteForce(self):
        rng = random.Random(12345)
        for trial in range(40):
            numVars = rng.randint(3, 9)
            clauses = randomClauses(rng, numVars, rng.randint(numVars, 5*numVars))
            solver = CdclSolver(clauses, seed=trial, randomFreq=0.05*(trial % 3), phaseSaving=bool(trial % 2),
                                restartBase=rng.choice([1, 5, 100]))
            result = solver.solve()
            with self.subTest(trial=trial):
                self.assertEqual(result, bruteForceSat(clauses, numVars))
                if result:
                    self.assertTrue(satisfies(solver.getModel(), clauses))

    def testLuby(self):
        self.assertEqual([luby(2, i) for i in range(15)], [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8])
        self.assertEqual(luby(3, 6), 9)

    def testContextManager(self):
        with CdclSolver([[1]]) as solver:
            self.assertTrue(solver.solve())


class EngineTestCase(unittest.TestCase):

    def testConfig(self):
        with self.assertRaises(NotFoundError):
            SolverConfig(engine="minisat")
        with self.assertRaises(InvalidParameterError):
            SolverConfig(conflictLimit=0)

    def testBuiltin(self):
        with makeEngine(SolverConfig(seed=3), pigeonhole(3, 3)) as engine:
            self.assertIsInstance(engine, BuiltinEngine)
            self.assertTrue(engine.solve())
            self.assertTrue(satisfies(engine.getModel(), pigeonhole(3, 3)))
            engine.addClauses(pigeonhole(4, 3))
            self.assertFalse(engine.solve())

    def testBuiltinConflictLimit(self):
        with makeEngine(SolverConfig(conflictLimit=1), pigeonhole(5, 4)) as engine:
            self.assertIsNone(engine.solve())

    @unittest.skipUnless(HAVE_PYSAT_SOLVERS, "python-sat solvers are not available")
    def testPySat(self):
        config = SolverConfig(engine="pysat", pysatName="glucose4")
        with makeEngine(config, pigeonhole(3, 3)) as engine:
            self.assertTrue(engine.solve())
            self.assertTrue(satisfies(engine.getModel(), pigeonhole(3, 3)))
            self.assertFalse(engine.solve([-1, -2, -3]))
            self.assertIsNone(engine.solve(timeLimit=0))
        with makeEngine(SolverConfig(engine="pysat"), pigeonhole(4, 3)) as engine:
            self.assertFalse(engine.solve(timeLimit=60))

    @unittest.skipUnless(HAVE_PYSAT_SOLVERS, "python-sat solvers are not available")
    def testPySatUnknownName(self):
        with self.assertRaises(NotFoundError):
            makeEngine(SolverConfig(engine="pysat", pysatName="no-such-solver"))


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
