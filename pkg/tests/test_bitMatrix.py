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

"""Tests of packed GF(2) vectors and matrices."""

import pickle
import unittest

import numpy as np

import lsst.utils.tests
from lsst.qec.clifford import LengthError
from lsst.qec.clifford.gf2 import (BitMatrix, BitVector, inverse, isSymplectic, matMul, matVec, nullspace,
                                   omega, randomInvertible, rank, solve)


def denseMul(a, b):
    return (a.astype(int) @ b.astype(int)) % 2


class BitVectorTestCase(unittest.TestCase):

    def testConstruction(self):
        v = BitVector.fromString("10110")
        self.assertEqual(len(v), 5)
        self.assertEqual(list(v), [1, 0, 1, 1, 0])
        self.assertEqual(v.support(), [0, 2, 3])
        self.assertEqual(v.weight(), 3)
        self.assertEqual(str(v), "10110")
        self.assertFalse(BitVector.zeros(7).any())
        self.assertEqual(BitVector.unit(4, 2).support(), [2])

    def testWideVectors(self):
        """Vectors longer than one storage word."""
        dense = np.zeros(150, dtype=np.uint8)
        dense[[0, 63, 64, 149]] = 1
        v = BitVector.fromArray(dense)
        self.assertEqual(v.support(), [0, 63, 64, 149])
        self.assertEqual(v[64], 1)
        self.assertEqual(v[65], 0)
        self.assertEqual(v.slice(60, 70).support(), [3, 4])
        np.testing.assert_array_equal(v.toArray(), dense)

    def testArithmetic(self):
        a = BitVector.fromString("1100")
        b = BitVector.fromString("1010")
        self.assertEqual(a ^ b, BitVector.fromString("0110"))
        self.assertEqual(a & b, BitVector.fromString("1000"))
        self.assertEqual(a.dot(b), 1)
        self.assertEqual(a.dot(a), 0)
        self.assertEqual(a.concatenate(b), BitVector.fromString("11001010"))
        self.assertEqual(a.withEntry(3, 1), BitVector.fromString("1101"))
        with self.assertRaises(LengthError):
            a ^ BitVector.zeros(5)

    def testImmutable(self):
        v = BitVector.fromString("101")
        with self.assertRaises(ValueError):
            v.words[0] = 0
        self.assertEqual(hash(v), hash(BitVector.fromString("101")))

    def testPickle(self):
        v = BitVector.fromString("0110101")
        self.assertEqual(pickle.loads(pickle.dumps(v)), v)


class BitMatrixTestCase(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def testShapes(self):
        m = BitMatrix.fromArray([[1, 0, 1], [0, 1, 1]])
        self.assertEqual(m.shape, (2, 3))
        self.assertEqual(m.T.shape, (3, 2))
        self.assertEqual(m.row(1), BitVector.fromString("011"))
        self.assertEqual(m.column(2), BitVector.fromString("11"))
        self.assertEqual(m[0, 2], 1)
        self.assertEqual(m.toLists(), [[1, 0, 1], [0, 1, 1]])
        self.assertEqual(m.weight(), 4)
        self.assertEqual(m.submatrix([1], [0, 2]).toLists(), [[0, 1]])
        self.assertEqual(BitMatrix.fromArray([], cols=4).shape, (0, 4))

    def testMatMulAgainstNumpy(self):
        for rows, inner, cols in [(3, 4, 5), (10, 70, 3), (65, 65, 65)]:
            a = self.rng.integers(0, 2, size=(rows, inner), dtype=np.uint8)
            b = self.rng.integers(0, 2, size=(inner, cols), dtype=np.uint8)
            product = matMul(BitMatrix.fromArray(a), BitMatrix.fromArray(b))
            np.testing.assert_array_equal(product.toArray(), denseMul(a, b))
            self.assertEqual(BitMatrix.fromArray(a) @ BitMatrix.fromArray(b), product)
        with self.assertRaises(LengthError):
            matMul(BitMatrix.zeros(2, 3), BitMatrix.zeros(2, 3))

    def testMatVec(self):
        a = self.rng.integers(0, 2, size=(6, 9), dtype=np.uint8)
        x = self.rng.integers(0, 2, size=9, dtype=np.uint8)
        result = matVec(BitMatrix.fromArray(a), BitVector.fromArray(x))
        np.testing.assert_array_equal(result.toArray(), denseMul(a, x[:, np.newaxis])[:, 0])

    def testRank(self):
        self.assertEqual(rank(BitMatrix.identity(5)), 5)
        self.assertEqual(rank(BitMatrix.fromArray([[1, 1, 0], [0, 1, 1], [1, 0, 1]])), 2)
        self.assertEqual(rank(BitMatrix.zeros(3, 3)), 0)
        self.assertEqual(rank(BitMatrix.zeros(0, 3)), 0)

    def testNullspace(self):
        for _ in range(20):
            a = self.rng.integers(0, 2, size=(5, 9), dtype=np.uint8)
            m = BitMatrix.fromArray(a)
            kernel = nullspace(m)
            self.assertEqual(kernel.rows, 9 - rank(m))
            self.assertEqual(kernel.cols, 9)
            self.assertEqual(rank(kernel), kernel.rows)
            self.assertTrue(matMul(m, kernel.T).isZero())

    def testSolve(self):
        for _ in range(20):
            a = self.rng.integers(0, 2, size=(6, 6), dtype=np.uint8)
            x = self.rng.integers(0, 2, size=6, dtype=np.uint8)
            m = BitMatrix.fromArray(a)
            b = matVec(m, BitVector.fromArray(x))
            result = solve(m, b)
            self.assertIsNotNone(result.solution)
            self.assertEqual(matVec(m, result.solution), b)
            self.assertEqual(result.nullspace.rows, 6 - rank(m))

    def testSolveInconsistent(self):
        m = BitMatrix.fromArray([[1, 1], [1, 1]])
        result = solve(m, BitVector.fromString("10"))
        self.assertIsNone(result.solution)
        self.assertEqual(result.nullspace.toLists(), [[1, 1]])
        with self.assertRaises(LengthError):
            solve(m, BitVector.fromString("101"))

    def testInverse(self):
        for n in (1, 4, 9, 70):
            m = randomInvertible(n, self.rng)
            inv = inverse(m)
            self.assertIsNotNone(inv)
            self.assertEqual(matMul(m, inv), BitMatrix.identity(n))
        self.assertIsNone(inverse(BitMatrix.fromArray([[1, 1], [1, 1]])))
        with self.assertRaises(LengthError):
            inverse(BitMatrix.zeros(2, 3))

    def testSymplecticForm(self):
        self.assertTrue(isSymplectic(BitMatrix.identity(6), 3))
        self.assertTrue(isSymplectic(omega(3), 3))
        # CX(0 -> 1) on two qubits, columns are images of X0, X1, Z0, Z1
        cx = BitMatrix.fromArray([[1, 0, 0, 0],
                                  [1, 1, 0, 0],
                                  [0, 0, 1, 1],
                                  [0, 0, 0, 1]])
        self.assertTrue(isSymplectic(cx, 2))
        broken = cx.withEntry(3, 2, 1)
        self.assertFalse(isSymplectic(broken, 2))
        with self.assertRaises(LengthError):
            isSymplectic(BitMatrix.identity(3), 2)

    def testBlock(self):
        eye = BitMatrix.identity(2)
        zero = BitMatrix.zeros(2, 2)
        self.assertEqual(BitMatrix.block([[zero, eye], [eye, zero]]), omega(2))

    def testEquality(self):
        a = BitMatrix.fromArray([[1, 0], [0, 1]])
        self.assertEqual(a, BitMatrix.identity(2))
        self.assertNotEqual(a, BitMatrix.zeros(2, 2))
        self.assertEqual(len({a, BitMatrix.identity(2)}), 1)
        self.assertTrue(a.isSymmetric())
        self.assertEqual(a ^ a, BitMatrix.zeros(2, 2))


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
