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

"""Tests of stabilizer codes, the built-in library and encoding
matrices."""

import os
import unittest

import lsst.utils.tests
from lsst.qec.clifford import CodeValidationError, InvalidParameterError, LengthError, NotFoundError
from lsst.qec.clifford.code import (StabilizerCode, buildEncoding, builtin, iceberg, listBuiltins, loadCode,
                                    readCode, reduceEncoding, validate, writeCode)
from lsst.qec.clifford.gf2 import BitVector, isSymplectic, matMul, rank
from lsst.qec.clifford.pauli import PauliOp

TESTDIR = os.path.abspath(os.path.dirname(__file__))


class ValidationTestCase(unittest.TestCase):

    def testBuiltinsValidate(self):
        self.assertEqual(listBuiltins(), ["iceberg-4-2-2", "twisted-toric-12-2-3", "color-8-3-2"])
        sizes = {"iceberg-4-2-2": (4, 2), "twisted-toric-12-2-3": (12, 2), "color-8-3-2": (8, 3)}
        for name in listBuiltins():
            code = builtin(name)
            result = validate(code)
            self.assertTrue(result.ok, msg=f"{name}: {result.diagnostics}")
            self.assertEqual((code.n, code.k), sizes[name])
            self.assertEqual(code.name, name)
            self.assertIs(code.checked(), code)

    def testIcebergFamily(self):
        for n in (4, 6, 8):
            code = iceberg(n)
            self.assertEqual((code.n, code.k), (n, n - 2))
            self.assertTrue(validate(code))
        for n in (2, 5):
            with self.assertRaises(InvalidParameterError):
                iceberg(n)

    def testAnticommutingStabilizers(self):
        code = StabilizerCode(["XXII", "ZIII"], ["IIXI", "IIIX"], ["IIZI", "IIIZ"])
        result = validate(code)
        self.assertFalse(result)
        self.assertEqual(result.diagnostics,
                         ["stabilizer[1] and stabilizer[2] anticommute but must commute"])
        with self.assertRaises(CodeValidationError) as cm:
            code.checked()
        self.assertEqual(cm.exception.diagnostics, result.diagnostics)

    def testDependentStabilizers(self):
        code = StabilizerCode(["XXXX", "XXXX"], ["XXII", "XIXI"], ["IZIZ", "IIZZ"])
        diagnostics = validate(code).diagnostics
        self.assertEqual(len(diagnostics), 1)
        self.assertIn("dependent", diagnostics[0])
        self.assertIn("stabilizer[2]", diagnostics[0])

    def testLogicalConditions(self):
        # logical_x[1] anticommutes with ZZZZ
        code = StabilizerCode(["XXXX", "ZZZZ"], ["XIII", "XIXI"], ["IZIZ", "IIZZ"])
        self.assertEqual(validate(code).diagnostics,
                         ["logical_x[1] and stabilizer[2] anticommute but must commute"])
        # logical pairs crossed
        code = StabilizerCode(["XXXX", "ZZZZ"], ["XXII", "XIXI"], ["IIZZ", "IZIZ"])
        self.assertEqual(validate(code).diagnostics,
                         ["logical_x[1] and logical_z[1] commute but must anticommute"])

    def testCountsAndSizes(self):
        code = StabilizerCode(["XXXX"], ["XXII", "XIXI"], ["IZIZ", "IIZZ"])
        self.assertIn("expected n - k = 2 stabilizer generators, got 1", validate(code).diagnostics)
        code = StabilizerCode(["XXXX", "ZZZ"], ["XXII", "XIXI"], ["IZIZ", "IIZZ"])
        self.assertIn("stabilizer[2] acts on 3 qubits instead of 4", validate(code).diagnostics)
        code = StabilizerCode(["XXXX", "iZZZZ"], ["XXII", "XIXI"], ["IZIZ", "IIZZ"])
        self.assertIn("not Hermitian", validate(code).diagnostics[0])
        with self.assertRaises(LengthError):
            StabilizerCode([], [], [])


class CodeOperationsTestCase(unittest.TestCase):

    def setUp(self):
        self.code = iceberg(4)

    def testSyndromes(self):
        self.assertEqual(self.code.syndrome(PauliOp.fromString("XIII")), BitVector.fromString("01"))
        self.assertEqual(self.code.syndrome(PauliOp.fromString("YIII")), BitVector.fromString("11"))
        self.assertEqual(self.code.syndrome(PauliOp.fromString("XXII")), BitVector.fromString("00"))

    def testStabilizerGroup(self):
        yyyy = PauliOp.fromString("YYYY")
        self.assertTrue(self.code.isStabilizerElement(yyyy))
        self.assertEqual(self.code.stabilizerExpansion(yyyy.vector), [0, 1])
        self.assertEqual(self.code.stabilizerProduct([0, 1]), yyyy)
        self.assertFalse(self.code.isStabilizerElement(PauliOp.fromString("XXII")))
        with self.assertRaises(LengthError):
            self.code.stabilizerExpansion(BitVector.zeros(4))

    def testLogicalOperator(self):
        self.assertEqual(self.code.logicalOperator(PauliOp.fromString("XI")), PauliOp.fromString("XXII"))
        self.assertEqual(self.code.logicalOperator(PauliOp.fromString("IZ")), PauliOp.fromString("IIZZ"))
        ybar = self.code.logicalOperator(PauliOp.fromString("YI"))
        self.assertEqual(ybar, PauliOp.fromString("iXXII")*PauliOp.fromString("IZIZ"))
        self.assertTrue(ybar.isHermitian())
        with self.assertRaises(LengthError):
            self.code.logicalOperator(PauliOp.fromString("X"))


class CodeFileTestCase(unittest.TestCase):

    def testReadJson(self):
        code = readCode(os.path.join(TESTDIR, "data", "iceberg.code.json"))
        self.assertEqual(code, iceberg(4))
        self.assertEqual(loadCode(os.path.join(TESTDIR, "data", "iceberg.code.json")), code)

    def testReadYamlOverride(self):
        """A code file may override the built-in logical operators."""
        code = readCode(os.path.join(TESTDIR, "data", "iceberg.code.yaml"))
        self.assertTrue(validate(code))
        self.assertEqual(code.stabilizers, iceberg(4).stabilizers)
        self.assertEqual(code.logicalX, tuple(reversed(iceberg(4).logicalX)))
        self.assertEqual(code.name, "iceberg-4-2-2-swapped")

    def testBadFiles(self):
        code = readCode(os.path.join(TESTDIR, "data", "bad.code.json"))
        self.assertFalse(validate(code))
        with lsst.utils.tests.getTempFilePath(".code.json") as path:
            with open(path, "w") as fd:
                fd.write('{"n": 4, "stabilizers": ["XXXX"]}')
            with self.assertRaises(CodeValidationError) as cm:
                readCode(path)
            self.assertIn("missing field 'logical_x'", cm.exception.diagnostics)
        with lsst.utils.tests.getTempFilePath(".code.json") as path:
            with open(path, "w") as fd:
                fd.write("{not json")
            with self.assertRaises(CodeValidationError):
                readCode(path)
        with self.assertRaises(NotFoundError):
            loadCode("no-such-code")

    def testRoundTrip(self):
        for name in listBuiltins():
            for ext in (".code.json", ".code.yaml"):
                with lsst.utils.tests.getTempFilePath(ext) as path:
                    writeCode(builtin(name), path)
                    self.assertEqual(readCode(path), builtin(name))


class EncodingTestCase(unittest.TestCase):

    def testEncodingMatrices(self):
        for name in listBuiltins():
            code = builtin(name)
            n, k = code.n, code.k
            encoding = buildEncoding(code)
            self.assertEqual(encoding.e.shape, (2*n, 2*n))
            self.assertTrue(isSymplectic(encoding.e, n))
            for i in range(k):
                self.assertEqual(encoding.e.column(i), code.logicalX[i].vector)
                self.assertEqual(encoding.e.column(n + i), code.logicalZ[i].vector)
            for j in range(n - k):
                self.assertEqual(encoding.e.column(n + k + j), code.stabilizers[j].vector)
            self.assertEqual(matMul(encoding.e, encoding.inverse()).toLists(),
                             [[int(r == c) for c in range(2*n)] for r in range(2*n)])

            reduced = reduceEncoding(encoding)
            self.assertEqual(reduced.ePrime.shape, (2*n, n + k))
            self.assertEqual(reduced.width, n + k)
            self.assertEqual(rank(reduced.ePrime.T), n + k)
            self.assertEqual(reduced.ePrime.column(k), code.logicalZ[0].vector)

    def testInvalidCodeHasNoEncoding(self):
        with self.assertRaises(CodeValidationError):
            buildEncoding(StabilizerCode(["XXII", "ZIII"], ["IIXI", "IIIX"], ["IIZI", "IIIZ"]))


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
