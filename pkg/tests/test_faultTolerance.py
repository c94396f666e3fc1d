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


"""Tests of flag gadgets and exhaustive single-fault checking."""

import functools
import os
import unittest

import numpy as np

import lsst.utils.tests
from lsst.qec.clifford import BudgetExhaustedError, GuardSearchError, InvalidParameterError, LengthError
from lsst.qec.clifford.cli import readCircuit
from lsst.qec.clifford.code import builtin
from lsst.qec.clifford.compile import ConnectivityGraph, compileCircuit
from lsst.qec.clifford.ft import (FaultLocation, FaultModel, GadgetCircuit, Guard, backpropagate,
                                  buildFlagGadget, checkFaultTolerance, findGadget, findGuards, isDetectable,
                                  isSound, propagateFault)
from lsst.qec.clifford.pauli import GateKind, GateSequence, PauliOp, namedLogicalGate

TESTDIR = os.path.abspath(os.path.dirname(__file__))

I2 = np.eye(2, dtype=complex)
PAULIS = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}
ONE_QUBIT = dict(PAULIS, H=np.array([[1, 1], [1, -1]], dtype=complex)/np.sqrt(2), S=np.diag([1, 1j]))
CONTROLLED = {"CX": PAULIS["X"], "CY": PAULIS["Y"], "CZ": PAULIS["Z"]}


def embedded(n, ops):
    """Kronecker product with ``ops[q]`` on qubit ``q`` (qubit 0 leftmost)."""
    return functools.reduce(np.kron, [ops.get(q, I2) for q in range(n)])


def denseUnitary(n, gates):
    u = np.eye(2**n, dtype=complex)
    for gate in gates:
        if gate.name in ONE_QUBIT:
            g = embedded(n, {gate.qubits[0]: ONE_QUBIT[gate.name]})
        else:
            c, t = gate.qubits
            g = (embedded(n, {c: np.diag([1, 0])})
                 + embedded(n, {c: np.diag([0, 1]), t: CONTROLLED[gate.name]}))
        u = g @ u
    return u


def denseLabel(e, n):
    """Unsigned label of a matrix proportional to a Pauli product."""
    index = int(np.argmax(np.abs(e[:, 0])))
    xs = [(index >> (n - 1 - q)) & 1 for q in range(n)]
    diagonal = np.diag(embedded(n, {q: PAULIS["X"] for q in range(n) if xs[q]}) @ e)
    zs = [int(np.real(diagonal[1 << (n - 1 - q)]/diagonal[0]) < 0) for q in range(n)]
    return "".join("IXZY"[x + 2*z] for x, z in zip(xs, zs))


class PropagationTestCase(unittest.TestCase):

    def testThroughGates(self):
        cz = GateSequence(2, [("CZ", (0, 1))])
        result = propagateFault(cz, FaultLocation("incoming", -1, (0,)), "X")
        self.assertEqual(result.error.toString(), "+XZ")
        self.assertEqual(result.flips, ())

        cx = GateSequence(2, [("CX", (0, 1)), ("H", (1,))])
        result = propagateFault(cx, FaultLocation("incoming", -1, (0,)), "X")
        self.assertEqual(result.error.toString(), "+XZ")
        result = propagateFault(cx, FaultLocation("gate", 0, (0, 1), "CX"), "ZZ")
        self.assertEqual(result.error.toString(), "+ZX")
        result = propagateFault(cx, FaultLocation("gate", 1, (1,), "H"), PauliOp.fromString("Y"))
        self.assertEqual(result.error.toString(), "+IY")

    def testBadFaults(self):
        cz = GateSequence(2, [("CZ", (0, 1))])
        with self.assertRaises(LengthError):
            propagateFault(cz, FaultLocation("gate", 0, (0, 1), "CZ"), "X")
        with self.assertRaises(InvalidParameterError):
            propagateFault(cz, FaultLocation("gate", 0, (0, 1), "CZ"), "XQ")
        with self.assertRaises(InvalidParameterError):
            checkFaultTolerance("CZ 1 2", builtin("iceberg-4-2-2"))

    def testLocations(self):
        swap = readCircuit(os.path.join(TESTDIR, "data", "swap.circuit"), numQubits=4)
        gadget = GadgetCircuit.bare(swap)
        locations = FaultModel().locations(gadget)
        self.assertEqual(len(locations), 7)
        self.assertEqual(str(locations[0]), "incoming@1")
        self.assertEqual(str(locations[4]), "gate:CX@2,3#0")
        self.assertEqual(FaultModel().count(gadget), 4*3 + 3*15)
        self.assertEqual(FaultModel(includeIncoming=False).count(gadget), 45)

    def testDetectable(self):
        code = builtin("iceberg-4-2-2")
        self.assertTrue(isDetectable(PauliOp.fromString("XIII"), (), code))
        self.assertTrue(isDetectable(PauliOp.fromString("XXXX"), (), code))
        self.assertTrue(isDetectable(PauliOp.fromString("IIII"), (), code))
        self.assertFalse(isDetectable(PauliOp.fromString("IXXI"), (), code))
        self.assertTrue(isDetectable(PauliOp.fromString("IXXI"), (4,), code))


class GadgetTestCase(unittest.TestCase):

    def setUp(self):
        self.code = builtin("iceberg-4-2-2")
        self.swap = readCircuit(os.path.join(TESTDIR, "data", "swap.circuit"), numQubits=4)
        self.guard = PauliOp.fromString("XXII")

    def testBackpropagate(self):
        self.assertEqual(backpropagate(self.swap, self.guard), PauliOp.fromString("XIXI"))
        cz = GateSequence(2, [("CZ", (0, 1))])
        self.assertEqual(backpropagate(cz, PauliOp.fromString("XI")), PauliOp.fromString("XZ"))
        with self.assertRaises(LengthError):
            backpropagate(cz, self.guard)

    def testSingleGuard(self):
        gadget = buildFlagGadget(self.swap, self.code, [self.guard])
        self.assertEqual((gadget.dataQubits, gadget.flagQubits, gadget.numQubits), (4, 1, 5))
        self.assertEqual(gadget.guardPaulis, ((self.guard, PauliOp.fromString("XIXI")),))
        self.assertEqual(gadget.flags, ((4,),))
        gates = [str(g) for g in gadget.ops.gates]
        self.assertEqual(gates, ["RP 5", "CX 5 1", "CX 5 3", "CX 2 3", "CX 3 2", "CX 2 3", "CX 5 1", "CX 5 2",
                                 "MX 5"])
        self.assertTrue(isSound(gadget))
        self.assertEqual(len(gadget.unitaryPart()), 7)
        # Without its first controlled gate the flag no longer returns to |+>.
        self.assertFalse(isSound(gadget.withoutGate(1)))

    def testTwoFlags(self):
        gadget = buildFlagGadget(self.swap, self.code, [self.guard], twoFlags=True)
        self.assertEqual(gadget.flagQubits, 2)
        self.assertEqual(gadget.flags, ((4, 5),))
        self.assertTrue(gadget.twoFlags)
        self.assertTrue(isSound(gadget))
        gates = [str(g) for g in gadget.ops.gates]
        self.assertEqual(gates[:3], ["RP 5", "RP 6", "CZ 5 6"])
        self.assertEqual(gates[-3:], ["CZ 5 6", "MX 5", "MX 6"])

    def testHookErrorTriggersSecondFlag(self):
        gadget = buildFlagGadget(self.swap, self.code, [self.guard], twoFlags=True)
        position = [str(g) for g in gadget.ops.gates].index("CZ 5 6")
        location = FaultLocation("gate", position, (4, 5), "CZ")
        result = propagateFault(gadget, location, "XI")
        self.assertIn(5, result.flips)

    def testFlagReuse(self):
        disjoint = buildFlagGadget(self.swap, self.code, [Guard(self.guard, 0, 1), Guard(self.guard, 2, 3)])
        self.assertEqual(disjoint.flagQubits, 1)
        self.assertEqual(disjoint.flags, ((4,), (4,)))
        self.assertTrue(isSound(disjoint))
        nested = buildFlagGadget(self.swap, self.code, [Guard(self.guard, 0, 3), Guard(self.guard, 1, 2)])
        self.assertEqual(nested.flagQubits, 2)
        self.assertTrue(isSound(nested))
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(self.swap, self.code, [Guard(self.guard, 0, 2), Guard(self.guard, 1, 3)])

    def testSharedFlagParity(self):
        twice = GateSequence(4, list(self.swap.gates)*2)
        gadget = buildFlagGadget(twice, self.code, [Guard(self.guard, 0, 3), Guard(self.guard, 3)])
        self.assertEqual(gadget.flags, ((4,), (4,)))
        self.assertEqual(gadget.ops.count(GateKind.RESET), 1)
        gates = [str(g) for g in gadget.ops.gates]
        self.assertEqual(gates, ["RP 5", "CX 5 1", "CX 5 3", "CX 2 3", "CX 3 2", "CX 2 3", "CX 5 1", "CX 5 2",
                                 "CX 5 1", "CX 5 3", "CX 2 3", "CX 3 2", "CX 2 3", "CX 5 1", "CX 5 2",
                                 "MX 5"])
        self.assertTrue(isSound(gadget))
        # A fault inside the first segment flips the flag once; the second
        # sandwich sees the error whole and leaves the flag alone.
        result = propagateFault(gadget, FaultLocation("gate", 5, (1, 2), "CX"), "ZZ")
        self.assertEqual(result.error.toString(signed=False), "IZZI")
        self.assertEqual(result.flips, (4,))
        result = propagateFault(gadget, FaultLocation("gate", 12, (1, 2), "CX"), "ZZ")
        self.assertEqual(result.flips, (4,))
        result = propagateFault(gadget, FaultLocation("incoming", -1, (1,)), "Z")
        self.assertEqual(result.error.toString(signed=False), "IZII")
        self.assertEqual(result.flips, ())

    def testSwappedGuardGateIsUnsound(self):
        gadget = buildFlagGadget(self.swap, self.code, [self.guard])
        gates = list(gadget.ops.gates)
        for index, replacement in [(7, ("CZ", (4, 1))), (2, ("CX", (4, 3))), (1, ("CY", (4, 0)))]:
            mutated = gadget.withGates(gates[:index] + [replacement] + gates[index + 1:])
            self.assertFalse(isSound(mutated), msg=f"{gates[index]} -> {replacement}")
        twoFlags = buildFlagGadget(self.swap, self.code, [self.guard], twoFlags=True)
        gates = list(twoFlags.ops.gates)
        index = [str(g) for g in gates].index("CX 5 2")
        self.assertFalse(isSound(twoFlags.withGates(gates[:index] + [("CZ", (4, 1))] + gates[index + 1:])))

    def testFaultCount(self):
        mixed = GateSequence(4, [("H", (0,)), ("S", (3,)), ("CZ", (0, 3))] + list(self.swap.gates))
        gadgets = [
            buildFlagGadget(self.swap, self.code, [self.guard], twoFlags=True),
            buildFlagGadget(mixed, self.code, [PauliOp.fromString("ZIYI")]),
            GadgetCircuit.bare(mixed),
        ]
        for gadget in gadgets:
            ops = gadget.ops
            g1 = ops.count(GateKind.UNITARY, 1)
            g2 = ops.count(GateKind.UNITARY, 2)
            m, r = ops.count(GateKind.MEASURE), ops.count(GateKind.RESET)
            expected = 3*(g1 + m + r + gadget.dataQubits) + 15*g2
            self.assertEqual(FaultModel().count(gadget), expected)
            self.assertEqual(checkFaultTolerance(gadget, self.code).totalFaults, expected)
        self.assertEqual(FaultModel().count(gadgets[0]), 3*(2 + 2 + 4) + 15*9)

    def testGuardErrors(self):
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(self.swap, self.code, [PauliOp.fromString("iXXII")])
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(self.swap, self.code, [PauliOp.fromString("XX")])
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(self.swap, self.code, [Guard(self.guard, 2, 1)])
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(self.swap, self.code, [self.guard], order=[0, 1, 2])
        with self.assertRaises(InvalidParameterError):
            buildFlagGadget(GateSequence(4, [("MZ", (0,))]), self.code, [self.guard])
        with self.assertRaises(LengthError):
            buildFlagGadget(GateSequence(3), self.code, [])


class DensePropagationTestCase(unittest.TestCase):
    """Propagated faults against conjugation by the dense unitary of the
    remaining gates."""

    def setUp(self):
        code = builtin("iceberg-4-2-2")
        swap = readCircuit(os.path.join(TESTDIR, "data", "swap.circuit"), numQubits=4)
        guard = PauliOp.fromString("XXII")
        mixed = GateSequence(4, [("H", (0,)), ("S", (3,)), ("CZ", (0, 3))] + list(swap.gates))
        self.gadgets = [
            buildFlagGadget(swap, code, [guard], twoFlags=True),
            buildFlagGadget(GateSequence(4, list(swap.gates)*2), code, [Guard(guard, 0, 3), Guard(guard, 3)]),
            buildFlagGadget(mixed, code, [PauliOp.fromString("ZIYI")], twoFlags=True),
        ]

    def testAgainstDenseUnitaries(self):
        model = FaultModel()
        for gadget in self.gadgets:
            n, gates = gadget.numQubits, gadget.ops.gates
            checked = 0
            for location in model.locations(gadget):
                if location.kind == "measurement":
                    continue
                rest = [g for i, g in enumerate(gates)
                        if i > location.position and g.definition.kind is GateKind.UNITARY]
                u = denseUnitary(n, rest)
                for fault in model.faults(location):
                    p = embedded(n, {q: PAULIS[c] for q, c in zip(location.qubits, fault)})
                    label = denseLabel(u @ p @ u.conj().T, n)
                    result = propagateFault(gadget, location, fault)
                    msg = f"{location} {fault}"
                    self.assertEqual(result.error.toString(signed=False), label[:gadget.dataQubits], msg=msg)
                    flips = tuple(q for q in range(gadget.dataQubits, n) if label[q] in "ZY")
                    self.assertEqual(result.flips, flips, msg=msg)
                    checked += 1
            self.assertGreater(checked, 100)

    def testMeasurementFaults(self):
        gadget = self.gadgets[0]
        for location in FaultModel().locations(gadget):
            if location.kind != "measurement":
                continue
            for fault in "XYZ":
                result = propagateFault(gadget, location, fault)
                self.assertEqual(result.flips, location.qubits if fault in "YZ" else ())
                self.assertEqual(result.error.toString(signed=False), "IIII")


class FaultToleranceTestCase(unittest.TestCase):

    def setUp(self):
        self.code = builtin("iceberg-4-2-2")
        self.swap = readCircuit(os.path.join(TESTDIR, "data", "swap.circuit"), numQubits=4)

    def testBareSwapIsNotFaultTolerant(self):
        report = checkFaultTolerance(self.swap, self.code)
        self.assertFalse(report.verdict)
        self.assertEqual(report.totalLocations, 7)
        self.assertEqual(report.totalFaults, 57)
        errors = {u.error.toString(signed=False) for u in report.undetectable}
        self.assertLessEqual(errors, {"IXXI", "IZZI", "IYYI"})
        self.assertTrue(all(len(u.location.qubits) == 2 for u in report.undetectable))
        data = report.toDict()
        self.assertFalse(data["verdict"])
        self.assertEqual(len(data["undetectable"]), len(report.undetectable))

    def testSingleQubitCircuitIsFaultTolerant(self):
        circuit = GateSequence(4, [("H", (q,)) for q in range(4)])
        report = checkFaultTolerance(circuit, self.code)
        self.assertTrue(report.verdict)
        gadget = findGadget(circuit, self.code)
        self.assertEqual(gadget.flagQubits, 0)
        self.assertEqual(findGuards(circuit, self.code), [])

    def testFindGadget(self):
        gadget = findGadget(self.swap, self.code)
        self.assertGreater(gadget.flagQubits, 0)
        self.assertTrue(isSound(gadget))
        self.assertTrue(checkFaultTolerance(gadget, self.code).verdict)
        self.assertEqual(len(findGuards(self.swap, self.code)), len(gadget.guards))
        numOps = len(self.swap.operations())
        segments = [g.segment(numOps) for g in gadget.guards]
        for i in range(len(segments)):
            for j in range(i):
                if gadget.flags[i] == gadget.flags[j]:
                    self.assertTrue(segments[i][1] <= segments[j][0] or segments[j][1] <= segments[i][0])
        width = 2 if gadget.twoFlags else 1
        self.assertLessEqual(gadget.flagQubits, width*len(gadget.guards))

        # Swapping the Pauli of the last flag-controlled gate breaks the sandwich.
        gates = list(gadget.ops.gates)
        index = max(i for i, g in enumerate(gates) if g.name in ("CX", "CY", "CZ")
                    and g.qubits[0] >= 4 and g.qubits[1] < 4)
        swapped = {"CX": "CZ", "CY": "CX", "CZ": "CX"}[gates[index].name]
        mutated = gadget.withGates(gates[:index] + [(swapped, gates[index].qubits)] + gates[index + 1:])
        self.assertFalse(isSound(mutated))

        # Dropping the flag measurements hides the faults the guards caught.
        unflagged = gadget.withGates([g for g in gadget.ops.gates if g.name != "MX"])
        self.assertFalse(checkFaultTolerance(unflagged, self.code).verdict)

    def testFlaggedSequence(self):
        gadget = findGadget(self.swap, self.code)
        expected = checkFaultTolerance(gadget, self.code)
        # Written out as a plain circuit, the qubits past the code are flags.
        report = checkFaultTolerance(gadget.ops, self.code)
        self.assertTrue(report.verdict)
        self.assertEqual((report.totalLocations, report.totalFaults),
                         (expected.totalLocations, expected.totalFaults))
        self.assertFalse(checkFaultTolerance(self.swap, self.code).verdict)

    def testGuardBudget(self):
        with self.assertRaises(GuardSearchError):
            findGadget(self.swap, self.code, maxGuards=0)

    def testSizeMismatch(self):
        with self.assertRaises(LengthError):
            checkFaultTolerance(GateSequence(3), self.code)


@unittest.skipUnless(os.environ.get("QEC_CLIFFORD_LONG_TESTS"), "set QEC_CLIFFORD_LONG_TESTS to run")
class CompiledGadgetTestCase(unittest.TestCase):

    def testColorCodeHadamard(self):
        code = builtin("color-8-3-2")
        try:
            result = compileCircuit(code, namedLogicalGate("H@1", 3), 3, ConnectivityGraph.cube8(),
                                    budget=3600)
        except BudgetExhaustedError:
            self.skipTest("no circuit within the budget")
        gadget = findGadget(result.circuit, code)
        self.assertTrue(isSound(gadget))
        self.assertTrue(checkFaultTolerance(gadget, code).verdict)


class TestMemory(lsst.utils.tests.MemoryTestCase):
    pass


def setup_module(module):
    lsst.utils.tests.init()


if __name__ == "__main__":
    lsst.utils.tests.init()
    unittest.main()
