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

"""Exhaustive single-fault enumeration for distance-2 codes."""

from __future__ import annotations

__all__ = ["ONE_QUBIT_FAULTS", "TWO_QUBIT_FAULTS", "FaultLocation", "FaultModel", "PropagatedFault",
           "UndetectableFault", "FaultReport", "propagateFault", "isDetectable", "checkFaultTolerance"]

import dataclasses
import functools
import logging
from typing import NamedTuple, Optional, Union

import numpy as np
from lsst.utils.logging import getLogger
from lsst.utils.timer import time_this

from ..exceptions import InvalidParameterError, LengthError
from ..gf2 import BitVector
from ..pauli import GateKind, GateSequence, LayeredCircuit, PauliOp, getGate
from .gadget import GadgetCircuit, bareSequence

_log = getLogger(__name__)

ONE_QUBIT_FAULTS = ("X", "Y", "Z")
TWO_QUBIT_FAULTS = tuple(a + b for a in "IXYZ" for b in "IXYZ" if a + b != "II")

_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


class FaultLocation(NamedTuple):
    """Where a fault is inserted.

    ``kind`` is ``incoming`` (data qubit before the circuit), ``gate``
    (after a unitary gate), ``measurement`` (before a measurement) or
    ``reset`` (after a reset); ``position`` indexes ``ops.gates`` and is
    -1 for incoming faults.
    """

    kind: str
    position: int
    qubits: tuple[int, ...]
    gate: Optional[str] = None

    def __str__(self):
        qubits = ",".join(str(q + 1) for q in self.qubits)
        if self.kind == "incoming":
            return f"incoming@{qubits}"
        return f"{self.kind}:{self.gate}@{qubits}#{self.position}"


@dataclasses.dataclass(frozen=True)
class FaultModel:
    """Single Pauli faults: three per one-qubit location and fifteen per
    two-qubit gate."""

    includeIncoming: bool = True

    def locations(self, gadget: GadgetCircuit) -> list[FaultLocation]:
        result = []
        if self.includeIncoming:
            result.extend(FaultLocation("incoming", -1, (q,)) for q in range(gadget.dataQubits))
        for position, gate in enumerate(gadget.ops.gates):
            kind = gate.definition.kind
            if kind is GateKind.ANNOTATION:
                continue
            label = {GateKind.UNITARY: "gate", GateKind.MEASURE: "measurement",
                     GateKind.RESET: "reset"}[kind]
            result.append(FaultLocation(label, position, gate.qubits, gate.name))
        return result

    def faults(self, location: FaultLocation) -> tuple[str, ...]:
        return TWO_QUBIT_FAULTS if len(location.qubits) == 2 else ONE_QUBIT_FAULTS

    def count(self, gadget: GadgetCircuit) -> int:
        return sum(len(self.faults(loc)) for loc in self.locations(gadget))


@functools.lru_cache(maxsize=None)
def _gateTable(name: str) -> tuple[int, ...]:
    """Binary action of a unitary gate on local Pauli indices; bit ``2j``
    is the X part and bit ``2j+1`` the Z part of local qubit ``j``."""
    gate = getGate(name)
    arity = gate.arity
    mat = gate.tableau.symplectic.mat.toArray().astype(np.int64)
    table = []
    for index in range(4**arity):
        x = [(index >> (2*j)) & 1 for j in range(arity)]
        z = [(index >> (2*j + 1)) & 1 for j in range(arity)]
        out = mat.dot(np.array(x + z)) % 2
        table.append(sum(int(out[j]) << (2*j) | int(out[arity + j]) << (2*j + 1) for j in range(arity)))
    return tuple(table)


class _Propagator:
    """Sign-free Pauli propagation on ``(x, z)`` bitmasks."""

    def __init__(self, ops: GateSequence):
        self.steps = []
        for gate in ops.gates:
            definition = gate.definition
            if definition.kind is GateKind.UNITARY:
                self.steps.append(("u", gate.qubits, _gateTable(gate.name)))
            elif definition.kind is GateKind.MEASURE:
                self.steps.append(("m", gate.qubits, definition.basis))
            elif definition.kind is GateKind.RESET:
                self.steps.append(("r", gate.qubits, None))
            else:
                self.steps.append(("t", (), None))

    def run(self, x: int, z: int, start: int, stop: Optional[int] = None) -> tuple[int, int, tuple[int, ...]]:
        flips = []
        for kind, qubits, data in self.steps[start:stop]:
            if kind == "u":
                index = 0
                for j, q in enumerate(qubits):
                    index |= ((x >> q) & 1) << (2*j) | ((z >> q) & 1) << (2*j + 1)
                out = data[index]
                for j, q in enumerate(qubits):
                    mask = 1 << q
                    x = (x | mask) if (out >> (2*j)) & 1 else (x & ~mask)
                    z = (z | mask) if (out >> (2*j + 1)) & 1 else (z & ~mask)
            elif kind in ("m", "r"):
                (q,) = qubits
                mask = 1 << q
                if kind == "m" and ((z if data == "X" else x) & mask):
                    flips.append(q)
                x &= ~mask
                z &= ~mask
        return x, z, tuple(flips)


class PropagatedFault(NamedTuple):
    """Residual data error and the qubits whose measurement flipped."""

    error: PauliOp
    flips: tuple[int, ...]


class UndetectableFault(NamedTuple):
    location: FaultLocation
    fault: str
    error: PauliOp


@dataclasses.dataclass
class FaultReport:
    totalLocations: int
    totalFaults: int
    undetectable: list[UndetectableFault] = dataclasses.field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.undetectable

    def toDict(self) -> dict:
        return {
            "verdict": self.verdict,
            "total_locations": self.totalLocations,
            "total_faults": self.totalFaults,
            "undetectable": [{"location": str(u.location), "fault": u.fault, "error": u.error.toString()}
                             for u in self.undetectable],
        }


def _asGadget(gadget, dataQubits: Optional[int] = None) -> GadgetCircuit:
    """Wrap a plain circuit; qubits from ``dataQubits`` on are flags."""
    if isinstance(gadget, GadgetCircuit):
        return gadget
    if isinstance(gadget, (LayeredCircuit, GateSequence)):
        sequence = bareSequence(gadget)
        if dataQubits is not None and sequence.numQubits > dataQubits:
            return GadgetCircuit(dataQubits, sequence.numQubits - dataQubits, sequence)
        return GadgetCircuit.bare(sequence)
    raise InvalidParameterError(f"cannot check a {type(gadget).__name__}")


def _masks(fault: Union[str, PauliOp], qubits: tuple[int, ...]) -> tuple[int, int]:
    if isinstance(fault, PauliOp):
        fault = "".join(fault.label(j) for j in range(fault.n))
    if len(fault) != len(qubits):
        raise LengthError(f"fault {fault!r} does not fit location qubits {qubits}")
    x = z = 0
    for label, q in zip(fault.upper(), qubits):
        if label not in _BITS:
            raise InvalidParameterError(f"invalid Pauli label {label!r}")
        bx, bz = _BITS[label]
        x |= bx << q
        z |= bz << q
    return x, z


def _dataError(x: int, z: int, n: int) -> PauliOp:
    xs = BitVector.fromArray([(x >> q) & 1 for q in range(n)])
    zs = BitVector.fromArray([(z >> q) & 1 for q in range(n)])
    return PauliOp.fromBits(xs, zs)


def _start(location: FaultLocation) -> int:
    if location.kind == "incoming":
        return 0
    if location.kind == "measurement":
        return location.position
    return location.position + 1


def _propagate(propagator: _Propagator, gadget: GadgetCircuit, location: FaultLocation,
               fault) -> PropagatedFault:
    x, z = _masks(fault, location.qubits)
    x, z, flips = propagator.run(x, z, _start(location))
    n = gadget.dataQubits
    flagFlips = tuple(q for q in flips if q >= n)
    return PropagatedFault(_dataError(x, z, n), flagFlips)


def propagateFault(gadget, location: FaultLocation, fault: Union[str, PauliOp]) -> PropagatedFault:
    """Push a fault to the end of the gadget.

    Parameters
    ----------
    gadget : `GadgetCircuit`, `LayeredCircuit` or `GateSequence`
        Circuit; bare circuits have no flags.
    location : `FaultLocation`
        Insertion point.
    fault : `str` or `PauliOp`
        Pauli on the location's qubits, e.g. ``"XZ"``.

    Returns
    -------
    result : `PropagatedFault`
        The final error on the data qubits (unsigned) and the flag qubits
        whose X-basis outcome flipped.
    """
    gadget = _asGadget(gadget)
    return _propagate(_Propagator(gadget.ops), gadget, location, fault)


def isDetectable(error: PauliOp, flagFlips, code) -> bool:
    """A flipped flag, a non-zero syndrome or a stabilizer element (up to
    sign) makes an error harmless."""
    if flagFlips:
        return True
    if code.syndrome(error).any():
        return True
    return code.stabilizerExpansion(error.vector) is not None


def checkFaultTolerance(gadget, code, model: Optional[FaultModel] = None) -> FaultReport:
    """Enumerate every single fault and collect the undetectable ones.

    Only the single-fault criterion of distance-2 codes is certified. A
    plain circuit wider than the code carries its flags on the extra qubits.
    """
    gadget = _asGadget(gadget, code.n)
    if gadget.dataQubits != code.n:
        raise LengthError(f"gadget has {gadget.dataQubits} data qubits, code has {code.n}")
    model = model or FaultModel()
    propagator = _Propagator(gadget.ops)
    locations = model.locations(gadget)
    report = FaultReport(len(locations), 0)
    cache: dict[tuple[BitVector, BitVector], bool] = {}
    with time_this(log=_log, msg="Fault enumeration", level=logging.DEBUG):
        for location in locations:
            for fault in model.faults(location):
                report.totalFaults += 1
                result = _propagate(propagator, gadget, location, fault)
                if result.flips:
                    continue
                key = (result.error.x, result.error.z)
                if key not in cache:
                    cache[key] = isDetectable(result.error, (), code)
                if not cache[key]:
                    report.undetectable.append(UndetectableFault(location, fault, result.error))
    _log.verbose("Checked %d faults at %d locations: %d undetectable", report.totalFaults,
                 report.totalLocations, len(report.undetectable))
    return report
