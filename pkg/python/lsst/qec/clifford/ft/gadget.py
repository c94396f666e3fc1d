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

"""Flag gadgets around Clifford circuits.

A guard ``P`` on a circuit segment ``U`` adds a flag qubit in ``|+>``, a
controlled ``Q = U^dagger P U`` before the segment and a controlled ``P``
after it. Without faults the two controlled operations cancel, so the
flag is measured as ``0`` in the X basis; a fault inside the segment whose
propagated error anticommutes with ``P`` kicks a phase onto the flag.
"""

from __future__ import annotations

__all__ = ["Guard", "GadgetCircuit", "backpropagate", "bareSequence", "buildFlagGadget", "isSound"]

import dataclasses
from typing import NamedTuple, Optional, Sequence, Union

from lsst.utils.logging import getLogger

from ..exceptions import InvalidParameterError, LengthError
from ..pauli import (CliffordTableau, GateKind, GateSequence, LayeredCircuit, PauliOp, circuitTableau,
                     flatten)

_log = getLogger(__name__)

_CONTROLLED = {"X": "CX", "Y": "CY", "Z": "CZ"}


class Guard(NamedTuple):
    """Guard Pauli ``pauli`` on the gate range ``[start, stop)`` of the
    bare circuit's operations; ``stop=None`` extends to the end."""

    pauli: PauliOp
    start: int = 0
    stop: Optional[int] = None

    def segment(self, numOps: int) -> tuple[int, int]:
        stop = numOps if self.stop is None else self.stop
        if not 0 <= self.start <= stop <= numOps:
            raise InvalidParameterError(f"guard segment [{self.start}, {stop}) outside [0, {numOps}]")
        return self.start, stop


@dataclasses.dataclass(frozen=True)
class GadgetCircuit:
    """A bare circuit on ``dataQubits`` qubits wrapped in flag gadgets.

    Flag qubits are numbered after the data qubits. ``guardPaulis`` holds
    the ``(P, Q)`` pair of every guard and ``flags`` the flag qubits each
    guard uses (two in two-flag mode).
    """

    dataQubits: int
    flagQubits: int
    ops: GateSequence
    guardPaulis: tuple[tuple[PauliOp, PauliOp], ...] = ()
    guards: tuple[Guard, ...] = ()
    flags: tuple[tuple[int, ...], ...] = ()
    twoFlags: bool = False

    @classmethod
    def bare(cls, circuit) -> GadgetCircuit:
        sequence = bareSequence(circuit)
        return cls(sequence.numQubits, 0, sequence)

    @property
    def numQubits(self) -> int:
        return self.dataQubits + self.flagQubits

    def unitaryPart(self) -> GateSequence:
        """The gates without flag resets and measurements."""
        return GateSequence(self.numQubits, [g for g in self.ops.operations()
                                             if g.definition.kind is GateKind.UNITARY])

    def withoutGate(self, index: int) -> GadgetCircuit:
        gates = list(self.ops.gates)
        del gates[index]
        return dataclasses.replace(self, ops=GateSequence(self.numQubits, gates))

    def withGates(self, gates) -> GadgetCircuit:
        return dataclasses.replace(self, ops=GateSequence(self.numQubits, gates))


def bareSequence(circuit: Union[LayeredCircuit, GateSequence]) -> GateSequence:
    if isinstance(circuit, LayeredCircuit):
        return flatten(circuit)
    if isinstance(circuit, GateSequence):
        return circuit
    raise InvalidParameterError(f"cannot wrap a {type(circuit).__name__} in a gadget")


def backpropagate(circuit: Union[LayeredCircuit, GateSequence, CliffordTableau], p: PauliOp) -> PauliOp:
    """``U^dagger p U`` with its exact sign."""
    tableau = circuitTableau(circuit)
    if tableau.n != p.n:
        raise LengthError(f"{p.n}-qubit Pauli on a {tableau.n}-qubit circuit")
    return tableau.inverse().conjugate(p)


def _controlledPauli(flag: int, pauli: PauliOp, order: Sequence[int]) -> list[tuple[str, tuple[int, ...]]]:
    gates = [(_CONTROLLED[pauli.label(q)], (flag, q)) for q in order if pauli.label(q) != "I"]
    if pauli.sign:
        gates.append(("Z", (flag,)))
    return gates


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def _laminar(a: tuple[int, int], b: tuple[int, int]) -> bool:
    nested = (a[0] <= b[0] and b[1] <= a[1]) or (b[0] <= a[0] and a[1] <= b[1])
    return nested or not _overlaps(a, b)


def buildFlagGadget(circuit: Union[LayeredCircuit, GateSequence], code, guards: Sequence,
                    twoFlags: bool = False, order: Optional[Sequence[int]] = None) -> GadgetCircuit:
    """Wrap ``circuit`` with one controlled-Q/controlled-P sandwich per
    guard.

    Parameters
    ----------
    circuit : `LayeredCircuit` or `GateSequence`
        Bare unitary circuit on the code's qubits.
    code : `StabilizerCode`
        The code (fixes the number of data qubits).
    guards : sequence of `Guard` or `PauliOp`
        Guard Paulis; a bare `PauliOp` guards the whole circuit.
    twoFlags : `bool`, optional
        Use a second flag per guard, entangled by CZ brackets, to catch
        hook errors on the first.
    order : sequence of `int`, optional
        Data-qubit order of the controlled-Pauli decomposition; ascending
        by default.

    Returns
    -------
    gadget : `GadgetCircuit`
        Flags are reset to ``|+>`` first and measured in the X basis last.
        Guards on disjoint segments share flags without reset; guards on
        overlapping segments get their own.

    Raises
    ------
    InvalidParameterError
        Raised for guards of the wrong size, non-Hermitian guards or
        segments that partially overlap.
    """
    bare = bareSequence(circuit)
    n = code.n
    if bare.numQubits != n:
        raise LengthError(f"circuit on {bare.numQubits} qubits, code on {n}")
    if not bare.isUnitary():
        raise InvalidParameterError("only unitary circuits can be wrapped in flag gadgets")
    ops = list(bare.operations())
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise InvalidParameterError(f"order {order} is not a permutation of the data qubits")

    normalized = [g if isinstance(g, Guard) else Guard(g) for g in guards]
    segments = [g.segment(len(ops)) for g in normalized]
    for i, g in enumerate(normalized):
        if g.pauli.n != n or not g.pauli.isHermitian():
            raise InvalidParameterError(f"guard {i + 1} must be a Hermitian {n}-qubit Pauli")
        for j in range(i):
            if not _laminar(segments[i], segments[j]):
                raise InvalidParameterError(f"segments of guards {j + 1} and {i + 1} partially overlap")

    width = 2 if twoFlags else 1
    slots: list[tuple[tuple[int, ...], list[tuple[int, int]]]] = []
    assignment = []
    for seg in segments:
        for qubits, used in slots:
            if all(not _overlaps(seg, other) and seg != other for other in used):
                used.append(seg)
                assignment.append(qubits)
                break
        else:
            qubits = tuple(range(n + width*len(slots), n + width*(len(slots) + 1)))
            slots.append((qubits, [seg]))
            assignment.append(qubits)
    numFlags = width*len(slots)

    pairs = []
    for g, (start, stop) in zip(normalized, segments):
        q = backpropagate(GateSequence(n, ops[start:stop]), g.pauli)
        pairs.append((g.pauli, q))

    def opening(i):
        flagQubits = assignment[i]
        gates = [("CZ", flagQubits)] if twoFlags else []
        return gates + _controlledPauli(flagQubits[0], pairs[i][1], order)

    def closing(i):
        flagQubits = assignment[i]
        gates = _controlledPauli(flagQubits[0], pairs[i][0], order)
        return gates + ([("CZ", flagQubits)] if twoFlags else [])

    gates: list = [("RP", (f,)) for f in range(n, n + numFlags)]
    for boundary in range(len(ops) + 1):
        ending = sorted((i for i, s in enumerate(segments) if s[1] == boundary),
                        key=lambda i: (-segments[i][0], -i))
        for i in ending:
            if segments[i][0] != boundary:
                gates.extend(closing(i))
        starting = sorted((i for i, s in enumerate(segments) if s[0] == boundary),
                          key=lambda i: (-segments[i][1], i))
        for i in starting:
            gates.extend(opening(i))
            if segments[i][1] == boundary:
                gates.extend(closing(i))
        if boundary < len(ops):
            gates.append(ops[boundary])
    gates.extend(("MX", (f,)) for f in range(n, n + numFlags))

    gadget = GadgetCircuit(n, numFlags, GateSequence(n + numFlags, gates), tuple(pairs), tuple(normalized),
                           tuple(assignment), twoFlags)
    _log.debug("Built gadget with %d guards on %d flag qubits", len(pairs), numFlags)
    return gadget


def isSound(gadget: GadgetCircuit) -> bool:
    """True if every flag measures ``0`` deterministically without faults.

    The X observable of each flag is backpropagated through the unitary
    part; it must come back as a ``+`` product of X operators on flags.
    """
    tableau = gadget.unitaryPart().tableau().inverse()
    n, total = gadget.dataQubits, gadget.numQubits
    for f in range(n, total):
        q = tableau.conjugate(PauliOp.single(total, f, "X"))
        if q.z.any() or any(x < n for x in q.x.support()) or q.sign:
            return False
    return True
