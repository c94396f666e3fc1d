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

"""Layered SCL/CZL circuits and flat gate sequences."""

from __future__ import annotations

__all__ = ["Gate", "GateSequence", "LayeredCircuit", "circuitSymplectic", "flatten", "circuitTableau"]

from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from ..exceptions import InvalidParameterError, LengthError
from ..gf2 import BitMatrix, matMul
from .gates import GATE_DEFINITIONS, GateKind, SingleQubitClifford, applyGate, getGate
from .pauliOp import PauliOp
from .tableau import CliffordTableau, SymplecticMap, czlSymplectic, sclSymplectic


class Gate(NamedTuple):
    """A primitive gate on 0-based qubit indices."""

    name: str
    qubits: tuple[int, ...]

    @property
    def definition(self):
        return GATE_DEFINITIONS[self.name]

    def __str__(self):
        return " ".join([self.name] + [str(q + 1) for q in self.qubits])


class GateSequence:
    """An ordered list of primitive gates.

    ``TICK`` entries mark layer boundaries and have no effect.

    Parameters
    ----------
    numQubits : `int`
        Register size.
    gates : iterable of `Gate` or ``(name, qubits)`` pairs
        Gates in time order.

    Raises
    ------
    InvalidParameterError
        Raised for wrong arities, repeated or out-of-range qubits.
    """

    __slots__ = ("_numQubits", "_gates")

    def __init__(self, numQubits: int, gates: Iterable = ()):
        self._numQubits = numQubits
        checked = []
        for entry in gates:
            name, qubits = entry
            gate = Gate(getGate(name).name, tuple(int(q) for q in qubits))
            definition = gate.definition
            if len(gate.qubits) != definition.arity:
                raise InvalidParameterError(f"{gate.name} takes {definition.arity} qubits, got {gate.qubits}")
            if len(set(gate.qubits)) != len(gate.qubits):
                raise InvalidParameterError(f"{gate.name} acts twice on the same qubit: {gate.qubits}")
            for q in gate.qubits:
                if not 0 <= q < numQubits:
                    raise InvalidParameterError(f"qubit {q + 1} out of range for {numQubits} qubits")
            checked.append(gate)
        self._gates = tuple(checked)

    @property
    def numQubits(self) -> int:
        return self._numQubits

    @property
    def gates(self) -> tuple[Gate, ...]:
        return self._gates

    def operations(self) -> tuple[Gate, ...]:
        """All gates except ``TICK`` annotations."""
        return tuple(g for g in self._gates if g.name != "TICK")

    def isUnitary(self) -> bool:
        return all(g.definition.kind in (GateKind.UNITARY, GateKind.ANNOTATION) for g in self._gates)

    def count(self, kind: GateKind, arity: Optional[int] = None) -> int:
        return sum(1 for g in self._gates if g.definition.kind is kind
                   and (arity is None or g.definition.arity == arity))

    def twoQubitCount(self) -> int:
        return self.count(GateKind.UNITARY, 2)

    def tableau(self) -> CliffordTableau:
        """Tableau of the whole sequence.

        Raises
        ------
        InvalidParameterError
            Raised if the sequence contains resets or measurements.
        """
        if not self.isUnitary():
            raise InvalidParameterError("only unitary gate sequences have a tableau")
        images = list(CliffordTableau.identity(self._numQubits).images)
        for gate in self.operations():
            images = [applyGate(p, gate.name, gate.qubits) for p in images]
        return CliffordTableau(images, check=False)

    def symplectic(self) -> SymplecticMap:
        return self.tableau().symplectic

    def inverse(self) -> GateSequence:
        if not self.isUnitary():
            raise InvalidParameterError("only unitary gate sequences can be inverted")
        return GateSequence(self._numQubits,
                            [Gate(g.definition.inverseName or g.name, g.qubits)
                             for g in reversed(self._gates)])

    def __add__(self, other: GateSequence) -> GateSequence:
        if other.numQubits != self._numQubits:
            raise LengthError(f"cannot concatenate {self._numQubits}- and {other.numQubits}-qubit sequences")
        return GateSequence(self._numQubits, self._gates + other.gates)

    def withGates(self, gates: Iterable) -> GateSequence:
        return GateSequence(self._numQubits, gates)

    def __len__(self):
        return len(self._gates)

    def __iter__(self):
        return iter(self._gates)

    def __getitem__(self, index):
        return self._gates[index]

    def __eq__(self, other):
        if not isinstance(other, GateSequence):
            return NotImplemented
        return self._numQubits == other._numQubits and self._gates == other._gates

    def __hash__(self):
        return hash((self._numQubits, self._gates))

    def __repr__(self):
        return f"GateSequence({self._numQubits}, [{'; '.join(str(g) for g in self._gates)}])"


def _asClifford(entry) -> SingleQubitClifford:
    if isinstance(entry, SingleQubitClifford):
        return entry
    if isinstance(entry, str):
        return SingleQubitClifford.fromWord(entry.split())
    from .tableau import singleQubitBlock
    return SingleQubitClifford.canonical(singleQubitBlock(entry))


class LayeredCircuit:
    """The alternating ansatz ``B_{l+1} G_l ... G_1 B_1`` plus an optional
    terminal Pauli frame.

    Parameters
    ----------
    scls : sequence of sequences
        ``l + 1`` single-qubit Clifford layers; each entry is a
        `SingleQubitClifford`, a gate word such as ``"H S"`` or a 2x2
        block (mapped to its canonical class representative).
    czls : sequence of `BitMatrix`
        ``l`` symmetric, zero-diagonal CZ adjacency matrices.
    pauliFrame : `PauliOp`, optional
        Pauli applied after the last layer.
    """

    __slots__ = ("_n", "_scls", "_czls", "_pauliFrame")

    def __init__(self, scls: Sequence[Sequence], czls: Sequence[BitMatrix] = (),
                 pauliFrame: Optional[PauliOp] = None):
        if len(scls) != len(czls) + 1:
            raise LengthError(f"{len(czls)} CZ layers need {len(czls) + 1} SCLs, got {len(scls)}")
        self._scls = tuple(tuple(_asClifford(e) for e in layer) for layer in scls)
        self._n = len(self._scls[0])
        if any(len(layer) != self._n for layer in self._scls):
            raise LengthError("all single-qubit layers must cover every qubit")
        for gamma in czls:
            if gamma.shape != (self._n, self._n):
                raise LengthError(f"CZ layer of shape {gamma.shape} on {self._n} qubits")
            czlSymplectic(gamma)
        self._czls = tuple(czls)
        if pauliFrame is not None and pauliFrame.n != self._n:
            raise LengthError(f"{pauliFrame.n}-qubit frame on a {self._n}-qubit circuit")
        self._pauliFrame = pauliFrame

    @classmethod
    def identity(cls, n: int, length: int = 0) -> LayeredCircuit:
        layer = [SingleQubitClifford.identity()]*n
        return cls([layer]*(length + 1), [BitMatrix.zeros(n, n)]*length)

    @property
    def n(self) -> int:
        return self._n

    @property
    def length(self) -> int:
        """Number of CZ layers ``l``."""
        return len(self._czls)

    @property
    def scls(self) -> tuple[tuple[SingleQubitClifford, ...], ...]:
        return self._scls

    @property
    def czls(self) -> tuple[BitMatrix, ...]:
        return self._czls

    @property
    def pauliFrame(self) -> Optional[PauliOp]:
        return self._pauliFrame

    def czEdges(self, layer: int) -> list[tuple[int, int]]:
        dense = self._czls[layer].toArray()
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(dense, 1)))]

    @property
    def czCount(self) -> int:
        return sum(len(self.czEdges(i)) for i in range(self.length))

    def withPauliFrame(self, frame: Optional[PauliOp]) -> LayeredCircuit:
        return LayeredCircuit(self._scls, self._czls, frame)

    def concatenate(self, other: LayeredCircuit) -> LayeredCircuit:
        """``self`` followed by ``other``, fusing the adjacent SCLs.

        The frame of ``self`` is dropped unless it is the identity; only
        the frame of ``other`` is kept.
        """
        if other.n != self._n:
            raise LengthError(f"cannot concatenate {self._n}- and {other.n}-qubit circuits")
        if self._pauliFrame is not None and not self._pauliFrame.isIdentity():
            raise InvalidParameterError("cannot fuse through a non-trivial Pauli frame")
        fused = tuple(a.then(b) for a, b in zip(self._scls[-1], other.scls[0]))
        return LayeredCircuit(self._scls[:-1] + (fused,) + other.scls[1:], self._czls + other.czls,
                              other.pauliFrame)

    def symplectic(self) -> SymplecticMap:
        return circuitSymplectic(self)

    def tableau(self) -> CliffordTableau:
        return circuitTableau(self)

    def __eq__(self, other):
        if not isinstance(other, LayeredCircuit):
            return NotImplemented
        return (self._scls, self._czls, self._pauliFrame) == (other._scls, other._czls, other._pauliFrame)

    def __hash__(self):
        return hash((self._scls, self._czls, self._pauliFrame))

    def __repr__(self):
        return f"LayeredCircuit(n={self._n}, l={self.length}, cz={self.czCount})"


def circuitSymplectic(circuit: LayeredCircuit) -> SymplecticMap:
    """Product ``B_{l+1} G_l ... G_1 B_1`` of the layer maps; the Pauli
    frame is ignored."""
    mat = sclSymplectic(circuit.scls[0]).mat
    for gamma, layer in zip(circuit.czls, circuit.scls[1:]):
        mat = matMul(czlSymplectic(gamma).mat, mat)
        mat = matMul(sclSymplectic(layer).mat, mat)
    return SymplecticMap(mat, check=False)


def flatten(circuit: LayeredCircuit) -> GateSequence:
    """Expand a layered circuit gate by gate.

    SCL entries become their canonical gate words, CZ layers one ``CZ``
    per edge and the Pauli frame one ``X``, ``Y`` or ``Z`` per qubit.
    Non-empty layers are separated by ``TICK``.
    """
    layers = []
    for i, scl in enumerate(circuit.scls):
        layers.append([(name, (q,)) for q, c in enumerate(scl) for name in c.word])
        if i < circuit.length:
            layers.append([("CZ", edge) for edge in circuit.czEdges(i)])
    frame = circuit.pauliFrame
    if frame is not None:
        layers.append([(frame.label(q), (q,)) for q in range(circuit.n) if frame.label(q) != "I"])
    gates = []
    for layer in layers:
        if not layer:
            continue
        if gates:
            gates.append(("TICK", ()))
        gates.extend(layer)
    return GateSequence(circuit.n, gates)


def circuitTableau(circuit: Union[LayeredCircuit, GateSequence, CliffordTableau]) -> CliffordTableau:
    """Tableau of a layered circuit (frame included), a unitary gate
    sequence, or a tableau passed through."""
    if isinstance(circuit, CliffordTableau):
        return circuit
    if isinstance(circuit, GateSequence):
        return circuit.tableau()
    return flatten(circuit).tableau()
