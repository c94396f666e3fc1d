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

"""Primitive gate definitions and the 24 single-qubit Cliffords."""

from __future__ import annotations

__all__ = ["GateKind", "GateDefinition", "GATE_DEFINITIONS", "SINGLE_QUBIT_GATES", "TWO_QUBIT_GATES",
           "SingleQubitClifford", "SINGLE_QUBIT_CLIFFORDS", "SYMPLECTIC_CLASSES", "getGate",
           "gateTableau", "applyGate"]

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from ..exceptions import NotFoundError
from .pauliOp import PauliOp
from .tableau import CliffordTableau


class GateKind(enum.Enum):
    UNITARY = "unitary"
    RESET = "reset"
    MEASURE = "measure"
    ANNOTATION = "annotation"


@dataclass(frozen=True)
class GateDefinition:
    """A primitive gate of the circuit file format.

    ``basis`` is the Pauli basis of resets and measurements; ``tableau``
    is the local tableau of unitary gates.
    """

    name: str
    arity: int
    kind: GateKind
    tableau: Optional[CliffordTableau] = None
    inverseName: Optional[str] = None
    basis: Optional[str] = None

    @property
    def isUnitary(self) -> bool:
        return self.kind is GateKind.UNITARY


def _unitary(name, xImages, zImages, inverseName=None):
    tableau = CliffordTableau.fromStrings(xImages, zImages)
    return GateDefinition(name, tableau.n, GateKind.UNITARY, tableau, inverseName or name)


GATE_DEFINITIONS = {g.name: g for g in (
    _unitary("I", ["+X"], ["+Z"]),
    _unitary("X", ["+X"], ["-Z"]),
    _unitary("Y", ["-X"], ["-Z"]),
    _unitary("Z", ["-X"], ["+Z"]),
    _unitary("H", ["+Z"], ["+X"]),
    _unitary("S", ["+Y"], ["+Z"], "S_DAG"),
    _unitary("S_DAG", ["-Y"], ["+Z"], "S"),
    _unitary("SQRT_X", ["+X"], ["-Y"], "SQRT_X_DAG"),
    _unitary("SQRT_X_DAG", ["+X"], ["+Y"], "SQRT_X"),
    _unitary("CX", ["+XX", "+IX"], ["+ZI", "+ZZ"]),
    _unitary("CY", ["+XY", "+ZX"], ["+ZI", "+ZZ"]),
    _unitary("CZ", ["+XZ", "+ZX"], ["+ZI", "+IZ"]),
    GateDefinition("R0", 1, GateKind.RESET, basis="Z"),
    GateDefinition("RP", 1, GateKind.RESET, basis="X"),
    GateDefinition("MZ", 1, GateKind.MEASURE, basis="Z"),
    GateDefinition("MX", 1, GateKind.MEASURE, basis="X"),
    GateDefinition("TICK", 0, GateKind.ANNOTATION),
)}

SINGLE_QUBIT_GATES = ("I", "X", "Y", "Z", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG")
TWO_QUBIT_GATES = ("CX", "CY", "CZ")

# Search order for canonical single-qubit words.
_WORD_ALPHABET = ("X", "Y", "Z", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG")

SYMPLECTIC_CLASSES = (
    (1, 0, 0, 1),
    (0, 1, 1, 0),
    (1, 0, 1, 1),
    (1, 1, 0, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 0),
)
"""The six invertible 2x2 blocks ``(xx, xz, zx, zz)``."""


def getGate(name: str) -> GateDefinition:
    try:
        return GATE_DEFINITIONS[name.upper()]
    except KeyError:
        raise NotFoundError(f"unknown gate {name!r}") from None


def gateTableau(name: str, qubits: Sequence[int], n: int) -> CliffordTableau:
    """Tableau of the unitary gate ``name`` on ``qubits`` of ``n`` qubits."""
    gate = getGate(name)
    if not gate.isUnitary:
        raise NotFoundError(f"gate {name} is not unitary")
    return gate.tableau.embed(n, qubits)


def applyGate(p: PauliOp, name: str, qubits: Sequence[int]) -> PauliOp:
    """Conjugate ``p`` by a unitary gate acting on ``qubits``."""
    local = getGate(name).tableau.conjugate(_localFactor(p, qubits))
    return p.replaced(qubits, local)


def _localFactor(p: PauliOp, qubits: Sequence[int]) -> PauliOp:
    # phase-free X^x Z^z factor on the gate qubits
    local = p.restrict(qubits)
    return PauliOp(local.x, local.z, 0)


def _key(tableau: CliffordTableau) -> tuple[str, str]:
    return (tableau.images[0].toString(), tableau.images[1].toString())


class SingleQubitClifford:
    """One of the 24 single-qubit Cliffords, identified by the signed
    images of X and Z.

    Use `fromImages`, `fromName`, `fromWord` or `canonical` rather than
    the constructor.
    """

    def __init__(self, xImage: str, zImage: str):
        key = (PauliOp.fromString(xImage).toString(), PauliOp.fromString(zImage).toString())
        if key not in _WORDS:
            raise NotFoundError(f"X -> {xImage}, Z -> {zImage} is not a single-qubit Clifford")
        self._key = key

    @classmethod
    def fromImages(cls, xImage: str, zImage: str) -> SingleQubitClifford:
        return cls(xImage, zImage)

    @classmethod
    def fromTableau(cls, tableau: CliffordTableau) -> SingleQubitClifford:
        return cls(*_key(tableau))

    @classmethod
    def fromName(cls, name: str) -> SingleQubitClifford:
        gate = getGate(name)
        if gate.arity != 1 or not gate.isUnitary:
            raise NotFoundError(f"{name} is not a single-qubit Clifford gate")
        return cls.fromTableau(gate.tableau)

    @classmethod
    def fromWord(cls, names: Iterable[str]) -> SingleQubitClifford:
        """Compose named gates in time order."""
        tableau = CliffordTableau.identity(1)
        for name in names:
            tableau = tableau.then(cls.fromName(name).tableau)
        return cls.fromTableau(tableau)

    @classmethod
    def identity(cls) -> SingleQubitClifford:
        return cls("+X", "+Z")

    @classmethod
    def canonical(cls, block) -> SingleQubitClifford:
        """The representative of a symplectic class with the shortest
        gate word."""
        return _CANONICAL[tuple(int(b) for b in block)]

    @cached_property
    def tableau(self) -> CliffordTableau:
        return CliffordTableau.fromStrings([self._key[0]], [self._key[1]])

    @property
    def images(self) -> tuple[str, str]:
        return self._key

    @cached_property
    def block(self) -> tuple[int, int, int, int]:
        """``(xx, xz, zx, zz)``: columns are the binary images of X and Z."""
        px, pz = self.tableau.images
        return (px.x[0], pz.x[0], px.z[0], pz.z[0])

    @property
    def word(self) -> tuple[str, ...]:
        """Canonical gate names in time order; empty for the identity."""
        return _WORDS[self._key]

    @property
    def name(self) -> str:
        return " ".join(self.word) or "I"

    def isIdentity(self) -> bool:
        return self._key == ("+X", "+Z")

    def then(self, other: SingleQubitClifford) -> SingleQubitClifford:
        return SingleQubitClifford.fromTableau(self.tableau.then(other.tableau))

    def inverse(self) -> SingleQubitClifford:
        return SingleQubitClifford.fromTableau(self.tableau.inverse())

    def __eq__(self, other):
        if not isinstance(other, SingleQubitClifford):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SingleQubitClifford({self.name})"


def _enumerateWords():
    identity = CliffordTableau.identity(1)
    words = {_key(identity): ()}
    frontier = [(identity, ())]
    while frontier and len(words) < 24:
        following = []
        for tableau, word in frontier:
            for name in _WORD_ALPHABET:
                candidate = tableau.then(GATE_DEFINITIONS[name].tableau)
                key = _key(candidate)
                if key not in words:
                    words[key] = word + (name,)
                    following.append((candidate, word + (name,)))
        frontier = following
    return words


_WORDS = _enumerateWords()

SINGLE_QUBIT_CLIFFORDS = tuple(SingleQubitClifford(*key) for key in _WORDS)
"""All 24 single-qubit Cliffords in canonical search order."""

_CANONICAL = {}
for _c in SINGLE_QUBIT_CLIFFORDS:
    _CANONICAL.setdefault(_c.block, _c)
del _c
