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

"""Phase-tracked Pauli operators in binary representation.

A `PauliOp` stores ``i^q X^x Z^z`` exactly, with ``Y = i X Z``. The
operator is Hermitian iff ``q + |x AND z|`` is even.
"""

from __future__ import annotations

__all__ = ["PauliOp", "commutes"]

from typing import Iterable

import numpy as np

from ..exceptions import CircuitFormatError, LengthError
from ..gf2 import BitVector

_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "−": 2, "-i": 3, "−i": 3}
_PREFIX_OUT = {0: "+", 1: "i", 2: "-", 3: "-i"}


class PauliOp:
    """An n-qubit Pauli operator ``i^phase X^x Z^z``.

    Parameters
    ----------
    x, z : `BitVector`
        X and Z parts, one bit per qubit.
    phase : `int`, optional
        Exponent of ``i``, reduced modulo 4.
    """

    __slots__ = ("_x", "_z", "_phase")

    def __init__(self, x: BitVector, z: BitVector, phase: int = 0):
        if len(x) != len(z):
            raise LengthError(f"x and z parts differ in length: {len(x)} != {len(z)}")
        self._x = x
        self._z = z
        self._phase = phase % 4

    @classmethod
    def identity(cls, n: int) -> PauliOp:
        return cls(BitVector(n), BitVector(n))

    @classmethod
    def fromBits(cls, x, z, sign: int = 0) -> PauliOp:
        """Build the Hermitian Pauli with the given binary parts.

        ``sign`` is 0 for ``+`` and 1 for ``-``; the result is
        ``(-1)^sign`` times the tensor product of I, X, Y, Z factors.
        """
        x = x if isinstance(x, BitVector) else BitVector.fromArray(x)
        z = z if isinstance(z, BitVector) else BitVector.fromArray(z)
        return cls(x, z, (x & z).weight() + 2*sign)

    @classmethod
    def fromVector(cls, v: BitVector, sign: int = 0) -> PauliOp:
        """Hermitian Pauli from a ``2n`` symplectic vector ``[x; z]``."""
        n = len(v) // 2
        return cls.fromBits(v.slice(0, n), v.slice(n, 2*n), sign)

    @classmethod
    def fromString(cls, text: str) -> PauliOp:
        """Parse signed Pauli strings such as ``"XXIZ"`` or ``"-iYZ"``.

        Qubit 1 is the leftmost character.
        """
        text = text.strip()
        body = text.lstrip("+-−i")
        prefix = text[:len(text) - len(body)]
        if prefix not in _PREFIXES:
            raise CircuitFormatError(f"invalid Pauli phase prefix {prefix!r} in {text!r}")
        x = np.zeros(len(body), dtype=np.uint8)
        z = np.zeros(len(body), dtype=np.uint8)
        for j, c in enumerate(body.upper()):
            if c in "XY":
                x[j] = 1
            if c in "ZY":
                z[j] = 1
            if c not in "IXYZ_":
                raise CircuitFormatError(f"invalid Pauli character {c!r} in {text!r}")
        weightY = int(np.sum(x & z))
        return cls(BitVector.fromArray(x), BitVector.fromArray(z), _PREFIXES[prefix] + weightY)

    @classmethod
    def single(cls, n: int, qubit: int, label: str) -> PauliOp:
        """Weight-one Hermitian Pauli ``label`` on ``qubit`` (0-based)."""
        chars = ["I"]*n
        chars[qubit] = label
        return cls.fromString("".join(chars))

    @classmethod
    def fromSupport(cls, n: int, support: Iterable[int], label: str) -> PauliOp:
        chars = ["I"]*n
        for q in support:
            chars[q] = label
        return cls.fromString("".join(chars))

    @property
    def n(self) -> int:
        return len(self._x)

    @property
    def x(self) -> BitVector:
        return self._x

    @property
    def z(self) -> BitVector:
        return self._z

    @property
    def phase(self) -> int:
        return self._phase

    @property
    def vector(self) -> BitVector:
        """The symplectic vector ``[x; z]``."""
        return self._x.concatenate(self._z)

    def isHermitian(self) -> bool:
        return (self._phase + (self._x & self._z).weight()) % 2 == 0

    @property
    def sign(self) -> int:
        """0 for a ``+``-signed and 1 for a ``-``-signed Hermitian Pauli."""
        rel = (self._phase - (self._x & self._z).weight()) % 4
        if rel % 2:
            raise LengthError(f"{self} is not Hermitian and has no real sign")
        return rel // 2

    def weight(self) -> int:
        return int((self._x.toArray() | self._z.toArray()).sum())

    def isIdentity(self) -> bool:
        """True if the binary part is trivial, regardless of phase."""
        return not (self._x.any() or self._z.any())

    def label(self, qubit: int) -> str:
        return "IXZY"[self._x[qubit] + 2*self._z[qubit]]

    def unsigned(self) -> PauliOp:
        """The ``+``-signed Hermitian Pauli with the same binary part."""
        return PauliOp.fromBits(self._x, self._z)

    def negated(self) -> PauliOp:
        return PauliOp(self._x, self._z, self._phase + 2)

    def commutesWith(self, other: PauliOp) -> bool:
        return commutes(self, other)

    def restrict(self, qubits: Iterable[int]) -> PauliOp:
        """Tensor factor on ``qubits``, carrying the full phase.

        Exact only when the dropped factors are the identity.
        """
        qubits = list(qubits)
        xs, zs = self._x.toArray(), self._z.toArray()
        return PauliOp(BitVector.fromArray(xs[qubits]), BitVector.fromArray(zs[qubits]), self._phase)

    def embed(self, n: int, qubits: Iterable[int]) -> PauliOp:
        """Place this operator on ``qubits`` of an ``n``-qubit register."""
        qubits = list(qubits)
        if len(qubits) != self.n:
            raise LengthError(f"{self.n}-qubit Pauli embedded on {len(qubits)} qubits")
        xs = np.zeros(n, dtype=np.uint8)
        zs = np.zeros(n, dtype=np.uint8)
        xs[qubits] = self._x.toArray()
        zs[qubits] = self._z.toArray()
        return PauliOp(BitVector.fromArray(xs), BitVector.fromArray(zs), self._phase)

    def replaced(self, qubits: Iterable[int], local: PauliOp) -> PauliOp:
        """Replace the factors on ``qubits`` by ``local``, adding its phase.

        Because ``i^q X^x Z^z`` factorizes qubit by qubit without extra
        signs, this is exact for any ``local`` acting on those qubits.
        """
        qubits = list(qubits)
        xs = self._x.toArray().copy()
        zs = self._z.toArray().copy()
        xs[qubits] = local.x.toArray()
        zs[qubits] = local.z.toArray()
        return PauliOp(BitVector.fromArray(xs), BitVector.fromArray(zs), self._phase + local.phase)

    def __mul__(self, other: PauliOp) -> PauliOp:
        """Operator product ``self * other`` with exact phase."""
        if self.n != other.n:
            raise LengthError(f"cannot multiply {self.n}- and {other.n}-qubit Paulis")
        phase = self._phase + other._phase + 2*self._z.dot(other._x)
        return PauliOp(self._x ^ other._x, self._z ^ other._z, phase)

    def tensor(self, other: PauliOp) -> PauliOp:
        return PauliOp(self._x.concatenate(other._x), self._z.concatenate(other._z),
                       self._phase + other._phase)

    def toString(self, signed: bool = True) -> str:
        body = "".join(self.label(j) for j in range(self.n))
        rel = (self._phase - (self._x & self._z).weight()) % 4
        if not signed:
            return body
        return _PREFIX_OUT[rel] + body

    def __eq__(self, other):
        if not isinstance(other, PauliOp):
            return NotImplemented
        return self._phase == other._phase and self._x == other._x and self._z == other._z

    def __hash__(self):
        return hash((self._phase, self._x, self._z))

    def __str__(self):
        return self.toString()

    def __repr__(self):
        return f"PauliOp('{self.toString()}')"


def commutes(p: PauliOp, q: PauliOp) -> bool:
    """Return `True` if ``p`` and ``q`` commute.

    Raises
    ------
    LengthError
        Raised if the operators act on different numbers of qubits.
    """
    if p.n != q.n:
        raise LengthError(f"cannot compare {p.n}- and {q.n}-qubit Paulis")
    return (p.x.dot(q.z) + p.z.dot(q.x)) % 2 == 0
