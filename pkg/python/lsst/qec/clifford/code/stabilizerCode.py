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

"""Stabilizer codes with a chosen logical Pauli basis."""

from __future__ import annotations

__all__ = ["StabilizerCode", "ValidationResult", "validate"]

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from ..exceptions import CodeValidationError, LengthError
from ..gf2 import BitMatrix, BitVector, rank, solve
from ..pauli import PauliOp, commutes


def _asPauli(p) -> PauliOp:
    return p if isinstance(p, PauliOp) else PauliOp.fromString(p)


class StabilizerCode:
    """An ``[[n, k]]`` stabilizer code together with logical X and Z
    operators.

    Construction does not validate; call `validate` (or `checked`) before
    relying on the invariants.

    Parameters
    ----------
    stabilizers : sequence of `PauliOp` or `str`
        The ``n - k`` generators.
    logicalX, logicalZ : sequence of `PauliOp` or `str`
        ``k`` logical operators each.
    name : `str`, optional
        Label used in reports.
    n : `int`, optional
        Qubit count; required only when there are no operators at all.
    """

    def __init__(self, stabilizers: Sequence, logicalX: Sequence, logicalZ: Sequence,
                 name: str = "", n: Optional[int] = None):
        self._stabilizers = tuple(_asPauli(p) for p in stabilizers)
        self._logicalX = tuple(_asPauli(p) for p in logicalX)
        self._logicalZ = tuple(_asPauli(p) for p in logicalZ)
        everything = self._stabilizers + self._logicalX + self._logicalZ
        if n is None:
            if not everything:
                raise LengthError("cannot infer the qubit count of an empty code")
            n = everything[0].n
        self._n = n
        self._name = name

    @property
    def n(self) -> int:
        return self._n

    @property
    def k(self) -> int:
        return len(self._logicalX)

    @property
    def name(self) -> str:
        return self._name

    @property
    def stabilizers(self) -> tuple[PauliOp, ...]:
        return self._stabilizers

    @property
    def logicalX(self) -> tuple[PauliOp, ...]:
        return self._logicalX

    @property
    def logicalZ(self) -> tuple[PauliOp, ...]:
        return self._logicalZ

    def checked(self) -> StabilizerCode:
        """Return ``self`` after validation.

        Raises
        ------
        CodeValidationError
            Raised with the diagnostics of `validate`.
        """
        result = validate(self)
        if not result.ok:
            raise CodeValidationError(result.diagnostics)
        return self

    @cached_property
    def stabilizerMatrix(self) -> BitMatrix:
        """Generators as rows of ``[x | z]`` vectors."""
        return BitMatrix.fromRows([s.vector for s in self._stabilizers], cols=2*self._n)

    @cached_property
    def _expansionMatrix(self) -> BitMatrix:
        return self.stabilizerMatrix.T

    def stabilizerExpansion(self, vector: BitVector) -> Optional[list[int]]:
        """Indices of the generators whose product has binary part
        ``vector``, or `None` if it is not in their span."""
        if len(vector) != 2*self._n:
            raise LengthError(f"vector of length {len(vector)} for a {self._n}-qubit code")
        if not self._stabilizers:
            return [] if not vector.any() else None
        result = solve(self._expansionMatrix, vector)
        if result.solution is None:
            return None
        return result.solution.support()

    def stabilizerProduct(self, indices: Iterable[int]) -> PauliOp:
        """Product of the given generators, with exact sign."""
        product = PauliOp.identity(self._n)
        for j in indices:
            product = product*self._stabilizers[j]
        return product

    def logicalOperator(self, p: PauliOp) -> PauliOp:
        """Map a k-qubit Pauli ``i^q X^a Z^b`` to ``i^q Xbar^a Zbar^b``."""
        if p.n != self.k:
            raise LengthError(f"{p.n}-qubit logical Pauli for a code with k={self.k}")
        result = PauliOp(BitVector(self._n), BitVector(self._n), p.phase)
        for i in p.x.support():
            result = result*self._logicalX[i]
        for i in p.z.support():
            result = result*self._logicalZ[i]
        return result

    def syndrome(self, error: PauliOp) -> BitVector:
        """Bit ``j`` is set if ``error`` anticommutes with generator ``j``."""
        return BitVector.fromArray([0 if commutes(error, s) else 1 for s in self._stabilizers])

    def isStabilizerElement(self, error: PauliOp) -> bool:
        """Membership of the binary part in the stabilizer group (sign
        ignored)."""
        return self.stabilizerExpansion(error.vector) is not None

    def toDict(self) -> dict:
        """Serializable form with signed Pauli strings."""
        return {
            "name": self._name,
            "n": self._n,
            "k": self.k,
            "stabilizers": [p.toString() for p in self._stabilizers],
            "logical_x": [p.toString() for p in self._logicalX],
            "logical_z": [p.toString() for p in self._logicalZ],
        }

    @classmethod
    def fromDict(cls, data: dict) -> StabilizerCode:
        """Inverse of `toDict`; ``n`` and ``k`` are checked when present.

        Raises
        ------
        CodeValidationError
            Raised if required fields are missing or the declared sizes do
            not match the operators.
        """
        missing = [key for key in ("stabilizers", "logical_x", "logical_z") if key not in data]
        if missing:
            raise CodeValidationError([f"missing field {key!r}" for key in missing])
        try:
            code = cls(data["stabilizers"], data["logical_x"], data["logical_z"],
                       name=data.get("name", ""), n=data.get("n"))
        except (ValueError, TypeError) as e:
            raise CodeValidationError([str(e)]) from e
        if "k" in data and int(data["k"]) != code.k:
            raise CodeValidationError([f"declared k={data['k']} but {code.k} logical pairs given"])
        return code

    def __eq__(self, other):
        if not isinstance(other, StabilizerCode):
            return NotImplemented
        return (self._n, self._stabilizers, self._logicalX, self._logicalZ) == \
            (other._n, other._stabilizers, other._logicalX, other._logicalZ)

    def __hash__(self):
        return hash((self._n, self._stabilizers, self._logicalX, self._logicalZ))

    def __repr__(self):
        label = f" {self._name!r}" if self._name else ""
        return f"StabilizerCode{label}([[{self._n},{self.k}]])"


@dataclass
class ValidationResult:
    """Outcome of `validate`; ``diagnostics`` is empty iff ``ok``."""

    diagnostics: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def __bool__(self):
        return self.ok


def _firstPair(ops, other, want, nameA, nameB, symmetric=False):
    """First ``(i, j)`` whose commutation differs from ``want(i, j)``."""
    for i, a in enumerate(ops):
        for j, b in enumerate(other):
            if symmetric and j <= i:
                continue
            anticommute = not commutes(a, b)
            if anticommute != want(i, j):
                verb = "anticommute" if anticommute else "commute"
                must = "anticommute" if want(i, j) else "commute"
                return f"{nameA}[{i + 1}] and {nameB}[{j + 1}] {verb} but must {must}"
    return None


def validate(code: StabilizerCode) -> ValidationResult:
    """Check every invariant of a stabilizer code.

    Returns
    -------
    result : `ValidationResult`
        Diagnostics naming the first violated pair of each condition;
        checks stop after the first failing condition group.
    """
    result = ValidationResult()
    n, k = code.n, code.k
    groups = (("stabilizer", code.stabilizers), ("logical_x", code.logicalX), ("logical_z", code.logicalZ))
    for name, ops in groups:
        for i, p in enumerate(ops):
            if p.n != n:
                result.diagnostics.append(f"{name}[{i + 1}] acts on {p.n} qubits instead of {n}")
            elif not p.isHermitian():
                result.diagnostics.append(f"{name}[{i + 1}] ({p}) is not Hermitian")
    if len(code.logicalZ) != k:
        result.diagnostics.append(f"{k} logical X operators but {len(code.logicalZ)} logical Z operators")
    if len(code.stabilizers) != n - k:
        result.diagnostics.append(f"expected n - k = {n - k} stabilizer generators, "
                                  f"got {len(code.stabilizers)}")
    if result.diagnostics:
        return result

    def never(i, j):
        return False

    message = _firstPair(code.stabilizers, code.stabilizers, never, "stabilizer", "stabilizer",
                         symmetric=True)
    if message:
        result.diagnostics.append(message)
        return result
    r = rank(code.stabilizerMatrix)
    if r < n - k:
        dense = code.stabilizerMatrix.toArray()
        first = next(j for j in range(len(dense))
                     if rank(BitMatrix.fromArray(dense[:j + 1])) <= j)
        result.diagnostics.append(f"stabilizer generators are dependent (rank {r} < {n - k}); "
                                  f"stabilizer[{first + 1}] is a product of earlier generators")
        return result
    for name, ops in groups[1:]:
        message = _firstPair(ops, code.stabilizers, never, name, "stabilizer")
        if message:
            result.diagnostics.append(message)
            return result
    checks = ((code.logicalX, code.logicalZ, lambda i, j: i == j, "logical_x", "logical_z", False),
              (code.logicalX, code.logicalX, never, "logical_x", "logical_x", True),
              (code.logicalZ, code.logicalZ, never, "logical_z", "logical_z", True))
    for a, b, want, nameA, nameB, symmetric in checks:
        message = _firstPair(a, b, want, nameA, nameB, symmetric)
        if message:
            result.diagnostics.append(message)
            return result
    return result
