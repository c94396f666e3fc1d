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

"""Certification that a physical circuit implements a logical Clifford."""

from __future__ import annotations

__all__ = ["LogicalityCheck", "LogicalAction", "VerificationReport", "isLogicalOperator", "logicalAction",
           "implementsTarget", "extractGauge", "circuitSymplecticMap"]

import dataclasses
from typing import Optional, Union

from lsst.utils.logging import getLogger

from ..code import StabilizerCode
from ..exceptions import LengthError, LogicError
from ..gauge import ReducedFreedom
from ..gf2 import BitMatrix, matMul, solve
from ..pauli import (CliffordTableau, GateSequence, LayeredCircuit, SymplecticMap, circuitSymplectic,
                     circuitTableau, conjugate, generatorImages, targetTableau)

_log = getLogger(__name__)

Circuit = Union[LayeredCircuit, GateSequence, CliffordTableau, SymplecticMap]


def _tableauOf(circuit: Circuit) -> CliffordTableau:
    if isinstance(circuit, SymplecticMap):
        return CliffordTableau.fromSymplectic(circuit)
    return circuitTableau(circuit)


def circuitSymplecticMap(circuit: Circuit) -> SymplecticMap:
    """Symplectic action of any supported circuit representation."""
    if isinstance(circuit, SymplecticMap):
        return circuit
    if isinstance(circuit, LayeredCircuit):
        return circuitSymplectic(circuit)
    if isinstance(circuit, GateSequence):
        return circuit.symplectic()
    return circuit.symplectic


def _reducedColumns(code: StabilizerCode) -> BitMatrix:
    vectors = [p.vector for p in code.logicalX + code.logicalZ + code.stabilizers]
    return BitMatrix.fromColumns(vectors, rows=2*code.n)


def _checkSize(circuit: Circuit, code: StabilizerCode):
    n = circuit.numQubits if isinstance(circuit, GateSequence) else circuit.n
    if n != code.n:
        raise LengthError(f"circuit acts on {n} qubits, code has {code.n}")


@dataclasses.dataclass(frozen=True)
class LogicalityCheck:
    """Outcome of `isLogicalOperator`.

    ``expansions[j]`` lists the stabilizer generators whose product is the
    image of generator ``j`` (`None` when the image leaves the group);
    ``offending`` holds the indices of such generators.
    """

    isLogical: bool
    expansions: tuple[Optional[tuple[int, ...]], ...]
    offending: tuple[int, ...]

    def __bool__(self):
        return self.isLogical


@dataclasses.dataclass(frozen=True)
class LogicalAction:
    """Symplectic logical action plus the stabilizer coset of every
    logical generator image, X generators first."""

    action: SymplecticMap
    cosets: tuple[tuple[int, ...], ...]


@dataclasses.dataclass
class VerificationReport:
    isLogical: bool
    logicalAction: Optional[SymplecticMap] = None
    signCorrect: bool = False
    gauge: Optional[ReducedFreedom] = None
    failures: list[str] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def toDict(self) -> dict:
        return {
            "ok": self.ok,
            "is_logical": self.isLogical,
            "logical_action": None if self.logicalAction is None else self.logicalAction.mat.toLists(),
            "sign_correct": self.signCorrect,
            "gauge": None if self.gauge is None else self.gauge.fPrime.toLists(),
            "failures": list(self.failures),
        }


def isLogicalOperator(circuit: Circuit, code: StabilizerCode) -> LogicalityCheck:
    """Check that every conjugated stabilizer generator lies in the
    stabilizer group, ignoring signs."""
    _checkSize(circuit, code)
    tableau = _tableauOf(circuit)
    expansions = []
    offending = []
    for j, s in enumerate(code.stabilizers):
        expansion = code.stabilizerExpansion(conjugate(tableau, s).vector)
        if expansion is None:
            offending.append(j)
            expansions.append(None)
        else:
            expansions.append(tuple(expansion))
    return LogicalityCheck(not offending, tuple(expansions), tuple(offending))


def logicalAction(circuit: Circuit, code: StabilizerCode) -> LogicalAction:
    """Express every logical generator image as a logical Pauli times a
    stabilizer element and assemble the ``2k x 2k`` action.

    Raises
    ------
    LogicError
        Raised if an image is outside the normalizer, which contradicts
        the circuit being logical.
    """
    _checkSize(circuit, code)
    smap = circuitSymplecticMap(circuit)
    ePrime = _reducedColumns(code)
    k = code.k
    columns, cosets = [], []
    for label, logicals in (("logical_x", code.logicalX), ("logical_z", code.logicalZ)):
        for i, logical in enumerate(logicals):
            result = solve(ePrime, smap.apply(logical.vector))
            if result.solution is None:
                raise LogicError(f"image of {label}[{i + 1}] is not a logical operator")
            coords = result.solution
            columns.append(coords.slice(0, 2*k))
            cosets.append(tuple(m for m in range(code.n - k) if coords[2*k + m]))
    action = BitMatrix.fromColumns(columns, rows=2*k) if k else BitMatrix.zeros(0, 0)
    return LogicalAction(SymplecticMap(action, check=False), tuple(cosets))


def extractGauge(circuit: Circuit, code: StabilizerCode, target=None) -> ReducedFreedom:
    """Solve ``A E' = E' F'`` for the unique ``F'``.

    Raises
    ------
    LogicError
        Raised if some column has no solution (the circuit is not logical)
        or the top-left block differs from ``target``.
    """
    _checkSize(circuit, code)
    n, k = code.n, code.k
    ePrime = _reducedColumns(code)
    image = matMul(circuitSymplecticMap(circuit).mat, ePrime)
    columns = []
    for col in range(n + k):
        result = solve(ePrime, image.column(col))
        if result.solution is None:
            raise LogicError(f"no gauge column {col + 1}: circuit is not logical")
        if result.nullspace.rows:
            raise LogicError("reduced encoding is rank deficient")
        columns.append(result.solution)
    fPrime = BitMatrix.fromColumns(columns, rows=n + k)
    gauge = ReducedFreedom(fPrime, n, k)
    if target is not None and gauge.target != targetTableau(target, k).symplectic.mat:
        raise LogicError("gauge top-left block differs from the target")
    return gauge


def implementsTarget(circuit: Circuit, code: StabilizerCode, target, strictSigns: bool = False
                     ) -> VerificationReport:
    """Certify ``circuit`` against a logical ``target``.

    Parameters
    ----------
    circuit : `LayeredCircuit`, `GateSequence`, `CliffordTableau` or `SymplecticMap`
        Physical circuit; a layered circuit's Pauli frame is included.
    code : `StabilizerCode`
        The code.
    target : `CliffordTableau`, `SymplecticMap` or `BitMatrix`
        Logical target; symplectic targets carry ``+`` signs.
    strictSigns : `bool`, optional
        Also demand ``+`` stabilizer images and exactly signed logical
        images.

    Returns
    -------
    report : `VerificationReport`
        ``failures`` names every violated condition.
    """
    want = targetTableau(target, code.k)
    check = isLogicalOperator(circuit, code)
    report = VerificationReport(isLogical=check.isLogical)
    if not check:
        report.failures.extend(f"stabilizer[{j + 1}] is not mapped into the stabilizer group"
                               for j in check.offending)
        return report
    try:
        action = logicalAction(circuit, code).action
    except LogicError as exc:
        report.isLogical = False
        report.failures.append(str(exc))
        return report
    report.logicalAction = action
    wantMat = want.symplectic.mat
    if action.mat != wantMat:
        k = code.k
        for col in range(2*k):
            if action.mat.column(col) != wantMat.column(col):
                label = f"logical_x[{col + 1}]" if col < k else f"logical_z[{col - k + 1}]"
                report.failures.append(f"logical action differs from the target on {label}")
        return report
    report.gauge = extractGauge(circuit, code, want)
    images = generatorImages(_tableauOf(circuit), code, want)
    defects = [g.label for g in images if g.signDefect]
    report.signCorrect = not defects
    if strictSigns:
        report.failures.extend(f"{label} has the wrong sign" for label in defects)
    _log.debug("Verification of %s: %s", code.name or "code", "ok" if report.ok else report.failures)
    return report
