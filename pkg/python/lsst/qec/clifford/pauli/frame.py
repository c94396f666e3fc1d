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

"""Sign reconstruction: the Pauli frame that makes a symplectic-level
solution exact."""

from __future__ import annotations

__all__ = ["GeneratorImage", "targetTableau", "generatorImages", "pauliFrameFix", "withFixedFrame"]

from typing import NamedTuple, Optional

from lsst.utils.logging import getLogger

from ..exceptions import LengthError, LogicError
from ..gf2 import BitMatrix, BitVector, solve
from .circuit import LayeredCircuit, circuitTableau
from .pauliOp import PauliOp
from .tableau import CliffordTableau, SymplecticMap, conjugate

_LOG = getLogger(__name__)


class GeneratorImage(NamedTuple):
    """Where a circuit sends one stabilizer or logical generator.

    ``residual`` is the image itself for stabilizers and the product of
    the expected logical image with the actual image for logicals; it must
    be a stabilizer element. ``expansion`` lists the stabilizer generators
    whose product has the residual's binary part (`None` if there is no
    such product) and ``signDefect`` is set when that product has the
    opposite sign.
    """

    kind: str
    index: int
    image: PauliOp
    residual: PauliOp
    expansion: Optional[list[int]]
    signDefect: bool

    @property
    def label(self) -> str:
        return f"{self.kind}[{self.index + 1}]"


def targetTableau(target, k: int) -> CliffordTableau:
    """Normalize a logical target to a signed k-qubit tableau.

    A `SymplecticMap` or `BitMatrix` target is given ``+`` signs on all
    generator images.
    """
    if isinstance(target, BitMatrix):
        target = SymplecticMap(target)
    if isinstance(target, SymplecticMap):
        target = CliffordTableau.fromSymplectic(target)
    if not isinstance(target, CliffordTableau):
        raise LengthError(f"unsupported target type {type(target).__name__}")
    if target.n != k:
        raise LengthError(f"target acts on {target.n} logical qubits, code encodes {k}")
    return target


def _classify(kind, index, image, residual, code):
    expansion = code.stabilizerExpansion(residual.vector)
    defect = False
    if expansion is not None:
        defect = code.stabilizerProduct(expansion) != residual
    return GeneratorImage(kind, index, image, residual, expansion, defect)


def generatorImages(tableau: CliffordTableau, code,
                    target: Optional[CliffordTableau]) -> list[GeneratorImage]:
    """Images of every stabilizer generator and, when a target is given,
    of every logical generator."""
    result = []
    for j, s in enumerate(code.stabilizers):
        image = conjugate(tableau, s)
        result.append(_classify("stabilizer", j, image, image, code))
    if target is None:
        return result
    for kind, logicals, expected in (("logical_x", code.logicalX, target.images[:code.k]),
                                     ("logical_z", code.logicalZ, target.images[code.k:])):
        for i, (logical, want) in enumerate(zip(logicals, expected)):
            image = conjugate(tableau, logical)
            residual = code.logicalOperator(want)*image
            result.append(_classify(kind, i, image, residual, code))
    return result


def pauliFrameFix(circuit, code, target) -> PauliOp:
    """Find the Pauli correction that makes ``circuit`` sign exact.

    Parameters
    ----------
    circuit : `LayeredCircuit` or `GateSequence`
        A circuit whose symplectic action already implements ``target`` up
        to Paulis; an existing Pauli frame is taken into account.
    code : `StabilizerCode`
        The code.
    target : `CliffordTableau`, `SymplecticMap` or `BitMatrix`
        Logical target on ``code.k`` qubits.

    Returns
    -------
    correction : `PauliOp`
        Hermitian ``P`` such that applying ``P`` after the circuit sends
        every stabilizer generator to a ``+``-signed stabilizer element and
        every logical generator to its exactly signed target image.

    Raises
    ------
    LogicError
        Raised if the circuit is not logical for the target, or the sign
        system is inconsistent.
    """
    images = generatorImages(circuitTableau(circuit), code, targetTableau(target, code.k))
    broken = [g.label for g in images if g.expansion is None]
    if broken:
        raise LogicError(f"circuit does not implement the target up to Paulis: {', '.join(broken)}")
    n = code.n
    # <p, v> = p . (Omega v): rows are the images with X and Z halves swapped
    rows = [g.image.z.concatenate(g.image.x) for g in images]
    defects = BitVector.fromArray([int(g.signDefect) for g in images])
    result = solve(BitMatrix.fromRows(rows, cols=2*n), defects)
    if result.solution is None:
        raise LogicError("no Pauli frame restores the generator signs")
    correction = PauliOp.fromVector(result.solution)
    _LOG.debug("Pauli frame correction %s for %d sign defects", correction, sum(defects))
    return correction


def withFixedFrame(circuit: LayeredCircuit, code, target) -> LayeredCircuit:
    """Return ``circuit`` with its Pauli frame replaced by the corrected
    one."""
    correction = pauliFrameFix(circuit, code, target)
    frame = circuit.pauliFrame
    combined = correction if frame is None else (correction*frame).unsigned()
    if combined.isIdentity():
        combined = None
    return circuit.withPauliFrame(combined)
