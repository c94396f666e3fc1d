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

"""Encoding matrices ``E`` and their column-trimmed reductions ``E'``."""

from __future__ import annotations

__all__ = ["EncodingMatrix", "ReducedEncoding", "buildEncoding", "reduceEncoding"]

from dataclasses import dataclass

from lsst.utils.logging import getLogger

from ..exceptions import CodeValidationError, LogicError
from ..gf2 import BitMatrix, BitVector, inverse, isSymplectic, rank, solve
from .stabilizerCode import StabilizerCode, validate

_LOG = getLogger(__name__)


@dataclass(frozen=True)
class EncodingMatrix:
    """Symplectic encoding matrix with column layout
    ``x_1..x_k | t_1..t_{n-k} | z_1..z_k | s_1..s_{n-k}``.

    The ``t`` columns are destabilizers completing the symplectic basis.
    """

    e: BitMatrix
    n: int
    k: int

    @property
    def logicalXColumns(self) -> range:
        return range(0, self.k)

    @property
    def destabilizerColumns(self) -> range:
        return range(self.k, self.n)

    @property
    def logicalZColumns(self) -> range:
        return range(self.n, self.n + self.k)

    @property
    def stabilizerColumns(self) -> range:
        return range(self.n + self.k, 2*self.n)

    def inverse(self) -> BitMatrix:
        inv = inverse(self.e)
        if inv is None:
            raise LogicError("encoding matrix is singular")
        return inv


@dataclass(frozen=True)
class ReducedEncoding:
    """``E'``: the encoding matrix without its destabilizer columns, laid
    out as ``x_1..x_k | z_1..z_k | s_1..s_{n-k}``."""

    ePrime: BitMatrix
    n: int
    k: int

    @property
    def width(self) -> int:
        return self.n + self.k


def _swapHalves(v: BitVector, n: int) -> BitVector:
    return v.slice(n, 2*n).concatenate(v.slice(0, n))


def _form(a: BitVector, b: BitVector, n: int) -> int:
    return _swapHalves(a, n).dot(b)


def buildEncoding(code: StabilizerCode) -> EncodingMatrix:
    """Complete the code's logical and stabilizer vectors to a symplectic
    encoding matrix.

    Each destabilizer ``t_j`` is the deterministic particular solution of
    the linear conditions ``<t_j, x_i> = <t_j, z_i> = 0`` and
    ``<t_j, s_m> = delta_jm``; mutual commutation of the ``t_j`` is then
    restored by adding stabilizers in generator order.

    Raises
    ------
    CodeValidationError
        Raised if the code does not validate.
    LogicError
        Raised if the completion is not symplectic.
    """
    diagnostics = validate(code).diagnostics
    if diagnostics:
        raise CodeValidationError(diagnostics)
    n, k = code.n, code.k
    xs = [p.vector for p in code.logicalX]
    zs = [p.vector for p in code.logicalZ]
    ss = [p.vector for p in code.stabilizers]
    known = xs + zs + ss
    constraints = BitMatrix.fromRows([_swapHalves(v, n) for v in known], cols=2*n)
    ts = []
    for j in range(n - k):
        target = BitVector.unit(len(known), 2*k + j)
        result = solve(constraints, target)
        if result.solution is None:
            raise LogicError(f"no destabilizer partner for stabilizer[{j + 1}]")
        t = result.solution
        for m, previous in enumerate(ts):
            if _form(t, previous, n):
                t = t ^ ss[m]
        ts.append(t)
    e = BitMatrix.fromColumns(xs + ts + zs + ss, rows=2*n)
    if not isSymplectic(e, n):
        raise LogicError("symplectic completion of the encoding failed")
    _LOG.debug("Built %dx%d encoding matrix for %r", 2*n, 2*n, code)
    return EncodingMatrix(e, n, k)


def reduceEncoding(encoding: EncodingMatrix) -> ReducedEncoding:
    """Delete the destabilizer columns ``k+1..n`` of ``E``."""
    n, k = encoding.n, encoding.k
    keep = list(range(k)) + list(range(n, 2*n))
    ePrime = encoding.e.submatrix(range(2*n), keep)
    if rank(ePrime.T) != n + k:
        raise LogicError("reduced encoding lost full column rank")
    return ReducedEncoding(ePrime, n, k)
