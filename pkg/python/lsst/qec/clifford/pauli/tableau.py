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

"""Symplectic and sign-tracking representations of Clifford unitaries."""

from __future__ import annotations

__all__ = ["SymplecticMap", "CliffordTableau", "conjugate", "sclSymplectic", "czlSymplectic",
           "singleQubitBlock", "randomSymplectic"]

from typing import Optional, Sequence

import numpy as np

from ..exceptions import InvalidParameterError, LengthError, LogicError
from ..gf2 import BitMatrix, BitVector, isSymplectic, matMul, matVec, omega
from .pauliOp import PauliOp


class SymplecticMap:
    """A Clifford unitary modulo phases and Paulis.

    Column ``j`` of ``mat`` is the image of ``X_j`` and column ``n + j`` the
    image of ``Z_j``, both as ``[x; z]`` vectors.

    Parameters
    ----------
    mat : `BitMatrix`
        A ``2n x 2n`` symplectic matrix.
    check : `bool`, optional
        Verify symplecticity; disable only for matrices known to be valid.

    Raises
    ------
    InvalidParameterError
        Raised if ``mat`` is not symplectic.
    """

    __slots__ = ("_mat", "_n")

    def __init__(self, mat: BitMatrix, check: bool = True):
        if mat.rows != mat.cols or mat.rows % 2:
            raise LengthError(f"a symplectic map needs an even square matrix, got {mat.shape}")
        self._n = mat.rows // 2
        if check and not isSymplectic(mat, self._n):
            raise InvalidParameterError("matrix is not symplectic")
        self._mat = mat

    @classmethod
    def identity(cls, n: int) -> SymplecticMap:
        return cls(BitMatrix.identity(2*n), check=False)

    @classmethod
    def fromBlocks(cls, xx: BitMatrix, xz: BitMatrix, zx: BitMatrix, zz: BitMatrix) -> SymplecticMap:
        return cls(BitMatrix.block([[xx, xz], [zx, zz]]))

    @property
    def n(self) -> int:
        return self._n

    @property
    def mat(self) -> BitMatrix:
        return self._mat

    def blocks(self) -> tuple[BitMatrix, BitMatrix, BitMatrix, BitMatrix]:
        """The blocks ``(A^xx, A^xz, A^zx, A^zz)``."""
        n = self._n
        first, second = range(n), range(n, 2*n)
        return (self._mat.submatrix(first, first), self._mat.submatrix(first, second),
                self._mat.submatrix(second, first), self._mat.submatrix(second, second))

    def inverse(self) -> SymplecticMap:
        form = omega(self._n)
        return SymplecticMap(matMul(matMul(form, self._mat.T), form), check=False)

    def then(self, other: SymplecticMap) -> SymplecticMap:
        """The map of applying ``self`` first and ``other`` second."""
        return SymplecticMap(matMul(other.mat, self._mat), check=False)

    def apply(self, v: BitVector) -> BitVector:
        return matVec(self._mat, v)

    def __matmul__(self, other: SymplecticMap) -> SymplecticMap:
        return SymplecticMap(matMul(self._mat, other.mat), check=False)

    def __eq__(self, other):
        if not isinstance(other, SymplecticMap):
            return NotImplemented
        return self._mat == other._mat

    def __hash__(self):
        return hash(self._mat)

    def __repr__(self):
        return f"SymplecticMap({self._mat.toLists()})"


class CliffordTableau:
    """A Clifford unitary up to global phase.

    Parameters
    ----------
    images : sequence of `PauliOp`
        Hermitian images ``U X_j U^dagger`` for ``j < n`` followed by
        ``U Z_j U^dagger``.
    check : `bool`, optional
        Verify that the images are Hermitian and satisfy the canonical
        commutation relations.
    """

    __slots__ = ("_images", "_n")

    def __init__(self, images: Sequence[PauliOp], check: bool = True):
        if len(images) % 2:
            raise LengthError(f"a tableau needs an even number of images, got {len(images)}")
        self._n = len(images) // 2
        self._images = tuple(images)
        if check:
            self._validate()

    def _validate(self):
        n = self._n
        for g, p in enumerate(self._images):
            if p.n != n:
                raise LengthError(f"image {g} acts on {p.n} qubits instead of {n}")
            if not p.isHermitian():
                raise InvalidParameterError(f"image {g} ({p}) is not Hermitian")
        if not isSymplectic(self.symplectic.mat, n):
            raise InvalidParameterError("images violate the canonical commutation relations")

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        images = [PauliOp.single(n, j, "X") for j in range(n)] + \
            [PauliOp.single(n, j, "Z") for j in range(n)]
        return cls(images, check=False)

    @classmethod
    def fromStrings(cls, xImages: Sequence[str], zImages: Sequence[str]) -> CliffordTableau:
        """Build from signed Pauli strings, e.g. ``(["+Z"], ["+X"])``."""
        return cls([PauliOp.fromString(s) for s in list(xImages) + list(zImages)])

    @classmethod
    def fromSymplectic(cls, smap: SymplecticMap) -> CliffordTableau:
        """The representative whose generator images all carry ``+``."""
        mat = smap.mat
        return cls([PauliOp.fromVector(mat.column(g)) for g in range(2*smap.n)], check=False)

    @classmethod
    def fromPauli(cls, p: PauliOp) -> CliffordTableau:
        """Tableau of conjugation by the Pauli ``p``."""
        n = p.n
        images = []
        for j in range(n):
            images.append(PauliOp.single(n, j, "X") if p.z[j] == 0 else PauliOp.single(n, j, "X").negated())
        for j in range(n):
            images.append(PauliOp.single(n, j, "Z") if p.x[j] == 0 else PauliOp.single(n, j, "Z").negated())
        return cls(images, check=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def images(self) -> tuple[PauliOp, ...]:
        return self._images

    def xImage(self, j: int) -> PauliOp:
        return self._images[j]

    def zImage(self, j: int) -> PauliOp:
        return self._images[self._n + j]

    @property
    def symplectic(self) -> SymplecticMap:
        mat = BitMatrix.fromColumns([p.vector for p in self._images], rows=2*self._n)
        return SymplecticMap(mat, check=False)

    @property
    def signBits(self) -> tuple[int, ...]:
        return tuple(p.sign for p in self._images)

    def conjugate(self, p: PauliOp) -> PauliOp:
        return conjugate(self, p)

    def then(self, other: CliffordTableau) -> CliffordTableau:
        """Tableau of applying ``self`` first and ``other`` second."""
        if other.n != self._n:
            raise LengthError(f"cannot compose {self._n}- and {other.n}-qubit tableaus")
        return CliffordTableau([conjugate(other, p) for p in self._images], check=False)

    def inverse(self) -> CliffordTableau:
        inv = self.symplectic.inverse()
        images = []
        for g in range(2*self._n):
            candidate = PauliOp.fromVector(inv.mat.column(g))
            back = conjugate(self, candidate)
            generator = PauliOp.fromVector(BitVector.unit(2*self._n, g))
            if back == generator:
                images.append(candidate)
            elif back == generator.negated():
                images.append(candidate.negated())
            else:
                raise LogicError("tableau inverse does not map back onto the generators")
        return CliffordTableau(images, check=False)

    def embed(self, n: int, qubits: Sequence[int]) -> CliffordTableau:
        """Act with this tableau on ``qubits`` of an ``n``-qubit register."""
        qubits = list(qubits)
        full = list(CliffordTableau.identity(n).images)
        m = self._n
        for local, q in enumerate(qubits):
            full[q] = self._images[local].embed(n, qubits)
            full[n + q] = self._images[m + local].embed(n, qubits)
        return CliffordTableau(full, check=False)

    def __eq__(self, other):
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(self._images)

    def __repr__(self):
        xs = ", ".join(str(p) for p in self._images[:self._n])
        zs = ", ".join(str(p) for p in self._images[self._n:])
        return f"CliffordTableau(X -> [{xs}], Z -> [{zs}])"


def conjugate(t: CliffordTableau, p: PauliOp) -> PauliOp:
    """Return ``U p U^dagger`` with exact phase.

    ``p = i^q X^x Z^z`` is expanded over the generators and the signed
    generator images are multiplied in the same order.

    Raises
    ------
    LengthError
        Raised if ``p`` and ``t`` act on different numbers of qubits.
    """
    n = t.n
    if p.n != n:
        raise LengthError(f"cannot conjugate a {p.n}-qubit Pauli by a {n}-qubit tableau")
    result = PauliOp(BitVector(n), BitVector(n), p.phase)
    images = t.images
    for j in p.x.support():
        result = result * images[j]
    for j in p.z.support():
        result = result * images[n + j]
    return result


def singleQubitBlock(entry) -> tuple[int, int, int, int]:
    """Normalize a single-qubit SCL entry to ``(xx, xz, zx, zz)``.

    Accepts anything with a ``block`` attribute (such as
    `SingleQubitClifford`), a 2x2 `BitMatrix` or a 4-sequence of bits.

    Raises
    ------
    InvalidParameterError
        Raised if ``xx zz + xz zx != 1``.
    """
    if hasattr(entry, "block"):
        block = tuple(entry.block)
    elif isinstance(entry, BitMatrix):
        if entry.shape != (2, 2):
            raise LengthError(f"single-qubit block must be 2x2, got {entry.shape}")
        block = (entry[0, 0], entry[0, 1], entry[1, 0], entry[1, 1])
    else:
        block = tuple(int(b) for b in np.asarray(entry).reshape(-1))
        if len(block) != 4:
            raise LengthError(f"single-qubit block needs 4 entries, got {len(block)}")
    xx, xz, zx, zz = block
    if (xx*zz + xz*zx) % 2 != 1:
        raise InvalidParameterError(f"single-qubit block {block} is not invertible")
    return block


def sclSymplectic(assignments: Sequence) -> SymplecticMap:
    """Symplectic map of a single-qubit Clifford layer.

    Each assignment contributes the diagonal entries ``b^xx, b^xz, b^zx,
    b^zz`` of the four blocks.
    """
    n = len(assignments)
    dense = np.zeros((2*n, 2*n), dtype=np.uint8)
    for i, entry in enumerate(assignments):
        xx, xz, zx, zz = singleQubitBlock(entry)
        dense[i, i], dense[i, n + i], dense[n + i, i], dense[n + i, n + i] = xx, xz, zx, zz
    return SymplecticMap(BitMatrix.fromArray(dense, cols=2*n), check=False)


def czlSymplectic(gamma: BitMatrix) -> SymplecticMap:
    """Symplectic map ``[[I, 0], [Gamma, I]]`` of a layer of CZ gates.

    Raises
    ------
    InvalidParameterError
        Raised if ``gamma`` is not symmetric with zero diagonal.
    """
    if not gamma.isSymmetric():
        raise InvalidParameterError("CZ adjacency matrix must be symmetric")
    dense = gamma.toArray()
    if np.any(np.diag(dense)):
        raise InvalidParameterError("CZ adjacency matrix must have a zero diagonal")
    n = gamma.rows
    eye = np.eye(n, dtype=np.uint8)
    zero = np.zeros((n, n), dtype=np.uint8)
    return SymplecticMap(BitMatrix.fromArray(np.block([[eye, zero], [dense, eye]]), cols=2*n), check=False)


def randomSymplectic(n: int, rng: np.random.Generator, layers: Optional[int] = None) -> SymplecticMap:
    """Random symplectic map drawn as a product of random SCL and CZL
    layers."""
    from .gates import SYMPLECTIC_CLASSES

    smap = SymplecticMap.identity(n)
    for _ in range(layers if layers is not None else 2*n + 2):
        scl = [SYMPLECTIC_CLASSES[int(c)] for c in rng.integers(0, 6, size=n)]
        upper = np.triu(rng.integers(0, 2, size=(n, n)), 1).astype(np.uint8)
        smap = smap.then(sclSymplectic(scl)).then(czlSymplectic(BitMatrix.fromArray(upper + upper.T, cols=n)))
    return smap
