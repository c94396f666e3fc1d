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

"""The freedom gauge group: every physical implementation of a fixed
logical gate differs from the others by an element of this group acting
before the encoding.

Block structure of ``F = [[F^xx, F^xz], [F^zx, F^zz]]`` with the first
``k`` coordinates logical and the remaining ``n - k`` ancillary::

    F^xz = 0
    F^xx = [[I_k, *], [0, *]]
    F^zz = [[I_k, 0], [*, *]]
    F^zx = [[0_k, *], [*, *]]
"""

from __future__ import annotations

__all__ = ["FREE", "EntryPattern", "FreedomTemplate", "ReducedTemplate", "ReducedFreedom",
           "freedomCount", "freedomCountFactored", "enumerateFreedom", "isValidFreedom",
           "reducedTemplate", "embedTarget", "reduceFreedom", "generalLinearGroup",
           "symplecticGroup", "templateBruteForce", "DEFAULT_ENUMERATION_CAP"]

import itertools
from typing import Iterator

import numpy as np
from lsst.utils.logging import getLogger

from ..exceptions import EnumerationCapError, InvalidParameterError, LengthError
from ..gf2 import BitMatrix, inverse, isSymplectic, matMul, rank

_LOG = getLogger(__name__)

FREE = -1
DEFAULT_ENUMERATION_CAP = 2**20


def _checkSizes(n, k):
    if not 0 <= k <= n:
        raise InvalidParameterError(f"need 0 <= k <= n, got n={n}, k={k}")


def _glOrder(r: int) -> int:
    order = 1
    for m in range(1, r + 1):
        order *= 2**r - 2**(m - 1)
    return order


def freedomCount(n: int, k: int) -> int:
    """Exact number of gauges for an ``[[n, k]]`` code."""
    _checkSizes(n, k)
    exponent = n*(n + 1)//2 + k*(n - k) - k*(k + 1)//2
    return 2**exponent*_glOrder(n - k)


def freedomCountFactored(n: int, k: int) -> tuple[int, int, int]:
    """The gauge count split as ``(2^(2k(n-k)), 2^((n-k)(n-k+1)/2),
    |GL(n-k)|)``.

    The factors count, in turn, the stabilizer components that logical
    operators may pick up, the symmetric freedom left in the stabilizer
    block, and the choices of stabilizer generating set.
    """
    _checkSizes(n, k)
    r = n - k
    return (2**(2*k*r), 2**(r*(r + 1)//2), _glOrder(r))


class EntryPattern:
    """Per-entry classification of a matrix: 0, 1 or `FREE`."""

    def __init__(self, pattern: np.ndarray):
        self._pattern = np.array(pattern, dtype=np.int8)
        self._pattern.setflags(write=False)

    @property
    def pattern(self) -> np.ndarray:
        return self._pattern

    @property
    def shape(self) -> tuple[int, int]:
        return self._pattern.shape

    def freeEntries(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self._pattern == FREE))]

    @property
    def numFree(self) -> int:
        return int(np.sum(self._pattern == FREE))

    def matches(self, m: BitMatrix) -> bool:
        if m.shape != self.shape:
            return False
        fixed = self._pattern != FREE
        return bool(np.array_equal(m.toArray()[fixed], self._pattern[fixed]))

    def fill(self, bits) -> BitMatrix:
        """Assign the free entries in row-major order."""
        dense = np.where(self._pattern == FREE, 0, self._pattern).astype(np.uint8)
        free = self._pattern == FREE
        dense[free] = np.asarray(bits, dtype=np.uint8)
        return BitMatrix.fromArray(dense, cols=self.shape[1])

    def __str__(self):
        return "\n".join("".join("*" if v == FREE else str(v) for v in row) for row in self._pattern)


class FreedomTemplate(EntryPattern):
    """The fixed entries every gauge ``F`` shares."""

    def __init__(self, n: int, k: int):
        _checkSizes(n, k)
        self.n, self.k = n, k
        pattern = np.full((2*n, 2*n), FREE, dtype=np.int8)
        eye = np.eye(k, dtype=np.int8)
        xx = pattern[:n, :n]
        xx[:k, :k] = eye
        xx[k:, :k] = 0
        pattern[:n, n:] = 0
        zx = pattern[n:, :n]
        zx[:k, :k] = 0
        zz = pattern[n:, n:]
        zz[:k, :k] = eye
        zz[:k, k:] = 0
        super().__init__(pattern)


class ReducedTemplate(EntryPattern):
    """Pattern of ``F'_C``: the target on top, ``(n+k)(n-k)`` free entries
    below."""

    def __init__(self, c: BitMatrix, n: int):
        k = c.rows//2
        self.n, self.k, self.target = n, k, c
        pattern = np.full((n + k, n + k), FREE, dtype=np.int8)
        pattern[:2*k, :2*k] = c.toArray()
        pattern[:2*k, 2*k:] = 0
        super().__init__(pattern)


class ReducedFreedom:
    """An assignment of ``F'_C``.

    Raises
    ------
    LengthError
        Raised if ``fPrime`` is not ``(n+k) x (n+k)``.
    InvalidParameterError
        Raised if the top-right block is not zero.
    """

    def __init__(self, fPrime: BitMatrix, n: int, k: int):
        if fPrime.shape != (n + k, n + k):
            raise LengthError(f"F' must be {(n + k, n + k)}, got {fPrime.shape}")
        if not fPrime.submatrix(range(2*k), range(2*k, n + k)).isZero():
            raise InvalidParameterError("F' has a non-zero top-right block")
        self.fPrime, self.n, self.k = fPrime, n, k

    @property
    def target(self) -> BitMatrix:
        return self.fPrime.submatrix(range(2*self.k), range(2*self.k))

    @property
    def free(self) -> BitMatrix:
        """The ``(n-k) x (n+k)`` bottom rows."""
        return self.fPrime.submatrix(range(2*self.k, self.n + self.k), range(self.n + self.k))

    def __eq__(self, other):
        if not isinstance(other, ReducedFreedom):
            return NotImplemented
        return (self.fPrime, self.n, self.k) == (other.fPrime, other.n, other.k)

    def __hash__(self):
        return hash((self.fPrime, self.n, self.k))

    def __repr__(self):
        return f"ReducedFreedom({self.fPrime.toLists()})"


def isValidFreedom(f: BitMatrix, n: int, k: int) -> bool:
    """True iff ``f`` is symplectic and matches the gauge template."""
    if f.shape != (2*n, 2*n):
        return False
    return FreedomTemplate(n, k).matches(f) and isSymplectic(f, n)


def reducedTemplate(c: BitMatrix, n: int) -> ReducedTemplate:
    """Pattern of ``F'_C`` for a k-qubit target ``c`` on an n-qubit code.

    Raises
    ------
    InvalidParameterError
        Raised if ``c`` is not symplectic or ``n`` is smaller than ``k``.
    """
    if c.rows != c.cols or c.rows % 2:
        raise LengthError(f"target must be 2k x 2k, got {c.shape}")
    k = c.rows//2
    _checkSizes(n, k)
    if not isSymplectic(c, k):
        raise InvalidParameterError("target is not symplectic")
    return ReducedTemplate(c, n)


def embedTarget(c: BitMatrix, n: int, k: int) -> BitMatrix:
    """``C'``: the k-qubit target acting on the first ``k`` of ``n``
    unencoded qubits."""
    if c.shape != (2*k, 2*k):
        raise LengthError(f"target must be {2*k}x{2*k}, got {c.shape}")
    index = list(range(k)) + list(range(n, n + k))
    dense = np.eye(2*n, dtype=np.uint8)
    dense[np.ix_(index, index)] = c.toArray()
    return BitMatrix.fromArray(dense, cols=2*n)


def reduceFreedom(m: BitMatrix, n: int, k: int) -> BitMatrix:
    """Delete rows and columns ``k+1..n`` of a ``2n x 2n`` matrix."""
    keep = list(range(k)) + list(range(n, 2*n))
    return m.submatrix(keep, keep)


def generalLinearGroup(r: int) -> Iterator[BitMatrix]:
    """Invertible ``r x r`` matrices, generated row by row, each new row
    outside the span of the previous ones."""
    rows = [np.array(bits, dtype=np.uint8) for bits in itertools.product((0, 1), repeat=r)]

    def extend(prefix):
        if len(prefix) == r:
            yield BitMatrix.fromArray(np.array(prefix, dtype=np.uint8).reshape(r, r), cols=r)
            return
        for row in rows:
            candidate = prefix + [row]
            if rank(BitMatrix.fromArray(np.array(candidate))) == len(candidate):
                yield from extend(candidate)

    yield from extend([])


def enumerateFreedom(n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[BitMatrix]:
    """Yield every gauge exactly once.

    ``F^zz = [[I, 0], [a, b]]`` with ``b`` invertible,
    ``F^xx = ((F^zz)^T)^-1`` and ``F^zx = F^zz S`` with ``S`` symmetric and
    zero on its leading ``k x k`` block.

    Raises
    ------
    EnumerationCapError
        Raised if the group has more than ``cap`` elements.
    """
    count = freedomCount(n, k)
    if count > cap:
        raise EnumerationCapError(f"{count} gauges for n={n}, k={k} exceed the cap of {cap}")
    r = n - k
    symmetricSlots = [(i, j) for i in range(n) for j in range(i, n) if not (i < k and j < k)]
    zeroBlock = BitMatrix.zeros(n, n)
    for b in generalLinearGroup(r):
        for aBits in itertools.product((0, 1), repeat=k*r):
            zz = np.eye(n, dtype=np.uint8)
            zz[k:, :k] = np.array(aBits, dtype=np.uint8).reshape(r, k)
            zz[k:, k:] = b.toArray()
            fzz = BitMatrix.fromArray(zz, cols=n)
            fxx = inverse(fzz.T)
            for sBits in itertools.product((0, 1), repeat=len(symmetricSlots)):
                s = np.zeros((n, n), dtype=np.uint8)
                for (i, j), bit in zip(symmetricSlots, sBits):
                    s[i, j] = s[j, i] = bit
                fzx = matMul(fzz, BitMatrix.fromArray(s, cols=n))
                yield BitMatrix.block([[fxx, zeroBlock], [fzx, fzz]])


def _symplecticMask(mats: np.ndarray, n: int) -> np.ndarray:
    form = np.zeros((2*n, 2*n), dtype=np.int32)
    form[:n, n:] = np.eye(n, dtype=np.int32)
    form[n:, :n] = np.eye(n, dtype=np.int32)
    m = mats.astype(np.int32)
    product = np.einsum("aji,jk,akl->ail", m, form, m) % 2
    return np.all(product == form, axis=(1, 2))


def _allAssignments(numBits: int, start: int, stop: int) -> np.ndarray:
    values = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(numBits - 1, -1, -1, dtype=np.int64)
    return ((values[:, np.newaxis] >> shifts) & 1).astype(np.uint8)


def _bruteForce(pattern: np.ndarray, n: int, chunk: int = 1 << 16) -> Iterator[BitMatrix]:
    free = pattern == FREE
    numBits = int(free.sum())
    base = np.where(free, 0, pattern).astype(np.uint8)
    for start in range(0, 2**numBits, chunk):
        bits = _allAssignments(numBits, start, min(start + chunk, 2**numBits))
        mats = np.repeat(base[np.newaxis], len(bits), axis=0)
        mats[:, free] = bits
        for m in mats[_symplecticMask(mats, n)]:
            yield BitMatrix.fromArray(m, cols=2*n)


def symplecticGroup(n: int) -> Iterator[BitMatrix]:
    """Every element of ``Sp(2n, F_2)`` by exhaustive filtering; ``n <= 2``.

    Raises
    ------
    EnumerationCapError
        Raised for ``n > 2``.
    """
    if n > 2:
        raise EnumerationCapError(f"exhaustive symplectic enumeration is limited to n <= 2, got {n}")
    yield from _bruteForce(np.full((2*n, 2*n), FREE, dtype=np.int8), n)


def templateBruteForce(n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[BitMatrix]:
    """Symplectic matrices matching the gauge template, found by filtering
    every assignment of the free entries."""
    template = FreedomTemplate(n, k)
    if 2**template.numFree > cap:
        raise EnumerationCapError(f"2^{template.numFree} template assignments exceed the cap of {cap}")
    _LOG.verbose("Filtering 2^%d template assignments for n=%d, k=%d", template.numFree, n, k)
    yield from _bruteForce(template.pattern, n)
