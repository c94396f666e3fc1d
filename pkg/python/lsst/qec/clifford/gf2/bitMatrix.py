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

"""Dense GF(2) linear algebra on bit-packed matrices.

Rows are stored as little-endian sequences of 64-bit words; bit ``j`` of a
row lives in word ``j // 64`` at position ``j % 64``. Bits beyond the last
column are always zero, so word-wise XOR and AND never need masking.
"""

from __future__ import annotations

__all__ = ["BitMatrix", "BitVector", "SolveResult", "matMul", "matVec", "solve", "inverse",
           "rank", "nullspace", "omega", "isSymplectic", "randomInvertible"]

from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from ..exceptions import InvalidParameterError, LengthError

WORD_BITS = 64
_ONE = np.uint64(1)


def _numWords(nbits: int) -> int:
    return (nbits + WORD_BITS - 1) // WORD_BITS


def _pack(dense: np.ndarray, nbits: int) -> np.ndarray:
    """Pack the last axis of a 0/1 array into uint64 words."""
    nw = _numWords(nbits)
    lead = dense.shape[:-1]
    if nw == 0 or 0 in lead:
        return np.zeros(lead + (nw,), dtype=np.uint64)
    padded = np.zeros(lead + (nw*WORD_BITS,), dtype=np.uint8)
    padded[..., :nbits] = dense
    packed = np.ascontiguousarray(np.packbits(padded, axis=-1, bitorder="little"))
    return packed.view("<u8").astype(np.uint64)


def _unpack(words: np.ndarray, nbits: int) -> np.ndarray:
    lead = words.shape[:-1]
    if nbits == 0 or 0 in lead:
        return np.zeros(lead + (nbits,), dtype=np.uint8)
    raw = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(raw, axis=-1, bitorder="little")[..., :nbits]


def _parity(words: np.ndarray) -> np.ndarray:
    """Parity of the set bits of every uint64 along the last axis."""
    acc = np.bitwise_xor.reduce(words, axis=-1) if words.shape[-1] else \
        np.zeros(words.shape[:-1], dtype=np.uint64)
    acc = np.array(acc, dtype=np.uint64)
    for shift in (32, 16, 8, 4, 2, 1):
        acc ^= acc >> np.uint64(shift)
    return (acc & _ONE).astype(np.uint8)


def _asDense(data, ndim: int) -> np.ndarray:
    arr = np.asarray(data)
    if arr.size == 0:
        arr = arr.reshape(arr.shape if arr.ndim == ndim else (0,)*ndim)
    if arr.ndim != ndim:
        raise InvalidParameterError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if arr.dtype == np.bool_:
        return arr.astype(np.uint8)
    if not np.all((arr == 0) | (arr == 1)):
        raise InvalidParameterError("GF(2) entries must be 0 or 1")
    return arr.astype(np.uint8)


class BitVector:
    """An immutable vector over GF(2).

    Parameters
    ----------
    length : `int`
        Number of entries.
    words : `numpy.ndarray`, optional
        Packed uint64 storage; zero vector if not given.
    """

    __slots__ = ("_len", "_words")

    def __init__(self, length: int, words: Optional[np.ndarray] = None):
        if length < 0:
            raise InvalidParameterError(f"negative vector length {length}")
        if words is None:
            words = np.zeros(_numWords(length), dtype=np.uint64)
        elif words.shape != (_numWords(length),):
            raise LengthError(f"storage shape {words.shape} does not match length {length}")
        words = np.array(words, dtype=np.uint64)
        words.setflags(write=False)
        self._len = length
        self._words = words

    @classmethod
    def fromArray(cls, data) -> BitVector:
        dense = _asDense(data, 1)
        return cls(len(dense), _pack(dense, len(dense)))

    @classmethod
    def fromString(cls, text: str) -> BitVector:
        """Build from a string of ``0``/``1`` characters, index 0 first."""
        return cls.fromArray([int(c) for c in text])

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length)

    @classmethod
    def unit(cls, length: int, index: int) -> BitVector:
        dense = np.zeros(length, dtype=np.uint8)
        dense[index] = 1
        return cls.fromArray(dense)

    @property
    def words(self) -> np.ndarray:
        return self._words

    def toArray(self) -> np.ndarray:
        return _unpack(self._words, self._len)

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.toArray())]

    def weight(self) -> int:
        return sum(int(w).bit_count() for w in self._words)

    def any(self) -> bool:
        return bool(np.any(self._words))

    def dot(self, other: BitVector) -> int:
        """Inner product over GF(2)."""
        self._checkLength(other)
        return int(_parity(self._words & other._words))

    def concatenate(self, other: BitVector) -> BitVector:
        return BitVector.fromArray(np.concatenate([self.toArray(), other.toArray()]))

    def slice(self, start: int, stop: int) -> BitVector:
        return BitVector.fromArray(self.toArray()[start:stop])

    def withEntry(self, index: int, value: int) -> BitVector:
        dense = self.toArray().copy()
        dense[index] = value & 1
        return BitVector.fromArray(dense)

    def _checkLength(self, other: BitVector):
        if self._len != other._len:
            raise LengthError(f"vector lengths differ: {self._len} != {other._len}")

    def __len__(self):
        return self._len

    def __getitem__(self, index: int) -> int:
        if index < 0:
            index += self._len
        if not 0 <= index < self._len:
            raise IndexError(f"index {index} out of range for length {self._len}")
        return (int(self._words[index // WORD_BITS]) >> (index % WORD_BITS)) & 1

    def __iter__(self):
        return iter(int(b) for b in self.toArray())

    def __xor__(self, other: BitVector) -> BitVector:
        self._checkLength(other)
        return BitVector(self._len, self._words ^ other._words)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        self._checkLength(other)
        return BitVector(self._len, self._words & other._words)

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._len == other._len and np.array_equal(self._words, other._words)

    def __hash__(self):
        return hash((self._len, self._words.tobytes()))

    def __str__(self):
        return "".join(str(int(b)) for b in self.toArray())

    def __repr__(self):
        return f"BitVector('{self}')"


class BitMatrix:
    """An immutable dense matrix over GF(2) with bit-packed rows.

    Parameters
    ----------
    rows, cols : `int`
        Shape; either may be zero.
    words : `numpy.ndarray`, optional
        Packed uint64 storage of shape ``(rows, ceil(cols/64))``; zero
        matrix if not given.
    """

    __slots__ = ("_rows", "_cols", "_words")

    def __init__(self, rows: int, cols: int, words: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise InvalidParameterError(f"negative matrix shape ({rows}, {cols})")
        shape = (rows, _numWords(cols))
        if words is None:
            words = np.zeros(shape, dtype=np.uint64)
        elif words.shape != shape:
            raise LengthError(f"storage shape {words.shape} does not match {shape}")
        words = np.array(words, dtype=np.uint64)
        words.setflags(write=False)
        self._rows = rows
        self._cols = cols
        self._words = words

    @classmethod
    def fromArray(cls, data, cols: Optional[int] = None) -> BitMatrix:
        """Build from a nested sequence or 2-d array of 0/1 values.

        ``cols`` is only needed to give an empty row list a width.
        """
        dense = _asDense(data, 2)
        if dense.shape[0] == 0 and cols is not None:
            dense = np.zeros((0, cols), dtype=np.uint8)
        return cls(dense.shape[0], dense.shape[1], _pack(dense, dense.shape[1]))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.fromArray(np.eye(n, dtype=np.uint8), cols=n)

    @classmethod
    def fromRows(cls, vectors: Sequence[BitVector], cols: Optional[int] = None) -> BitMatrix:
        if not vectors:
            return cls(0, cols or 0)
        return cls.fromArray(np.array([v.toArray() for v in vectors], dtype=np.uint8))

    @classmethod
    def fromColumns(cls, vectors: Sequence[BitVector], rows: Optional[int] = None) -> BitMatrix:
        if not vectors:
            return cls(rows or 0, 0)
        return cls.fromArray(np.array([v.toArray() for v in vectors], dtype=np.uint8).T)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[BitMatrix]]) -> BitMatrix:
        """Assemble a matrix from a grid of blocks, as `numpy.block`."""
        return cls.fromArray(np.block([[b.toArray() for b in row] for row in blocks]))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.fromArray(self.toArray().T, cols=self._rows)

    def toArray(self) -> np.ndarray:
        return _unpack(self._words, self._cols)

    def toLists(self) -> list[list[int]]:
        return [[int(b) for b in row] for row in self.toArray()]

    def row(self, i: int) -> BitVector:
        return BitVector(self._cols, self._words[i])

    def column(self, j: int) -> BitVector:
        return BitVector.fromArray(self.toArray()[:, j])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> BitMatrix:
        """Select rows and columns by index, in the order given."""
        rows = list(rows)
        cols = list(cols)
        dense = self.toArray()[np.ix_(rows, cols)] if rows and cols else \
            np.zeros((len(rows), len(cols)), dtype=np.uint8)
        return BitMatrix.fromArray(dense, cols=len(cols))

    def withEntry(self, i: int, j: int, value: int) -> BitMatrix:
        dense = self.toArray().copy()
        dense[i, j] = value & 1
        return BitMatrix.fromArray(dense, cols=self._cols)

    def isZero(self) -> bool:
        return not np.any(self._words)

    def isSquare(self) -> bool:
        return self._rows == self._cols

    def isSymmetric(self) -> bool:
        return self.isSquare() and self == self.T

    def weight(self) -> int:
        return int(self.toArray().sum())

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(f"index {index} out of range for shape {self.shape}")
        return (int(self._words[i, j // WORD_BITS]) >> (j % WORD_BITS)) & 1

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise LengthError(f"shapes differ: {self.shape} != {other.shape}")
        return BitMatrix(self._rows, self._cols, self._words ^ other._words)

    __add__ = __xor__

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return matVec(self, other)
        return matMul(self, other)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self):
        return hash((self._rows, self._cols, self._words.tobytes()))

    def __str__(self):
        return "\n".join("".join(str(int(b)) for b in row) for row in self.toArray())

    def __repr__(self):
        return f"BitMatrix({self.toLists()})"


class SolveResult(NamedTuple):
    """Outcome of `solve`.

    ``solution`` is `None` for an inconsistent system; ``nullspace`` rows
    always form a basis of the kernel of the coefficient matrix.
    """

    solution: Optional[BitVector]
    nullspace: BitMatrix


def matMul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Multiply two matrices over GF(2).

    Raises
    ------
    LengthError
        Raised if ``a.cols != b.rows``.
    """
    if a.cols != b.rows:
        raise LengthError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.rows, _numWords(b.cols)), dtype=np.uint64)
    dense = a.toArray().astype(bool)
    for k in range(a.cols):
        mask = dense[:, k]
        if mask.any():
            out[mask] ^= b.words[k]
    return BitMatrix(a.rows, b.cols, out)


def matVec(a: BitMatrix, v: BitVector) -> BitVector:
    if a.cols != len(v):
        raise LengthError(f"cannot multiply {a.shape} by vector of length {len(v)}")
    return BitVector.fromArray(_parity(a.words & v.words[np.newaxis, :]) if a.rows else
                               np.zeros(0, dtype=np.uint8))


def _rowReduce(words: np.ndarray, ncols: int, limit: Optional[int] = None):
    """Reduce packed rows to reduced row echelon form in place.

    Pivots are taken column by column, choosing the first row at or below
    the current pivot row with a set bit. Only the first ``limit`` columns
    are used as pivot columns.

    Returns
    -------
    pivots : `list` [`int`]
        Pivot column of each of the leading ``len(pivots)`` rows.
    """
    nrows = words.shape[0]
    limit = ncols if limit is None else limit
    pivots = []
    r = 0
    for j in range(limit):
        if r == nrows:
            break
        w, s = j // WORD_BITS, np.uint64(j % WORD_BITS)
        column = ((words[:, w] >> s) & _ONE).astype(bool)
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
            column[[r, p]] = column[[p, r]]
        column[r] = False
        if column.any():
            words[column] ^= words[r]
        pivots.append(j)
        r += 1
    return pivots


def rank(a: BitMatrix) -> int:
    """Row rank over GF(2); zero for empty matrices."""
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(_rowReduce(np.array(a.words), a.cols))


def nullspace(a: BitMatrix) -> BitMatrix:
    """Basis of ``{v : a v = 0}``, one basis vector per row."""
    words = np.array(a.words)
    pivots = _rowReduce(words, a.cols) if a.rows else []
    reduced = _unpack(words[:len(pivots)], a.cols)
    pivotSet = set(pivots)
    basis = []
    for f in range(a.cols):
        if f in pivotSet:
            continue
        v = np.zeros(a.cols, dtype=np.uint8)
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = reduced[r, f]
        basis.append(v)
    if not basis:
        return BitMatrix(0, a.cols)
    return BitMatrix.fromArray(np.array(basis))


def solve(a: BitMatrix, b: BitVector) -> SolveResult:
    """Solve ``a x = b`` over GF(2).

    The particular solution sets every free variable to zero, so the
    result is deterministic.

    Raises
    ------
    LengthError
        Raised if ``a.rows != len(b)``.
    """
    if a.rows != len(b):
        raise LengthError(f"right-hand side of length {len(b)} for a {a.shape} system")
    kernel = nullspace(a)
    if a.rows == 0:
        return SolveResult(BitVector(a.cols), kernel)
    augmented = np.concatenate([a.toArray(), b.toArray()[:, np.newaxis]], axis=1)
    words = _pack(augmented, a.cols + 1)
    pivots = _rowReduce(words, a.cols + 1, limit=a.cols)
    reduced = _unpack(words, a.cols + 1)
    if reduced[len(pivots):, a.cols].any():
        return SolveResult(None, kernel)
    x = np.zeros(a.cols, dtype=np.uint8)
    for r, p in enumerate(pivots):
        x[p] = reduced[r, a.cols]
    return SolveResult(BitVector.fromArray(x), kernel)


def inverse(a: BitMatrix) -> Optional[BitMatrix]:
    """Inverse of a square matrix, or `None` if it is singular."""
    if not a.isSquare():
        raise LengthError(f"cannot invert a {a.shape} matrix")
    n = a.rows
    if n == 0:
        return BitMatrix(0, 0)
    augmented = np.concatenate([a.toArray(), np.eye(n, dtype=np.uint8)], axis=1)
    words = _pack(augmented, 2*n)
    pivots = _rowReduce(words, 2*n, limit=n)
    if len(pivots) < n:
        return None
    return BitMatrix.fromArray(_unpack(words, 2*n)[:, n:])


def omega(n: int) -> BitMatrix:
    """The symplectic form ``[[0, I], [I, 0]]`` on ``2n`` coordinates."""
    zero = np.zeros((n, n), dtype=np.uint8)
    eye = np.eye(n, dtype=np.uint8)
    return BitMatrix.fromArray(np.block([[zero, eye], [eye, zero]]), cols=2*n)


def isSymplectic(a: BitMatrix, n: int) -> bool:
    """Return `True` if ``a^T Omega a == Omega``.

    Raises
    ------
    LengthError
        Raised if ``a`` is not ``2n x 2n``.
    """
    if a.shape != (2*n, 2*n):
        raise LengthError(f"expected a {2*n}x{2*n} matrix, got {a.shape}")
    form = omega(n)
    return matMul(matMul(a.T, form), a) == form


def randomInvertible(n: int, rng: np.random.Generator, steps: Optional[int] = None) -> BitMatrix:
    """Random invertible matrix built by random row operations on I."""
    dense = np.eye(n, dtype=np.uint8)
    for _ in range(steps if steps is not None else 4*n*n):
        i, j = rng.integers(0, n, size=2) if n > 1 else (0, 0)
        if i != j:
            dense[i] ^= dense[j]
    if n > 1:
        dense = dense[rng.permutation(n)]
    return BitMatrix.fromArray(dense, cols=n)
