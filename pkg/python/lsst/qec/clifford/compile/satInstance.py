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

"""Propositional encoding of the layered-circuit synthesis problem.

The unknown circuit ``B_{l+1} G_l ... G_1 B_1`` is pushed through ``E'``
one layer at a time. Every intermediate ``2n x (n+k)`` matrix entry is a
constant or a literal defined by a Tseitin AND/XOR gate, so the instance is
satisfiable exactly when the GF(2) system ``A_l E' = E' F'_C`` is.
"""

from __future__ import annotations

__all__ = ["SatInstance", "DecodedModel", "encode", "decodeModel", "targetMatrix"]

import itertools
import logging
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np
from lsst.utils.logging import getLogger
from lsst.utils.timer import time_this
from pysat.formula import IDPool

from ..code import ReducedEncoding
from ..exceptions import InvalidParameterError, LengthError
from ..gauge import ReducedFreedom, reducedTemplate
from ..gf2 import BitMatrix
from ..pauli import CliffordTableau, LayeredCircuit, SingleQubitClifford, SymplecticMap
from .connectivity import ConnectivityGraph

_log = getLogger(__name__)

Term = Union[bool, int]

SCL_FIELDS = ("xx", "xz", "zx", "zz")


def _neg(a: Term) -> Term:
    return (not a) if isinstance(a, bool) else -a


def targetMatrix(target, k: int) -> BitMatrix:
    """The ``2k x 2k`` symplectic matrix of a logical target."""
    if isinstance(target, CliffordTableau):
        target = target.symplectic
    if isinstance(target, SymplecticMap):
        target = target.mat
    if not isinstance(target, BitMatrix):
        raise InvalidParameterError(f"unsupported target type {type(target).__name__}")
    if target.shape != (2*k, 2*k):
        raise LengthError(f"target must be {2*k}x{2*k}, got {target.shape}")
    return target


class DecodedModel(NamedTuple):
    """Circuit and gauge read off a model."""

    circuit: LayeredCircuit
    gauge: ReducedFreedom
    czCount: int


class SatInstance:
    """Variables, clauses and cost literals of one synthesis instance.

    Variables are registered in a `pysat.formula.IDPool` under structured
    keys: ``("scl", layer, qubit, field)``, ``("cz", layer, u, v)`` with
    ``u < v`` on allowed edges only, ``("f", row, col)`` for the free rows
    of ``F'`` and ``("aux", index)`` for gate outputs.
    """

    def __init__(self, n: int, k: int, length: int, connectivity: ConnectivityGraph, target: BitMatrix,
                 ePrime: BitMatrix):
        self.n, self.k, self.length = n, k, length
        self.connectivity = connectivity
        self.target = target
        self.ePrime = ePrime
        self.pool = IDPool()
        self.clauses: list[list[int]] = []
        self._definitions: list[tuple[str, int, int, int]] = []
        self._unsat = False

        for layer in range(length + 1):
            for qubit in range(n):
                for field in SCL_FIELDS:
                    self.pool.id(("scl", layer, qubit, field))
        self._edges = connectivity.edgeList()
        for layer in range(length):
            for u, v in self._edges:
                self.pool.id(("cz", layer, u, v))
        for row in range(2*k, n + k):
            for col in range(n + k):
                self.pool.id(("f", row, col))
        self._numStructural = self.pool.top

    # Variable access

    def sclVar(self, layer: int, qubit: int, field: str) -> int:
        return self.pool.obj2id[("scl", layer, qubit, field)]

    def czVar(self, layer: int, u: int, v: int) -> Optional[int]:
        """CZ variable of edge ``{u, v}``; `None` if the edge is not
        allowed."""
        u, v = min(u, v), max(u, v)
        return self.pool.obj2id.get(("cz", layer, u, v))

    def freeVar(self, row: int, col: int) -> int:
        return self.pool.obj2id[("f", row, col)]

    @property
    def numVars(self) -> int:
        return self.pool.top

    @property
    def numAuxVars(self) -> int:
        return self.pool.top - self._numStructural

    @property
    def costLiterals(self) -> list[int]:
        """One literal per potential CZ gate, layer-major."""
        return [self.pool.obj2id[("cz", layer, u, v)] for layer in range(self.length) for u, v in self._edges]

    @property
    def costWeights(self) -> list[int]:
        return [1]*len(self.costLiterals)

    @property
    def trivial(self) -> bool:
        """True when constant propagation already refuted the instance."""
        return self._unsat

    # Tseitin gates with constant propagation

    def _newAux(self, kind: str, a: int, b: int) -> int:
        out = self.pool.id(("aux", len(self._definitions)))
        self._definitions.append((kind, out, a, b))
        return out

    def andGate(self, a: Term, b: Term) -> Term:
        if a is False or b is False:
            return False
        if a is True:
            return b
        if b is True:
            return a
        if a == b:
            return a
        if a == -b:
            return False
        y = self._newAux("and", a, b)
        self.clauses.extend(([-y, a], [-y, b], [y, -a, -b]))
        return y

    def xorGate(self, a: Term, b: Term) -> Term:
        if isinstance(a, bool):
            return _neg(b) if a else b
        if isinstance(b, bool):
            return _neg(a) if b else a
        if a == b:
            return False
        if a == -b:
            return True
        y = self._newAux("xor", a, b)
        self.clauses.extend(([-y, a, b], [-y, -a, -b], [y, -a, b], [y, a, -b]))
        return y

    def xorAll(self, terms: Sequence[Term]) -> Term:
        result: Term = False
        for term in terms:
            result = self.xorGate(result, term)
        return result

    def assertValue(self, term: Term, value: bool):
        if isinstance(term, bool):
            if term != value:
                self._unsat = True
                guard = self.pool.id(("refuted",))
                self.clauses.extend(([guard], [-guard]))
            return
        self.clauses.append([term if value else -term])

    # Layer application

    def _applyScl(self, layer: int, m: list[list[Term]]) -> list[list[Term]]:
        n = self.n
        out = [row[:] for row in m]
        for i in range(n):
            xx, xz, zx, zz = (self.sclVar(layer, i, f) for f in SCL_FIELDS)
            for col in range(len(m[i])):
                x, z = m[i][col], m[n + i][col]
                out[i][col] = self.xorGate(self.andGate(xx, x), self.andGate(xz, z))
                out[n + i][col] = self.xorGate(self.andGate(zx, x), self.andGate(zz, z))
        return out

    def _applyCzl(self, layer: int, m: list[list[Term]]) -> list[list[Term]]:
        n = self.n
        out = [row[:] for row in m]
        neighbors: dict[int, list[int]] = {u: [] for u in range(n)}
        for u, v in self._edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        for u in range(n):
            for col in range(len(m[u])):
                terms = [m[n + u][col]]
                terms.extend(self.andGate(self.czVar(layer, u, v), m[v][col]) for v in neighbors[u])
                out[n + u][col] = self.xorAll(terms)
        return out

    def _symplecticClauses(self):
        for layer in range(self.length + 1):
            for qubit in range(self.n):
                lits = [self.sclVar(layer, qubit, f) for f in SCL_FIELDS]
                for xx, xz, zx, zz in itertools.product((0, 1), repeat=4):
                    if (xx*zz + xz*zx) % 2 == 0:
                        values = (xx, xz, zx, zz)
                        self.clauses.append([-lit if bit else lit for lit, bit in zip(lits, values)])

    def _build(self):
        n, k = self.n, self.k
        width = n + k
        e = self.ePrime.toArray()
        c = self.target.toArray()
        self._symplecticClauses()
        m: list[list[Term]] = [[bool(e[r, col]) for col in range(width)] for r in range(2*n)]
        m = self._applyScl(0, m)
        for layer in range(self.length):
            m = self._applyCzl(layer, m)
            m = self._applyScl(layer + 1, m)
        for r in range(2*n):
            for col in range(width):
                parity = False
                if col < 2*k:
                    parity = bool(int(e[r, :2*k] @ c[:, col]) % 2)
                terms: list[Term] = [m[r][col]]
                terms.extend(self.freeVar(t, col) for t in range(2*k, width) if e[r, t])
                self.assertValue(self.xorAll(terms), parity)

    # Models

    def decode(self, model: Sequence[int]) -> DecodedModel:
        """Read the circuit and ``F'`` off a model given as signed
        literals."""
        truth = {lit for lit in model if lit > 0}
        n, k = self.n, self.k

        def value(var):
            return int(var in truth)

        scls = [[SingleQubitClifford.canonical(tuple(value(self.sclVar(layer, q, f)) for f in SCL_FIELDS))
                 for q in range(n)] for layer in range(self.length + 1)]
        czls = []
        czCount = 0
        for layer in range(self.length):
            dense = np.zeros((n, n), dtype=np.uint8)
            for u, v in self._edges:
                if value(self.czVar(layer, u, v)):
                    dense[u, v] = dense[v, u] = 1
                    czCount += 1
            czls.append(BitMatrix.fromArray(dense, cols=n))
        fPrime = np.zeros((n + k, n + k), dtype=np.uint8)
        fPrime[:2*k, :2*k] = self.target.toArray()
        for row in range(2*k, n + k):
            for col in range(n + k):
                fPrime[row, col] = value(self.freeVar(row, col))
        gauge = ReducedFreedom(BitMatrix.fromArray(fPrime, cols=n + k), n, k)
        return DecodedModel(LayeredCircuit(scls, czls), gauge, czCount)

    def modelFor(self, circuit: LayeredCircuit, gauge: ReducedFreedom) -> list[int]:
        """Assignment of every instance variable induced by a circuit and
        gauge, auxiliary gate outputs included."""
        if circuit.n != self.n or circuit.length != self.length:
            raise LengthError(f"circuit has n={circuit.n}, l={circuit.length}; "
                              f"instance has n={self.n}, l={self.length}")
        values: dict[int, bool] = {}
        for layer, scl in enumerate(circuit.scls):
            for q, clifford in enumerate(scl):
                for f, bit in zip(SCL_FIELDS, clifford.block):
                    values[self.sclVar(layer, q, f)] = bool(bit)
        for layer, gamma in enumerate(circuit.czls):
            for u, v in self._edges:
                values[self.czVar(layer, u, v)] = bool(gamma[u, v])
        for row in range(2*self.k, self.n + self.k):
            for col in range(self.n + self.k):
                values[self.freeVar(row, col)] = bool(gauge.fPrime[row, col])

        def lit(x):
            return values[x] if x > 0 else not values[-x]

        for kind, out, a, b in self._definitions:
            values[out] = (lit(a) and lit(b)) if kind == "and" else (lit(a) != lit(b))
        return [v if values.get(v, False) else -v for v in range(1, self.numVars + 1)]

    def isSatisfiedBy(self, model: Sequence[int]) -> bool:
        truth = set(model)
        return all(any(lit in truth for lit in clause) for clause in self.clauses)

    def __repr__(self):
        return (f"SatInstance(n={self.n}, k={self.k}, l={self.length}, vars={self.numVars}, "
                f"clauses={len(self.clauses)})")


def encode(encoding: ReducedEncoding, target, length: int, connectivity: ConnectivityGraph) -> SatInstance:
    """Encode ``B_{l+1} G_l ... B_1 E' = E' F'_C`` with per-qubit
    invertible SCL blocks and ``Gamma_i <= Gamma_con``.

    Parameters
    ----------
    encoding : `ReducedEncoding`
        ``E'`` of the code.
    target : `BitMatrix`, `SymplecticMap` or `CliffordTableau`
        Logical target ``C`` on ``k`` qubits.
    length : `int`
        Number of CZ layers ``l``.
    connectivity : `ConnectivityGraph`
        Allowed CZ edges.

    Returns
    -------
    instance : `SatInstance`
        The propositional instance.

    Raises
    ------
    InvalidParameterError
        Raised if ``length`` is negative or the target is not symplectic.
    LengthError
        Raised on size mismatches.
    """
    n, k = encoding.n, encoding.k
    c = targetMatrix(target, k)
    reducedTemplate(c, n)
    if length < 0:
        raise InvalidParameterError(f"ansatz length must be non-negative, got {length}")
    if connectivity.n != n:
        raise LengthError(f"connectivity has {connectivity.n} qubits, code has {n}")
    instance = SatInstance(n, k, length, connectivity, c, encoding.ePrime)
    with time_this(log=_log, msg=f"Encoded n={n} k={k} l={length} instance", level=logging.DEBUG):
        instance._build()
    _log.verbose("Encoded %r with %d auxiliary variables", instance, instance.numAuxVars)
    return instance


def decodeModel(instance: SatInstance, model: Sequence[int]) -> DecodedModel:
    """Decode a model (for example parsed from an external solver's
    output) of ``instance``."""
    return instance.decode(model)
