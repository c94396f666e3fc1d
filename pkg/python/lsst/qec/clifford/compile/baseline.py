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

"""Constructive baseline: any symplectic map on any connected device.

The map is reduced to the identity one qubit at a time with H, S,
SQRT_X and CX; each CX becomes H CZ H and CZ gates between distant qubits
are routed with SWAP chains along shortest paths. No optimality is
claimed; the result seeds comparisons with the SAT compiler.
"""

from __future__ import annotations

__all__ = ["decomposeSymplectic", "routeGates", "packLayers", "baselineCompile"]

from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from lsst.utils.logging import getLogger

from ..exceptions import DomainError, LengthError, LogicError
from ..gf2 import BitMatrix
from ..pauli import GateSequence, LayeredCircuit, SingleQubitClifford, SymplecticMap
from .connectivity import ConnectivityGraph

_log = getLogger(__name__)


class _Reducer:
    """Row operations on the columns of a symplectic matrix; every gate
    applied is recorded."""

    def __init__(self, mat: np.ndarray, n: int):
        self.t = mat.copy()
        self.n = n
        self.gates: list[tuple[str, tuple[int, ...]]] = []

    def h(self, q):
        n = self.n
        self.t[[q, n + q]] = self.t[[n + q, q]]
        self.gates.append(("H", (q,)))

    def s(self, q):
        self.t[self.n + q] ^= self.t[q]
        self.gates.append(("S", (q,)))

    def sqrtX(self, q):
        self.t[q] ^= self.t[self.n + q]
        self.gates.append(("SQRT_X", (q,)))

    def cx(self, c, t):
        n = self.n
        self.t[t] ^= self.t[c]
        self.t[n + c] ^= self.t[n + t]
        self.gates.append(("CX", (c, t)))

    def local(self, col, q):
        return int(self.t[q, col]), int(self.t[self.n + q, col])

    def clearQubit(self, i):
        n = self.n
        col = i
        for m in range(i, n):
            x, z = self.local(col, m)
            if (x, z) == (0, 1):
                self.h(m)
            elif (x, z) == (1, 1):
                self.s(m)
        support = [m for m in range(i, n) if self.t[m, col]]
        if not support:
            raise LogicError(f"X image of qubit {i + 1} is trivial; the input is not symplectic")
        if i not in support:
            self.cx(support[0], i)
        for m in range(i + 1, n):
            if self.t[m, col]:
                self.cx(i, m)

        col = n + i
        for m in range(i + 1, n):
            x, z = self.local(col, m)
            if (x, z) == (1, 0):
                self.h(m)
            elif (x, z) == (1, 1):
                self.sqrtX(m)
        for m in range(i + 1, n):
            if self.t[n + m, col]:
                self.cx(m, i)
        if self.local(col, i) == (1, 1):
            self.sqrtX(i)


def decomposeSymplectic(smap: SymplecticMap) -> GateSequence:
    """A gate sequence over H, S, SQRT_X and CX whose symplectic map is
    ``smap``.

    Raises
    ------
    LogicError
        Raised if the reduction does not reach the identity.
    """
    n = smap.n
    reducer = _Reducer(smap.mat.toArray().astype(np.uint8), n)
    for i in range(n):
        reducer.clearQubit(i)
    if not np.array_equal(reducer.t, np.eye(2*n, dtype=np.uint8)):
        raise LogicError("symplectic reduction did not reach the identity")
    # each gate is its own symplectic inverse
    return GateSequence(n, reversed(reducer.gates))


def _swapGates(a: int, b: int) -> list[tuple[str, tuple[int, ...]]]:
    return [("H", (b,)), ("CZ", (a, b)), ("H", (b,)),
            ("H", (a,)), ("CZ", (a, b)), ("H", (a,)),
            ("H", (b,)), ("CZ", (a, b)), ("H", (b,))]


def routeGates(gates: Iterable, connectivity: ConnectivityGraph) -> list[tuple[str, tuple[int, ...]]]:
    """Rewrite CX as H-CZ-H and route every CZ onto device edges.

    A CZ between distant qubits swaps the first qubit along a shortest
    path to a neighbor of the second, applies the CZ and swaps back.
    """
    graph = connectivity.toNetworkx()
    routed = []
    for name, qubits in gates:
        if name == "CX":
            c, t = qubits
            routed.append(("H", (t,)))
            routed.extend(_routeCz(c, t, graph, connectivity))
            routed.append(("H", (t,)))
        elif name == "CZ":
            routed.extend(_routeCz(*qubits, graph, connectivity))
        else:
            routed.append((name, tuple(qubits)))
    return routed


def _routeCz(u: int, v: int, graph: nx.Graph, connectivity: ConnectivityGraph):
    if connectivity.allows(u, v):
        return [("CZ", (u, v))]
    path = nx.shortest_path(graph, u, v)
    swaps = []
    for a, b in zip(path[:-2], path[1:-1]):
        swaps.extend(_swapGates(a, b))
    undo = []
    for a, b in reversed(list(zip(path[:-2], path[1:-1]))):
        undo.extend(_swapGates(a, b))
    return swaps + [("CZ", (path[-2], v))] + undo


def packLayers(n: int, gates: Sequence[tuple[str, tuple[int, ...]]]) -> LayeredCircuit:
    """Pack single-qubit gates and CZs into the alternating ansatz.

    A CZ joins the last CZ layer when neither qubit has been touched by a
    single-qubit gate since and the edge is not used yet; otherwise it
    opens a new layer.
    """
    identity = SingleQubitClifford.identity()
    scls = [[identity]*n]
    czls: list[np.ndarray] = []
    for name, qubits in gates:
        if name == "CZ":
            u, v = qubits
            last = scls[-1]
            if czls and last[u].isIdentity() and last[v].isIdentity() and not czls[-1][u, v]:
                czls[-1][u, v] = czls[-1][v, u] = 1
            else:
                gamma = np.zeros((n, n), dtype=np.uint8)
                gamma[u, v] = gamma[v, u] = 1
                czls.append(gamma)
                scls.append([identity]*n)
        else:
            (q,) = qubits
            scls[-1][q] = scls[-1][q].then(SingleQubitClifford.fromName(name))
    return LayeredCircuit(scls, [BitMatrix.fromArray(g, cols=n) for g in czls])


def baselineCompile(unitary: SymplecticMap, connectivity: ConnectivityGraph) -> LayeredCircuit:
    """Hardware-respecting layered circuit with symplectic map
    ``unitary``.

    Raises
    ------
    DomainError
        Raised if the connectivity graph is disconnected.
    LengthError
        Raised if the sizes differ.
    """
    if unitary.n != connectivity.n:
        raise LengthError(f"map on {unitary.n} qubits, device with {connectivity.n}")
    if not connectivity.isConnected():
        raise DomainError("baseline compilation needs a connected device graph")
    sequence = decomposeSymplectic(unitary)
    circuit = packLayers(unitary.n, routeGates(sequence.gates, connectivity))
    _log.debug("Baseline: %d gates before routing, %d CZ in %d layers", len(sequence), circuit.czCount,
               circuit.length)
    return circuit
