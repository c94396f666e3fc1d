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

"""Hardware connectivity graphs."""

from __future__ import annotations

__all__ = ["ConnectivityGraph"]

import re
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from ..exceptions import CircuitFormatError, InvalidParameterError, NotFoundError
from ..gf2 import BitMatrix


class ConnectivityGraph:
    """Symmetric, zero-diagonal adjacency of the qubits that may share a
    CZ gate.

    Parameters
    ----------
    edges : `BitMatrix`
        ``n x n`` adjacency matrix.
    name : `str`, optional
        Preset label.
    """

    def __init__(self, edges: BitMatrix, name: Optional[str] = None):
        if not edges.isSymmetric():
            raise InvalidParameterError("connectivity matrix must be symmetric")
        if np.any(np.diag(edges.toArray())):
            raise InvalidParameterError("connectivity matrix must have a zero diagonal")
        self._edges = edges
        self._name = name

    @classmethod
    def fromEdges(cls, n: int, edges: Iterable[tuple[int, int]],
                  name: Optional[str] = None) -> ConnectivityGraph:
        """Build from 0-based ``(u, v)`` pairs."""
        dense = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"invalid edge ({u + 1}, {v + 1}) for {n} qubits")
            dense[u, v] = dense[v, u] = 1
        return cls(BitMatrix.fromArray(dense, cols=n), name)

    @classmethod
    def star(cls, n: int) -> ConnectivityGraph:
        return cls.fromEdges(n, [(0, v) for v in range(1, n)], f"star({n})")

    @classmethod
    def line(cls, n: int) -> ConnectivityGraph:
        return cls.fromEdges(n, [(v, v + 1) for v in range(n - 1)], f"line({n})")

    @classmethod
    def ring(cls, n: int) -> ConnectivityGraph:
        edges = [(v, (v + 1) % n) for v in range(n)] if n > 2 else [(v, v + 1) for v in range(n - 1)]
        return cls.fromEdges(n, edges, f"ring({n})")

    @classmethod
    def grid(cls, rows: int, cols: int) -> ConnectivityGraph:
        """Row-major grid; qubit ``r * cols + c`` sits at row ``r``, column
        ``c``."""
        edges = []
        for r in range(rows):
            for c in range(cols):
                q = r*cols + c
                if c + 1 < cols:
                    edges.append((q, q + 1))
                if r + 1 < rows:
                    edges.append((q, q + cols))
        return cls.fromEdges(rows*cols, edges, f"grid({rows},{cols})")

    @classmethod
    def cube8(cls) -> ConnectivityGraph:
        """Cube vertices ``a + 2b + 4c`` joined along cube edges."""
        edges = [(v, v ^ bit) for v in range(8) for bit in (1, 2, 4) if v < v ^ bit]
        return cls.fromEdges(8, edges, "cube8")

    @classmethod
    def complete(cls, n: int) -> ConnectivityGraph:
        return cls.fromEdges(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"complete({n})")

    @classmethod
    def fromEdgeFile(cls, path, n: Optional[int] = None) -> ConnectivityGraph:
        """Read ``u v`` lines with 1-based qubits; ``#`` starts a comment."""
        edges = []
        with open(path) as fd:
            for lineno, line in enumerate(fd, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                fields = line.split()
                if len(fields) != 2 or not all(f.isdigit() for f in fields):
                    raise CircuitFormatError(f"expected 'u v', got {line!r}", lineno)
                u, v = (int(f) - 1 for f in fields)
                if u < 0 or v < 0:
                    raise CircuitFormatError("qubits are 1-indexed", lineno)
                edges.append((u, v))
        size = n if n is not None else max((max(e) for e in edges), default=-1) + 1
        return cls.fromEdges(size, edges, str(path))

    @classmethod
    def preset(cls, spec: str, n: Optional[int] = None) -> ConnectivityGraph:
        """Parse ``ring(4)``, ``grid(3,4)``, ``cube8`` and friends; a bare
        preset name such as ``ring`` takes its size from ``n``.

        Raises
        ------
        NotFoundError
            Raised for unknown preset names.
        """
        match = re.fullmatch(r"\s*([a-z0-9]+)\s*(?:\(([\d,\s]*)\))?\s*", spec)
        if not match:
            raise NotFoundError(f"cannot parse connectivity preset {spec!r}")
        name, args = match.group(1), match.group(2)
        values = [int(a) for a in args.split(",") if a.strip()] if args else []
        if name == "cube8":
            return cls.cube8()
        factories = {"star": cls.star, "line": cls.line, "ring": cls.ring, "complete": cls.complete,
                     "grid": cls.grid}
        if name not in factories:
            raise NotFoundError(f"unknown connectivity preset {name!r}")
        if not values and n is not None and name != "grid":
            values = [n]
        try:
            return factories[name](*values)
        except TypeError:
            raise InvalidParameterError(f"wrong number of arguments for preset {spec!r}") from None

    @property
    def n(self) -> int:
        return self._edges.rows

    @property
    def edges(self) -> BitMatrix:
        return self._edges

    @property
    def name(self) -> Optional[str]:
        return self._name

    def edgeList(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        dense = np.triu(self._edges.toArray(), 1)
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(dense))]

    def allows(self, u: int, v: int) -> bool:
        return u != v and bool(self._edges[u, v])

    def permits(self, gamma: BitMatrix) -> bool:
        """True if ``gamma <= Gamma_con`` entrywise."""
        return not np.any(gamma.toArray() & (1 - self._edges.toArray()))

    def toNetworkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edgeList())
        return graph

    def isConnected(self) -> bool:
        return self.n <= 1 or nx.is_connected(self.toNetworkx())

    def __eq__(self, other):
        if not isinstance(other, ConnectivityGraph):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self):
        return hash(self._edges)

    def __repr__(self):
        return f"ConnectivityGraph({self._name or self.n})"
