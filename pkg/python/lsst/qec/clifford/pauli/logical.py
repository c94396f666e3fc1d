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

from __future__ import annotations

__all__ = ["namedLogicalGate", "LOGICAL_GATE_NAMES"]

import re

from ..exceptions import InvalidParameterError, NotFoundError
from .gates import getGate
from .tableau import CliffordTableau

LOGICAL_GATE_NAMES = ("I", "X", "Y", "Z", "H", "S", "S_DAG", "SQRT_X", "SQRT_X_DAG", "CX", "CY", "CZ", "SWAP")

_TOKEN = re.compile(r"([A-Za-z_]+)@(\d+(?:,\d+)*)")
_SEPARATORS = re.compile(r"[\s,;*]*")


def _generator(name: str, qubits: list[int], k: int) -> CliffordTableau:
    if name == "SWAP":
        a, b = qubits
        return (_generator("CX", [a, b], k).then(_generator("CX", [b, a], k))
                .then(_generator("CX", [a, b], k)))
    gate = getGate(name)
    if not gate.isUnitary:
        raise NotFoundError(f"{name} is not a logical gate")
    return gate.tableau.embed(k, qubits)


def namedLogicalGate(spec: str, k: int) -> CliffordTableau:
    """Signed k-qubit tableau of a named logical gate.

    ``spec`` lists generators applied in order, each ``NAME@q`` or
    ``NAME@q1,q2`` with 1-based logical qubits (control first), e.g.
    ``"H@1"``, ``"CX@2,1"`` or ``"H@1,H@2"``.

    Raises
    ------
    NotFoundError
        Raised for unknown gate names.
    InvalidParameterError
        Raised for malformed specs, wrong arities or out-of-range qubits.
    """
    tableau = CliffordTableau.identity(k)
    position = 0
    found = False
    for match in _TOKEN.finditer(spec):
        gap = spec[position:match.start()]
        if _SEPARATORS.fullmatch(gap) is None:
            raise InvalidParameterError(f"cannot parse {gap!r} in logical gate {spec!r}")
        position = match.end()
        name = match.group(1).upper()
        if name not in LOGICAL_GATE_NAMES:
            raise NotFoundError(f"unknown logical gate {name!r}")
        qubits = [int(q) - 1 for q in match.group(2).split(",")]
        arity = 2 if name in ("CX", "CY", "CZ", "SWAP") else 1
        if len(qubits) != arity or len(set(qubits)) != arity:
            raise InvalidParameterError(f"{name} needs {arity} distinct qubits, got {match.group(2)}")
        if any(not 0 <= q < k for q in qubits):
            raise InvalidParameterError(f"logical qubit out of range 1..{k} in {match.group(0)}")
        tableau = tableau.then(_generator(name, qubits, k))
        found = True
    if not found or _SEPARATORS.fullmatch(spec[position:]) is None:
        raise InvalidParameterError(f"cannot parse logical gate {spec!r}")
    return tableau
