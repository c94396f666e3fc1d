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

"""Plain-text circuit and matrix files.

Circuit files hold one gate per line with 1-indexed qubits, control first::

    # logical S on color-8-3-2
    H 3
    TICK
    CZ 1 2
    R0 9
    MX 9

``#`` starts a comment and ``TICK`` marks a layer boundary. Matrix files
hold one row of ``0``/``1`` characters per line (whitespace between the
bits is allowed), or the same rows in JSON or YAML.
"""

from __future__ import annotations

__all__ = ["parseCircuit", "formatCircuit", "readCircuit", "writeCircuit", "readMatrix", "writeMatrix"]

import json
import os
from typing import Iterable, Optional, Union

from lsst.utils.logging import getLogger

from ..exceptions import CircuitFormatError, InvalidParameterError, NotFoundError
from ..gf2 import BitMatrix
from ..pauli import GateSequence, LayeredCircuit, flatten, getGate

_log = getLogger(__name__)

PathLike = Union[str, os.PathLike]


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parseCircuit(text: str, numQubits: Optional[int] = None) -> GateSequence:
    """Parse the text of a circuit file.

    Parameters
    ----------
    text : `str`
        File contents.
    numQubits : `int`, optional
        Register size; by default the largest qubit index used.

    Returns
    -------
    circuit : `GateSequence`
        Gates on 0-based qubits in file order, ``TICK`` included.

    Raises
    ------
    CircuitFormatError
        Raised for unknown gates, bad qubit indices or wrong arities.
    """
    gates = []
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = _strip(line).split()
        if not fields:
            continue
        name, args = fields[0], fields[1:]
        try:
            definition = getGate(name)
        except NotFoundError as e:
            raise CircuitFormatError(str(e), lineno) from None
        try:
            qubits = tuple(int(a) - 1 for a in args)
        except ValueError:
            raise CircuitFormatError(f"qubit indices must be integers: {' '.join(args)}", lineno) from None
        if len(qubits) != definition.arity:
            raise CircuitFormatError(f"{definition.name} takes {definition.arity} qubits, got {len(qubits)}",
                                     lineno)
        if any(q < 0 for q in qubits):
            raise CircuitFormatError("qubit indices start at 1", lineno)
        if numQubits is not None and any(q >= numQubits for q in qubits):
            raise CircuitFormatError(f"qubit index beyond the {numQubits}-qubit register", lineno)
        gates.append((definition.name, qubits))
    if numQubits is None:
        numQubits = 1 + max((q for _, qubits in gates for q in qubits), default=-1)
    try:
        return GateSequence(numQubits, gates)
    except InvalidParameterError as e:
        raise CircuitFormatError(str(e)) from None


def formatCircuit(circuit: Union[GateSequence, LayeredCircuit], comments: Iterable[str] = ()) -> str:
    """Text of a circuit file; layered circuits are flattened first."""
    if isinstance(circuit, LayeredCircuit):
        circuit = flatten(circuit)
    lines = [f"# {c}" for c in comments]
    lines.extend(str(gate) for gate in circuit)
    return "\n".join(lines) + "\n"


def readCircuit(path: PathLike, numQubits: Optional[int] = None) -> GateSequence:
    with open(path) as fd:
        text = fd.read()
    circuit = parseCircuit(text, numQubits)
    _log.debug("Read %d gates on %d qubits from %s", len(circuit), circuit.numQubits, path)
    return circuit


def writeCircuit(circuit: Union[GateSequence, LayeredCircuit], path: PathLike, comments: Iterable[str] = ()):
    with open(path, "w") as fd:
        fd.write(formatCircuit(circuit, comments))


def _fromRows(rows, lineno=None) -> BitMatrix:
    bits = []
    for row in rows:
        if isinstance(row, str):
            row = row.replace(" ", "")
        try:
            values = [int(b) for b in row]
        except (TypeError, ValueError):
            raise CircuitFormatError(f"matrix row {row!r} is not binary", lineno) from None
        if any(b not in (0, 1) for b in values):
            raise CircuitFormatError(f"matrix row {row!r} is not binary", lineno)
        bits.append(values)
    if not bits:
        raise CircuitFormatError("empty matrix", lineno)
    if any(len(row) != len(bits[0]) for row in bits):
        raise CircuitFormatError("matrix rows differ in length", lineno)
    return BitMatrix.fromArray(bits, cols=len(bits[0]))


def readMatrix(path: PathLike) -> BitMatrix:
    """Read a binary matrix from a text, JSON or YAML file.

    JSON and YAML files hold either a list of rows or a mapping with a
    ``rows`` entry; rows are lists of bits or 0/1 strings.

    Raises
    ------
    CircuitFormatError
        Raised for ragged or non-binary rows.
    """
    with open(path) as fd:
        text = fd.read()
    suffix = os.path.splitext(str(path))[1].lower()
    if suffix in (".json", ".yaml", ".yml"):
        if suffix == ".json":
            data = json.loads(text)
        else:
            import yaml
            from .. import yaml as _registered  # noqa: F401

            data = yaml.load(text, Loader=yaml.SafeLoader)
        if isinstance(data, BitMatrix):
            return data
        if isinstance(data, dict):
            data = data.get("rows")
        if not isinstance(data, list):
            raise CircuitFormatError(f"{path} does not hold a list of matrix rows")
        return _fromRows(data)
    rows = [_strip(line) for line in text.splitlines()]
    return _fromRows([row for row in rows if row])


def writeMatrix(matrix: BitMatrix, path: PathLike, comments: Iterable[str] = ()):
    """Write ``matrix`` as 0/1 rows; the format follows the suffix of
    ``path`` as in `readMatrix`."""
    rows = ["".join(str(b) for b in row) for row in matrix.toLists()]
    suffix = os.path.splitext(str(path))[1].lower()
    with open(path, "w") as fd:
        if suffix == ".json":
            json.dump({"shape": list(matrix.shape), "rows": rows}, fd, indent=2)
            fd.write("\n")
        elif suffix in (".yaml", ".yml"):
            import yaml
            from .. import yaml as _registered  # noqa: F401

            yaml.dump(matrix, fd, Dumper=yaml.SafeDumper)
        else:
            for c in comments:
                fd.write(f"# {c}\n")
            for row in rows:
                fd.write(row + "\n")
