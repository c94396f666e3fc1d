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

"""Built-in codes and code files."""

from __future__ import annotations

__all__ = ["BUILTIN_CODES", "builtin", "listBuiltins", "iceberg", "readCode", "writeCode", "loadCode"]

import json
import os

import yaml

from ..exceptions import CodeValidationError, InvalidParameterError, NotFoundError
from .stabilizerCode import StabilizerCode


def _support(n, qubits, label):
    chars = ["I"]*n
    for q in qubits:
        chars[q - 1] = label
    return "".join(chars)


def iceberg(n: int) -> StabilizerCode:
    """The ``[[n, n-2, 2]]`` iceberg code for even ``n >= 4``.

    Logical operators are ``Xbar_i = X_1 X_{i+1}`` and
    ``Zbar_i = Z_{i+1} Z_n``.
    """
    if n < 4 or n % 2:
        raise InvalidParameterError(f"iceberg codes need an even n >= 4, got {n}")
    logicalX = [_support(n, (1, i + 1), "X") for i in range(1, n - 1)]
    logicalZ = [_support(n, (i + 1, n), "Z") for i in range(1, n - 1)]
    return StabilizerCode(["X"*n, "Z"*n], logicalX, logicalZ, name=f"iceberg-{n}-{n - 2}-2")


def _twistedToric():
    n = 12
    xChecks = [(1, 2, 6, 7), (1, 4, 11, 12), (2, 3, 9, 10), (3, 4, 5, 8), (5, 6, 10, 11)]
    zChecks = [(1, 2, 9, 12), (1, 4, 5, 6), (2, 3, 7, 8), (3, 4, 10, 11), (5, 8, 9, 10)]
    stabilizers = [_support(n, q, "X") for q in xChecks] + [_support(n, q, "Z") for q in zChecks]
    logicalX = [_support(n, (1, 5, 9), "X"), _support(n, (1, 2, 3, 4), "X")]
    logicalZ = [_support(n, (1, 2, 3, 4), "Z"), _support(n, (2, 6, 10), "Z")]
    return StabilizerCode(stabilizers, logicalX, logicalZ, name="twisted-toric-12-2-3")


def _color832():
    # Qubits on cube vertices; vertex (a, b, c) is qubit 1 + a + 2b + 4c.
    n = 8
    faceA0, faceA1 = (1, 3, 5, 7), (2, 4, 6, 8)
    faceB0, faceB1 = (1, 2, 5, 6), (3, 4, 7, 8)
    faceC0, faceC1 = (1, 2, 3, 4), (5, 6, 7, 8)
    stabilizers = ["X"*n, "Z"*n] + [_support(n, f, "Z") for f in (faceC0, faceB0, faceA0)]
    logicalX = [_support(n, f, "X") for f in (faceA1, faceB1, faceC1)]
    logicalZ = [_support(n, e, "Z") for e in ((1, 2), (1, 3), (1, 5))]
    return StabilizerCode(stabilizers, logicalX, logicalZ, name="color-8-3-2")


BUILTIN_CODES = {
    "iceberg-4-2-2": lambda: iceberg(4),
    "twisted-toric-12-2-3": _twistedToric,
    "color-8-3-2": _color832,
}


def listBuiltins() -> list[str]:
    return list(BUILTIN_CODES)


def builtin(name: str) -> StabilizerCode:
    """Return a built-in code by name.

    Raises
    ------
    NotFoundError
        Raised for unknown names.
    """
    try:
        factory = BUILTIN_CODES[name]
    except KeyError:
        raise NotFoundError(f"unknown code {name!r}; built-in codes are {', '.join(BUILTIN_CODES)}") \
            from None
    return factory()


def _isYaml(path):
    return os.fspath(path).endswith((".yaml", ".yml"))


def readCode(path) -> StabilizerCode:
    """Read a ``*.code.json`` or ``*.code.yaml`` file.

    Raises
    ------
    CodeValidationError
        Raised if the file cannot be parsed into a code.
    """
    try:
        with open(path) as fd:
            data = yaml.safe_load(fd) if _isYaml(path) else json.load(fd)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise CodeValidationError([f"cannot parse {path}: {e}"]) from e
    if isinstance(data, StabilizerCode):
        return data
    if not isinstance(data, dict):
        raise CodeValidationError([f"{path} does not contain a mapping"])
    return StabilizerCode.fromDict(data)


def writeCode(code: StabilizerCode, path):
    with open(path, "w") as fd:
        if _isYaml(path):
            yaml.safe_dump(code.toDict(), fd, sort_keys=False)
        else:
            json.dump(code.toDict(), fd, indent=2)
            fd.write("\n")


def loadCode(reference: str) -> StabilizerCode:
    """Resolve a built-in name or a file path."""
    if reference in BUILTIN_CODES:
        return builtin(reference)
    if os.path.exists(reference):
        return readCode(reference)
    raise NotFoundError(f"{reference!r} is neither a built-in code nor an existing file")
