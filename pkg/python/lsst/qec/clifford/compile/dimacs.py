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

"""DIMACS CNF/WCNF export and solver output parsing."""

from __future__ import annotations

__all__ = ["writeCnf", "writeWcnf", "readCnf", "readModel", "ModelFile"]

import os
from typing import NamedTuple, Optional, Union

from pysat.formula import CNF, WCNF

from ..exceptions import CircuitFormatError
from .satInstance import SatInstance

PathLike = Union[str, "os.PathLike[str]"]


def _comments(instance: SatInstance) -> list[str]:
    return [f"c qec-clifford n={instance.n} k={instance.k} l={instance.length}",
            f"c cost literals: {' '.join(str(lit) for lit in instance.costLiterals)}"]


def writeCnf(instance: SatInstance, path: PathLike, extraClauses=()) -> CNF:
    """Write the hard clauses of ``instance`` (plus ``extraClauses``, for
    example a cardinality bound) in DIMACS CNF."""
    cnf = CNF(from_clauses=list(instance.clauses) + [list(c) for c in extraClauses])
    cnf.nv = max(cnf.nv, instance.numVars)
    cnf.to_file(os.fspath(path), comments=_comments(instance))
    return cnf


def writeWcnf(instance: SatInstance, path: PathLike) -> WCNF:
    """Write ``instance`` as weighted MaxSAT: every clause hard, one unit
    soft clause ``-cz`` per potential CZ gate."""
    wcnf = WCNF()
    for clause in instance.clauses:
        wcnf.append(clause)
    for lit, weight in zip(instance.costLiterals, instance.costWeights):
        wcnf.append([-lit], weight=weight)
    wcnf.nv = max(wcnf.nv, instance.numVars)
    wcnf.to_file(os.fspath(path), comments=_comments(instance))
    return wcnf


def readCnf(path: PathLike) -> CNF:
    return CNF(from_file=os.fspath(path))


class ModelFile(NamedTuple):
    """Parsed solver output: the ``s`` status line, the model literals of
    the ``v`` lines and the last ``o`` cost line."""

    status: Optional[str]
    model: Optional[list[int]]
    cost: Optional[int]


def readModel(source: Union[PathLike, str], fromText: bool = False) -> ModelFile:
    """Parse SAT or MaxSAT solver output.

    ``v`` lines may list signed literals (terminated by ``0``) or, as in
    recent MaxSAT evaluations, a single 0/1 string with one character per
    variable.

    Raises
    ------
    CircuitFormatError
        Raised on malformed ``v`` or ``o`` lines.
    """
    if fromText:
        text = str(source)
    else:
        with open(source) as fd:
            text = fd.read()
    status = None
    cost = None
    literals: list[int] = []
    sawValues = False
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        tag = fields[0]
        if tag == "s":
            status = " ".join(fields[1:])
        elif tag == "o":
            try:
                cost = int(fields[1])
            except (IndexError, ValueError):
                raise CircuitFormatError(f"malformed cost line {line!r}", lineno) from None
        elif tag == "v":
            sawValues = True
            values = fields[1:]
            if len(values) == 1 and len(values[0]) > 1 and set(values[0]) <= {"0", "1"}:
                literals.extend((i + 1) if bit == "1" else -(i + 1) for i, bit in enumerate(values[0]))
                continue
            for token in values:
                try:
                    lit = int(token)
                except ValueError:
                    raise CircuitFormatError(f"malformed value token {token!r}", lineno) from None
                if lit != 0:
                    literals.append(lit)
    return ModelFile(status, literals if sawValues else None, cost)
