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

"""YAML I/O for stabilizer codes and binary matrices."""

# If yaml package is not installed there is no reason to fail everywhere
try:
    import yaml
except ImportError:
    yaml = None

from .code import StabilizerCode
from .gf2 import BitMatrix

CODE_TAG = "lsst.qec.clifford.StabilizerCode"
MATRIX_TAG = "lsst.qec.clifford.BitMatrix"

loaderList = []
dumperList = []
if yaml:
    for _name in ("Loader", "CLoader", "FullLoader", "UnsafeLoader", "SafeLoader"):
        if hasattr(yaml, _name):
            loaderList.append(getattr(yaml, _name))
    for _name in ("Dumper", "CDumper", "SafeDumper"):
        if hasattr(yaml, _name):
            dumperList.append(getattr(yaml, _name))


# YAML representers


def code_representer(dumper, data):
    """Represent a StabilizerCode as the mapping of its ``toDict``."""
    return dumper.represent_mapping(CODE_TAG, data.toDict())


def matrix_representer(dumper, data):
    """Represent a BitMatrix as one 0/1 string per row."""
    rows = ["".join(str(b) for b in row) for row in data.toLists()]
    return dumper.represent_mapping(MATRIX_TAG, {"shape": list(data.shape), "rows": rows})


if yaml:
    for dumper in dumperList:
        yaml.add_representer(StabilizerCode, code_representer, Dumper=dumper)
        yaml.add_representer(BitMatrix, matrix_representer, Dumper=dumper)

###############################################################################

# YAML constructors


def code_constructor(loader, node):
    data = loader.construct_mapping(node, deep=True)
    return StabilizerCode.fromDict(data)


def matrix_constructor(loader, node):
    data = loader.construct_mapping(node, deep=True)
    rows, cols = data["shape"]
    bits = [[int(c) for c in row] for row in data["rows"]]
    if len(bits) != rows or any(len(row) != cols for row in bits):
        raise yaml.constructor.ConstructorError(None, None, f"matrix rows do not match shape {rows}x{cols}",
                                                node.start_mark)
    return BitMatrix.fromArray(bits, cols=cols) if rows else BitMatrix.zeros(0, cols)


if yaml:
    for loader in loaderList:
        yaml.add_constructor(CODE_TAG, code_constructor, Loader=loader)
        yaml.add_constructor(MATRIX_TAG, matrix_constructor, Loader=loader)
