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

"""Exception hierarchy for qec_clifford.

The names follow the ``lsst.pex.exceptions`` taxonomy; every class also
derives from the closest builtin exception so callers may catch either.
"""

__all__ = ["QecCliffordError", "LogicError", "LengthError", "InvalidParameterError",
           "NotFoundError", "DomainError", "CodeValidationError", "UnsatisfiableError",
           "BudgetExhaustedError", "EnumerationCapError", "GuardSearchError",
           "CircuitFormatError"]


class QecCliffordError(Exception):
    """Base class of every error raised by this package."""


class LogicError(QecCliffordError, RuntimeError):
    """An internal inconsistency: a precondition that was established
    earlier no longer holds."""


class LengthError(QecCliffordError, ValueError):
    """Operand dimensions do not agree."""


class InvalidParameterError(QecCliffordError, ValueError):
    """An argument has an invalid value."""


class NotFoundError(QecCliffordError, LookupError):
    """A named object (code, preset, gate, solver) does not exist."""


class DomainError(QecCliffordError, ValueError):
    """An argument lies outside the domain of the operation, e.g. a
    disconnected connectivity graph for swap routing."""


class CodeValidationError(InvalidParameterError):
    """A stabilizer code failed validation.

    Parameters
    ----------
    diagnostics : `list` [`str`]
        Human-readable descriptions of the violated conditions.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics) or "invalid stabilizer code")


class UnsatisfiableError(QecCliffordError):
    """No circuit of the requested ansatz length exists on the given
    connectivity graph.

    This is not a proof that no circuit exists at a larger length.
    """

    def __init__(self, message, length=None):
        self.length = length
        super().__init__(message)


class BudgetExhaustedError(QecCliffordError, TimeoutError):
    """The time budget ran out before any satisfying model was found."""


class EnumerationCapError(QecCliffordError, OverflowError):
    """Enumeration was requested for a set larger than the configured
    cap."""


class GuardSearchError(QecCliffordError):
    """No set of flag guards made the circuit fault tolerant within the
    configured search bound."""


class CircuitFormatError(QecCliffordError, ValueError):
    """A circuit, Pauli or gate description could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
