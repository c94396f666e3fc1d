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

"""End-to-end compilation of a logical Clifford into a layered circuit."""

from __future__ import annotations

__all__ = ["CompileStatus", "CompileResult", "LengthAttempt", "prepareInstance", "compileCircuit",
           "compileDeepening"]

import dataclasses
import enum
import time
from typing import NamedTuple, Optional, Sequence

from lsst.utils.logging import getLogger

from ..code import StabilizerCode, buildEncoding, reduceEncoding
from ..exceptions import (BudgetExhaustedError, InvalidParameterError, LogicError, QecCliffordError,
                          UnsatisfiableError)
from ..gauge import ReducedFreedom
from ..pauli import LayeredCircuit, targetTableau, withFixedFrame
from ..verify import implementsTarget
from .connectivity import ConnectivityGraph
from .engines import SolverConfig
from .optimizer import BoundStep, MinimizeStatus, minimize
from .satInstance import SatInstance, encode

_log = getLogger(__name__)


class CompileStatus(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"


class LengthAttempt(NamedTuple):
    """Outcome of one ansatz length tried by `compileDeepening`."""

    length: int
    outcome: str
    czCount: Optional[int]


@dataclasses.dataclass(frozen=True)
class CompileResult:
    """A verified circuit with its gauge and solver bookkeeping.

    ``circuit`` carries the Pauli frame that makes it sign exact and
    ``czCount`` equals the number of CZ gates over all layers.
    """

    circuit: LayeredCircuit
    gauge: ReducedFreedom
    czCount: int
    status: CompileStatus
    length: int
    wallTime: float
    trace: tuple[BoundStep, ...] = ()
    history: tuple[LengthAttempt, ...] = ()

    def toDict(self) -> dict:
        frame = self.circuit.pauliFrame
        return {
            "cz_count": self.czCount,
            "status": self.status.value,
            "length": self.length,
            "wall_time": round(self.wallTime, 6),
            "pauli_frame": None if frame is None else frame.toString(),
            "gauge": self.gauge.fPrime.toLists(),
            "trace": [step._asdict() for step in self.trace],
            "history": [attempt._asdict() for attempt in self.history],
        }


def prepareInstance(code: StabilizerCode, target, length: int,
                    connectivity: ConnectivityGraph) -> SatInstance:
    """Validate ``code`` and encode the synthesis instance for ``target``.

    Raises
    ------
    CodeValidationError
        Raised if the code does not validate.
    """
    encoding = reduceEncoding(buildEncoding(code))
    return encode(encoding, targetTableau(target, code.k), length, connectivity)


def _finish(instance: SatInstance, model: Sequence[int], code: StabilizerCode, target, connectivity):
    decoded = instance.decode(model)
    circuit = withFixedFrame(decoded.circuit, code, target)
    report = implementsTarget(circuit, code, target, strictSigns=True)
    if not report.ok:
        raise LogicError(f"decoded circuit failed verification: {'; '.join(report.failures)}")
    if report.gauge != decoded.gauge:
        raise LogicError("decoded gauge differs from the gauge of the circuit")
    if not all(connectivity.permits(gamma) for gamma in circuit.czls):
        raise LogicError("decoded CZ layer uses a disallowed edge")
    return circuit, decoded


def compileCircuit(code: StabilizerCode, target, length: int, connectivity: ConnectivityGraph,
                   budget: Optional[float] = None, config: Optional[SolverConfig] = None,
                   model: Optional[Sequence[int]] = None) -> CompileResult:
    """Synthesize a hardware-tailored circuit of ``length`` CZ layers
    implementing ``target`` on ``code`` with the fewest CZ gates found.

    Parameters
    ----------
    code : `StabilizerCode`
        Code; validated first.
    target : `CliffordTableau`, `SymplecticMap` or `BitMatrix`
        Logical target on ``code.k`` qubits.
    length : `int`
        Number of CZ layers ``l``.
    connectivity : `ConnectivityGraph`
        Allowed CZ edges.
    budget : `float`, optional
        Seconds per SAT call; `None` means unlimited.
    config : `SolverConfig`, optional
        Engine selection.
    model : sequence of `int`, optional
        Model produced elsewhere (for example by an external solver on the
        exported CNF); minimization is skipped.

    Returns
    -------
    result : `CompileResult`
        The verified circuit.

    Raises
    ------
    UnsatisfiableError
        Raised if no circuit of this length exists.
    BudgetExhaustedError
        Raised if the budget expired before the first model.
    """
    start = time.monotonic()
    want = targetTableau(target, code.k)
    instance = prepareInstance(code, want, length, connectivity)
    if model is not None:
        if not instance.isSatisfiedBy(model):
            raise InvalidParameterError("supplied model does not satisfy the instance")
        status, trace = CompileStatus.FEASIBLE, ()
    else:
        outcome = minimize(instance, budget, config)
        if outcome.status is MinimizeStatus.UNSAT:
            raise UnsatisfiableError(f"no circuit with {length} CZ layers implements the target", length)
        if outcome.status is MinimizeStatus.UNKNOWN:
            raise BudgetExhaustedError(f"no circuit found within {budget} s at length {length}")
        model = outcome.model
        status = CompileStatus(outcome.status.value)
        trace = outcome.trace
    circuit, decoded = _finish(instance, model, code, want, connectivity)
    elapsed = time.monotonic() - start
    _log.verbose("Compiled %s at l=%d: %d CZ (%s) in %.3f s", code.name or "code", length, decoded.czCount,
                 status.value, elapsed)
    return CompileResult(circuit, decoded.gauge, decoded.czCount, status, length, elapsed, trace)


def compileDeepening(code: StabilizerCode, target, maxLength: int, connectivity: ConnectivityGraph,
                     budget: Optional[float] = None, config: Optional[SolverConfig] = None) -> CompileResult:
    """Try ``l = 0 .. maxLength`` and return the cheapest verified result.

    Longer ansatzes contain the shorter ones, so the search stops early at
    a zero-cost circuit. Ties keep the shortest length.

    Raises
    ------
    UnsatisfiableError
        Raised if every length is unsatisfiable.
    BudgetExhaustedError
        Raised if no length produced a model and at least one ran out of
        budget.
    """
    if maxLength < 0:
        raise InvalidParameterError(f"maximum length must be non-negative, got {maxLength}")
    best: Optional[CompileResult] = None
    history = []
    exhausted = False
    for length in range(maxLength + 1):
        try:
            result = compileCircuit(code, target, length, connectivity, budget, config)
        except UnsatisfiableError:
            history.append(LengthAttempt(length, "unsat", None))
            continue
        except BudgetExhaustedError:
            history.append(LengthAttempt(length, "unknown", None))
            exhausted = True
            continue
        history.append(LengthAttempt(length, result.status.value, result.czCount))
        if best is None or result.czCount < best.czCount:
            best = result
        if best.czCount == 0:
            break
    if best is None:
        error: QecCliffordError
        if exhausted:
            error = BudgetExhaustedError(f"no circuit found within budget up to length {maxLength}")
        else:
            error = UnsatisfiableError(f"no circuit with at most {maxLength} CZ layers", maxLength)
        raise error
    return dataclasses.replace(best, history=tuple(history))
