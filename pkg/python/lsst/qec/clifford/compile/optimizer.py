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

"""CZ-count minimization by linear descent over a totalizer bound."""

from __future__ import annotations

__all__ = ["MinimizeStatus", "BoundStep", "MinimizeResult", "minimize"]

import dataclasses
import enum
import logging
import time
from typing import NamedTuple, Optional

from lsst.utils.logging import getLogger
from lsst.utils.timer import time_this
from pysat.card import ITotalizer

from .engines import SolverConfig, makeEngine
from .satInstance import SatInstance

_log = getLogger(__name__)


class MinimizeStatus(enum.Enum):
    OPTIMAL = "optimal"
    """The cost of the model is proved minimal."""

    FEASIBLE = "feasible"
    """A model was found but the budget ran out before optimality."""

    UNSAT = "unsat"
    """No model exists at this ansatz length."""

    UNKNOWN = "unknown"
    """The budget ran out before any model was found."""


class BoundStep(NamedTuple):
    """One SAT call of the descent."""

    bound: Optional[int]
    outcome: str
    cost: Optional[int]
    seconds: float


@dataclasses.dataclass(frozen=True)
class MinimizeResult:
    model: Optional[list[int]]
    cost: Optional[int]
    status: MinimizeStatus
    trace: tuple[BoundStep, ...]


def _modelCost(model, literals) -> int:
    truth = set(model)
    return sum(1 for lit in literals if lit in truth)


def minimize(instance: SatInstance, budget: Optional[float] = None, config: Optional[SolverConfig] = None,
             upperBound: Optional[int] = None) -> MinimizeResult:
    """Find a model of ``instance`` with the fewest true cost literals.

    The first call is unconstrained (or bounded by ``upperBound``); each
    following call assumes "at most ``cost - 1``" through the output of one
    incremental totalizer, so learnt clauses carry over between calls.

    Parameters
    ----------
    instance : `SatInstance`
        The instance.
    budget : `float`, optional
        Wall-clock seconds allowed for each SAT call; `None` is unlimited
        and ``0`` gives up immediately.
    config : `SolverConfig`, optional
        Engine selection.
    upperBound : `int`, optional
        Initial at-most bound on the cost.

    Returns
    -------
    result : `MinimizeResult`
        Best model, its cost, the status and one `BoundStep` per call.
    """
    literals = instance.costLiterals
    if instance.trivial or (upperBound is not None and upperBound < 0):
        return MinimizeResult(None, None, MinimizeStatus.UNSAT, ())
    engine = makeEngine(config, instance.clauses)
    totalizer = None
    if literals:
        totalizer = ITotalizer(lits=literals, ubound=len(literals), top_id=instance.numVars)
        engine.addClauses(totalizer.cnf.clauses)

    def assumptions(bound):
        if totalizer is None or bound is None or bound >= len(literals):
            return []
        return [-totalizer.rhs[bound]]

    trace = []
    best, bestCost = None, None
    bound = upperBound
    try:
        while True:
            start = time.monotonic()
            with time_this(log=_log, msg=f"SAT call with cost bound {bound}", level=logging.DEBUG):
                outcome = engine.solve(assumptions(bound), budget)
            elapsed = time.monotonic() - start
            if outcome is None:
                trace.append(BoundStep(bound, "timeout", None, elapsed))
                status = MinimizeStatus.FEASIBLE if best is not None else MinimizeStatus.UNKNOWN
                break
            if outcome is False:
                trace.append(BoundStep(bound, "unsat", None, elapsed))
                status = MinimizeStatus.OPTIMAL if best is not None else MinimizeStatus.UNSAT
                break
            best = engine.getModel()
            bestCost = _modelCost(best, literals)
            trace.append(BoundStep(bound, "sat", bestCost, elapsed))
            _log.debug("Found model with %d CZ gates", bestCost)
            if bestCost == 0:
                status = MinimizeStatus.OPTIMAL
                break
            bound = bestCost - 1
    finally:
        if totalizer is not None:
            totalizer.delete()
        engine.close()
    _log.verbose("Minimization finished %s with cost %s after %d calls", status.value, bestCost, len(trace))
    return MinimizeResult(best, bestCost, status, tuple(trace))
