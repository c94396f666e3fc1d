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

"""Interchangeable SAT engines behind one incremental interface."""

from __future__ import annotations

__all__ = ["SolverConfig", "SatEngine", "BuiltinEngine", "PySatEngine", "makeEngine", "ENGINES"]

import abc
import dataclasses
import threading
from typing import Iterable, Optional, Sequence

from lsst.utils.logging import getLogger

from ..exceptions import InvalidParameterError, NotFoundError
from .cdclSolver import CdclSolver

_log = getLogger(__name__)

ENGINES = ("builtin", "pysat")


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every compilation.

    Attributes
    ----------
    engine : `str`
        ``"builtin"`` for the bundled CDCL solver or ``"pysat"`` for an
        external solver from python-sat.
    pysatName : `str`
        Solver name handed to `pysat.solvers.Solver`.
    seed : `int`
        Random seed of the built-in solver.
    randomFreq : `float`
        Random branching frequency of the built-in solver.
    restartBase : `int`
        Luby restart unit of the built-in solver.
    phaseSaving : `bool`
        Phase saving in the built-in solver.
    conflictLimit : `int`, optional
        Conflicts allowed per SAT call on top of the time budget.
    """

    engine: str = "builtin"
    pysatName: str = "glucose4"
    seed: int = 0
    randomFreq: float = 0.0
    restartBase: int = 100
    phaseSaving: bool = False
    conflictLimit: Optional[int] = None

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise NotFoundError(f"unknown SAT engine {self.engine!r}; expected one of {ENGINES}")
        if self.conflictLimit is not None and self.conflictLimit <= 0:
            raise InvalidParameterError(f"conflict limit must be positive, got {self.conflictLimit}")


class SatEngine(abc.ABC):
    """Incremental SAT oracle."""

    @abc.abstractmethod
    def addClauses(self, clauses: Iterable[Sequence[int]]):
        raise NotImplementedError()

    @abc.abstractmethod
    def solve(self, assumptions: Sequence[int] = (), timeLimit: Optional[float] = None) -> Optional[bool]:
        """`True`/`False` for SAT/UNSAT, `None` when interrupted."""
        raise NotImplementedError()

    @abc.abstractmethod
    def getModel(self) -> Optional[list[int]]:
        raise NotImplementedError()

    def close(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class BuiltinEngine(SatEngine):
    def __init__(self, config: SolverConfig):
        self._solver = CdclSolver(seed=config.seed, randomFreq=config.randomFreq,
                                  restartBase=config.restartBase, phaseSaving=config.phaseSaving)
        self._conflictLimit = config.conflictLimit

    def addClauses(self, clauses):
        self._solver.addClauses(clauses)

    def solve(self, assumptions=(), timeLimit=None):
        return self._solver.solve(assumptions, timeLimit, self._conflictLimit)

    def getModel(self):
        return self._solver.getModel()


class PySatEngine(SatEngine):
    """Adapter over `pysat.solvers.Solver`; time limits interrupt the solver
    from a timer thread."""

    def __init__(self, config: SolverConfig):
        from pysat.solvers import Solver, SolverNames

        known = {name for names in vars(SolverNames).values() if isinstance(names, tuple) for name in names}
        if known and config.pysatName not in known:
            raise NotFoundError(f"unknown python-sat solver {config.pysatName!r}")
        self._solver = Solver(name=config.pysatName)
        self._conflictLimit = config.conflictLimit

    def addClauses(self, clauses):
        for clause in clauses:
            self._solver.add_clause(clause)

    def solve(self, assumptions=(), timeLimit=None):
        if timeLimit is None and self._conflictLimit is None:
            return self._solver.solve(assumptions=list(assumptions))
        if timeLimit is not None and timeLimit <= 0:
            return None
        if self._conflictLimit is not None:
            self._solver.conf_budget(self._conflictLimit)
        if timeLimit is None:
            return self._solver.solve_limited(assumptions=list(assumptions))
        timer = threading.Timer(timeLimit, self._solver.interrupt)
        timer.start()
        try:
            return self._solver.solve_limited(assumptions=list(assumptions), expect_interrupt=True)
        finally:
            timer.cancel()
            self._solver.clear_interrupt()

    def getModel(self):
        return self._solver.get_model()

    def close(self):
        self._solver.delete()


def makeEngine(config: Optional[SolverConfig] = None, clauses: Iterable[Sequence[int]] = ()) -> SatEngine:
    """Instantiate the engine named by ``config`` and load ``clauses``."""
    config = config or SolverConfig()
    if config.engine == "builtin":
        engine: SatEngine = BuiltinEngine(config)
    elif config.engine == "pysat":
        engine = PySatEngine(config)
    else:
        raise InvalidParameterError(f"unknown SAT engine {config.engine!r}")
    _log.debug("Using %s SAT engine", config.engine)
    engine.addClauses(clauses)
    return engine
