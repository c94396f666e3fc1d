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

"""A small conflict-driven clause-learning SAT solver.

Literals follow the DIMACS convention on the outside (``v`` or ``-v`` for
``v >= 1``) and are stored internally as ``2 * (v - 1) + sign``.
"""

from __future__ import annotations

__all__ = ["CdclSolver", "luby"]

import heapq
import random
import time
from typing import Iterable, Optional, Sequence

from lsst.utils.logging import getLogger

from ..exceptions import InvalidParameterError

_log = getLogger(__name__)

_UNDEF = -1
_RESTART = object()


def luby(y: float, x: int) -> float:
    """Return element ``x`` (0-based) of the Luby sequence scaled by
    powers of ``y``."""
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2*size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x = x % size
    return y**seq


class CdclSolver:
    """Incremental CDCL solver with two watched literals, VSIDS branching,
    first-UIP learning with clause minimization, Luby restarts, optional
    phase saving and activity-based learnt clause deletion.

    Parameters
    ----------
    clauses : iterable of sequence of `int`, optional
        Initial clauses in DIMACS literal convention.
    seed : `int`, optional
        Seed for random branching decisions.
    randomFreq : `float`, optional
        Probability of picking a random branching variable.
    restartBase : `int`, optional
        Conflicts in the first Luby restart interval.
    phaseSaving : `bool`, optional
        Reuse the last assigned polarity of a variable when branching.
    """

    def __init__(self, clauses: Iterable[Sequence[int]] = (), *, seed: int = 0, randomFreq: float = 0.0,
                 restartBase: int = 100, phaseSaving: bool = False):
        if not 0.0 <= randomFreq <= 1.0:
            raise InvalidParameterError(f"randomFreq must lie in [0, 1], got {randomFreq}")
        if restartBase < 1:
            raise InvalidParameterError(f"restartBase must be positive, got {restartBase}")
        self._rng = random.Random(seed)
        self._randomFreq = randomFreq
        self._restartBase = restartBase
        self._phaseSaving = phaseSaving

        self._numVars = 0
        self._clauses: list[Optional[list[int]]] = []
        self._learnts: list[int] = []
        self._clauseActivity: dict[int, float] = {}
        self._watches: list[list[int]] = []
        self._assigns: list[int] = []
        self._level: list[int] = []
        self._reason: list[Optional[int]] = []
        self._polarity: list[int] = []
        self._activity: list[float] = []
        self._seen: list[bool] = []
        self._heap: list[tuple[float, int]] = []
        self._trail: list[int] = []
        self._trailLim: list[int] = []
        self._qhead = 0

        self._varInc = 1.0
        self._varDecay = 0.95
        self._clauseInc = 1.0
        self._clauseDecay = 0.999
        self._maxLearnts = 1000.0

        self._ok = True
        self._model: Optional[list[int]] = None
        self.conflicts = 0
        self._conflictStop: Optional[int] = None
        self.decisions = 0
        self.propagations = 0

        for clause in clauses:
            self.addClause(clause)

    @property
    def numVars(self) -> int:
        return self._numVars

    @property
    def numClauses(self) -> int:
        return sum(1 for cid, c in enumerate(self._clauses)
                   if c is not None and cid not in self._clauseActivity)

    def _ensureVars(self, numVars: int):
        while self._numVars < numVars:
            v = self._numVars
            self._numVars += 1
            self._watches.append([])
            self._watches.append([])
            self._assigns.append(_UNDEF)
            self._level.append(0)
            self._reason.append(None)
            self._polarity.append(1)
            self._activity.append(0.0)
            self._seen.append(False)
            heapq.heappush(self._heap, (0.0, v))

    @staticmethod
    def _toInternal(lit: int) -> int:
        if lit == 0:
            raise InvalidParameterError("0 is not a literal")
        return 2*(abs(lit) - 1) + (lit < 0)

    def _value(self, lit: int) -> int:
        a = self._assigns[lit >> 1]
        return a if a == _UNDEF else a ^ (lit & 1)

    def _decisionLevel(self) -> int:
        return len(self._trailLim)

    def addClause(self, clause: Sequence[int]) -> bool:
        """Add a clause; return `False` once the formula is known to be
        unsatisfiable."""
        if not self._ok:
            return False
        self._cancelUntil(0)
        lits = [self._toInternal(x) for x in clause]
        if lits:
            self._ensureVars(max(lit >> 1 for lit in lits) + 1)
        simplified = []
        for lit in sorted(set(lits)):
            if lit ^ 1 in simplified:
                return True
            value = self._value(lit)
            if value == 1:
                return True
            if value == 0:
                continue
            simplified.append(lit)
        if not simplified:
            self._ok = False
        elif len(simplified) == 1:
            self._enqueue(simplified[0], None)
            self._ok = self._propagate() is None
        else:
            self._attach(simplified, learnt=False)
        return self._ok

    def addClauses(self, clauses: Iterable[Sequence[int]]) -> bool:
        for clause in clauses:
            if not self.addClause(clause):
                return False
        return True

    def _attach(self, lits: list[int], learnt: bool) -> int:
        cid = len(self._clauses)
        self._clauses.append(lits)
        self._watches[lits[0]].append(cid)
        self._watches[lits[1]].append(cid)
        if learnt:
            self._learnts.append(cid)
            self._clauseActivity[cid] = 0.0
        return cid

    def _enqueue(self, lit: int, reason: Optional[int]):
        v = lit >> 1
        self._assigns[v] = 1 ^ (lit & 1)
        self._level[v] = self._decisionLevel()
        self._reason[v] = reason
        self._trail.append(lit)

    def _propagate(self) -> Optional[int]:
        """Unit propagation; return the id of a conflicting clause."""
        clauses, watches, assigns = self._clauses, self._watches, self._assigns
        trail = self._trail
        while self._qhead < len(trail):
            falseLit = trail[self._qhead] ^ 1
            self._qhead += 1
            self.propagations += 1
            ws = watches[falseLit]
            i = j = 0
            end = len(ws)
            while i < end:
                cid = ws[i]
                i += 1
                c = clauses[cid]
                if c is None:
                    continue
                if c[0] == falseLit:
                    c[0], c[1] = c[1], falseLit
                first = c[0]
                a = assigns[first >> 1]
                if a != _UNDEF and a ^ (first & 1) == 1:
                    ws[j] = cid
                    j += 1
                    continue
                for kk in range(2, len(c)):
                    lit = c[kk]
                    b = assigns[lit >> 1]
                    if b == _UNDEF or b ^ (lit & 1) == 1:
                        c[1], c[kk] = lit, falseLit
                        watches[lit].append(cid)
                        break
                else:
                    ws[j] = cid
                    j += 1
                    if a != _UNDEF:
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self._qhead = len(trail)
                        return cid
                    self._enqueue(first, cid)
            del ws[j:]
        return None

    def _bumpVar(self, v: int):
        self._activity[v] += self._varInc
        if self._activity[v] > 1e100:
            self._activity = [a*1e-100 for a in self._activity]
            self._varInc *= 1e-100
            self._rebuildHeap()
        elif self._assigns[v] == _UNDEF:
            heapq.heappush(self._heap, (-self._activity[v], v))

    def _bumpClause(self, cid: int):
        activity = self._clauseActivity[cid] + self._clauseInc
        self._clauseActivity[cid] = activity
        if activity > 1e20:
            for key in self._clauseActivity:
                self._clauseActivity[key] *= 1e-20
            self._clauseInc *= 1e-20

    def _rebuildHeap(self):
        self._heap = [(-self._activity[v], v) for v in range(self._numVars) if self._assigns[v] == _UNDEF]
        heapq.heapify(self._heap)

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        seen, level, reason, trail = self._seen, self._level, self._reason, self._trail
        current = self._decisionLevel()
        learnt = [0]
        pathCount = 0
        p: Optional[int] = None
        index = len(trail) - 1
        cid: Optional[int] = confl
        while True:
            c = self._clauses[cid]
            if cid in self._clauseActivity:
                self._bumpClause(cid)
            for q in (c if p is None else c[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bumpVar(v)
                    if level[v] >= current:
                        pathCount += 1
                    else:
                        learnt.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            index -= 1
            cid = reason[p >> 1]
            seen[p >> 1] = False
            pathCount -= 1
            if pathCount == 0:
                break
        learnt[0] = p ^ 1

        # Drop literals implied by the rest of the clause.
        kept = [learnt[0]]
        for q in learnt[1:]:
            r = reason[q >> 1]
            if r is None or any(not seen[x >> 1] and level[x >> 1] > 0 for x in self._clauses[r][1:]):
                kept.append(q)
        for q in learnt[1:]:
            seen[q >> 1] = False

        if len(kept) == 1:
            return kept, 0
        best = max(range(1, len(kept)), key=lambda i: level[kept[i] >> 1])
        kept[1], kept[best] = kept[best], kept[1]
        return kept, level[kept[1] >> 1]

    def _cancelUntil(self, target: int):
        if self._decisionLevel() <= target:
            return
        start = self._trailLim[target]
        for lit in reversed(self._trail[start:]):
            v = lit >> 1
            self._assigns[v] = _UNDEF
            self._reason[v] = None
            if self._phaseSaving:
                self._polarity[v] = lit & 1
            heapq.heappush(self._heap, (-self._activity[v], v))
        self._qhead = start
        del self._trail[start:]
        del self._trailLim[target:]

    def _pickBranchVar(self) -> Optional[int]:
        if self._randomFreq and self._rng.random() < self._randomFreq:
            free = [v for v in range(self._numVars) if self._assigns[v] == _UNDEF]
            if free:
                return self._rng.choice(free)
        if len(self._heap) > 8*self._numVars + 1024:
            self._rebuildHeap()
        heap = self._heap
        while heap:
            negActivity, v = heapq.heappop(heap)
            if self._assigns[v] == _UNDEF and -negActivity == self._activity[v]:
                return v
        for v in range(self._numVars):
            if self._assigns[v] == _UNDEF:
                return v
        return None

    def _reduceDb(self):
        def locked(cid):
            c = self._clauses[cid]
            v = c[0] >> 1
            return self._reason[v] == cid and self._value(c[0]) == 1

        ordered = sorted(self._learnts, key=lambda cid: self._clauseActivity[cid])
        limit = self._clauseInc / max(len(ordered), 1)
        keep = []
        for i, cid in enumerate(ordered):
            c = self._clauses[cid]
            if len(c) > 2 and not locked(cid) and (i < len(ordered) // 2
                                                   or self._clauseActivity[cid] < limit):
                self._clauses[cid] = None
                del self._clauseActivity[cid]
            else:
                keep.append(cid)
        _log.trace("Learnt clause reduction kept %d of %d", len(keep), len(ordered))
        self._learnts = keep

    def _search(self, conflictBudget: float, assumptions: list[int], deadline: Optional[float]):
        conflictCount = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                conflictCount += 1
                if self._decisionLevel() == 0:
                    self._ok = False
                    return False
                learnt, backtrack = self._analyze(confl)
                self._cancelUntil(backtrack)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    cid = self._attach(learnt, learnt=True)
                    self._bumpClause(cid)
                    self._enqueue(learnt[0], cid)
                self._varInc /= self._varDecay
                self._clauseInc /= self._clauseDecay
                if deadline is not None and self.conflicts % 32 == 0 and time.monotonic() > deadline:
                    return None
                if self._conflictStop is not None and self.conflicts >= self._conflictStop:
                    return None
                continue

            if conflictCount >= conflictBudget:
                self._cancelUntil(0)
                return _RESTART
            if len(self._learnts) - len(self._trail) >= self._maxLearnts:
                self._reduceDb()

            decision = None
            while self._decisionLevel() < len(assumptions):
                p = assumptions[self._decisionLevel()]
                value = self._value(p)
                if value == 1:
                    self._trailLim.append(len(self._trail))
                elif value == 0:
                    return False
                else:
                    decision = p
                    break
            if decision is None:
                v = self._pickBranchVar()
                if v is None:
                    self._model = [(v + 1) if self._assigns[v] == 1 else -(v + 1)
                                   for v in range(self._numVars)]
                    return True
                decision = 2*v + self._polarity[v]
                self.decisions += 1
                if deadline is not None and self.decisions % 256 == 0 and time.monotonic() > deadline:
                    return None
            self._trailLim.append(len(self._trail))
            self._enqueue(decision, None)

    def solve(self, assumptions: Sequence[int] = (), timeLimit: Optional[float] = None,
              conflictLimit: Optional[int] = None) -> Optional[bool]:
        """Decide satisfiability under ``assumptions``.

        Parameters
        ----------
        assumptions : sequence of `int`, optional
            Literals assumed true for this call only.
        timeLimit : `float`, optional
            Wall-clock seconds after which the search gives up.
        conflictLimit : `int`, optional
            Number of conflicts after which the search gives up.

        Returns
        -------
        result : `bool` or `None`
            `True` if satisfiable, `False` if not, `None` if a limit expired
            first.
        """
        self._model = None
        if not self._ok:
            return False
        deadline = None if timeLimit is None else time.monotonic() + timeLimit
        if timeLimit is not None and timeLimit <= 0:
            return None
        self._conflictStop = None if conflictLimit is None else self.conflicts + conflictLimit
        self._cancelUntil(0)
        internal = [self._toInternal(x) for x in assumptions]
        if internal:
            self._ensureVars(max(lit >> 1 for lit in internal) + 1)
        if self._propagate() is not None:
            self._ok = False
            return False
        self._maxLearnts = max(self._maxLearnts, self.numClauses / 3)
        restart = 0
        while True:
            status = self._search(luby(2, restart)*self._restartBase, internal, deadline)
            if status is not _RESTART:
                break
            restart += 1
            self._maxLearnts *= 1.1
            if deadline is not None and time.monotonic() > deadline:
                status = None
                break
        self._cancelUntil(0)
        _log.trace("CDCL finished with %s after %d conflicts, %d decisions", status, self.conflicts,
                   self.decisions)
        return status

    def getModel(self) -> Optional[list[int]]:
        """Model of the last satisfiable call, one signed literal per
        variable."""
        return None if self._model is None else list(self._model)

    def close(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
