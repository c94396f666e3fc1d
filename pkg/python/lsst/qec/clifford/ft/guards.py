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

"""Greedy search for guard Paulis that make a circuit fault tolerant."""

from __future__ import annotations

__all__ = ["findGadget", "findGuards", "DEFAULT_MAX_GUARDS"]

import itertools
from typing import Optional, Sequence, Union

from lsst.utils.logging import getLogger

from ..exceptions import GuardSearchError
from ..gf2 import BitVector
from ..pauli import GateSequence, LayeredCircuit, PauliOp
from .faults import FaultModel, UndetectableFault, _masks, _Propagator, _start, checkFaultTolerance
from .gadget import GadgetCircuit, Guard, bareSequence, buildFlagGadget

_log = getLogger(__name__)

DEFAULT_MAX_GUARDS = 4


def _popParity(v: int) -> int:
    return v.bit_count() & 1


def _anticommutes(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return bool(_popParity((a[0] & b[1]) ^ (a[1] & b[0])))


def _pauliMasks(p: PauliOp) -> tuple[int, int]:
    x = sum(1 << q for q in p.x.support())
    z = sum(1 << q for q in p.z.support())
    return x, z


def _candidates(code, maxWeight: int) -> list[tuple[int, int]]:
    """Low-weight Paulis plus the code's logical generators, lowest weight
    first."""
    n = code.n
    found = {}
    for weight in range(1, maxWeight + 1):
        for qubits in itertools.combinations(range(n), weight):
            for labels in itertools.product("XYZ", repeat=weight):
                x = sum(1 << q for q, c in zip(qubits, labels) if c in "XY")
                z = sum(1 << q for q, c in zip(qubits, labels) if c in "ZY")
                found.setdefault((x, z), weight)
    for logical in code.logicalX + code.logicalZ:
        found.setdefault(_pauliMasks(logical), logical.weight())
    for a, b in zip(code.logicalX, code.logicalZ):
        found.setdefault(_pauliMasks((a*b).unsigned()), (a*b).weight())
    return sorted(found, key=lambda key: (found[key], key))


def _toPauli(masks: tuple[int, int], n: int) -> PauliOp:
    x, z = masks
    return PauliOp.fromBits(BitVector.fromArray([(x >> q) & 1 for q in range(n)]),
                            BitVector.fromArray([(z >> q) & 1 for q in range(n)]))


def _layerBoundaries(bare: GateSequence) -> list[int]:
    """Operation indices at which a layer starts, plus both ends."""
    boundaries = {0}
    count = 0
    for gate in bare.gates:
        if gate.name == "TICK":
            boundaries.add(count)
        else:
            count += 1
    boundaries.add(count)
    return sorted(boundaries)


def _errorsAtBoundaries(gadget: GadgetCircuit, faults: Sequence[UndetectableFault],
                       boundaries: Sequence[int]):
    """For every fault: the number of bare operations before it and its
    data error at each later boundary."""
    n = gadget.dataQubits
    dataMask = (1 << n) - 1
    isBare = [all(q < n for q in g.qubits) and g.name != "TICK" for g in gadget.ops.gates]
    barePositions = [i for i, flag in enumerate(isBare) if flag]
    position = {t: (barePositions[t] if t < len(barePositions) else
                    (barePositions[-1] + 1 if barePositions else 0)) for t in boundaries}
    propagator = _Propagator(gadget.ops)
    result = []
    for fault in faults:
        start = _start(fault.location)
        done = sum(isBare[:start])
        x, z = _masks(fault.fault, fault.location.qubits)
        cursor = start
        errors = {}
        for t in boundaries:
            if t < done or position[t] < cursor:
                continue
            x, z, _ = propagator.run(x, z, cursor, position[t])
            cursor = position[t]
            errors[t] = (x & dataMask, z & dataMask)
        result.append((done, errors))
    return result


def _bestGuard(gadget, report, bare, candidates, guards, boundaries) -> Optional[Guard]:
    numOps = len(bare.operations())
    existing = [g.segment(numOps) for g in guards]
    faults = _errorsAtBoundaries(gadget, report.undetectable, boundaries)

    def laminar(seg):
        return all(not (a[0] < seg[1] and seg[0] < a[1]) or (a[0] <= seg[0] and seg[1] <= a[1])
                   or (seg[0] <= a[0] and a[1] <= seg[1]) for a in existing)

    best, bestScore = None, None
    for s, t in itertools.combinations(boundaries, 2):
        seg = (s, t)
        if not laminar(seg):
            continue
        caught = [errors[t] for done, errors in faults if s < done <= t and t in errors]
        if not caught:
            continue
        reusable = all(not (a[0] < t and s < a[1]) for a in existing)
        for rank, masks in enumerate(candidates):
            count = sum(1 for e in caught if _anticommutes(masks, e))
            if not count:
                continue
            score = (count, reusable, t - s, -rank)
            if bestScore is None or score > bestScore:
                best, bestScore = (masks, seg), score
    if best is None:
        return None
    masks, (s, t) = best
    guard = Guard(_toPauli(masks, bare.numQubits), s, None if t == numOps else t)
    _log.debug("Selected guard %s on [%d, %d) catching %d faults", guard.pauli, s, t, bestScore[0])
    return guard


def _orders(n: int, count: int) -> list[tuple[int, ...]]:
    ascending = tuple(range(n))
    orders = [ascending, ascending[::-1]]
    orders.extend(ascending[r:] + ascending[:r] for r in range(1, n))
    unique = list(dict.fromkeys(orders))
    return unique[:max(count, 1)]


def findGadget(circuit: Union[LayeredCircuit, GateSequence], code, singleFlag: bool = False,
               maxGuards: int = DEFAULT_MAX_GUARDS, maxWeight: int = 2, numOrders: int = 3,
               model: Optional[FaultModel] = None) -> GadgetCircuit:
    """Search for a fault-tolerant flag gadget around ``circuit``.

    Guards are added greedily, each anticommuting with as many of the
    remaining undetectable errors as possible on some layer-aligned
    segment; the search is retried with other controlled-Pauli orders and
    then, unless ``singleFlag``, in two-flag mode.

    Raises
    ------
    GuardSearchError
        Raised if no passing gadget is found within ``maxGuards`` guards.
    """
    bare = bareSequence(circuit)
    if checkFaultTolerance(bare, code, model).verdict:
        return buildFlagGadget(bare, code, [])
    candidates = _candidates(code, maxWeight)
    boundaries = _layerBoundaries(bare)
    for twoFlags in ((False,) if singleFlag else (False, True)):
        for order in _orders(code.n, numOrders):
            guards: list[Guard] = []
            while True:
                gadget = buildFlagGadget(bare, code, guards, twoFlags, order)
                report = checkFaultTolerance(gadget, code, model)
                if report.verdict:
                    _log.verbose("Found %d guards (two flags: %s)", len(guards), twoFlags)
                    return gadget
                if len(guards) >= maxGuards:
                    break
                guard = _bestGuard(gadget, report, bare, candidates, guards, boundaries)
                if guard is None:
                    break
                guards.append(guard)
            _log.debug("Guard search failed for order %s with %d undetectable faults left", order,
                       len(report.undetectable))
    raise GuardSearchError(f"no fault-tolerant gadget with at most {maxGuards} guards")


def findGuards(circuit: Union[LayeredCircuit, GateSequence], code, **kwargs) -> list[Guard]:
    """Guards of the gadget found by `findGadget`; empty when the bare
    circuit is already fault tolerant."""
    return list(findGadget(circuit, code, **kwargs).guards)
