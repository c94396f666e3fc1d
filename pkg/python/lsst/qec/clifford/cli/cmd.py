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

"""The ``qec-clifford`` command-line front end.

Every sub-command prints one JSON document on stdout (an aligned table
with ``--pretty``); diagnostics go to the ``lsst`` loggers on stderr.
Exit codes: 0 success, 1 I/O or validation failure (including a failed
check), 2 no circuit at the requested length, 3 time budget exhausted
without a model.
"""

from __future__ import annotations

__all__ = ["main", "buildParser", "EXIT_OK", "EXIT_ERROR", "EXIT_UNSAT", "EXIT_BUDGET"]

import argparse
import json
import logging
import multiprocessing
import os
import sys
from typing import Optional, Sequence

import numpy as np
from lsst.utils.logging import TRACE, VERBOSE, getLogger

from ..code import buildEncoding, listBuiltins, loadCode
from ..compile import (ConnectivityGraph, SolverConfig, baselineCompile, compileCircuit, compileDeepening,
                       prepareInstance, readModel, writeCnf, writeWcnf)
from ..exceptions import (BudgetExhaustedError, CircuitFormatError, CodeValidationError,
                          InvalidParameterError, LogicError, QecCliffordError, UnsatisfiableError)
from ..ft import checkFaultTolerance, findGadget, isSound
from ..gauge import embedTarget, freedomCount, freedomCountFactored, symplecticGroup
from ..gf2 import BitMatrix, matMul
from ..pauli import GateSequence, SymplecticMap, flatten, namedLogicalGate, targetTableau, withFixedFrame
from ..verify import implementsTarget
from .circuitFile import formatCircuit, parseCircuit, readCircuit, readMatrix, writeCircuit, writeMatrix

_log = getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSAT = 2
EXIT_BUDGET = 3

_LOG_LEVELS = {"TRACE": TRACE, "DEBUG": logging.DEBUG, "VERBOSE": VERBOSE, "INFO": logging.INFO,
               "WARNING": logging.WARNING, "ERROR": logging.ERROR}


###############################################################################
# Resolution of command-line references


def _loadTarget(spec: str, k: int):
    """A matrix file when ``spec`` names an existing file, otherwise a gate
    name such as ``H@1`` or ``CX@2,1``."""
    if os.path.isfile(spec):
        return targetTableau(readMatrix(spec), k)
    return namedLogicalGate(spec, k)


def _loadConnectivity(spec: str, n: int) -> ConnectivityGraph:
    if os.path.isfile(spec):
        return ConnectivityGraph.fromEdgeFile(spec, n)
    return ConnectivityGraph.preset(spec, n)


def _solverConfig(args) -> SolverConfig:
    if args.solver == "builtin":
        return SolverConfig(seed=args.seed, conflictLimit=args.conflict_limit)
    return SolverConfig(engine="pysat", pysatName=args.solver, seed=args.seed,
                        conflictLimit=args.conflict_limit)


def _physicalMap(code, target) -> SymplecticMap:
    """``E C' E^-1``: one physical map implementing ``target`` on ``code``."""
    encoding = buildEncoding(code)
    c = targetTableau(target, code.k).symplectic.mat
    mat = matMul(matMul(encoding.e, embedTarget(c, code.n, code.k)), encoding.inverse())
    return SymplecticMap(mat)


###############################################################################
# Output


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return "-" if value is None else str(value)


def _table(rows: list[dict]) -> str:
    keys = list(dict.fromkeys(key for row in rows for key in row))
    cells = [[_cell(row.get(key)) for key in keys] for row in rows]
    widths = [max([len(key)] + [len(line[i]) for line in cells]) for i, key in enumerate(keys)]
    lines = ["  ".join(key.ljust(w) for key, w in zip(keys, widths))]
    lines.extend("  ".join(cell.ljust(w) for cell, w in zip(line, widths)) for line in cells)
    return "\n".join(line.rstrip() for line in lines)


def _emit(args, payload):
    if not args.pretty:
        print(json.dumps(payload, indent=2))
    elif isinstance(payload, list):
        print(_table(payload) if payload else "")
    elif isinstance(payload, dict):
        width = max((len(key) for key in payload), default=0)
        for key, value in payload.items():
            print(f"{key.ljust(width)}  {_cell(value)}")
    else:
        print(payload)


###############################################################################
# Sub-commands


def _verifiedFromText(text: str, path: Optional[str], expected, code, target):
    """Re-read the written circuit and certify it again."""
    circuit = readCircuit(path, code.n) if path else parseCircuit(text, code.n)
    if circuit != expected:
        raise LogicError("circuit file does not reproduce the compiled circuit")
    report = implementsTarget(circuit, code, target, strictSigns=True)
    if not report.ok:
        raise LogicError(f"circuit file failed verification: {'; '.join(report.failures)}")
    return circuit


def cmdCompile(args) -> int:
    code = loadCode(args.code)
    target = _loadTarget(args.target, code.k)
    connectivity = _loadConnectivity(args.connectivity, code.n)
    config = _solverConfig(args)
    if args.length < 0:
        raise InvalidParameterError(f"ansatz length must be non-negative, got {args.length}")
    if args.budget is not None and args.budget <= 0:
        raise InvalidParameterError(f"time budget must be positive, got {args.budget}")
    if args.deepening and (args.from_model or args.emit_cnf):
        raise InvalidParameterError("--deepening cannot be combined with --from-model or --emit-cnf")

    if args.emit_cnf:
        instance = prepareInstance(code, target, args.length, connectivity)
        wcnfPath = os.path.splitext(args.emit_cnf)[0] + ".wcnf"
        cnf = writeCnf(instance, args.emit_cnf)
        writeWcnf(instance, wcnfPath)
        _log.info("Wrote %s and %s", args.emit_cnf, wcnfPath)
        if args.emit_only:
            _emit(args, {"cnf": args.emit_cnf, "wcnf": wcnfPath, "variables": cnf.nv,
                         "clauses": len(cnf.clauses), "cost_literals": len(instance.costLiterals)})
            return EXIT_OK

    model = None
    if args.from_model:
        parsed = readModel(args.from_model)
        if parsed.status is not None and "UNSAT" in parsed.status.upper():
            raise UnsatisfiableError(f"{args.from_model} reports an unsatisfiable instance", args.length)
        if parsed.model is None:
            raise CircuitFormatError(f"{args.from_model} holds no model")
        model = parsed.model

    if args.deepening:
        result = compileDeepening(code, target, args.length, connectivity, args.budget, config)
    else:
        result = compileCircuit(code, target, args.length, connectivity, args.budget, config, model=model)

    comments = [f"code {code.name or args.code}", f"target {args.target}",
                f"connectivity {connectivity.name or args.connectivity}",
                f"cz_count {result.czCount} ({result.status.value})"]
    text = formatCircuit(result.circuit, comments)
    if args.out:
        writeCircuit(result.circuit, args.out, comments)
    _verifiedFromText(text, args.out, flatten(result.circuit), code, target)
    if args.gauge_out:
        writeMatrix(result.gauge.fPrime, args.gauge_out, [f"gauge F' for {args.target} on {code.name}"])

    summary = {"code": code.name or args.code, "target": args.target,
               "connectivity": connectivity.name or args.connectivity}
    summary.update(result.toDict())
    summary["verified"] = True
    summary["circuit"] = args.out or [line for line in text.splitlines() if not line.startswith("#")]
    summary["gauge_file"] = args.gauge_out
    _emit(args, summary)
    return EXIT_OK


def cmdVerify(args) -> int:
    code = loadCode(args.code)
    circuit = readCircuit(args.circuit, code.n)
    report = implementsTarget(circuit, code, _loadTarget(args.target, code.k), strictSigns=args.strict)
    _emit(args, report.toDict())
    return EXIT_OK if report.ok else EXIT_ERROR


def cmdGaugeCount(args) -> int:
    if args.factored:
        factors = freedomCountFactored(args.n, args.k)
        _emit(args, {"count": freedomCount(args.n, args.k), "factors": list(factors)})
    else:
        print(freedomCount(args.n, args.k))
    return EXIT_OK


def cmdFtCheck(args) -> int:
    code = loadCode(args.code)
    circuit = readCircuit(args.circuit)
    if circuit.numQubits < code.n:
        circuit = GateSequence(code.n, circuit.gates)
    # Qubits beyond the code, as written by ft-flag, are flags.
    report = checkFaultTolerance(circuit, code)
    _emit(args, report.toDict())
    return EXIT_OK if report.verdict else EXIT_ERROR


def cmdFtFlag(args) -> int:
    code = loadCode(args.code)
    circuit = readCircuit(args.circuit, code.n)
    if not circuit.isUnitary():
        raise InvalidParameterError("flag gadgets wrap unitary circuits only")
    gadget = findGadget(circuit, code, singleFlag=args.single_flag, maxGuards=args.max_guards)
    report = checkFaultTolerance(gadget, code)
    if args.out:
        writeCircuit(gadget.ops, args.out, [f"flagged circuit for {code.name or args.code}",
                                            f"data qubits 1..{gadget.dataQubits}, "
                                            f"flag qubits {gadget.dataQubits + 1}..{gadget.numQubits}"])
    guards = [{"pauli": guard.pauli.toString(), "start": guard.start, "stop": guard.stop,
               "flags": [f + 1 for f in flags]}
              for guard, flags in zip(gadget.guards, gadget.flags)]
    _emit(args, {"guards": guards, "flag_qubits": gadget.flagQubits, "two_flags": gadget.twoFlags,
                 "sound": isSound(gadget), "fault_report": report.toDict(),
                 "circuit": args.out or formatCircuit(gadget.ops).splitlines()})
    return EXIT_OK if report.verdict else EXIT_ERROR


def cmdBaseline(args) -> int:
    code = None
    if args.circuit:
        source = readCircuit(args.circuit)
        unitary = source.symplectic()
        n = source.numQubits
    elif args.code and args.target:
        code = loadCode(args.code)
        target = _loadTarget(args.target, code.k)
        unitary = _physicalMap(code, target)
        n = code.n
    else:
        raise InvalidParameterError("baseline needs --circuit or both --code and --target")
    connectivity = _loadConnectivity(args.connectivity, n)
    circuit = baselineCompile(unitary, connectivity)
    verified = circuit.symplectic() == unitary
    if code is not None:
        circuit = withFixedFrame(circuit, code, target)
        verified = implementsTarget(circuit, code, target, strictSigns=True).ok
    if not verified:
        raise LogicError("baseline circuit does not implement the requested map")
    if args.out:
        writeCircuit(circuit, args.out, [f"baseline on {connectivity.name or args.connectivity}"])
    _emit(args, {"cz_count": circuit.czCount, "length": circuit.length, "verified": verified,
                 "circuit": args.out or formatCircuit(circuit).splitlines()})
    return EXIT_OK


def cmdListCodes(args) -> int:
    rows = []
    for name in listBuiltins():
        code = loadCode(name)
        rows.append({"name": name, "n": code.n, "k": code.k})
    _emit(args, rows)
    return EXIT_OK


###############################################################################
# Sweeps


def _sweepJob(job: dict) -> dict:
    """Compile one sweep entry; runs in a worker process."""
    row = {"target": job["label"]}
    try:
        config = SolverConfig(**job["config"])
        code = loadCode(job["code"])
        target = targetTableau(BitMatrix.fromArray(job["matrix"]), code.k)
        connectivity = _loadConnectivity(job["connectivity"], code.n)
        if job["deepening"]:
            result = compileDeepening(code, target, job["length"], connectivity, job["budget"], config)
        else:
            result = compileCircuit(code, target, job["length"], connectivity, job["budget"], config)
    except UnsatisfiableError:
        row.update(status="unsat", exit=EXIT_UNSAT)
    except BudgetExhaustedError:
        row.update(status="unknown", exit=EXIT_BUDGET)
    except (QecCliffordError, OSError, ValueError) as e:
        row.update(status="error", error=str(e), exit=EXIT_ERROR)
    else:
        row.update(status=result.status.value, cz_count=result.czCount, length=result.length,
                   wall_time=round(result.wallTime, 6), exit=EXIT_OK)
    return row


def _sweepTargets(args, k: int) -> list[tuple[str, BitMatrix]]:
    if args.all:
        if args.targets:
            raise InvalidParameterError("give either target names or --all")
        if k > 2:
            raise InvalidParameterError(f"--all enumerates Sp(2k) for k <= 2 only, got k={k}")
        targets = [("".join(str(b) for row in m.toLists() for b in row), m) for m in symplecticGroup(k)]
    elif args.targets:
        targets = [(spec, _loadTarget(spec, k).symplectic.mat) for spec in args.targets]
    else:
        raise InvalidParameterError("sweep needs target names or --all")
    if args.sample is not None and args.sample < len(targets):
        rng = np.random.default_rng(args.seed)
        chosen = sorted(rng.choice(len(targets), size=args.sample, replace=False))
        targets = [targets[i] for i in chosen]
    return targets


def cmdSweep(args) -> int:
    code = loadCode(args.code)
    _loadConnectivity(args.connectivity, code.n)
    config = _solverConfig(args)
    jobs = [{"code": args.code, "label": label, "matrix": m.toLists(), "connectivity": args.connectivity,
             "length": args.length, "deepening": args.deepening, "budget": args.budget,
             "config": {"engine": config.engine, "pysatName": config.pysatName, "seed": config.seed,
                        "conflictLimit": config.conflictLimit}}
            for label, m in _sweepTargets(args, code.k)]
    _log.verbose("Sweeping %d targets with %d jobs", len(jobs), args.jobs)
    if args.jobs > 1 and len(jobs) > 1:
        with multiprocessing.Pool(min(args.jobs, len(jobs))) as pool:
            rows = pool.map(_sweepJob, jobs)
    else:
        rows = [_sweepJob(job) for job in jobs]
    costs = [row["cz_count"] for row in rows if "cz_count" in row]
    summary = {"count": len(rows), "compiled": len(costs),
               "mean_cz": round(float(np.mean(costs)), 6) if costs else None,
               "max_cz": max(costs) if costs else None}
    if args.pretty:
        _emit(args, rows)
        _emit(args, summary)
    else:
        _emit(args, {"results": rows, "summary": summary})
    return max((row["exit"] for row in rows), default=EXIT_OK)


###############################################################################
# Parser


def _addSolverOptions(parser):
    parser.add_argument("--connectivity", default="complete",
                        help="Preset such as ring, ring(4), grid(2,4), cube8, or a 1-indexed edge-list file "
                             "(default: complete)")
    parser.add_argument("-l", "--length", type=int, default=1,
                        help="Number of CZ layers; the maximum with --deepening (default: 1)")
    parser.add_argument("--deepening", action="store_true",
                        help="Try every length from 0 up to --length and keep the cheapest circuit")
    parser.add_argument("--budget", type=float, default=None,
                        help="Wall-clock seconds per SAT call (default: unlimited)")
    parser.add_argument("--solver", default="builtin",
                        help="'builtin' or a python-sat solver name such as glucose4 or cadical153")
    parser.add_argument("--seed", type=int, default=0, help="Solver seed (default: 0)")
    parser.add_argument("--conflict-limit", type=int, default=None,
                        help="Conflicts allowed per SAT call (default: unlimited)")


def buildParser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="Print tables instead of JSON")
    common.add_argument("--log-level", default="WARNING", type=str.upper, choices=list(_LOG_LEVELS),
                        help="Level of the lsst loggers (default: WARNING)")

    parser = argparse.ArgumentParser(
        prog="qec-clifford",
        description="Compile logical Clifford gates on stabilizer codes into hardware-tailored circuits.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("compile", parents=[common], help="Synthesize a circuit with the fewest CZ gates")
    p.add_argument("--code", required=True, help="Built-in code name or code file")
    p.add_argument("--target", required=True, help="Logical gate such as H@1 or CX@1,2, or a matrix file")
    _addSolverOptions(p)
    p.add_argument("--out", help="Circuit file to write")
    p.add_argument("--gauge-out", help="File for the gauge matrix F'")
    p.add_argument("--emit-cnf", metavar="PATH", help="Also write the instance as DIMACS CNF and WCNF")
    p.add_argument("--emit-only", action="store_true", help="Stop after --emit-cnf")
    p.add_argument("--from-model", metavar="PATH", help="Decode a model produced by an external solver")
    p.set_defaults(func=cmdCompile)

    p = sub.add_parser("verify", parents=[common], help="Certify a circuit against a logical target")
    p.add_argument("--code", required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--strict", action="store_true", help="Also check every sign")
    p.set_defaults(func=cmdVerify)

    p = sub.add_parser("gauge-count", parents=[common], help="Size of the freedom gauge group")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--factored", action="store_true", help="Also print the three factors")
    p.set_defaults(func=cmdGaugeCount)

    p = sub.add_parser("ft-check", parents=[common], help="Enumerate single faults of a circuit")
    p.add_argument("--code", required=True)
    p.add_argument("--circuit", required=True)
    p.set_defaults(func=cmdFtCheck)

    p = sub.add_parser("ft-flag", parents=[common], help="Wrap a circuit in flag gadgets")
    p.add_argument("--code", required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--single-flag", action="store_true", help="Never fall back to two flags per guard")
    p.add_argument("--max-guards", type=int, default=4, help="Guard limit (default: 4)")
    p.add_argument("--out", help="Flagged circuit file to write")
    p.set_defaults(func=cmdFtFlag)

    p = sub.add_parser("baseline", parents=[common], help="Decompose and swap-route without optimization")
    p.add_argument("--code")
    p.add_argument("--target")
    p.add_argument("--circuit", help="Physical unitary circuit to re-route instead of a code target")
    p.add_argument("--connectivity", default="complete")
    p.add_argument("--out")
    p.set_defaults(func=cmdBaseline)

    p = sub.add_parser("list-codes", parents=[common], help="List the built-in codes")
    p.set_defaults(func=cmdListCodes)

    p = sub.add_parser("sweep", parents=[common], help="Compile many targets on one code")
    p.add_argument("--code", required=True)
    p.add_argument("targets", nargs="*", help="Logical gate names or matrix files")
    p.add_argument("--all", action="store_true", help="Every logical Clifford modulo Paulis (k <= 2)")
    p.add_argument("--sample", type=int, help="Compile a random subset of this size")
    p.add_argument("--jobs", type=int, default=1, help="Parallel compilations (default: 1)")
    _addSolverOptions(p)
    p.set_defaults(func=cmdSweep)
    return parser


def _configureLogging(level: str):
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("lsst").setLevel(_LOG_LEVELS[level])


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code."""
    args = buildParser().parse_args(argv)
    _configureLogging(args.log_level)
    try:
        return args.func(args)
    except UnsatisfiableError as e:
        _log.error("%s", e)
        return EXIT_UNSAT
    except BudgetExhaustedError as e:
        _log.error("%s", e)
        return EXIT_BUDGET
    except CodeValidationError as e:
        for line in e.diagnostics:
            _log.error("invalid code: %s", line)
        return EXIT_ERROR
    except (QecCliffordError, OSError, ValueError) as e:
        _log.error("%s", e)
        return EXIT_ERROR
