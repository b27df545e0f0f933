"""Adapter for TPTP provers such as Vampire or E.

The command spec is a shell-style string (or argument list) with optional
``{file}`` and ``{timeout}`` placeholders; when ``{file}`` is absent the
problem path is appended. The prover gets the time limit through
``{timeout}`` and is killed after twice the budget regardless.
"""

from __future__ import annotations

import math
import os
import re
import shlex
import shutil
import subprocess
import tempfile

from ..core import Problem, universal_closure
from ..syntax.printer import CONCLUSION_LABEL, print_unit
from .resolution import DEFAULT_BUDGET, BudgetUsed, Entailed, NotEntailed, ProofOutcome, ProverBudget, Reason


class ExternalProverUnavailable(RuntimeError):
    pass


class UnrecognizedStatus(ValueError):
    def __init__(self, raw: str):
        super().__init__(f"unrecognized prover status: {raw!r}")
        self.raw = raw


_SZS = re.compile(r"SZS status\s+(\w+)")

_STATUS = {
    "Theorem": Entailed,
    "Unsatisfiable": Entailed,
    "ContradictoryAxioms": Entailed,
    "CounterSatisfiable": Reason.Saturated,
    "Satisfiable": Reason.Saturated,
    "Timeout": Reason.BudgetExhausted,
    "GaveUp": Reason.BudgetExhausted,
    "ResourceOut": Reason.BudgetExhausted,
    "MemoryOut": Reason.BudgetExhausted,
    "Unknown": Reason.BudgetExhausted,
}


def parse_szs_status(output: str) -> ProofOutcome:
    """Map the first ``SZS status <word>`` line of prover output to an outcome."""
    for line in output.splitlines():
        m = _SZS.search(line)
        if not m:
            continue
        status = _STATUS.get(m.group(1))
        if status is None:
            raise UnrecognizedStatus(line.strip())
        if status is Entailed:
            return Entailed((), external=True)
        return NotEntailed(status)
    tail = output.strip().splitlines()[-1] if output.strip() else ""
    raise UnrecognizedStatus(tail)


def write_tptp(p: Problem) -> str:
    """Strict TPTP problem text: ``p0``, ``p1``, ... axioms and one conjecture."""
    if p.conclusion is None:
        raise ValueError("problem has no conclusion")
    lines = [print_unit(f"p{i}", "axiom", universal_closure(prem.formula), strict=True)
             for i, prem in enumerate(p.premises)]
    lines.append(print_unit(CONCLUSION_LABEL, "conjecture", universal_closure(p.conclusion.formula), strict=True))
    return "\n".join(lines) + "\n"


def _command(prover_cmd, path: str, seconds: int) -> list:
    parts = shlex.split(prover_cmd) if isinstance(prover_cmd, str) else list(prover_cmd)
    if not parts:
        raise ExternalProverUnavailable("empty prover command")
    has_file = any("{file}" in part for part in parts)
    argv = [part.replace("{file}", path).replace("{timeout}", str(seconds)) for part in parts]
    if not has_file:
        argv.append(path)
    if shutil.which(argv[0]) is None:
        raise ExternalProverUnavailable(f"prover executable not found: {argv[0]}")
    return argv


def prove_external(p: Problem, prover_cmd, budget: ProverBudget = DEFAULT_BUDGET) -> ProofOutcome:
    seconds = max(1, math.ceil(budget.max_seconds))
    fd, path = tempfile.mkstemp(suffix=".p", prefix="deductbench_")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(write_tptp(p))
        argv = _command(prover_cmd, path, seconds)
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=2 * budget.max_seconds)
        except subprocess.TimeoutExpired:
            return NotEntailed(Reason.BudgetExhausted, BudgetUsed(0, 0))
        except OSError as exc:
            raise ExternalProverUnavailable(str(exc)) from exc
        return parse_szs_status(proc.stdout + "\n" + proc.stderr)
    finally:
        os.unlink(path)
