"""Entailment checking by refutation.

``entails`` negates the conclusion, clausifies everything and saturates with
the built-in resolution prover; ``prove_external`` hands the same problem to
a TPTP prover on the host.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..core import Answer, Not, Problem, universal_closure
from .clausify import Clause, Literal, clausify, clausify_all, nnf
from .external import ExternalProverUnavailable, UnrecognizedStatus, parse_szs_status, prove_external, write_tptp
from .resolution import (
    DEFAULT_BUDGET, BudgetUsed, Entailed, NotEntailed, ProofOutcome, ProofStep,
    ProverBudget, Reason, check_proof, saturate,
)


def refutation_clauses(premises, conclusion) -> list:
    """Clauses for premises plus the negated (closed) conclusion."""
    formulas = list(premises) + [Not(universal_closure(conclusion))]
    notes = [f"premise {i}" for i in range(len(premises))] + ["negated conclusion"]
    return clausify_all(formulas, notes)


def refute(formulas, budget: ProverBudget = DEFAULT_BUDGET) -> ProofOutcome:
    """Entailed iff the conjunction of ``formulas`` is unsatisfiable."""
    formulas = list(formulas)
    return saturate(clausify_all(formulas, [f"input {i}" for i in range(len(formulas))]), budget)


def entails(premises, conclusion, budget: ProverBudget = DEFAULT_BUDGET) -> ProofOutcome:
    return saturate(refutation_clauses(list(premises), conclusion), budget)


@dataclass(frozen=True)
class Decision:
    """Answer plus the outcome behind it.

    ``negated`` records whether the premises entail the negated conclusion;
    it never changes the answer, it only helps to tell "false" from "unknown".
    """

    answer: Answer
    outcome: ProofOutcome
    negated: Optional[ProofOutcome] = None


def decide(p: Problem, budget: ProverBudget = DEFAULT_BUDGET, *, diagnose: bool = True) -> Decision:
    if p.conclusion is None:
        raise ValueError("problem has no conclusion to decide")
    premises = p.premise_formulas
    outcome = entails(premises, p.conclusion.formula, budget)
    negated = None
    if diagnose:
        negated = entails(premises, Not(universal_closure(p.conclusion.formula)), budget)
    return Decision(Answer.YES if outcome.entailed else Answer.NO, outcome, negated)


__all__ = [
    "Clause", "Literal", "clausify", "clausify_all", "nnf",
    "ProverBudget", "DEFAULT_BUDGET", "Reason", "BudgetUsed", "ProofStep", "Entailed",
    "NotEntailed", "ProofOutcome", "check_proof", "saturate",
    "refutation_clauses", "refute", "entails", "Decision", "decide",
    "prove_external", "parse_szs_status", "write_tptp",
    "ExternalProverUnavailable", "UnrecognizedStatus",
]
