"""Decide entailment with the built-in resolution prover and show the proof."""

from __future__ import annotations

from deductbench.prover import ProverBudget, decide
from deductbench.syntax import parse

SOCRATES = "Premises:\n∀x (man(x) → mortal(x))\nman(socrates)\nConclusion:\nmortal(socrates)\n"

decision = decide(parse(SOCRATES, "fol"))
print("answer:", decision.answer.value)
for step in decision.outcome.proof:
    print("  ", step)

# A conclusion that does not follow: the answer is no.
open_world = parse("Premises:\nman(socrates)\nConclusion:\nmortal(socrates)\n", "fol")
print("unsupported conclusion:", decide(open_world).answer.value)

# Budgets keep pathological problems bounded.
chain = "Premises:\n∀x (s(x) → s(f(x)))\ns(a)\nConclusion:\n¬s(a)\n"
print("bounded search:", decide(parse(chain, "fol"), ProverBudget(max_clauses=50, max_seconds=1)).outcome)
