"""Run the formalise-then-prove pipeline with a scripted backend and compare recovery strategies."""

from __future__ import annotations

from deductbench.harness import evaluate, fixture_path, load_dataset, report
from deductbench.pipeline import MockBackend, Recovery, RunConfig, run_all
from deductbench.syntax import print_problem

dataset = load_dataset(fixture_path())

# Every other first answer forgets an atom's parentheses; any retry is correct.
BROKEN = "Premises:\nman ∧ mortal(Socrates)\nConclusion:\nmortal(socrates)\n"
script = {}
for i, s in enumerate(dataset):
    gold = print_problem(s.gold_problem, "fol", headers=True)
    script[s.id] = ([BROKEN] if i % 2 == 0 else [gold]) + [gold] * 3

runs = {}
for recovery in Recovery:
    results = run_all(dataset, RunConfig(recovery=recovery), MockBackend(script), workers=4)
    runs[recovery.value] = evaluate(results, dataset)

print(report(runs, "markdown"))

first = run_all(dataset[:1], RunConfig(recovery=Recovery.ErrorMessage), MockBackend(script))[0]
print("refinement prompt tail:")
print(first.transcript[1].prompt[-300:])
