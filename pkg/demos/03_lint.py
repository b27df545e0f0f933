"""Advisory lint warnings for a formalisation with typical slips."""

from __future__ import annotations

from deductbench.lint import LintConfig, lint, render_warnings
from deductbench.syntax import parse

DOC = """Premises:
∀x (drinkWater(x) → hydrated(x))
drinksWater(jack)
owns(jack)
owns(jack, bike)
Conclusion:
happy(jill)
"""

problem = parse(DOC, "fol")
print(render_warnings(lint(problem)))

print("--- stricter similarity threshold")
print(render_warnings(lint(problem, LintConfig(similarity_threshold=0))) or "(none)")
