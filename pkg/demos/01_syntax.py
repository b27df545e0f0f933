"""Parse one problem and render it in every supported syntax."""

from __future__ import annotations

from deductbench.syntax import LogicSyntaxError, SyntaxId, parse, print_problem

DOC = """Predicates:
drinkWater(x) ::: x drinks water
hydrated(x) ::: x is hydrated
Premises:
∀x (drinkWater(x) → hydrated(x)) ::: If an individual drinks water, they will be hydrated.
drinkWater(jack) ::: Jack drinks water.
Conclusion:
hydrated(jack) ::: Jack is hydrated.
"""

problem = parse(DOC, "fol")
for syntax in SyntaxId:
    print(f"--- {syntax.value}")
    print(print_problem(problem, syntax))

print("--- strict TPTP, ready for an external prover")
print(print_problem(problem, "tptp", strict=True))

# Formalisations often drop the parentheses of an atom.
try:
    parse("Premises:\nman ∧ mortal(Socrates)\nConclusion:\nmortal(socrates)\n", "fol")
except LogicSyntaxError as err:
    print("diagnostic:", err)
