from __future__ import annotations

import random
import sys
import textwrap

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GROUND_ATOMS, ground_formulas, oracle_entails, random_ground, truth_table
from deductbench.core import (
    Atom, Conclusion, Constant, Exists, Forall, Function, Implies, Not, Premise, Problem, Variable,
)
from deductbench.perturb import COUNTERFACTUAL_RULES, instantiate, negate_schema
from deductbench.prover import (
    Clause, Entailed, ExternalProverUnavailable, Literal, NotEntailed, ProverBudget, Reason,
    UnrecognizedStatus, check_proof, clausify, clausify_all, decide, entails, parse_szs_status,
    prove_external, refutation_clauses, saturate, write_tptp,
)
from deductbench.prover.resolution import factor, resolve, subsumes, unify_atoms
from deductbench.syntax import parse, parse_formula

x = Variable("x")
SOCRATES = "Premises:\n∀x (man(x) → mortal(x))\nman(socrates)\nConclusion:\nmortal(socrates)\n"


def clause_strings(clauses) -> list:
    return sorted("{" + ", ".join(str(lit) for lit in c.literals) + "}" for c in clauses)


def test_clausify_examples():
    assert clause_strings(clausify(Forall("x", Implies(Atom("p", (x,)), Atom("q", (x,)))))) == ["{¬p(X0), q(X0)}"]
    assert clause_strings(clausify(Exists("x", Atom("p", (x,))))) == ["{p(sk_0)}"]


def test_socrates_clauses():
    p = parse(SOCRATES, "fol")
    clauses = refutation_clauses(p.premise_formulas, p.conclusion.formula)
    assert clause_strings(clauses) == ["{man(socrates)}", "{¬man(X0), mortal(X0)}", "{¬mortal(socrates)}"]


def test_skolem_functions_depend_on_enclosing_universals():
    f = parse_formula("∀x ∃y loves(x, y)", "fol")
    assert clause_strings(clausify(f)) == ["{loves(X0, sk_0(X0))}"]


def test_skolem_names_avoid_existing_symbols():
    f = parse_formula("∃x p(x) ∧ q(sk_0)", "fol")
    names = {str(lit) for c in clausify(f) for lit in c.literals}
    assert "q(sk_0)" in names and "p(sk_1)" in names


def test_definitional_cnf_keeps_clause_count_small():
    disjuncts = " ∨ ".join(f"(a{i}() ∧ b{i}())" for i in range(8))
    clauses = clausify(parse_formula(disjuncts, "fol"))
    assert len(clauses) < 2 ** 8
    assert any(lit.atom.pred.startswith("sk_def_") for c in clauses for lit in c.literals)


def test_clause_normalisation():
    c = Clause((Literal(True, Atom("q", (Variable("B"),))), Literal(False, Atom("p", (Variable("B"),))),
                Literal(True, Atom("q", (Variable("B"),)))))
    assert len(c.literals) == 2
    assert str(c.literals[0]) == "¬p(X0)"
    assert c == Clause(tuple(reversed(c.literals)))


def test_inference_rules():
    p_a, q_x = Atom("p", (Constant("a"),)), Atom("q", (Variable("X0"),))
    c1 = Clause((Literal(False, Atom("p", (Variable("X0"),))), Literal(True, q_x)))
    c2 = Clause((Literal(True, p_a),))
    r = resolve(c1, c2, 0, 0)
    assert [str(lit) for lit in r.literals] == ["q(a)"]
    assert subsumes(c1, Clause(c1.literals + (Literal(True, Atom("r")),)))
    assert not subsumes(c2, c1)
    f = factor(Clause((Literal(True, Atom("p", (Variable("X0"),))), Literal(True, p_a))), 0, 1)
    assert [str(lit) for lit in f.literals] == ["p(a)"]
    # Occurs check: X cannot unify with f(X).
    assert unify_atoms(Atom("p", (Variable("X"),)), Atom("p", (Function("f", (Variable("X"),)),))) is None


def test_entails_examples():
    p = parse(SOCRATES, "fol")
    out = entails(p.premise_formulas, p.conclusion.formula)
    assert isinstance(out, Entailed) and check_proof(out.proof)
    out = entails([parse_formula("p(a)", "fol")], parse_formula("q(a)", "fol"))
    assert isinstance(out, NotEntailed) and out.reason is Reason.Saturated


def test_decide_examples():
    assert decide(parse(SOCRATES, "fol")).answer.value == "yes"
    james = ("Premises:\n∀x (LeaveLate(x) → MissTrain(x))\nLeaveLate(james)\n"
             "Conclusion:\n¬MissTrain(james)\n")
    d = decide(parse(james, "fol"))
    assert d.answer.value == "no"
    assert d.negated is not None and d.negated.entailed
    taut = Problem((), Conclusion(parse_formula("p(a) ∨ ¬p(a)", "fol")))
    assert decide(taut).answer.value == "yes"


def test_decide_requires_a_conclusion():
    with pytest.raises(ValueError):
        decide(Problem((Premise("a0", Atom("p")),)))


def test_budget_exhaustion_is_reported():
    # A chain that needs many steps: p(a), p(x) -> p(s(x)); goal p(s^40(a)).
    goal = "a"
    for _ in range(40):
        goal = f"s({goal})"
    p = parse(f"Premises:\np(a)\n∀x (p(x) → p(s(x)))\nConclusion:\np({goal})\n", "fol")
    out = decide(p, ProverBudget(max_clauses=10, max_seconds=5), diagnose=False).outcome
    assert isinstance(out, NotEntailed) and out.reason is Reason.BudgetExhausted
    assert decide(p, diagnose=False).answer.value == "yes"


def test_budget_validation():
    with pytest.raises(ValueError):
        ProverBudget(0, 1.0)
    with pytest.raises(ValueError):
        ProverBudget(10, 0)


def test_schema_suite_proves_with_checked_proofs():
    for rule in COUNTERFACTUAL_RULES:
        pair = negate_schema(rule)
        for template in (pair.original, pair.negated):
            out = decide(instantiate(template)).outcome
            assert isinstance(out, Entailed), rule
            assert check_proof(out.proof)


def test_proofs_are_deterministic():
    p = parse(SOCRATES, "fol")
    assert decide(p).outcome.proof == decide(p).outcome.proof


def test_tampered_proof_is_rejected():
    proof = decide(parse(SOCRATES, "fol")).outcome.proof
    assert not check_proof(proof[1:])


def test_refutation_symmetry():
    p = parse(SOCRATES, "fol")
    clauses = refutation_clauses(p.premise_formulas, p.conclusion.formula)
    assert clause_strings(clauses) == clause_strings(
        clausify_all(p.premise_formulas + [Not(p.conclusion.formula)]))
    assert isinstance(saturate(clauses), Entailed)


def test_prover_agrees_with_truth_tables_on_a_seeded_population():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 6)
        premises = [random_ground(rng, n, 3) for _ in range(rng.randint(0, 4))]
        goal = random_ground(rng, n, 3)
        problem = Problem(tuple(Premise(f"p{i}", f) for i, f in enumerate(premises)), Conclusion(goal))
        expected = "yes" if oracle_entails(premises, goal, n) else "no"
        assert decide(problem, diagnose=False).answer.value == expected


@st.composite
def ground_sets(draw):
    n = draw(st.integers(1, 5))
    return n, draw(st.lists(ground_formulas(n, 4), min_size=1, max_size=4))


def _clauses_satisfiable(clauses, n: int) -> bool:
    rows = np.array(np.meshgrid(*[[False, True]] * n, indexing="ij")).reshape(n, -1).T
    index = {a.pred: i for i, a in enumerate(GROUND_ATOMS[:n])}
    definitional = sorted({lit.atom.pred for c in clauses for lit in c.literals} - set(index))
    # Brute force over definition atoms too, to check satisfiability exactly.
    extra = len(definitional)
    if extra:
        ext = np.array(np.meshgrid(*[[False, True]] * (n + extra), indexing="ij")).reshape(n + extra, -1).T
        rows = ext
        index.update({name: n + i for i, name in enumerate(definitional)})
    ok = np.ones(len(rows), dtype=bool)
    for c in clauses:
        sat = np.zeros(len(rows), dtype=bool)
        for lit in c.literals:
            col = rows[:, index[lit.atom.pred]]
            sat |= col if lit.sign else ~col
        ok &= sat
    return bool(ok.any())


@settings(max_examples=150, deadline=None)
@given(ground_sets())
def test_clausification_preserves_satisfiability(data):
    n, fs = data
    conj = np.ones(2 ** n, dtype=bool)
    for f in fs:
        conj &= truth_table(f, n)
    clauses = clausify_all(fs)
    assert _clauses_satisfiable(clauses, n) == bool(conj.any())


# --- External adapter ---------------------------------------------------------

FAKE_PROVER = textwrap.dedent("""
    import sys, time
    from deductbench.syntax import parse
    from deductbench.prover import decide
    mode = sys.argv[2] if len(sys.argv) > 2 else "prove"
    if mode == "sleep":
        time.sleep(30)
    if mode == "weird":
        print("% SZS status Bewildered for x")
        sys.exit(0)
    problem = parse(open(sys.argv[1], encoding="utf-8").read(), "tptp")
    status = "Theorem" if decide(problem, diagnose=False).answer.value == "yes" else "CounterSatisfiable"
    print("% banner line")
    print(f"% SZS status {status} for {sys.argv[1]}")
""")


@pytest.fixture
def fake_prover(tmp_path):
    script = tmp_path / "fake_prover.py"
    script.write_text(FAKE_PROVER, encoding="utf-8")
    return f"{sys.executable} {script} {{file}}"


def test_write_tptp_uses_standard_units():
    text = write_tptp(parse(SOCRATES, "fol"))
    assert text.splitlines() == [
        "fof(p0,axiom,![X]:(man(X) => mortal(X))).",
        "fof(p1,axiom,man(socrates)).",
        "fof(goal,conjecture,mortal(socrates)).",
    ]


def test_external_socrates_is_entailed(fake_prover):
    out = prove_external(parse(SOCRATES, "fol"), fake_prover)
    assert isinstance(out, Entailed) and out.external


def test_external_non_tautology_is_not_entailed(fake_prover):
    p = Problem((), Conclusion(parse_formula("p(a)", "fol")))
    out = prove_external(p, fake_prover)
    assert isinstance(out, NotEntailed) and out.reason is Reason.Saturated


def test_external_timeout_kills_the_process(fake_prover):
    out = prove_external(parse(SOCRATES, "fol"), fake_prover + " sleep", ProverBudget(10, 0.5))
    assert isinstance(out, NotEntailed) and out.reason is Reason.BudgetExhausted


def test_external_unrecognised_status(fake_prover):
    with pytest.raises(UnrecognizedStatus):
        prove_external(parse(SOCRATES, "fol"), fake_prover + " weird")


def test_external_missing_binary():
    with pytest.raises(ExternalProverUnavailable):
        prove_external(parse(SOCRATES, "fol"), "no-such-prover-binary {file}")


@pytest.mark.parametrize("line,status", [
    ("% SZS status Theorem for x", "Entailed"),
    ("% SZS status CounterSatisfiable for x", "Saturated"),
    ("% SZS status Satisfiable", "Saturated"),
    ("% SZS status Timeout for x", "BudgetExhausted"),
    ("% SZS status GaveUp for x", "BudgetExhausted"),
])
def test_szs_status_mapping(line, status):
    out = parse_szs_status("noise\n" + line + "\n% SZS status Theorem")
    assert (out.status if out.entailed else out.reason.value) == status


def test_szs_without_status_line():
    with pytest.raises(UnrecognizedStatus):
        parse_szs_status("Segmentation fault")
