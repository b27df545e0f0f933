"""Shared hypothesis strategies and truth-table helpers."""

from __future__ import annotations

import itertools

import numpy as np
from hypothesis import strategies as st

from deductbench.core import (
    And, Atom, Conclusion, Constant, Exists, Forall, Function, Iff, Implies, Not, Or, Premise,
    Problem, Variable, Xor,
)

PREDICATES = {"p": 0, "q": 1, "r": 1, "likes": 2, "drinkWater": 1}
CONSTANTS = ("a", "b", "socrates")
VARIABLES = ("x", "y", "z")
BINARY = (And, Or, Xor, Implies, Iff)


@st.composite
def terms(draw, bound: tuple, depth: int = 2):
    choice = draw(st.integers(0, 3 if depth > 0 else 1))
    if choice == 1 and bound:
        return Variable(draw(st.sampled_from(bound)))
    if choice == 2:
        return Function("f", (draw(terms(bound, depth - 1)),))
    if choice == 3:
        return Function("g", (draw(terms(bound, depth - 1)), draw(terms(bound, depth - 1))))
    return Constant(draw(st.sampled_from(CONSTANTS)))


@st.composite
def atoms_(draw, bound: tuple):
    name = draw(st.sampled_from(sorted(PREDICATES)))
    return Atom(name, tuple(draw(terms(bound)) for _ in range(PREDICATES[name])))


@st.composite
def formulas(draw, depth: int = 6, bound: tuple = ()):
    """Formulas with ``core.depth`` at most ``depth``."""
    kind = draw(st.integers(0, 8 if depth > 0 else 0))
    if kind == 0:
        return draw(atoms_(bound))
    if kind == 1:
        return Not(draw(formulas(depth - 1, bound)))
    if kind <= 6:
        op = BINARY[kind - 2]
        return op(draw(formulas(depth - 1, bound)), draw(formulas(depth - 1, bound)))
    v = draw(st.sampled_from(VARIABLES))
    body = draw(formulas(depth - 1, tuple(dict.fromkeys(bound + (v,)))))
    return (Forall if kind == 7 else Exists)(v, body)


@st.composite
def problems(draw, depth: int = 6, max_premises: int = 8):
    n = draw(st.integers(0, max_premises))
    premises = tuple(Premise(f"p{i}", draw(formulas(depth))) for i in range(n))
    return Problem(premises, Conclusion(draw(formulas(depth))))


# --- Ground propositional problems and a truth-table oracle -------------------

GROUND_ATOMS = tuple(Atom(f"a{i}") for i in range(10))


@st.composite
def ground_formulas(draw, n_atoms: int, depth: int = 4):
    if depth <= 1 or draw(st.integers(0, 3)) == 0:
        return GROUND_ATOMS[draw(st.integers(0, n_atoms - 1))]
    kind = draw(st.integers(0, len(BINARY)))
    if kind == len(BINARY):
        return Not(draw(ground_formulas(n_atoms, depth - 1)))
    return BINARY[kind](draw(ground_formulas(n_atoms, depth - 1)), draw(ground_formulas(n_atoms, depth - 1)))


def truth_table(f, n_atoms: int) -> np.ndarray:
    """Vector of truth values of ``f`` over all 2**n assignments."""
    rows = np.array(list(itertools.product([False, True], repeat=n_atoms)), dtype=bool).reshape(-1, n_atoms)
    index = {a.pred: i for i, a in enumerate(GROUND_ATOMS[:n_atoms])}

    def ev(g):
        if isinstance(g, Atom):
            return rows[:, index[g.pred]]
        if isinstance(g, Not):
            return ~ev(g.body)
        left, right = ev(g.left), ev(g.right)
        return {And: left & right, Or: left | right, Xor: left ^ right,
                Implies: ~left | right, Iff: left == right}[type(g)]

    return ev(f)


def oracle_entails(premises, conclusion, n_atoms: int) -> bool:
    ok = np.ones(2 ** n_atoms, dtype=bool)
    for p in premises:
        ok &= truth_table(p, n_atoms)
    return bool(np.all(~ok | truth_table(conclusion, n_atoms)))


# --- Fast seeded generators for the timed acceptance checks ------------------


def random_term(rng, bound: tuple, depth: int = 2):
    choice = rng.randint(0, 3 if depth > 0 else 1)
    if choice == 1 and bound:
        return Variable(rng.choice(bound))
    if choice == 2:
        return Function("f", (random_term(rng, bound, depth - 1),))
    if choice == 3:
        return Function("g", (random_term(rng, bound, depth - 1), random_term(rng, bound, depth - 1)))
    return Constant(rng.choice(CONSTANTS))


def random_formula(rng, depth: int = 6, bound: tuple = ()):
    kind = rng.randint(0, 8) if depth > 0 else 0
    if kind == 0:
        name = rng.choice(sorted(PREDICATES))
        return Atom(name, tuple(random_term(rng, bound) for _ in range(PREDICATES[name])))
    if kind == 1:
        return Not(random_formula(rng, depth - 1, bound))
    if kind <= 6:
        return BINARY[kind - 2](random_formula(rng, depth - 1, bound), random_formula(rng, depth - 1, bound))
    v = rng.choice(VARIABLES)
    return (Forall if kind == 7 else Exists)(v, random_formula(rng, depth - 1, tuple(dict.fromkeys(bound + (v,)))))


def random_problem(rng, depth: int = 6, max_premises: int = 8) -> Problem:
    premises = tuple(Premise(f"p{i}", random_formula(rng, depth)) for i in range(rng.randint(0, max_premises)))
    return Problem(premises, Conclusion(random_formula(rng, depth)))


def random_ground(rng, n_atoms: int, depth: int = 4):
    if depth <= 1 or rng.randint(0, 3) == 0:
        return GROUND_ATOMS[rng.randrange(n_atoms)]
    kind = rng.randint(0, len(BINARY))
    if kind == len(BINARY):
        return Not(random_ground(rng, n_atoms, depth - 1))
    return BINARY[kind](random_ground(rng, n_atoms, depth - 1), random_ground(rng, n_atoms, depth - 1))


# --- Scripted recovery fixture -----------------------------------------------

BROKEN_RESPONSE = "Premises:\nman ∧ mortal(Socrates)\nConclusion:\nmortal(socrates)\n"


def recovery_script(samples, max_attempts: int = 4) -> dict:
    """Every other sample starts with a syntax error; any later attempt is the gold form."""
    from deductbench.syntax import print_problem

    script = {}
    for i, s in enumerate(samples):
        gold = print_problem(s.gold_problem, "fol", headers=True)
        script[s.id] = ([BROKEN_RESPONSE] if i % 2 == 0 else [gold]) + [gold] * (max_attempts - 1)
    return script


# --- Acceptance report -------------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=lambda n: (int(str(n).split()[0]), str(n))):
        status, title, note = ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title}" + (f" ({note})" if note else ""))
