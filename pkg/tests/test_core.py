from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import formulas
from deductbench.core import (
    And, Answer, Atom, Conclusion, Constant, Exists, Forall, Function, Implies, Not, Premise,
    Problem, Variable, alpha_equal, atoms, conjoin, depth, free_variables, fresh_name, substitute,
    universal_closure,
)

x, y, a = Variable("x"), Variable("y"), Constant("a")


def test_identifiers_are_validated():
    with pytest.raises(ValueError):
        Constant("1abc")
    with pytest.raises(ValueError):
        Function("f", ())


def test_free_variables_respect_binders():
    f = And(Forall("x", Atom("p", (x,))), Atom("q", (x, y)))
    assert free_variables(f) == {"x", "y"}
    assert free_variables(universal_closure(f)) == set()


def test_alpha_equal_renaming_and_shadowing():
    assert alpha_equal(Forall("x", Atom("p", (x,))), Forall("y", Atom("p", (y,))))
    assert not alpha_equal(Forall("x", Atom("p", (x,))), Forall("y", Atom("p", (x,))))
    inner_x = Forall("x", Exists("x", Atom("p", (x,))))
    inner_y = Forall("x", Exists("y", Atom("p", (y,))))
    assert alpha_equal(inner_x, inner_y)
    assert not alpha_equal(inner_y, Forall("y", Exists("x", Atom("p", (Variable("y"),)))))


def test_substitution_avoids_capture():
    f = Exists("y", Atom("r", (x, y)))
    g = substitute(f, "x", y)
    assert isinstance(g, Exists) and g.var != "y"
    assert free_variables(g) == {"y"}
    assert alpha_equal(g, Exists("z", Atom("r", (y, Variable("z")))))


def test_substitution_skips_bound_occurrences():
    f = Forall("x", Atom("p", (x,)))
    assert substitute(f, "x", a) == f


def test_fresh_name_and_conjoin():
    assert fresh_name("x", {"x1", "x2"}) == "x3"
    assert conjoin([]) is None
    p, q = Atom("p"), Atom("q")
    assert conjoin([p, q]) == And(p, q)


def test_problem_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        Problem((Premise("a", Atom("p")), Premise("a", Atom("q"))), Conclusion(Atom("r")))


def test_answer_parsing_and_flip():
    assert Answer.parse("Yes") is Answer.YES
    assert Answer.parse(False) is Answer.NO
    assert Answer.YES.flip() is Answer.NO
    with pytest.raises(ValueError):
        Answer.parse("maybe")


@settings(max_examples=60, deadline=None)
@given(formulas(4))
def test_alpha_equal_is_reflexive_and_closure_is_closed(f):
    assert alpha_equal(f, f)
    assert free_variables(universal_closure(f)) == set()
    assert depth(f) <= 4
    assert all(isinstance(t, Atom) for t in atoms(f))


@settings(max_examples=60, deadline=None)
@given(formulas(4))
def test_substituting_a_constant_removes_the_variable(f):
    g = substitute(Not(f), "x", a)
    assert "x" not in free_variables(g)
    h = substitute(Implies(f, Atom("q", (x,))), "x", a)
    assert free_variables(h) <= free_variables(f) - {"x"}
