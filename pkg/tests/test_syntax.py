from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import problems, random_problem
from deductbench.core import (
    Atom, Conclusion, Constant, Forall, Function, Implies, Premise, Problem, Variable, alpha_equal,
    problems_alpha_equal,
)
from deductbench.syntax import (
    LogicSyntaxError, MissingSection, SourceDoc, SyntaxId, parse, parse_formula, print_formula,
    print_problem, translate,
)

HYDRATION_AST = Forall("x", Implies(Atom("drinkWater", (Variable("x"),)), Atom("hydrated", (Variable("x"),))))
HYDRATION_TRIPLE = {
    SyntaxId.FOL: "∀x drinkWater(x) → hydrated(x)",
    SyntaxId.RFOL: "∀?x drinkWater(?x) → hydrated(?x)",
    SyntaxId.TPTP: "fof(a0,axiom,![X]:drinkWater(X) => hydrated(X)).",
}


def squash(text: str) -> str:
    return "".join(text.split())


@pytest.mark.parametrize("syntax", list(SyntaxId))
def test_hydration_renderings_parse_to_the_same_ast(syntax):
    p = parse(HYDRATION_TRIPLE[syntax], syntax)
    assert len(p.premises) == 1
    assert alpha_equal(p.premises[0].formula, HYDRATION_AST)
    assert p.premises[0].label == "a0"


@pytest.mark.parametrize("source", list(SyntaxId))
@pytest.mark.parametrize("target", list(SyntaxId))
def test_translation_reproduces_the_triple(source, target):
    assert squash(translate(HYDRATION_TRIPLE[source], target, source)) == squash(HYDRATION_TRIPLE[target])


def test_strict_tptp_parenthesises_quantifier_bodies():
    out = print_problem(parse(HYDRATION_TRIPLE[SyntaxId.FOL], "fol"), "tptp", strict=True)
    assert out.strip() == "fof(a0,axiom,![X]:(drinkWater(X) => hydrated(X)))."


def test_error_message_shape():
    with pytest.raises(LogicSyntaxError) as err:
        parse_formula("man ∧ mortal(Socrates)", "fol")
    e = err.value
    assert e.message == "mismatched input '∧' expecting '('"
    assert (e.offending, e.expected) == ("∧", "(")
    assert e.position == (1, 4)


def test_error_position_in_documents():
    doc = "Premises:\nman(socrates)\nman ∧ mortal(Socrates)\nConclusion:\nmortal(socrates)\n"
    with pytest.raises(LogicSyntaxError) as err:
        parse(doc, "fol")
    assert err.value.position == (3, 4)
    assert str(err.value) == "line 3:4 mismatched input '∧' expecting '('"


def test_template_sections_and_glosses():
    doc = (
        "Sure, here is the formalisation.\n"
        "Predicates:\nMan(x) ::: x is a man\nMortal(x) ::: x is mortal\n"
        "Premises:\n∀x (Man(x) → Mortal(x)) ::: All men are mortal.\nMan(socrates) ::: Socrates is a man.\n"
        "Conclusion:\nMortal(socrates) ::: Socrates is mortal.\n"
    )
    src = SourceDoc.of(doc, "fol")
    spans = sorted(src.section_map.values())
    assert all(0 <= s < e <= len(doc) for s, e in spans)
    assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))
    p = parse(src)
    assert [d.name for d in p.declared_predicates] == ["Man", "Mortal"]
    assert p.premises[1].gloss == "Socrates is a man."
    assert p.conclusion.formula == Atom("Mortal", (Constant("socrates"),))


def test_missing_premises_header():
    with pytest.raises(MissingSection):
        parse("Predicates:\np(x)\nConclusion:\np(a)\n", "fol")


def test_variable_conventions():
    # FOL: bound names are variables, everything else is a constant.
    f = parse_formula("∀x likes(x, y)", "fol")
    assert f.body.args == (Variable("x"), Constant("y"))
    with pytest.raises(LogicSyntaxError):
        parse_formula("∀x p(x)", "rfol")
    with pytest.raises(LogicSyntaxError):
        parse_formula("![x]:p(x)", "tptp")
    assert alpha_equal(parse_formula("∀?x p(?x)", "rfol"), parse_formula("∀x p(x)", "fol"))


def test_ascii_aliases():
    ascii_ = parse_formula("forall x (p(x) -> (q(x) & ~r(x) | s(x) <-> t(x)))", "fol")
    uni = parse_formula("∀x (p(x) → (q(x) ∧ ¬r(x) ∨ s(x) ↔ t(x)))", "fol")
    assert ascii_ == uni


def test_precedence_and_associativity():
    f = parse_formula("¬p() ∧ q() ∨ r() → s() → t()", "fol")
    assert print_formula(f, "fol") == "((¬p() ∧ q()) ∨ r()) → (s() → t())"


def test_zero_arity_atoms_print_bare_in_tptp():
    p = Problem((Premise("a0", Atom("rains")),), Conclusion(Atom("wet", (Constant("ground"),))))
    out = print_problem(p, "tptp")
    assert "fof(a0,axiom,rains)." in out
    assert "fof(goal,conjecture,wet(ground))." in out


def test_tptp_labels_are_quoted_and_escaped():
    p = Problem((Premise("first 'premise'", Atom("p")),), None)
    once, twice = print_problem(p, "tptp"), print_problem(p, "tptp")
    assert once == twice
    assert once.startswith("fof('first \\'premise\\'',axiom,p).")
    assert problems_alpha_equal(parse(once, "tptp"), p, labels=True)


def test_function_terms_round_trip():
    f = Forall("x", Atom("likes", (Variable("x"), Function("mother", (Variable("x"),)))))
    for s in SyntaxId:
        assert alpha_equal(parse_formula(print_formula(f, s), s), f)


def test_seeded_round_trip_population():
    rng = random.Random(3)
    for _ in range(50):
        p = random_problem(rng)
        for s in SyntaxId:
            assert problems_alpha_equal(parse(print_problem(p, s), s), p)


@settings(max_examples=40, deadline=None)
@given(problems(depth=4, max_premises=4))
def test_round_trip_property(p):
    for s in SyntaxId:
        assert problems_alpha_equal(parse(print_problem(p, s), s), p)


@settings(max_examples=40, deadline=None)
@given(problems(depth=4, max_premises=4))
def test_translation_cycle_commutes(p):
    text = print_problem(p, SyntaxId.FOL)
    for source, target in [(SyntaxId.FOL, SyntaxId.TPTP), (SyntaxId.TPTP, SyntaxId.RFOL),
                           (SyntaxId.RFOL, SyntaxId.FOL)]:
        text = translate(text, target, source)
    assert problems_alpha_equal(parse(text, SyntaxId.FOL), p, glosses=False)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=200), st.sampled_from(list(SyntaxId)))
def test_parser_is_total_on_arbitrary_text(text, syntax):
    try:
        parse(text, syntax)
    except LogicSyntaxError:
        pass


def test_parser_handles_large_input():
    deep = "(" * 2000 + "p" + ")" * 2000
    try:
        parse(deep, "fol")
    except LogicSyntaxError:
        pass
    wide = " ∧ ".join(f"p{i}(a)" for i in range(3000))
    assert len(wide) < 64 * 1024
    assert parse(wide, "fol").premises
