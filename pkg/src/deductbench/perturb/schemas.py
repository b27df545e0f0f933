"""Inference-rule schemas and their counterfactual (negated) forms.

Each schema is a Problem over the predicate letters p, q, r, s and one free
variable ``a`` standing for an arbitrary individual. The negated form negates
one term of one premise so that the original conclusion no longer follows
while a mirrored one does.

To carry the change over to a concrete gold problem, the schema premises are
matched against the gold premises (letters map injectively to predicate
names, ``a`` to a term) and the changed conjunct is replaced by its
instantiation. The gold conclusion is kept, so the expected answer flips.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ..core import (
    And, Atom, Conclusion, Constant, Forall, Not, Premise, Problem, Variable,
    alpha_equal, conjoin, free_variables, is_binary, map_children, substitute,
)
from ..syntax import SyntaxId, parse_formula


class UnsupportedRule(ValueError):
    pass


class SchemaMismatch(ValueError):
    """The gold problem does not have the shape of its rule's schema."""


SCHEMA_CONSTANT = "a"
PREDICATE_LETTERS = ("p", "q", "r", "s")

# rule -> (original premises, original conclusion, negated premises, negated conclusion),
# written in R-FOL so that ``a`` can stay free.
_TABLE = {
    "modus_ponens": (
        ["∀?x (p(?x) → q(?x))", "p(?a)"], "q(?a)",
        ["∀?x (p(?x) → ¬q(?x))", "p(?a)"], "¬q(?a)",
    ),
    "modus_tollens": (
        ["∀?x (p(?x) → q(?x))", "¬q(?a)"], "¬p(?a)",
        ["∀?x (¬p(?x) → q(?x))", "¬q(?a)"], "p(?a)",
    ),
    "hypothetical_syllogism": (
        ["∀?x (p(?x) → q(?x))", "∀?x (q(?x) → r(?x))"], "p(?a) → r(?a)",
        ["∀?x (¬p(?x) → q(?x))", "∀?x (q(?x) → r(?x))"], "¬p(?a) → r(?a)",
    ),
    "disjunctive_syllogism": (
        ["∀?x (p(?x) ∨ q(?x))", "¬p(?a)"], "q(?a)",
        ["∀?x (p(?x) ∨ ¬q(?x))", "¬p(?a)"], "¬q(?a)",
    ),
    "constructive_dilemma": (
        ["∀?x (p(?x) → q(?x))", "∀?x (r(?x) → s(?x))", "p(?a) ∨ r(?a)"], "q(?a) ∨ s(?a)",
        ["∀?x (p(?x) → ¬q(?x))", "∀?x (r(?x) → s(?x))", "p(?a) ∨ r(?a)"], "¬q(?a) ∨ s(?a)",
    ),
    "bidirectional_dilemma": (
        ["∀?x (p(?x) → q(?x))", "∀?x (r(?x) → s(?x))", "p(?a) ∨ ¬s(?a)"], "q(?a) ∨ ¬r(?a)",
        ["∀?x (p(?x) → ¬q(?x))", "∀?x (r(?x) → s(?x))", "p(?a) ∨ ¬s(?a)"], "¬q(?a) ∨ ¬r(?a)",
    ),
    "existential_generalization": (
        ["p(?a)"], "∃?x p(?x)",
        ["¬p(?a)"], "∃?x ¬p(?x)",
    ),
    "universal_instantiation": (
        ["∀?x p(?x)"], "p(?a)",
        ["∀?x ¬p(?x)"], "¬p(?a)",
    ),
}

COUNTERFACTUAL_RULES = tuple(_TABLE)


@dataclass(frozen=True)
class SchemaPair:
    rule: str
    original: Problem
    negated: Problem
    label_flip: bool = True

    def changed(self) -> list:
        """Indices of premises that differ between the two forms."""
        return [
            i for i, (a, b) in enumerate(zip(self.original.premises, self.negated.premises))
            if not alpha_equal(a.formula, b.formula)
        ]


def _schema_problem(premises, conclusion) -> Problem:
    return Problem(
        tuple(Premise(f"s{i}", parse_formula(t, SyntaxId.RFOL)) for i, t in enumerate(premises)),
        Conclusion(parse_formula(conclusion, SyntaxId.RFOL)),
    )


def negate_schema(rule: str) -> SchemaPair:
    if rule not in _TABLE:
        raise UnsupportedRule(f"no counterfactual schema for rule {rule!r}")
    orig_p, orig_c, neg_p, neg_c = _TABLE[rule]
    return SchemaPair(rule, _schema_problem(orig_p, orig_c), _schema_problem(neg_p, neg_c))


def instantiate(p: Problem, term=None) -> Problem:
    """Replace the schema individual ``a`` by ``term`` (default: the constant ``a``)."""
    term = Constant(SCHEMA_CONSTANT) if term is None else term
    return Problem(
        tuple(Premise(x.label, substitute(x.formula, SCHEMA_CONSTANT, term), x.gloss) for x in p.premises),
        None if p.conclusion is None else Conclusion(substitute(p.conclusion.formula, SCHEMA_CONSTANT, term)),
        p.declared_predicates,
    )


# --- Matching schemas against gold problems -----------------------------


def conjuncts(f) -> list:
    """Split top-level conjunctions, distributing universal quantifiers over them."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    if isinstance(f, Forall):
        if f.var not in free_variables(f.body):
            return conjuncts(f.body)
        parts = conjuncts(f.body)
        if len(parts) > 1:
            return [Forall(f.var, part) for part in parts]
    return [f]


def rename_predicates(f, mapping: dict):
    if isinstance(f, Atom):
        return Atom(mapping.get(f.pred, f.pred), f.args)
    return map_children(f, lambda g: rename_predicates(g, mapping))


class _Matcher:
    """Structural matching of a schema formula against a concrete one."""

    def __init__(self):
        self.preds = {}
        self.term = None

    def term_match(self, s, t, env_s: dict, env_t: dict) -> bool:
        if isinstance(s, Variable) and s.name in env_s:
            return isinstance(t, Variable) and env_t.get(t.name) == env_s[s.name]
        if isinstance(s, Variable) and s.name == SCHEMA_CONSTANT:
            if isinstance(t, Variable) and t.name in env_t:
                return False
            if self.term is None:
                self.term = t
            return self.term == t
        return s == t

    def formula(self, s, t, env_s: dict, env_t: dict, level: int) -> bool:
        if isinstance(s, Atom):
            if not isinstance(t, Atom) or len(s.args) != len(t.args):
                return False
            bound = self.preds.get(s.pred)
            if bound is None:
                if t.pred in self.preds.values():
                    return False
                self.preds[s.pred] = t.pred
            elif bound != t.pred:
                return False
            return all(self.term_match(a, b, env_s, env_t) for a, b in zip(s.args, t.args))
        if type(s) is not type(t):
            return False
        if isinstance(s, Not):
            return self.formula(s.body, t.body, env_s, env_t, level)
        if is_binary(s):
            return self.formula(s.left, t.left, env_s, env_t, level) and self.formula(
                s.right, t.right, env_s, env_t, level)
        return self.formula(s.body, t.body, {**env_s, s.var: level}, {**env_t, t.var: level}, level + 1)


def _match_all(schema_parts: list, gold_parts: list) -> Optional[tuple]:
    """Assign each schema conjunct to a distinct gold conjunct, or None."""
    if len(schema_parts) != len(gold_parts):
        return None
    for perm in itertools.permutations(range(len(gold_parts))):
        m = _Matcher()
        if all(m.formula(s, gold_parts[j], {}, {}, 0) for s, j in zip(schema_parts, perm)):
            return perm, m
    return None


def counterfactual_problem(gold: Problem, rule: str) -> Problem:
    """The gold problem with the schema's negation applied to the matching premise."""
    pair = negate_schema(rule)
    schema_parts = [c for prem in pair.original.premises for c in conjuncts(prem.formula)]
    negated_parts = [c for prem in pair.negated.premises for c in conjuncts(prem.formula)]
    owners = []
    gold_parts = []
    for idx, prem in enumerate(gold.premises):
        for part in conjuncts(prem.formula):
            owners.append(idx)
            gold_parts.append(part)
    found = _match_all(schema_parts, gold_parts)
    if found is None:
        raise SchemaMismatch(f"gold premises do not match the {rule} schema")
    perm, m = found
    term = m.term if m.term is not None else Constant(SCHEMA_CONSTANT)
    replaced = list(gold_parts)
    changed_premises = set()
    for k, (orig, neg) in enumerate(zip(schema_parts, negated_parts)):
        if alpha_equal(orig, neg):
            continue
        new = substitute(rename_predicates(neg, m.preds), SCHEMA_CONSTANT, term)
        replaced[perm[k]] = new
        changed_premises.add(owners[perm[k]])
    premises = []
    for idx, prem in enumerate(gold.premises):
        if idx not in changed_premises:
            premises.append(prem)
            continue
        parts = [replaced[j] for j, owner in enumerate(owners) if owner == idx]
        premises.append(Premise(prem.label, conjoin(parts)))
    return Problem(tuple(premises), gold.conclusion, gold.declared_predicates)
