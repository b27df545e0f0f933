"""Clausal normal form for refutation proving.

The pipeline is NNF, then Skolemization with binders renamed apart, then CNF
by distribution. Prenexing is implicit: once every bound variable has a
unique name and existentials are Skolemized, the remaining universals can be
dropped, which is what moving them to the front would achieve. Existential
witnesses depend only on the enclosing universals that actually occur in the
witnessed subformula, which gives smaller Skolem terms than full prenexing.

When distribution would multiply clause counts past a threshold, the larger
disjunct is replaced by a fresh definition atom (one-directional naming, which
suffices because NNF puts every subformula in positive position).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from ..core import (
    And, Atom, Constant, Exists, Forall, Function, Iff, Implies, Not, Or, Variable,
    Xor, atoms, constants_and_functions, free_variables, substitute, term_variables,
    universal_closure,
)

SKOLEM_PREFIX = "sk_"
DEFINITION_PREFIX = "sk_def_"
DISTRIBUTION_LIMIT = 64


@dataclass(frozen=True, order=True)
class Literal:
    sign: bool
    atom: Atom

    def negate(self) -> "Literal":
        return Literal(not self.sign, self.atom)

    def __str__(self) -> str:
        return ("" if self.sign else "¬") + _atom_str(self.atom)

    @functools.cached_property
    def shape_key(self) -> tuple:
        return (_atom_str(self.atom, True), self.sign, _atom_str(self.atom))


def _term_str(t, blind: bool = False) -> str:
    if isinstance(t, Function):
        return f"{t.name}({', '.join(_term_str(a, blind) for a in t.args)})"
    if blind and isinstance(t, Variable):
        return "_"
    return t.name


def _atom_str(a: Atom, blind: bool = False) -> str:
    return f"{a.pred}({', '.join(_term_str(t, blind) for t in a.args)})"


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals with variables named X0, X1, ... in order of appearance."""

    literals: tuple
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "literals", _normalize(self.literals))

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def variables(self) -> list:
        return list(self._variables)

    @functools.cached_property
    def literal_set(self) -> frozenset:
        return frozenset(self.literals)

    @functools.cached_property
    def heads(self) -> frozenset:
        return frozenset((lit.sign, lit.atom.pred) for lit in self.literals)

    @functools.cached_property
    def _variables(self) -> tuple:
        seen = {}
        for lit in self.literals:
            for t in lit.atom.args:
                for v in term_variables(t):
                    seen.setdefault(v, None)
        return tuple(seen)

    def __str__(self) -> str:
        if not self.literals:
            return "□"
        return "{" + ", ".join(str(lit) for lit in self.literals) + "}"

    def __eq__(self, other):
        return isinstance(other, Clause) and self.literals == other.literals

    def __hash__(self):
        return hash(self.literals)


def _rename_term(t, mapping: dict):
    if isinstance(t, Variable):
        return Variable(mapping[t.name])
    if isinstance(t, Function):
        return Function(t.name, tuple(_rename_term(a, mapping) for a in t.args))
    return t


def rename_literals(literals, mapping: dict) -> tuple:
    return tuple(
        Literal(lit.sign, Atom(lit.atom.pred, tuple(_rename_term(t, mapping) for t in lit.atom.args)))
        for lit in literals
    )


def _lit_vars(lit: Literal) -> list:
    return [v for t in lit.atom.args for v in term_variables(t)]


def _shape_key(lit: Literal) -> tuple:
    return lit.shape_key


def _normalize(literals) -> tuple:
    """Deduplicate, order deterministically and rename variables canonically.

    Literals are sorted by their variable-blind shape first, so the order
    barely depends on incoming variable names; sorting and renaming repeat
    until nothing changes, which makes the operation idempotent in practice.
    """
    lits = tuple(sorted(set(literals), key=_shape_key))
    if not any(_lit_vars(lit) for lit in lits):
        return lits
    for _ in range(8):
        mapping = {}
        for lit in lits:
            for v in _lit_vars(lit):
                mapping.setdefault(v, f"X{len(mapping)}")
        renamed = tuple(sorted(set(rename_literals(lits, mapping)), key=_shape_key))
        if renamed == lits:
            break
        lits = renamed
    return lits


# --- NNF -----------------------------------------------------------------


def nnf(f, positive: bool = True):
    """Negation normal form over And, Or, Not(Atom), Forall and Exists."""
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.body, not positive)
    if isinstance(f, And):
        op = And if positive else Or
        return op(nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Or):
        op = Or if positive else And
        return op(nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Implies):
        return nnf(Or(Not(f.left), f.right), positive)
    if isinstance(f, Iff):
        if positive:
            return And(nnf(Or(Not(f.left), f.right)), nnf(Or(f.left, Not(f.right))))
        return Or(nnf(And(f.left, Not(f.right))), nnf(And(Not(f.left), f.right)))
    if isinstance(f, Xor):
        return nnf(Iff(f.left, f.right), not positive)
    if isinstance(f, Forall):
        return (Forall if positive else Exists)(f.var, nnf(f.body, positive))
    return (Exists if positive else Forall)(f.var, nnf(f.body, positive))


# --- Skolemization -------------------------------------------------------


class _Names:
    """Deterministic fresh symbols for one clausification run."""

    def __init__(self, taken):
        self.taken = set(taken)
        self.counters = {}

    def fresh(self, prefix: str) -> str:
        for i in itertools.count(self.counters.get(prefix, 0)):
            name = f"{prefix}{i}"
            if name not in self.taken:
                self.counters[prefix] = i + 1
                self.taken.add(name)
                return name


def _skolemize(f, universals: tuple, names: _Names):
    """Drop quantifiers from an NNF formula with unique binder names."""
    if isinstance(f, (Atom, Not)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_skolemize(f.left, universals, names), _skolemize(f.right, universals, names))
    if isinstance(f, Forall):
        var = names.fresh("V")
        body = substitute(f.body, f.var, Variable(var))
        return _skolemize(body, universals + (var,), names)
    free = free_variables(f)
    deps = tuple(v for v in universals if v in free)
    name = names.fresh(SKOLEM_PREFIX)
    witness = Function(name, tuple(Variable(v) for v in deps)) if deps else Constant(name)
    return _skolemize(substitute(f.body, f.var, witness), universals, names)


# --- CNF -----------------------------------------------------------------


def _literal(f) -> Literal:
    return Literal(False, f.body) if isinstance(f, Not) else Literal(True, f)


def _cnf(f, names: _Names, extra: list) -> list:
    """List of literal tuples; definition clauses go to ``extra``."""
    if isinstance(f, (Atom, Not)):
        return [(_literal(f),)]
    if isinstance(f, And):
        return _cnf(f.left, names, extra) + _cnf(f.right, names, extra)
    left = _cnf(f.left, names, extra)
    right = _cnf(f.right, names, extra)
    if len(left) * len(right) > DISTRIBUTION_LIMIT:
        if len(left) > len(right):
            left = _define(f.left, left, names, extra)
        else:
            right = _define(f.right, right, names, extra)
    return [a + b for a in left for b in right]


def _define(f, clauses: list, names: _Names, extra: list) -> list:
    args = tuple(Variable(v) for v in sorted(free_variables(f)))
    name_atom = Atom(names.fresh(DEFINITION_PREFIX), args)
    for c in clauses:
        extra.append((Literal(False, name_atom),) + c)
    return [(Literal(True, name_atom),)]


def _is_tautology(literals) -> bool:
    pos = {lit.atom for lit in literals if lit.sign}
    return any(not lit.sign and lit.atom in pos for lit in literals)


def symbols(formulas) -> set:
    names = set()
    for f in formulas:
        consts, funcs = constants_and_functions(f)
        names |= consts | {n for n, _ in funcs} | {a.pred for a in atoms(f)}
    return names


def clausify_all(formulas, provenance=None) -> list:
    """Clauses for the conjunction of ``formulas``, sharing one fresh-name scope.

    Free variables are universally closed first. ``provenance`` optionally
    gives a note per formula; tautologies are dropped and duplicates merged.
    """
    formulas = [universal_closure(f) for f in formulas]
    names = _Names(symbols(formulas))
    notes = provenance or [f"input {i}" for i in range(len(formulas))]
    out = []
    seen = set()
    for f, note in zip(formulas, notes):
        extra = []
        matrix = _skolemize(nnf(f), (), names)
        for lits in _cnf(matrix, names, extra) + extra:
            if _is_tautology(lits):
                continue
            c = Clause(lits, note)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def clausify(f) -> list:
    """Equisatisfiable clause list for the closed formula ``f``."""
    return clausify_all([f], ["input"])
