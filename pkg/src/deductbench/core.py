"""First-order logic terms, formulas and problems.

All node types are frozen dataclasses, so structural equality and hashing come
for free. Alpha-equivalence, free variables and capture-avoiding substitution
are the only operations defined here; everything else builds on them.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _check_identifier(name: str) -> None:
    if not isinstance(name, str) or not IDENTIFIER.match(name):
        raise ValueError(f"invalid identifier: {name!r}")


# --- Terms ---------------------------------------------------------------


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        _check_identifier(self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Constant:
    name: str

    def __post_init__(self):
        _check_identifier(self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Function:
    name: str
    args: tuple

    def __post_init__(self):
        _check_identifier(self.name)
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError(f"function {self.name!r} needs at least one argument; use Constant")

    def __str__(self):
        return f"{self.name}({', '.join(map(str, self.args))})"


Term = Union[Variable, Constant, Function]


# --- Formulas ------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()

    def __post_init__(self):
        _check_identifier(self.pred)
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return f"{self.pred}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return f"¬{_paren(self.body)}"


@dataclass(frozen=True)
class _Binary:
    left: "Formula"
    right: "Formula"
    symbol = "?"

    def __str__(self):
        return f"{_paren(self.left)} {self.symbol} {_paren(self.right)}"


class And(_Binary):
    symbol = "∧"


class Or(_Binary):
    symbol = "∨"


class Xor(_Binary):
    symbol = "⊕"


class Implies(_Binary):
    symbol = "→"


class Iff(_Binary):
    symbol = "↔"


@dataclass(frozen=True)
class _Quantifier:
    var: str
    body: "Formula"
    symbol = "?"

    def __post_init__(self):
        _check_identifier(self.var)

    def __str__(self):
        return f"{self.symbol}{self.var} {self.body}"


class Forall(_Quantifier):
    symbol = "∀"


class Exists(_Quantifier):
    symbol = "∃"


Formula = Union[Atom, Not, And, Or, Xor, Implies, Iff, Forall, Exists]
BINARY_TYPES = (And, Or, Xor, Implies, Iff)
QUANTIFIER_TYPES = (Forall, Exists)


def _paren(f) -> str:
    if isinstance(f, (_Binary, _Quantifier)):
        return f"({f})"
    return str(f)


def is_binary(f) -> bool:
    return isinstance(f, _Binary)


def is_quantifier(f) -> bool:
    return isinstance(f, _Quantifier)


def conjoin(formulas) -> Optional[Formula]:
    """Left-nested conjunction of ``formulas``; None when empty."""
    result = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return result


# --- Problem -------------------------------------------------------------


@dataclass(frozen=True)
class Premise:
    label: str
    formula: Formula
    gloss: str = ""


@dataclass(frozen=True)
class Conclusion:
    formula: Formula
    gloss: str = ""


@dataclass(frozen=True)
class PredicateDecl:
    name: str
    arity: int
    gloss: str = ""


@dataclass(frozen=True)
class Problem:
    """Context logical form (premises) plus the query logical form.

    ``conclusion`` may be None for premise-only documents such as a single
    translated sentence; proving requires it.
    """

    premises: tuple = ()
    conclusion: Optional[Conclusion] = None
    declared_predicates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "declared_predicates", tuple(self.declared_predicates))
        labels = [p.label for p in self.premises]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate premise labels in {labels}")
        keys = [(d.name, d.arity) for d in self.declared_predicates]
        if len(set(keys)) != len(keys):
            raise ValueError(f"duplicate predicate declarations in {keys}")

    @property
    def premise_formulas(self) -> list:
        return [p.formula for p in self.premises]

    def formulas(self) -> Iterator[Formula]:
        yield from self.premise_formulas
        if self.conclusion is not None:
            yield self.conclusion.formula


# --- Traversal -----------------------------------------------------------


def term_variables(t) -> Iterator[str]:
    if isinstance(t, Variable):
        yield t.name
    elif isinstance(t, Function):
        for a in t.args:
            yield from term_variables(a)


def free_variables(f) -> set:
    """Names of variables with at least one occurrence not under a binder for them."""
    if isinstance(f, Atom):
        return {v for a in f.args for v in term_variables(a)}
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, _Binary):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, _Quantifier):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def bound_names(f) -> set:
    """Every variable name introduced by a binder anywhere in ``f``."""
    if isinstance(f, Atom):
        return set()
    if isinstance(f, Not):
        return bound_names(f.body)
    if isinstance(f, _Binary):
        return bound_names(f.left) | bound_names(f.right)
    return {f.var} | bound_names(f.body)


def atoms(f) -> Iterator[Atom]:
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from atoms(f.body)
    elif isinstance(f, _Binary):
        yield from atoms(f.left)
        yield from atoms(f.right)
    else:
        yield from atoms(f.body)


def subterms(t) -> Iterator:
    yield t
    if isinstance(t, Function):
        for a in t.args:
            yield from subterms(a)


def constants_and_functions(f) -> tuple:
    """Return ``(constants, functions)`` as sets of names and (name, arity) pairs."""
    consts, funcs = set(), set()
    for atom in atoms(f):
        for arg in atom.args:
            for t in subterms(arg):
                if isinstance(t, Constant):
                    consts.add(t.name)
                elif isinstance(t, Function):
                    funcs.add((t.name, len(t.args)))
    return consts, funcs


def depth(f) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.body)
    if isinstance(f, _Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


def map_children(f, fn):
    """Rebuild ``f`` with ``fn`` applied to each immediate subformula."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(fn(f.body))
    if isinstance(f, _Binary):
        return type(f)(fn(f.left), fn(f.right))
    return type(f)(f.var, fn(f.body))


# --- Substitution --------------------------------------------------------


def fresh_name(base: str, avoid) -> str:
    """``base`` followed by the smallest numeric suffix not in ``avoid``."""
    stem = base.rstrip("0123456789") or base
    for i in itertools.count(1):
        candidate = f"{stem}{i}"
        if candidate not in avoid:
            return candidate


def substitute_term(t, v: str, replacement):
    if isinstance(t, Variable):
        return replacement if t.name == v else t
    if isinstance(t, Function):
        return Function(t.name, tuple(substitute_term(a, v, replacement) for a in t.args))
    return t


def substitute(f, v: str, t):
    """Replace free occurrences of variable ``v`` in ``f`` by term ``t``.

    Binders that would capture a variable of ``t`` are renamed first, using
    :func:`fresh_name`, so the result is deterministic.
    """
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(substitute_term(a, v, t) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, v, t))
    if isinstance(f, _Binary):
        return type(f)(substitute(f.left, v, t), substitute(f.right, v, t))
    if f.var == v or v not in free_variables(f.body):
        return f
    t_vars = set(term_variables(t))
    if f.var in t_vars:
        avoid = t_vars | free_variables(f.body) | bound_names(f.body) | {v}
        new = fresh_name(f.var, avoid)
        body = substitute(f.body, f.var, Variable(new))
        return type(f)(new, substitute(body, v, t))
    return type(f)(f.var, substitute(f.body, v, t))


def rename_bound(f, v_old: str, v_new: str):
    """Rename binder occurrences of ``v_old`` to ``v_new`` throughout ``f``."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, _Quantifier) and f.var == v_old:
        return type(f)(v_new, substitute(rename_bound(f.body, v_old, v_new), v_old, Variable(v_new)))
    return map_children(f, lambda g: rename_bound(g, v_old, v_new))


# --- Alpha equivalence ---------------------------------------------------


def _term_eq(s, t, env_s: dict, env_t: dict) -> bool:
    if isinstance(s, Variable) and isinstance(t, Variable):
        in_s, in_t = s.name in env_s, t.name in env_t
        if in_s and in_t:
            return env_s[s.name] == env_t[t.name]
        return not in_s and not in_t and s.name == t.name
    if isinstance(s, Constant) and isinstance(t, Constant):
        return s.name == t.name
    if isinstance(s, Function) and isinstance(t, Function):
        return (
            s.name == t.name
            and len(s.args) == len(t.args)
            and all(_term_eq(a, b, env_s, env_t) for a, b in zip(s.args, t.args))
        )
    return False


def _alpha(f, g, env_f: dict, env_g: dict, level: int) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return (
            f.pred == g.pred
            and len(f.args) == len(g.args)
            and all(_term_eq(a, b, env_f, env_g) for a, b in zip(f.args, g.args))
        )
    if isinstance(f, Not):
        return _alpha(f.body, g.body, env_f, env_g, level)
    if isinstance(f, _Binary):
        return _alpha(f.left, g.left, env_f, env_g, level) and _alpha(
            f.right, g.right, env_f, env_g, level
        )
    return _alpha(
        f.body, g.body, {**env_f, f.var: level}, {**env_g, g.var: level}, level + 1
    )


def alpha_equal(f, g) -> bool:
    """True iff ``f`` and ``g`` differ only by a consistent renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


def problems_alpha_equal(p: Problem, q: Problem, *, labels: bool = False, glosses: bool = True) -> bool:
    if len(p.premises) != len(q.premises):
        return False
    for a, b in zip(p.premises, q.premises):
        if not alpha_equal(a.formula, b.formula):
            return False
        if labels and a.label != b.label:
            return False
        if glosses and a.gloss != b.gloss:
            return False
    if (p.conclusion is None) != (q.conclusion is None):
        return False
    if p.conclusion is not None:
        if not alpha_equal(p.conclusion.formula, q.conclusion.formula):
            return False
        if glosses and p.conclusion.gloss != q.conclusion.gloss:
            return False
    strip = (lambda d: (d.name, d.arity, d.gloss)) if glosses else (lambda d: (d.name, d.arity))
    return [strip(d) for d in p.declared_predicates] == [strip(d) for d in q.declared_predicates]


def universal_closure(f):
    """Wrap ``f`` in universal quantifiers for its free variables (sorted by name)."""
    for v in sorted(free_variables(f), reverse=True):
        f = Forall(v, f)
    return f


# --- Answers -------------------------------------------------------------


class Answer(str, enum.Enum):
    """Binary gold label / prediction."""

    YES = "yes"
    NO = "no"

    @classmethod
    def parse(cls, value) -> "Answer":
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            return cls.YES if value else cls.NO
        key = str(value).strip().lower()
        if key in ("yes", "true"):
            return cls.YES
        if key in ("no", "false"):
            return cls.NO
        raise ValueError(f"not a yes/no answer: {value!r}")

    def flip(self) -> "Answer":
        return Answer.NO if self is Answer.YES else Answer.YES


__all__ = [
    "Variable", "Constant", "Function", "Term",
    "Atom", "Not", "And", "Or", "Xor", "Implies", "Iff", "Forall", "Exists", "Formula",
    "Premise", "Conclusion", "PredicateDecl", "Problem",
    "free_variables", "substitute", "alpha_equal", "problems_alpha_equal",
    "universal_closure", "atoms", "conjoin", "depth", "fresh_name", "Answer",
]
