"""Pretty-printers for FOL, R-FOL and TPTP.

Binary connectives are always parenthesized when nested, so precedence never
matters on re-parse. Quantifier bodies are left bare when nothing follows the
quantifier (its scope runs to the end anyway); ``strict=True`` parenthesizes
compound bodies as standard TPTP requires.
"""

from __future__ import annotations

import re
from typing import Optional

from ..core import (
    And, Atom, Constant, Forall, Iff, Implies, Not, Or, Problem,
    Variable, Xor, constants_and_functions, free_variables, is_binary,
    is_quantifier,
)
from .lexer import MATH_KEYWORDS, SyntaxId


class UnrepresentableConstruct(ValueError):
    """The formula cannot be written faithfully in the requested syntax."""


_MATH_OPS = {And: "∧", Or: "∨", Xor: "⊕", Implies: "→", Iff: "↔"}
_TPTP_OPS = {And: "&", Or: "|", Xor: "<~>", Implies: "=>", Iff: "<=>"}
_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def tptp_name(name: str) -> str:
    """A TPTP atomic word: bare when it is a lower_word, single-quoted otherwise."""
    if _LOWER_WORD.match(name):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


class _Printer:
    def __init__(self, syntax: SyntaxId, strict: bool, reserved: set):
        self.syntax = syntax
        self.strict = strict
        self.tptp = syntax is SyntaxId.TPTP
        # Only FOL can confuse a bound variable with a constant, and it
        # resolves identifiers case-insensitively.
        self.reserved = {r.lower() for r in reserved} if syntax is SyntaxId.FOL else set()

    # -- names --
    def _key(self, name: str) -> str:
        return name.lower() if self.syntax is SyntaxId.FOL else name

    def binder_name(self, var: str, env: dict) -> str:
        # TPTP variables are upper-case; the math syntaxes use lower-case by
        # convention, so translations come back in the expected style.
        base = (var[0].upper() if self.tptp else var[0].lower()) + var[1:]
        taken = {self._key(n) for n in env.values()} | self.reserved
        if self.syntax is SyntaxId.FOL:
            taken |= MATH_KEYWORDS
        if self._key(base) not in taken:
            return base
        stem = base.rstrip("0123456789") or base
        i = 1
        while self._key(f"{stem}{i}") in taken:
            i += 1
        return f"{stem}{i}"

    def symbol(self, name: str) -> str:
        if self.tptp:
            return tptp_name(name)
        if name in MATH_KEYWORDS:
            raise UnrepresentableConstruct(f"symbol {name!r} is a reserved word in {self.syntax.value}")
        return name

    # -- terms --
    def term(self, t, env: dict) -> str:
        if isinstance(t, Variable):
            if t.name not in env:
                raise UnrepresentableConstruct(f"free variable {t.name!r} cannot be written in {self.syntax.value}")
            return ("?" if self.syntax is SyntaxId.RFOL else "") + env[t.name]
        if isinstance(t, Constant):
            return self.symbol(t.name)
        sep = "," if self.tptp else ", "
        return f"{self.symbol(t.name)}({sep.join(self.term(a, env) for a in t.args)})"

    # -- formulas --
    def formula(self, f, env: dict, tail: bool = True) -> str:
        if isinstance(f, Atom):
            if self.tptp:
                if not f.args:
                    return tptp_name(f.pred)
                return f"{tptp_name(f.pred)}({','.join(self.term(a, env) for a in f.args)})"
            return f"{self.symbol(f.pred)}({', '.join(self.term(a, env) for a in f.args)})"
        if isinstance(f, Not):
            neg = "~" if self.tptp else "¬"
            return neg + self.operand(f.body, env, tail)
        if is_binary(f):
            ops = _TPTP_OPS if self.tptp else _MATH_OPS
            left = self.operand(f.left, env, tail=False)
            right = self.operand(f.right, env, tail)
            return f"{left} {ops[type(f)]} {right}"
        return self.quantified(f, env)

    def operand(self, f, env: dict, tail: bool) -> str:
        if is_binary(f) or (is_quantifier(f) and not tail):
            return f"({self.formula(f, env, True)})"
        return self.formula(f, env, tail)

    def quantified(self, f, env: dict) -> str:
        kind = type(f)
        names = []
        env = dict(env)
        while type(f) is kind:
            name = self.binder_name(f.var, env)
            env[f.var] = name
            names.append(name)
            f = f.body
            if not self.tptp:
                break
        if self.tptp:
            head = ("!" if kind is Forall else "?") + "[" + ",".join(names) + "]:"
        else:
            glyph = "∀" if kind is Forall else "∃"
            prefix = "?" if self.syntax is SyntaxId.RFOL else ""
            head = f"{glyph}{prefix}{names[0]} "
        if self.strict and is_binary(f):
            return head + f"({self.formula(f, env, True)})"
        return head + self.formula(f, env, True)


def _reserved(formulas) -> set:
    names = set()
    for f in formulas:
        consts, funcs = constants_and_functions(f)
        names |= consts | {n for n, _ in funcs}
    return names


def print_formula(f, syntax=SyntaxId.FOL, *, strict: bool = False) -> str:
    """Render one closed formula (R-FOL also accepts free variables)."""
    syntax = SyntaxId.parse(syntax)
    printer = _Printer(syntax, strict, _reserved([f]))
    env = {}
    if syntax is SyntaxId.RFOL:
        env = {v: v for v in free_variables(f)}
    return printer.formula(f, env)


def _decl_args(arity: int, syntax: SyntaxId) -> str:
    if arity == 0:
        return "" if syntax is SyntaxId.TPTP else "()"
    base = ["x", "y", "z"] if arity <= 3 else [f"x{i}" for i in range(1, arity + 1)]
    names = base[:arity]
    if syntax is SyntaxId.TPTP:
        names = [n.upper() for n in names]
    elif syntax is SyntaxId.RFOL:
        names = ["?" + n for n in names]
    sep = "," if syntax is SyntaxId.TPTP else ", "
    return "(" + sep.join(names) + ")"


def _with_gloss(text: str, gloss: str) -> str:
    return f"{text} ::: {gloss}" if gloss else text


def print_unit(name: str, role: str, f, *, strict: bool = False) -> str:
    return f"fof({tptp_name(name)},{role},{print_formula(f, SyntaxId.TPTP, strict=strict)})."


CONCLUSION_LABEL = "goal"


def print_problem(p: Problem, syntax=SyntaxId.FOL, *, strict: bool = False,
                  headers: Optional[bool] = None) -> str:
    """Render a Problem as a document that :func:`parse` reads back.

    FOL and R-FOL use the Predicates/Premises/Conclusion template whenever
    there is a conclusion or a declaration; TPTP needs headers only for
    declarations, since unit roles already separate premises from the goal.
    ``headers`` forces the choice either way.
    """
    syntax = SyntaxId.parse(syntax)
    tptp = syntax is SyntaxId.TPTP

    def premise_line(prem) -> str:
        if tptp:
            return _with_gloss(print_unit(prem.label, "axiom", prem.formula, strict=strict), prem.gloss)
        return _with_gloss(print_formula(prem.formula, syntax, strict=strict), prem.gloss)

    def conclusion_line(c) -> str:
        if tptp:
            return _with_gloss(print_unit(CONCLUSION_LABEL, "conjecture", c.formula, strict=strict), c.gloss)
        return _with_gloss(print_formula(c.formula, syntax, strict=strict), c.gloss)

    if headers is None:
        headers = bool(p.declared_predicates) or (not tptp and p.conclusion is not None)
    lines = []
    if headers:
        if p.declared_predicates:
            lines.append("Predicates:")
            for d in p.declared_predicates:
                name = tptp_name(d.name) if tptp else d.name
                lines.append(_with_gloss(name + _decl_args(d.arity, syntax), d.gloss))
        lines.append("Premises:")
    lines.extend(premise_line(prem) for prem in p.premises)
    if p.conclusion is not None:
        if headers:
            lines.append("Conclusion:")
        lines.append(conclusion_line(p.conclusion))
    return "\n".join(lines) + ("\n" if lines else "")
