"""Prompt assembly for the Direct, CoT and Formal reasoning formats.

The templates live in ``templates/`` as plain text. The Formal template is
written for FOL; for R-FOL and TPTP its grammar block is swapped and its
three worked examples are re-rendered through the parser and printer, so all
three syntaxes see the same examples.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from importlib import resources

from ..syntax import SyntaxId, parse, print_problem

SEPARATOR = "----"

FEEDBACK_SUFFIX = "Please output the corrected formalisation in the same format."


class Format(str, enum.Enum):
    Direct = "Direct"
    CoT = "CoT"
    Formal = "Formal"

    @classmethod
    def parse(cls, value) -> "Format":
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown format {value!r}; expected Direct, CoT or Formal")


_GRAMMAR_LINES = (
    "logical conjunction of expr1 and expr2: expr1 {and} expr2",
    "logical disjunction of expr1 and expr2: expr1 {or} expr2",
    "logical exclusive disjunction of expr1 and expr2: expr1 {xor} expr2",
    "logical negation of expr1: {not}expr1",
    "expr1 implies expr2: expr1 {implies} expr2",
    "expr1 if and only if expr2: expr1 {iff} expr2",
    "logical universal quantification: {forall}",
    "logical existential quantification: {exists}",
)

_GLYPHS = {
    SyntaxId.FOL: dict(
        {"and": "∧", "or": "∨", "xor": "⊕", "not": "¬", "implies": "→", "iff": "↔"},
        forall="∀x", exists="∃x"),
    SyntaxId.RFOL: dict(
        {"and": "∧", "or": "∨", "xor": "⊕", "not": "¬", "implies": "→", "iff": "↔"},
        forall="∀?x", exists="∃?x"),
    SyntaxId.TPTP: dict(
        {"and": "&", "or": "|", "xor": "<~>", "not": "~", "implies": "=>", "iff": "<=>"},
        forall="![X]:", exists="?[X]:"),
}


def grammar_block(syntax) -> str:
    glyphs = _GLYPHS[SyntaxId.parse(syntax)]
    return "\n".join(f"{i}) {line.format(**glyphs)}" for i, line in enumerate(_GRAMMAR_LINES, start=1))


def _template(name: str) -> str:
    return resources.files(__package__).joinpath("templates", name).read_text(encoding="utf-8")


def _split_example(block: str) -> tuple:
    """(problem and question lines, formalisation) of one worked example."""
    head, sep, tail = block.partition("Predicates:")
    return head, sep + tail


@lru_cache(maxsize=None)
def formal_preamble(syntax) -> str:
    syntax = SyntaxId.parse(syntax)
    text = _template("formal_fol.txt")
    if syntax is SyntaxId.FOL:
        return text
    parts = text.split(SEPARATOR + "\n")
    intro = parts[0].splitlines()
    task = intro[:2]
    out = ["\n".join(task) + "\n" + grammar_block(syntax) + "\n"]
    for block in parts[1:]:
        if not block.strip():
            continue
        head, formal = _split_example(block)
        out.append(head + print_problem(parse(formal, SyntaxId.FOL), syntax, headers=True))
    return (SEPARATOR + "\n").join(out) + SEPARATOR + "\n"


def preamble(fmt, syntax=SyntaxId.FOL) -> str:
    fmt = Format.parse(fmt)
    if fmt is Format.Direct:
        return _template("direct.txt")
    if fmt is Format.CoT:
        return _template("cot.txt")
    return formal_preamble(SyntaxId.parse(syntax))


def build_prompt(sample, fmt, syntax=SyntaxId.FOL) -> str:
    """Template, worked examples, then the sample's context and question."""
    fmt = Format.parse(fmt)
    context = " ".join(sample.context)
    head = "Problem" if fmt is Format.Formal else "Context"
    return f"{preamble(fmt, syntax)}{head}: {context}\nQuestion: {sample.question}\n"


def refinement_prompt(previous_prompt: str, previous_output: str, feedback: str) -> str:
    """Previous exchange, the feedback line, and a request to correct it."""
    output = previous_output if previous_output.endswith("\n") else previous_output + "\n"
    return f"{previous_prompt}{output}Feedback: {feedback}\n{FEEDBACK_SUFFIX}\n"
