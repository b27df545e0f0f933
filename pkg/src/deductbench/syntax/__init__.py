"""Parsing, printing and translation for the FOL, R-FOL and TPTP syntaxes."""

from .lexer import SyntaxId
from .parser import (
    LogicSyntaxError, MissingSection, SourceDoc, parse, parse_formula, parse_tptp_unit,
    split_gloss,
)
from .printer import UnrepresentableConstruct, print_formula, print_problem, print_unit, tptp_name


def translate(doc, to, syntax=None, *, strict: bool = False) -> str:
    """Re-render a document in another syntax via the shared AST."""
    return print_problem(parse(doc, syntax), to, strict=strict)


__all__ = [
    "SyntaxId", "SourceDoc", "LogicSyntaxError", "MissingSection", "UnrepresentableConstruct",
    "parse", "parse_formula", "parse_tptp_unit", "print_formula", "print_problem",
    "print_unit", "translate", "tptp_name", "split_gloss",
]
