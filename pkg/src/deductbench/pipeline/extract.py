"""Pull answers and logical forms out of free-form model output."""

from __future__ import annotations

import re

from ..core import Answer, Problem
from ..syntax import MissingSection, SourceDoc, SyntaxId, parse
from .prompts import Format


class ExtractionFailure(ValueError):
    pass


# Word boundaries keep "not", "know" or "yesterday" from counting as answers.
_DIRECT = re.compile(r"\b(?P<answer>yes|no)\b", re.IGNORECASE)
_COT = re.compile(r"answer\s*:\s*(?P<answer>yes|no)\b", re.IGNORECASE)


def extract_answer(response: str, fmt) -> Answer:
    """Direct: the first standalone yes/no. CoT: the first yes/no after ``answer:``."""
    fmt = Format.parse(fmt)
    if fmt is Format.Formal:
        raise ValueError("Formal responses carry logical forms, not answers")
    m = (_DIRECT if fmt is Format.Direct else _COT).search(response)
    if m is None:
        raise ExtractionFailure("no yes/no answer found" if fmt is Format.Direct else "no 'Answer: yes/no' line found")
    return Answer.parse(m.group("answer"))


def extract_problem(response: str, syntax) -> Problem:
    """Parse the Predicates/Premises/Conclusion blocks of a response.

    Text before the first header is ignored, so chatty preambles are fine.
    Both Premises and Conclusion must be present.
    """
    syntax = SyntaxId.parse(syntax)
    doc = SourceDoc.of(response, syntax)
    if "Premises" not in doc.section_map:
        raise MissingSection("Premises")
    problem = parse(doc)
    if problem.conclusion is None:
        raise MissingSection("Conclusion")
    return problem
