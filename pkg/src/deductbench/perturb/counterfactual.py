"""Counterfactual variants: replay annotated text edits and negate the gold form."""

from __future__ import annotations

from dataclasses import replace

from ..core import Problem
from .sample import PerturbedSample, Provenance, Sample
from .schemas import COUNTERFACTUAL_RULES, UnsupportedRule, counterfactual_problem


class SpanOutOfRange(ValueError):
    pass


class MissingAnnotation(ValueError):
    pass


def apply_spans(context: tuple, spans) -> tuple:
    """Apply non-overlapping replacements given against the original sentences."""
    sentences = list(context)
    by_sentence = {}
    for span in spans:
        if not 0 <= span.sentence < len(sentences):
            raise SpanOutOfRange(f"sentence index {span.sentence} outside context of {len(sentences)}")
        text = sentences[span.sentence]
        if not 0 <= span.start <= span.end <= len(text):
            raise SpanOutOfRange(
                f"span {span.start}:{span.end} outside sentence {span.sentence} of length {len(text)}")
        by_sentence.setdefault(span.sentence, []).append(span)
    for idx, group in by_sentence.items():
        group.sort(key=lambda s: (s.start, s.end))
        for a, b in zip(group, group[1:]):
            if b.start < a.end:
                raise SpanOutOfRange(f"overlapping spans in sentence {idx}")
        text = sentences[idx]
        for span in reversed(group):
            text = text[:span.start] + span.replacement + text[span.end:]
        sentences[idx] = text
    return tuple(sentences)


def _carry_glosses(old: Problem, new: Problem, edited: dict) -> Problem:
    """Give rewritten premises the edited version of their original sentence gloss."""
    premises = []
    for before, after in zip(old.premises, new.premises):
        if not after.gloss and before.gloss in edited:
            after = replace(after, gloss=edited[before.gloss])
        premises.append(after)
    return replace(new, premises=tuple(premises))


def apply_counterfactual(s: Sample, *, require_gold: bool = False) -> PerturbedSample:
    """The O_C variant of ``s``: edited context, flipped label, negated gold form."""
    if s.rule not in COUNTERFACTUAL_RULES:
        raise UnsupportedRule(f"no counterfactual schema for rule {s.rule!r}")
    if not s.negation_spans:
        raise MissingAnnotation(f"sample {s.id} has no negation spans")
    if require_gold and s.gold_problem is None:
        raise MissingAnnotation(f"sample {s.id} has no gold problem")
    context = apply_spans(s.context, s.negation_spans)
    gold = None
    if s.gold_problem is not None:
        gold = _carry_glosses(s.gold_problem, counterfactual_problem(s.gold_problem, s.rule),
                              dict(zip(s.context, context)))
    return PerturbedSample(
        base_id=s.id,
        variant="O_C",
        context=context,
        label=s.label.flip(),
        question=s.question,
        rule=s.rule,
        provenance=Provenance(None, (), True),
        gold_problem=gold,
    )
