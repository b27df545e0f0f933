"""Dataset records and their JSON form."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from typing import Optional

from ..core import Answer, Problem
from ..syntax import SyntaxId, parse, print_problem

SCHEMA_VERSION = 1

RULES = (
    "modus_ponens",
    "modus_tollens",
    "hypothetical_syllogism",
    "disjunctive_syllogism",
    "constructive_dilemma",
    "destructive_dilemma",
    "bidirectional_dilemma",
    "existential_generalization",
    "universal_instantiation",
)

VARIANTS = ("O", "E", "L", "T", "O_C", "E_C", "L_C", "T_C")


def derive_seed(seed: int, key: str) -> int:
    """Stable 64-bit seed for one sample, independent of processing order."""
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class NegationSpan:
    """Replace ``context[sentence][start:end]`` by ``replacement``."""

    sentence: int
    start: int
    end: int
    replacement: str

    def to_list(self) -> list:
        return [self.sentence, self.start, self.end, self.replacement]

    @classmethod
    def from_value(cls, v) -> "NegationSpan":
        if isinstance(v, NegationSpan):
            return v
        if isinstance(v, dict):
            return cls(int(v["sentence"]), int(v["start"]), int(v["end"]), str(v["replacement"]))
        sentence, start, end, replacement = v
        return cls(int(sentence), int(start), int(end), str(replacement))


def problem_to_json(p: Optional[Problem]) -> Optional[dict]:
    if p is None:
        return None
    return {"syntax": SyntaxId.FOL.value, "text": print_problem(p, SyntaxId.FOL)}


def problem_from_json(d) -> Optional[Problem]:
    if d is None:
        return None
    if isinstance(d, str):
        return parse(d, SyntaxId.FOL)
    return parse(d["text"], SyntaxId.parse(d.get("syntax", "fol")))


@dataclass(frozen=True)
class Sample:
    id: str
    context: tuple
    question: str
    label: Answer
    rule: str
    gold_problem: Optional[Problem] = None
    negation_spans: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))
        object.__setattr__(self, "label", Answer.parse(self.label))
        object.__setattr__(self, "negation_spans", tuple(NegationSpan.from_value(s) for s in self.negation_spans))
        if not self.id:
            raise ValueError("sample id must be non-empty")
        if not self.context:
            raise ValueError(f"sample {self.id}: context must be non-empty")
        if self.rule not in RULES:
            raise ValueError(f"sample {self.id}: unknown rule {self.rule!r}")

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "context": list(self.context),
            "question": self.question,
            "label": self.label.value,
            "rule": self.rule,
        }
        if self.gold_problem is not None:
            d["gold_problem"] = problem_to_json(self.gold_problem)
        if self.negation_spans:
            d["negation_spans"] = [s.to_list() for s in self.negation_spans]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Sample":
        return cls(
            id=str(d["id"]),
            context=tuple(d["context"]),
            question=d["question"],
            label=d["label"],
            rule=d["rule"],
            gold_problem=problem_from_json(d.get("gold_problem")),
            negation_spans=tuple(d.get("negation_spans") or ()),
        )

    def as_original(self) -> "PerturbedSample":
        return PerturbedSample(
            base_id=self.id, variant="O", context=self.context, label=self.label,
            question=self.question, rule=self.rule, gold_problem=self.gold_problem,
        )


@dataclass(frozen=True)
class Provenance:
    seed: Optional[int] = None
    injected: tuple = ()
    negated: bool = False

    def to_dict(self) -> dict:
        return {"seed": self.seed, "injected": list(self.injected), "negated": self.negated}

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        return cls(d.get("seed"), tuple(d.get("injected", ())), bool(d.get("negated", False)))


@dataclass(frozen=True)
class PerturbedSample:
    base_id: str
    variant: str
    context: tuple
    label: Answer
    question: str
    rule: str
    provenance: Provenance = field(default_factory=Provenance)
    gold_problem: Optional[Problem] = None

    def __post_init__(self):
        object.__setattr__(self, "context", tuple(self.context))
        object.__setattr__(self, "label", Answer.parse(self.label))
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def key(self) -> str:
        return f"{self.variant}/{self.base_id}"

    def with_(self, **changes) -> "PerturbedSample":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "base_id": self.base_id,
            "variant": self.variant,
            "context": list(self.context),
            "question": self.question,
            "label": self.label.value,
            "rule": self.rule,
            "provenance": self.provenance.to_dict(),
        }
        if self.gold_problem is not None:
            d["gold_problem"] = problem_to_json(self.gold_problem)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PerturbedSample":
        return cls(
            base_id=str(d["base_id"]),
            variant=d["variant"],
            context=tuple(d["context"]),
            label=d["label"],
            question=d["question"],
            rule=d["rule"],
            provenance=Provenance.from_dict(d.get("provenance", {})),
            gold_problem=problem_from_json(d.get("gold_problem")),
        )
