"""One sample through one reasoning format, with optional error recovery."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Optional

from ..core import Answer
from ..lint import LintConfig, LintWarning, lint, render_warnings
from ..perturb.sample import Sample, derive_seed
from ..prover import DEFAULT_BUDGET, ProverBudget, decide
from ..syntax import LogicSyntaxError, SyntaxId
from .backends import BackendRequest
from .extract import ExtractionFailure, extract_answer, extract_problem
from .prompts import Format, build_prompt, refinement_prompt

ERROR_TYPE_FEEDBACK = "parsing error"


class Recovery(str, enum.Enum):
    NoRecovery = "NoRecovery"
    ErrorType = "ErrorType"
    ErrorMessage = "ErrorMessage"
    Warning = "Warning"

    @classmethod
    def parse(cls, value) -> "Recovery":
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown recovery strategy {value!r}")


class ParseStatus(str, enum.Enum):
    NotApplicable = "NotApplicable"
    Parsed = "Parsed"
    Failed = "Failed"


@dataclass(frozen=True)
class RunConfig:
    format: Format = Format.Formal
    syntax: SyntaxId = SyntaxId.FOL
    recovery: Recovery = Recovery.NoRecovery
    max_refinements: int = 3
    temperature: float = 1.0
    fallback_seed: int = 0
    backend: str = "oracle"
    prover_budget: ProverBudget = DEFAULT_BUDGET
    lint: LintConfig = LintConfig()

    def __post_init__(self):
        object.__setattr__(self, "format", Format.parse(self.format))
        object.__setattr__(self, "syntax", SyntaxId.parse(self.syntax))
        object.__setattr__(self, "recovery", Recovery.parse(self.recovery))
        if self.max_refinements < 0:
            raise ValueError("max_refinements must be >= 0")
        if self.recovery is not Recovery.NoRecovery and self.format is not Format.Formal:
            raise ValueError("error recovery applies to the Formal format only")

    def to_dict(self) -> dict:
        return {
            "format": self.format.value,
            "syntax": self.syntax.value,
            "recovery": self.recovery.value,
            "max_refinements": self.max_refinements,
            "temperature": self.temperature,
            "fallback_seed": self.fallback_seed,
            "backend": self.backend,
            "prover_budget": self.prover_budget.to_dict(),
            "lint": {
                "similarity_threshold": self.lint.similarity_threshold,
                "min_length": self.lint.min_length,
                "case_insensitive": self.lint.case_insensitive,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        if "prover_budget" in known:
            known["prover_budget"] = ProverBudget.from_dict(known["prover_budget"])
        if "lint" in known:
            known["lint"] = LintConfig(**known["lint"])
        return cls(**known)


@dataclass(frozen=True)
class Exchange:
    """One backend call: what was sent, what came back, what went wrong."""

    prompt: str
    response: str
    diagnostic: str = ""
    attempt: int = 0

    def to_dict(self) -> dict:
        return {"attempt": self.attempt, "prompt": self.prompt, "response": self.response,
                "diagnostic": self.diagnostic}

    @classmethod
    def from_dict(cls, d: dict) -> "Exchange":
        return cls(d.get("prompt", ""), d.get("response", ""), d.get("diagnostic", ""), int(d.get("attempt", 0)))


@dataclass(frozen=True)
class SampleResult:
    sample_id: str
    variant: str
    predicted: Answer
    parse_status: ParseStatus
    used_fallback: bool = False
    refinement_rounds: int = 0
    warnings: tuple = ()
    transcript: tuple = ()
    proof_status: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "predicted", Answer.parse(self.predicted))
        object.__setattr__(self, "parse_status", ParseStatus(self.parse_status))
        if self.used_fallback and self.parse_status is not ParseStatus.Failed:
            raise ValueError("a fallback answer implies a failed parse")

    @property
    def key(self) -> str:
        return f"{self.variant}/{self.sample_id}"

    def to_dict(self, transcript: bool = True) -> dict:
        d = {
            "sample_id": self.sample_id,
            "variant": self.variant,
            "predicted": self.predicted.value,
            "parse_status": self.parse_status.value,
            "used_fallback": self.used_fallback,
            "refinement_rounds": self.refinement_rounds,
            "warnings": [w.to_dict() for w in self.warnings],
            "proof_status": self.proof_status,
        }
        if transcript:
            d["transcript"] = [e.to_dict() for e in self.transcript]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SampleResult":
        return cls(
            sample_id=str(d["sample_id"]),
            variant=d.get("variant", "O"),
            predicted=d["predicted"],
            parse_status=d["parse_status"],
            used_fallback=bool(d.get("used_fallback", False)),
            refinement_rounds=int(d.get("refinement_rounds", 0)),
            warnings=tuple(LintWarning.from_dict(w) for w in d.get("warnings", ())),
            transcript=tuple(Exchange.from_dict(e) for e in d.get("transcript", ())),
            proof_status=d.get("proof_status"),
        )


def fallback_answer(seed: int, key: str) -> Answer:
    """Seeded coin flip, derived per sample so execution order does not matter."""
    return random.Random(derive_seed(seed, key)).choice([Answer.YES, Answer.NO])


def _as_perturbed(s):
    return s.as_original() if isinstance(s, Sample) else s


def _request(cfg: RunConfig, prompt: str, key: str, attempt: int) -> BackendRequest:
    return BackendRequest(prompt, cfg.temperature, metadata={
        "sample_id": key, "attempt": attempt, "format": cfg.format.value, "syntax": cfg.syntax.value,
    })


def _proof_status(outcome) -> str:
    return outcome.status if outcome.entailed else outcome.reason.value


def run_sample(s, cfg: RunConfig, backend) -> SampleResult:
    s = _as_perturbed(s)
    key = s.key
    prompt = build_prompt(s, cfg.format, cfg.syntax)

    if cfg.format is not Format.Formal:
        reply = backend.complete(_request(cfg, prompt, key, 0)).text
        try:
            answer = extract_answer(reply, cfg.format)
        except ExtractionFailure as exc:
            return SampleResult(s.base_id, s.variant, fallback_answer(cfg.fallback_seed, key),
                                ParseStatus.Failed, True, 0, (), (Exchange(prompt, reply, str(exc)),))
        return SampleResult(s.base_id, s.variant, answer, ParseStatus.Parsed, False, 0, (),
                            (Exchange(prompt, reply),))

    transcript = []
    rounds = 0
    warned = None  # problem and warnings from a warnings-only round
    while True:
        reply = backend.complete(_request(cfg, prompt, key, rounds)).text
        problem, error, warnings = None, None, ()
        try:
            problem = extract_problem(reply, cfg.syntax)
        except LogicSyntaxError as exc:
            error = exc
        if problem is not None and cfg.recovery is Recovery.Warning:
            warnings = tuple(lint(problem, cfg.lint))
        diagnostic = str(error) if error else render_warnings(warnings)
        transcript.append(Exchange(prompt, reply, diagnostic, rounds))

        can_retry = cfg.recovery is not Recovery.NoRecovery and rounds < cfg.max_refinements
        if problem is not None and (not warnings or warned is not None or not can_retry):
            break
        if problem is None and not can_retry:
            if warned is not None:
                problem, warnings = warned
                break
            return SampleResult(s.base_id, s.variant, fallback_answer(cfg.fallback_seed, key),
                                ParseStatus.Failed, True, rounds, (), tuple(transcript))
        if problem is not None:
            warned = (problem, warnings)
            feedback = render_warnings(warnings)
        elif cfg.recovery is Recovery.ErrorType:
            feedback = ERROR_TYPE_FEEDBACK
        else:
            feedback = str(error)
        prompt = refinement_prompt(prompt, reply, feedback)
        rounds += 1

    decision = decide(problem, cfg.prover_budget, diagnose=False)
    return SampleResult(s.base_id, s.variant, decision.answer, ParseStatus.Parsed, False, rounds,
                        warnings, tuple(transcript), _proof_status(decision.outcome))
