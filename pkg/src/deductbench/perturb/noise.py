"""Distractor sentences prepended to a reasoning context."""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass
from importlib import resources
from typing import Union

from .sample import PerturbedSample, Provenance, Sample

NOISE_SIZES = (1, 2, 4)
DEFAULT_K = 4

TAUTOLOGY_FILE = "tautologies.txt"
TAUTOLOGY_SHA256 = "9ffd964f5c7474eb3b7dfbdcb312edf0bf92d05fec9128b786724b674b85b867"
TAUTOLOGY_COUNT = 22


class NoiseKind(str, enum.Enum):
    Encyclopedic = "Encyclopedic"
    Logical = "Logical"
    Tautological = "Tautological"

    @property
    def letter(self) -> str:
        return self.value[0]

    @classmethod
    def parse(cls, value) -> "NoiseKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for kind in cls:
            if key in (kind.value.lower(), kind.letter.lower()):
                return kind
        raise ValueError(f"unknown noise kind {value!r}")


class CorpusTooSmall(ValueError):
    pass


class CorpusChecksumError(ValueError):
    pass


def tautology_bytes() -> bytes:
    return resources.files(__package__).joinpath("data", TAUTOLOGY_FILE).read_bytes()


def _tautologies() -> tuple:
    data = tautology_bytes()
    if hashlib.sha256(data).hexdigest() != TAUTOLOGY_SHA256:
        raise CorpusChecksumError("shipped tautology corpus does not match its checksum")
    return tuple(data.decode("utf-8").splitlines())


@dataclass(frozen=True)
class NoiseCorpus:
    kind: NoiseKind
    sentences: tuple

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind.parse(self.kind))
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if not self.sentences:
            raise ValueError(f"{self.kind.value} corpus is empty")
        for s in self.sentences:
            if not s.endswith("."):
                raise ValueError(f"corpus sentence does not end with a period: {s!r}")
        if self.kind is NoiseKind.Tautological and self.sentences != _tautologies():
            raise ValueError("the tautological corpus must be exactly the shipped sentences")

    @classmethod
    def tautological(cls) -> "NoiseCorpus":
        return cls(NoiseKind.Tautological, _tautologies())

    @classmethod
    def from_file(cls, kind, path) -> "NoiseCorpus":
        """One sentence per line; blank lines are ignored."""
        with open(path, encoding="utf-8") as fh:
            sentences = [line.strip() for line in fh if line.strip()]
        return cls(kind, tuple(sentences))


def noise_variant(kind: NoiseKind, counterfactual: bool) -> str:
    return kind.letter + ("_C" if counterfactual else "")


def inject_noise(s: Union[Sample, PerturbedSample], corpus: NoiseCorpus, k: int = DEFAULT_K,
                 seed: int = 0) -> PerturbedSample:
    """Prepend ``k`` distinct corpus sentences, in sampled order, to the context.

    Applied to a counterfactual sample the result is the matching ``*_C``
    variant and keeps the counterfactual label and gold problem.
    """
    if k not in NOISE_SIZES:
        raise ValueError(f"k must be one of {NOISE_SIZES}, got {k}")
    if len(corpus.sentences) < k:
        raise CorpusTooSmall(f"{corpus.kind.value} corpus has {len(corpus.sentences)} sentences, need {k}")
    base = s.as_original() if isinstance(s, Sample) else s
    if base.variant not in ("O", "O_C"):
        raise ValueError(f"noise is injected into O or O_C samples, not {base.variant}")
    picked = tuple(random.Random(seed).sample(range(len(corpus.sentences)), k))
    negated = base.variant == "O_C"
    return base.with_(
        variant=noise_variant(corpus.kind, negated),
        context=tuple(corpus.sentences[i] for i in picked) + base.context,
        provenance=Provenance(seed, picked, negated),
    )
