"""Accuracy, execution rate and valid accuracy, overall and per variant."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..perturb.sample import SCHEMA_VERSION, VARIANTS, PerturbedSample, Sample
from ..pipeline.run import ParseStatus


class MissingGold(KeyError):
    pass


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    execution_rate: float
    valid_accuracy: Optional[float]
    n: int
    per_variant: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "accuracy": self.accuracy,
            "execution_rate": self.execution_rate,
            "valid_accuracy": self.valid_accuracy,
            "n": self.n,
        }
        if self.per_variant:
            d["per_variant"] = {v: m.to_dict() for v, m in self.per_variant.items()}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Metrics":
        return cls(
            accuracy=d["accuracy"],
            execution_rate=d["execution_rate"],
            valid_accuracy=d.get("valid_accuracy"),
            n=d["n"],
            per_variant={v: cls.from_dict(m) for v, m in d.get("per_variant", {}).items()},
        )


def _gold_index(gold) -> tuple:
    by_key, by_base = {}, {}
    for g in gold:
        if isinstance(g, PerturbedSample):
            by_key[g.key] = g.label
        elif isinstance(g, Sample):
            by_base[g.id] = g.label
        else:
            raise TypeError(f"gold entries must be samples, got {type(g).__name__}")
    return by_key, by_base


def _label(r, by_key: dict, by_base: dict):
    if r.key in by_key:
        return by_key[r.key]
    # Noise keeps the original label, so plain samples are gold for E/L/T too.
    if not r.variant.endswith("_C") and r.sample_id in by_base:
        return by_base[r.sample_id]
    raise MissingGold(f"no gold label for {r.key}")


def _score(pairs) -> Metrics:
    n = len(pairs)
    if n == 0:
        return Metrics(0.0, 0.0, None, 0)
    correct = sum(1 for r, label in pairs if r.predicted is label)
    parsed = [(r, label) for r, label in pairs if r.parse_status is ParseStatus.Parsed]
    valid_correct = sum(1 for r, label in parsed if r.predicted is label)
    return Metrics(
        accuracy=correct / n,
        execution_rate=len(parsed) / n,
        valid_accuracy=valid_correct / len(parsed) if parsed else None,
        n=n,
    )


def evaluate(results, gold) -> Metrics:
    by_key, by_base = _gold_index(gold)
    pairs = [(r, _label(r, by_key, by_base)) for r in results]
    overall = _score(pairs)
    per_variant = {}
    for v in VARIANTS:
        subset = [(r, label) for r, label in pairs if r.variant == v]
        if subset:
            per_variant[v] = _score(subset)
    return Metrics(overall.accuracy, overall.execution_rate, overall.valid_accuracy, overall.n, per_variant)
