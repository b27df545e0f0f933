"""Assemble all dataset variants plus a manifest describing them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..core import Answer
from .counterfactual import apply_counterfactual
from .noise import DEFAULT_K, NoiseCorpus, NoiseKind, inject_noise, noise_variant
from .sample import SCHEMA_VERSION, VARIANTS, derive_seed
from .schemas import COUNTERFACTUAL_RULES


@dataclass
class Suite:
    variants: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)


def variant_seeds(seeds: Union[int, dict, None]) -> dict:
    """Per-variant seeds from one base seed, or an explicit mapping (missing entries derived from 0)."""
    if isinstance(seeds, dict):
        return {v: int(seeds.get(v, derive_seed(0, v))) for v in VARIANTS}
    base = 0 if seeds is None else int(seeds)
    return {v: derive_seed(base, v) for v in VARIANTS}


def counterfactual_subset(dataset) -> list:
    """One sample per unique context of each counterfactual-capable rule.

    Within a rule the preferred label alternates yes, no, yes, ... across
    contexts, so the subset is balanced whenever both labels are available.
    """
    groups = {}
    for s in dataset:
        if s.rule in COUNTERFACTUAL_RULES:
            groups.setdefault(s.rule, {}).setdefault(s.context, []).append(s)
    chosen = []
    for rule in COUNTERFACTUAL_RULES:
        for i, members in enumerate(groups.get(rule, {}).values()):
            want = Answer.YES if i % 2 == 0 else Answer.NO
            chosen.append(next((s for s in members if s.label is want), members[0]))
    return chosen


def build_suite(dataset, seeds: Union[int, dict, None] = 0, corpora: Optional[dict] = None,
                k: int = DEFAULT_K, variants=VARIANTS) -> Suite:
    """Build the requested variants.

    ``corpora`` maps noise kinds to corpora; the tautological corpus is
    always available. Noise variants whose corpus is missing are skipped and
    listed in the manifest.
    """
    dataset = list(dataset)
    seeds = variant_seeds(seeds)
    available = {NoiseKind.Tautological: NoiseCorpus.tautological()}
    for kind, corpus in (corpora or {}).items():
        available[NoiseKind.parse(kind)] = corpus
    wanted = [v for v in VARIANTS if v in set(variants)]
    out = {}
    skipped = {}
    originals = [s.as_original() for s in dataset]
    counterfactuals = None
    if any(v.endswith("_C") for v in wanted):
        counterfactuals = [apply_counterfactual(s) for s in counterfactual_subset(dataset)]
    for v in wanted:
        base = counterfactuals if v.endswith("_C") else originals
        if v in ("O", "O_C"):
            out[v] = list(base)
            continue
        kind = NoiseKind.parse(v[0])
        corpus = available.get(kind)
        if corpus is None:
            skipped[v] = f"no {kind.value.lower()} corpus supplied"
            continue
        assert noise_variant(kind, v.endswith("_C")) == v
        out[v] = [inject_noise(s, corpus, k, derive_seed(seeds[v], s.base_id)) for s in base]
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "k": k,
        "seeds": {v: seeds[v] for v in wanted},
        "counts": {v: len(out[v]) for v in out},
        "labels": {v: {a.value: sum(1 for s in out[v] if s.label is a) for a in Answer} for v in out},
        "skipped": skipped,
    }
    return Suite(out, manifest)
