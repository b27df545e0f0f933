"""Noise and counterfactual perturbations of deductive reasoning samples."""

from .counterfactual import MissingAnnotation, SpanOutOfRange, apply_counterfactual, apply_spans
from .noise import (
    DEFAULT_K, NOISE_SIZES, TAUTOLOGY_SHA256, CorpusTooSmall, NoiseCorpus, NoiseKind,
    inject_noise, tautology_bytes,
)
from .sample import (
    RULES, SCHEMA_VERSION, VARIANTS, NegationSpan, PerturbedSample, Provenance, Sample,
    derive_seed,
)
from .schemas import (
    COUNTERFACTUAL_RULES, SchemaMismatch, SchemaPair, UnsupportedRule, counterfactual_problem,
    instantiate, negate_schema,
)
from .suite import Suite, build_suite, counterfactual_subset, variant_seeds

__all__ = [
    "Sample", "PerturbedSample", "Provenance", "NegationSpan", "RULES", "VARIANTS",
    "SCHEMA_VERSION", "derive_seed",
    "NoiseCorpus", "NoiseKind", "inject_noise", "CorpusTooSmall", "NOISE_SIZES", "DEFAULT_K",
    "TAUTOLOGY_SHA256", "tautology_bytes",
    "negate_schema", "instantiate", "counterfactual_problem", "SchemaPair", "UnsupportedRule",
    "SchemaMismatch", "COUNTERFACTUAL_RULES",
    "apply_counterfactual", "apply_spans", "SpanOutOfRange", "MissingAnnotation",
    "build_suite", "Suite", "counterfactual_subset", "variant_seeds",
]
