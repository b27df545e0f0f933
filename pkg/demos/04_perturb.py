"""Build noisy and counterfactual variants of the shipped fixture."""

from __future__ import annotations

from deductbench.harness import fixture_path, load_dataset
from deductbench.perturb import NoiseCorpus, apply_counterfactual, build_suite, inject_noise
from deductbench.prover import decide

dataset = load_dataset(fixture_path())
sample = dataset[0]

noisy = inject_noise(sample, NoiseCorpus.tautological(), k=2, seed=0)
print("noisy context:")
for sentence in noisy.context:
    print("  ", sentence)
print("label kept:", noisy.label.value)

flipped = apply_counterfactual(sample)
print("counterfactual:", flipped.context[0])
print("label:", sample.label.value, "->", flipped.label.value)
print("prover on the edited gold problem:", decide(flipped.gold_problem).answer.value)

suite = build_suite(dataset, seeds=0)
print("suite counts:", suite.manifest["counts"])
print("skipped:", suite.manifest["skipped"])
