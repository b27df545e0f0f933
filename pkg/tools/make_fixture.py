"""Regenerate the 40-sample annotated fixture shipped with the package.

Eight counterfactual-capable rules times five scenarios. Each sample carries
its gold FOL problem and the single text edit that realises the rule's
counterfactual negation. Run from the repository root:

    python3 tools/make_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "deductbench" / "data" / "fixture.jsonl"

# (person, [(predicate, affirmative phrase, negated phrase)] for p, q, r, s)
SCENARIOS = [
    ("Jack", [
        ("drinkWater", "drinks water", "does not drink water"),
        ("hydrated", "is hydrated", "is not hydrated"),
        ("exercise", "exercises", "does not exercise"),
        ("fit", "is fit", "is not fit"),
    ]),
    ("Mia", [
        ("studyHard", "studies hard", "does not study hard"),
        ("passExam", "passes the exam", "does not pass the exam"),
        ("practicePiano", "practices the piano", "does not practice the piano"),
        ("playWell", "plays well", "does not play well"),
    ]),
    ("Liam", [
        ("readBooks", "reads books", "does not read books"),
        ("knowledgeable", "is knowledgeable", "is not knowledgeable"),
        ("travelAbroad", "travels abroad", "does not travel abroad"),
        ("speakLanguages", "speaks many languages", "does not speak many languages"),
    ]),
    ("Emma", [
        ("plantSeeds", "plants seeds", "does not plant seeds"),
        ("growVegetables", "grows vegetables", "does not grow vegetables"),
        ("cookDinner", "cooks dinner", "does not cook dinner"),
        ("eatWell", "eats well", "does not eat well"),
    ]),
    ("Noah", [
        ("leaveEarly", "leaves early", "does not leave early"),
        ("catchTrain", "catches the train", "does not catch the train"),
        ("saveMoney", "saves money", "does not save money"),
        ("buyHouse", "buys a house", "does not buy a house"),
    ]),
]


def build(rule, name, preds):
    (p, P, nP), (q, Q, nQ), (r, R, nR), (s, S, nS) = preds
    c = name.lower()
    if rule == "modus_ponens":
        ctx = [f"If a person {P}, then that person {Q}.", f"{name} {P}."]
        gold = [f"∀x ({p}(x) → {q}(x))", f"{p}({c})"]
        valid, vq = f"{q}({c})", f"{name} {Q}"
        negative, nq = f"¬{q}({c})", f"{name} {nQ}"
        edit = (0, Q, nQ)
    elif rule == "modus_tollens":
        ctx = [f"If a person {P}, then that person {Q}.", f"{name} {nQ}."]
        gold = [f"∀x ({p}(x) → {q}(x))", f"¬{q}({c})"]
        valid, vq = f"¬{p}({c})", f"{name} {nP}"
        negative, nq = f"{p}({c})", f"{name} {P}"
        edit = (0, P, nP)
    elif rule == "hypothetical_syllogism":
        ctx = [f"If a person {P}, then that person {Q}.", f"If a person {Q}, then that person {R}."]
        gold = [f"∀x ({p}(x) → {q}(x))", f"∀x ({q}(x) → {r}(x))"]
        valid, vq = f"{p}({c}) → {r}({c})", f"if {name} {P}, then {name} {R}"
        negative, nq = f"¬{p}({c}) → {r}({c})", f"if {name} {nP}, then {name} {R}"
        edit = (0, P, nP)
    elif rule == "disjunctive_syllogism":
        ctx = [f"Everyone either {P} or {Q}.", f"{name} {nP}."]
        gold = [f"∀x ({p}(x) ∨ {q}(x))", f"¬{p}({c})"]
        valid, vq = f"{q}({c})", f"{name} {Q}"
        negative, nq = f"¬{q}({c})", f"{name} {nQ}"
        edit = (0, Q, nQ)
    elif rule == "constructive_dilemma":
        ctx = [f"If a person {P}, then that person {Q}.", f"If a person {R}, then that person {S}.", f"{name} {P} or {R}."]
        gold = [f"∀x ({p}(x) → {q}(x))", f"∀x ({r}(x) → {s}(x))", f"{p}({c}) ∨ {r}({c})"]
        valid, vq = f"{q}({c}) ∨ {s}({c})", f"{name} {Q} or {S}"
        negative, nq = f"¬{q}({c}) ∨ {s}({c})", f"{name} {nQ} or {S}"
        edit = (0, Q, nQ)
    elif rule == "bidirectional_dilemma":
        ctx = [f"If a person {P}, then that person {Q}.", f"If a person {R}, then that person {S}.", f"{name} {P} or {nS}."]
        gold = [f"∀x ({p}(x) → {q}(x))", f"∀x ({r}(x) → {s}(x))", f"{p}({c}) ∨ ¬{s}({c})"]
        valid, vq = f"{q}({c}) ∨ ¬{r}({c})", f"{name} {Q} or {nR}"
        negative, nq = f"¬{q}({c}) ∨ ¬{r}({c})", f"{name} {nQ} or {nR}"
        edit = (0, Q, nQ)
    elif rule == "existential_generalization":
        ctx = [f"{name} {P}."]
        gold = [f"{p}({c})"]
        valid, vq = f"∃x {p}(x)", f"someone {P}"
        negative, nq = f"∃x ¬{p}(x)", f"someone {nP}"
        edit = (0, P, nP)
    elif rule == "universal_instantiation":
        ctx = [f"Everyone {P}."]
        gold = [f"∀x {p}(x)"]
        valid, vq = f"{p}({c})", f"{name} {P}"
        negative, nq = f"¬{p}({c})", f"{name} {nP}"
        edit = (0, P, nP)
    else:
        raise ValueError(rule)
    return ctx, gold, (valid, vq), (negative, nq), edit


RULES = [
    "modus_ponens", "modus_tollens", "hypothetical_syllogism", "disjunctive_syllogism",
    "constructive_dilemma", "bidirectional_dilemma", "existential_generalization",
    "universal_instantiation",
]


def main():
    lines = []
    for rule in RULES:
        for i, (name, preds) in enumerate(SCENARIOS):
            ctx, gold, valid, negative, (sent, old, new) = build(rule, name, preds)
            formula, phrase = valid if i % 2 == 0 else negative
            label = "yes" if i % 2 == 0 else "no"
            start = ctx[sent].index(old)
            used = {p for p, _, _ in preds if any(f"{p}(" in g for g in gold + [formula])}
            decls = [f"{p}(x) ::: x {P}" for p, P, _ in preds if p in used]
            text = "\n".join(
                ["Predicates:", *decls, "Premises:"]
                + [f"{g} ::: {sentence}" for g, sentence in zip(gold, ctx)]
                + ["Conclusion:", f"{formula} ::: {phrase[0].upper()}{phrase[1:]}."]
            ) + "\n"
            lines.append({
                "schema_version": 1,
                "id": f"{rule}-{i}",
                "context": ctx,
                "question": f"Does this imply that {phrase}?",
                "label": label,
                "rule": rule,
                "gold_problem": {"syntax": "fol", "text": text},
                "negation_spans": [[sent, start, start + len(old), new]],
            })
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        for rec in lines:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {len(lines)} samples to {OUT}")


if __name__ == "__main__":
    main()
