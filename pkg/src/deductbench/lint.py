"""Advisory warnings for suspicious formalisations.

Three checks: symbols used only in the conclusion, predicates used with
several arities, and near-duplicate symbol names. Warnings never block
proving; the pipeline feeds them back to the model as soft criticism.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .core import Problem, atoms, constants_and_functions


class WarningKind(str, enum.Enum):
    QueryOnlySymbol = "QueryOnlySymbol"
    ArityMismatch = "ArityMismatch"
    SimilarNames = "SimilarNames"


_KIND_ORDER = {k: i for i, k in enumerate(WarningKind)}


@dataclass(frozen=True)
class LintWarning:
    kind: WarningKind
    subjects: tuple
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "kind", WarningKind(self.kind))
        object.__setattr__(self, "subjects", tuple(self.subjects))
        if not self.subjects:
            raise ValueError("a warning needs at least one subject")

    def render(self) -> str:
        return f"WARN {self.kind.value}: {', '.join(self.subjects)} — {self.detail}"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "subjects": list(self.subjects), "detail": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> "LintWarning":
        return cls(WarningKind(d["kind"]), tuple(d["subjects"]), d["detail"])


@dataclass(frozen=True)
class LintConfig:
    similarity_threshold: int = 1
    min_length: int = 4
    case_insensitive: bool = True


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert, delete and substitute costs."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def _predicates(formulas) -> set:
    return {(a.pred, len(a.args)) for f in formulas for a in atoms(f)}


def _individuals(formulas) -> set:
    names = set()
    for f in formulas:
        consts, funcs = constants_and_functions(f)
        names |= consts | {n for n, _ in funcs}
    return names


def _query_only(p: Problem) -> list:
    if p.conclusion is None:
        return []
    context = p.premise_formulas
    ctx_preds = {name for name, _ in _predicates(context)}
    ctx_inds = _individuals(context)
    goal = [p.conclusion.formula]
    out = []
    for name in sorted({n for n, _ in _predicates(goal)} - ctx_preds):
        out.append(LintWarning(
            WarningKind.QueryOnlySymbol, (name,),
            f"predicate '{name}' appears in the conclusion but in no premise"))
    for name in sorted(_individuals(goal) - ctx_inds):
        out.append(LintWarning(
            WarningKind.QueryOnlySymbol, (name,),
            f"individual '{name}' appears in the conclusion but in no premise"))
    return out


def _arity_mismatch(p: Problem) -> list:
    arities = {}
    for name, arity in _predicates(p.formulas()):
        arities.setdefault(name, set()).add(arity)
    for d in p.declared_predicates:
        arities.setdefault(d.name, set()).add(d.arity)
    out = []
    for name in sorted(arities):
        if len(arities[name]) > 1:
            shown = ", ".join(str(a) for a in sorted(arities[name]))
            out.append(LintWarning(
                WarningKind.ArityMismatch, (name,),
                f"predicate '{name}' is used with arities {shown}"))
    return out


def _similar(names, category: str, cfg: LintConfig) -> list:
    out = []
    for a, b in itertools.combinations(sorted(names), 2):
        x, y = (a.lower(), b.lower()) if cfg.case_insensitive else (a, b)
        d = edit_distance(x, y)
        if d > cfg.similarity_threshold:
            continue
        if d > 0 and min(len(a), len(b)) < cfg.min_length:
            continue
        out.append(LintWarning(
            WarningKind.SimilarNames, (a, b),
            f"{category} names at edit distance {d}"))
    return out


def _similar_names(p: Problem, cfg: LintConfig) -> list:
    formulas = list(p.formulas())
    preds = {n for n, _ in _predicates(formulas)} | {d.name for d in p.declared_predicates}
    inds = _individuals(formulas)
    out = _similar(preds, "predicate", cfg) + _similar(inds, "individual", cfg)
    fold = (lambda s: s.lower()) if cfg.case_insensitive else (lambda s: s)
    ind_by_key = {}
    for i in inds:
        ind_by_key.setdefault(fold(i), []).append(i)
    for pred in sorted(preds):
        for ind in sorted(ind_by_key.get(fold(pred), [])):
            subjects = (pred,) if pred == ind else tuple(sorted((pred, ind)))
            out.append(LintWarning(
                WarningKind.SimilarNames, subjects,
                f"'{pred}' is used both as a predicate and as an individual (edit distance 0)"))
    return out


def lint(p: Problem, config: LintConfig = LintConfig()) -> list:
    """All warnings for ``p``, sorted by kind, then subjects."""
    found = _query_only(p) + _arity_mismatch(p) + _similar_names(p, config)
    unique = {(w.kind, w.subjects, w.detail): w for w in found}
    return sorted(unique.values(), key=lambda w: (_KIND_ORDER[w.kind], w.subjects, w.detail))


def render_warnings(warnings) -> str:
    return "\n".join(w.render() for w in warnings)
