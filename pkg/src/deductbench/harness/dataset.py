"""JSONL dataset files, validated line by line."""

from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from ..core import Answer
from ..perturb.sample import RULES, SCHEMA_VERSION, VARIANTS, PerturbedSample, Sample
from ..syntax import LogicSyntaxError


class SchemaError(ValueError):
    def __init__(self, message: str, line: int = 0, path: str = ""):
        where = f"{path}:{line}: " if path else (f"line {line}: " if line else "")
        super().__init__(where + message)
        self.line = line
        self.path = path


def fixture_path() -> Path:
    """The 40-sample annotated fixture shipped with the package."""
    return Path(str(resources.files("deductbench").joinpath("data", "fixture.jsonl")))


def _require(d: dict, key: str, kind, line: int, path: str):
    if key not in d:
        raise SchemaError(f"missing field '{key}'", line, path)
    if not isinstance(d[key], kind):
        raise SchemaError(f"field '{key}' has the wrong type", line, path)
    return d[key]


def _validate(d, line: int, path: str, perturbed: bool) -> None:
    if not isinstance(d, dict):
        raise SchemaError("record is not a JSON object", line, path)
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}", line, path)
    _require(d, "base_id" if perturbed else "id", (str, int), line, path)
    context = _require(d, "context", list, line, path)
    if not context or not all(isinstance(c, str) for c in context):
        raise SchemaError("context must be a non-empty list of strings", line, path)
    _require(d, "question", str, line, path)
    label = _require(d, "label", (str, bool), line, path)
    try:
        Answer.parse(label)
    except ValueError:
        raise SchemaError(f"label must be yes or no, got {label!r}", line, path) from None
    rule = _require(d, "rule", str, line, path)
    if rule not in RULES:
        raise SchemaError(f"unknown rule {rule!r}", line, path)
    if perturbed and d.get("variant") not in VARIANTS:
        raise SchemaError(f"unknown variant {d.get('variant')!r}", line, path)
    spans = d.get("negation_spans") or []
    if not isinstance(spans, list) or not all(isinstance(s, (list, dict)) for s in spans):
        raise SchemaError("negation_spans must be a list of [sentence, start, end, replacement]", line, path)


def _records(path):
    with open(path, encoding="utf-8") as fh:
        for number, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                yield number, json.loads(raw)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc.msg}", number, str(path)) from None


def load_dataset(path) -> list:
    """Samples from a JSONL file; duplicate ids are rejected."""
    out, seen = [], set()
    for number, d in _records(path):
        _validate(d, number, str(path), perturbed=False)
        try:
            s = Sample.from_dict(d)
        except (LogicSyntaxError, ValueError, TypeError) as exc:
            raise SchemaError(str(exc), number, str(path)) from None
        if s.id in seen:
            raise SchemaError(f"duplicate id {s.id!r}", number, str(path))
        seen.add(s.id)
        out.append(s)
    return out


def load_perturbed(path) -> list:
    out, seen = [], set()
    for number, d in _records(path):
        _validate(d, number, str(path), perturbed=True)
        try:
            s = PerturbedSample.from_dict(d)
        except (LogicSyntaxError, ValueError, TypeError) as exc:
            raise SchemaError(str(exc), number, str(path)) from None
        if s.key in seen:
            raise SchemaError(f"duplicate sample {s.key!r}", number, str(path))
        seen.add(s.key)
        out.append(s)
    return out


def load_any(path) -> list:
    """Plain or perturbed samples, decided by the first record."""
    for _, d in _records(path):
        return load_perturbed(path) if isinstance(d, dict) and "variant" in d else load_dataset(path)
    return []


def write_jsonl(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r.to_dict(), ensure_ascii=False) + "\n")


# --- LogicBench conversion ------------------------------------------------

_SENTENCE_END = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")


def _rule_tag(axiom: str) -> str:
    tag = re.sub(r"[^a-z]+", "_", axiom.strip().lower()).strip("_")
    if tag not in RULES:
        raise SchemaError(f"unknown LogicBench axiom {axiom!r}")
    return tag


def convert_logicbench(data: dict) -> list:
    """Samples from one LogicBench file (``axiom`` plus ``samples`` with ``qa_pairs``).

    Every question/answer pair becomes one sample with id
    ``<axiom>-<sample id>-<pair index>``; the context is split into sentences.
    Unknown fields are ignored.
    """
    rule = _rule_tag(data.get("axiom", ""))
    out = []
    for item in data.get("samples", []):
        context = [s.strip() for s in _SENTENCE_END.split(str(item.get("context", "")).strip()) if s.strip()]
        for i, qa in enumerate(item.get("qa_pairs", [])):
            out.append(Sample(
                id=f"{rule}-{item.get('id')}-{i}",
                context=tuple(context),
                question=str(qa["question"]),
                label=qa["answer"],
                rule=rule,
            ))
    return out
