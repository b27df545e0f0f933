"""Experiment configuration files (JSON).

Example::

    {
      "schema_version": 1,
      "dataset": "suite.jsonl",
      "output": "results.jsonl",
      "run": {"format": "Formal", "syntax": "fol", "recovery": "ErrorMessage"},
      "backend": {"kind": "mock", "script": "script.json"},
      "corpora": {"Logical": "logical.txt"},
      "k": 4,
      "seed": 0,
      "workers": 4,
      "prover_cmd": "vampire --mode casc -t {timeout} {file}"
    }

Relative paths are resolved against the directory of the config file. The
HTTP backend reads its token from the environment variable named by
``backend.api_key_env`` (default ``DEDUCTBENCH_API_KEY``), never from the file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..perturb.noise import DEFAULT_K
from ..perturb.sample import SCHEMA_VERSION
from ..pipeline.backends import HttpBackend, MockBackend, OracleBackend
from ..pipeline.run import RunConfig
from ..pipeline.runner import DEFAULT_WORKERS

BACKEND_KINDS = ("oracle", "mock", "http")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    run: RunConfig = field(default_factory=RunConfig)
    dataset: Optional[str] = None
    output: Optional[str] = None
    backend: dict = field(default_factory=lambda: {"kind": "oracle"})
    corpora: dict = field(default_factory=dict)
    k: int = DEFAULT_K
    seed: int = 0
    workers: int = DEFAULT_WORKERS
    transcript: bool = True
    prover_cmd: Optional[str] = None

    @classmethod
    def from_dict(cls, d: dict, base: Path = Path(".")) -> "ExperimentConfig":
        version = d.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version!r}")

        def path(p):
            return None if p is None else str((base / p) if not Path(p).is_absolute() else Path(p))

        backend = dict(d.get("backend") or {"kind": "oracle"})
        if backend.get("kind", "oracle") not in BACKEND_KINDS:
            raise ConfigError(f"unknown backend kind {backend.get('kind')!r}")
        if "script" in backend:
            backend["script"] = path(backend["script"])
        run = dict(d.get("run") or {})
        run.setdefault("backend", backend.get("kind", "oracle"))
        try:
            run_cfg = RunConfig.from_dict(run)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid run settings: {exc}") from exc
        return cls(
            run=run_cfg,
            dataset=path(d.get("dataset")),
            output=path(d.get("output")),
            backend=backend,
            corpora={kind: path(p) for kind, p in (d.get("corpora") or {}).items()},
            k=int(d.get("k", DEFAULT_K)),
            seed=int(d.get("seed", 0)),
            workers=int(d.get("workers", DEFAULT_WORKERS)),
            transcript=bool(d.get("transcript", True)),
            prover_cmd=d.get("prover_cmd"),
        )

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc.msg} at line {exc.lineno}") from None
        return cls.from_dict(data, path.parent)


def make_backend(spec: dict, samples=()):
    kind = spec.get("kind", "oracle")
    if kind == "oracle":
        return OracleBackend(samples)
    if kind == "mock":
        if "script" not in spec:
            raise ConfigError("mock backend needs a 'script' file")
        return MockBackend.from_file(spec["script"])
    if kind == "http":
        key_env = spec.get("api_key_env")
        api_key = os.environ.get(key_env) if key_env else None
        return HttpBackend(spec.get("url"), spec.get("model"), api_key,
                           attempts=int(spec.get("attempts", 3)), backoff=float(spec.get("backoff", 1.0)))
    raise ConfigError(f"unknown backend kind {kind!r}")
