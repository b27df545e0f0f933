"""Datasets, metrics, reports and the command line."""

from .config import ConfigError, ExperimentConfig, make_backend
from .dataset import (
    SchemaError, convert_logicbench, fixture_path, load_any, load_dataset, load_perturbed, write_jsonl,
)
from .metrics import Metrics, MissingGold, evaluate
from .report import report, round_half_up

__all__ = [
    "load_dataset", "load_perturbed", "load_any", "write_jsonl", "fixture_path", "SchemaError",
    "convert_logicbench", "Metrics", "evaluate", "MissingGold", "report", "round_half_up",
    "ExperimentConfig", "ConfigError", "make_backend",
]
