"""Prompting, extraction and error recovery for the three reasoning formats."""

from .backends import (
    Backend, BackendRequest, BackendResponse, BackendUnavailable, HttpBackend, MockBackend,
    OracleBackend, ScriptExhausted,
)
from .extract import ExtractionFailure, extract_answer, extract_problem
from .prompts import Format, build_prompt, grammar_block, preamble, refinement_prompt
from .run import (
    ERROR_TYPE_FEEDBACK, Exchange, ParseStatus, Recovery, RunConfig, SampleResult,
    fallback_answer, run_sample,
)
from .runner import DEFAULT_WORKERS, RunAborted, load_results, run_all

__all__ = [
    "Format", "Recovery", "ParseStatus", "RunConfig", "SampleResult", "Exchange",
    "build_prompt", "refinement_prompt", "grammar_block", "preamble",
    "extract_answer", "extract_problem", "ExtractionFailure",
    "run_sample", "fallback_answer", "ERROR_TYPE_FEEDBACK",
    "Backend", "BackendRequest", "BackendResponse", "BackendUnavailable", "ScriptExhausted",
    "HttpBackend", "MockBackend", "OracleBackend",
    "run_all", "load_results", "RunAborted", "DEFAULT_WORKERS",
]
