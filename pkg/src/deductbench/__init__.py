"""Robustness workbench for LLM-based deductive reasoning."""

__version__ = "0.1.0"
