"""Run many samples with bounded parallelism and an ordered, resumable JSONL sink."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .backends import BackendUnavailable
from .run import RunConfig, SampleResult, run_sample

DEFAULT_WORKERS = 4


class RunAborted(RuntimeError):
    """The backend became unavailable; completed results are on disk."""

    def __init__(self, message: str, completed: int):
        super().__init__(message)
        self.completed = completed


def _result_line(r: SampleResult, transcript: bool) -> str:
    return json.dumps(r.to_dict(transcript=transcript), ensure_ascii=False, sort_keys=True) + "\n"


def load_results(path) -> list:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(SampleResult.from_dict(json.loads(line)))
    return out


def _resume(path) -> list:
    """Valid lines of an earlier run; a torn final line is dropped and the file rewritten."""
    if not os.path.exists(path):
        return []
    good = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            try:
                good.append((line if line.endswith("\n") else line + "\n", SampleResult.from_dict(json.loads(line))))
            except (ValueError, KeyError):
                break
    with open(path, "w", encoding="utf-8") as fh:
        fh.writelines(line for line, _ in good)
    return [r for _, r in good]


def run_all(samples, cfg: RunConfig, backend, out_path: Optional[str] = None, *,
            workers: int = DEFAULT_WORKERS, transcript: bool = True, resume: bool = True) -> list:
    """Results in input order; each is appended to ``out_path`` as soon as
    everything before it is done, so an interrupted run resumes by key."""
    samples = [s.as_original() if hasattr(s, "as_original") else s for s in samples]
    done = {}
    if out_path and resume:
        done = {r.key: r for r in _resume(out_path)}
    elif out_path:
        open(out_path, "w", encoding="utf-8").close()
    todo = [s for s in samples if s.key not in done]
    sink = open(out_path, "a", encoding="utf-8") if out_path else None
    try:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            futures = [pool.submit(run_sample, s, cfg, backend) for s in todo]
            for s, fut in zip(todo, futures):
                try:
                    r = fut.result()
                except BackendUnavailable as exc:
                    for f in futures:
                        f.cancel()
                    raise RunAborted(f"{exc}; {len(done)} results saved, rerun to resume", len(done)) from exc
                done[s.key] = r
                if sink:
                    sink.write(_result_line(r, transcript))
                    sink.flush()
    finally:
        if sink:
            sink.close()
    return [done[s.key] for s in samples if s.key in done]
