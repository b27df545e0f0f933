"""Model backends: a chat-completions HTTP client, a scripted mock and a gold oracle."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from typing import Optional, Protocol

from ..syntax import SyntaxId, print_problem
from .prompts import Format


class BackendUnavailable(RuntimeError):
    pass


class ScriptExhausted(LookupError):
    pass


@dataclass(frozen=True)
class BackendRequest:
    prompt: str
    temperature: float = 1.0
    stop: tuple = ()
    metadata: dict = field(default_factory=dict, compare=False)

    @property
    def sample_id(self) -> str:
        return self.metadata.get("sample_id", "")

    @property
    def attempt(self) -> int:
        return int(self.metadata.get("attempt", 0))


@dataclass(frozen=True)
class BackendResponse:
    text: str
    prompt_tokens: int = 0
    completion_tokens: int = 0
    latency: float = field(default=0.0, compare=False)


class Backend(Protocol):
    name: str

    def complete(self, req: BackendRequest) -> BackendResponse:
        ...


# --- HTTP ----------------------------------------------------------------

ENV_URL = "DEDUCTBENCH_BACKEND_URL"
ENV_MODEL = "DEDUCTBENCH_MODEL"
ENV_API_KEY = "DEDUCTBENCH_API_KEY"


class HttpBackend:
    """OpenAI-style ``/chat/completions`` client with bounded retries.

    Settings come from the constructor, falling back to environment
    variables. Transport failures, 429 and 5xx responses are retried with
    exponential backoff; after ``attempts`` tries :class:`BackendUnavailable`
    is raised.
    """

    name = "http"

    def __init__(self, url: Optional[str] = None, model: Optional[str] = None,
                 api_key: Optional[str] = None, *, attempts: int = 3, backoff: float = 1.0,
                 timeout: float = 120.0, transport=None):
        import httpx

        self.url = url or os.environ.get(ENV_URL)
        self.model = model or os.environ.get(ENV_MODEL)
        if not self.url or not self.model:
            raise BackendUnavailable(f"set {ENV_URL} and {ENV_MODEL} (or pass url and model)")
        key = api_key if api_key is not None else os.environ.get(ENV_API_KEY)
        headers = {"Authorization": f"Bearer {key}"} if key else {}
        self.attempts = attempts
        self.backoff = backoff
        self._httpx = httpx
        self._client = httpx.Client(headers=headers, timeout=timeout, transport=transport)

    def payload(self, req: BackendRequest) -> dict:
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": req.prompt}],
            "temperature": req.temperature,
        }
        if req.stop:
            body["stop"] = list(req.stop)
        return body

    def complete(self, req: BackendRequest) -> BackendResponse:
        last = "no attempt made"
        for attempt in range(self.attempts):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            start = time.monotonic()
            try:
                r = self._client.post(self.url, json=self.payload(req))
            except self._httpx.HTTPError as exc:
                last = f"{type(exc).__name__}: {exc}"
                continue
            if r.status_code == 429 or r.status_code >= 500:
                last = f"HTTP {r.status_code}"
                continue
            if r.status_code >= 400:
                raise BackendUnavailable(f"HTTP {r.status_code}: {r.text[:200]}")
            try:
                data = r.json()
                text = data["choices"][0]["message"]["content"] or ""
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise BackendUnavailable(f"malformed completion response: {exc}") from exc
            usage = data.get("usage") or {}
            return BackendResponse(
                text, int(usage.get("prompt_tokens", 0)), int(usage.get("completion_tokens", 0)),
                time.monotonic() - start)
        raise BackendUnavailable(f"backend failed after {self.attempts} attempts ({last})")

    def close(self):
        self._client.close()


# --- Mock ----------------------------------------------------------------


class MockBackend:
    """Replays scripted responses keyed by sample id and attempt number.

    The script maps a sample key (``O/sample-1``) or a bare base id
    (``sample-1``) to either a list of responses, indexed by attempt, or a
    mapping from attempt number (as a string) to response.
    """

    name = "mock"

    def __init__(self, script: dict):
        self.script = script
        self._lock = threading.Lock()
        self.calls = []

    @classmethod
    def from_file(cls, path) -> "MockBackend":
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))

    def _entry(self, sample_id: str):
        if sample_id in self.script:
            return self.script[sample_id]
        base = sample_id.split("/", 1)[-1]
        if base in self.script:
            return self.script[base]
        raise ScriptExhausted(f"no script for sample {sample_id!r}")

    def complete(self, req: BackendRequest) -> BackendResponse:
        entry = self._entry(req.sample_id)
        attempt = req.attempt
        if isinstance(entry, str):
            entry = [entry]
        if isinstance(entry, dict):
            text = entry.get(str(attempt))
        else:
            text = entry[attempt] if attempt < len(entry) else None
        if text is None:
            raise ScriptExhausted(f"script for {req.sample_id!r} has no response for attempt {attempt}")
        with self._lock:
            self.calls.append((req.sample_id, attempt))
        return BackendResponse(text)


# --- Oracle --------------------------------------------------------------


class OracleBackend:
    """Answers every request with the ideal response built from gold annotations."""

    name = "oracle"

    def __init__(self, samples):
        self.samples = {s.key: s for s in samples}

    def complete(self, req: BackendRequest) -> BackendResponse:
        sample = self.samples.get(req.sample_id)
        if sample is None:
            raise ScriptExhausted(f"oracle has no sample {req.sample_id!r}")
        fmt = Format.parse(req.metadata.get("format", "Direct"))
        if fmt is Format.Formal:
            if sample.gold_problem is None:
                return BackendResponse("")
            syntax = SyntaxId.parse(req.metadata.get("syntax", "fol"))
            return BackendResponse(print_problem(sample.gold_problem, syntax, headers=True))
        answer = sample.label.value.capitalize()
        if fmt is Format.CoT:
            return BackendResponse(f"Reasoning steps: follow the premises.\nAnswer: {answer}\n")
        return BackendResponse(f"Answer: {answer}\n")
