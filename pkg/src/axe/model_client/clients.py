"""Model client interface, the OpenAI-compatible HTTP client and replay clients."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from abc import ABC, abstractmethod
from pathlib import Path

import httpx

from axe.errors import ClientError

log = logging.getLogger(__name__)

MAX_ATTEMPTS = 3


class ModelClient(ABC):
    """Anything that turns a prompt into raw completion text."""

    max_in_flight: int = 4

    @abstractmethod
    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str: ...


class HttpChat(ModelClient):
    """Client for an OpenAI-compatible ``/chat/completions`` endpoint.

    The rendered prompt is sent as a single user message.  Transport
    errors, 429 and 5xx responses are retried up to three attempts in total
    with capped exponential backoff; anything else fails immediately.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key_env: str = "AXE_API_KEY",
        *,
        max_in_flight: int = 4,
        timeout: float = 120.0,
        backoff: float = 0.5,
        backoff_cap: float = 8.0,
        transport: httpx.BaseTransport | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.max_in_flight = max_in_flight
        self.backoff = backoff
        self.backoff_cap = backoff_cap
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(api_key_env) if api_key_env else None
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        self._http = httpx.Client(timeout=timeout, headers=headers, transport=transport)
        self._slots = threading.BoundedSemaphore(max_in_flight)

    def payload(self, prompt: str, max_output_tokens: int, temperature: float) -> dict:
        return {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "max_tokens": max_output_tokens,
            "temperature": temperature,
        }

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        body = self.payload(prompt, max_output_tokens, temperature)
        url = f"{self.base_url}/chat/completions"
        last_error = "no attempt made"
        with self._slots:
            for attempt in range(MAX_ATTEMPTS):
                if attempt:
                    time.sleep(min(self.backoff_cap, self.backoff * 2 ** (attempt - 1)))
                try:
                    resp = self._http.post(url, json=body)
                except httpx.TransportError as exc:
                    last_error = f"transport error: {exc}"
                    log.warning("attempt %d to %s failed: %s", attempt + 1, url, exc)
                    continue
                if resp.status_code == 429 or resp.status_code >= 500:
                    last_error = f"HTTP {resp.status_code}"
                    log.warning("attempt %d to %s got HTTP %d", attempt + 1, url, resp.status_code)
                    continue
                if resp.status_code >= 400:
                    raise ClientError(f"HTTP {resp.status_code} from {url}: {resp.text[:200]}")
                try:
                    return resp.json()["choices"][0]["message"]["content"] or ""
                except (ValueError, KeyError, IndexError, TypeError) as exc:
                    raise ClientError(f"malformed chat completion from {url}") from exc
        raise ClientError(f"{url} failed after {MAX_ATTEMPTS} attempts ({last_error})")

    def close(self) -> None:
        self._http.close()


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class Scripted(ModelClient):
    """Replays canned responses keyed by the SHA-256 of the prompt.

    Fixture files are JSON lines of ``{"prompt_hash": ..., "response": ...}``.
    An unknown prompt raises ClientError unless ``default`` is set.
    """

    def __init__(self, responses: dict[str, str], default: str | None = None):
        self.responses = dict(responses)
        self.default = default

    @classmethod
    def from_file(cls, path: str | Path, default: str | None = None) -> Scripted:
        responses = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    rec = json.loads(line)
                    responses[rec["prompt_hash"]] = rec["response"]
        return cls(responses, default)

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        key = prompt_hash(prompt)
        if key in self.responses:
            return self.responses[key]
        if self.default is not None:
            return self.default
        raise ClientError(f"no scripted response for prompt {key[:12]}")


class Recorder(ModelClient):
    """Wraps another client and appends every exchange to a replay file."""

    # shared so several recorders can append to one file
    _lock = threading.Lock()

    def __init__(self, inner: ModelClient, path: str | Path):
        self.inner = inner
        self.path = Path(path)
        self.max_in_flight = inner.max_in_flight

    def complete(self, prompt: str, max_output_tokens: int = 512, temperature: float = 0.0) -> str:
        response = self.inner.complete(prompt, max_output_tokens, temperature)
        line = json.dumps({"prompt_hash": prompt_hash(prompt), "response": response}, ensure_ascii=False)
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
        return response
