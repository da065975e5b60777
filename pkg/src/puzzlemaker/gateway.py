"""Pluggable chat-completion boundary.

:class:`HttpGateway` speaks the OpenAI-compatible ``/chat/completions``
wire protocol, so both the hosted API and local open-model servers
work.  :class:`ScriptedGateway` replays canned responses and records
the prompts it saw, enabling fully offline deterministic tests.

Transport-level retries here (connection errors, timeouts, 429s, 5xx)
are a separate mechanism from the generation pipeline's bounded
validation reprompts.
"""

from __future__ import annotations

import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Mapping, Protocol, Sequence
from urllib.parse import urlparse

import httpx

API_KEY_ENV_VAR = "PUZZLEMAKER_API_KEY"
DEFAULT_MODEL_ID = "gpt-3.5-turbo"


class GatewayError(Exception):
    """Base class for completion-call failures."""


class AuthError(GatewayError):
    pass


class RateLimitedError(GatewayError):
    def __init__(self, retry_after: float | None = None) -> None:
        super().__init__(
            "rate limited"
            + (f", retry after {retry_after:g}s" if retry_after else "")
        )
        self.retry_after = retry_after


class GatewayTimeoutError(GatewayError):
    pass


class MalformedResponseError(GatewayError):
    pass


class ScriptExhaustedError(GatewayError):
    def __init__(self, calls: int) -> None:
        super().__init__(f"scripted gateway exhausted after {calls} calls")
        self.calls = calls


@dataclass
class GatewayConfig:
    base_url: str
    api_key: str = field(default="", repr=False)  # never echoed in reprs/logs
    model_id: str = DEFAULT_MODEL_ID
    request_timeout: float = 30.0
    max_transport_retries: int = 2
    retry_backoff: float = 0.5

    def __post_init__(self) -> None:
        parsed = urlparse(self.base_url)
        if not (parsed.scheme and parsed.netloc):
            raise ValueError(f"base_url must be an absolute URL, got {self.base_url!r}")
        if not self.model_id.strip():
            raise ValueError("model_id must be non-blank")


def config_from_env(base_url: str, model_id: str = DEFAULT_MODEL_ID, **kwargs: Any) -> GatewayConfig:
    """Build a config taking the API key from ``PUZZLEMAKER_API_KEY``."""
    return GatewayConfig(
        base_url=base_url,
        api_key=os.environ.get(API_KEY_ENV_VAR, ""),
        model_id=model_id,
        **kwargs,
    )


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    sampling: Mapping[str, Any] | None = None


@dataclass(frozen=True)
class CompletionResponse:
    text: str
    model_id: str
    token_usage: Mapping[str, int] | None = None


class LlmGateway(Protocol):
    def complete(self, request: CompletionRequest) -> CompletionResponse: ...


class HttpGateway:
    """OpenAI-compatible chat client with bounded transport retries.

    Safe for concurrent :meth:`complete` calls; the underlying client is
    thread-safe and no per-call state is shared.
    """

    def __init__(self, config: GatewayConfig, client: httpx.Client | None = None) -> None:
        self.config = config
        self._client = client or httpx.Client(timeout=config.request_timeout)

    def close(self) -> None:
        self._client.close()

    def complete(self, request: CompletionRequest) -> CompletionResponse:
        if not request.prompt.strip():
            raise ValueError("prompt must be non-empty")
        cfg = self.config
        payload: dict[str, Any] = {
            "model": cfg.model_id,
            "messages": [{"role": "user", "content": request.prompt}],
        }
        if request.sampling:
            payload.update(request.sampling)
        url = cfg.base_url.rstrip("/") + "/chat/completions"
        headers = {"Authorization": f"Bearer {cfg.api_key}"}

        last_error: GatewayError = GatewayError("no completion attempt made")
        for attempt in range(cfg.max_transport_retries + 1):
            retry_after: float | None = None
            try:
                response = self._client.post(url, json=payload, headers=headers)
            except httpx.TimeoutException:
                last_error = GatewayTimeoutError(f"request timed out after {cfg.request_timeout:g}s")
            except httpx.HTTPError as exc:
                last_error = GatewayError(f"transport failure: {type(exc).__name__}")
            else:
                status = response.status_code
                if status in (401, 403):
                    raise AuthError(f"authentication rejected (HTTP {status})")
                if status == 429:
                    retry_after = _parse_retry_after(response.headers.get("retry-after"))
                    last_error = RateLimitedError(retry_after)
                elif status >= 500:
                    last_error = GatewayError(f"server error (HTTP {status})")
                elif status >= 400:
                    raise GatewayError(f"request rejected (HTTP {status})")
                else:
                    return _parse_completion(response)
            if attempt < cfg.max_transport_retries:
                delay = cfg.retry_backoff * (2**attempt)
                if retry_after:
                    delay = max(delay, retry_after)
                time.sleep(delay)
        raise last_error


def _parse_retry_after(header: str | None) -> float | None:
    if not header:
        return None
    try:
        return float(header)
    except ValueError:
        return None


def _parse_completion(response: httpx.Response) -> CompletionResponse:
    try:
        body = response.json()
        text = body["choices"][0]["message"]["content"]
        if not isinstance(text, str):
            raise TypeError("message content is not a string")
    except Exception as exc:
        raise MalformedResponseError(f"could not parse completion response: {exc}") from exc
    return CompletionResponse(
        text=text,
        model_id=str(body.get("model", "")),
        token_usage=body.get("usage"),
    )


class ScriptedGateway:
    """Test double that replays canned responses in order.

    Every prompt received is recorded for assertions.  Calls past the
    end of the script raise :class:`ScriptExhaustedError`.  A lock keeps
    the queue consistent under concurrent callers.
    """

    def __init__(self, script: Sequence[str], model_id: str = "scripted-model") -> None:
        if not script:
            raise ValueError("script must be non-empty")
        self._queue = deque(script)
        self._model_id = model_id
        self._lock = threading.Lock()
        self.prompts: list[str] = []

    def complete(self, request: CompletionRequest) -> CompletionResponse:
        with self._lock:
            self.prompts.append(request.prompt)
            if not self._queue:
                raise ScriptExhaustedError(len(self.prompts))
            text = self._queue.popleft()
        return CompletionResponse(text=text, model_id=self._model_id)


def scripted_gateway(script: Sequence[str], model_id: str = "scripted-model") -> ScriptedGateway:
    return ScriptedGateway(script, model_id=model_id)
