"""Service configuration: ``key = value`` file, one setting per line."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


@dataclass
class ServiceConfig:
    listen_addr: str = "127.0.0.1:8080"
    base_url: str = "https://api.openai.com/v1"
    model_id: str = "gpt-3.5-turbo"
    surprise_topics_path: str | None = None
    storage_dir: str = "puzzlemaker-data"
    max_lines: int = 20
    max_generation_attempts: int = 5
    log_max_bytes: int | None = None
    static_dir: str | None = None

    @property
    def host(self) -> str:
        return self.listen_addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen_addr.rsplit(":", 1)[1])


_INT_KEYS = {"max_lines", "max_generation_attempts", "log_max_bytes"}


def load_config(path: str | Path) -> ServiceConfig:
    """Parse a UTF-8 config file; '#' lines and blanks are ignored.

    Unknown keys are an error — silently ignoring typos would leave a
    deployment running with defaults it did not ask for.
    """
    known = {f.name for f in fields(ServiceConfig)}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = int(value) if key in _INT_KEYS else value
    return ServiceConfig(**values)  # type: ignore[arg-type]
