"""Run reports: one JSON (or human-readable) document per command."""

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Union

import psutil

from .._version import __version__
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class RunReport:
    """Schema-stable result document.

    ``timings`` and ``resources`` are left out of the output when
    ``include_timings`` is False, so identical configuration and seed give
    byte-identical documents.
    """

    command: str
    config: Dict[str, Any]
    seed: int
    results: Dict[str, Any] = field(default_factory=dict)
    counters: Dict[str, int] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    resources: Dict[str, float] = field(default_factory=dict)
    status: str = 'ok'
    tool_version: str = __version__
    include_timings: bool = True

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        """Time a block of work under ``timings[name]`` (seconds)."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 4)

    def count(self, name: str, value: int) -> None:
        self.counters[name] = self.counters.get(name, 0) + int(value)

    def capture_resources(self) -> None:
        rss = psutil.Process().memory_info().rss
        self.resources['rss_mib'] = round(rss / (1024 * 1024), 1)

    def fail(self) -> None:
        self.status = 'fail'

    @property
    def ok(self) -> bool:
        return self.status == 'ok'

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'tool_version': self.tool_version,
            'command': self.command,
            'config': self.config,
            'seed': self.seed,
            'status': self.status,
            'results': self.results,
            'counters': self.counters,
        }
        if self.include_timings:
            data['timings'] = self.timings
            data['resources'] = self.resources
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunReport':
        return cls(
            command=data['command'],
            config=data.get('config', {}),
            seed=data.get('seed', 0),
            results=data.get('results', {}),
            counters=data.get('counters', {}),
            timings=data.get('timings', {}),
            resources=data.get('resources', {}),
            status=data.get('status', 'ok'),
            tool_version=data.get('tool_version', __version__),
            include_timings='timings' in data,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write_json(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as f:
            f.write(self.to_json() + '\n')
        logger.info(f"Report written to {path}")
        return path

    def to_human(self) -> str:
        return '\n'.join(f"{key}: {value}" for key, value in flatten(self.to_dict()))

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == 'structured' else self.to_human()


def flatten(data: Any, prefix: str = '') -> List[Any]:
    """Dotted (key, value) pairs in sorted key order; lists of scalars stay whole."""
    out = []
    if isinstance(data, dict):
        if not data and prefix:
            out.append((prefix, '{}'))
        for key in sorted(data):
            out.extend(flatten(data[key], f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(data, list) and any(isinstance(v, (dict, list)) for v in data):
        for i, value in enumerate(data):
            out.extend(flatten(value, f"{prefix}.{i}"))
    else:
        out.append((prefix, json.dumps(data) if isinstance(data, (list, bool)) or data is None else data))
    return out
