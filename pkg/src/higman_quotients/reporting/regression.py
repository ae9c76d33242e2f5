"""Pinned regression constants kept in a JSON file."""

import json
from pathlib import Path
from typing import Any, Dict, Union

from ..exceptions import RegressionMismatch
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


class RegressionStore:
    """Key -> JSON value; first sight pins, later sights must match exactly."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.values: Dict[str, Any] = {}
        if self.path.exists():
            with open(self.path) as f:
                self.values = json.load(f)
            logger.debug(f"Loaded {len(self.values)} pinned constants from {self.path}")

    def _save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, 'w') as f:
            json.dump(self.values, f, indent=2, sort_keys=True)
            f.write('\n')

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def check_or_pin(self, key: str, value: Any) -> bool:
        """Pin ``value`` on first sight; afterwards raise RegressionMismatch on any change.

        Returns True when the value was newly pinned.
        """
        # normalize tuples and the like through a JSON round trip
        value = json.loads(json.dumps(value))
        if key not in self.values:
            self.values[key] = value
            self._save()
            logger.info(f"Pinned regression constant {key} = {value}")
            return True
        if self.values[key] != value:
            raise RegressionMismatch(f"{key}: pinned {self.values[key]!r}, got {value!r}")
        return False
