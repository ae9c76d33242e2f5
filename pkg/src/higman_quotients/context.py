"""Validated parameters (p, n, k) shared by every module."""

from dataclasses import dataclass, field
from typing import Any, Dict

from .algebra.zmod import KExp, Modulus
from .exceptions import ConfigError
from .utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class HigmanContext:
    """The standing hypotheses: p prime, n >= 1, k >= 2 and p | k - 1.

    Everything downstream trusts a constructed context.
    """

    p: int
    n: int
    k: int
    modulus: Modulus = field(init=False, repr=False, compare=False)
    kexp: KExp = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ('p', 'n', 'k'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        modulus = Modulus(self.p, self.n)
        object.__setattr__(self, 'modulus', modulus)
        object.__setattr__(self, 'kexp', KExp(self.k, modulus))
        if self.is_experimental:
            logger.warning("p = 2 runs in experimental mode: termination of the "
                           "four-variable reduction is not guaranteed")

    @property
    def pn(self) -> int:
        return self.modulus.pn

    @property
    def is_experimental(self) -> bool:
        return self.p == 2

    def with_n(self, n: int) -> 'HigmanContext':
        return HigmanContext(self.p, n, self.k)

    def to_dict(self) -> Dict[str, Any]:
        return {'p': self.p, 'n': self.n, 'k': self.k}

    def __str__(self) -> str:
        return f"(p={self.p}, k={self.k}, n={self.n})"


def validate(p: int, n: int, k: int) -> HigmanContext:
    """Build a context, re-raising any failure as ConfigError."""
    try:
        return HigmanContext(p, n, k)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
