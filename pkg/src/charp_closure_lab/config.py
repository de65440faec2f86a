"""Runtime configuration: Frobenius caps, bounded-route depth, Groebner budgets.

Precedence is flags > environment (``CCL_*``) > session file > defaults; the
CLI assembles the layers, library code only ever reads :func:`current`.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import os
from dataclasses import dataclass
from typing import Any, Iterator, Mapping


@dataclass(frozen=True)
class Config:
    e_max: int = 3
    q_max: int = 343
    max_exponent: int = 2**31 - 1
    gb_max_basis: int = 2000
    gb_max_reductions: int = 5_000_000
    check_frobenius: bool = True

    def replace(self, **changes: Any) -> "Config":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


ENV_NAMES = {
    "CCL_EMAX": "e_max",
    "CCL_QMAX": "q_max",
    "CCL_MAX_EXPONENT": "max_exponent",
    "CCL_GB_BASIS": "gb_max_basis",
    "CCL_GB_BUDGET": "gb_max_reductions",
}

_current: contextvars.ContextVar[Config] = contextvars.ContextVar("ccl_config", default=Config())


def current() -> Config:
    return _current.get()


@contextlib.contextmanager
def using(cfg: Config) -> Iterator[Config]:
    token = _current.set(cfg)
    try:
        yield cfg
    finally:
        _current.reset(token)


def from_mapping(base: Config, values: Mapping[str, Any]) -> Config:
    """Overlay known keys of ``values`` on ``base``, coercing to the field types."""
    changes = {}
    for field in dataclasses.fields(Config):
        if field.name in values and values[field.name] is not None:
            raw = values[field.name]
            if field.type in ("bool", bool):
                changes[field.name] = raw if isinstance(raw, bool) else str(raw).lower() in ("1", "true", "yes")
            else:
                changes[field.name] = int(raw)
    return base.replace(**changes)


def from_environment(base: Config, environ: Mapping[str, str] | None = None) -> Config:
    environ = os.environ if environ is None else environ
    values = {field: environ[name] for name, field in ENV_NAMES.items() if name in environ}
    return from_mapping(base, values)


def resolve(flags: Mapping[str, Any] | None = None, session: Mapping[str, Any] | None = None,
            environ: Mapping[str, str] | None = None) -> Config:
    cfg = Config()
    if session:
        cfg = from_mapping(cfg, session)
    cfg = from_environment(cfg, environ)
    if flags:
        cfg = from_mapping(cfg, flags)
    return cfg
