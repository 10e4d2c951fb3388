"""Enumeration caps.

Caps are plain configuration values.  They can be overridden per call, on the
command line, or through the ``CELLSTRAT_CAPS`` environment variable, e.g.
``CELLSTRAT_CAPS="coset=200000,oracle_columns=50000"``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import SizeLimitError


@dataclass(frozen=True)
class Caps:
    basis: int = 10**6
    coset: int = 10**6
    group: int = 10**6
    oracle_columns: int = 2 * 10**4
    module_law_r: int = 5
    full_restriction_r: int = 5

    def replace(self, **changes) -> "Caps":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    """Parse ``key=value`` pairs separated by commas into a :class:`Caps`."""
    base = base or Caps()
    names = {f.name for f in dataclasses.fields(Caps)}
    changes = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in names:
            raise ValueError(f"unknown cap setting {item!r}; expected one of {sorted(names)}")
        changes[key] = int(value)
    return base.replace(**changes)


def caps_from_env(environ=None) -> Caps:
    environ = os.environ if environ is None else environ
    text = environ.get("CELLSTRAT_CAPS", "")
    return parse_caps(text) if text else Caps()


DEFAULT_CAPS = Caps()


def check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise SizeLimitError(what, size, cap)
