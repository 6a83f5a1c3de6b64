"""Deliberate corruptions used as negative controls.

Verification routines consult :func:`active` at the few points where a fault
can be injected.  Faults are scoped with :func:`injected` and are off by
default.

- ``d-exponent``: each nontrivial q-factor of the differential gets its
  exponent raised by one.
- ``xi-exponent``: the xi chain maps use (N_i - 1) in place of N_i in their
  scalar exponent.
- ``zeta-low`` / ``zeta-high``: the 2-cocycles read off the coefficient of
  x_i^(N_i - 1) / x_i^(N_i + 1) instead of x_i^N_i.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

KNOWN = ("d-exponent", "xi-exponent", "zeta-low", "zeta-high")

_active: ContextVar[frozenset] = ContextVar("qpbw_faults", default=frozenset())


def active(name: str) -> bool:
    return name in _active.get()


def current() -> frozenset:
    return _active.get()


@contextmanager
def injected(*names: str):
    for name in names:
        if name not in KNOWN:
            raise ValueError(f"unknown fault {name!r}; choose from {', '.join(KNOWN)}")
    token = _active.set(_active.get() | frozenset(names))
    try:
        yield
    finally:
        _active.reset(token)
