"""Size guards for the exponential constructions."""
import os
from contextlib import contextmanager
from contextvars import ContextVar

DEFAULT_STATE_GUARD = 200000

_override = ContextVar("state_guard_override", default=None)


def state_guard(default=DEFAULT_STATE_GUARD):
    """Largest automaton or game the constructions may build.

    An active :func:`guard_limit` wins; otherwise the ``GFG_GUARD_STATES``
    environment variable overrides the default.
    """
    forced = _override.get()
    if forced is not None:
        return forced
    raw = os.environ.get("GFG_GUARD_STATES")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default


@contextmanager
def guard_limit(limit):
    """Temporarily cap every construction at ``limit`` states."""
    token = _override.set(limit)
    try:
        yield
    finally:
        _override.reset(token)


DEFAULT_POSITION_GUARD = 3000000


def position_guard(default=DEFAULT_POSITION_GUARD):
    """Largest game arena a product may build (``GFG_GUARD_POSITIONS``)."""
    raw = os.environ.get("GFG_GUARD_POSITIONS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default
