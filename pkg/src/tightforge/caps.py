"""Size caps for constructions that can blow up combinatorially.

Defaults can be overridden per call or through the environment variables
TIGHTFORGE_MAX_ELEMENTS and TIGHTFORGE_MAX_ARROWS.
"""

import os

from .errors import InputError

DEFAULT_MAX_ELEMENTS = 64
DEFAULT_MAX_ARROWS = 16


def _from_env(var, fallback):
    raw = os.environ.get(var)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{var} must be an integer, got {raw!r}")
    if value < 1:
        raise InputError(f"{var} must be positive, got {value}")
    return value


def max_elements(override=None):
    """Effective element cap: explicit override, else env, else default."""
    if override is not None:
        return override
    return _from_env("TIGHTFORGE_MAX_ELEMENTS", DEFAULT_MAX_ELEMENTS)


def max_arrows(override=None):
    """Effective arrow cap: explicit override, else env, else default."""
    if override is not None:
        return override
    return _from_env("TIGHTFORGE_MAX_ARROWS", DEFAULT_MAX_ARROWS)
