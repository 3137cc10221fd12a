"""Default enumeration bounds, overridable through ``CHARP_DIFFALG_BOUND``."""

import os

ENV_VAR = "CHARP_DIFFALG_BOUND"

ENUMERATION_BOUND = 2 ** 20
SEARCH_BOUND = 2 ** 22
# monomial count limit for bounded polynomial spaces
DIMENSION_BOUND = 4096


def _env_override():
    raw = os.environ.get(ENV_VAR)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw.strip(), 0)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be positive, got {value}")
    return value


def enumeration_bound(bound=None):
    if bound is not None:
        return bound
    env = _env_override()
    return ENUMERATION_BOUND if env is None else env


def search_bound(bound=None):
    if bound is not None:
        return bound
    env = _env_override()
    return SEARCH_BOUND if env is None else env


def dimension_bound(bound=None):
    if bound is not None:
        return bound
    env = _env_override()
    return DIMENSION_BOUND if env is None else env
