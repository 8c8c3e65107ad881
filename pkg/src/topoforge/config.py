"""Size caps. TOPOFORGE_CAP_BITS overrides the universe cap (points per space)."""

import os

DEFAULT_CAP_BITS = 16


def cap_bits() -> int:
    raw = os.environ.get("TOPOFORGE_CAP_BITS")
    if raw is None:
        return DEFAULT_CAP_BITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"TOPOFORGE_CAP_BITS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"TOPOFORGE_CAP_BITS must be positive, got {value}")
    return value
