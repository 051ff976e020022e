"""Resource caps, overridable via LOCALITY_FORGE_CAPS (comma-separated key=value)."""

import os
from dataclasses import dataclass, replace


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Caps:
    group_order: int = 5000
    subgroup_count: int = 100000
    exhaustive_group_check: int = 64      # full associativity check up to this order
    word_budget: int = 300000             # exhaustive word-verification budget
    sample_words: int = 50000             # random words when over budget


_current = None


def get_caps():
    global _current
    if _current is None:
        caps = Caps()
        env = os.environ.get("LOCALITY_FORGE_CAPS", "")
        overrides = {}
        for part in env.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            if key not in Caps.__dataclass_fields__:
                raise ValueError("unknown cap %r" % key)
            overrides[key] = int(val)
        _current = replace(caps, **overrides)
    return _current


def set_caps(**kwargs):
    """Install explicit caps (used by the CLI's --cap-order); returns the new caps."""
    global _current
    _current = replace(get_caps(), **kwargs)
    return _current


def reset_caps():
    global _current
    _current = None
