from copy import deepcopy
from dataclasses import dataclass
from math import factorial
from typing import Any, Optional, Tuple


@dataclass
class CliContext:
    config: Any
    config_path: Optional[str] = None
    overrides: Tuple[Tuple[str, Any], ...] = ()


def update_dict(dictionary, *kv_pairs):
    """Return a deep copy of dictionary with updated values for the given key-value pairs.
    Supports nested dictionaries"""
    updated = deepcopy(dictionary)

    def traverse(d, key, value):
        s = key.split(".", 1)
        if len(s) > 1:
            if (s[0] not in d) or (not isinstance(d[s[0]], dict)):
                d[s[0]] = {}
            traverse(d[s[0]], s[1], value)
        else:
            d[s[0]] = value

    for k, v in kv_pairs:
        traverse(updated, k, v)
    return updated


def double_factorial(n: int) -> int:
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def maximal_chain_count(n: int) -> int:
    # (n+1)! n! is always divisible by 2^n
    return factorial(n + 1) * factorial(n) >> n


class SizeGuardError(ValueError):
    """Raised when an exact computation is asked for beyond its configured size limit."""

    def __init__(self, message: str, limit: int):
        super().__init__(message)
        self.limit = limit
