"""Canonical JSON reports: exact rationals, stable key order, stable bytes."""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from math import factorial

from . import __version__

# numerators/denominators routinely exceed 64 bits (e.g. |A5|^4 denominators),
# so rationals are serialized as decimal strings
BIG_INT_INLINE_DIGITS = 40


def encode(obj):
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj if len(str(obj)) <= BIG_INT_INLINE_DIGITS else str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, str):
        return obj
    if is_dataclass(obj):
        return encode(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [encode(v) for v in items]
    return repr(obj)


def factored_factorial_power(base: int, power: int) -> dict:
    """(base!)^power without materialising astronomically large values."""
    fb = factorial(base)
    digits = len(str(fb)) if power else 1
    out = {"factorial_base": base, "power": power,
           "approx_digits": (digits - 1) * power + 1 if power else 1}
    if power == 0:
        out["value"] = "1"
    elif digits * power <= 10_000:
        out["value"] = str(fb**power)
    return out


def envelope(command: str, config: dict, inputs: dict, result) -> dict:
    """Standard report wrapper.

    The thread count is deliberately not echoed: results are worker-count
    independent by construction and reports must be byte-identical across
    worker counts.
    """
    cfg = {k: v for k, v in config.items() if k != "threads"}
    return {
        "tool": "groupword",
        "version": __version__,
        "command": command,
        "config": encode(cfg),
        "input": encode(inputs),
        "result": encode(result),
    }


def dumps(obj) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2) + "\n"
