"""JSON output with floats fixed at 17 significant digits (byte-stable across runs)."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


def _encode(obj) -> str:
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating, Fraction)):
        v = float(obj)
        if not math.isfinite(v):
            return json.dumps(str(v))
        return format(v, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    return json.dumps(str(obj))


def dumps(obj) -> str:
    return _encode(obj)


def dumps_lines(records) -> str:
    return "".join(_encode(r) + "\n" for r in records)
