"""Deterministic text emission: floats at 17 significant digits, LF endings."""

import numpy as np


def fmt(value):
    """Format a scalar for file output; floats get 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def json_text(obj):
    """Minimal JSON emitter with fmt() float formatting and stable key order."""
    if obj is None:
        return "null"
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(obj, dict):
        items = ", ".join(f"{json_text(str(k))}: {json_text(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(json_text(v) for v in obj) + "]"
    return fmt(obj)


def write_text(path, text):
    """Write text with LF line endings regardless of platform."""
    with open(path, "w", newline="") as fh:
        fh.write(text)
