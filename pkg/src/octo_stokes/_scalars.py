"""Scalar modes and overflow headroom for coefficient arrays.

Exact mode keeps coefficients in int64 arrays while every intermediate is
provably below ``INT64_SAFE`` and switches to object arrays of Python ints
otherwise, so results are always arbitrary-precision exact.
"""
import enum
import math
import numbers

import numpy as np

INT64_SAFE = 2**62


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class ModeMismatchError(ValueError):
    pass


def check_scalar(x, mode):
    """Validate and coerce a single scalar for ``mode``."""
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if mode is Mode.EXACT:
        if not isinstance(x, numbers.Integral):
            raise TypeError(f"exact mode needs integers, got {type(x).__name__}")
        return int(x)
    if not isinstance(x, numbers.Real):
        raise TypeError(f"float mode needs real numbers, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite value in float mode")
    return x


def infer_mode(values):
    """EXACT if every value is integral, FLOAT otherwise."""
    for v in values:
        if not isinstance(v, numbers.Integral):
            return Mode.FLOAT
    return Mode.EXACT


def max_abs(arr):
    """Largest absolute entry as a Python number (0 for empty arrays)."""
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max()) if arr.dtype.kind == "i" else float(np.abs(arr).max())


def as_exact(arr):
    """Return ``arr`` as int64 if it fits comfortably, else as an object array."""
    arr = np.asarray(arr)
    if arr.dtype == object:
        if arr.size and max_abs(arr) >= INT64_SAFE:
            return arr
        return arr.astype(np.int64)
    if arr.dtype.kind not in "iu":
        raise TypeError(f"exact mode needs integer arrays, got {arr.dtype}")
    return arr.astype(np.int64)


def widen(arr):
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def with_headroom(bound, *arrays):
    """Widen exact int64 arrays to Python ints when ``bound`` could overflow."""
    if bound < INT64_SAFE:
        return arrays
    return tuple(widen(a) if a.dtype.kind == "i" else a for a in arrays)


def zeros(shape, mode, like=()):
    """Zero array of the right dtype; object if any array in ``like`` is."""
    if mode is Mode.FLOAT:
        return np.zeros(shape, dtype=np.float64)
    if any(a.dtype == object for a in like):
        return widen(np.zeros(shape, dtype=np.int64))
    return np.zeros(shape, dtype=np.int64)


def to_python(x, mode):
    return int(x) if mode is Mode.EXACT else float(x)
