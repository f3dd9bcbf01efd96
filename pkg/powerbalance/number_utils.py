from fractions import Fraction
import math
from typing import Any, Iterable, Optional, Union
import numpy as np
from powerbalance.settings import TOLERANCE

Number = Union[int, Fraction, float]

# Integer arrays whose absolute values sum to this or more stay Python ints in object
# arrays, so row and column sums cannot wrap around int64.
_INT64_SAFE = 2**62


def to_number(value: Any) -> Number:
    """
    Convert a scalar into an int, a Fraction or a float.

    Integral Fractions collapse to int. Strings are read as rationals, so both
    "5/2" and "2.5" become Fraction(5, 2).

    Parameters
    ----------
    value (int, float, Fraction, str)
            Scalar to convert. Booleans are rejected, and so are NaN and infinities.

    Returns
    -------
            int, Fraction or float.
    """
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("Expect a number, got a boolean")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError("Numbers should be finite.")
        return float(value)
    if isinstance(value, str):
        try:
            parsed = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise TypeError(f"Cannot read '{value}' as a number")
        return to_number(parsed)
    raise TypeError(f"Expect a number, got {type(value).__name__}")


def is_exact(values: Any) -> bool:
    """True if `values` (scalar or array) carries exact integers or rationals only."""
    if isinstance(values, np.ndarray):
        if values.dtype.kind in "iu":
            return True
        if values.dtype == object:
            return all(isinstance(x, (int, Fraction)) for x in values.ravel())
        return False
    return isinstance(values, (int, np.integer, Fraction)) and not isinstance(values, bool)


def as_array(values: Any) -> np.ndarray:
    """
    Build a numeric array that keeps exact inputs exact.

    All-integral input gives an int64 array, rationals give an object array of
    Fractions and any float turns the whole array into float64. Integers too large
    to sum safely in int64 give an object array of Python ints.

    Parameters
    ----------
    values (array-like)
            Nested sequence or array of scalars accepted by `to_number`.

    Returns
    -------
            np.ndarray
    """
    if isinstance(values, np.ndarray) and values.dtype.kind == "f":
        if not np.all(np.isfinite(values)):
            raise ValueError("Numbers should be finite.")
        return values.astype(float)
    if isinstance(values, np.ndarray) and values.dtype.kind in "iu" and values.size:
        # max * size bounds the sum of absolute values
        bound = max(int(values.max()), -int(values.min())) * values.size
        if bound < _INT64_SAFE:
            return values.astype(np.int64)
    raw = np.asarray(values, dtype=object)
    flat = [to_number(x) for x in raw.ravel()]
    if any(isinstance(x, float) for x in flat):
        return np.array([float(x) for x in flat], dtype=float).reshape(raw.shape)
    if all(isinstance(x, int) for x in flat) and sum(abs(x) for x in flat) < _INT64_SAFE:
        return np.array(flat, dtype=np.int64).reshape(raw.shape)
    out = np.empty(len(flat), dtype=object)
    out[:] = flat
    return out.reshape(raw.shape)


def as_fraction_array(values: np.ndarray) -> np.ndarray:
    """Object array of Fractions, used where exact division is needed."""
    out = np.empty(values.shape, dtype=object)
    out.ravel()[:] = [Fraction(x) for x in np.asarray(values).ravel()]
    return out


def resolve_tolerance(tol: Optional[float], *operands: Any) -> float:
    """Zero when every operand is exact, otherwise `tol` (default TOLERANCE)."""
    if all(is_exact(op) for op in operands):
        return 0
    return TOLERANCE if tol is None else tol


def sign(value: Number, tol: float) -> int:
    """Sign of `value` with a dead band of width `tol` around zero."""
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def halve(value: Number) -> Number:
    """Exact half of an exact value, float half otherwise."""
    if is_exact(value):
        return to_number(Fraction(value) / 2)
    return value / 2


def to_jsonable(value: Any) -> Union[int, float, str]:
    """Scalar for JSON output: ints stay ints, rationals become "p/q" strings."""
    number = to_number(value)
    if isinstance(number, Fraction):
        return f"{number.numerator}/{number.denominator}"
    return number


def array_to_jsonable(values: Iterable) -> list:
    """Nested list version of `to_jsonable` for vectors and matrices."""
    arr = np.asarray(values, dtype=object)
    if arr.ndim == 0:
        return to_jsonable(arr.item())
    return [array_to_jsonable(row) if np.ndim(row) else to_jsonable(row) for row in arr]
