import pandas.api.types as ptypes
import numpy as np
import warnings
from typing import Any, Iterable, List, Optional, Sequence, Tuple
from powerbalance.number_utils import as_array
from powerbalance.number_utils import is_exact

Pair = Tuple[int, int]


def check_powers(powers: Any) -> np.ndarray:
    """
    Check and convert the vector of total powers.

    Parameters
    ----------
    powers (list-like)
            Total power p_i of every country. Must be nonnegative numbers.

    Returns
    -------
            np.ndarray of powers (int64, object of Fractions, or float64).
    """
    if not ptypes.is_list_like(powers):
        raise TypeError("Powers should be list-like.")
    powers = as_array(powers if isinstance(powers, np.ndarray) else list(powers))
    if powers.ndim != 1:
        raise ValueError("Powers should be a flat list of numbers.")
    if np.any(powers < 0):
        raise ValueError("Powers should be nonnegative.")
    return powers


def check_index(i: Any, n: int) -> int:
    """Check that `i` is a valid 0-based country index for `n` countries."""
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise TypeError(f"Country index should be an integer, got {i!r}.")
    if not 0 <= i < n:
        raise IndexError(f"Country index {i} out of range for {n} countries.")
    return int(i)


def check_pairs(pairs: Optional[Iterable], n: int, kind: str) -> Tuple[Pair, ...]:
    """
    Check a set of unordered country pairs and normalize them.

    Parameters
    ----------
    pairs (list-like)
            Pairs [i, j] of 0-based country indices. None means no pairs.
    n (int)
            Number of countries.
    kind (str)
            Name of the relation, used in error messages ('friend' or 'adversary').

    Returns
    -------
            Tuple of (min, max) pairs sorted lexicographically.
    """
    if pairs is None:
        return ()
    if not ptypes.is_list_like(pairs):
        raise TypeError(f"{kind.capitalize()} pairs should be list-like.")
    normalized: List[Pair] = []
    seen = set()
    for pair in pairs:
        if not ptypes.is_list_like(pair) or len(pair) != 2:
            raise ValueError(f"{kind.capitalize()} pair {pair!r} should have exactly two entries.")
        i, j = (check_index(k, n) for k in pair)
        if i == j:
            raise ValueError(f"Self-loop at country {i} is not allowed.")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"Duplicate {kind} pair {key}.")
        seen.add(key)
        normalized.append(key)
    return tuple(sorted(normalized))


def check_disjoint(friend_edges: Sequence[Pair], adversary_edges: Sequence[Pair]) -> None:
    """Check that no pair is both a friend and an adversary pair."""
    overlap = sorted(set(friend_edges) & set(adversary_edges))
    if overlap:
        raise ValueError(f"Pair {overlap[0]} is marked both friend and adversary.")
    return None


def check_square(matrix: Any, n: int) -> np.ndarray:
    """Check that `matrix` is an n x n numeric matrix and convert it."""
    if not ptypes.is_list_like(matrix):
        raise TypeError("Allocation matrix should be list-like.")
    if isinstance(matrix, np.ndarray):
        if matrix.shape != (n, n):
            raise ValueError(f"Allocation matrix should be {n} x {n}.")
        return as_array(matrix)
    rows = list(matrix)
    if len(rows) != n or any((not ptypes.is_list_like(r)) or len(r) != n for r in rows):
        raise ValueError(f"Allocation matrix should be {n} x {n}.")
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return as_array([list(r) for r in rows])


def check_iterables_samelen(*args):  # type: ignore
    """Assert that provided iterables have same length"""
    try:
        assert all(len(args[0]) == len(_arg) for _arg in args[1:])
    except Exception:
        raise ValueError("Iterables not of the same length.")
    return None


def check_probability(value: Any, name: str) -> None:
    """Check that a scalar parameter lies in [0, 1]."""
    if isinstance(value, bool) or not ptypes.is_number(value):
        raise TypeError(f"{name} should be a number.")
    if not 0 <= value <= 1:
        raise ValueError(f"{name} should be between 0 and 1.")
    return None


def check_count(value: Any, name: str, minimum: int = 0) -> int:
    """Check that a parameter is an integer no smaller than `minimum`."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} should be an integer.")
    if value < minimum:
        raise ValueError(f"{name} should be at least {minimum}.")
    return int(value)


def check_range(bounds: Any, name: str) -> Tuple[int, int]:
    """Check an inclusive integer range (low, high) with 0 <= low <= high."""
    if not ptypes.is_list_like(bounds) or len(bounds) != 2:
        raise TypeError(f"{name} should be a (low, high) pair.")
    low, high = (check_count(b, name) for b in bounds)
    if low > high:
        raise ValueError(f"{name} should have low <= high.")
    return low, high


def warn_inexact(tol: float, *operands: Any) -> None:
    """Warn once per call when float input forces tolerance-based comparisons."""
    if not all(is_exact(op) for op in operands):
        warnings.warn(f"Float input found; comparisons use tolerance {tol}.")
    return None
