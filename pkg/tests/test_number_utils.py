from fractions import Fraction
import numpy as np
import pytest
from powerbalance.number_utils import array_to_jsonable
from powerbalance.number_utils import as_array
from powerbalance.number_utils import halve
from powerbalance.number_utils import is_exact
from powerbalance.number_utils import resolve_tolerance
from powerbalance.number_utils import sign
from powerbalance.number_utils import to_jsonable
from powerbalance.number_utils import to_number


def test_to_number():
    assert to_number(3) == 3 and isinstance(to_number(np.int64(3)), int)
    assert to_number(Fraction(4, 2)) == 2 and isinstance(to_number(Fraction(4, 2)), int)
    assert to_number("5/2") == Fraction(5, 2)
    assert to_number("2.5") == Fraction(5, 2)
    assert isinstance(to_number(2.5), float)

    # Assert booleans and junk are rejected
    with pytest.raises(TypeError) as excinfo:
        to_number(True)
    assert str(excinfo.value) == "Expect a number, got a boolean"
    with pytest.raises(TypeError) as excinfo:
        to_number(None)
    assert str(excinfo.value) == "Expect a number, got NoneType"
    with pytest.raises(TypeError):
        to_number("abc")
    with pytest.raises(TypeError):
        to_number("nan")
    for bad in (float("nan"), float("inf"), np.float64("-inf")):
        with pytest.raises(ValueError) as excinfo:
            to_number(bad)
        assert str(excinfo.value) == "Numbers should be finite."


def test_as_array():
    ints = as_array([[1, 2], [3, 4]])
    assert ints.dtype == np.int64 and ints.shape == (2, 2)

    rationals = as_array([1, "1/2"])
    assert rationals.dtype == object
    assert list(rationals) == [1, Fraction(1, 2)]

    floats = as_array([1, Fraction(1, 2), 0.25])
    assert floats.dtype == float
    np.testing.assert_array_equal(floats, [1.0, 0.5, 0.25])

    # Assert numpy float input is copied, not shared
    source = np.array([1.0, 2.0])
    assert as_array(source) is not source
    with pytest.raises(ValueError):
        as_array(np.array([1.0, np.nan]))

    # integers whose sum could wrap around int64 stay Python ints
    assert as_array([2**61, 2**61 - 1]).dtype == np.int64
    big = as_array([2**61, 2**61])
    assert big.dtype == object and big.sum() == 2**62
    assert as_array(np.array([2**61, 2**61])).dtype == object
    assert as_array(np.array([3, -4])).dtype == np.int64


def test_is_exact_and_tolerance():
    assert is_exact(np.array([1, 2]))
    assert is_exact(as_array(["1/3"]))
    assert not is_exact(np.array([0.5]))
    assert is_exact(Fraction(1, 3)) and not is_exact(0.5)

    assert resolve_tolerance(None, np.array([1]), 3) == 0
    assert resolve_tolerance(None, np.array([1.0])) == 1e-9
    assert resolve_tolerance(1e-6, np.array([1.0])) == 1e-6


def test_sign():
    assert sign(1e-12, 1e-9) == 0
    assert sign(-1e-6, 1e-9) == -1
    assert sign(Fraction(1, 10**12), 0) == 1


def test_halve():
    assert halve(5) == Fraction(5, 2)
    assert halve(4) == 2 and isinstance(halve(4), int)
    assert halve(5.0) == 2.5


def test_jsonable():
    assert to_jsonable(Fraction(5, 2)) == "5/2"
    assert to_jsonable(np.int64(7)) == 7
    assert to_jsonable(0.5) == 0.5
    assert array_to_jsonable(as_array([[1, "1/2"], [0, 3]])) == [[1, "1/2"], [0, 3]]
    assert array_to_jsonable(np.zeros(0, dtype=np.int64)) == []
