from fractions import Fraction
import pandas as pd
import numpy as np
from powerbalance.balance import Violation
from powerbalance.game import State
from powerbalance.text_utils import (
    format_value,
    format_countries,
    summarize_states,
    format_violation,
    format_witness,
    right_justify,
    render_table,
)
from pandas.testing import assert_series_equal


def test_format_value():
    assert format_value(5) == "5"
    assert format_value(np.int64(5)) == "5"
    assert format_value(Fraction(5, 2)) == "5/2"
    assert format_value(Fraction(4, 2)) == "2"
    assert format_value(2.5) == "2.5"
    assert format_value("3/6") == "1/2"


def test_format_countries():
    assert format_countries((0, 2)) == "{1,3}"
    assert format_countries([]) == "{}"


def test_summarize_states():
    assert summarize_states([State.PRECARIOUS] * 3) == "precarious×3"
    assert summarize_states([State.SAFE, State.UNSAFE, State.UNSAFE]) == "safe, unsafe, unsafe"
    # a single country is not collapsed
    assert summarize_states([State.SAFE]) == "safe"
    assert summarize_states(["safe", "safe"]) == "safe×2"


def test_format_violation():
    assert format_violation(Violation("2", (0,), "u_00 = 2 but should be 0.")) == "condition 2 at country 1"
    assert format_violation(Violation("3", (0, 1), "u_01 = 4 but u_10 = 5.")) == "condition 3 at pair (1,2)"
    assert (
        format_violation(Violation("valid", (), "Negative entry at (0, 1)."))
        == "invalid allocation: Negative entry at (0, 1)."
    )


def test_format_witness():
    witness = {"unsaturated_source": (2,), "unsaturated_sink": (), "subset": (0, 2)}
    assert format_witness(witness) == "unsaturated source arcs at {3}; violating subset {1,3}"
    assert format_witness({"violators": (0,)}) == "necessary condition fails at {1}"
    assert format_witness({}) == "no witness"


def test_right_justify():
    _df = pd.DataFrame({"col": [5, 12, Fraction(1, 2)]})
    correct_df = pd.DataFrame({"col": ["  5", " 12", "1/2"]})
    result_df = right_justify(_df, col="col")
    assert_series_equal(result_df["col"], correct_df["col"])

    # Assert the input frame is left alone
    assert _df["col"].tolist() == [5, 12, Fraction(1, 2)]

    # Assert empty columns pass through
    assert right_justify(pd.DataFrame({"col": []}), col="col").empty


def test_render_table():
    _df = pd.DataFrame({"i": [1, 1], "j": [2, 3], "v": [Fraction(5, 2), 10]})
    lines = render_table(_df, numeric=("v",)).splitlines()
    assert len(lines) == 3
    assert lines[1].split() == ["1", "2", "5/2"]
    assert lines[2].split() == ["1", "3", "10"]
