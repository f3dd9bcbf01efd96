import pytest
from powerbalance.balance import check_balanced
from powerbalance.game import build_environment
from powerbalance.dataframe_utils import (
    states_table,
    edge_table,
    violations_table,
    sort_states,
)
import pandas as pd
from pandas.testing import assert_frame_equal
from pandas.testing import assert_series_equal


def test_states_table(triangle, U2, U4):
    df = states_table(triangle, U2)
    assert list(df.columns) == ["country", "power", "support", "threat", "state"]
    assert df["support"].tolist() == [8, 6, 4]
    assert df["threat"].tolist() == [9, 4, 5]
    assert df["state"].tolist() == ["unsafe", "safe", "unsafe"]

    df = states_table(triangle, U4, one_based=True)
    assert df["country"].tolist() == [1, 2, 3]
    assert set(df["state"]) == {"precarious"}


def test_edge_table(triangle, path):
    correct_df = pd.DataFrame({"i": [1, 1, 2], "j": [2, 3, 3], "v": [5, 3, 1]})
    result_df = edge_table(triangle, [5, 3, 1], one_based=True)
    assert_series_equal(result_df["i"], correct_df["i"], check_dtype=False)
    assert_series_equal(result_df["j"], correct_df["j"], check_dtype=False)
    assert result_df["v"].tolist() == [5, 3, 1]

    assert edge_table(path, ["1/2", 2])["v"].tolist()[0] == pytest.approx(0.5)
    assert len(edge_table(build_environment([1, 2]), [])) == 0


def test_violations_table(triangle, U2, U4):
    df = violations_table(check_balanced(triangle, U2), one_based=True)
    assert df["condition"].tolist() == ["3", "3"]
    assert df["location"].tolist() == [(1, 2), (2, 3)]

    # Assert a balanced report gives an empty frame with the usual columns
    df = violations_table(check_balanced(triangle, U4))
    assert df.empty
    assert list(df.columns) == ["condition", "location", "message"]


def test_sort_states(triangle, U2):
    input_df = states_table(triangle, U2)
    result_df = sort_states(input_df)
    assert result_df["country"].tolist() == [0, 2, 1]
    assert result_df["state"].tolist() == ["unsafe", "unsafe", "safe"]

    # Assert the sort is stable and the original frame untouched
    assert_frame_equal(input_df, states_table(triangle, U2))
    result_df = sort_states(input_df, order=("safe", "unsafe", "precarious"))
    assert result_df["country"].tolist() == [1, 0, 2]
