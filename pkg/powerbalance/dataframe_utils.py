import pandas as pd
import numpy as np
from typing import Any, Optional, Sequence
from powerbalance.balance import BalanceReport
from powerbalance.game import EnvironmentGraph
from powerbalance.game import state_vector
from powerbalance.game import supports
from powerbalance.game import threats
from powerbalance.number_utils import to_number


def states_table(
    g: EnvironmentGraph, U: np.ndarray, tol: Optional[float] = None, one_based: bool = False
) -> pd.core.frame.DataFrame:
    """
    Tabulate power, total support, total threat and state of every country.

    Parameters
    ----------
    g (EnvironmentGraph)
            Environment graph.
    U (np.ndarray)
            Power allocation matrix.
    tol (float)
            Tolerance for float inputs.
    one_based (bool)
            If True, number the countries from 1 as in printed reports.

    Returns
    -------
            pd.core.frame.DataFrame with columns 'country', 'power', 'support', 'threat', 'state'.
    """
    offset = 1 if one_based else 0
    return pd.DataFrame(
        {
            "country": np.arange(g.n) + offset,
            "power": [to_number(p) for p in g.powers],
            "support": [to_number(s) for s in supports(g, U)],
            "threat": [to_number(t) for t in threats(g, U)],
            "state": [s.value for s in state_vector(g, U, tol)],
        }
    )


def edge_table(
    g: EnvironmentGraph, v: Sequence[Any], one_based: bool = False
) -> pd.core.frame.DataFrame:
    """
    Tabulate an edge vector against the adversary pairs it sits on.

    Returns
    -------
            pd.core.frame.DataFrame with columns 'i', 'j', 'v', one row per adversary pair in
            lexicographic order.
    """
    offset = 1 if one_based else 0
    edges = np.asarray(g.adversary_edges, dtype=np.int64).reshape(-1, 2) + offset
    return pd.DataFrame({"i": edges[:, 0], "j": edges[:, 1], "v": [to_number(x) for x in v]})


def violations_table(report: BalanceReport, one_based: bool = False) -> pd.core.frame.DataFrame:
    """One row per violated balance condition: 'condition', 'location', 'message'."""
    offset = 1 if one_based else 0
    rows = [
        {
            "condition": v.condition,
            "location": tuple(k + offset for k in v.location),
            "message": v.message,
        }
        for v in report.violations
    ]
    return pd.DataFrame(rows, columns=["condition", "location", "message"])


def sort_states(
    dataframe: pd.core.frame.DataFrame, order: Sequence[str] = ("unsafe", "precarious", "safe")
) -> pd.core.frame.DataFrame:
    """
    Sort a states table by state in the stated order, then by country.

    Parameters
    ----------
    dataframe (pandas.core.frame.DataFrame)
            Output of `states_table`.
    order (list-like)
            Order of the states.

    Returns
    -------
            pd.core.frame.DataFrame ordered by 'order' in 'state'.
    """
    dataframe = dataframe.copy()
    dataframe["state"] = pd.Categorical(dataframe["state"], list(order))
    dataframe = dataframe.sort_values(["state", "country"], kind="stable")
    dataframe["state"] = dataframe["state"].astype(str)
    return dataframe.reset_index(drop=True)
