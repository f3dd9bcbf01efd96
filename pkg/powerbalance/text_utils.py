import pandas as pd
from typing import Any, Dict, Iterable, Sequence, Tuple
from powerbalance.balance import Violation
from powerbalance.game import State
from powerbalance.number_utils import to_jsonable


def format_value(value: Any) -> str:
    """Exact text of a number: '5', '5/2' or '2.5'."""
    return str(to_jsonable(value))


def format_countries(countries: Iterable[int]) -> str:
    """1-based set notation, e.g. (0, 2) -> '{1,3}'."""
    return "{" + ",".join(str(k + 1) for k in countries) + "}"


def summarize_states(states: Sequence[State]) -> str:
    """
    Short text of a state vector.

    Parameters
    ----------
    states (list-like)
            State of every country.

    Returns
    -------
            str: 'precarious×3' when every country shares one state, else the states
            separated by ', '.
    """
    values = [State(s).value for s in states]
    if len(values) > 1 and len(set(values)) == 1:
        return f"{values[0]}×{len(values)}"
    return ", ".join(values)


def format_violation(violation: Violation) -> str:
    """'condition 2 at country 1' (1-based); invalid allocations report their first issue."""
    if violation.condition == "valid":
        return f"invalid allocation: {violation.message}"
    if len(violation.location) == 1:
        return f"condition {violation.condition} at country {violation.location[0] + 1}"
    pair = ",".join(str(k + 1) for k in violation.location)
    return f"condition {violation.condition} at pair ({pair})"


_WITNESS_LABELS = {
    "violators": "necessary condition fails at",
    "unsaturated_source": "unsaturated source arcs at",
    "unsaturated_sink": "unsaturated sink arcs at",
    "subset": "violating subset",
}


def format_witness(witness: Dict[str, Tuple[int, ...]]) -> str:
    """Join the non-empty parts of an infeasibility witness, e.g. 'violating subset {1,3}'."""
    parts = [
        f"{_WITNESS_LABELS.get(key, key)} {format_countries(countries)}"
        for key, countries in witness.items()
        if countries
    ]
    return "; ".join(parts) if parts else "no witness"


def right_justify(dataframe: pd.core.frame.DataFrame, col: str) -> pd.core.frame.DataFrame:
    """
    Format a numeric column exactly and right-justify it to its widest entry.

    Parameters
    ----------
    dataframe (pandas.core.frame.DataFrame)
            Table with a numeric column.
    col (str)
            Name of the column to format.

    Returns
    -------
            pd.core.frame.DataFrame with the column replaced by padded strings.
    """
    dataframe = dataframe.copy()
    formatted = dataframe[col].apply(format_value).astype(str)
    pad = formatted.str.len().max() if len(formatted) else 0
    dataframe[col] = formatted.apply(lambda x: x.rjust(pad))
    return dataframe


def render_table(dataframe: pd.core.frame.DataFrame, numeric: Sequence[str] = ()) -> str:
    """Plain-text table for terminal output, numbers shown exactly."""
    for col in numeric:
        dataframe = right_justify(dataframe, col)
    return dataframe.to_string(index=False)
