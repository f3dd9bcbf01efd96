"""
Phase-one simplex for the feasibility of C v = pi, v >= 0.
"""
import logging
from typing import Optional
import numpy as np
from powerbalance.balance import AdversaryIncidence
from powerbalance.exceptions import NumericalFailure
from powerbalance.number_utils import as_array
from powerbalance.number_utils import as_fraction_array
from powerbalance.number_utils import is_exact
from powerbalance.number_utils import resolve_tolerance
from powerbalance.settings import ITERATION_FACTOR

logger = logging.getLogger(__name__)


def _initial_tableau(inc: AdversaryIncidence, exact: bool) -> np.ndarray:
    """
    Tableau [C | I | pi] with the reduced-cost row of min sum(a) appended.

    The artificial columns start basic with value pi >= 0.
    """
    m, q = inc.n_a, inc.q
    T = np.zeros((m + 1, q + m + 1), dtype=np.int64)
    T[:m, :q] = inc.C
    T[:m, q : q + m] = np.eye(m, dtype=np.int64)
    T = as_fraction_array(T) if exact else T.astype(float)
    T[:m, -1] = as_fraction_array(inc.pi) if exact else inc.pi.astype(float)
    T[m, :q] = -T[:m, :q].sum(axis=0)
    T[m, -1] = -T[:m, -1].sum()
    return T


def _entering(T: np.ndarray, tol: float) -> Optional[int]:
    """Bland's rule: lowest-index column with negative reduced cost."""
    candidates = np.flatnonzero(T[-1, :-1] < -tol)
    return int(candidates[0]) if len(candidates) else None


def _leaving(T: np.ndarray, basis: np.ndarray, column: int, tol: float) -> Optional[int]:
    """Minimum ratio row; ties go to the row whose basic variable has the lowest index."""
    best, best_ratio = None, None
    for r in range(T.shape[0] - 1):
        if T[r, column] > tol:
            ratio = T[r, -1] / T[r, column]
            if (
                best is None
                or ratio < best_ratio - tol
                or (abs(ratio - best_ratio) <= tol and basis[r] < basis[best])
            ):
                best, best_ratio = r, ratio
    return best


def _pivot(T: np.ndarray, row: int, column: int) -> None:
    T[row] = T[row] / T[row, column]
    for r in range(T.shape[0]):
        if r != row and T[r, column] != 0:
            T[r] = T[r] - T[r, column] * T[row]


def lp_feasibility(
    inc: AdversaryIncidence,
    tol: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> Optional[np.ndarray]:
    """
    Find v >= 0 with C v = pi, or report that none exists.

    Minimizes the sum of one artificial variable per row of C v + a = pi. The system is
    feasible iff the optimum is zero. Exact inputs run on Fractions, so the verdict and the
    returned vector are exact.

    Parameters
    ----------
    inc (AdversaryIncidence)
            Incidence system of the adversary subgraph.
    tol (float)
            Pivot and optimality tolerance for float inputs; exact inputs use 0.
    max_iterations (int)
            Pivot cap. Defaults to ITERATION_FACTOR * (q + n_a) ** 2.

    Returns
    -------
            np.ndarray edge vector in the order of `inc.edges`, or None if infeasible.
    """
    m, q = inc.n_a, inc.q
    exact = is_exact(inc.pi)
    tol = resolve_tolerance(tol, inc.pi)
    if q == 0:
        return np.zeros(0, dtype=inc.pi.dtype)
    if max_iterations is None:
        max_iterations = ITERATION_FACTOR * (q + m) ** 2
    T = _initial_tableau(inc, exact)
    basis = np.arange(q, q + m)
    for iteration in range(max_iterations + 1):
        column = _entering(T, tol)
        if column is None:
            break
        if iteration == max_iterations:
            raise NumericalFailure(f"Simplex did not converge within {max_iterations} iterations.")
        row = _leaving(T, basis, column, tol)
        if row is None:
            # the phase-one objective is bounded below by zero
            raise NumericalFailure("Phase-one simplex reported an unbounded direction.")
        _pivot(T, row, column)
        basis[row] = column

    residual = -T[-1, -1]
    logger.debug("phase-one simplex: %d pivots, residual %s", iteration, residual)
    if residual > tol:
        return None
    v = np.zeros(q, dtype=object if exact else float)
    for r, var in enumerate(basis):
        if var < q:
            v[var] = T[r, -1]
    if exact:
        return as_array(list(v))
    v[v < 0] = 0.0
    return v
