"""Exact per-variable bounds under range-sum equations and box constraints.

The intruder's knowledge after a set of answered range queries is a linear
system: each equation fixes the sum of a contiguous run of the (shuffled)
records, and every record value lies in the attribute domain ``[d_min,
d_max]``.  ``variable_bounds`` returns the exact minimum and maximum any
single record can take over all real-valued assignments consistent with that
knowledge, the bounds named L and U by the query-restriction posterior.

Writing ``S[i]`` for the sum of the first ``i`` record values turns every
constraint into a bound on a difference of two prefix sums:

* a query over positions ``[a, b)`` with answer ``c`` gives
  ``S[b] - S[a] = c`` (two opposing inequalities), and
* the box gives ``d_min <= S[i+1] - S[i] <= d_max``.

The tightest implied bound on any difference ``S[u] - S[v]`` is the shortest
path from v to u in the graph with one weighted edge per inequality, and that
bound is attained by a feasible assignment, so shortest paths give the exact
LP optimum for every record at once.  A negative cycle means the equations
contradict each other.  All-pairs distances are computed with a vectorised
Floyd-Warshall, cached per system; integral data stays exact because every
path weight is a sum of integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = ["Bounds", "RangeEquation", "QuerySystem", "InfeasibleSystemError", "variable_bounds"]

_SNAP_TOL = 1e-6
_FEAS_TOL = 1e-9


class InfeasibleSystemError(Exception):
    """The equations admit no assignment within the box, e.g. corrupted answers."""


@dataclass(frozen=True)
class Bounds:
    """Closed interval [lower, upper] certain to contain a record's value."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class RangeEquation:
    """Sum of the contiguous run of variables [start, stop) equals total."""

    start: int
    stop: int
    total: float

    def __post_init__(self) -> None:
        if self.start < 0 or self.stop <= self.start:
            raise ValueError(f"invalid range [{self.start}, {self.stop})")

    @property
    def size(self) -> int:
        return self.stop - self.start

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class QuerySystem:
    """Range-sum equations plus a shared box constraint on every variable.

    ``order`` optionally maps variable positions to caller-side record
    indices (``order[pos]`` is the record at position ``pos``); it records
    the shuffle used when the system was built from a dataset and is ignored
    by the solver.
    """

    n_vars: int
    equations: tuple[RangeEquation, ...]
    box: tuple[int, int]
    order: tuple[int, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise ValueError("system must have at least one variable")
        d_min, d_max = self.box
        if d_min > d_max:
            raise ValueError(f"empty box [{d_min}, {d_max}]")
        object.__setattr__(self, "equations", tuple(self.equations))
        for eq in self.equations:
            if eq.stop > self.n_vars:
                raise ValueError(f"equation range [{eq.start}, {eq.stop}) leaves the system")
            if not eq.size * d_min - _FEAS_TOL <= eq.total <= eq.size * d_max + _FEAS_TOL:
                raise InfeasibleSystemError(
                    f"query answer {eq.total} impossible for {eq.size} values in "
                    f"[{d_min}, {d_max}]"
                )
        if self.order is not None:
            order = tuple(int(i) for i in self.order)
            if sorted(order) != list(range(self.n_vars)):
                raise ValueError("order must be a permutation of the variable positions")
            object.__setattr__(self, "order", order)

    @cached_property
    def _solution(self) -> tuple[np.ndarray, np.ndarray]:
        return _solve_all(self)

    def position_of(self, record: int) -> int:
        """Variable position of a caller-side record index."""
        if self.order is None:
            if not 0 <= record < self.n_vars:
                raise IndexError(f"record {record} out of range")
            return record
        return self._inverse_order[record]

    @cached_property
    def _inverse_order(self) -> dict[int, int]:
        assert self.order is not None
        return {rec: pos for pos, rec in enumerate(self.order)}


def _solve_all(system: QuerySystem) -> tuple[np.ndarray, np.ndarray]:
    """Exact lower and upper bounds for every variable.

    Node i of the constraint graph is the prefix sum over the first i
    variables; an edge (v, u, w) encodes S[u] - S[v] <= w.  After the
    all-pairs shortest-path pass, variable i is bracketed by
    ``-dist[i+1, i] <= x_i <= dist[i, i+1]``.
    """
    n = system.n_vars
    m = n + 1
    d_min, d_max = system.box
    dist = np.full((m, m), np.inf)
    np.fill_diagonal(dist, 0.0)
    steps = np.arange(n)
    dist[steps, steps + 1] = float(d_max)
    dist[steps + 1, steps] = float(-d_min)
    for eq in system.equations:
        c = float(eq.total)
        if c < dist[eq.start, eq.stop]:
            dist[eq.start, eq.stop] = c
        if -c < dist[eq.stop, eq.start]:
            dist[eq.stop, eq.start] = -c
    for k in range(m):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    if np.diagonal(dist).min() < -_FEAS_TOL:
        raise InfeasibleSystemError("query answers contradict each other")
    upper = dist[steps, steps + 1]
    lower = -dist[steps + 1, steps]
    lower, upper = _snap(lower), _snap(upper)
    np.clip(lower, d_min, d_max, out=lower)
    np.clip(upper, d_min, d_max, out=upper)
    lower.flags.writeable = False
    upper.flags.writeable = False
    return lower, upper


def _snap(x: np.ndarray) -> np.ndarray:
    """Round entries sitting within 1e-6 of an integer; answers and domains are integral."""
    nearest = np.round(x)
    return np.where(np.abs(x - nearest) < _SNAP_TOL, nearest, x)


def variable_bounds(system: QuerySystem, var_index: int) -> Bounds:
    """Exact [L, U] for one variable over all assignments satisfying the system.

    Sound (any consistent assignment keeps the variable inside the interval)
    and tight over the reals (both endpoints are attained).  The first call
    solves the whole system; further lookups on the same system are free.
    """
    if not 0 <= var_index < system.n_vars:
        raise IndexError(f"variable {var_index} out of range for {system.n_vars} variables")
    lower, upper = system._solution
    return Bounds(float(lower[var_index]), float(upper[var_index]))
