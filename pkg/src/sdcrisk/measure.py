"""Entropy-based disclosure risk for a set of candidate confidential values.

An intruder who has narrowed a confidential attribute down to a few candidate
values with probabilities is described by a :class:`ValueDistribution`.  Plain
Shannon entropy measures uncertainty about the *exact* value but ignores how
close the candidates are to each other: being torn between 77 and 80 is a much
better guess than being torn between 50 and 107.

This module quantifies resistance to *approximate* disclosure.  For a window
width ``epsilon``, candidate values may be grouped into contiguous blocks of
span at most ``epsilon`` (each block acting as a single merged outcome whose
probability is the sum of its members), and the intruder is credited with the
grouping that minimises the entropy.  The resulting curve ``h(epsilon)``
starts at the Shannon entropy ``h(0)`` and falls to zero once one window
covers every candidate.  Two summary numbers are reported:

* ``h0``, the initial entropy (risk of exact disclosure), and
* ``area``, the integral of the curve (resistance to approximate disclosure).

The minimisation over groupings is done by dynamic programming over prefixes;
``brute_force_min_entropy`` enumerates all contiguous partitions and exists to
verify the recurrence on small inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ValueDistribution",
    "Partition",
    "EntropyCurve",
    "RiskReport",
    "shannon_entropy",
    "min_entropy_at",
    "brute_force_min_entropy",
    "entropy_curve",
    "epsilon_max",
    "area",
    "risk_report",
    "optimal_partition",
    "read_distribution_file",
]

_PROB_SUM_TOL = 1e-9


def _plogp(q: float) -> float:
    """Entropy contribution q*log2(1/q), clamped at 0 for q rounding above 1."""
    return max(0.0, -q * math.log2(q))


@dataclass(frozen=True)
class ValueDistribution:
    """Sorted candidate confidential values with their probabilities.

    ``values`` must be strictly increasing integers and every probability must
    be positive; duplicates or zero-probability entries must be merged or
    dropped beforehand (see :meth:`from_pairs`).  Probabilities must sum to 1
    within 1e-9 and are renormalised to sum to exactly 1.
    """

    values: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        probs = tuple(float(p) for p in self.probs)
        if len(values) == 0:
            raise ValueError("distribution must contain at least one value")
        if len(values) != len(probs):
            raise ValueError("values and probs must have the same length")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("values must be strictly increasing; merge duplicates first")
        if any(p <= 0.0 for p in probs):
            raise ValueError("probabilities must be positive; drop zero entries first")
        total = math.fsum(probs)
        if abs(total - 1.0) > _PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1 within {_PROB_SUM_TOL}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", tuple(p / total for p in probs))

    @classmethod
    def from_pairs(
        cls, values: Iterable[float], probs: Iterable[float]
    ) -> "ValueDistribution":
        """Build a distribution from raw pairs.

        Sorts by value, merges duplicate values by summing their
        probabilities, drops non-positive probabilities, and normalises.
        """
        merged: dict[int, float] = {}
        for v, p in zip(values, probs, strict=True):
            iv = int(v)
            if iv != v:
                raise ValueError(f"value {v!r} is not an integer; rescale the data first")
            merged[iv] = merged.get(iv, 0.0) + float(p)
        kept = {v: p for v, p in sorted(merged.items()) if p > 0.0}
        if not kept:
            raise ValueError("no positive-probability values")
        total = math.fsum(kept.values())
        return cls(tuple(kept), tuple(p / total for p in kept.values()))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def span(self) -> int:
        """Distance between the largest and smallest candidate value."""
        return self.values[-1] - self.values[0]


@dataclass(frozen=True)
class Partition:
    """Contiguous grouping of the n candidate values into blocks.

    ``cuts`` are the strictly increasing interior cut positions: a cut at c
    separates value index c-1 from index c.  Blocks therefore are
    ``[0, cuts[0])``, ``[cuts[0], cuts[1])``, ..., ``[cuts[-1], n)``.
    """

    n: int
    cuts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("partition of an empty value set")
        cuts = tuple(int(c) for c in self.cuts)
        if any(c <= 0 or c >= self.n for c in cuts):
            raise ValueError("cuts must lie strictly inside [1, n-1]")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError("cuts must be strictly increasing")
        object.__setattr__(self, "cuts", cuts)

    def blocks(self) -> tuple[tuple[int, int], ...]:
        """Half-open index ranges of each block."""
        edges = (0,) + self.cuts + (self.n,)
        return tuple((a, b) for a, b in zip(edges, edges[1:]))

    def merged_probs(self, dist: ValueDistribution) -> tuple[float, ...]:
        """Summed probability of each block."""
        if dist.n != self.n:
            raise ValueError("partition size does not match distribution")
        return tuple(math.fsum(dist.probs[a:b]) for a, b in self.blocks())

    def max_block_span(self, dist: ValueDistribution) -> int:
        if dist.n != self.n:
            raise ValueError("partition size does not match distribution")
        return max(dist.values[b - 1] - dist.values[a] for a, b in self.blocks())


@dataclass(frozen=True)
class EntropyCurve:
    """Minimum entropy h(epsilon) sampled on the integer grid 0..epsilon_max.

    ``h[e]`` is the least achievable entropy when values may be merged within
    windows of span at most ``e``.  The curve is non-increasing and ends at 0.
    """

    epsilon_max: int
    h: tuple[float, ...]

    def __post_init__(self) -> None:
        h = tuple(float(x) for x in self.h)
        if len(h) != self.epsilon_max + 1:
            raise ValueError("curve length must be epsilon_max + 1")
        if any(b > a + _PROB_SUM_TOL for a, b in zip(h, h[1:])):
            raise ValueError("entropy curve must be non-increasing")
        if abs(h[-1]) > _PROB_SUM_TOL:
            raise ValueError("entropy must vanish at epsilon_max")
        object.__setattr__(self, "h", h)


@dataclass(frozen=True)
class RiskReport:
    """Disclosure risk summary: initial entropy, curve area, curve width.

    ``h0`` is in bits, ``area`` in bits times attribute units, ``epsilon_max``
    in attribute units.  Lower numbers mean higher risk.
    """

    h0: float
    area: float
    epsilon_max: int


def shannon_entropy(dist: ValueDistribution) -> float:
    """Shannon entropy of the candidate values in bits."""
    return math.fsum(_plogp(p) for p in dist.probs)


def _dp_row(
    values: Sequence[int], probs: Sequence[float], eps: float
) -> tuple[list[float], list[int]]:
    """One pass of the prefix recurrence at a fixed window width.

    best[i] is the minimum entropy over the first i values where every block
    spans at most eps:

        best[i] = min over j with values[i-1] - values[j-1] <= eps of
                  best[j-1] + q * log2(1/q),   q = probs[j-1] + ... + probs[i-1]

    start[i] records the smallest optimal j (ties resolved toward the widest
    final block) so an optimal partition can be reconstructed.
    """
    n = len(values)
    best = [0.0] * (n + 1)
    start = [0] * (n + 1)
    for i in range(1, n + 1):
        xi = values[i - 1]
        acc = 0.0
        best_i = math.inf
        start_i = i
        j = i
        while j >= 1 and xi - values[j - 1] <= eps:
            acc += probs[j - 1]
            cand = best[j - 1] + _plogp(acc)
            if cand <= best_i:
                best_i = cand
                start_i = j
            j -= 1
        best[i] = best_i
        start[i] = start_i
    return best, start


def min_entropy_at(dist: ValueDistribution, epsilon: float) -> float:
    """Least entropy achievable with windows of span at most ``epsilon``.

    Minimises over all contiguous groupings whose blocks each span at most
    ``epsilon``; at 0 this is the Shannon entropy, and for ``epsilon`` at
    least the value span it is 0.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    best, _ = _dp_row(dist.values, dist.probs, epsilon)
    return best[dist.n]


def optimal_partition(dist: ValueDistribution, epsilon: float) -> Partition:
    """An entropy-minimising grouping at width ``epsilon``.

    Among ties the grouping with the widest final blocks (smallest block
    starts) is returned, making the result deterministic.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    _, start = _dp_row(dist.values, dist.probs, epsilon)
    cuts = []
    i = dist.n
    while i > 0:
        j = start[i]
        if j > 1:
            cuts.append(j - 1)
        i = j - 1
    return Partition(dist.n, tuple(reversed(cuts)))


def brute_force_min_entropy(
    dist: ValueDistribution, epsilon: float, *, max_points: int = 16
) -> float:
    """Exhaustive minimum over all 2^(n-1) contiguous partitions.

    Verification oracle for :func:`min_entropy_at`; refuses distributions
    beyond ``max_points`` values to avoid accidental exponential blowups.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    n = dist.n
    if n > max_points:
        raise ValueError(f"{n} values exceeds the oracle cap of {max_points}")
    values, probs = dist.values, dist.probs
    best = math.inf
    for mask in range(1 << (n - 1)):
        start = 0
        total = 0.0
        feasible = True
        for i in range(n):
            if i == n - 1 or (mask >> i) & 1:
                if values[i] - values[start] > epsilon:
                    feasible = False
                    break
                total += _plogp(math.fsum(probs[start : i + 1]))
                start = i + 1
        if feasible and total < best:
            best = total
    return best


def _breakpoints(values: Sequence[int]) -> np.ndarray:
    """Sorted distinct pairwise spans, always including 0.

    h(epsilon) is a step function that can only change where epsilon crosses
    the span of some value pair, so these are the only widths worth solving.
    """
    n = len(values)
    spans = {0}
    for i in range(n):
        for j in range(i):
            spans.add(values[i] - values[j])
    return np.array(sorted(spans), dtype=np.int64)


def _curve_at_breakpoints(dist: ValueDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Solve the recurrence for every breakpoint width in one table.

    Row t of the table is the prefix recurrence at width eps[t]; a candidate
    block (j..i) participates exactly in the rows whose width reaches the
    block's span, which is a suffix of rows since eps is sorted.
    """
    values, probs = dist.values, dist.probs
    n = dist.n
    eps = _breakpoints(values)
    table = np.zeros((len(eps), n + 1))
    for i in range(1, n + 1):
        xi = values[i - 1]
        col = np.full(len(eps), np.inf)
        acc = 0.0
        for j in range(i, 0, -1):
            acc += probs[j - 1]
            t0 = int(np.searchsorted(eps, xi - values[j - 1]))
            cand = table[t0:, j - 1] + _plogp(acc)
            np.minimum(col[t0:], cand, out=col[t0:])
        table[:, i] = col
    return eps, table[:, n]


def entropy_curve(dist: ValueDistribution) -> EntropyCurve:
    """h(epsilon) for every integer epsilon from 0 to the value span."""
    eps, h_at = _curve_at_breakpoints(dist)
    span = dist.span
    grid = np.arange(span + 1)
    # value at each grid point is the step level at the last breakpoint <= e
    levels = np.searchsorted(eps, grid, side="right") - 1
    h = h_at[levels]
    h[-1] = 0.0
    return EntropyCurve(epsilon_max=span, h=tuple(h.tolist()))


def epsilon_max(dist: ValueDistribution) -> int:
    """Smallest window width at which the entropy reaches zero.

    Since every candidate has positive probability this is exactly the span
    of the value set.
    """
    return dist.span


def area(curve: EntropyCurve) -> float:
    """Integral of the curve over [0, epsilon_max].

    The curve is constant on every interval [k, k+1), so the left-rectangle
    sum over the integer grid is the exact integral.
    """
    return math.fsum(curve.h[:-1])


def risk_report(dist: ValueDistribution) -> RiskReport:
    """Bundle initial entropy, curve area and curve width for one intruder state."""
    return RiskReport(
        h0=shannon_entropy(dist),
        area=area(entropy_curve(dist)),
        epsilon_max=epsilon_max(dist),
    )


def read_distribution_file(path: str | Path) -> ValueDistribution:
    """Read a ``value,probability`` pair per line; a header row is optional.

    Blank lines and lines starting with ``#`` are ignored.  Duplicate values
    are merged and zero-probability entries dropped, as in
    :meth:`ValueDistribution.from_pairs`.
    """
    values: list[float] = []
    probs: list[float] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'value,probability', got {raw!r}")
        try:
            v = float(parts[0])
            p = float(parts[1])
        except ValueError:
            if lineno == 1:
                continue  # header row
            raise ValueError(f"{path}:{lineno}: non-numeric entry {raw!r}") from None
        values.append(v)
        probs.append(p)
    if not values:
        raise ValueError(f"{path}: no distribution rows found")
    return ValueDistribution.from_pairs(values, probs)
