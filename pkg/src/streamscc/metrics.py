"""Component statistics, latencies and approximation error metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import StreamError, StreamGraph, connected_components, event_sequence
from .scc import ComponentSink


class BudgetExceeded(StreamError):
    pass


class MismatchedNodeSets(StreamError):
    pass


DEFAULT_LATENCY_BUDGET = 5_000_000
PERCENTILES = (50, 90, 99)


def nearest_rank(sorted_values, q: float):
    """Nearest-rank percentile of an already sorted sequence."""
    if not len(sorted_values):
        return None
    k = max(1, math.ceil(q / 100 * len(sorted_values)))
    return sorted_values[k - 1]


def log_histogram(values) -> list[tuple[int, int, int]]:
    """Counts over power-of-two bins ``[0, 1), [1, 2), [2, 4), ...``.

    Returns ``(lo, hi, count)`` rows for non-empty bins.
    """
    counts: dict[int, int] = {}
    for v in values:
        k = 0 if v < 1 else int(v).bit_length()
        counts[k] = counts.get(k, 0) + 1
    rows = []
    for k in sorted(counts):
        lo = 0 if k == 0 else 1 << (k - 1)
        hi = 1 if k == 0 else 1 << k
        rows.append((lo, hi, counts[k]))
    return rows


@dataclass
class ComponentStats:
    sizes: list[int] = field(default_factory=list)
    durations: list[int] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.sizes)

    def add(self, size: int, duration: int) -> None:
        self.sizes.append(size)
        self.durations.append(duration)

    def size_histogram(self):
        return log_histogram(self.sizes)

    def duration_histogram(self):
        return log_histogram(self.durations)

    def summary(self) -> dict:
        out: dict = {"count": self.count}
        for name, values in (("size", sorted(self.sizes)), ("duration", sorted(self.durations))):
            for q in PERCENTILES:
                out[f"{name}_p{q}"] = nearest_rank(values, q)
            out[f"{name}_max"] = values[-1] if values else None
        return out


def component_stats(components: Iterable) -> ComponentStats:
    st = ComponentStats()
    for c in components:
        st.add(len(c.nodes), c.interval.e - c.interval.b)
    return st


class StatsSink(ComponentSink):
    """Component sink that only records size and duration."""

    def __init__(self):
        self.stats = ComponentStats()

    def emit(self, b, b_closed, e, e_closed, nodes):
        self.stats.add(len(nodes), e - b)


# --------------------------------------------------------------------------
# latencies


@dataclass
class LatencyMatrix:
    """``values[i, j]`` is the latency from node ``i`` to node ``j`` in ticks,
    ``-1`` when unreachable. The diagonal is ``-1`` and is never used."""

    labels: tuple
    values: np.ndarray

    UNREACHABLE = -1

    def get(self, u, v):
        i, j = self.labels.index(u), self.labels.index(v)
        x = int(self.values[i, j])
        return None if x < 0 else x

    def reachable(self) -> np.ndarray:
        r = self.values >= 0
        np.fill_diagonal(r, False)
        return r

    def pairs(self):
        """``(u, v, latency)`` for every reachable ordered pair."""
        for i, j in zip(*np.nonzero(self.reachable())):
            yield self.labels[i], self.labels[j], int(self.values[i, j])


_NEG = np.iinfo(np.int64).min // 4


def latencies(S: StreamGraph, budget: int | None = DEFAULT_LATENCY_BUDGET) -> LatencyMatrix:
    """Latency of every ordered pair of nodes.

    A journey may wait at a node only while the node is present, crosses a
    link instantly while the link is present and may cross several links at
    one instant. The sweep keeps, for every source ``s`` and node ``w``, the
    latest departure from ``s`` from which ``w`` can still be occupied at the
    current time; all sources advance together.
    """
    n = len(S.labels)
    times_count = len(S.event_times)
    if budget is not None and n * times_count > budget:
        raise BudgetExceeded(
            f"n * event_times = {n} * {times_count} exceeds latency budget {budget}; "
            "raise the budget or approximate the stream first"
        )
    best = np.full((n, n), np.iinfo(np.int64).max, dtype=np.int64)
    L = np.full((n, n), _NEG, dtype=np.int64)  # row: source, column: node
    present = np.zeros(n, dtype=bool)
    edges: set[tuple[int, int]] = set()
    pending_nd: list = []
    pending_ld: list = []
    diag = np.arange(n)

    for t, na, la, ld, nd in event_sequence(S).groups():
        # waiting over ]t', t[ needs presence throughout
        for p in pending_ld:
            edges.discard(p)
        if pending_nd:
            present[pending_nd] = False
        L[:, ~present] = _NEG
        present[na] = True
        edges.update(la)
        idx = np.flatnonzero(present)
        L[idx, idx] = t
        comps = connected_components(idx.tolist(), edges)
        label = np.empty(n, dtype=np.int64)
        for k, C in enumerate(comps):
            label[list(C)] = k
        lab = label[idx]
        cmax = np.full((n, len(comps)), _NEG, dtype=np.int64)
        np.maximum.at(cmax, (slice(None), lab), L[:, idx])
        L[:, idx] = cmax[:, lab]
        reach = L > _NEG
        np.minimum(best, np.where(reach, t - L, best), out=best)
        pending_ld, pending_nd = ld, nd

    out = np.where(best == np.iinfo(np.int64).max, -1, best)
    out[diag, diag] = -1
    return LatencyMatrix(S.labels, out)


# --------------------------------------------------------------------------
# comparison of S with its approximation


@dataclass
class ApproxReport:
    lrmse: float
    avg_difference: float
    avg_stretch: float
    missing_paths: int
    pair_count_used: int
    Delta: int | None = None

    def as_dict(self) -> dict:
        return {
            "Delta": self.Delta,
            "lrmse": self.lrmse,
            "avg_difference": self.avg_difference,
            "avg_stretch": self.avg_stretch,
            "missing_paths": self.missing_paths,
            "pair_count_used": self.pair_count_used,
        }


def compare_matrices(lat: LatencyMatrix, lat_delta: LatencyMatrix, Delta=None) -> ApproxReport:
    """Error metrics over ordered pairs reachable in both streams.

    Pairs reachable only in the original stream are counted as missing and
    left out of the sums.
    """
    if tuple(lat.labels) != tuple(lat_delta.labels):
        raise MismatchedNodeSets("streams do not share the same node set")
    r = lat.reachable()
    rd = lat_delta.reachable()
    both = r & rd
    missing = int(np.count_nonzero(r & ~rd))
    P = int(np.count_nonzero(both))
    if P == 0:
        return ApproxReport(0.0, 0.0, 1.0, missing, 0, Delta)
    a = lat.values[both]
    d = lat_delta.values[both]
    sq = int(((a - d) ** 2).sum())
    diff = int((d - a).sum())
    stretch = math.fsum((int(x) + 1) / (int(y) + 1) for x, y in zip(d, a))
    return ApproxReport(math.sqrt(sq / P), diff / P, stretch / P, missing, P, Delta)


def compare(S: StreamGraph, S_Delta: StreamGraph, budget: int | None = DEFAULT_LATENCY_BUDGET, Delta=None) -> ApproxReport:
    if tuple(S.labels) != tuple(S_Delta.labels):
        raise MismatchedNodeSets("streams do not share the same node set")
    return compare_matrices(latencies(S, budget), latencies(S_Delta, budget), Delta)
