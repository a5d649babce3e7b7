"""Strongly connected components of stream graphs.

Three algorithms share one output contract: every component is handed to a
sink as soon as it closes. ``scc_naive`` recomputes the components of the
instantaneous graphs at every event time, ``scc_direct`` updates components
event by event and ``scc_fd`` delegates the updates to :class:`DynConn`.
"""
from __future__ import annotations

import bisect
import time
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .core import BoundedInterval, StreamGraph, connected_components, event_sequence
from .dynconn import DynConn


class Component(NamedTuple):
    interval: BoundedInterval
    nodes: frozenset

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def duration(self) -> int:
        return self.interval.e - self.interval.b

    def key(self) -> tuple:
        iv = self.interval
        return (iv.b, iv.b_closed, iv.e, iv.e_closed, tuple(sorted(self.nodes)))

    def format(self, labels=None) -> str:
        """Render as ``[2 5] 2 u v``: interval, size, sorted node labels."""
        if labels is None:
            names = sorted(self.nodes)
        else:
            names = sorted(labels[x] for x in self.nodes)
        return f"{self.interval} {len(self.nodes)} " + " ".join(map(str, names))


def component(b, b_closed, e, e_closed, nodes) -> Component:
    return Component(BoundedInterval(b, b_closed, e, e_closed), frozenset(nodes))


class ComponentSink:
    """Receives closed components. ``nodes`` is only valid during the call."""

    def emit(self, b: int, b_closed: bool, e: int, e_closed: bool, nodes) -> None:
        raise NotImplementedError


class ListSink(ComponentSink):
    def __init__(self):
        self.components: list[Component] = []

    def emit(self, b, b_closed, e, e_closed, nodes):
        self.components.append(Component(BoundedInterval(b, b_closed, e, e_closed), frozenset(nodes)))


class CountingSink(ComponentSink):
    """Keeps counts only, so nothing is materialized."""

    def __init__(self):
        self.count = 0
        self.max_size = 0

    def emit(self, b, b_closed, e, e_closed, nodes):
        self.count += 1
        k = len(nodes)
        if k > self.max_size:
            self.max_size = k


class CallbackSink(ComponentSink):
    def __init__(self, fn: Callable[[Component], None]):
        self.fn = fn

    def emit(self, b, b_closed, e, e_closed, nodes):
        self.fn(Component(BoundedInterval(b, b_closed, e, e_closed), frozenset(nodes)))


class _Tally(ComponentSink):
    # wraps the user sink to collect summary figures
    __slots__ = ("inner", "count", "max_size")

    def __init__(self, inner: ComponentSink):
        self.inner = inner
        self.count = 0
        self.max_size = 0

    def emit(self, b, b_closed, e, e_closed, nodes):
        self.count += 1
        if len(nodes) > self.max_size:
            self.max_size = len(nodes)
        self.inner.emit(b, b_closed, e, e_closed, nodes)


@dataclass
class Summary:
    algorithm: str
    component_count: int
    max_size: int
    wall_ms: float


def _as_sink(sink) -> ComponentSink:
    if sink is None:
        return ListSink()
    if isinstance(sink, ComponentSink):
        return sink
    if callable(sink):
        return CallbackSink(sink)
    raise TypeError(f"not a sink: {sink!r}")


# --------------------------------------------------------------------------
# recomputation at every event time


def scc_naive(S: StreamGraph, sink=None, *, skip_intra_arrivals: bool = True) -> Summary:
    """Diff the current component set against the components of G_t^- and G_t
    at every event time ``t``.

    With ``skip_intra_arrivals`` an event time is skipped when it only brings
    links inside existing components and nothing left at the previous one.
    """
    start = time.perf_counter()
    out = _Tally(_as_sink(sink))
    emit = out.emit
    present: set[int] = set()
    edges: set[tuple[int, int]] = set()
    open_: dict[frozenset, tuple[int, bool]] = {}
    owner: dict[int, frozenset] = {}
    pending_nd: list = []
    pending_ld: list = []
    prev = None

    def diff(graph_comps: list[frozenset], t: int, open_closed: bool, close_time: int, close_closed: bool):
        current = set(graph_comps)
        for X in [X for X in open_ if X not in current]:
            b, bc = open_.pop(X)
            emit(b, bc, close_time, close_closed, X)
        for C in graph_comps:
            if C not in open_:
                open_[C] = (t, open_closed)
        owner.clear()
        for C in open_:
            for x in C:
                owner[x] = C

    for t, na, la, ld, nd in event_sequence(S).groups():
        if prev is not None:
            departed = bool(pending_nd or pending_ld)
            for p in pending_ld:
                edges.discard(p)
            for u in pending_nd:
                present.discard(u)
            if (
                skip_intra_arrivals
                and not departed
                and not na
                and not ld
                and not nd
                and all(owner[u] is owner[v] for u, v in la)
            ):
                edges.update(la)
                prev = t
                continue
            # G_t^-
            diff(connected_components(present, edges), prev, False, prev, True)
        present.update(na)
        edges.update(la)
        # G_t
        diff(connected_components(present, edges), t, True, t, False)
        pending_ld, pending_nd = ld, nd
        prev = t

    for X, (b, bc) in list(open_.items()):
        emit(b, bc, prev, True, X)
    return Summary("naive", out.count, out.max_size, (time.perf_counter() - start) * 1e3)


# --------------------------------------------------------------------------
# event by event


class _Open:
    __slots__ = ("begin", "closed", "nodes")

    def __init__(self, begin, closed, nodes=None):
        self.begin = begin
        self.closed = closed
        self.nodes = nodes


def _split_side(adj, u, v):
    """Search from u and v alternately. Return ``None`` if they are connected,
    else the node set of the side that was exhausted first."""
    seen_u = {u}
    seen_v = {v}
    stack_u = [u]
    stack_v = [v]
    while stack_u and stack_v:
        x = stack_u.pop()
        for y in adj[x]:
            if y not in seen_u:
                if y in seen_v:
                    return None
                seen_u.add(y)
                stack_u.append(y)
        x = stack_v.pop()
        for y in adj[x]:
            if y not in seen_v:
                if y in seen_u:
                    return None
                seen_v.add(y)
                stack_v.append(y)
    return seen_u if not stack_u else seen_v


def scc_direct(S: StreamGraph, sink=None) -> Summary:
    """Handle, at each event time: node arrivals, link arrivals (merges),
    link departures (splits, checked by a search in the current graph),
    node departures."""
    start = time.perf_counter()
    out = _Tally(_as_sink(sink))
    emit = out.emit
    n = len(S.labels)
    comp_of: list = [None] * n
    adj: list = [None] * n

    for t, na, la, ld, nd in event_sequence(S).groups():
        for u in na:
            comp_of[u] = _Open(t, True, {u})
            adj[u] = set()

        for u, v in la:
            adj[u].add(v)
            adj[v].add(u)
            cu = comp_of[u]
            cv = comp_of[v]
            if cu is cv:
                continue
            if not (cu.begin == t and cu.closed):
                emit(cu.begin, cu.closed, t, False, cu.nodes)
            if not (cv.begin == t and cv.closed):
                emit(cv.begin, cv.closed, t, False, cv.nodes)
            if len(cu.nodes) < len(cv.nodes):
                cu, cv = cv, cu
            for x in cv.nodes:
                comp_of[x] = cu
            cu.nodes |= cv.nodes
            cu.begin = t
            cu.closed = True

        for u, v in ld:
            adj[u].discard(v)
            adj[v].discard(u)
            side = _split_side(adj, u, v)
            if side is None:
                continue
            c = comp_of[u]
            if not (c.begin == t and not c.closed):
                emit(c.begin, c.closed, t, True, c.nodes)
            fresh = _Open(t, False, side)
            for x in side:
                comp_of[x] = fresh
            c.nodes -= side
            c.begin = t
            c.closed = False

        for u in nd:
            c = comp_of[u]
            if not (c.begin == t and not c.closed):
                emit(c.begin, c.closed, t, True, c.nodes)
            comp_of[u] = None
            adj[u] = None

    return Summary("direct", out.count, out.max_size, (time.perf_counter() - start) * 1e3)


# --------------------------------------------------------------------------
# on top of a fully dynamic connectivity structure


def scc_fd(S: StreamGraph, sink=None) -> Summary:
    """Same steps as :func:`scc_direct`; merges and split detection are
    answered by :class:`DynConn`, begin bounds are kept per component."""
    start = time.perf_counter()
    out = _Tally(_as_sink(sink))
    emit = out.emit
    n = len(S.labels)
    owner: list = [None] * n
    dc = DynConn()

    for t, na, la, ld, nd in event_sequence(S).groups():
        for u in na:
            dc.insert_node(u)
            owner[u] = _Open(t, True)

        for u, v in la:
            if dc.connected(u, v):
                dc.insert_edge(u, v)
                continue
            ru, rv = owner[u], owner[v]
            xu = dc.component_nodes(u)
            xv = dc.component_nodes(v)
            if not (ru.begin == t and ru.closed):
                emit(ru.begin, ru.closed, t, False, xu)
            if not (rv.begin == t and rv.closed):
                emit(rv.begin, rv.closed, t, False, xv)
            dc.insert_edge(u, v)
            if len(xu) < len(xv):
                ru, xu, xv = rv, xv, xu
            for x in xv:
                owner[x] = ru
            ru.begin = t
            ru.closed = True

        for u, v in ld:
            res = dc.delete_edge(u, v)
            if not res.split:
                continue
            r = owner[u]
            if not (r.begin == t and not r.closed):
                emit(r.begin, r.closed, t, True, res.side_a | res.side_b)
            small = res.side_a if len(res.side_a) <= len(res.side_b) else res.side_b
            fresh = _Open(t, False)
            for x in small:
                owner[x] = fresh
            r.begin = t
            r.closed = False

        for u in nd:
            r = owner[u]
            if not (r.begin == t and not r.closed):
                emit(r.begin, r.closed, t, True, (u,))
            owner[u] = None
            dc.remove_node(u)

    return Summary("fd", out.count, out.max_size, (time.perf_counter() - start) * 1e3)


ALGORITHMS = {"naive": scc_naive, "direct": scc_direct, "fd": scc_fd}


def strongly_connected_components(S: StreamGraph, algorithm: str = "direct") -> list[Component]:
    """All components of ``S``, sorted canonically."""
    sink = ListSink()
    ALGORITHMS[algorithm](S, sink)
    return sorted(sink.components, key=Component.key)


def canonical_lines(S: StreamGraph, components: Iterable[Component]) -> list[str]:
    """Component file lines, sorted by begin, end, then node labels."""
    lab = S.labels
    rows = []
    for c in components:
        iv = c.interval
        names = sorted(str(lab[x]) for x in c.nodes)
        rows.append(((iv.b, not iv.b_closed, iv.e, iv.e_closed, names), c.format(lab)))
    rows.sort(key=lambda r: r[0])
    return [line for _, line in rows]


# --------------------------------------------------------------------------
# checking


def _sample_points(times: list[int]) -> list[int]:
    # doubled coordinates: 2t for event times, t1 + t2 for midpoints
    pts = []
    for i, t in enumerate(times):
        if i:
            pts.append(times[i - 1] + t)
        pts.append(2 * t)
    return pts


def _coverage(pts: list[int], b: int, b_closed: bool, e: int, e_closed: bool) -> range:
    lo = bisect.bisect_left(pts, 2 * b) if b_closed else bisect.bisect_right(pts, 2 * b)
    hi = bisect.bisect_right(pts, 2 * e) if e_closed else bisect.bisect_left(pts, 2 * e)
    return range(lo, hi)


class PartitionChecker:
    """Expected partition of the temporal nodes of ``S`` at every sample
    instant (event times and midpoints between consecutive ones)."""

    def __init__(self, S: StreamGraph):
        self.points = pts = _sample_points(S.event_times)
        nodes: list[list[int]] = [[] for _ in pts]
        edges: list[list[tuple[int, int]]] = [[] for _ in pts]
        for b, e, u in S.node_segments:
            for k in _coverage(pts, b, True, e, True):
                nodes[k].append(u)
        for b, e, u, v in S.link_segments:
            for k in _coverage(pts, b, True, e, True):
                edges[k].append((u, v))
        self.expected = [set(connected_components(nodes[k], edges[k])) for k in range(len(pts))]

    def check(self, components: Iterable[Component], *, maximal: bool = False) -> bool:
        components = list(components)
        pts = self.points
        if not pts:
            return not components
        at: list[list[frozenset]] = [[] for _ in pts]
        for c in components:
            iv = c.interval
            if not c.nodes or not iv.is_valid():
                return False
            cover = _coverage(pts, iv.b, iv.b_closed, iv.e, iv.e_closed)
            if not cover:
                return False
            for k in cover:
                at[k].append(c.nodes)
        for k, sets in enumerate(at):
            # equal as sets and no duplicates
            if len(sets) != len(self.expected[k]) or set(sets) != self.expected[k]:
                return False
        if maximal:
            by_nodes: dict[frozenset, list[BoundedInterval]] = {}
            for c in components:
                by_nodes.setdefault(c.nodes, []).append(c.interval)
            for ivs in by_nodes.values():
                ivs.sort()
                for a, b in zip(ivs, ivs[1:]):
                    if a.e == b.b and a.e_closed != b.b_closed:
                        return False
        return True


def verify_partition(S: StreamGraph, components: Iterable[Component], *, maximal: bool = False) -> bool:
    """Check that ``components`` partition the temporal nodes of ``S``.

    At every event time and every midpoint between consecutive event times,
    each present node must lie in exactly one component whose interval
    contains the instant, and the node sets there must be exactly the
    connected components of the instantaneous graph. With ``maximal``, two
    components with the same node set may not abut in time.
    """
    return PartitionChecker(S).check(components, maximal=maximal)
