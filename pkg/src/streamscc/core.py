"""Stream graph data model: segments, intervals, events and instantaneous graphs.

Times are integer ticks. Nodes are stored as dense integer ids; the original
labels live in ``StreamGraph.labels`` (``labels[i]`` is the label of node ``i``).
"""
from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence


class StreamError(ValueError):
    """Base class for invalid stream input."""


class LinkOutsideNodePresence(StreamError):
    def __init__(self, segment, node=None):
        self.segment = segment
        self.node = node
        super().__init__(f"link segment {segment} not covered by presence of node {node!r}")


class SegmentOutsideHorizon(StreamError):
    def __init__(self, segment, horizon):
        self.segment = segment
        self.horizon = horizon
        super().__init__(f"segment {segment} lies outside horizon {horizon}")


class TimeOutsideHorizon(StreamError):
    pass


class NoPredecessorEventTime(StreamError):
    pass


class SelfLoop(StreamError):
    pass


class Interval(NamedTuple):
    """Closed interval ``[b, e]``; ``b == e`` is a single instant."""

    b: int
    e: int

    def __contains__(self, t) -> bool:
        return self.b <= t <= self.e


class BoundedInterval(NamedTuple):
    """Interval whose two endpoints are independently open or closed."""

    b: int
    b_closed: bool
    e: int
    e_closed: bool

    def __contains__(self, t) -> bool:
        return (self.b < t < self.e) or (t == self.b and self.b_closed) or (t == self.e and self.e_closed)

    def is_valid(self) -> bool:
        if self.b > self.e:
            return False
        if self.b == self.e:
            return self.b_closed and self.e_closed
        return True

    @property
    def length(self) -> int:
        return self.e - self.b

    def __str__(self) -> str:
        return f"{'[' if self.b_closed else ']'}{self.b} {self.e}{']' if self.e_closed else '['}"


class NodeSegment(NamedTuple):
    b: int
    e: int
    node: int

    @property
    def interval(self) -> Interval:
        return Interval(self.b, self.e)


class LinkSegment(NamedTuple):
    """Link segment over the unordered pair ``{u, v}``, stored with ``u < v``."""

    b: int
    e: int
    u: int
    v: int

    @property
    def interval(self) -> Interval:
        return Interval(self.b, self.e)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


class EventKind(IntEnum):
    # values give the processing order inside one event time
    NODE_ARRIVAL = 0
    LINK_ARRIVAL = 1
    LINK_DEPARTURE = 2
    NODE_DEPARTURE = 3


class Event(NamedTuple):
    time: int
    kind: EventKind
    subject: object  # node id, or (u, v) pair for link events
    segment_end: int  # the other endpoint of the segment


class StaticGraph(NamedTuple):
    nodes: frozenset
    edges: frozenset  # of (u, v) with u < v

    def components(self) -> list[frozenset]:
        return connected_components(self.nodes, self.edges)


class StreamStats(NamedTuple):
    n: int
    m: int
    N: int
    M: int
    event_time_count: int


def connected_components(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[frozenset]:
    """Connected components of a static graph, by iterative DFS."""
    adj: dict[int, list[int]] = {u: [] for u in nodes}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    out = []
    for s in adj:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def merge_intervals(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Union of closed intervals as sorted maximal intervals; touching ones merge."""
    out: list[list[int]] = []
    for b, e in sorted(intervals):
        if out and b <= out[-1][1]:
            if e > out[-1][1]:
                out[-1][1] = e
        else:
            out.append([b, e])
    return [(b, e) for b, e in out]


def _sorted_labels(labels: Iterable[Hashable]) -> list:
    labels = set(labels)
    try:
        return sorted(labels, key=lambda x: (type(x).__name__, x))
    except TypeError:
        return sorted(labels, key=repr)


@dataclass(frozen=True, eq=True)
class StreamGraph:
    """Normalized stream graph S = (T, V, W, E).

    ``node_segments`` and ``link_segments`` are maximal, sorted by start time,
    and reference nodes by dense id. ``horizon`` is ``None`` only for an empty
    stream with no explicit horizon.
    """

    horizon: Interval | None
    labels: tuple
    node_segments: tuple[NodeSegment, ...]
    link_segments: tuple[LinkSegment, ...]

    @property
    def nodes(self) -> range:
        return range(len(self.labels))

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def node_id(self, label) -> int:
        return self._label_index[label]

    def label_set(self, nodes: Iterable[int]) -> frozenset:
        return frozenset(self.labels[i] for i in nodes)

    @cached_property
    def node_presence(self) -> dict[int, list[tuple[int, int]]]:
        pres: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for b, e, u in self.node_segments:
            pres[u].append((b, e))
        for lst in pres.values():
            lst.sort()
        return dict(pres)

    @cached_property
    def link_presence(self) -> dict[tuple[int, int], list[tuple[int, int]]]:
        pres: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
        for b, e, u, v in self.link_segments:
            pres[(u, v)].append((b, e))
        for lst in pres.values():
            lst.sort()
        return dict(pres)

    @cached_property
    def event_times(self) -> list[int]:
        ts = set()
        for seg in self.node_segments:
            ts.add(seg[0])
            ts.add(seg[1])
        for seg in self.link_segments:
            ts.add(seg[0])
            ts.add(seg[1])
        return sorted(ts)

    def raw(self) -> tuple[list, list, Interval | None, list]:
        """Label-based segments, suitable to feed back into :func:`build_stream`."""
        lab = self.labels
        nodes = [(b, e, lab[u]) for b, e, u in self.node_segments]
        links = [(b, e, lab[u], lab[v]) for b, e, u, v in self.link_segments]
        return nodes, links, self.horizon, list(lab)

    def __repr__(self) -> str:
        return (
            f"StreamGraph(horizon={self.horizon}, n_labels={len(self.labels)}, "
            f"N={len(self.node_segments)}, M={len(self.link_segments)})"
        )


def _covers(presence: list[tuple[int, int]], b: int, e: int) -> bool:
    # presence: sorted disjoint intervals
    i = bisect.bisect_right(presence, (b, float("inf"))) - 1
    return i >= 0 and presence[i][0] <= b and e <= presence[i][1]


def build_stream(
    node_segments: Iterable[Sequence],
    link_segments: Iterable[Sequence] = (),
    horizon: tuple[int, int] | None = None,
    nodes: Iterable[Hashable] = (),
) -> StreamGraph:
    """Normalize raw segments into a :class:`StreamGraph`.

    Raw node segments are ``(b, e, label)`` and raw link segments are
    ``(b, e, label_u, label_v)``, in any order and possibly overlapping.
    ``nodes`` lists extra labels that belong to V without ever being present.

    Raises
    ------
    LinkOutsideNodePresence
        If some link instant is not covered by the presence of both endpoints.
    SegmentOutsideHorizon
        If ``horizon`` is given and some segment is not inside it.
    """
    node_segments = [tuple(s) for s in node_segments]
    link_segments = [tuple(s) for s in link_segments]
    for s in node_segments:
        if len(s) != 3 or s[0] > s[1]:
            raise StreamError(f"bad node segment {s}")
    for s in link_segments:
        if len(s) != 4 or s[0] > s[1]:
            raise StreamError(f"bad link segment {s}")
        if s[2] == s[3]:
            raise SelfLoop(f"self loop on {s[2]!r} in {s}")

    labels = _sorted_labels(
        [s[2] for s in node_segments]
        + [x for s in link_segments for x in (s[2], s[3])]
        + list(nodes)
    )
    index = {lab: i for i, lab in enumerate(labels)}

    if horizon is not None:
        horizon = Interval(int(horizon[0]), int(horizon[1]))
        if horizon.b > horizon.e:
            raise StreamError(f"bad horizon {horizon}")
        for s in node_segments + link_segments:
            if s[0] < horizon.b or s[1] > horizon.e:
                raise SegmentOutsideHorizon(s, horizon)

    per_node: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for b, e, lab in node_segments:
        per_node[index[lab]].append((int(b), int(e)))
    per_link: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for b, e, lu, lv in link_segments:
        u, v = index[lu], index[lv]
        if u > v:
            u, v = v, u
        per_link[(u, v)].append((int(b), int(e)))

    node_presence = {u: merge_intervals(iv) for u, iv in per_node.items()}
    link_presence = {p: merge_intervals(iv) for p, iv in per_link.items()}

    for (u, v), ivs in link_presence.items():
        for b, e in ivs:
            for x in (u, v):
                if not _covers(node_presence.get(x, []), b, e):
                    raise LinkOutsideNodePresence((b, e, labels[u], labels[v]), labels[x])

    nsegs = sorted(NodeSegment(b, e, u) for u, ivs in node_presence.items() for b, e in ivs)
    lsegs = sorted(LinkSegment(b, e, u, v) for (u, v), ivs in link_presence.items() for b, e in ivs)

    if horizon is None and nsegs:
        horizon = Interval(min(s.b for s in nsegs), max(s.e for s in nsegs))
    return StreamGraph(horizon, tuple(labels), tuple(nsegs), tuple(lsegs))


@dataclass(frozen=True)
class EventSequence:
    """Events sorted by time, then by kind (arrivals of nodes, arrivals of
    links, departures of links, departures of nodes); ties keep segment order."""

    events: tuple[Event, ...]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    @cached_property
    def times(self) -> list[int]:
        ts: list[int] = []
        for ev in self.events:
            if not ts or ts[-1] != ev.time:
                ts.append(ev.time)
        return ts

    def groups(self) -> Iterator[tuple[int, list, list, list, list]]:
        """Yield ``(t, node_arrivals, link_arrivals, link_departures, node_departures)``
        for every event time ``t``, each list holding subjects in sequence order."""
        events = self.events
        i, n = 0, len(events)
        while i < n:
            t = events[i].time
            buckets: tuple[list, list, list, list] = ([], [], [], [])
            while i < n and events[i].time == t:
                ev = events[i]
                buckets[ev.kind].append(ev.subject)
                i += 1
            yield (t, *buckets)


def event_sequence(S: StreamGraph) -> EventSequence:
    NA, LA, LD, ND = EventKind
    evs = []
    for b, e, u in S.node_segments:
        evs.append(Event(b, NA, u, e))
        evs.append(Event(e, ND, u, b))
    for b, e, u, v in S.link_segments:
        evs.append(Event(b, LA, (u, v), e))
        evs.append(Event(e, LD, (u, v), b))
    evs.sort(key=lambda ev: (ev.time, ev.kind))
    return EventSequence(tuple(evs))


def _check_time(S: StreamGraph, t: int) -> None:
    if S.horizon is None or t not in S.horizon:
        raise TimeOutsideHorizon(f"time {t} outside horizon {S.horizon}")


def graph_at(S: StreamGraph, t: int) -> StaticGraph:
    """G_t: nodes and links present at instant ``t``."""
    _check_time(S, t)
    nodes = frozenset(u for b, e, u in S.node_segments if b <= t <= e)
    edges = frozenset((u, v) for b, e, u, v in S.link_segments if b <= t <= e)
    return StaticGraph(nodes, edges)


def graph_just_before(S: StreamGraph, t: int) -> StaticGraph:
    """G_t^-: nodes and links present during all of ``[t', t]``, where ``t'``
    is the event time preceding ``t``."""
    _check_time(S, t)
    times = S.event_times
    i = bisect.bisect_left(times, t)
    if i >= len(times) or times[i] != t:
        raise NoPredecessorEventTime(f"{t} is not an event time")
    if i == 0:
        raise NoPredecessorEventTime(f"{t} is the first event time")
    tp = times[i - 1]
    nodes = frozenset(u for b, e, u in S.node_segments if b <= tp and t <= e)
    edges = frozenset((u, v) for b, e, u, v in S.link_segments if b <= tp and t <= e)
    return StaticGraph(nodes, edges)


def stats(S: StreamGraph) -> StreamStats:
    return StreamStats(
        n=len(S.node_presence),
        m=len(S.link_presence),
        N=len(S.node_segments),
        M=len(S.link_segments),
        event_time_count=len(S.event_times),
    )
