"""Reading datasets into stream graphs, and the Delta-approximation."""
from __future__ import annotations

import logging
import warnings
from collections import defaultdict
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, TextIO

from .core import SelfLoop, StreamError, StreamGraph, build_stream, merge_intervals

log = logging.getLogger(__name__)


class MalformedLine(StreamError):
    def __init__(self, lineno: int, line: str, reason: str = ""):
        self.lineno = lineno
        self.line = line
        msg = f"line {lineno}: malformed record {line.strip()!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class NonPositiveDelta(StreamError):
    pass


class RoundedAwayWarning(UserWarning):
    """Some segments vanished under the approximation."""


@dataclass(frozen=True)
class DeltaConfig:
    delta: int

    def __post_init__(self):
        if self.delta < 0:
            raise StreamError(f"delta must be >= 0, got {self.delta}")


@dataclass(frozen=True)
class ApproxConfig:
    Delta: int

    def __post_init__(self):
        if self.Delta <= 0:
            raise NonPositiveDelta(f"Delta must be > 0, got {self.Delta}")


def parse_time(token: str, time_scale=None) -> int:
    """Integer ticks from ``token``; with ``time_scale`` the token may be a
    decimal and is multiplied by the scale, then rounded to the nearest tick."""
    if time_scale is None:
        return int(token)
    try:
        value = Decimal(token) * Decimal(str(time_scale))
    except InvalidOperation:
        raise ValueError(token) from None
    return int(value.to_integral_value())


def _records(reader: Iterable[str]):
    for lineno, line in enumerate(reader, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, line, s.split()


def parse_interactions(reader: TextIO | Iterable[str], config: DeltaConfig | int, time_scale=None) -> StreamGraph:
    """Build a stream from instantaneous ``u v t`` records.

    Each interaction at ``t`` makes the pair linked over ``[t, t + delta]``;
    overlapping or touching stretches of one pair merge. A node is present
    exactly when it has at least one link.
    """
    delta = config.delta if isinstance(config, DeltaConfig) else DeltaConfig(int(config)).delta
    per_pair: dict[tuple, list[tuple[int, int]]] = defaultdict(list)
    for lineno, line, tok in _records(reader):
        if len(tok) != 3:
            raise MalformedLine(lineno, line, "expected 'u v t'")
        u, v, ts = tok
        try:
            t = parse_time(ts, time_scale)
        except ValueError:
            raise MalformedLine(lineno, line, f"bad time {ts!r}") from None
        if u == v:
            raise SelfLoop(f"line {lineno}: self loop on {u!r}")
        key = (u, v) if u < v else (v, u)
        per_pair[key].append((t, t + delta))

    links = []
    presence: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for (u, v), ivs in per_pair.items():
        for b, e in merge_intervals(ivs):
            links.append((b, e, u, v))
            presence[u].append((b, e))
            presence[v].append((b, e))
    nodes = [(b, e, u) for u, ivs in presence.items() for b, e in merge_intervals(ivs)]
    return build_stream(nodes, links)


def parse_segments(reader: TextIO | Iterable[str], time_scale=None) -> StreamGraph:
    """Build a stream from ``n u b e`` and ``l u v b e`` records.

    Nodes without any ``n`` record are present exactly when they have a link.
    """
    nodes = []
    links = []
    explicit = set()
    for lineno, line, tok in _records(reader):
        kind = tok[0]
        try:
            if kind == "n" and len(tok) == 4:
                b, e = parse_time(tok[2], time_scale), parse_time(tok[3], time_scale)
                if b > e:
                    raise MalformedLine(lineno, line, "begin after end")
                nodes.append((b, e, tok[1]))
                explicit.add(tok[1])
            elif kind == "l" and len(tok) == 5:
                b, e = parse_time(tok[3], time_scale), parse_time(tok[4], time_scale)
                if b > e:
                    raise MalformedLine(lineno, line, "begin after end")
                if tok[1] == tok[2]:
                    raise SelfLoop(f"line {lineno}: self loop on {tok[1]!r}")
                links.append((b, e, tok[1], tok[2]))
            else:
                raise MalformedLine(lineno, line, "expected 'n u b e' or 'l u v b e'")
        except ValueError as exc:
            if isinstance(exc, StreamError):
                raise
            raise MalformedLine(lineno, line, "bad time") from None

    implied: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for b, e, u, v in links:
        for x in (u, v):
            if x not in explicit:
                implied[x].append((b, e))
    for x, ivs in implied.items():
        nodes.extend((b, e, x) for b, e in merge_intervals(ivs))
    return build_stream(nodes, links)


def floor_to(t: int, Delta: int) -> int:
    return Delta * (t // Delta)


def ceil_to(t: int, Delta: int) -> int:
    return -Delta * ((-t) // Delta)


def count_rounded_away(S: StreamGraph, Delta: int) -> int:
    """Number of segments of ``S`` that contain no multiple of ``Delta``."""
    return sum(
        1 for seg in S.node_segments + S.link_segments if ceil_to(seg[0], Delta) > floor_to(seg[1], Delta)
    )


def approximate(S: StreamGraph, config: ApproxConfig | int) -> StreamGraph:
    """Shrink every segment ``[b, e]`` to ``[ceil_Delta(b), floor_Delta(e)]``.

    The result is included in ``S``. Segments left empty by the rounding are
    dropped; a :class:`RoundedAwayWarning` reports how many.
    """
    Delta = config.Delta if isinstance(config, ApproxConfig) else ApproxConfig(int(config)).Delta
    lab = S.labels
    nodes = []
    links = []
    dropped = 0
    for b, e, u in S.node_segments:
        b2, e2 = ceil_to(b, Delta), floor_to(e, Delta)
        if b2 > e2:
            dropped += 1
            continue
        nodes.append((b2, e2, lab[u]))
    for b, e, u, v in S.link_segments:
        b2, e2 = ceil_to(b, Delta), floor_to(e, Delta)
        if b2 > e2:
            dropped += 1
            continue
        links.append((b2, e2, lab[u], lab[v]))
    if dropped:
        log.warning("Delta=%d dropped %d segments", Delta, dropped)
        warnings.warn(f"Delta={Delta} dropped {dropped} segments", RoundedAwayWarning, stacklevel=2)
    return build_stream(nodes, links, S.horizon, nodes=lab)
