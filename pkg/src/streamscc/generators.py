"""Synthetic stream graphs for tests, demos and benchmarks."""
from __future__ import annotations

import random

from .core import StreamGraph, build_stream, merge_intervals


def random_stream(
    rng: random.Random,
    n: int = 10,
    segments: int = 60,
    span: int = 40,
    singleton_prob: float = 0.2,
) -> StreamGraph:
    """Random stream on ``n`` nodes with roughly ``segments`` node plus link
    segments, times drawn from ``[0, span]`` so event times often collide."""
    n_node_segs = max(1, segments // 3)
    raw_nodes = []
    for _ in range(n_node_segs):
        u = rng.randrange(n)
        b = rng.randint(0, span)
        e = b if rng.random() < singleton_prob else rng.randint(b, min(span, b + span // 2 + 1))
        raw_nodes.append((b, e, u))
    presence: dict[int, list[tuple[int, int]]] = {}
    for b, e, u in raw_nodes:
        presence.setdefault(u, []).append((b, e))
    presence = {u: merge_intervals(iv) for u, iv in presence.items()}
    present = sorted(presence)

    raw_links = []
    attempts = 0
    while len(raw_links) < segments - n_node_segs and attempts < 20 * segments and len(present) > 1:
        attempts += 1
        u, v = rng.sample(present, 2)
        bu, eu = rng.choice(presence[u])
        bv, ev = rng.choice(presence[v])
        lo, hi = max(bu, bv), min(eu, ev)
        if lo > hi:
            continue
        b = rng.randint(lo, hi)
        e = b if rng.random() < singleton_prob else rng.randint(b, hi)
        raw_links.append((b, e, u, v))
    return build_stream(raw_nodes, raw_links, nodes=range(n))


def adversarial_streams() -> list[StreamGraph]:
    """Hand-built corner cases: instantaneous links, merge and split at one
    instant, several departures at one time, singleton nodes."""
    A, B, C, D, E = "ABCDE"
    full = lambda xs, b=0, e=10: [(b, e, x) for x in xs]  # noqa: E731
    cases = [
        ([(0, 9, A), (0, 9, B)], [(2, 5, A, B)]),
        ([(0, 9, A)], []),
        ([(0, 6, A), (0, 6, B)], [(3, 3, A, B)]),
        (full(A + B + C), [(0, 10, A, B), (4, 4, B, C)]),
        (full(A + B + C), [(0, 10, A, B), (0, 6, B, C)]),
        # several departures at the same time, split then split again
        (full(A + B + C + D), [(0, 5, A, B), (0, 5, B, C), (0, 5, C, D)]),
        # departure of a cycle edge and a bridge at the same time
        (full(A + B + C + D), [(0, 5, A, B), (0, 5, B, C), (0, 10, A, C), (0, 5, C, D)]),
        # merge and split of the same pair at one instant, repeated
        (full(A + B), [(2, 2, A, B), (4, 4, A, B), (6, 6, A, B)]),
        # node present for a single instant with a link at that instant
        ([(3, 3, A), (0, 10, B)], [(3, 3, A, B)]),
        # only singleton nodes
        ([(1, 1, A), (1, 1, B), (2, 2, A)], []),
        # arrivals and departures everywhere at one time
        ([(0, 4, A), (4, 8, B), (4, 4, C), (0, 8, D)], [(4, 4, A, B), (4, 4, B, C), (0, 4, A, D), (4, 8, B, D)]),
        # link arrives exactly when another leaves, connecting the same components
        (full(A + B + C), [(0, 5, A, B), (5, 10, B, C), (5, 5, A, C)]),
        # star built up and torn down one leaf at a time
        (full(A + B + C + D + E), [(i, 10 - i, A, x) for i, x in enumerate(B + C + D + E, 1)]),
        # nested instantaneous merges at one time
        (full(A + B + C + D), [(5, 5, A, B), (5, 5, C, D), (5, 5, B, C)]),
        # disconnected then reconnected by a different link at the same instant
        (full(A + B + C), [(0, 5, A, B), (5, 10, A, C), (5, 10, C, B)]),
        # two node segments of one node, link on each
        ([(0, 3, A), (5, 9, A), (0, 9, B)], [(1, 2, A, B), (5, 9, A, B)]),
        # node leaves the instant its last link leaves
        ([(0, 5, A), (0, 10, B)], [(0, 5, A, B)]),
        # long path then middle link drops, both halves stay
        (full(A + B + C + D + E), [(0, 10, A, B), (0, 10, B, C), (0, 3, C, D), (0, 10, D, E)]),
        # triangle with all three links leaving at once
        (full(A + B + C), [(2, 7, A, B), (2, 7, B, C), (2, 7, A, C)]),
        # empty stream
        ([], []),
    ]
    return [build_stream(ns, ls) for ns, ls in cases]


def frontier_stream(
    rng: random.Random,
    pairs: int = 10_000,
    cluster: int = 50,
    jitter: int = 100,
    duration: int = 100_000,
    gap: int = 10_000,
) -> StreamGraph:
    """Stars of ``cluster`` links whose starts and ends are jittered by less
    than ``jitter`` ticks around common times; consecutive stars are
    separated by ``gap`` ticks. Node presence follows link presence."""
    links = []
    t0 = 0
    hub = 0
    for k in range(0, pairs, cluster):
        size = min(cluster, pairs - k)
        b, e = t0, t0 + duration
        for leaf in range(1, size + 1):
            links.append((b + rng.randrange(jitter), e - rng.randrange(jitter), hub, hub + leaf))
        hub += size + 1
        t0 = e + gap
    nodes = []
    per_node: dict[int, list[tuple[int, int]]] = {}
    for b, e, u, v in links:
        per_node.setdefault(u, []).append((b, e))
        per_node.setdefault(v, []).append((b, e))
    for u, ivs in per_node.items():
        nodes.extend((b, e, u) for b, e in merge_intervals(ivs))
    return build_stream(nodes, links)


def large_sparse_stream(
    rng: random.Random,
    links: int = 1_000_000,
    n: int = 100_000,
    horizon: int = 10_000_000,
    max_duration: int = 1_000,
) -> StreamGraph:
    """Every node present over the whole horizon, ``links`` short random link
    segments (exactly, overlapping draws for one pair are redrawn)."""
    raw_links = []
    taken: dict[tuple[int, int], list[tuple[int, int]]] = {}
    while len(raw_links) < links:
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        b = rng.randrange(horizon - max_duration)
        e = b + rng.randrange(max_duration)
        key = (u, v) if u < v else (v, u)
        ivs = taken.setdefault(key, [])
        if any(b <= e2 and b2 <= e for b2, e2 in ivs):
            continue
        ivs.append((b, e))
        raw_links.append((b, e, u, v))
    return build_stream([(0, horizon, u) for u in range(n)], raw_links)
