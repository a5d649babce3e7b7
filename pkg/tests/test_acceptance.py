"""Acceptance suite. Each test records one PASS/FAIL line, printed at the end
of the session (see ``conftest.py``) and also when this file is run directly."""
from __future__ import annotations

import random
import time
import warnings

import numpy as np
import pytest

from oracles import BFSConnectivity, brute_latencies
from streamscc import (
    CountingSink,
    DynConn,
    approximate,
    latencies,
    parse_interactions,
    scc_direct,
    scc_fd,
    stats,
    verify_partition,
)
from streamscc.generators import adversarial_streams, frontier_stream, large_sparse_stream, random_stream
from streamscc.ingest import RoundedAwayWarning
from streamscc.metrics import LatencyMatrix, compare_matrices
from streamscc.scc import ALGORITHMS, canonical_lines, strongly_connected_components

RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def random_suite(seed=1, count=200):
    """Streams with n <= 30 and N + M <= 500, times drawn from small spans so
    event times collide; singleton segments are common."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        S = random_stream(
            rng,
            n=rng.randint(1, 30),
            segments=rng.randint(1, 480),
            span=rng.choice([5, 20, 60, 300]),
            singleton_prob=rng.choice([0.0, 0.2, 0.6]),
        )
        st = stats(S)
        if st.N + st.M <= 500:
            out.append(S)
    return out


@pytest.fixture(scope="module")
def suite():
    return random_suite()


def quiet_approximate(S, D):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RoundedAwayWarning)
        return approximate(S, D)


def test_c01_partition(suite):
    start = time.perf_counter()
    bad = 0
    for S in suite:
        for alg in ALGORITHMS:
            if not verify_partition(S, strongly_connected_components(S, alg), maximal=True):
                bad += 1
    elapsed = time.perf_counter() - start
    record(1, bad == 0 and elapsed < 30, f"{len(suite)} streams x 3 algorithms, {bad} failures, {elapsed:.1f}s (< 30s)")


def test_c02_equivalence(suite):
    start = time.perf_counter()
    streams = suite + adversarial_streams()
    diffs = 0
    for S in streams:
        files = ["\n".join(canonical_lines(S, strongly_connected_components(S, alg))) for alg in ALGORITHMS]
        diffs += len(set(files)) != 1
    elapsed = time.perf_counter() - start
    record(2, diffs == 0 and elapsed < 60, f"{len(streams)} streams, {diffs} differing, {elapsed:.1f}s (< 60s)")


def test_c03_count_bound(suite):
    streams = suite + adversarial_streams()
    worst = 0.0
    violations = 0
    for S in streams:
        st = stats(S)
        count = scc_direct(S, CountingSink()).component_count
        violations += count > st.N + 4 * st.M
        if st.N + st.M:
            worst = max(worst, count / (st.N + 4 * st.M))
    record(3, violations == 0, f"{len(streams)} streams, max count/(N+4M) = {worst:.3f}")


def test_c04_dynconn_oracle():
    rng = random.Random(4)
    n = 200
    dc, ref = DynConn(), BFSConnectivity()
    for u in range(n):
        dc.insert_node(u)
        ref.insert_node(u)
    edges: set[tuple[int, int]] = set()
    queries = mismatches = positive = 0
    start = time.perf_counter()
    for _ in range(10_000):
        r = rng.random()
        if r < 0.34:
            u, v = rng.sample(range(n), 2)
            queries += 1
            ans = dc.connected(u, v)
            positive += ans
            mismatches += ans != ref.connected(u, v)
        # keep the edge count near n so the graph hovers around connectivity
        elif (r < 0.72 and len(edges) < n) or not edges:
            u, v = sorted(rng.sample(range(n), 2))
            if (u, v) in edges:
                continue
            edges.add((u, v))
            dc.insert_edge(u, v)
            ref.insert_edge(u, v)
        else:
            u, v = rng.choice(sorted(edges))
            edges.discard((u, v))
            dc.delete_edge(u, v)
            ref.delete_edge(u, v)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    record(4, ok, f"n=200, 10^4 operations, {queries} queries ({positive} connected), {mismatches} mismatches, {elapsed:.1f}s (< 30s)")


def included(SD, S) -> bool:
    for b, e, u in SD.node_segments:
        if not any(b0 <= b and e <= e0 for b0, e0 in S.node_presence[u]):
            return False
    for b, e, u, v in SD.link_segments:
        if not any(b0 <= b and e <= e0 for b0, e0 in S.link_presence[(u, v)]):
            return False
    return True


def test_c05_inclusion():
    rng = random.Random(5)
    failures = 0
    for _ in range(50):
        S = random_stream(rng, n=rng.randint(2, 20), segments=rng.randint(5, 200), span=rng.choice([30, 100, 400]))
        for D in (1, 2, 3, 7, 16):
            SD = quiet_approximate(S, D)
            failures += SD.labels != S.labels or not included(SD, S)
    cases = kept = 0
    for _ in range(10):
        delta = rng.choice([5, 10, 30])
        lines = [f"a{rng.randrange(8)} b{rng.randrange(8)} {rng.randrange(2000)}" for _ in range(300)]
        S = parse_interactions(lines, delta)
        for D in range(1, delta):
            SD = approximate(S, D)
            cases += 1
            kept += len(SD.node_segments) == len(S.node_segments) and len(SD.link_segments) == len(S.link_segments)
            failures += not included(SD, S)
    ok = failures == 0 and kept == cases
    record(5, ok, f"50 streams x 5 Deltas included, {failures} failures; segment count kept in {kept}/{cases} Delta < delta cases")


def test_c06_latency_upper_bound():
    rng = random.Random(6)
    bad_bound = bad_reach = 0
    for _ in range(50):
        S = random_stream(rng, n=rng.randint(2, 25), segments=rng.randint(5, 250), span=rng.choice([40, 200]))
        lat = latencies(S)
        for D in (2, 5, 13):
            latD = latencies(quiet_approximate(S, D))
            r, rd = lat.reachable(), latD.reachable()
            bad_reach += int((rd & ~r).sum())
            bad_bound += int((latD.values[rd & r] < lat.values[rd & r]).sum())
    ok = bad_bound == 0 and bad_reach == 0
    record(6, ok, f"50 streams x 3 Deltas, {bad_bound} pairs with l_D < l, {bad_reach} new reachable pairs")


def test_c07_latency_oracle():
    rng = random.Random(7)
    checked = differing = 0
    while checked < 100:
        S = random_stream(rng, n=rng.randint(2, 8), segments=rng.randint(2, 30), span=rng.choice([6, 15, 40]))
        if len(S.event_times) > 20:
            continue
        checked += 1
        lat = latencies(S)
        got = {(i, j): int(lat.values[i, j]) for i, j in zip(*np.nonzero(lat.reachable()))}
        differing += got != brute_latencies(S)
    record(7, differing == 0, f"{checked} streams (n <= 8, <= 20 event times), {differing} differing")


def _matrix(rows):
    return LatencyMatrix(tuple("uvw"[: len(rows)]), np.array(rows, dtype=np.int64))


METRIC_CASES = [
    # (exact, approximated, expected lrmse, avg_difference, avg_stretch, missing)
    ([[-1, 3], [5, -1]], [[-1, 3], [5, -1]], 0.0, 0.0, 1.0, 0),
    ([[-1, 2], [2, -1]], [[-1, 4], [4, -1]], 2.0, 2.0, 5 / 3, 0),
    (
        [[-1, 0, 1], [2, -1, 4], [-1, 1, -1]],
        [[-1, 3, -1], [2, -1, 7], [-1, 1, -1]],
        (18 / 4) ** 0.5,
        6 / 4,
        (4 + 1 + 8 / 5 + 1) / 4,
        1,
    ),
]


def test_c08_metric_formulas():
    worst = 0.0
    ok = True
    for exact, approx, lrmse, diff, stretch, missing in METRIC_CASES:
        r = compare_matrices(_matrix(exact), _matrix(approx))
        for got, want in ((r.lrmse, lrmse), (r.avg_difference, diff), (r.avg_stretch, stretch)):
            err = abs(got - want) / max(abs(want), 1e-300) if want else abs(got)
            worst = max(worst, err)
            ok &= err <= 1e-9
        ok &= r.missing_paths == missing
    record(8, ok, f"3 micro-cases, worst relative error {worst:.1e} (<= 1e-9)")


def test_c09_frontier():
    jitter, Delta = 100, 150
    S = frontier_stream(random.Random(9), pairs=10_000, cluster=50, jitter=jitter)
    base = scc_direct(S, CountingSink()).component_count
    approx = scc_direct(quiet_approximate(S, Delta), CountingSink()).component_count
    ratio = approx / base
    record(9, ratio <= 0.10, f"10^4 pairs, jitter < {jitter}: {base} components at Delta=0, {approx} at Delta={Delta}, ratio {ratio:.3f} (<= 0.10)")


@pytest.mark.slow
def test_c10_throughput():
    S = large_sparse_stream(random.Random(10), links=1_000_000)
    start = time.perf_counter()
    direct = scc_direct(S, CountingSink())
    t_direct = time.perf_counter() - start
    start = time.perf_counter()
    fd = scc_fd(S, CountingSink())
    t_fd = time.perf_counter() - start
    ok = t_direct < 120 and fd.component_count == direct.component_count
    record(
        10,
        ok,
        f"10^6 link segments: direct {t_direct:.1f}s (< 120s), fd {t_fd:.1f}s, "
        f"{direct.component_count} components from both",
    )


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
