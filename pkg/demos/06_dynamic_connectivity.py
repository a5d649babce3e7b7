"""
Dynamic connectivity against recomputation
==========================================

Replays random insert/delete/query traces of 10^5 operations, answering
queries with the dynamic structure and with a fresh search over the
current edge set, and compares running times.
"""
import random
import sys
import time

from streamscc import DynConn
from streamscc.core import connected_components


def trace(rng, n, ops):
    edges = set()
    for _ in range(ops):
        r = rng.random()
        if r < 0.3:
            yield "q", *rng.sample(range(n), 2)
        elif (r < 0.68 and len(edges) < n) or not edges:
            u, v = sorted(rng.sample(range(n), 2))
            if (u, v) not in edges:
                edges.add((u, v))
                yield "i", u, v
        else:
            e = edges.pop()
            yield "d", *e


def run_dynamic(ops, n):
    dc = DynConn()
    for u in range(n):
        dc.insert_node(u)
    answers = []
    for op, u, v in ops:
        if op == "i":
            dc.insert_edge(u, v)
        elif op == "d":
            dc.delete_edge(u, v)
        else:
            answers.append(dc.connected(u, v))
    return answers


def run_recompute(ops, n):
    edges = set()
    answers = []
    for op, u, v in ops:
        if op == "i":
            edges.add((u, v))
        elif op == "d":
            edges.discard((u, v))
        else:
            comp = next(c for c in connected_components(range(n), edges) if u in c)
            answers.append(v in comp)
    return answers


ops_count = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
for n in (100, 1_000):
    ops = list(trace(random.Random(n), n, ops_count))
    t0 = time.perf_counter()
    a = run_dynamic(ops, n)
    t1 = time.perf_counter()
    b = run_recompute(ops, n)
    t2 = time.perf_counter()
    assert a == b
    print(f"n={n} ops={len(ops)} dynamic {t1 - t0:.2f}s recompute {t2 - t1:.2f}s")
