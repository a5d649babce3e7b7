"""
Frontier effect
===============

Stars of links that start and end at almost, but not exactly, the same
time. Every jittered start or end changes the hub component, so the count
is inflated. Rounding to a step larger than the jitter collapses it.
"""
import random
import warnings

from streamscc import CountingSink, approximate, scc_direct
from streamscc.generators import frontier_stream

S = frontier_stream(random.Random(9), pairs=10_000, cluster=50, jitter=100)
base = scc_direct(S, CountingSink()).component_count
print("Delta=0:", base, "components,", len(S.event_times), "event times")

warnings.simplefilter("ignore")
for Delta in (10, 50, 99, 150, 400):
    SD = approximate(S, Delta)
    count = scc_direct(SD, CountingSink()).component_count
    print(f"Delta={Delta}: {count} components, ratio {count / base:.3f}")
