"""
How much does approximation cost in latency?
============================================

Latencies can only grow under approximation and some pairs may stop being
reachable. The report restricts its averages to pairs reachable in both.
"""
import random
import warnings

from streamscc import approximate, latencies
from streamscc.generators import random_stream
from streamscc.metrics import compare_matrices

S = random_stream(random.Random(5), n=40, segments=800, span=2_000, singleton_prob=0.1)
exact = latencies(S)
print("reachable ordered pairs:", int(exact.reachable().sum()))

warnings.simplefilter("ignore")
for Delta in (1, 2, 4, 8, 16, 32, 64):
    report = compare_matrices(exact, latencies(approximate(S, Delta)), Delta)
    print(report.as_dict())
