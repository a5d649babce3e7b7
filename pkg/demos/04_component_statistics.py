"""
Size and duration of components
===============================
"""
import random

import numpy as np

from streamscc import scc_direct
from streamscc.generators import random_stream
from streamscc.metrics import StatsSink

S = random_stream(random.Random(4), n=200, segments=6_000, span=5_000, singleton_prob=0.3)
sink = StatsSink()
scc_direct(S, sink)
st = sink.stats
print(st.summary())

sizes = np.array(st.sizes)
print("mean size", sizes.mean(), "share of singletons", (sizes == 1).mean())
for lo, hi, count in st.duration_histogram():
    print(f"duration [{lo}, {hi}) {count}")
