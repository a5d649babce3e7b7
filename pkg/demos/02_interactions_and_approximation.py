"""
From timestamped interactions to an approximated stream
=======================================================

Each interaction ``u v t`` is stretched to [t, t + delta]. Rounding every
segment inward to multiples of Delta then merges nearby event times.
"""
import random
import warnings

from streamscc import CountingSink, approximate, parse_interactions, scc_direct
from streamscc.ingest import RoundedAwayWarning

rng = random.Random(1)
lines = [f"h{rng.randrange(40)} h{rng.randrange(40, 80)} {rng.randrange(50_000)}" for _ in range(5_000)]
delta = 60
S = parse_interactions(lines, delta)
print("segments:", len(S.node_segments), "nodes,", len(S.link_segments), "links")

print("Delta  components  event_times")
for Delta in (0, 5, 20, 59, 120, 600):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RoundedAwayWarning)
        SD = S if Delta == 0 else approximate(S, Delta)
    count = scc_direct(SD, CountingSink()).component_count
    note = f"  ({caught[0].message})" if caught else ""
    print(f"{Delta:5d}  {count:10d}  {len(SD.event_times):11d}{note}")
# below delta no segment can vanish; above it short ones get dropped
