"""
Components of a small stream graph
==================================

Two nodes present over [0, 9] that are linked over [2, 5]. The three
algorithms return the same five components.
"""
from streamscc import build_stream, stats, strongly_connected_components
from streamscc.scc import canonical_lines

S = build_stream([(0, 9, "u"), (0, 9, "v")], [(2, 5, "u", "v")])
print(stats(S))

# event times and the graph present just before and at each of them
for t in S.event_times:
    print(t)

for algorithm in ("naive", "direct", "fd"):
    comps = strongly_connected_components(S, algorithm)
    print(algorithm)
    for line in canonical_lines(S, comps):
        print("   ", line)

# an instantaneous link gives an instantaneous component
S2 = build_stream([(0, 6, "u"), (0, 6, "v")], [(3, 3, "u", "v")])
print("\n".join(canonical_lines(S2, strongly_connected_components(S2))))
