"""
Command line runs
=================

Writes a segments file and drives the ``streamscc`` entry point on it.
The same can be typed in a shell, e.g.
``streamscc sweep --input stream.txt --Delta 0 --Delta 150 --out out``.
"""
import random
import tempfile
from pathlib import Path

from streamscc.cli import main
from streamscc.generators import frontier_stream

S = frontier_stream(random.Random(2), pairs=500, cluster=50)
lab = S.labels
work = Path(tempfile.mkdtemp())
src = work / "stream.txt"
with open(src, "w", encoding="utf-8") as fh:
    for b, e, u in S.node_segments:
        fh.write(f"n {lab[u]} {b} {e}\n")
    for b, e, u, v in S.link_segments:
        fh.write(f"l {lab[u]} {lab[v]} {b} {e}\n")

main(["scc", "--input", str(src), "--out", str(work / "scc")])
main(["sweep", "--input", str(src), "--out", str(work / "sweep"), "--jobs", "4",
      "--Delta", "0", "--Delta", "50", "--Delta", "150", "--Delta", "1000"])
main(["stats", "--input", str(src), "--out", str(work / "stats")])
for path in sorted(work.rglob("*")):
    if path.is_file() and path.suffix in (".json", ".csv"):
        print(path.relative_to(work))
        print(path.read_text()[:400])
