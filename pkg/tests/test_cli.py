import csv
import json
import random

import pytest

from streamscc.cli import main, replay
from streamscc.generators import frontier_stream, random_stream

TWO_NODES = "n u 0 9\nn v 0 9\nl u v 2 5\n"


@pytest.fixture
def seg_file(tmp_path):
    def write(text, name="in.txt"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p

    return write


def dump_segments(S):
    lab = S.labels
    lines = [f"n {lab[u]} {b} {e}" for b, e, u in S.node_segments]
    lines += [f"l {lab[u]} {lab[v]} {b} {e}" for b, e, u, v in S.link_segments]
    return "\n".join(lines) + "\n"


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_scc_two_nodes(seg_file, tmp_path):
    out = tmp_path / "o"
    assert main(["scc", "--input", str(seg_file(TWO_NODES)), "--out", str(out)]) == 0
    lines = (out / "components.txt").read_text().splitlines()
    assert lines == ["[0 2[ 1 u", "[0 2[ 1 v", "[2 5] 2 u v", "]5 9] 1 u", "]5 9] 1 v"]
    summary = json.loads((out / "summary.json").read_text())
    assert summary["component_count"] == 5 and summary["algorithm"] == "direct"
    assert (summary["N"], summary["M"], summary["n"], summary["m"], summary["event_times"]) == (2, 1, 2, 1, 4)


def test_algorithms_write_identical_files(seg_file, tmp_path):
    S = random_stream(random.Random(3), n=12, segments=200, span=40)
    src = seg_file(dump_segments(S))
    files = []
    for alg in ("naive", "direct", "fd"):
        out = tmp_path / alg
        assert main(["scc", "--input", str(src), "--algorithm", alg, "--out", str(out)]) == 0
        files.append((out / "components.txt").read_bytes())
    assert files[0] == files[1] == files[2] and files[0]


def test_empty_input(seg_file, tmp_path):
    out = tmp_path / "o"
    assert main(["scc", "--input", str(seg_file("")), "--out", str(out)]) == 0
    assert json.loads((out / "summary.json").read_text())["component_count"] == 0


def test_count_only(seg_file, tmp_path):
    out = tmp_path / "o"
    assert main(["scc", "--input", str(seg_file(TWO_NODES)), "--count-only", "--out", str(out)]) == 0
    assert not (out / "components.txt").exists()
    assert json.loads((out / "summary.json").read_text())["component_count"] == 5


def test_parse_error_exit_code(seg_file, tmp_path, capsys):
    bad = seg_file("n u 0 9\nl u v 2\n")
    assert main(["scc", "--input", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path):
    assert main(["scc", "--input", str(tmp_path / "nope"), "--out", str(tmp_path / "o")]) == 2


def test_large_Delta_needs_override(seg_file, tmp_path):
    src = seg_file("u v 0\nu v 30\n")
    args = ["scc", "--input", str(src), "--format", "interactions", "--delta", "10", "--out", str(tmp_path / "o")]
    assert main(args + ["--Delta", "10"]) == 2
    assert main(args + ["--Delta", "10", "--allow-large-Delta"]) == 0


def test_interactions_need_delta(seg_file, tmp_path):
    src = seg_file("u v 0\n")
    assert main(["scc", "--input", str(src), "--format", "interactions", "--out", str(tmp_path / "o")]) == 2


def test_latency_budget_exit_code(seg_file, tmp_path):
    args = ["latency-compare", "--input", str(seg_file(TWO_NODES)), "--Delta", "0", "--out", str(tmp_path / "o")]
    assert main(args + ["--latency-budget", "3"]) == 3


def test_sweep(seg_file, tmp_path):
    S = frontier_stream(random.Random(5), pairs=200, cluster=20, jitter=10, duration=1000, gap=100)
    src = seg_file(dump_segments(S))
    out = tmp_path / "sweep"
    Deltas = [0, 4, 20, 40]
    args = ["sweep", "--input", str(src), "--out", str(out), "--jobs", "2"]
    for D in Deltas:
        args += ["--Delta", str(D)]
    assert main(args) == 0
    rows = read_csv(out / "sweep.csv")
    assert [int(r["Delta"]) for r in rows] == Deltas
    counts = [int(r["component_count"]) for r in rows]
    times = [int(r["event_time_count"]) for r in rows]
    assert all(t <= times[0] for t in times)
    assert counts[2] < counts[0]

    assert main(["scc", "--input", str(src), "--count-only", "--out", str(tmp_path / "s")]) == 0
    summary = json.loads((tmp_path / "s" / "summary.json").read_text())
    assert counts[0] == summary["component_count"] and times[0] == summary["event_times"]


def test_latency_compare(seg_file, tmp_path):
    S = random_stream(random.Random(11), n=10, segments=120, span=80, singleton_prob=0.1)
    src = seg_file(dump_segments(S))
    out = tmp_path / "lat"
    args = ["latency-compare", "--input", str(src), "--out", str(out)]
    for D in (0, 2, 4, 8, 16):
        args += ["--Delta", str(D)]
    assert main(args) == 0
    rows = read_csv(out / "latency.csv")
    assert float(rows[0]["lrmse"]) == 0 and int(rows[0]["missing_paths"]) == 0
    missing = [int(r["missing_paths"]) for r in rows]
    assert missing == sorted(missing)
    records = [json.loads(line) for line in (out / "latency.jsonl").read_text().splitlines()]
    assert [r["Delta"] for r in records] == [0, 2, 4, 8, 16]
    assert set(records[0]) == {"Delta", "lrmse", "avg_difference", "avg_stretch", "missing_paths", "pair_count_used"}


def test_missing_paths_monotone_on_random_streams(seg_file, tmp_path):
    rng = random.Random(19)
    for k in range(10):
        S = random_stream(rng, n=8, segments=60, span=64)
        out = tmp_path / f"m{k}"
        src = seg_file(dump_segments(S), f"m{k}.txt")
        main(["latency-compare", "--input", str(src), "--out", str(out),
              "--Delta", "1", "--Delta", "2", "--Delta", "4", "--Delta", "8"])
        missing = [int(r["missing_paths"]) for r in read_csv(out / "latency.csv")]
        assert missing == sorted(missing)


def test_stats(seg_file, tmp_path):
    out = tmp_path / "st"
    assert main(["stats", "--input", str(seg_file(TWO_NODES)), "--out", str(out)]) == 0
    rows = read_csv(out / "stats.csv")
    sizes = [int(r["size"]) for r in rows]
    assert {s: sizes.count(s) for s in set(sizes)} == {1: 4, 2: 1}
    summary = json.loads((out / "stats_summary.json").read_text())
    assert summary["count"] == 5 and summary["size_max"] == 2


def test_stats_instantaneous_and_isolated(seg_file, tmp_path):
    out = tmp_path / "st"
    text = "n a 0 4\nn b 2 8\nn c 5 5\n"
    assert main(["stats", "--input", str(seg_file(text)), "--out", str(out)]) == 0
    rows = read_csv(out / "stats.csv")
    assert {int(r["size"]) for r in rows} == {1}
    assert sorted(int(r["duration"]) for r in rows) == [0, 4, 6]


def test_replay(seg_file, capsys):
    trace = "i a b\ni b c\nq a c\nd a b\nq a c\nq b c\n"
    result = replay(trace.splitlines(), check=True)
    assert result["operations"] == 6 and result["queries"] == 3 and result["mismatches"] == 0
    assert main(["replay", "--input", str(seg_file(trace)), "--check"]) == 0
    assert json.loads(capsys.readouterr().out)["mismatches"] == 0


def test_replay_bad_line(seg_file):
    assert main(["replay", "--input", str(seg_file("i a\n"))]) == 2
