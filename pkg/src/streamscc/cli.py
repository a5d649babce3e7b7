"""Command line entry point: ``streamscc {scc,sweep,latency-compare,stats,replay}``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import ingest
from .core import StreamError, StreamGraph, connected_components, stats
from .dynconn import DynConn, DynConnError
from .metrics import DEFAULT_LATENCY_BUDGET, BudgetExceeded, StatsSink, compare_matrices, latencies
from .scc import ALGORITHMS, CountingSink, ListSink, canonical_lines

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: Path
    format: str = "segments"
    delta: int | None = None
    algorithm: str = "direct"
    Deltas: list[int] = field(default_factory=list)
    out: Path = Path("out")
    count_only: bool = False
    jobs: int = 1
    time_scale: str | None = None
    allow_large_Delta: bool = False
    latency_budget: int = DEFAULT_LATENCY_BUDGET

    def validate(self) -> None:
        for D in self.Deltas:
            if D < 0:
                raise UsageError(f"--Delta must be >= 0, got {D}")
            if self.delta is not None and D >= self.delta and not self.allow_large_Delta:
                raise UsageError(f"--Delta {D} is not below --delta {self.delta} (use --allow-large-Delta)")


def real(x: float) -> str:
    return format(x, ".9g")


def load(cfg: RunConfig) -> StreamGraph:
    with open(cfg.input, encoding="utf-8") as fh:
        if cfg.format == "interactions":
            if cfg.delta is None:
                raise UsageError("--delta is required for the interactions format")
            return ingest.parse_interactions(fh, cfg.delta, cfg.time_scale)
        return ingest.parse_segments(fh, cfg.time_scale)


def approximated(S: StreamGraph, Delta: int) -> StreamGraph:
    # Delta = 0 means no approximation
    return S if Delta == 0 else ingest.approximate(S, Delta)


def _json_line(path: Path, obj: dict, mode: str = "w") -> None:
    with open(path, mode, encoding="utf-8") as fh:
        fh.write(json.dumps(obj) + "\n")


def cmd_scc(cfg: RunConfig) -> int:
    S = load(cfg)
    if cfg.Deltas:
        S = approximated(S, cfg.Deltas[-1])
    cfg.out.mkdir(parents=True, exist_ok=True)
    sink = CountingSink() if cfg.count_only else ListSink()
    summary = ALGORITHMS[cfg.algorithm](S, sink)
    if not cfg.count_only:
        lines = canonical_lines(S, sink.components)
        (cfg.out / "components.txt").write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    st = stats(S)
    _json_line(
        cfg.out / "summary.json",
        {
            "algorithm": cfg.algorithm,
            "N": st.N,
            "M": st.M,
            "n": st.n,
            "m": st.m,
            "event_times": st.event_time_count,
            "component_count": summary.component_count,
            "wall_ms": round(summary.wall_ms, 3),
        },
    )
    return EXIT_OK


def _sweep_row(S: StreamGraph, Delta: int, algorithm: str) -> dict:
    SD = approximated(S, Delta)
    summary = ALGORITHMS[algorithm](SD, CountingSink())
    return {
        "Delta": Delta,
        "component_count": summary.component_count,
        "event_time_count": len(SD.event_times),
        "wall_ms": round(summary.wall_ms, 3),
    }


def cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.Deltas:
        raise UsageError("sweep needs at least one --Delta")
    S = load(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        rows = list(pool.map(lambda D: _sweep_row(S, D, cfg.algorithm), cfg.Deltas))
    with open(cfg.out / "sweep.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["Delta", "component_count", "event_time_count", "wall_ms"])
        w.writeheader()
        w.writerows(rows)
    return EXIT_OK


def cmd_latency_compare(cfg: RunConfig) -> int:
    if not cfg.Deltas:
        raise UsageError("latency-compare needs at least one --Delta")
    S = load(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    base = latencies(S, cfg.latency_budget)
    reports = []
    for D in cfg.Deltas:
        SD = approximated(S, D)
        reports.append(compare_matrices(base, latencies(SD, cfg.latency_budget), D))
    fields = ["Delta", "lrmse", "avg_difference", "avg_stretch", "missing_paths", "pair_count_used"]
    with open(cfg.out / "latency.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(fields)
        for r in reports:
            w.writerow([r.Delta, real(r.lrmse), real(r.avg_difference), real(r.avg_stretch), r.missing_paths, r.pair_count_used])
    with open(cfg.out / "latency.jsonl", "w", encoding="utf-8") as fh:
        for r in reports:
            d = r.as_dict()
            for k in ("lrmse", "avg_difference", "avg_stretch"):
                d[k] = float(real(d[k]))
            fh.write(json.dumps(d) + "\n")
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    S = load(cfg)
    if cfg.Deltas:
        S = approximated(S, cfg.Deltas[-1])
    cfg.out.mkdir(parents=True, exist_ok=True)
    sink = StatsSink()
    ALGORITHMS[cfg.algorithm](S, sink)
    st = sink.stats
    with open(cfg.out / "stats.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["size", "duration"])
        w.writerows(zip(st.sizes, st.durations))
    summary = st.summary()
    summary["size_histogram"] = st.size_histogram()
    summary["duration_histogram"] = st.duration_histogram()
    _json_line(cfg.out / "stats_summary.json", summary)
    return EXIT_OK


def replay(lines, check: bool = False) -> dict:
    """Replay an ``i u v`` / ``d u v`` / ``q u v`` trace on :class:`DynConn`.

    With ``check`` every query is also answered by a search over the current
    edge set and the two answers are compared.
    """
    dc = DynConn()
    edges: set = set()
    nodes: set = set()
    ops = queries = mismatches = 0
    start = time.perf_counter()
    for lineno, line in enumerate(lines, 1):
        tok = line.split()
        if not tok or tok[0].startswith("#"):
            continue
        if len(tok) != 3 or tok[0] not in "idq":
            raise ingest.MalformedLine(lineno, line, "expected 'i|d|q u v'")
        op, u, v = tok
        for x in (u, v):
            if x not in nodes:
                nodes.add(x)
                dc.insert_node(x)
        ops += 1
        if op == "i":
            dc.insert_edge(u, v)
            edges.add(frozenset((u, v)))
        elif op == "d":
            dc.delete_edge(u, v)
            edges.discard(frozenset((u, v)))
        else:
            queries += 1
            ans = dc.connected(u, v)
            if check:
                comp = next(c for c in connected_components(nodes, [tuple(e) for e in edges]) if u in c)
                mismatches += ans != (v in comp)
    return {
        "operations": ops,
        "queries": queries,
        "mismatches": mismatches if check else None,
        "wall_ms": round((time.perf_counter() - start) * 1e3, 3),
    }


def cmd_replay(cfg: RunConfig, check: bool) -> int:
    with open(cfg.input, encoding="utf-8") as fh:
        result = replay(fh, check)
    print(json.dumps(result))
    return EXIT_OK if not result["mismatches"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="streamscc", description="Connected components of stream graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, type=Path)
        sp.add_argument("--format", choices=["segments", "interactions"], default="segments")
        sp.add_argument("--delta", type=int, help="interaction duration in ticks")
        sp.add_argument("--Delta", type=int, action="append", default=[], dest="Deltas",
                        help="approximation step in ticks (repeatable); 0 means none")
        sp.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="direct")
        sp.add_argument("--out", type=Path, default=Path("out"))
        sp.add_argument("--time-scale", dest="time_scale", help="ticks per input time unit")
        sp.add_argument("--allow-large-Delta", dest="allow_large_Delta", action="store_true")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--latency-budget", dest="latency_budget", type=int, default=DEFAULT_LATENCY_BUDGET)
        sp.add_argument("--count-only", dest="count_only", action="store_true")

    for name in ("scc", "sweep", "latency-compare", "stats"):
        common(sub.add_parser(name))
    rp = sub.add_parser("replay", help="replay a dynamic connectivity trace")
    rp.add_argument("--input", required=True, type=Path)
    rp.add_argument("--check", action="store_true")
    return p


COMMANDS = {"scc": cmd_scc, "sweep": cmd_sweep, "latency-compare": cmd_latency_compare, "stats": cmd_stats}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "replay":
            return cmd_replay(RunConfig(input=args.input), args.check)
        opts = {k: v for k, v in vars(args).items() if k != "command"}
        cfg = RunConfig(**opts)
        cfg.validate()
        return COMMANDS[args.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (StreamError, DynConnError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
