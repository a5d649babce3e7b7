"""Connected components of stream graphs."""
from .core import (
    BoundedInterval,
    Event,
    EventKind,
    EventSequence,
    Interval,
    LinkOutsideNodePresence,
    LinkSegment,
    NodeSegment,
    NoPredecessorEventTime,
    SegmentOutsideHorizon,
    SelfLoop,
    StaticGraph,
    StreamError,
    StreamGraph,
    StreamStats,
    TimeOutsideHorizon,
    build_stream,
    event_sequence,
    graph_at,
    graph_just_before,
    stats,
)
from .dynconn import DynConn, MergeOutcome, SplitOutcome
from .ingest import (
    ApproxConfig,
    DeltaConfig,
    MalformedLine,
    NonPositiveDelta,
    approximate,
    parse_interactions,
    parse_segments,
)
from .metrics import (
    ApproxReport,
    BudgetExceeded,
    ComponentStats,
    LatencyMatrix,
    MismatchedNodeSets,
    compare,
    component_stats,
    latencies,
)
from .scc import (
    Component,
    ComponentSink,
    CountingSink,
    ListSink,
    PartitionChecker,
    scc_direct,
    scc_fd,
    scc_naive,
    strongly_connected_components,
    verify_partition,
)

__version__ = "0.1.0"
