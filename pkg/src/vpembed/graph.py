"""Directed multigraph with typed edge metrics and a residual-capacity overlay.

Nodes are dense integer ids in ``[0, node_count)``. Every edge carries two
metric vectors: *link* metrics are checked per edge against lower bounds
(e.g. bandwidth in Gbps) and *path* metrics are summed along a path against
upper bounds (e.g. delay in ms). Metric arities are declared graph-wide so
constraint validation is O(1).

A :class:`PhysicalGraph` is immutable after construction and safe to share
across concurrent readers. Mutable state (bandwidth reservations) lives in
a :class:`ResidualOverlay`, which is single-writer: concurrent reserve or
release calls must be serialized externally.
"""

from dataclasses import dataclass

from .errors import (
    ArityMismatchError,
    InsufficientResidualError,
    OverReleaseError,
    SelfLoopError,
)


@dataclass(frozen=True)
class EdgeMetrics:
    """Per-edge metric vectors.

    link_metrics must be nonnegative; path_metrics may be negative (the
    level-by-level solver detects negative-total cycles).
    """

    link_metrics: tuple[float, ...]
    path_metrics: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "link_metrics", tuple(float(v) for v in self.link_metrics))
        object.__setattr__(self, "path_metrics", tuple(float(v) for v in self.path_metrics))
        for v in self.link_metrics:
            if v < 0:
                raise ArityMismatchError(f"link metrics must be >= 0, got {v}")


class PhysicalGraph:
    """Directed multigraph over dense node ids.

    Attributes:
        node_count: number of nodes.
        edges: list of (src, dst, EdgeMetrics); the list index is the edge
            handle, preserving input order.
        adjacency: per-node list of (neighbor, edge handle), sorted ascending
            by neighbor id then handle, so iteration order is deterministic.
        in_adjacency: same shape for incoming edges, (source, edge handle).
        node_capacity: per-node capacity (CPU units).
        link_cols / path_cols: column-major metric storage,
            ``link_cols[j][e]`` is link metric j of edge e.
        labels: optional human-readable node names (display only).
    """

    __slots__ = (
        "node_count",
        "edges",
        "adjacency",
        "in_adjacency",
        "node_capacity",
        "link_arity",
        "path_arity",
        "link_cols",
        "path_cols",
        "labels",
    )

    def __init__(
        self,
        node_count: int,
        edges: list[tuple[int, int, EdgeMetrics]],
        node_capacity: list[float],
        link_arity: int,
        path_arity: int,
        labels: list[str | None] | None = None,
    ):
        self.node_count = node_count
        self.edges = edges
        self.node_capacity = node_capacity
        self.link_arity = link_arity
        self.path_arity = path_arity
        self.labels = labels

        self.link_cols = [[m.link_metrics[j] for (_, _, m) in edges] for j in range(link_arity)]
        self.path_cols = [[m.path_metrics[j] for (_, _, m) in edges] for j in range(path_arity)]

        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
        in_adjacency: list[list[tuple[int, int]]] = [[] for _ in range(node_count)]
        for handle, (src, dst, _) in enumerate(edges):
            adjacency[src].append((dst, handle))
            in_adjacency[dst].append((src, handle))
        for lst in adjacency:
            lst.sort()
        for lst in in_adjacency:
            lst.sort()
        self.adjacency = adjacency
        self.in_adjacency = in_adjacency

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_metrics(self, handle: int) -> EdgeMetrics:
        return self.edges[handle][2]

    def label_of(self, node: int) -> str:
        if self.labels is not None and self.labels[node] is not None:
            return self.labels[node]
        return str(node)


def build_graph(
    node_count: int,
    edges: list[tuple[int, int, EdgeMetrics]],
    node_capacity: list[float] | None = None,
    *,
    link_arity: int | None = None,
    path_arity: int | None = None,
    labels: list[str | None] | None = None,
) -> PhysicalGraph:
    """Validate inputs and build a PhysicalGraph.

    Metric arities are taken from the first edge unless given explicitly;
    every edge must agree. Parallel edges are permitted, self-loops are not.

    Raises:
        IndexError: a node id is outside [0, node_count).
        SelfLoopError: an edge has src == dst.
        ArityMismatchError: inconsistent metric vector lengths.
    """
    if node_count < 0:
        raise ValueError("node_count must be >= 0")
    if node_capacity is None:
        node_capacity = [0.0] * node_count
    if len(node_capacity) != node_count:
        raise ValueError(f"node_capacity has {len(node_capacity)} entries, expected {node_count}")
    if labels is not None and len(labels) != node_count:
        raise ValueError("labels length must equal node_count")

    if edges:
        first = edges[0][2]
        if link_arity is None:
            link_arity = len(first.link_metrics)
        if path_arity is None:
            path_arity = len(first.path_metrics)
    else:
        link_arity = link_arity or 0
        path_arity = path_arity or 0

    checked: list[tuple[int, int, EdgeMetrics]] = []
    for src, dst, metrics in edges:
        if not (0 <= src < node_count) or not (0 <= dst < node_count):
            raise IndexError(f"edge ({src}, {dst}) outside [0, {node_count})")
        if src == dst:
            raise SelfLoopError(f"self-loop at node {src}")
        if len(metrics.link_metrics) != link_arity or len(metrics.path_metrics) != path_arity:
            raise ArityMismatchError(
                f"edge ({src}, {dst}) has arities "
                f"({len(metrics.link_metrics)}, {len(metrics.path_metrics)}), "
                f"declared ({link_arity}, {path_arity})"
            )
        checked.append((src, dst, metrics))

    return PhysicalGraph(
        node_count,
        checked,
        [float(c) for c in node_capacity],
        link_arity,
        path_arity,
        labels,
    )


class ResidualOverlay:
    """Mutable residual view over an immutable base graph.

    Tracks remaining link metrics (typically bandwidth) and node capacity.
    Solvers read the overlay through the same attribute surface as
    PhysicalGraph, so queries against residual state need no special casing.
    The overlay does not track who reserved what; pairing reserves with
    releases is the caller's responsibility.
    """

    __slots__ = ("base", "link_cols", "node_capacity")

    def __init__(self, base: PhysicalGraph):
        self.base = base
        self.link_cols = [col.copy() for col in base.link_cols]
        self.node_capacity = list(base.node_capacity)

    # Read surface shared with PhysicalGraph (path metrics are not consumable).
    @property
    def node_count(self) -> int:
        return self.base.node_count

    @property
    def edge_count(self) -> int:
        return self.base.edge_count

    @property
    def adjacency(self):
        return self.base.adjacency

    @property
    def in_adjacency(self):
        return self.base.in_adjacency

    @property
    def edges(self):
        return self.base.edges

    @property
    def link_arity(self) -> int:
        return self.base.link_arity

    @property
    def path_arity(self) -> int:
        return self.base.path_arity

    @property
    def path_cols(self):
        return self.base.path_cols

    @property
    def labels(self):
        return self.base.labels

    def label_of(self, node: int) -> str:
        return self.base.label_of(node)

    def _demand_vector(self, demand) -> tuple[float, ...]:
        link = demand.link_metrics if isinstance(demand, EdgeMetrics) else tuple(demand)
        if len(link) != self.base.link_arity:
            raise ArityMismatchError(
                f"demand has {len(link)} link metrics, graph declares {self.base.link_arity}"
            )
        return link

    def reserve(self, path, demand) -> None:
        """Subtract demand's link metrics from every edge on the path.

        Atomic: if any edge lacks headroom, nothing is mutated.

        Raises:
            InsufficientResidualError: some on-path edge residual < demand.
        """
        link = self._demand_vector(demand)
        handles = getattr(path, "edge_handles", path)
        for e in handles:
            for j, need in enumerate(link):
                if self.link_cols[j][e] < need - 1e-12:
                    raise InsufficientResidualError(
                        f"edge {e} residual metric {j} is {self.link_cols[j][e]}, demand {need}"
                    )
        for e in handles:
            for j, need in enumerate(link):
                self.link_cols[j][e] -= need

    def release(self, path, demand) -> None:
        """Add demand's link metrics back onto every edge on the path.

        Atomic; the exact inverse of :meth:`reserve`.

        Raises:
            OverReleaseError: some edge would exceed its base metric.
        """
        link = self._demand_vector(demand)
        handles = getattr(path, "edge_handles", path)
        base_cols = self.base.link_cols
        for e in handles:
            for j, back in enumerate(link):
                if self.link_cols[j][e] + back > base_cols[j][e] + 1e-12:
                    raise OverReleaseError(
                        f"edge {e} metric {j} would exceed base "
                        f"({self.link_cols[j][e]} + {back} > {base_cols[j][e]})"
                    )
        for e in handles:
            for j, back in enumerate(link):
                self.link_cols[j][e] += back

    def reserve_node(self, node: int, cpu: float) -> None:
        """Subtract cpu units from a node's residual capacity."""
        if self.node_capacity[node] < cpu - 1e-12:
            raise InsufficientResidualError(
                f"node {node} residual cpu {self.node_capacity[node]}, demand {cpu}"
            )
        self.node_capacity[node] -= cpu

    def release_node(self, node: int, cpu: float) -> None:
        """Return cpu units to a node's residual capacity."""
        if self.node_capacity[node] + cpu > self.base.node_capacity[node] + 1e-12:
            raise OverReleaseError(f"node {node} cpu would exceed base capacity")
        self.node_capacity[node] += cpu
