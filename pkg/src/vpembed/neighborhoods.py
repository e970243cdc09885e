"""Minimum-hop constrained path search by level-by-level frontier expansion.

The search grows "neighborhood" levels outward from the source: level k
holds the nodes reached at sweep round k on the constraint-pruned graph.
Two solvers share this skeleton:

- :func:`solve_general` accepts any number of link and path bounds. At each
  depth it enumerates the loop-free candidate paths of exactly that many
  hops (worst-case exponential) and returns the first feasible candidate in
  lexicographic order.
- :func:`solve_l1` accepts exactly one path bound and runs in polynomial
  time: each round keeps one best accumulated value per node, re-labeling a
  node (and migrating it to the newest level) only when a strictly better
  value arrives that still respects the bound.

Rounds in solve_l1 are synchronous: offers made during round k compare
against the values committed at round k-1, and every label keeps an
immutable link to the parent label it extended. Both points matter for
hop optimality -- without them a node improved mid-round can propagate one
round early and the back track can splice a detour into the answer.
"""

import math
from dataclasses import dataclass

from .constraints import ConstraintSet, path_feasible
from .errors import (
    InfeasibleError,
    NegativeWeightCycleError,
    ResourceLimitError,
    UnreachableError,
)
from .paths import PathResult, path_from_edges

DEFAULT_CANDIDATE_LIMIT = 10**6


@dataclass
class NeighborhoodList:
    """Ordered levels of nodes discovered by the forward pass.

    levels[0] is always {source}. In the general sweep a node may recur in
    several levels (level k is the plain union of level k-1's neighbors);
    in the single-path-bound sweep each node belongs to at most one level.
    last_level[u] is the latest level containing u, or None.
    """

    source: int
    levels: list[set[int]]
    last_level: list[int | None]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass
class SearchLabels:
    """Per-node relaxation state: predecessor, incoming edge, distance, level."""

    predecessor: list[int | None]
    pred_edge: list[int | None]
    distance: list[float]
    level: list[int | None]


def init_labels(g) -> SearchLabels:
    """Fresh labels: predecessor None, distance 0, level None for every node.

    An unlabeled node (predecessor None) is treated as having distance
    +infinity by the relaxation comparison; the stored 0 is just the
    initialization value.
    """
    n = g.node_count
    return SearchLabels([None] * n, [None] * n, [0.0] * n, [None] * n)


def _check_query(g, src: int, dst: int, c: ConstraintSet | None) -> None:
    n = g.node_count
    if not (0 <= src < n) or not (0 <= dst < n):
        raise IndexError(f"src/dst ({src}, {dst}) outside [0, {n})")
    if c is not None:
        c.validate_arity(g.link_arity, g.path_arity)


def _usable_mask(g, c: ConstraintSet | None) -> bytearray | None:
    """Per-edge link-bound feasibility; None when nothing can be pruned."""
    if c is None or not c.link_bounds:
        return None
    mask = bytearray([1]) * g.edge_count
    for j, bound in c.link_bounds:
        col = g.link_cols[j]
        for e, value in enumerate(col):
            if value < bound:
                mask[e] = 0
    return mask


def _min_sums_to(g, dst: int, col, usable: bytearray | None) -> list[float]:
    """Minimum accumulated value of one metric column from every node to
    dst on the pruned graph (reverse Dijkstra; requires nonnegative col)."""
    import heapq

    dist = [math.inf] * g.node_count
    dist[dst] = 0.0
    heap = [(0.0, dst)]
    in_adj = g.in_adjacency
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, e in in_adj[v]:
            if usable is not None and not usable[e]:
                continue
            nd = d + col[e]
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def _reachable(g, src: int, dst: int, usable: bytearray | None) -> bool:
    """BFS probe on the pruned graph, ignoring path bounds."""
    if src == dst:
        return True
    seen = bytearray(g.node_count)
    seen[src] = 1
    queue = [src]
    adj = g.adjacency
    while queue:
        nxt = []
        for u in queue:
            for v, e in adj[u]:
                if usable is not None and not usable[e]:
                    continue
                if not seen[v]:
                    if v == dst:
                        return True
                    seen[v] = 1
                    nxt.append(v)
        queue = nxt
    return False


def build_neighborhoods(g, src: int, dst: int, c: ConstraintSet | None = None) -> NeighborhoodList:
    """Forward pass of the general sweep.

    Grows levels (each the union of the previous level's out-neighbors on
    the pruned graph) until dst appears, failing once the level count would
    exceed the node count.

    Raises:
        UnreachableError: dst never appears within node_count levels.
    """
    _check_query(g, src, dst, c)
    usable = _usable_mask(g, c)
    n = g.node_count
    adj = g.adjacency
    levels: list[set[int]] = [{src}]
    last: list[int | None] = [None] * n
    last[src] = 0
    while dst not in levels[-1]:
        if len(levels) >= n:
            raise UnreachableError(f"node {dst} not reached within {n} levels")
        frontier: set[int] = set()
        for u in levels[-1]:
            for v, e in adj[u]:
                if usable is None or usable[e]:
                    frontier.add(v)
        if not frontier:
            raise UnreachableError(f"search frontier emptied before reaching node {dst}")
        levels.append(frontier)
        k = len(levels) - 1
        for v in frontier:
            last[v] = k
    return NeighborhoodList(src, levels, last)


def _iter_fixed_length_paths(g, levels, src, dst, usable, limit, cost_floor=None):
    """Yield (nodes, edge_handles) for every loop-free src->dst path whose
    hop count equals len(levels) - 1, in lexicographic order.

    Walks forward through the levels in ascending (neighbor, handle) order,
    restricted to nodes from which dst stays reachable level-by-level (the
    per-level intersection of in-neighbors with the previous level).

    cost_floor optionally lists (metric col, per-node remaining-sum lower
    bound, effective upper bound) triples; prefixes that already provably
    exceed a bound are skipped. Only sound for nonnegative metrics, so the
    caller decides what to pass.
    """
    depth = len(levels) - 1
    if depth == 0:
        if src == dst:
            yield [src], []
        return

    # survivors[k]: members of level k that can still reach dst on schedule
    survivors: list[set[int]] = [set() for _ in range(depth + 1)]
    if dst not in levels[depth]:
        return
    survivors[depth] = {dst}
    in_adj = g.in_adjacency
    for k in range(depth - 1, -1, -1):
        cur = survivors[k]
        lev = levels[k]
        for v in survivors[k + 1]:
            for u, e in in_adj[v]:
                if (usable is None or usable[e]) and u in lev:
                    cur.add(u)
    if src not in survivors[0]:
        return

    adj = g.adjacency
    on_path = bytearray(g.node_count)
    on_path[src] = 1
    nodes = [src]
    edges: list[int] = []
    stack = [iter(adj[src])]
    sums = [[0.0] for _ in cost_floor] if cost_floor else []
    steps = 0
    while stack:
        descended = False
        for v, e in stack[-1]:
            if usable is not None and not usable[e]:
                continue
            k = len(stack)
            if v not in survivors[k] or on_path[v]:
                continue
            if cost_floor:
                dead = False
                for (col, floor, bound), partial in zip(cost_floor, sums):
                    if partial[-1] + col[e] + floor[v] >= bound:
                        dead = True
                        break
                if dead:
                    continue
            steps += 1
            if steps > limit:
                raise ResourceLimitError(f"candidate expansion exceeded {limit} partial paths")
            nodes.append(v)
            edges.append(e)
            if k == depth:
                yield list(nodes), list(edges)
                nodes.pop()
                edges.pop()
                continue
            on_path[v] = 1
            for (col, _f, _b), partial in zip(cost_floor, sums) if cost_floor else ():
                partial.append(partial[-1] + col[e])
            stack.append(iter(adj[v]))
            descended = True
            break
        if not descended:
            stack.pop()
            if stack:
                u = nodes.pop()
                edges.pop()
                on_path[u] = 0
                for partial in sums:
                    partial.pop()


def backward_pass(
    g,
    nh: NeighborhoodList,
    dst: int,
    c: ConstraintSet | None = None,
    *,
    limit: int = DEFAULT_CANDIDATE_LIMIT,
) -> list[PathResult]:
    """All loop-free paths from the neighborhood source to dst with exactly
    nh.depth hops, sorted lexicographically by node sequence.

    ``c`` must carry the same link bounds the neighborhoods were built with
    so both passes see the same pruned edge set (path bounds are ignored
    here; candidate validation is the caller's job).
    """
    if dst not in nh.levels[-1]:
        raise ValueError(f"dst {dst} is not in the last neighborhood level")
    usable = _usable_mask(g, c)
    return [
        path_from_edges(g, nodes, edges)
        for nodes, edges in _iter_fixed_length_paths(g, nh.levels, nh.source, dst, usable, limit)
    ]


def solve_general(
    g,
    src: int,
    dst: int,
    c: ConstraintSet,
    *,
    candidate_limit: int = DEFAULT_CANDIDATE_LIMIT,
) -> PathResult:
    """Minimum-hop loop-free path satisfying any mix of link and path bounds.

    Prunes link-infeasible edges, then deepens the neighborhood levels; at
    every depth where dst appears, candidates of exactly that hop count are
    generated in lexicographic order and the first one meeting all path
    bounds is returned. Depth never exceeds node_count - 1 hops.

    Raises:
        UnreachableError: dst never appears in any level.
        InfeasibleError: dst reachable but no loop-free path satisfies c.
        ResourceLimitError: candidate expansion exceeded candidate_limit.
    """
    _check_query(g, src, dst, c)
    if src == dst:
        if not path_feasible([0.0] * g.path_arity, c):
            raise InfeasibleError("zero-hop path violates a path bound")
        return PathResult.trivial(src, g.link_arity, g.path_arity)

    usable = _usable_mask(g, c)
    n = g.node_count

    # admissible remaining-cost pruning, sound only for nonnegative metrics;
    # it also settles obviously hopeless queries without any enumeration
    cost_floor = []
    for j, bound in c.path_bounds:
        col = g.path_cols[j]
        if any(w < 0 for w in col):
            continue
        floor = _min_sums_to(g, dst, col, usable)
        bound_eff = bound if c.strict else math.nextafter(bound, math.inf)
        if floor[src] == math.inf:
            raise UnreachableError(f"node {dst} is unreachable from {src} on the pruned graph")
        if floor[src] >= bound_eff:
            raise InfeasibleError(
                f"minimum accumulated metric {floor[src]} already violates the bound {bound}"
            )
        cost_floor.append((col, floor, bound_eff))

    adj = g.adjacency
    levels: list[set[int]] = [{src}]
    seen_dst = False
    while len(levels) < n:
        frontier: set[int] = set()
        for u in levels[-1]:
            for v, e in adj[u]:
                if usable is None or usable[e]:
                    frontier.add(v)
        if not frontier:
            break
        levels.append(frontier)
        if dst in frontier:
            seen_dst = True
            for nodes, edges in _iter_fixed_length_paths(
                g, levels, src, dst, usable, candidate_limit, cost_floor
            ):
                cand = path_from_edges(g, nodes, edges)
                if path_feasible(cand.accumulated, c):
                    return cand
    if seen_dst:
        raise InfeasibleError(f"no loop-free path from {src} to {dst} satisfies the constraints")
    raise UnreachableError(f"node {dst} is unreachable from {src} on the pruned graph")


def _l1_forward(g, src: int, dst: int, c: ConstraintSet):
    """Synchronous level sweep for the single-path-bound case.

    Returns (status, levels, level_of, dist, label) where status is one of
    "found", "stalled", "negcycle". ``label[v]`` is an immutable
    (node, edge, parent_label) chain recording how v's current distance was
    reached; ``levels`` holds the committed batches with nodes removed from
    superseded levels.
    """
    p_idx, p_bound = c.path_bounds[0]
    p_eff = p_bound if c.strict else math.nextafter(p_bound, math.inf)
    usable = _usable_mask(g, c)
    n = g.node_count
    adj = g.adjacency
    wcol = g.path_cols[p_idx]

    dist = [math.inf] * n
    dist[src] = 0.0
    label: list[tuple | None] = [None] * n
    label[src] = (src, -1, None)
    level_of = [-1] * n
    level_of[src] = 0
    levels: list[list[int]] = [[src]]
    frontier = [src]

    status = "found" if dst == src else None
    while status is None:
        # Offers compare against the distances committed last round; the
        # best offer per node within a round wins.
        updates: dict[int, tuple[float, tuple]] = {}
        for u in frontier:
            du = dist[u]
            lu = label[u]
            for v, e in adj[u]:
                if usable is not None and not usable[e]:
                    continue
                nd = du + wcol[e]
                if nd >= p_eff or nd >= dist[v]:
                    continue
                got = updates.get(v)
                if got is None or nd < got[0]:
                    updates[v] = (nd, (v, e, lu))
        if not updates:
            status = "stalled"
            break
        if len(levels) >= n:
            status = "negcycle"
            break
        k = len(levels)
        new_frontier = []
        for v, (nd, lab) in updates.items():
            dist[v] = nd
            label[v] = lab
            if level_of[v] >= 0:
                levels[level_of[v]].remove(v)
            level_of[v] = k
            new_frontier.append(v)
        levels.append(new_frontier)
        frontier = new_frontier
        if level_of[dst] == k:
            status = "found"
    return status, levels, level_of, dist, label, usable


def solve_l1(g, src: int, dst: int, c: ConstraintSet) -> PathResult:
    """Minimum-hop loop-free path under link bounds plus exactly one path bound.

    Pre-routing marks link-infeasible edges unusable; the forward sweep
    relabels a node only when a strictly smaller accumulated value arrives
    that stays under the bound, migrating the node to the newest level; the
    back track follows the recorded parent chain from dst.

    Hop-optimal for nonnegative path metrics. With negative metrics the
    bound guard rejects prefixes that spike over the bound before coming
    back down, so feasibility is conservative there; the supported use of
    negative values is cycle detection.

    Raises:
        UnreachableError: dst unreachable on the pruned topology.
        InfeasibleError: dst reachable ignoring the path bound, but the
            sweep stalled (the bound rejects every extension).
        NegativeWeightCycleError: the level count reached node_count while
            relabeling was still active.
        ValueError: c does not have exactly one path bound.
    """
    _check_query(g, src, dst, c)
    if c.path_count != 1:
        raise ValueError(f"solve_l1 requires exactly one path bound, got {c.path_count}")
    if src == dst:
        if not path_feasible([0.0] * g.path_arity, c):
            raise InfeasibleError("zero-hop path violates the path bound")
        return PathResult.trivial(src, g.link_arity, g.path_arity)

    status, _levels, _level_of, _dist, label, usable = _l1_forward(g, src, dst, c)
    if status == "negcycle":
        raise NegativeWeightCycleError("level count reached the node count; relaxation is cycling")
    if status == "stalled":
        if _reachable(g, src, dst, usable):
            raise InfeasibleError(f"the path bound rejects every route from {src} to {dst}")
        raise UnreachableError(f"node {dst} is unreachable from {src} on the pruned graph")

    nodes = []
    edges = []
    chain = label[dst]
    seen = set()
    while chain is not None:
        node, edge, parent = chain
        if node in seen:
            raise NegativeWeightCycleError("predecessor chain loops; negative cycle reached dst")
        seen.add(node)
        nodes.append(node)
        if parent is not None:
            edges.append(edge)
        chain = parent
    nodes.reverse()
    edges.reverse()
    return path_from_edges(g, nodes, edges)
