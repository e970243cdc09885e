"""Experiment drivers: VNE management-plane and traffic-steering data-plane runs.

Both drivers embed constrained virtual links onto a shared substrate through
a pluggable solver backend and account for every reservation on a
ResidualOverlay. Sweeps expand a declarative ExperimentConfig into a grid of
independent cells (one CSV row each); cells are deterministic functions of
their parameters, so reruns produce byte-identical output. Wall-clock
measurement is opt-in (measure_time) because timing is inherently
non-reproducible; with it off the timing column stays empty.
"""

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import topofile
from .backends import resolve_backend
from .constraints import ConstraintSet
from .errors import ConfigError, InvalidCountsError, NoPathError, UnknownBackendError
from .graph import PhysicalGraph, ResidualOverlay
from .paths import PathResult, format_result_line
from .topogen import (
    BW_LEVEL_GBPS,
    DELAY_LEVEL_FACTOR,
    GenSpec,
    constraints_from_percent,
    generate,
    realized_avg_degree,
    resolve_constraint_severity,
)

CSV_HEADER = (
    "model,nodes,avg_degree,bw_level,delay_level,backend,seed,"
    "vn_alloc_ratio,link_alloc_ratio,link_util,throughput_gbps,"
    "energy_eff,avg_hops,avg_us,n_used"
)

# Backends that require exactly one path bound; virtual links without a
# declared delay bound get an infinite one so these remain usable.
SINGLE_PATH_BOUND_BACKENDS = ("nm-l1", "edijkstra")


@dataclass(frozen=True)
class VnRequest:
    """One virtual network request: node CPU demands plus constrained links.

    virtual_links entries are (vnode_a, vnode_b, bw_demand, delay_bound);
    delay_bound may be None.
    """

    virtual_nodes: tuple[float, ...]
    virtual_links: tuple[tuple[int, int, float, float | None], ...]

    def __post_init__(self):
        n = len(self.virtual_nodes)
        for cpu in self.virtual_nodes:
            if cpu <= 0:
                raise ValueError(f"virtual node cpu demand must be positive, got {cpu}")
        for a, b, bw, _delay in self.virtual_links:
            if a == b or not (0 <= a < n) or not (0 <= b < n):
                raise ValueError(f"bad virtual link endpoints ({a}, {b}) for {n} nodes")
            if bw <= 0:
                raise ValueError(f"virtual link bw demand must be positive, got {bw}")


@dataclass
class VneOutcome:
    """Per-request embedding record (kept for invariant checks)."""

    accepted: bool
    hosts: tuple[int, ...] | None = None
    paths: list[PathResult] = field(default_factory=list)
    demands: list[float] = field(default_factory=list)


@dataclass
class VneReport:
    vn_allocation_ratio: float
    link_allocation_ratio: float
    link_utilization: float
    per_request_outcomes: list[VneOutcome]


@dataclass
class SteeringReport:
    total_throughput: float
    energy_efficiency: float
    avg_path_length: float
    avg_time_us: float | None
    n_used: int
    vl_count: int
    solve_calls: int
    allocations: list[tuple[int, int, PathResult]]


def energy_efficiency(total_nodes: int, used_nodes: int, bw_total: float) -> float:
    """Unused-node fraction weighted by total allocated throughput:
    ((N - N_used) / N) * bw_total."""
    if total_nodes <= 0 or used_nodes < 0 or used_nodes > total_nodes:
        raise InvalidCountsError(f"bad node counts: used {used_nodes} of {total_nodes}")
    return (total_nodes - used_nodes) / total_nodes * bw_total


def _place_nodes(overlay: ResidualOverlay, demands) -> tuple[int, ...] | None:
    """Greedy placement: each demand goes to the unused feasible node with
    maximum residual cpu, ties by smallest id. Returns None if any demand
    cannot be hosted. Placements are applied to the overlay as they happen."""
    hosts = []
    used = set()
    cap = overlay.node_capacity
    for cpu in demands:
        best = -1
        best_cap = -1.0
        for node in range(overlay.node_count):
            if node in used:
                continue
            c = cap[node]
            if c + 1e-12 >= cpu and c > best_cap:
                best = node
                best_cap = c
        if best < 0:
            for h, d in zip(hosts, demands):
                overlay.release_node(h, d)
            return None
        overlay.reserve_node(best, cpu)
        used.add(best)
        hosts.append(best)
    return tuple(hosts)


def _vlink_constraints(backend: str, bw: float, delay: float | None) -> ConstraintSet:
    if delay is not None:
        path_bounds = ((0, delay),)
    elif backend in SINGLE_PATH_BOUND_BACKENDS:
        path_bounds = ((0, math.inf),)
    else:
        path_bounds = ()
    return ConstraintSet(link_bounds=((0, bw),), path_bounds=path_bounds)


def run_vne(g: PhysicalGraph, requests, backend: str, seed: int = 0) -> VneReport:
    """Embed a pool of VN requests in order through the named backend.

    Per request: greedy node placement, then every virtual link is routed
    against the residual overlay with its bw demand as the link bound (plus
    the delay bound when present). Acceptance is all-or-nothing: any failed
    link rejects the whole request and rolls back its reservations.

    ``seed`` is part of the signature for symmetry with run_steering; the
    greedy embedder itself is deterministic and does not consume it.

    Raises:
        UnknownBackendError: backend does not name a registered solver.
    """
    solver = resolve_backend(backend)
    overlay = ResidualOverlay(g)
    outcomes: list[VneOutcome] = []
    accepted_vn = 0
    accepted_vl = 0
    requested_vl = 0

    for req in requests:
        requested_vl += len(req.virtual_links)
        hosts = _place_nodes(overlay, req.virtual_nodes)
        if hosts is None:
            outcomes.append(VneOutcome(False))
            continue
        reserved: list[tuple[PathResult, tuple[float, ...]]] = []
        ok = True
        for a, b, bw, delay in req.virtual_links:
            c = _vlink_constraints(backend, bw, delay)
            try:
                path = solver(overlay, hosts[a], hosts[b], c)
            except NoPathError:
                ok = False
                break
            demand = (bw,) + (0.0,) * (g.link_arity - 1)
            overlay.reserve(path, demand)
            reserved.append((path, demand))
        if ok:
            accepted_vn += 1
            accepted_vl += len(req.virtual_links)
            outcomes.append(
                VneOutcome(True, hosts, [p for p, _ in reserved], [d[0] for _, d in reserved])
            )
        else:
            for path, demand in reversed(reserved):
                overlay.release(path, demand)
            for host, cpu in zip(hosts, req.virtual_nodes):
                overlay.release_node(host, cpu)
            outcomes.append(VneOutcome(False))

    n_requests = len(outcomes)
    base_bw = sum(g.link_cols[0]) if g.link_arity else 0.0
    reserved_bw = base_bw - (sum(overlay.link_cols[0]) if g.link_arity else 0.0)
    return VneReport(
        vn_allocation_ratio=accepted_vn / n_requests if n_requests else 1.0,
        link_allocation_ratio=accepted_vl / requested_vl if requested_vl else 1.0,
        link_utilization=reserved_bw / base_bw if base_bw else 0.0,
        per_request_outcomes=outcomes,
    )


def draw_pairs(node_count: int, pairs: int, seed: int) -> list[tuple[int, int]]:
    """Distinct (src, dst) pairs, src != dst, drawn without replacement."""
    if pairs > node_count * (node_count - 1):
        raise ValueError(f"cannot draw {pairs} distinct pairs from {node_count} nodes")
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < pairs:
        u = rng.randrange(node_count)
        v = rng.randrange(node_count)
        if u != v and (u, v) not in seen:
            seen.add((u, v))
            out.append((u, v))
    return out


def run_steering(
    g: PhysicalGraph,
    pairs: int,
    c: ConstraintSet,
    backend: str,
    seed: int = 0,
    *,
    measure_time: bool = False,
) -> SteeringReport:
    """Traffic-steering run: for each random (src, dst) pair, allocate as
    many identical virtual links as possible against the residual overlay.

    The per-link demand equals the constraint set's link bounds (one VL
    consumes its bandwidth bound on every traversed edge); allocation for a
    pair stops at the first no-path outcome. Throughput counts link metric 0.

    Raises:
        UnknownBackendError: backend does not name a registered solver.
        ValueError: the constraint set carries no positive link demand
            (allocation would never terminate).
    """
    solver = resolve_backend(backend)
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    demand = [0.0] * g.link_arity
    for j, bound in c.link_bounds:
        demand[j] = bound
    if not demand or max(demand) <= 0:
        raise ValueError("steering requires a positive link-bound demand")
    demand = tuple(demand)

    overlay = ResidualOverlay(g)
    used_nodes: set[int] = set()
    allocations: list[tuple[int, int, PathResult]] = []
    throughput = 0.0
    hops_sum = 0
    solve_calls = 0
    elapsed = 0.0

    for u, v in draw_pairs(g.node_count, pairs, seed):
        while True:
            solve_calls += 1
            t0 = time.perf_counter() if measure_time else 0.0
            try:
                path = solver(overlay, u, v, c)
            except NoPathError:
                if measure_time:
                    elapsed += time.perf_counter() - t0
                break
            if measure_time:
                elapsed += time.perf_counter() - t0
            overlay.reserve(path, demand)
            allocations.append((u, v, path))
            throughput += demand[0]
            hops_sum += path.hop_count
            used_nodes.update(path.nodes)

    vl_count = len(allocations)
    return SteeringReport(
        total_throughput=throughput,
        energy_efficiency=energy_efficiency(g.node_count, len(used_nodes), throughput),
        avg_path_length=hops_sum / vl_count if vl_count else 0.0,
        avg_time_us=(elapsed / solve_calls * 1e6) if measure_time and solve_calls else None,
        n_used=len(used_nodes),
        vl_count=vl_count,
        solve_calls=solve_calls,
        allocations=allocations,
    )


def assign_link_bandwidth_from_node_budget(g: PhysicalGraph, budget: float) -> PhysicalGraph:
    """Re-derive link bandwidth from a per-node budget: every link's
    capacity is the budget divided by each endpoint's degree, taking the
    tighter side. Turns a node-capacitated statement ("200 bandwidth units
    per node") into the link-capacitated model the embedder needs."""
    from .graph import EdgeMetrics, build_graph

    degree = [len(adj) for adj in g.adjacency]
    edges = []
    for src, dst, m in g.edges:
        bw = min(budget / degree[src], budget / degree[dst])
        edges.append((src, dst, EdgeMetrics((bw,) + m.link_metrics[1:], m.path_metrics)))
    return build_graph(
        g.node_count, edges, g.node_capacity,
        link_arity=g.link_arity, path_arity=g.path_arity, labels=g.labels,
    )


def build_vn_requests(
    count: int, vnode_count: int = 14, demand_max: float = 20.0, seed: int = 0
) -> list[VnRequest]:
    """Random VN requests whose link counts spread from 1 up to
    vnode_count - 1 across the pool; demands uniform in (1, demand_max)."""
    rng = random.Random(seed)
    all_pairs = [(a, b) for a in range(vnode_count) for b in range(a + 1, vnode_count)]
    hi = vnode_count - 1
    requests = []
    for i in range(count):
        t = i / (count - 1) if count > 1 else 1.0
        links = round(1 + t * (hi - 1))
        chosen = rng.sample(all_pairs, links)
        cpu = tuple(rng.uniform(1.0, demand_max) for _ in range(vnode_count))
        vlinks = tuple((a, b, rng.uniform(1.0, demand_max), None) for a, b in chosen)
        requests.append(VnRequest(cpu, vlinks))
    return requests


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative sweep document (see parse_config for the text grammar)."""

    scenario: str
    model: str = "waxman"
    topology: str | None = None
    nodes: int | None = None
    degrees: tuple[float, ...] = (4.0,)
    bw_levels: tuple[str, ...] = ("low",)
    delay_levels: tuple[str, ...] = ("high",)
    delay_percents: tuple[float, ...] | None = None
    backends: tuple[str, ...] = ("nm-l1",)
    seeds: tuple[int, ...] = (1,)
    pairs: int | None = None
    requests: int = 15
    request_nodes: int = 14
    demand_max: float = 20.0
    vne_cpu: float = 200.0
    vne_bw: float = 200.0
    scale: str = "desk"
    measure_time: bool = False
    output: str | None = None
    emit_plotdata: bool = False
    src: int | None = None
    dst: int | None = None
    constraints: tuple[str, ...] = ()

    def effective_nodes(self) -> int:
        if self.nodes is not None:
            return self.nodes
        if self.scenario == "vne":
            return 100
        return 10_000 if self.scale == "paper" else 1_000

    def effective_pairs(self) -> int:
        if self.pairs is not None:
            return self.pairs
        return 1_000 if self.scale == "paper" else 100


@dataclass(frozen=True)
class _Cell:
    index: int
    degree: float | None
    bw_level: str
    delay_token: str
    backend: str
    seed: int


def _cells(cfg: ExperimentConfig) -> list[_Cell]:
    delay_axis = (
        [f"{topofile.fmt(p)}%" for p in cfg.delay_percents]
        if cfg.delay_percents is not None
        else list(cfg.delay_levels)
    )
    bw_axis = list(cfg.bw_levels)
    if cfg.scenario == "vne":
        bw_axis, delay_axis = [""], [""]
    cells = []
    index = 0
    for degree in cfg.degrees:
        for bw in bw_axis:
            for dl in delay_axis:
                for backend in cfg.backends:
                    for seed in cfg.seeds:
                        cells.append(_Cell(index, degree, bw, dl, backend, seed))
                        index += 1
    return cells


def _cell_graph(cfg: ExperimentConfig, cell: _Cell) -> PhysicalGraph:
    if cfg.topology:
        return topofile.load(cfg.topology)
    if cfg.scenario == "vne":
        spec = GenSpec(
            model=cfg.model,
            node_count=cfg.effective_nodes(),
            target_avg_degree=cell.degree,
            cpu_units=cfg.vne_cpu,
            seed=cell.seed,
        )
        return assign_link_bandwidth_from_node_budget(generate(spec), cfg.vne_bw)
    else:
        spec = GenSpec(
            model=cfg.model,
            node_count=cfg.effective_nodes(),
            target_avg_degree=cell.degree,
            seed=cell.seed,
        )
    return generate(spec)


def _run_cell(cfg: ExperimentConfig, cell: _Cell, graph: PhysicalGraph | None = None) -> dict:
    g = graph if graph is not None else _cell_graph(cfg, cell)
    row = {
        "model": cfg.model if not cfg.topology else "file",
        "nodes": g.node_count,
        "avg_degree": realized_avg_degree(g) if cfg.topology else cell.degree,
        "bw_level": cell.bw_level,
        "delay_level": cell.delay_token,
        "backend": cell.backend,
        "seed": cell.seed,
    }
    if cfg.scenario == "vne":
        requests = build_vn_requests(cfg.requests, cfg.request_nodes, cfg.demand_max, cell.seed)
        report = run_vne(g, requests, cell.backend, cell.seed)
        row.update(
            vn_alloc_ratio=report.vn_allocation_ratio,
            link_alloc_ratio=report.link_allocation_ratio,
            link_util=report.link_utilization,
        )
    else:
        if cell.delay_token.endswith("%"):
            c = constraints_from_percent(g, cell.bw_level, float(cell.delay_token[:-1]))
        else:
            c = resolve_constraint_severity(g, cell.bw_level, cell.delay_token)
        report = run_steering(
            g,
            cfg.effective_pairs(),
            c,
            cell.backend,
            cell.seed,
            measure_time=cfg.measure_time,
        )
        row.update(
            throughput_gbps=report.total_throughput,
            energy_eff=report.energy_efficiency,
            avg_hops=report.avg_path_length,
            n_used=report.n_used,
        )
        if report.avg_time_us is not None:
            row["avg_us"] = report.avg_time_us
    return row


def _cell_worker(args):
    cfg, cell = args
    return _run_cell(cfg, cell)


def sweep(cfg: ExperimentConfig, jobs: int = 1) -> list[dict]:
    """Expand the config into cells and run them, returning one row dict per
    cell in deterministic grid order. Cells are independent; jobs > 1 runs
    them in worker processes (each regenerates its own topology)."""
    _validate_scenario(cfg)
    cells = _cells(cfg)
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_cell_worker, [(cfg, cell) for cell in cells]))
    # cells with the same topology parameters share one generated graph
    cache: dict[tuple, PhysicalGraph] = {}
    rows = []
    for cell in cells:
        key = (cfg.model, cfg.topology, cfg.effective_nodes(), cell.degree, cell.seed)
        if key not in cache:
            cache[key] = _cell_graph(cfg, cell)
        rows.append(_run_cell(cfg, cell, cache[key]))
    return rows


def _validate_scenario(cfg: ExperimentConfig) -> None:
    if cfg.scenario not in ("vne", "steering", "solve"):
        raise ConfigError(f"unknown scenario {cfg.scenario!r}", key="scenario")
    if cfg.scenario == "solve":
        if not cfg.topology or cfg.src is None or cfg.dst is None:
            raise ConfigError("solve scenario needs topology, src and dst", key="scenario")
    for level in cfg.bw_levels:
        if cfg.scenario == "steering" and level not in BW_LEVEL_GBPS:
            raise ConfigError(f"unknown bw level {level!r}", key="bw_levels")
    if cfg.delay_percents is None:
        for level in cfg.delay_levels:
            if cfg.scenario == "steering" and level not in DELAY_LEVEL_FACTOR:
                raise ConfigError(f"unknown delay level {level!r}", key="delay_levels")
    for backend in cfg.backends:
        try:
            resolve_backend(backend)
        except UnknownBackendError as exc:
            raise ConfigError(str(exc), key="backends") from exc


def run_solve_scenario(cfg: ExperimentConfig) -> list[str]:
    """The 'solve' scenario: one query per backend on a topology file,
    returning result serialization lines."""
    from .constraints import parse_constraints

    _validate_scenario(cfg)
    g = topofile.load(cfg.topology)
    c = parse_constraints(cfg.constraints)
    lines = []
    for backend in cfg.backends:
        solver = resolve_backend(backend)
        try:
            result = solver(g, cfg.src, cfg.dst, c)
            lines.append(format_result_line(result, labels=g.label_of))
        except NoPathError as exc:
            lines.append(format_result_line(exc))
    return lines


_CONFIG_KEYS = {
    "scenario": str,
    "model": str,
    "topology": str,
    "nodes": int,
    "degrees": "float_list",
    "bw_levels": "str_list",
    "delay_levels": "str_list",
    "delay_percents": "float_list",
    "backends": "str_list",
    "seeds": "int_list",
    "pairs": int,
    "requests": int,
    "request_nodes": int,
    "demand_max": float,
    "vne_cpu": float,
    "vne_bw": float,
    "scale": str,
    "measure_time": "bool",
    "output": str,
    "emit_plotdata": "bool",
    "src": int,
    "dst": int,
    "constraint": "repeat",
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key/value experiment document.

    One ``key = value`` entry per line; '#' starts a comment; list values
    are whitespace- or comma-separated; ``constraint`` may repeat, one bound
    literal per occurrence. Unknown keys are rejected.
    """
    values: dict = {}
    constraints: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}", key=key)
        kind = _CONFIG_KEYS[key]
        try:
            if kind == "repeat":
                constraints.append(value)
            elif kind == "bool":
                if value.lower() not in ("true", "false"):
                    raise ValueError(f"expected true/false, got {value!r}")
                values[key] = value.lower() == "true"
            elif kind == "str_list":
                values[key] = tuple(value.replace(",", " ").split())
            elif kind == "int_list":
                values[key] = tuple(int(v) for v in value.replace(",", " ").split())
            elif kind == "float_list":
                values[key] = tuple(float(v) for v in value.replace(",", " ").split())
            else:
                values[key] = kind(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}", key=key) from exc
    if constraints:
        values["constraints"] = tuple(constraints)
    if "scenario" not in values:
        raise ConfigError("missing required key 'scenario'", key="scenario")
    scale = values.get("scale", "desk")
    if scale not in ("desk", "paper"):
        raise ConfigError(f"scale must be desk or paper, got {scale!r}", key="scale")
    cfg = ExperimentConfig(**values)
    _validate_scenario(cfg)
    return cfg


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return topofile.fmt(value)
    return str(value)


def rows_to_csv(rows: list[dict]) -> str:
    """Render rows under the fixed CSV schema; inapplicable fields stay empty."""
    columns = CSV_HEADER.split(",")
    out = [CSV_HEADER]
    for row in rows:
        out.append(",".join(_fmt_cell(row.get(col)) for col in columns))
    return "\n".join(out) + "\n"


PLOT_METRICS = {
    "throughput_gbps": "throughput",
    "energy_eff": "energy",
    "avg_hops": "hops",
    "avg_us": "time",
    "vn_alloc_ratio": "vn_alloc",
    "link_alloc_ratio": "link_alloc",
    "link_util": "link_util",
}


def plotdata_series(rows: list[dict], cfg: ExperimentConfig) -> dict[str, str]:
    """Whitespace-separated series files, one per (metric, backend): the x
    axis is the degree grid (or the delay grid when sweeping percentages),
    the y value is the metric's mean over seeds."""
    x_key = "delay_level" if cfg.delay_percents is not None else "avg_degree"
    series: dict[str, dict[float, list[float]]] = {}
    for row in rows:
        x_raw = row[x_key]
        x = float(str(x_raw).rstrip("%"))
        for column, stem in PLOT_METRICS.items():
            if column not in row or row[column] is None:
                continue
            name = f"{stem}_{row['backend']}.dat"
            series.setdefault(name, {}).setdefault(x, []).append(float(row[column]))
    files = {}
    for name, points in series.items():
        lines = [
            f"{topofile.fmt(x)} {topofile.fmt(sum(ys) / len(ys))}"
            for x, ys in sorted(points.items())
        ]
        files[name] = "\n".join(lines) + "\n"
    return files
