import pytest

from vpembed import (
    ConstraintSet,
    EdgeMetrics,
    GenSpec,
    InvalidCountsError,
    UnknownBackendError,
    VnRequest,
    build_graph,
    build_vn_requests,
    energy_efficiency,
    generate,
    parse_config,
    run_steering,
    run_vne,
    sweep,
)
from vpembed.harness import (
    ExperimentConfig,
    assign_link_bandwidth_from_node_budget,
    plotdata_series,
    rows_to_csv,
    run_solve_scenario,
)
from vpembed.topogen import resolve_constraint_severity

E = EdgeMetrics


# --- energy efficiency ------------------------------------------------------


def test_energy_all_nodes_unused():
    assert energy_efficiency(100, 0, 50.0) == 50.0


def test_energy_all_nodes_used():
    assert energy_efficiency(100, 100, 50.0) == 0.0


def test_energy_mixed():
    assert energy_efficiency(100, 40, 200.0) == pytest.approx(120.0)


def test_energy_invalid_counts():
    with pytest.raises(InvalidCountsError):
        energy_efficiency(0, 0, 1.0)
    with pytest.raises(InvalidCountsError):
        energy_efficiency(10, 11, 1.0)
    with pytest.raises(InvalidCountsError):
        energy_efficiency(10, -1, 1.0)


# --- VNE --------------------------------------------------------------------


def _small_substrate(bw=50.0, cpu=100.0):
    # 6-node ring plus chords, ample delay headroom
    pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]
    edges = []
    for u, v in pairs:
        m = E((bw,), (1.0,))
        edges.append((u, v, m))
        edges.append((v, u, m))
    return build_graph(6, edges, [cpu] * 6)


def test_vne_empty_requests():
    g = _small_substrate()
    report = run_vne(g, [], "nm-general")
    assert report.vn_allocation_ratio == 1.0
    assert report.link_allocation_ratio == 1.0
    assert report.link_utilization == 0.0


def test_vne_unknown_backend():
    g = _small_substrate()
    with pytest.raises(UnknownBackendError):
        run_vne(g, [], "magic")


def test_vne_impossible_demand():
    g = _small_substrate(cpu=10.0)
    req = VnRequest((50.0, 50.0), ((0, 1, 1.0, None),))
    report = run_vne(g, [req], "nm-general")
    assert report.vn_allocation_ratio == 0.0
    assert report.link_allocation_ratio == 0.0


def test_vne_accepts_and_reserves():
    g = _small_substrate()
    req = VnRequest((10.0, 10.0, 10.0), ((0, 1, 5.0, None), (1, 2, 5.0, None)))
    report = run_vne(g, [req], "nm-general")
    assert report.vn_allocation_ratio == 1.0
    assert report.link_utilization > 0.0
    outcome = report.per_request_outcomes[0]
    assert outcome.accepted
    assert len(set(outcome.hosts)) == 3


def test_vne_rejection_rolls_back_everything():
    # second virtual link cannot fit: the whole request must leave no trace
    g = _small_substrate(bw=5.0)
    req = VnRequest((1.0, 1.0, 1.0), ((0, 1, 4.0, None), (1, 2, 4.0, None), (0, 2, 4.0, None)))
    report = run_vne(g, [req], "ksp:1")
    assert report.vn_allocation_ratio == 0.0
    assert report.link_utilization == 0.0


def test_vne_whole_request_atomicity_preserves_capacity():
    g = _small_substrate()
    reqs = build_vn_requests(6, 6, 15.0, seed=4)
    report = run_vne(g, reqs, "nm-general")
    # conservation: reserved bandwidth equals the sum over accepted requests
    expected = sum(
        d * p.hop_count
        for o in report.per_request_outcomes
        if o.accepted
        for p, d in zip(o.paths, o.demands)
    )
    base = sum(g.link_cols[0])
    assert report.link_utilization == pytest.approx(expected / base)


def test_vne_delay_bounded_links():
    g = _small_substrate()
    ok = VnRequest((1.0, 1.0), ((0, 1, 1.0, 10.0),))
    tight = VnRequest((1.0, 1.0), ((0, 1, 1.0, 0.5),))
    report = run_vne(g, [ok, tight], "nm-general")
    assert [o.accepted for o in report.per_request_outcomes] == [True, False]


def test_vne_l1_backend_gets_synthetic_bound():
    g = _small_substrate()
    req = VnRequest((1.0, 1.0), ((0, 1, 1.0, None),))
    for backend in ("nm-l1", "edijkstra"):
        report = run_vne(g, [req], backend)
        assert report.vn_allocation_ratio == 1.0


def test_node_budget_bandwidth_assignment():
    g = _small_substrate()
    capped = assign_link_bandwidth_from_node_budget(g, 120.0)
    degree = [len(adj) for adj in g.adjacency]
    for src, dst, m in capped.edges:
        assert m.link_metrics[0] == pytest.approx(min(120.0 / degree[src], 120.0 / degree[dst]))
    assert capped.path_cols == g.path_cols


# --- steering ----------------------------------------------------------------


def _corridor(residual=9.0, hops=2):
    edges = []
    for i in range(hops):
        edges.append((i, i + 1, E((residual,), (1.0,))))
    return build_graph(hops + 1, edges, [1.0] * (hops + 1))


def test_steering_no_edge_meets_bound():
    g = _corridor(residual=2.0)
    c = ConstraintSet(((0, 4.0),), ((0, 100.0),))
    report = run_steering(g, 1, c, "nm-l1", seed=1)
    assert report.total_throughput == 0.0
    assert report.energy_efficiency == 0.0
    assert report.n_used == 0
    assert report.vl_count == 0


def test_steering_floor_division_of_residual():
    # residual 9, demand 4: exactly two virtual links fit
    g = _corridor(residual=9.0, hops=2)
    c = ConstraintSet(((0, 4.0),), ((0, 100.0),))
    report = run_steering(g, 1, c, "nm-l1", seed=3)
    assert report.vl_count == 2
    assert report.total_throughput == pytest.approx(8.0)


def test_steering_conservation_full_recount():
    g = generate(GenSpec(node_count=120, target_avg_degree=4.0, seed=6))
    c = resolve_constraint_severity(g, "med", "med")
    report = run_steering(g, 25, c, "nm-l1", seed=6)
    spent = [0.0] * g.edge_count
    for _u, _v, path in report.allocations:
        for e in path.edge_handles:
            spent[e] += c.link_bounds[0][1]
    # recount against an untouched copy of the base graph
    for e in range(g.edge_count):
        assert spent[e] <= g.link_cols[0][e] + 1e-9


def test_steering_n_used_is_union_of_path_nodes():
    g = generate(GenSpec(node_count=80, target_avg_degree=4.0, seed=9))
    c = resolve_constraint_severity(g, "med", "high")
    report = run_steering(g, 10, c, "nm-l1", seed=9)
    union = set()
    for _u, _v, path in report.allocations:
        union.update(path.nodes)
    assert report.n_used == len(union)
    assert report.vl_count == len(report.allocations)
    assert report.energy_efficiency == pytest.approx(
        (g.node_count - len(union)) / g.node_count * report.total_throughput
    )


def test_steering_monotone_severity():
    g = generate(GenSpec(node_count=150, target_avg_degree=4.0, seed=12))
    throughputs = []
    for level in ("low", "med", "high"):
        c = resolve_constraint_severity(g, level, "high")
        throughputs.append(run_steering(g, 20, c, "nm-l1", seed=12).total_throughput)
    assert throughputs[0] >= throughputs[1] >= throughputs[2]


def test_steering_paired_dominance_on_path_length():
    for seed in (1, 2, 3):
        g = generate(GenSpec(node_count=150, target_avg_degree=4.0, seed=seed))
        c = resolve_constraint_severity(g, "low", "high")
        nm = run_steering(g, 15, c, "nm-l1", seed=seed)
        ed = run_steering(g, 15, c, "edijkstra", seed=seed)
        if nm.vl_count and ed.vl_count:
            assert nm.avg_path_length <= ed.avg_path_length + 1e-9


def test_steering_rejects_unconstrained_demand():
    g = _corridor()
    with pytest.raises(ValueError):
        run_steering(g, 1, ConstraintSet((), ((0, 5.0),)), "nm-l1")


def test_steering_timing_opt_in():
    g = _corridor()
    c = ConstraintSet(((0, 4.0),), ((0, 100.0),))
    silent = run_steering(g, 1, c, "nm-l1", seed=1)
    timed = run_steering(g, 1, c, "nm-l1", seed=1, measure_time=True)
    assert silent.avg_time_us is None
    assert timed.avg_time_us is not None and timed.avg_time_us > 0


# --- sweeps -------------------------------------------------------------------


def _steering_cfg(**kw):
    base = dict(
        scenario="steering",
        nodes=60,
        degrees=(3.0, 4.0),
        bw_levels=("low", "med"),
        delay_levels=("high",),
        backends=("nm-l1", "edijkstra"),
        seeds=(1, 2, 3),
        pairs=5,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_sweep_cardinality():
    rows = sweep(_steering_cfg())
    assert len(rows) == 2 * 2 * 1 * 2 * 3


def test_delay_percent_grid():
    cfg = _steering_cfg(
        degrees=(4.0,),
        bw_levels=("low",),
        delay_percents=tuple(range(400, 49, -50)),
        backends=("nm-l1",),
        seeds=(1,),
    )
    rows = sweep(cfg)
    assert len(rows) == 8
    assert rows[0]["delay_level"] == "400%"
    assert rows[-1]["delay_level"] == "50%"


def test_sweep_deterministic_csv():
    cfg = _steering_cfg(seeds=(1, 2))
    a = rows_to_csv(sweep(cfg))
    b = rows_to_csv(sweep(cfg))
    assert a == b
    assert a.splitlines()[0].startswith("model,nodes,avg_degree,bw_level,delay_level,backend,seed")


def test_sweep_parallel_matches_serial():
    cfg = _steering_cfg(seeds=(1,), bw_levels=("low",))
    assert rows_to_csv(sweep(cfg, jobs=2)) == rows_to_csv(sweep(cfg, jobs=1))


def test_vne_sweep_rows():
    cfg = ExperimentConfig(
        scenario="vne", nodes=40, degrees=(3.0,), backends=("nm-general", "ksp:1"),
        seeds=(1,), requests=4, request_nodes=6,
    )
    rows = sweep(cfg)
    assert len(rows) == 2
    for row in rows:
        assert 0.0 <= row["vn_alloc_ratio"] <= 1.0
        assert "throughput_gbps" not in row


def test_plotdata_series():
    cfg = _steering_cfg(seeds=(1, 2), bw_levels=("low",))
    rows = sweep(cfg)
    files = plotdata_series(rows, cfg)
    assert "throughput_nm-l1.dat" in files
    assert "energy_edijkstra.dat" in files
    lines = files["throughput_nm-l1.dat"].strip().splitlines()
    assert len(lines) == 2  # one point per degree, mean over seeds
    assert [float(l.split()[0]) for l in lines] == [3.0, 4.0]


# --- config parsing ------------------------------------------------------------


def test_parse_config_round_trip():
    cfg = parse_config(
        """
        # steering sweep
        scenario = steering
        model = waxman
        nodes = 60
        degrees = 3 4
        bw_levels = low
        delay_levels = high
        backends = nm-l1, edijkstra
        seeds = 1 2 3
        pairs = 5
        output = out.csv
        """
    )
    assert cfg.scenario == "steering"
    assert cfg.degrees == (3.0, 4.0)
    assert cfg.backends == ("nm-l1", "edijkstra")
    assert cfg.seeds == (1, 2, 3)


def test_parse_config_rejects_unknown_key():
    from vpembed import ConfigError

    with pytest.raises(ConfigError) as err:
        parse_config("scenario = steering\nbogus_key = 1\n")
    assert err.value.key == "bogus_key"


def test_parse_config_validates_enums():
    from vpembed import ConfigError

    with pytest.raises(ConfigError):
        parse_config("scenario = flying\n")
    with pytest.raises(ConfigError):
        parse_config("scenario = steering\nbackends = warp\n")
    with pytest.raises(ConfigError):
        parse_config("scenario = steering\nbw_levels = enormous\n")


def test_scale_defaults():
    cfg = parse_config("scenario = steering\nscale = paper\n")
    assert cfg.effective_nodes() == 10_000
    assert cfg.effective_pairs() == 1_000
    cfg = parse_config("scenario = steering\n")
    assert cfg.effective_nodes() == 1_000
    assert cfg.effective_pairs() == 100


def test_solve_scenario(tmp_path, fig_graph):
    from vpembed import topofile

    top = tmp_path / "fig.top"
    topofile.dump(fig_graph, top)
    cfg = parse_config(
        f"""
        scenario = solve
        topology = {top}
        src = 0
        dst = 3
        backends = nm-general ksp:1
        constraint = link 0 >= 5
        constraint = path 0 < 5
        """
    )
    lines = run_solve_scenario(cfg)
    assert lines[0].startswith("status=ok hops=3 path=X,B,A,Y")
    assert lines[1].startswith("status=infeasible")
