import subprocess
import sys

import pytest

from vpembed.cli import main

FIG_TOP = """\
nodes 4 link_metrics 1 path_metrics 1
node 0 cap 10  # X
node 1 cap 10  # A
node 2 cap 10  # B
node 3 cap 10  # Y
edge 0 1 5 5
edge 0 2 9 1
edge 1 2 8 1
edge 2 1 8 1
edge 1 3 7 2
edge 2 3 4 1
"""


@pytest.fixture
def fig_top(tmp_path):
    path = tmp_path / "fig.top"
    path.write_text(FIG_TOP)
    return str(path)


# --- gen ---------------------------------------------------------------------


def test_gen_writes_topology(tmp_path, capsys):
    out = tmp_path / "t.top"
    code = main(["gen", "--model", "waxman", "--nodes", "100", "--degree", "4",
                 "--seed", "1", "-o", str(out)])
    assert code == 0
    text = out.read_text()
    assert sum(1 for line in text.splitlines() if line.startswith("node ")) == 100
    printed = capsys.readouterr().out
    assert "nodes=100" in printed and "avg_degree=" in printed


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.top", tmp_path / "b.top"
    args = ["gen", "--model", "waxman", "--nodes", "60", "--degree", "4", "--seed", "9"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_bad_alpha_exit_2(tmp_path, capsys):
    code = main(["gen", "--model", "waxman", "--nodes", "10", "--alpha", "0",
                 "-o", str(tmp_path / "x.top")])
    assert code == 2
    assert "alpha" in capsys.readouterr().err


# --- solve ---------------------------------------------------------------------


def test_solve_fig_general(fig_top, capsys):
    code = main(["solve", "--topology", fig_top, "--src", "0", "--dst", "3",
                 "--backend", "nm-general", "--link", "0 >= 5", "--path", "0 < 5"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("status=ok hops=3 path=X,B,A,Y")
    assert "sums=4.0" in out and "mins=7.0" in out


def test_solve_accepts_labels(fig_top, capsys):
    code = main(["solve", "--topology", fig_top, "--src", "X", "--dst", "Y",
                 "--backend", "nm-l1", "--link", "0 >= 5", "--path", "0 < 5"])
    assert code == 0
    assert "path=X,B,A,Y" in capsys.readouterr().out


def test_solve_ksp1_infeasible_exit_4(fig_top, capsys):
    code = main(["solve", "--topology", fig_top, "--src", "0", "--dst", "3",
                 "--backend", "ksp:1:by_hops", "--link", "0 >= 5", "--path", "0 < 5"])
    assert code == 4
    assert capsys.readouterr().out.startswith("status=infeasible")


def test_solve_src_equals_dst(fig_top, capsys):
    code = main(["solve", "--topology", fig_top, "--src", "0", "--dst", "0",
                 "--backend", "nm-general"])
    assert code == 0
    assert capsys.readouterr().out.startswith("status=ok hops=0")


def test_solve_parse_error_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.top"
    bad.write_text("nodes 2 link_metrics 1 path_metrics 1\nedge 0 1 5\n")
    code = main(["solve", "--topology", str(bad), "--src", "0", "--dst", "1"])
    assert code == 3
    assert "line 2" in capsys.readouterr().err


def test_solve_unknown_backend_exit_2(fig_top, capsys):
    code = main(["solve", "--topology", fig_top, "--src", "0", "--dst", "3",
                 "--backend", "bogus"])
    assert code == 2


def test_solve_non_strict_flag(tmp_path, capsys):
    top = tmp_path / "edge.top"
    top.write_text(
        "nodes 2 link_metrics 1 path_metrics 1\nnode 0 cap 1\nnode 1 cap 1\nedge 0 1 9 5\n"
    )
    strict = main(["solve", "--topology", str(top), "--src", "0", "--dst", "1",
                   "--backend", "nm-l1", "--path", "0 < 5"])
    assert strict == 4
    capsys.readouterr()
    lax = main(["solve", "--topology", str(top), "--src", "0", "--dst", "1",
                "--backend", "nm-l1", "--path", "0 < 5", "--non-strict"])
    assert lax == 0


# --- run -----------------------------------------------------------------------


STEERING_CFG = """\
scenario = steering
model = waxman
nodes = 60
degrees = 3 4
bw_levels = low
delay_levels = high
backends = nm-l1 edijkstra
seeds = 1 2
pairs = 4
"""


def test_run_steering_csv_and_plotdata(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(STEERING_CFG + f"output = {tmp_path / 'out.csv'}\n")
    code = main(["run", str(cfg), "--emit-plotdata"])
    assert code == 0
    csv_text = (tmp_path / "out.csv").read_text()
    lines = csv_text.strip().splitlines()
    assert lines[0] == (
        "model,nodes,avg_degree,bw_level,delay_level,backend,seed,"
        "vn_alloc_ratio,link_alloc_ratio,link_util,throughput_gbps,"
        "energy_eff,avg_hops,avg_us,n_used"
    )
    assert len(lines) == 1 + 2 * 2 * 2
    assert (tmp_path / "throughput_nm-l1.dat").exists()
    assert (tmp_path / "energy_edijkstra.dat").exists()


def test_run_rerun_byte_identical(tmp_path):
    cfg = tmp_path / "exp.cfg"
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg.write_text(STEERING_CFG)
    assert main(["run", str(cfg), "-o", str(out1)]) == 0
    assert main(["run", str(cfg), "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_run_jobs_parallel_identical(tmp_path):
    cfg = tmp_path / "exp.cfg"
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    cfg.write_text(STEERING_CFG)
    assert main(["run", str(cfg), "-o", str(out1)]) == 0
    assert main(["run", str(cfg), "-o", str(out2), "--jobs", "3"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_run_bad_config_exit_2(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("scenario = steering\nwibble = 3\n")
    assert main(["run", str(cfg), "-o", str(tmp_path / "x.csv")]) == 2
    assert "wibble" in capsys.readouterr().err


def test_run_paper_scale_accepted_with_warning(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    # explicit tiny sizes keep the run fast; the scale flag alone triggers
    # the long-runtime warning
    cfg.write_text(
        "scenario = steering\nnodes = 50\npairs = 3\ndegrees = 4\n"
        "bw_levels = low\ndelay_levels = high\nbackends = nm-l1\nseeds = 1\n"
        "scale = paper\n"
    )
    assert main(["run", str(cfg), "-o", str(tmp_path / "out.csv")]) == 0
    assert "long runtime" in capsys.readouterr().err


def test_run_solve_scenario(tmp_path, fig_top):
    cfg = tmp_path / "solve.cfg"
    out = tmp_path / "lines.txt"
    cfg.write_text(
        f"scenario = solve\ntopology = {fig_top}\nsrc = 0\ndst = 3\n"
        "backends = nm-general nm-l1 edijkstra ksp:1\n"
        "constraint = link 0 >= 5\nconstraint = path 0 < 5\n"
        f"output = {out}\n"
    )
    assert main(["run", str(cfg)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("status=ok hops=3 path=X,B,A,Y")
    assert lines[3].startswith("status=infeasible")


def test_console_script_help():
    proc = subprocess.run(
        [sys.executable, "-m", "vpembed.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "gen" in proc.stdout and "solve" in proc.stdout and "run" in proc.stdout
