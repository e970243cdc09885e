"""
Traffic steering: hop-minimizing vs delay-minimizing reallocation
=================================================================

For random (src, dst) pairs we keep allocating identical virtual links until
the residual network rejects the demand, then compare the totals. Shorter
paths burn less capacity per link, so the hop-minimizing solver sustains
more throughput on the same substrate. The energy score
((unused fraction) x throughput) usually follows, though on a single seed
the two can trade off: more allocated links also means more nodes touched.
"""

from vpembed import GenSpec, generate, run_steering
from vpembed.topogen import resolve_constraint_severity

g = generate(GenSpec(node_count=500, target_avg_degree=4.0, seed=11))
c = resolve_constraint_severity(g, bw_level="low", delay_level="high")
print(f"substrate: {g.node_count} nodes, {g.edge_count // 2} links, "
      f"demand {c.link_bounds[0][1]} Gbps per virtual link\n")

reports = {
    backend: run_steering(g, pairs=50, c=c, backend=backend, seed=11)
    for backend in ("nm-l1", "edijkstra")
}

print(f"{'':>22}{'nm-l1':>12}{'edijkstra':>12}")
rows = [
    ("virtual links", "vl_count", "{}"),
    ("throughput (Gbps)", "total_throughput", "{:.0f}"),
    ("avg path length", "avg_path_length", "{:.2f}"),
    ("nodes touched", "n_used", "{}"),
    ("energy efficiency", "energy_efficiency", "{:.1f}"),
]
for label, attr, fmt in rows:
    cells = [fmt.format(getattr(reports[b], attr)) for b in ("nm-l1", "edijkstra")]
    print(f"{label:>22}{cells[0]:>12}{cells[1]:>12}")

nm, ed = reports["nm-l1"], reports["edijkstra"]
print(f"\nhop savings: {ed.avg_path_length - nm.avg_path_length:.2f} hops per link on average")
print(f"throughput gain: {(nm.total_throughput / ed.total_throughput - 1) * 100:+.1f}%")
print(f"energy gain: {(nm.energy_efficiency / ed.energy_efficiency - 1) * 100:+.1f}%")
