"""
Virtual network embedding with pluggable link embedders
=======================================================

Fifteen 14-node virtual network requests land on a 100-node substrate whose
link capacities derive from a 200-unit per-node bandwidth budget. Node
placement is identical everywhere (greedy, most residual CPU first); only
the link-embedding solver changes. k-shortest-path embedders rank candidate
paths on the bare topology and only then test them against residual
capacity, so once a popular shortest path saturates they start rejecting
requests that an on-demand search would still route.
"""

from vpembed import GenSpec, build_vn_requests, generate, run_vne
from vpembed.harness import assign_link_bandwidth_from_node_budget

g = generate(GenSpec(node_count=100, target_avg_degree=3.0, cpu_units=200.0, seed=5))
g = assign_link_bandwidth_from_node_budget(g, budget=200.0)
requests = build_vn_requests(count=15, vnode_count=14, demand_max=20.0, seed=5)
total_links = sum(len(r.virtual_links) for r in requests)
print(f"substrate: 100 nodes, {g.edge_count // 2} links; "
      f"requests: 15 x 14 nodes, {total_links} virtual links total\n")

print(f"{'backend':>12} {'VN ratio':>9} {'VL ratio':>9} {'link util':>10}")
for backend in ("nm-general", "ksp:3", "ksp:1"):
    rep = run_vne(g, requests, backend)
    print(f"{backend:>12} {rep.vn_allocation_ratio:>9.3f} "
          f"{rep.link_allocation_ratio:>9.3f} {rep.link_utilization:>10.3f}")

print("\nPer-request outcomes under nm-general vs ksp:1:")
nm = run_vne(g, requests, "nm-general").per_request_outcomes
k1 = run_vne(g, requests, "ksp:1").per_request_outcomes
marks = {True: "ok", False: "--"}
print("  request:", " ".join(f"{i:>3}" for i in range(15)))
print("  nm     :", " ".join(f"{marks[o.accepted]:>3}" for o in nm))
print("  ksp:1  :", " ".join(f"{marks[o.accepted]:>3}" for o in k1))
