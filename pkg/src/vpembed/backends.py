"""Solver registry: resolve name tokens to query callables.

Token grammar:
    nm-general | nm-l1 | edijkstra | ksp:<k>[:<ranking>[:<metric_index>]]
    | exhaustive

Every resolved backend has the uniform signature
``backend(g, src, dst, c) -> PathResult`` and raises NoPathError subclasses.
"""

from .baselines import KspConfig, solve_edijkstra, solve_exhaustive, solve_ksp
from .errors import UnknownBackendError
from .neighborhoods import solve_general, solve_l1

BACKEND_NAMES = ("nm-general", "nm-l1", "edijkstra", "ksp:<k>:<ranking>", "exhaustive")


def resolve_backend(name: str):
    """Return the solver callable for a backend token.

    Raises:
        UnknownBackendError: the token does not name a registered solver.
    """
    if name == "nm-general":
        return solve_general
    if name == "nm-l1":
        return solve_l1
    if name == "edijkstra":
        return solve_edijkstra
    if name == "exhaustive":
        return solve_exhaustive
    if name.startswith("ksp:"):
        parts = name.split(":")
        try:
            k = int(parts[1])
            ranking = parts[2] if len(parts) > 2 else "by_hops"
            metric_index = int(parts[3]) if len(parts) > 3 else 0
            cfg = KspConfig(k, ranking, metric_index)
        except (ValueError, IndexError) as exc:
            raise UnknownBackendError(f"bad ksp token {name!r}: {exc}") from exc

        def ksp_backend(g, src, dst, c, _cfg=cfg):
            return solve_ksp(g, src, dst, c, _cfg)

        ksp_backend.__name__ = f"ksp_{k}_{ranking}"
        return ksp_backend
    raise UnknownBackendError(f"unknown backend {name!r}; known: {', '.join(BACKEND_NAMES)}")
