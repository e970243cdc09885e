"""SLO constraint sets: link lower bounds plus path upper bounds.

A link bound ``(j, b)`` requires every traversed edge's link metric j to be
at least b (concave metrics such as bandwidth). A path bound ``(j, b)``
requires the accumulated sum of path metric j to stay strictly below b
(additive metrics such as delay). The strict comparison follows the
relaxation guard of the level-by-level solver; a non-strict mode is
available via ``strict=False`` for contracts written with <=.

Multiplicative metrics (e.g. per-link reliability) are handled by taking
logarithms, which turns a product bound into an additive one.
"""

import math
from dataclasses import dataclass, field

from .errors import ArityMismatchError, NonPositiveValueError
from .graph import EdgeMetrics


@dataclass(frozen=True)
class ConstraintSet:
    """The SLO for one path query.

    Attributes:
        link_bounds: (metric index, lower bound) pairs; satisfied when the
            edge metric >= bound.
        path_bounds: (metric index, upper bound) pairs; satisfied when the
            accumulated sum < bound (or <= when strict is False).
        strict: comparison mode for path bounds.
    """

    link_bounds: tuple[tuple[int, float], ...] = ()
    path_bounds: tuple[tuple[int, float], ...] = ()
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "link_bounds", tuple((int(j), float(b)) for j, b in self.link_bounds)
        )
        object.__setattr__(
            self, "path_bounds", tuple((int(j), float(b)) for j, b in self.path_bounds)
        )
        for name, bounds in (("link", self.link_bounds), ("path", self.path_bounds)):
            seen = set()
            for j, _ in bounds:
                if j < 0:
                    raise ArityMismatchError(f"negative {name} metric index {j}")
                if j in seen:
                    raise ArityMismatchError(f"duplicate {name} bound on metric {j}")
                seen.add(j)

    @property
    def link_count(self) -> int:
        return len(self.link_bounds)

    @property
    def path_count(self) -> int:
        return len(self.path_bounds)

    def validate_arity(self, link_arity: int, path_arity: int) -> None:
        for j, _ in self.link_bounds:
            if j >= link_arity:
                raise ArityMismatchError(f"link bound index {j} >= declared arity {link_arity}")
        for j, _ in self.path_bounds:
            if j >= path_arity:
                raise ArityMismatchError(f"path bound index {j} >= declared arity {path_arity}")

    def sum_ok(self, total: float, bound: float) -> bool:
        return total < bound if self.strict else total <= bound


@dataclass
class MetricAccumulator:
    """Running componentwise sums of path metrics along a partial path."""

    sums: list[float] = field(default_factory=list)

    @staticmethod
    def zeros(path_arity: int) -> "MetricAccumulator":
        return MetricAccumulator([0.0] * path_arity)

    def add_edge(self, metrics: EdgeMetrics) -> None:
        if len(metrics.path_metrics) != len(self.sums):
            raise ArityMismatchError(
                f"edge has {len(metrics.path_metrics)} path metrics, accumulator has {len(self.sums)}"
            )
        for j, v in enumerate(metrics.path_metrics):
            self.sums[j] += v

    def extended(self, metrics: EdgeMetrics) -> "MetricAccumulator":
        acc = MetricAccumulator(list(self.sums))
        acc.add_edge(metrics)
        return acc


def edge_feasible(edge: EdgeMetrics, c: ConstraintSet) -> bool:
    """True iff the edge meets every link lower bound (metric >= bound)."""
    link = edge.link_metrics
    for j, bound in c.link_bounds:
        if j >= len(link):
            raise ArityMismatchError(f"link bound index {j} >= edge arity {len(link)}")
        if link[j] < bound:
            return False
    return True


def path_feasible(acc, c: ConstraintSet) -> bool:
    """True iff every path upper bound holds for the accumulated sums.

    ``acc`` may be a MetricAccumulator or any sequence of sums.
    """
    sums = acc.sums if isinstance(acc, MetricAccumulator) else acc
    for j, bound in c.path_bounds:
        if j >= len(sums):
            raise ArityMismatchError(f"path bound index {j} >= accumulator arity {len(sums)}")
        if not c.sum_ok(sums[j], bound):
            return False
    return True


def to_additive(values) -> list[float]:
    """Convert multiplicative metric values to additive ones via ln.

    A product bound P on the originals becomes an additive bound ln(P) on
    the transformed values: sum(ln v) < ln(P) iff prod(v) < P.

    Raises:
        NonPositiveValueError: some value is <= 0.
    """
    out = []
    for v in values:
        if v <= 0:
            raise NonPositiveValueError(f"multiplicative metric must be > 0, got {v}")
        out.append(math.log(v))
    return out


def parse_constraints(lines) -> ConstraintSet:
    """Parse the constraint literal syntax, one bound per line.

    ``link <metric_index> >= <value>`` and ``path <metric_index> < <value>``.
    Blank lines and '#' comments are ignored.
    """
    link_bounds = []
    path_bounds = []
    for raw in lines:
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if len(parts) != 4:
            raise ValueError(f"bad constraint literal: {raw!r}")
        kind, idx, op, value = parts
        if kind == "link" and op == ">=":
            link_bounds.append((int(idx), float(value)))
        elif kind == "path" and op == "<":
            path_bounds.append((int(idx), float(value)))
        else:
            raise ValueError(f"bad constraint literal: {raw!r}")
    return ConstraintSet(tuple(link_bounds), tuple(path_bounds))
