"""Simplicial TSP instances: groups of mutually-free vertices, unit hops between groups.

Two layouts are exposed and never inferred from each other:

* ``make_equal(g, per_group)``     -- g groups of identical size
* ``make_one_extra(g, per_group)`` -- group 1 carries one extra vertex

Costs are the 0/1 cut semi-metric (0 within a group, 1 across), which is
metric by construction; ``is_metric`` asserts it exhaustively anyway.  The
exact tour optimum is available analytically (it equals the number of groups)
and through an independent Held-Karp subset-DP oracle.

Vertex labels are group-contiguous -- group i occupies a consecutive index
range -- and everything downstream (certificate block layouts in particular)
relies on that.

The certificate layers require even g; the instance type itself accepts any
g >= 2 so that LP baselines can run on odd group counts too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SimplicialInstance",
    "TspValue",
    "held_karp_cycle",
    "is_metric",
    "make_equal",
    "make_one_extra",
    "tsp_optimum",
]

DP_MAX_VERTICES = 18


@dataclass(frozen=True)
class SimplicialInstance:
    """Vertex groups with 0/1 cut costs; immutable."""

    group_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.group_sizes)
        if len(sizes) < 2:
            raise ValueError("need at least 2 groups")
        if any(s < 1 for s in sizes):
            raise ValueError(f"every group needs >= 1 vertex, got {sizes}")
        object.__setattr__(self, "group_sizes", sizes)

    @property
    def g(self) -> int:
        return len(self.group_sizes)

    @property
    def n_total(self) -> int:
        return sum(self.group_sizes)

    def group_labels(self) -> np.ndarray:
        return np.repeat(np.arange(self.g), self.group_sizes)

    def cost(self, u: int, v: int) -> float:
        lbl = self.group_labels()
        return float(lbl[u] != lbl[v])

    def cost_matrix(self) -> np.ndarray:
        lbl = self.group_labels()
        return (lbl[:, None] != lbl[None, :]).astype(float)

    def to_json_dict(self) -> dict:
        return {"g": self.g, "group_sizes": list(self.group_sizes)}


@dataclass(frozen=True)
class TspValue:
    value: float
    method: str


def make_equal(g: int, per_group: int) -> SimplicialInstance:
    """g equally sized groups, g * per_group vertices."""
    if g < 2 or g % 2 != 0:
        raise ValueError(f"g must be even and >= 2, got {g}")
    if per_group < 2:
        raise ValueError(f"per_group must be >= 2, got {per_group}")
    return SimplicialInstance((per_group,) * g)


def make_one_extra(g: int, per_group: int) -> SimplicialInstance:
    """Like make_equal but group 1 holds one extra vertex (n_total = g*per_group + 1).

    per_group = 1 is admitted: the 3-vertex instance with groups {1,2},{3} is
    the anchor of the non-monotonicity check.
    """
    if g < 2 or g % 2 != 0:
        raise ValueError(f"g must be even and >= 2, got {g}")
    if per_group < 1:
        raise ValueError(f"per_group must be >= 1, got {per_group}")
    return SimplicialInstance((per_group + 1,) + (per_group,) * (g - 1))


def is_metric(costs) -> bool:
    """Exact symmetry + zero diagonal + all triangle inequalities.

    Accepts an instance or a raw square cost matrix.
    """
    if isinstance(costs, SimplicialInstance):
        d = costs.cost_matrix()
    else:
        d = np.asarray(costs, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    if not np.array_equal(d, d.T):
        return False
    if np.any(np.diag(d) != 0.0):
        return False
    for k in range(n):
        if np.any(d > d[:, [k]] + d[[k], :]):
            return False
    return True


def held_karp_cycle(dist: np.ndarray) -> float:
    """Exact minimum Hamiltonian cycle cost by subset DP, start fixed at vertex 0."""
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    if n > DP_MAX_VERTICES:
        raise ValueError(f"DP oracle capped at {DP_MAX_VERTICES} vertices, got {n}")
    if n == 2:
        return float(2.0 * dist[0, 1])
    m = n - 1
    size = 1 << m
    dp = np.full((size, m), np.inf)
    for j in range(m):
        dp[1 << j, j] = dist[0, j + 1]
    for mask in range(3, size):
        if mask & (mask - 1) == 0:
            continue  # singleton rows are the seeds
        row = dp[mask]
        rem = mask
        while rem:
            bit = rem & -rem
            rem ^= bit
            j = bit.bit_length() - 1
            row[j] = np.min(dp[mask ^ bit] + dist[1:, j + 1])
    return float(np.min(dp[size - 1] + dist[1:, 0]))


def tsp_optimum(inst: SimplicialInstance, method: str = "analytic") -> TspValue:
    """Exact tour optimum: 'analytic' returns the group count, 'dp' runs Held-Karp."""
    if method == "analytic":
        return TspValue(value=float(inst.g), method="analytic")
    if method == "dp":
        if inst.n_total > DP_MAX_VERTICES:
            raise ValueError(
                f"DP oracle capped at {DP_MAX_VERTICES} vertices, "
                f"instance has {inst.n_total}"
            )
        return TspValue(value=held_karp_cycle(inst.cost_matrix()), method="dp")
    raise ValueError(f"method must be 'analytic' or 'dp', got {method!r}")
