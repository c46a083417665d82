"""Subtour elimination LP baseline via dense simplex and min-cut separation.

The LP lives on the n(n-1)/2 edge variables of the complete graph: degree
equalities sum each vertex's incident edges to 2, every proper vertex subset
must be crossed with weight at least 2, and edges stay in [0, 1].  Subtour
cuts and upper bounds are added lazily: solve, find a global minimum cut of
the fractional support with Stoer-Wagner, add the violated cut, re-solve
from scratch, until the minimum cut clears 2 within tolerance.

On simplicial instances this baseline attains the tour value g exactly,
which is the contrast the relaxation certificates are measured against: the
cheap polyhedral bound has gap 1 on the very family where the semidefinite
bounds go bad.

The simplex is a plain two-phase dense tableau with Bland's anti-cycling
rule; no warm starts, no revised factorizations.  Fine at n <= 60.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .instances import SimplicialInstance
from .serialize import fmt_float

__all__ = [
    "LpEdgeSolution",
    "MAX_LP_VERTICES",
    "edge_list",
    "min_cut",
    "simplex_solve",
    "solve_subtour",
]

MAX_LP_VERTICES = 60
CUT_THRESHOLD = 2.0 - 1e-6
MAX_PIVOTS = 10_000
MAX_ROUNDS = 500
_EPS = 1e-9


def edge_list(n: int) -> list[tuple[int, int]]:
    """Edges of the complete graph on n vertices, (u, v) with u < v, sorted."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _pivot(tab: np.ndarray, obj: np.ndarray, basis: list[int], r: int, j: int) -> None:
    tab[r] /= tab[r, j]
    col = tab[:, j].copy()
    col[r] = 0.0
    tab -= np.outer(col, tab[r])
    obj -= obj[j] * tab[r]
    basis[r] = j


def _bland_entering(obj: np.ndarray, n_cols: int) -> int | None:
    for j in range(n_cols):
        if obj[j] < -_EPS:
            return j
    return None


def _bland_leaving(tab: np.ndarray, basis: list[int], j: int) -> int | None:
    col = tab[:, j]
    rhs = tab[:, -1]
    best_ratio = None
    best_row = None
    for i in range(tab.shape[0]):
        if col[i] > _EPS:
            ratio = rhs[i] / col[i]
            if (
                best_ratio is None
                or ratio < best_ratio - 1e-12
                or (abs(ratio - best_ratio) <= 1e-12 and basis[i] < basis[best_row])
            ):
                best_ratio = ratio
                best_row = i
    return best_row


def simplex_solve(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, max_pivots: int = MAX_PIVOTS
) -> tuple[np.ndarray, float, str]:
    """Two-phase primal simplex for min c.x s.t. a x = b, x >= 0, b >= 0.

    Bland's rule (lowest eligible index in both steps) rules out cycling, so
    the only non-optimal exit is the pivot budget.  Returns (x, objective,
    status) where status is "optimal" or "iteration-limit"; an infeasible
    system raises, as the callers only build feasible ones.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, k = a.shape
    if b.shape != (m,) or c.shape != (k,):
        raise ValueError("inconsistent LP dimensions")
    if b.min() < 0:
        raise ValueError("rhs must be nonnegative")

    tab = np.zeros((m, k + m + 1))
    tab[:, :k] = a
    tab[:, k : k + m] = np.eye(m)
    tab[:, -1] = b
    basis = list(range(k, k + m))

    # phase 1: drive out the artificial basis
    obj = np.zeros(k + m + 1)
    obj[k : k + m] = 1.0
    for i in range(m):
        obj -= tab[i]
    pivots = 0
    while pivots < max_pivots:
        j = _bland_entering(obj, k + m)
        if j is None:
            break
        r = _bland_leaving(tab, basis, j)
        if r is None:
            raise ArithmeticError("phase-1 LP unbounded, construction is broken")
        _pivot(tab, obj, basis, r, j)
        pivots += 1
    if -obj[-1] > 1e-7:
        raise ArithmeticError("LP infeasible, construction is broken")

    # any artificial still basic sits at zero: pivot it out or drop the row
    drop = []
    for i in range(m):
        if basis[i] >= k:
            sub = np.abs(tab[i, :k])
            j = int(sub.argmax())
            if sub[j] > _EPS:
                _pivot(tab, obj, basis, i, j)
                pivots += 1
            else:
                drop.append(i)
    if drop:
        keep = [i for i in range(m) if i not in drop]
        tab = tab[keep]
        basis = [basis[i] for i in keep]

    # phase 2 on the true costs, artificial columns barred from entering
    obj = np.zeros(k + m + 1)
    obj[:k] = c
    for i, v in enumerate(basis):
        obj -= obj[v] * tab[i]
    status = "optimal"
    while True:
        j = _bland_entering(obj, k)
        if j is None:
            break
        if pivots >= max_pivots:
            status = "iteration-limit"
            break
        r = _bland_leaving(tab, basis, j)
        if r is None:
            raise ArithmeticError("LP unbounded, construction is broken")
        _pivot(tab, obj, basis, r, j)
        pivots += 1

    x = np.zeros(k)
    for i, v in enumerate(basis):
        if v < k:
            x[v] = tab[i, -1]
    return x, float(c @ x), status


def min_cut(weights: np.ndarray) -> tuple[float, frozenset[int]]:
    """Global minimum cut of a weighted graph by Stoer-Wagner contraction.

    Exact for symmetric nonnegative weights.  A disconnected support returns
    the zero cut that separates one connected component from the rest.
    """
    w = np.asarray(weights, dtype=float)
    n = w.shape[0]
    if w.shape != (n, n) or n < 2:
        raise ValueError(f"need a square matrix on >= 2 vertices, got {w.shape}")
    if np.abs(w - w.T).max() > 1e-12:
        raise ValueError("weights must be symmetric")
    if w.min() < -1e-12:
        raise ValueError("weights must be nonnegative")
    w = np.maximum(w, 0.0)
    np.fill_diagonal(w, 0.0)

    # quick connectivity probe so the documented zero-cut contract is exact
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in np.nonzero(w[u] > 0)[0]:
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    if not seen.all():
        return 0.0, frozenset(int(i) for i in np.nonzero(seen)[0])

    active = list(range(n))
    groups = {i: {i} for i in range(n)}
    wm = w.copy()
    best_val = np.inf
    best_set: frozenset[int] = frozenset()
    while len(active) > 1:
        # maximum adjacency order starting from the first active supernode
        order = [active[0]]
        rest = active[1:]
        key = {v: wm[active[0], v] for v in rest}
        while rest:
            nxt = max(rest, key=lambda v: (key[v], -v))
            order.append(nxt)
            rest.remove(nxt)
            for v in rest:
                key[v] += wm[nxt, v]
        s, t = order[-2], order[-1]
        cut_of_phase = float(key[t])
        if cut_of_phase < best_val:
            best_val = cut_of_phase
            best_set = frozenset(groups[t])
        wm[s] += wm[t]
        wm[:, s] += wm[:, t]
        wm[s, s] = 0.0
        groups[s] |= groups.pop(t)
        active.remove(t)
    return best_val, best_set


@dataclass
class LpEdgeSolution:
    """Fractional edge point of the subtour LP with its separation history."""

    n: int
    x: np.ndarray = field(repr=False)
    objective: float
    cuts_added: int
    status: str

    def degree_residuals(self) -> np.ndarray:
        deg = np.zeros(self.n)
        for e, (u, v) in enumerate(edge_list(self.n)):
            deg[u] += self.x[e]
            deg[v] += self.x[e]
        return np.abs(deg - 2.0)

    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n, self.n))
        for e, (u, v) in enumerate(edge_list(self.n)):
            w[u, v] = w[v, u] = self.x[e]
        return w

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                [u, v, fmt_float(self.x[e])]
                for e, (u, v) in enumerate(edge_list(self.n))
            ],
            "objective": fmt_float(self.objective),
            "cuts_added": self.cuts_added,
            "status": self.status,
        }


def solve_subtour(inst: SimplicialInstance) -> LpEdgeSolution:
    """Optimize the subtour LP by lazy separation, n_total <= 60.

    Each round solves the current LP from scratch, first restores any
    violated x_e <= 1 bound, then asks Stoer-Wagner for the lightest cut of
    the fractional support and adds it if it falls short of 2.  Stops when
    the minimum cut clears the threshold, or flags iteration-limit when a
    solve runs out of pivots or the rounds run out.
    """
    n = inst.n_total
    if n > MAX_LP_VERTICES:
        raise ValueError(f"LP baseline capped at {MAX_LP_VERTICES} vertices, got {n}")
    if n < 3:
        raise ValueError(f"subtour LP needs at least 3 vertices, got {n}")
    edges = edge_list(n)
    n_edges = len(edges)
    dist = inst.cost_matrix()
    edge_cost = np.array([dist[u, v] for u, v in edges])

    incidence = np.zeros((n, n_edges))
    for e, (u, v) in enumerate(edges):
        incidence[u, e] = 1.0
        incidence[v, e] = 1.0

    cuts: list[frozenset[int]] = []
    bounded: list[int] = []
    x = np.zeros(n_edges)
    status = "iteration-limit"
    for _ in range(MAX_ROUNDS):
        n_rows = n + len(cuts) + len(bounded)
        n_cols = n_edges + len(cuts) + len(bounded)
        a = np.zeros((n_rows, n_cols))
        b = np.zeros(n_rows)
        a[:n, :n_edges] = incidence
        b[:n] = 2.0
        for i, cut in enumerate(cuts):
            row = n + i
            for e, (u, v) in enumerate(edges):
                if (u in cut) != (v in cut):
                    a[row, e] = 1.0
            a[row, n_edges + i] = -1.0  # surplus
            b[row] = 2.0
        for i, e in enumerate(bounded):
            row = n + len(cuts) + i
            a[row, e] = 1.0
            a[row, n_edges + len(cuts) + i] = 1.0  # slack
            b[row] = 1.0
        cost = np.zeros(n_cols)
        cost[:n_edges] = edge_cost

        sol, _, lp_status = simplex_solve(a, b, cost)
        x = sol[:n_edges]
        if lp_status != "optimal":
            status = "iteration-limit"
            break

        over = [e for e in range(n_edges) if x[e] > 1.0 + 1e-9 and e not in bounded]
        if over:
            bounded.extend(over)
            continue

        w = np.zeros((n, n))
        for e, (u, v) in enumerate(edges):
            w[u, v] = w[v, u] = max(x[e], 0.0)
        cut_val, cut_set = min_cut(w)
        if cut_val < CUT_THRESHOLD:
            if not 1 <= len(cut_set) <= n - 1:
                raise ArithmeticError("separator returned a trivial cut")
            if cut_set in cuts:
                raise ArithmeticError("separator repeated a cut, LP is stuck")
            cuts.append(cut_set)
            continue
        status = "optimal"
        break

    return LpEdgeSolution(
        n=n,
        x=x,
        objective=float(edge_cost @ x),
        cuts_added=len(cuts),
        status=status,
    )
