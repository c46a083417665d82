"""Symmetry-reduced relaxation on (n+1)-vertex instances and gap tables.

Fixing which vertex r sits at tour position s collapses the assignment-lifted
SDP from (n+1)^2 to n^2 variables.  The reduced objective splits into

    kron_term = trace((D[beta] (x) (1/2) C1[alpha]) Y)
    diag_term = sum_k cbar_k Y_kk

where alpha/beta drop r resp. s, C1 is the (n+1)-cycle step-cost matrix and
cbar = vec(C1[alpha, {r}] . D[{s}, beta]).  On the one-extra layouts with the
canonical choice r = s = 1, D[beta] is exactly the equal-layout cost matrix,
so the certificate Y built for n vertices plugs straight in: kron_term comes
out as (n-1)/n of the unreduced objective and diag_term as (ones in cbar)/n.

``gap_table`` turns this into integrality-gap lower-bound records: the tour
optimum is the group count g = 2z while the reduced relaxation's optimum is
at most kron_term + diag_term, so their ratio bounds the gap from below and
climbs toward its limit as n grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .certificates import (
    CertificateY,
    assemble,
    coeffs_general,
    objective_povh_rendl,
    verify_povh_rendl,
)
from .circulant import ring_adjacency
from .instances import SimplicialInstance, make_one_extra
from .matrix_core import kron, trace_inner, vec_stack
from .serialize import csv_lines, fmt_float

__all__ = [
    "CSV_HEADER",
    "GapRecord",
    "Reduction",
    "ReducedObjective",
    "asymptote_value",
    "bound_constants",
    "build_reduction",
    "gap_records_to_csv",
    "gap_table",
    "objective_reduced",
    "objective_reduced_dense",
]

CSV_HEADER = ["z", "g", "n", "tsp", "kron_term", "diag_term", "sdp_upper", "gap_lower"]


@dataclass
class Reduction:
    """Data of one vertex/position fixing.

    r (vertex) and s (position) are 1-based labels following the convention
    that 1 is the canonical choice; alpha and beta are the complementary
    0-based index arrays into the (n+1)-vertex arrays.
    """

    r: int
    s: int
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    d_beta: np.ndarray = field(repr=False)
    c1_alpha: np.ndarray = field(repr=False)
    cbar: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.alpha)

    def ones_in_cbar(self) -> int:
        return int(round(float(self.cbar.sum())))


@dataclass
class ReducedObjective:
    kron_term: float
    diag_term: float

    @property
    def upper_bound(self) -> float:
        return self.kron_term + self.diag_term


def build_reduction(inst: SimplicialInstance, r: int = 1, s: int = 1) -> Reduction:
    """Fix vertex r at tour position s on an (n+1)-vertex instance, n even.

    For simplicial instances cbar is 0/1 with exactly twice as many ones as
    the dropped-position cost row D[{s}, beta] has.
    """
    n1 = inst.n_total
    n = n1 - 1
    if n < 2 or n % 2 != 0:
        raise ValueError(
            f"reduction needs an odd vertex count n+1 with n even, got {n1}"
        )
    if not 1 <= r <= n1:
        raise ValueError(f"vertex label r must lie in 1..{n1}, got {r}")
    if not 1 <= s <= n1:
        raise ValueError(f"position label s must lie in 1..{n1}, got {s}")
    d = inst.cost_matrix()
    c1 = ring_adjacency(n1)
    alpha = np.array([i for i in range(n1) if i != r - 1], dtype=int)
    beta = np.array([i for i in range(n1) if i != s - 1], dtype=int)
    d_beta = d[np.ix_(beta, beta)]
    c1_alpha = c1[np.ix_(alpha, alpha)]
    cbar = vec_stack(np.outer(c1[alpha, r - 1], d[s - 1, beta]))
    return Reduction(
        r=r, s=s, alpha=alpha, beta=beta, d_beta=d_beta, c1_alpha=c1_alpha, cbar=cbar
    )


def objective_reduced(y: CertificateY, red: Reduction) -> ReducedObjective:
    """Evaluate the reduced objective on the certificate, exactly.

    Every surviving cycle edge of c1_alpha lands on a first-offset position
    of the circulant blocks (there are 2(n-1) such entries), so the block
    inner products need only the leading coefficients a_1, b_1; and every
    diagonal entry of Y is 1/n, so diag_term is (ones in cbar)/n.
    """
    n = y.n
    if red.d_beta.shape != (n, n):
        raise ValueError(
            f"reduction is for n = {red.d_beta.shape[0]}, certificate for n = {n}"
        )
    lbl = np.repeat(np.arange(y.g), y.per_group)
    same = lbl[:, None] == lbl[None, :]
    off = ~np.eye(n, dtype=bool)
    ones_within = float(red.d_beta[same & off].sum())
    ones_across = float(red.d_beta[~same].sum())
    a1 = float(y.coeffs.a[0])
    b1 = float(y.coeffs.b[0])
    kron_term = (n - 1.0) / (2.0 * n) * (a1 * ones_within + b1 * ones_across)
    diag_term = float(red.cbar.sum()) / n
    return ReducedObjective(kron_term=kron_term, diag_term=diag_term)


def objective_reduced_dense(
    y: CertificateY, red: Reduction, max_dim: int | None = None
) -> ReducedObjective:
    """The same two terms by brute-force dense traces (oracle route)."""
    y_dense = y.densify(max_dim=max_dim)
    kron_term = trace_inner(kron(red.d_beta, 0.5 * red.c1_alpha), y_dense)
    diag_term = float(red.cbar @ np.diag(y_dense))
    return ReducedObjective(kron_term=kron_term, diag_term=diag_term)


def bound_constants(g: int) -> tuple[float, float, float]:
    """(c_g, c_hat_g, c_tilde_g): the analytic bound chain's constants.

    c_g = (2/g) pi^2 sum_{j=1}^{g-1} (g-j) j^2, c_hat_g = 4 c_g/(g-1) bounds
    n^3 b_1 from above, and c_tilde_g = ((g-1)/2g) c_hat_g bounds n times the
    unreduced objective.  Computed from their defining sums, never hardcoded.
    """
    if g < 2 or g % 2 != 0:
        raise ValueError(f"g must be even and >= 2, got {g}")
    j = np.arange(1, g)
    c_g = (2.0 / g) * np.pi**2 * float(((g - j) * j * j).sum())
    c_hat = 4.0 * c_g / (g - 1.0)
    c_tilde = (g - 1.0) / (2.0 * g) * c_hat
    return c_g, c_hat, c_tilde


def asymptote_value(z: int, n: int) -> float:
    """The analytic lower-bound chain 2zn/(2n + c_tilde) that climbs to z."""
    _, _, c_tilde = bound_constants(2 * z)
    return 2.0 * z * n / (2.0 * n + c_tilde)


@dataclass
class GapRecord:
    """One integrality-gap lower-bound row."""

    z: int
    g: int
    n: int
    tsp_value: float
    kron_term: float
    diag_term: float
    sdp_upper_bound: float
    gap_lower_bound: float

    def to_csv_row(self) -> list[str]:
        return [
            str(self.z),
            str(self.g),
            str(self.n),
            fmt_float(self.tsp_value),
            fmt_float(self.kron_term),
            fmt_float(self.diag_term),
            fmt_float(self.sdp_upper_bound),
            fmt_float(self.gap_lower_bound),
        ]

    def to_json_dict(self) -> dict:
        return {
            "z": self.z,
            "g": self.g,
            "n": self.n,
            "tsp": fmt_float(self.tsp_value),
            "kron_term": fmt_float(self.kron_term),
            "diag_term": fmt_float(self.diag_term),
            "sdp_upper": fmt_float(self.sdp_upper_bound),
            "gap_lower": fmt_float(self.gap_lower_bound),
        }


def gap_table(z: int, n_values: list[int]) -> list[GapRecord]:
    """Gap lower-bound records for g = 2z over the given n grid.

    Each record's certificate is re-verified (structured mode) before the
    record is emitted; a failing certificate aborts the table.
    """
    if z < 1:
        raise ValueError(f"z must be >= 1, got {z}")
    g = 2 * z
    records = []
    for n in sorted(n_values):
        if n % g != 0 or n // g < 2 or n % 2 != 0:
            raise ValueError(
                f"n = {n} incompatible with g = {g} (need g | n, n/g >= 2, n even)"
            )
        coeffs = coeffs_general(n, g)
        y = assemble(coeffs)
        report = verify_povh_rendl(y, dense=False)
        if not report.passed:
            raise ArithmeticError(
                f"certificate for (g={g}, n={n}) failed verification"
            )
        inst = make_one_extra(g, n // g)
        red = build_reduction(inst, 1, 1)
        obj = objective_reduced(y, red)
        records.append(
            GapRecord(
                z=z,
                g=g,
                n=n,
                tsp_value=float(g),
                kron_term=obj.kron_term,
                diag_term=obj.diag_term,
                sdp_upper_bound=obj.upper_bound,
                gap_lower_bound=float(g) / obj.upper_bound,
            )
        )
    return records


def gap_records_to_csv(records: list[GapRecord], with_asymptote: bool = False) -> str:
    """CSV text for the records; optionally append the analytic asymptote column."""
    header = list(CSV_HEADER)
    rows = [r.to_csv_row() for r in records]
    if with_asymptote:
        header.append("asymptote")
        for row, rec in zip(rows, records):
            row.append(fmt_float(asymptote_value(rec.z, rec.n)))
    return csv_lines(header, rows)
