"""Feasible points for the assignment-lifted SDP relaxation of the TSP.

On a simplicial instance with g equal groups of n/g vertices the relaxation
(over n^2 x n^2 matrices Y, doubly-assignment constraints, a forbidden-entry
zero pattern, total sum n^2, Y >= 0 entrywise and Y PSD) admits an explicit
feasible point built from two symmetric circulants:

    Y = (1/2n) [ cross-group pattern (x) B  +  same-group pattern (x) A
                 + block-diagonal (x) (2I - A) ]

where A and B are the circulants with half-offset coefficient vectors a and
b.  This module generates those coefficients (two-group closed form and the
general even-g form), assembles Y structurally, evaluates its objective, and
verifies feasibility twice over: from the closed forms, and densely against
the eigensolver oracle.

Index convention: Y rows/columns are pairs (vertex u, tour position s)
ordered u-major, i.e. row u*n + s.  Minor block (u, v) is then B/2n when u
and v lie in different groups, A/2n within a group off the diagonal, and
I/n on the block diagonal; every diagonal entry of Y is exactly 1/n.

The spectrum of 2nY comes in three closed-form families per frequency k:

* ``coupled-zero`` (multiplicity 1): collapses to 0 for every k >= 1 by the
  linear coupling between the a- and b-profiles (and to 2n at k = 0),
* ``middle`` (multiplicity g-1),
* ``plain``  (multiplicity n-g): 2 - 2 * a-profile[k].

Only even g is supported here; odd group counts never carry certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circulant import SymmetricCirculant, cosine_profile, ring_adjacency
from .instances import SimplicialInstance
from .matrix_core import SizeLimitError, dense_cap, kron, sym_eigs, trace_inner
from .serialize import fmt_float

__all__ = [
    "CertCoeffs",
    "CertSpectrum",
    "CertificateY",
    "FeasibilityReport",
    "SpectralLine",
    "assemble",
    "closed_form_spectrum",
    "coeffs_general",
    "coeffs_two_group",
    "lower_bound_akk",
    "objective_dense_trace",
    "objective_povh_rendl",
    "profile_identity_residuals",
    "verify_povh_rendl",
]

# default verification tolerances: constructions accumulate only O(n) cosine
# roundoff, so these are loose by several orders of magnitude
EQ_TOL = 1e-9
PSD_TOL = 1e-8
NN_TOL = 1e-15


@dataclass
class CertCoeffs:
    """Half-offset coefficient vectors (a, b) for one (n, g) configuration.

    Structural validity only is enforced here; the value-level invariants
    (unit sums, nonnegativity, linear coupling) are checked by the verifier
    so that deliberately broken coefficients remain constructible in tests.
    """

    n: int
    g: int
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 4 or self.n % 2 != 0:
            raise ValueError(f"n must be even and >= 4, got {self.n}")
        if self.g < 2 or self.g % 2 != 0:
            raise ValueError(f"g must be even and >= 2, got {self.g}")
        if self.n % self.g != 0 or self.n == self.g:
            raise ValueError(f"g = {self.g} must properly divide n = {self.n}")
        d = self.n // 2
        a = np.asarray(self.a, dtype=float).copy()
        b = np.asarray(self.b, dtype=float).copy()
        if a.shape != (d,) or b.shape != (d,):
            raise ValueError(
                f"coefficient vectors must have length d = {d}, "
                f"got {a.shape} and {b.shape}"
            )
        self.a = a
        self.b = b

    @property
    def d(self) -> int:
        return self.n // 2

    def a_profile(self) -> np.ndarray:
        """Frequency profile of a: value at k is half the circulant eigenvalue."""
        return cosine_profile(self.a, self.n)

    def b_profile(self) -> np.ndarray:
        return cosine_profile(self.b, self.n)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "a": [float(x) for x in self.a],
            "b": [float(x) for x in self.b],
        }


def coeffs_two_group(n: int) -> CertCoeffs:
    """Closed-form coefficients for g = 2 (two groups of n/2).

    a_i = (2/(n-2)) (cos(pi i / d) + 1);  b_i = (2/n)(1 - cos(pi i / d)) for
    i < d and b_d = 2/n.  The leading b coefficient obeys b_1 <= 4 pi^2 / n^3.
    """
    if n < 6 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 6, got {n}")
    d = n // 2
    i = np.arange(1, d + 1)
    c = np.cos(np.pi * i / d)
    a = (2.0 / (n - 2)) * (c + 1.0)
    b = (2.0 / n) * (1.0 - c)
    b[d - 1] = 2.0 / n
    return CertCoeffs(n=n, g=2, a=a, b=b)


def coeffs_general(n: int, g: int) -> CertCoeffs:
    """Coefficients for any even g dividing n with n/g >= 2.

    a_i = (1/(n-g)) [2 + (4/g) sum_{j=1}^{g-1} (g-j) cos(pi i j / d)] for
    i < d, halved at i = d; then b_i is pinned by the linear coupling
    (n-g) a_i + n(g-1) b_i = 2g (i < d) resp. g (i = d).  Reduces exactly to
    coeffs_two_group at g = 2.
    """
    if g < 2 or g % 2 != 0:
        raise ValueError(f"g must be even and >= 2, got {g}")
    if n % 2 != 0:
        raise ValueError(f"n must be even, got {n}")
    if n % g != 0 or n == g:
        raise ValueError(f"g = {g} must properly divide n = {n}")
    if n // g < 2:
        raise ValueError(f"need n/g >= 2, got n = {n}, g = {g}")
    d = n // 2
    i = np.arange(1, d + 1)[:, None]
    j = np.arange(1, g)[None, :]
    w = (g - j).astype(float)
    s = (w * np.cos(np.pi * i * j / d)).sum(axis=1)
    a = (2.0 + (4.0 / g) * s) / (n - g)
    a[d - 1] = (1.0 + (2.0 / g) * s[d - 1]) / (n - g)
    b = (2.0 * g - (n - g) * a) / (n * (g - 1.0))
    b[d - 1] = (g - (n - g) * a[d - 1]) / (n * (g - 1.0))
    return CertCoeffs(n=n, g=g, a=a, b=b)


@dataclass
class CertificateY:
    """Structured feasible point: stores only the coefficients.

    Densification is an explicit, size-capped act; large-n verification goes
    entirely through the closed forms.
    """

    coeffs: CertCoeffs

    @property
    def n(self) -> int:
        return self.coeffs.n

    @property
    def g(self) -> int:
        return self.coeffs.g

    @property
    def per_group(self) -> int:
        return self.n // self.g

    def inner_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """Densified (A, B), the two n x n circulant ingredients."""
        a = SymmetricCirculant(self.n, self.coeffs.a).densify()
        b = SymmetricCirculant(self.n, self.coeffs.b).densify()
        return a, b

    def block_kind(self, u: int, v: int) -> str:
        """Minor block type at vertex pair (u, v): identity|within|across."""
        p = self.per_group
        if u == v:
            return "identity"
        return "within" if u // p == v // p else "across"

    def densify(self, max_dim: int | None = None) -> np.ndarray:
        """Full n^2 x n^2 matrix; SizeLimitError beyond the dense cap."""
        n, g, p = self.n, self.g, self.per_group
        cap = dense_cap(max_dim)
        if n * n > cap:
            raise SizeLimitError(
                f"dense certificate side {n * n} exceeds cap {cap}"
            )
        amat, bmat = self.inner_matrices()
        jg, ig = np.ones((g, g)), np.eye(g)
        jp, ip = np.ones((p, p)), np.eye(p)
        y = kron(kron(jg - ig, jp), bmat)
        y += kron(kron(ig, jp), amat)
        y += kron(kron(ig, ip), 2.0 * np.eye(n) - amat)
        return y / (2.0 * n)


def assemble(coeffs: CertCoeffs) -> CertificateY:
    """Wrap coefficients as a structured certificate."""
    return CertificateY(coeffs=coeffs)


@dataclass(frozen=True)
class SpectralLine:
    k: int
    family: str  # coupled-zero | middle | plain
    value: float
    multiplicity: int


@dataclass
class CertSpectrum:
    """Closed-form eigenvalues of 2nY, one line per (frequency, family)."""

    n: int
    g: int
    lines: list[SpectralLine]

    def total_multiplicity(self) -> int:
        return sum(line.multiplicity for line in self.lines)

    def multiset(self) -> np.ndarray:
        """All n^2 eigenvalues of 2nY expanded by multiplicity, sorted."""
        vals = np.concatenate(
            [np.full(line.multiplicity, line.value) for line in self.lines]
        )
        return np.sort(vals)

    def min_value(self) -> float:
        return min(line.value for line in self.lines)


def closed_form_spectrum(coeffs: CertCoeffs) -> CertSpectrum:
    """Eigenvalues of 2nY in three families per frequency k.

    With ap/bp the frequency profiles of a and b, and with group-pattern
    eigenvalue pairs (mu_B, mu_A) running over ((g-1)n/g, n/g), (-n/g, n/g),
    and (0, 0) with multiplicities 1, g-1 and n-g, the eigenvalue at (k,
    family) is  2 mu_B bp[k] + 2 mu_A ap[k] + (2 - 2 ap[k]).  At k = 0 the
    families give {2n, 0, 0}; for k >= 1 the first family collapses to 0 by
    the linear coupling of the two profiles.
    """
    n, g = coeffs.n, coeffs.g
    p = n // g
    ap = coeffs.a_profile()
    bp = coeffs.b_profile()
    lines: list[SpectralLine] = []
    for k in range(n):
        plain = 2.0 - 2.0 * ap[k]
        lines.append(
            SpectralLine(
                k=k,
                family="coupled-zero",
                value=float(2.0 * (g - 1) * p * bp[k] + 2.0 * p * ap[k] + plain),
                multiplicity=1,
            )
        )
        lines.append(
            SpectralLine(
                k=k,
                family="middle",
                value=float(-2.0 * p * bp[k] + 2.0 * p * ap[k] + plain),
                multiplicity=g - 1,
            )
        )
        lines.append(
            SpectralLine(k=k, family="plain", value=float(plain), multiplicity=n - g)
        )
    return CertSpectrum(n=n, g=g, lines=lines)


def lower_bound_akk(coeffs: CertCoeffs) -> float:
    """min over k >= 1 of the a-profile; never below -g/(n-g).

    Raises if the structural floor -g/(n-g) (or the trivial ceiling 1) is
    violated beyond roundoff, which would mean broken coefficients.
    """
    n, g = coeffs.n, coeffs.g
    prof = coeffs.a_profile()[1:]
    mn = float(prof.min())
    mx = float(prof.max())
    floor = -g / (n - g)
    if mn < floor - 1e-10:
        raise ArithmeticError(
            f"a-profile minimum {mn} sits below its floor {floor}"
        )
    if mx > 1.0 + 1e-12:
        raise ArithmeticError(f"a-profile maximum {mx} exceeds 1")
    return mn


@dataclass
class FeasibilityReport:
    """Outcome of the relaxation's constraint checks on a certificate."""

    n: int
    g: int
    residual_row_assign: float
    residual_col_assign: float
    residual_gangster: float
    residual_total_sum: float
    min_entry: float
    min_eig_closed_form: float
    min_eig_numeric: float | None
    eq_tol: float
    psd_tol: float
    nn_tol: float
    dense_checked: bool
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "residual_row_assign": fmt_float(self.residual_row_assign),
            "residual_col_assign": fmt_float(self.residual_col_assign),
            "residual_gangster": fmt_float(self.residual_gangster),
            "residual_total_sum": fmt_float(self.residual_total_sum),
            "min_entry": fmt_float(self.min_entry),
            "min_eig_closed_form": fmt_float(self.min_eig_closed_form),
            "min_eig_numeric": (
                None
                if self.min_eig_numeric is None
                else fmt_float(self.min_eig_numeric)
            ),
            "eq_tol": fmt_float(self.eq_tol),
            "psd_tol": fmt_float(self.psd_tol),
            "nn_tol": fmt_float(self.nn_tol),
            "dense_checked": self.dense_checked,
            "passed": self.passed,
        }


def _structured_residuals(y: CertificateY) -> tuple[float, float, float, float, float]:
    """Constraint residuals computed blockwise from the coefficients."""
    n, g = y.n, y.g
    p = y.per_group
    a, b = y.coeffs.a, y.coeffs.b
    inv_n = 1.0 / n

    # both assignment families hit only diagonal entries, all exactly 1/n
    row_assign = abs(n * inv_n - 1.0)
    col_assign = abs(n * inv_n - 1.0)

    # forbidden entries: off-diagonals of the I/n blocks (zero) plus the
    # diagonals of the A- and B-blocks (zero offset never carries weight)
    gangster = 0.0

    # an A-block of Y is A/2n whose entries sum to (2n sum(a))/2n = sum(a)
    sum_a = float(a.sum())
    sum_b = float(b.sum())
    count_within = n * (p - 1)
    count_across = n * n - n - count_within
    total = n * 1.0 + count_within * sum_a + count_across * sum_b
    total_sum = abs(total - float(n * n))

    min_entry = min(0.0, float(a.min()) / (2.0 * n), float(b.min()) / (2.0 * n))
    return row_assign, col_assign, gangster, total_sum, min_entry


def _dense_residuals(
    y_dense: np.ndarray, n: int
) -> tuple[float, float, float, float, float]:
    """Brute-force constraint residuals straight off the dense matrix."""
    diag = np.diag(y_dense).reshape(n, n)  # (vertex u, position s)
    row_assign = float(np.abs(diag.sum(axis=0) - 1.0).max())
    col_assign = float(np.abs(diag.sum(axis=1) - 1.0).max())

    y4 = y_dense.reshape(n, n, n, n)  # [u, s, v, t]
    block_traces = np.einsum("usvs->uv", y4)
    block_sums = y4.sum(axis=(1, 3))
    same_vertex_offdiag = float(
        np.einsum("ii->", block_sums) - np.einsum("ii->", block_traces)
    )
    cross_vertex_diag = float(block_traces.sum() - np.einsum("ii->", block_traces))
    gangster = abs(same_vertex_offdiag + cross_vertex_diag)

    total_sum = abs(float(y_dense.sum()) - float(n * n))
    min_entry = float(y_dense.min())
    return row_assign, col_assign, gangster, total_sum, min_entry


def verify_povh_rendl(
    y: CertificateY,
    eq_tol: float = EQ_TOL,
    psd_tol: float = PSD_TOL,
    nn_tol: float = NN_TOL,
    dense: bool | None = None,
    max_dim: int | None = None,
) -> FeasibilityReport:
    """Check every relaxation constraint on the certificate.

    dense=None picks dense mode automatically whenever n^2 fits the dense
    cap; dense=False stays structured (closed-form PSD only, blockwise
    residuals); dense=True forces the full oracle and raises past the cap.
    Tolerance violations yield a failing report, never an exception.
    """
    n = y.n
    cap = dense_cap(max_dim)
    if dense is None:
        dense = n * n <= cap

    spectrum = closed_form_spectrum(y.coeffs)
    min_eig_closed = spectrum.min_value() / (2.0 * n)

    if dense:
        y_dense = y.densify(max_dim=max_dim)
        row, col, gang, total, min_entry = _dense_residuals(y_dense, n)
        min_eig_numeric = float(sym_eigs(y_dense, max_dim=max_dim)[0])
    else:
        row, col, gang, total, min_entry = _structured_residuals(y)
        min_eig_numeric = None

    passed = (
        row <= eq_tol
        and col <= eq_tol
        and gang <= eq_tol
        and total <= eq_tol
        and min_entry >= -nn_tol
        and min_eig_closed >= -psd_tol
        and (min_eig_numeric is None or min_eig_numeric >= -psd_tol)
    )
    return FeasibilityReport(
        n=n,
        g=y.g,
        residual_row_assign=row,
        residual_col_assign=col,
        residual_gangster=gang,
        residual_total_sum=total,
        min_entry=min_entry,
        min_eig_closed_form=min_eig_closed,
        min_eig_numeric=min_eig_numeric,
        eq_tol=eq_tol,
        psd_tol=psd_tol,
        nn_tol=nn_tol,
        dense_checked=dense,
        passed=passed,
    )


def objective_povh_rendl(inst: SimplicialInstance, y: CertificateY) -> float:
    """Relaxation objective (1/2) <D (x) C1, Y> of the certificate.

    Requires the instance to be the matching equal layout.  Closed form:
    ((g-1)/g) n^2 b_1 / 2, which specializes to d^2 b_1 at g = 2.
    """
    n, g = y.n, y.g
    if inst.group_sizes != (y.per_group,) * g:
        raise ValueError(
            f"instance layout {inst.group_sizes} does not match certificate "
            f"(g={g}, per_group={y.per_group})"
        )
    return 0.5 * ((g - 1.0) / g) * n * n * float(y.coeffs.b[0])


def objective_dense_trace(
    inst: SimplicialInstance, y: CertificateY, max_dim: int | None = None
) -> float:
    """The same objective by brute-force dense trace (oracle route)."""
    n = y.n
    if inst.n_total != n:
        raise ValueError(
            f"instance has {inst.n_total} vertices, certificate expects {n}"
        )
    d = inst.cost_matrix()
    c1 = ring_adjacency(n)
    return 0.5 * trace_inner(kron(d, c1), y.densify(max_dim=max_dim))


def profile_identity_residuals(coeffs: CertCoeffs) -> dict[str, float]:
    """Residuals of the profile-level facts behind the spectrum analysis.

    Always reported: unit coefficient sums, the a/b profile coupling over
    k >= 1, and the profile floor -g/(n-g).  At g = 2 the sharper profile
    values ((d-2)/(n-2) at k = 1, -2/(n-2) for k = 2..d) and the leading
    coefficient bound b_1 <= 4 pi^2/n^3 join in.
    """
    n, g = coeffs.n, coeffs.g
    d = coeffs.d
    ap = coeffs.a_profile()
    bp = coeffs.b_profile()
    out: dict[str, float] = {}
    out["coefficient_sum_a"] = abs(float(coeffs.a.sum()) - 1.0)
    out["coefficient_sum_b"] = abs(float(coeffs.b.sum()) - 1.0)
    out["profile_at_zero"] = max(abs(float(ap[0]) - 1.0), abs(float(bp[0]) - 1.0))
    coupling = bp[1:] + g / (n * (g - 1.0)) + ((n - g) / (n * (g - 1.0))) * ap[1:]
    out["profile_coupling"] = float(np.abs(coupling).max())
    out["profile_floor"] = max(0.0, -g / (n - g) - float(ap[1:].min()))
    if g == 2:
        out["two_group_profile_first"] = abs(float(ap[1]) - (d - 2.0) / (n - 2.0))
        out["two_group_profile_tail"] = float(
            np.abs(ap[2 : d + 1] + 2.0 / (n - 2.0)).max()
        )
        out["two_group_leading_bound"] = max(
            0.0, float(coeffs.b[0]) - 4.0 * np.pi**2 / n**3
        )
    return out
