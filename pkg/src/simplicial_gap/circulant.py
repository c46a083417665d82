"""Symmetric circulant matrices over the half-offset basis.

A symmetric circulant of even dimension m is determined by one coefficient
per offset i = 1..m/2 (offset 0, the identity direction, is deliberately
excluded; callers that need an identity term add it explicitly).  The basis
element at offset i < m/2 has ones at offsets +-i; the element at offset m/2
has a single 2 there, so every basis element has row sum 2.

Spectra come straight from the cosine form: the eigenvalue of the coefficient
vector c at frequency k is 2 * sum_i c_i cos(2 pi i k / m).  ``sym_eigs`` on
the densified matrix is the independent cross-check, exercised in the tests.

``identity_suite`` evaluates, numerically and against their closed forms, the
handful of trigonometric identities that the certificate analysis rests on,
returning one max-residual per named identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SymmetricCirculant",
    "basis",
    "circulant_spectrum",
    "cosine_profile",
    "identity_suite",
    "lagrange_cosine_sum",
    "ring_adjacency",
]


@dataclass
class SymmetricCirculant:
    """Even-dimension symmetric circulant given by half-offset coefficients.

    ``coeffs[i-1]`` multiplies the basis element at offset i, i = 1..m/2.
    """

    m: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.m < 2 or self.m % 2 != 0:
            raise ValueError(f"dimension must be even and >= 2, got {self.m}")
        c = np.asarray(self.coeffs, dtype=float).copy()
        if c.shape != (self.m // 2,):
            raise ValueError(
                f"need {self.m // 2} coefficients for dimension {self.m}, "
                f"got shape {c.shape}"
            )
        self.coeffs = c

    @property
    def half(self) -> int:
        return self.m // 2

    def first_row(self) -> np.ndarray:
        row = np.zeros(self.m)
        d = self.half
        for i in range(1, d):
            row[i] += self.coeffs[i - 1]
            row[self.m - i] += self.coeffs[i - 1]
        row[d] += 2.0 * self.coeffs[d - 1]
        return row

    def densify(self) -> np.ndarray:
        row = self.first_row()
        offsets = (np.arange(self.m)[None, :] - np.arange(self.m)[:, None]) % self.m
        return row[offsets]

    def row_sum(self) -> float:
        """Common row sum, 2 * sum(coeffs)."""
        return 2.0 * float(self.coeffs.sum())


def basis(m: int, i: int) -> SymmetricCirculant:
    """The i-th basis circulant of dimension m (i = 1..m/2)."""
    if m < 2 or m % 2 != 0:
        raise ValueError(f"dimension must be even and >= 2, got {m}")
    if not 1 <= i <= m // 2:
        raise ValueError(f"offset must lie in 1..{m // 2}, got {i}")
    coeffs = np.zeros(m // 2)
    coeffs[i - 1] = 1.0
    return SymmetricCirculant(m, coeffs)


def cosine_profile(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Frequency profile sum_i coeffs[i-1] * cos(2 pi i k / n), k = 0..n-1.

    The profile at k is half the circulant eigenvalue at frequency k.
    Arguments are reduced to integers mod n before the cosine so that the
    reflection symmetry profile[k] == profile[n-k] holds bit for bit.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"dimension must be even and >= 2, got {n}")
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (n // 2,):
        raise ValueError(f"need {n // 2} coefficients, got shape {c.shape}")
    # evaluate frequencies 0..n/2 and mirror, so profile[k] == profile[n-k]
    # holds bit for bit (one shared dot product, not two BLAS paths)
    k = np.arange(n // 2 + 1)
    i = np.arange(1, n // 2 + 1)
    t = np.outer(k, i) % n
    t = np.minimum(t, n - t)
    half = np.cos(2.0 * np.pi * t / n) @ c
    folded = np.minimum(np.arange(n), n - np.arange(n))
    return half[folded]


def circulant_spectrum(c: SymmetricCirculant) -> np.ndarray:
    """All m eigenvalues, sorted ascending (closed form, no factorization)."""
    return np.sort(2.0 * cosine_profile(c.coeffs, c.m))


def lagrange_cosine_sum(n: int, k: int) -> float:
    """Closed form of sum_{j=1}^{n/2} cos(pi j k / (n/2)) for k = 0..n.

    Equals n/2 at k in {0, n}; otherwise -1 for odd k and 0 for even k.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    if k == 0 or k == n:
        return float(n // 2)
    return (-1.0 + (-1.0) ** k) / 2.0


def ring_adjacency(m: int) -> np.ndarray:
    """Dense adjacency matrix of the m-cycle (first-neighbor step costs).

    Handles odd m too, unlike the half-offset basis; for even m >= 4 it
    equals basis(m, 1).densify().
    """
    if m < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {m}")
    a = np.zeros((m, m))
    idx = np.arange(m)
    a[idx, (idx + 1) % m] = 1.0
    a[(idx + 1) % m, idx] = 1.0
    return a


def _block_cosine_sum(d: int, t: int) -> float:
    """Direct evaluation of sum_{i=1}^{d} cos(pi i t / d) for integer t."""
    i = np.arange(1, d + 1)
    return float(np.cos(np.pi * i * (t % (2 * d)) / d).sum())


def identity_suite(g: int, n: int) -> dict[str, float]:
    """Max absolute residual of each supporting identity on its full grid.

    Requires even g >= 2, even n >= 2g (so that group weights j = 1..g-1 and
    the half-dimension d = n/2 never collide).  Keys:

    * cosine_block_sum          -- direct block sum vs lagrange_cosine_sum,
                                   k = 0..n
    * alternating_weight_sum_odd    -- sum over odd j of (g-j) vs g^2/4
    * alternating_weight_sum_signed -- signed sum of (g-j) vs -g/2
    * cosine_weight_telescope   -- (2cos t - 2) * sum_j (g-j)cos(jt) vs
                                   cos(gt) - g cos t + (g-1), t on the grid
                                   pi*i/d, i = 0..n
    * cosine_product_case_sum   -- sum_i cos(pi i j/d) cos(pi i k/d) vs its
                                   case-split closed form, j = 1..g-1,
                                   k = 1..n-1 (always >= -[j-k odd])
    * parity_weight_count       -- sum over j with j-k odd of (g-j) vs
                                   (g(g-1) + g(-1)^k)/4, k = 0..n-1
    """
    if g < 2 or g % 2 != 0:
        raise ValueError(f"g must be even and >= 2, got {g}")
    if n % 2 != 0 or n < 2 * g:
        raise ValueError(f"n must be even and >= 2g = {2 * g}, got {n}")
    d = n // 2
    j = np.arange(1, g)
    w = (g - j).astype(float)

    out: dict[str, float] = {}

    res = 0.0
    for k in range(n + 1):
        res = max(res, abs(_block_cosine_sum(d, k) - lagrange_cosine_sum(n, k)))
    out["cosine_block_sum"] = res

    out["alternating_weight_sum_odd"] = abs(
        float(w[j % 2 == 1].sum()) - g * g / 4.0
    )
    out["alternating_weight_sum_signed"] = abs(
        float((w * (-1.0) ** j).sum()) - (-g / 2.0)
    )

    res = 0.0
    for i in range(n + 1):
        t = np.pi * i / d
        lhs = (2.0 * np.cos(t) - 2.0) * float((w * np.cos(j * t)).sum())
        rhs = np.cos(g * t) - g * np.cos(t) + (g - 1.0)
        res = max(res, abs(lhs - rhs))
    out["cosine_weight_telescope"] = res

    # the block sum is periodic in its integer argument with period n = 2d,
    # so the closed form extends to any integer t
    def block_closed(t: int) -> float:
        if t % n == 0:
            return float(d)
        return (-1.0 + (-1.0) ** t) / 2.0

    res = 0.0
    i = np.arange(1, d + 1)
    for jj in range(1, g):
        cos_j = np.cos(np.pi * i * jj / d)
        for k in range(1, n):
            direct = float((cos_j * np.cos(np.pi * i * k / d)).sum())
            closed = 0.5 * (block_closed(jj - k) + block_closed(jj + k))
            res = max(res, abs(direct - closed))
    out["cosine_product_case_sum"] = res

    res = 0.0
    for k in range(n):
        lhs = float(w[(j - k) % 2 == 1].sum())
        rhs = (g * (g - 1.0) + g * (-1.0) ** k) / 4.0
        res = max(res, abs(lhs - rhs))
    out["parity_weight_count"] = res

    return out
