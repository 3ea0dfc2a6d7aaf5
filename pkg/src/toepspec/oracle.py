"""Finite-section validation oracle: truncated Toeplitz matrices, dense
Hermitian eigendecompositions, and weak spectral measures to compare with
every analytic formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .runtime import parallel_map
from .spectral import weak_measure
from .symbol import PiecewiseSymbol


class FiniteSection:
    """N x N leading truncation of the Toeplitz matrix with its eigendata."""

    def __init__(self, sym: PiecewiseSymbol, N: int):
        if N < 2:
            raise ValueError("finite section needs N >= 2")
        self.sym = sym
        self.N = N
        coeffs = np.array([sym.fourier_coefficient(n) for n in range(N)])
        full = np.concatenate((np.conj(coeffs[:0:-1]), coeffs))
        idx = np.arange(N)
        self.matrix = full[idx[:, None] - idx[None, :] + N - 1]
        if np.max(np.abs(coeffs.imag)) < 1e-15:
            vals, vecs = np.linalg.eigh(self.matrix.real)
            vecs = vecs.astype(complex)
        else:
            vals, vecs = np.linalg.eigh(self.matrix)
        self.eigenvalues = vals
        self.eigenvectors = vecs
        g1, g2 = sym.essential_range()
        if vals[0] < g1 - 1e-10 or vals[-1] > g2 + 1e-10:
            raise ValueError("section eigenvalues escape the essential range")

    def orthonormality_residual(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.conj().T @ v - np.eye(self.N))))


def build_section(sym: PiecewiseSymbol, N: int) -> FiniteSection:
    return FiniteSection(sym, N)


def k_vector(u: complex, N: int) -> tuple[np.ndarray, float]:
    """Truncated coefficient sequence of the reproducing kernel at u, with
    the geometric-tail bound of the discarded part."""
    if abs(u) >= 1.0:
        raise ValueError("kernel point must lie inside the disk")
    vec = np.conj(u) ** np.arange(N)
    tail = abs(u) ** N / (1.0 - abs(u))
    return vec, tail


def oracle_weak_measure(section: FiniteSection, u: complex, v: complex, g) -> complex:
    """(g(T_N) K_u^N, K_v^N) from the section's eigendata."""
    ku, _ = k_vector(u, section.N)
    kv, _ = k_vector(v, section.N)
    a = section.eigenvectors.conj().T @ ku
    b = section.eigenvectors.conj().T @ kv
    gvals = np.array([g(lam) for lam in section.eigenvalues])
    return complex(np.sum(gvals * a * np.conj(b)))


@dataclass
class ValidationReport:
    """Error table of |oracle - analytic| per section size and point pair.

    ``monotone`` is an envelope statement: section errors for jump symbols
    oscillate through zero while shrinking, so adjacent sizes can swap
    order; the comparison skips one rung and allows wiggle below
    ``NOISE_FLOOR`` once the analytic quadrature noise is reached.
    """

    NOISE_FLOOR = 1e-9

    interval: tuple[float, float]
    sizes: tuple[int, ...]
    pairs: tuple[tuple[complex, complex], ...]
    analytic: tuple[complex, ...]
    errors: np.ndarray            # shape (len(sizes), len(pairs))
    monotone: bool = field(init=False)
    max_final_error: float = field(init=False)

    def __post_init__(self):
        e = self.errors
        ok = True
        if len(self.sizes) > 1:
            ok = bool(np.all(e[-1] <= e[0] + self.NOISE_FLOOR))
        for i in range(len(self.sizes) - 2):
            ok = ok and bool(np.all(e[i + 2] <= e[i] + self.NOISE_FLOOR))
        self.monotone = ok
        self.max_final_error = float(np.max(e[-1]))

    def passed(self, tol: float = 5e-3) -> bool:
        return self.monotone and self.max_final_error <= tol


def smooth_bump(a: float, b: float):
    """C^2 bump supported on (a, b): finite sections converge weakly, so
    sharp indicators are avoided in oracle comparisons."""
    if not a < b:
        raise ValueError("bump needs a < b")
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    def g(lam: float) -> float:
        x = (lam - mid) / half
        if abs(x) >= 1.0:
            return 0.0
        return (1.0 - x * x) ** 3

    return g


def validate(sym: PiecewiseSymbol, interval, g, points, sizes) -> ValidationReport:
    """Compare the section weak measures against the analytic one.

    ``points`` is a list of disk points; all ordered pairs are tested.
    Sections for the different sizes run on the worker pool.
    """
    a, b = float(interval[0]), float(interval[1])
    pairs = tuple((u, v) for u in points for v in points)
    analytic = tuple(weak_measure(sym, (a, b), u, v, g) for u, v in pairs)
    sizes = tuple(int(n) for n in sizes)

    def one(N):
        sec = build_section(sym, N)
        return [oracle_weak_measure(sec, u, v, g) for u, v in pairs]

    rows = parallel_map(one, sizes)
    errors = np.array(
        [[abs(row[i] - analytic[i]) for i in range(len(pairs))] for row in rows]
    )
    return ValidationReport((a, b), sizes, pairs, analytic, errors)
