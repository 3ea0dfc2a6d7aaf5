import math

import numpy as np
import pytest

from toepspec.oracle import (
    build_section,
    k_vector,
    oracle_weak_measure,
    smooth_bump,
    validate,
)
from toepspec.spectral import weak_measure


def test_regular_section_is_discrete_laplacian(regular):
    N = 128
    sec = build_section(regular, N)
    ref = np.sort(np.cos(np.arange(1, N + 1) * math.pi / (N + 1)))
    assert np.max(np.abs(sec.eigenvalues - ref)) < 1e-10
    assert sec.orthonormality_residual() < 1e-10
    off = np.diag(sec.matrix.real, 1)
    assert np.allclose(off, 0.5)


def test_singular_two_by_two(singular):
    sec = build_section(singular, 2)
    t1 = singular.fourier_coefficient(1)
    assert sec.eigenvalues[0] == pytest.approx(0.5 - abs(t1), abs=1e-14)
    assert sec.eigenvalues[1] == pytest.approx(0.5 + abs(t1), abs=1e-14)
    assert np.max(np.abs(sec.matrix - sec.matrix.conj().T)) < 1e-14


def test_section_trace_and_range(regular, singular_asym, fig2):
    for sym in (regular, singular_asym, fig2):
        sec = build_section(sym, 96)
        assert np.trace(sec.matrix).real / 96 == pytest.approx(
            sym.fourier_coefficient(0).real, abs=1e-12
        )
        g1, g2 = sym.essential_range()
        assert sec.eigenvalues[0] >= g1 - 1e-10
        assert sec.eigenvalues[-1] <= g2 + 1e-10


def test_section_rejects_tiny(regular):
    with pytest.raises(ValueError):
        build_section(regular, 1)


def test_k_vector():
    vec, tail = k_vector(0.0, 5)
    assert np.allclose(vec, [1, 0, 0, 0, 0])
    vec, tail = k_vector(0.5, 4)
    assert np.allclose(vec, [1.0, 0.5, 0.25, 0.125])
    assert tail == pytest.approx(0.5**4 / 0.5)
    for N in (16, 64, 256):
        vec, _ = k_vector(0.6j, N)
        assert np.sum(np.abs(vec) ** 2) == pytest.approx(1.0 / (1.0 - 0.36), abs=0.36**N * 3 + 1e-13)
    with pytest.raises(ValueError):
        k_vector(1.0, 4)


def test_oracle_constant_weight_is_kernel_gram(regular):
    sec = build_section(regular, 256)
    u, v = 0.4 + 0.1j, -0.2 + 0.3j
    val = oracle_weak_measure(sec, u, v, lambda lam: 1.0)
    ref = sum((np.conj(u) * v) ** n for n in range(256))
    assert abs(val - ref) < 1e-12


def test_oracle_matches_chebyshev_integral(regular):
    g = smooth_bump(-0.5, 0.5)
    sec = build_section(regular, 1024)
    val = oracle_weak_measure(sec, 0.0, 0.0, g)
    lam = np.linspace(-0.5, 0.5, 40001)
    ref = np.trapezoid((1 - (2 * lam) ** 2) ** 3 * (2 / math.pi) * np.sqrt(1 - lam**2), lam)
    assert abs(val - ref) < 1e-4


def test_validate_errors_shrink(regular):
    g = smooth_bump(-0.5, 0.5)
    report = validate(regular, (-0.6, 0.6), g, [0.0, 0.3 + 0.2j], [128, 256, 512])
    assert report.monotone
    assert report.max_final_error < 5e-3


def test_validate_outside_spectrum_is_null(regular):
    g = smooth_bump(2.0, 3.0)  # supported above gamma2
    sec = build_section(regular, 512)
    val = oracle_weak_measure(sec, 0.1, 0.2, g)
    assert abs(val) < 1e-10
    via_phi = weak_measure(regular, (-0.5, 0.5), 0.1, 0.2, lambda lam: 0.0)
    assert abs(via_phi) < 1e-14


def test_no_persistent_atoms(regular, singular):
    # absolute-continuity smoke test on the kernel-weighted eigenvalue
    # measure: with bins narrowing as 1/sqrt(N) its largest bin mass decays,
    # while any atom of the spectral measure would make it stall.  The raw
    # counting measure is no witness here: for piecewise-constant symbols it
    # concentrates on the symbol values by the Szego limit theorem.
    for sym in (regular, singular):
        g1, g2 = sym.essential_range()
        fracs = []
        for N in (128, 512, 2048):
            sec = build_section(sym, N)
            weights = np.abs(sec.eigenvectors[0, :]) ** 2
            bins = np.linspace(g1 - 1e-9, g2 + 1e-9, int(math.sqrt(N)) + 1)
            mass, _ = np.histogram(sec.eigenvalues, bins=bins, weights=weights)
            fracs.append(mass.max())
        assert fracs[2] < fracs[1] < fracs[0]
