import math

import numpy as np
import pytest

from conftest import (
    chebyshev_U,
    regular_phi_closed,
    singular_phi_closed,
    singular_phi_ext_closed,
)
from toepspec.errors import FormMismatchError
from toepspec.spectral import (
    DensityKernel,
    resolvent_form,
    rh_residual,
    spectral_frame,
    stone_density,
    weak_measure,
)

TWO_PI = 2.0 * math.pi


# -- resolvent ---------------------------------------------------------------------


def test_resolvent_below_spectrum(regular):
    # Stieltjes transform of the Chebyshev weight, frozen closed form plus
    # an independent quadrature of the weight itself
    val = resolvent_form(regular, 0.0, 0.0, -2.0)
    assert val.imag == 0.0
    assert val.real == pytest.approx(2.0 * (2.0 - math.sqrt(3.0)), abs=1e-12)
    phi = np.linspace(0.0, math.pi, 200001)
    oracle = np.trapezoid((2.0 / math.pi) * np.sin(phi) ** 2 / (np.cos(phi) + 2.0), phi)
    assert val.real == pytest.approx(oracle, abs=1e-9)
    assert val.real > 0.0


def test_resolvent_analytic_past_top(regular):
    lam = 1.5
    gaps = [abs(resolvent_form(regular, 0.0, 0.0, lam + 1j * e)
                - resolvent_form(regular, 0.0, 0.0, lam - 1j * e))
            for e in (1e-2, 1e-3, 1e-4)]
    assert gaps[2] < gaps[1] < gaps[0]
    assert gaps[2] < 2e-2 * gaps[0]
    real_side = resolvent_form(regular, 0.0, 0.0, lam)
    assert abs(real_side.imag) < 1e-10


def test_resolvent_conjugate_symmetry(regular, singular, rng):
    for sym in (regular, singular):
        for _ in range(5):
            u = rng.uniform(0, 0.8) * np.exp(1j * rng.uniform(0, TWO_PI))
            w = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.05, 0.5))
            a = resolvent_form(sym, u, u, w)
            b = resolvent_form(sym, u, u, np.conj(w))
            assert abs(b - np.conj(a)) < 1e-10


def test_resolvent_rejects_cut(regular):
    with pytest.raises(ValueError):
        resolvent_form(regular, 0.0, 0.0, 0.3)
    with pytest.raises(ValueError):
        resolvent_form(regular, 1.1, 0.0, -2.0)


# -- frames -------------------------------------------------------------------------


def test_frame_regular(regular):
    fr = spectral_frame(regular, 0.0)
    assert fr.m == 1
    assert fr.arcdata.c[0] == pytest.approx(1.0 / math.pi, abs=1e-13)
    assert fr.level.arcs[0].alpha == pytest.approx(math.pi / 2, abs=1e-12)


def test_frame_singular(singular):
    fr = spectral_frame(singular, 0.5)
    assert fr.m == 1
    assert fr.level.arcs[0].alpha % TWO_PI == pytest.approx(math.pi, abs=1e-12)


def test_frame_fig2(fig2):
    assert spectral_frame(fig2, 0.2).m == 2


def test_frame_outside_interval(regular):
    with pytest.raises(ValueError):
        spectral_frame(regular, -1.5)


# -- eigenfunctions ------------------------------------------------------------------


def test_eigenfunction_regular_closed_form(regular, rng):
    fr0 = spectral_frame(regular, 0.0)
    assert fr0.eigenfunction(1, 0.0) == pytest.approx(math.sqrt(2.0 / math.pi), abs=1e-11)
    for _ in range(15):
        lam = rng.uniform(-0.9, 0.9)
        z = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
        fr = spectral_frame(regular, lam)
        assert abs(fr.eigenfunction(1, z) - regular_phi_closed(z, lam)) < 1e-10


def test_eigenfunction_singular_closed_form(singular, rng):
    for lam in (0.2, 0.5, 0.8):
        fr = spectral_frame(singular, lam)
        for _ in range(10):
            z = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
            assert abs(fr.eigenfunction(1, z) - singular_phi_closed(z, lam)) < 1e-10


def test_eigenfunction_exterior(regular, singular, rng):
    fr = spectral_frame(regular, 0.0)
    assert fr.eigenfunction_ext(1, 2.0) == pytest.approx((TWO_PI) ** -0.5 / 2.0, abs=1e-12)
    for lam in (0.2, 0.5, 0.8):
        frs = spectral_frame(singular, lam)
        for _ in range(10):
            z = rng.uniform(1.1, 4.0) * np.exp(1j * rng.uniform(0, TWO_PI))
            assert abs(frs.eigenfunction_ext(1, z) - singular_phi_ext_closed(z, lam)) < 1e-10


def test_eigenfunction_exterior_decay(regular):
    fr = spectral_frame(regular, 0.3)
    v2 = abs(fr.eigenfunction_ext(1, 100.0 * np.exp(0.7j)))
    v3 = abs(fr.eigenfunction_ext(1, 1000.0 * np.exp(0.7j)))
    assert v2 / v3 == pytest.approx(10.0, rel=0.1)


def test_eigenfunction_two_forms(regular, fig2, rng):
    for sym, lam in ((regular, 0.37), (fig2, 0.2)):
        fr = spectral_frame(sym, lam)
        for _ in range(100):
            z = rng.uniform(0, 0.95) * np.exp(1j * rng.uniform(0, TWO_PI))
            for j in range(1, fr.m + 1):
                a = fr.eigenfunction(j, z)
                b = fr.eigenfunction_product(j, z)
                assert abs(a - b) < 1e-11


def test_eigenfunction_nonvanishing(regular, fig2, rng):
    for sym, lam in ((regular, -0.2), (fig2, 0.1)):
        fr = spectral_frame(sym, lam)
        for _ in range(30):
            z = rng.uniform(0, 0.97) * np.exp(1j * rng.uniform(0, TWO_PI))
            assert all(abs(fr.eigenfunction(j, z)) > 1e-8 for j in range(1, fr.m + 1))


def test_eigenfunction_hardy_half_norm(regular, singular):
    # circle means of |phi|^{1/2} stay bounded as the radius approaches one
    for sym, lam in ((regular, 0.3), (singular, 0.5)):
        fr = spectral_frame(sym, lam)
        norms = []
        for r in (0.99, 0.999, 0.9995):
            vals = fr.eigen_circle(r, 8192)
            norms.append(float(np.mean(np.abs(vals[0]) ** 0.5)))
        assert norms[1] >= norms[0] - 1e-9
        assert norms[2] <= 1.05 * norms[1]


def test_eigenfunction_bad_branch(regular):
    fr = spectral_frame(regular, 0.0)
    with pytest.raises(ValueError):
        fr.eigenfunction(2, 0.0)
    with pytest.raises(ValueError):
        fr.eigenfunction(1, 1.2)
    with pytest.raises(ValueError):
        fr.eigenfunction_ext(1, 0.5)


# -- Riemann-Hilbert residual ----------------------------------------------------------


def test_rh_residual_trends(regular, singular):
    fr = spectral_frame(regular, 0.0)
    res = [rh_residual(fr, 1, math.pi / 4, d) for d in (1e-2, 5e-3, 2.5e-3)]
    assert res[1] < res[0] and res[2] < res[1]
    fitted = max(r / d for r, d in zip(res, (1e-2, 5e-3, 2.5e-3)))
    assert res[2] <= fitted * 2.5e-3 + 1e-12
    frs = spectral_frame(singular, 0.5)
    res = [rh_residual(frs, 1, math.pi / 2, d) for d in (1e-2, 5e-3, 2.5e-3)]
    assert res[1] < res[0] and res[2] < res[1]


def test_rh_residual_guards(regular, singular):
    fr = spectral_frame(regular, 0.0)
    with pytest.raises(ValueError):
        rh_residual(fr, 1, math.pi / 4, 0.0)
    with pytest.raises(ValueError):
        rh_residual(fr, 1, math.pi / 2, 1e-2)  # arc end
    frs = spectral_frame(singular, 0.5)
    with pytest.raises(ValueError):
        rh_residual(frs, 1, 0.0, 1e-2)  # jump angle


# -- density ----------------------------------------------------------------------------


def test_density_origin(regular):
    fr = spectral_frame(regular, 0.0)
    assert fr.density(0.0, 0.0) == pytest.approx(2.0 / math.pi, abs=1e-11)


def test_density_chebyshev_gram(regular):
    lam = 0.3
    fr = spectral_frame(regular, lam)
    G = fr.density_taylor(3)
    for n in range(4):
        for m in range(4):
            ref = (2.0 / math.pi) * math.sqrt(1.0 - lam * lam) * chebyshev_U(n, lam) * chebyshev_U(m, lam)
            assert G[n, m] == pytest.approx(ref, rel=1e-9)


def test_density_positivity(regular, singular, fig2, rng):
    for sym, span in ((regular, (-0.9, 0.9)), (singular, (0.1, 0.9)), (fig2, (-0.55, 0.55))):
        for lam in np.linspace(span[0], span[1], 5):
            fr = spectral_frame(sym, float(lam), check_count=False)
            for _ in range(5):
                u = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
                d = fr.density(u, u)
                assert abs(d.imag) < 1e-12
                assert d.real > 0.0


def test_density_kernel_hermitian_and_rank(regular, fig2, rng):
    for sym, lam in ((regular, 0.2), (fig2, 0.25)):
        fr = spectral_frame(sym, lam)
        kern = DensityKernel(fr)
        pts = [rng.uniform(0, 0.85) * np.exp(1j * rng.uniform(0, TWO_PI)) for _ in range(8)]
        G = kern.gram(pts)
        assert np.max(np.abs(G - G.conj().T)) < 1e-12
        eig = np.linalg.eigvalsh(G)
        assert eig[0] > -1e-10 * max(eig[-1], 1.0)
        numerical_rank = int(np.sum(eig > 1e-10 * eig[-1]))
        assert numerical_rank <= fr.m


def test_density_form_mismatch_detected(regular):
    fr = spectral_frame(regular, 0.1)
    fr._rho = fr._rho * 1.001  # corrupt a residue weight
    with pytest.raises(FormMismatchError):
        fr.density(0.2, 0.3j)


def test_stone_consistency(regular, singular):
    cases = ((regular, (-0.7, 0.7)), (singular, (0.15, 0.85)))
    for sym, (a, b) in cases:
        for lam in np.linspace(a, b, 4):
            fr = spectral_frame(sym, float(lam), check_count=False)
            d = fr.density(0.2 + 0.1j, 0.2 + 0.1j)
            s = stone_density(sym, 0.2 + 0.1j, 0.2 + 0.1j, float(lam))
            assert abs(s - d) / abs(d) < 1e-4


# -- weak measure -------------------------------------------------------------------------


def test_weak_measure_constant_weight(regular):
    ind = lambda lam: 1.0 if -0.5 <= lam <= 0.5 else 0.0
    val = weak_measure(regular, (-0.5, 0.5), 0.0, 0.0, ind)
    ref = (2.0 / math.pi) * (0.5 * math.sqrt(0.75) + math.asin(0.5))
    assert val.real == pytest.approx(ref, abs=1e-8)
    assert abs(val.imag) < 1e-12


def test_weak_measure_zero_weight(regular):
    assert weak_measure(regular, (-0.5, 0.5), 0.1, 0.2j, lambda lam: 0.0) == 0.0
    with pytest.raises(ValueError, match="supported outside"):
        weak_measure(regular, (-0.5, 0.5), 0.1, 0.2j, lambda lam: 1.0)


def test_weak_measure_two_routes(regular):
    g = lambda lam: (1.0 - (2.0 * lam) ** 2) ** 3 if abs(lam) < 0.5 else 0.0
    via_phi = weak_measure(regular, (-0.5, 0.5), 0.0, 0.0, g)
    lam = np.linspace(-0.5, 0.5, 20001)
    closed = np.trapezoid((1 - (2 * lam) ** 2) ** 3 * (2 / math.pi) * np.sqrt(1 - lam**2), lam)
    assert via_phi.real == pytest.approx(closed, abs=1e-8)


# -- complementary-arc variant ---------------------------------------------------------------


def test_alt_density_equality(regular, fig2, rng):
    for sym, lam in ((regular, 0.3), (fig2, 0.2)):
        fr = spectral_frame(sym, lam)
        alt = fr.alt_frame()
        assert alt.arcdata.measure == pytest.approx(1.0 - fr.arcdata.measure, abs=1e-12)
        for _ in range(50):
            u = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
            v = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
            d = fr.density(u, v)
            d_alt = sum(np.conj(alt.eigenfunction(j, u)) * alt.eigenfunction(j, v)
                        for j in range(1, alt.m + 1))
            assert abs(d - d_alt) < 1e-10


def test_alt_eigenfunction_is_endpoint_swap(regular, rng):
    # for one arc the swapped product form coincides with the original
    lam = 0.4
    fr = spectral_frame(regular, lam)
    alt = fr.alt_frame()
    a = fr.level.arcs[0].alpha
    b = fr.level.arcs[0].beta
    rho = math.sqrt(abs(np.exp(1j * b) - np.exp(1j * a)) / TWO_PI)
    for _ in range(10):
        z = rng.uniform(0, 0.9) * np.exp(1j * rng.uniform(0, TWO_PI))
        swapped = (rho * fr.xi(z) / (1.0 - z * np.exp(-1j * a))
                   * (1.0 - z * np.exp(-1j * b)) ** -0.5 * (1.0 - z * np.exp(-1j * a)) ** 0.5)
        assert abs(alt.eigenfunction(1, z) - swapped) < 1e-10
        assert abs(alt.eigenfunction(1, z) - fr.eigenfunction(1, z)) < 1e-10
