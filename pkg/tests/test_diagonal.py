import math

import numpy as np
import pytest

from toepspec.diagonal import (
    FrameFamily,
    HardyVector,
    intertwining_check,
    phi_adjoint,
    phi_adjoint_taylor,
    phi_map,
    phi_map_family,
    phi_on_taylor,
    phi_r,
    stone_projection,
)
from toepspec.oracle import build_section
from toepspec.spectral import spectral_frame

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def family(regular):
    return FrameFamily(regular, (-0.5, 0.5), n_grid=64)


def test_hardy_vector_validation():
    with pytest.raises(ValueError):
        HardyVector.of((1.0, 0.3), (2.0, 0.3))
    with pytest.raises(ValueError):
        HardyVector.of((1.0, 1.2))
    f = HardyVector.of((2.0, 0.3), (1j, -0.4j))
    w = 0.1 + 0.2j
    ref = 2.0 / (1.0 - 0.3 * w) + 1j / (1.0 - np.conj(-0.4j) * w)
    assert f(w) == pytest.approx(ref)


def test_phi_map_is_conjugated_eigenfunction(regular):
    fr = spectral_frame(regular, 0.0)
    z = 0.3 + 0.2j
    out = phi_map(fr, HardyVector.of((1.0, z)))
    assert out[0] == pytest.approx(np.conj(fr.eigenfunction(1, z)))
    assert phi_map(fr, HardyVector.of((1.0, 0.0)))[0] == pytest.approx(
        math.sqrt(2.0 / math.pi), abs=1e-11
    )


def test_phi_map_linearity(regular):
    fr = spectral_frame(regular, 0.2)
    z, w = 0.3 + 0.2j, -0.4
    a = phi_map(fr, HardyVector.of((1.0, z)))
    b = phi_map(fr, HardyVector.of((-1.0, z)))
    assert np.allclose(a + b, 0.0)
    ab = phi_map(fr, HardyVector.of((2.0, z), (0.5j, w)))
    assert ab[0] == pytest.approx(2.0 * a[0] + 0.5j * phi_map(fr, HardyVector.of((1.0, w)))[0])


def test_phi_adjoint_identity(family, rng):
    gvals = rng.normal(size=(len(family), family.m)) + 1j * rng.normal(size=(len(family), family.m))
    for z in (0.4 - 0.2j, 0.1 + 0.6j):
        lhs = complex(np.sum(
            family.weights[:, None] * gvals
            * np.conj(phi_map_family(family, HardyVector.of((1.0, z))))
        ))
        rhs = phi_adjoint(family, gvals, z)
        assert abs(lhs - rhs) < 1e-9


def test_phi_adjoint_zero(family):
    assert phi_adjoint(family, np.zeros((len(family), family.m)), 0.3) == 0.0


def test_adjoint_of_phi_is_projection(family):
    # Phi* Phi K_u evaluated at z equals the lambda integral of the density
    u, z = 0.25 + 0.15j, -0.3 + 0.1j
    F = phi_map_family(family, HardyVector.of((1.0, u)))
    lhs = phi_adjoint(family, F, z)
    rhs = 0.0 + 0.0j
    for k, fr in enumerate(family.frames):
        rhs += family.weights[k] * sum(
            np.conj(fr.eigenfunction(j, u)) * fr.eigenfunction(j, z)
            for j in range(1, family.m + 1)
        )
    assert abs(lhs - rhs) < 1e-12


def test_phi_r_exactness_and_trend(family):
    u = 0.3 + 0.1j
    M = 512
    zeta = np.exp(2j * math.pi * np.arange(M) / M)
    boundary = 1.0 / (1.0 - np.conj(u) * zeta)
    exact = phi_map_family(family, HardyVector.of((1.0, 0.9 * u)))
    approx = phi_r(family, boundary, 0.9)
    assert np.max(np.abs(approx - exact)) < 1e-8

    target = phi_map_family(family, HardyVector.of((1.0, u)))
    errs = [family.norm(phi_r(family, boundary, r) - target) for r in (0.9, 0.99, 0.999)]
    assert errs[0] > errs[1] > errs[2]


def test_phi_r_contraction(family, rng):
    M = 512
    zeta = np.exp(2j * math.pi * np.arange(M) / M)
    for _ in range(3):
        coeffs = rng.normal(size=7) + 1j * rng.normal(size=7)
        boundary = np.polynomial.polynomial.polyval(zeta, coeffs)
        norm_f = math.sqrt(float(np.sum(np.abs(coeffs) ** 2)))
        for r in (0.9, 0.99):
            assert family.norm(phi_r(family, boundary, r)) <= (1.0 + 1e-8) * norm_f


def test_phi_r_input_validation(family):
    with pytest.raises(ValueError):
        phi_r(family, np.ones(100), 0.9)
    with pytest.raises(ValueError):
        phi_r(family, np.ones(512), 1.0)


def test_intertwining_full_interval(family):
    f = HardyVector.of((1.0, 0.0))
    res = intertwining_check(family, f, f, [(-0.5, 0.5)])
    assert res.stone_residual < 1e-4


def test_intertwining_empty(family):
    f = HardyVector.of((1.0, 0.2))
    res = intertwining_check(family, f, f, [])
    assert res.value == 0.0 and res.stone == 0.0


def test_intertwining_additivity(family):
    f = HardyVector.of((1.0, 0.1 + 0.2j))
    g = HardyVector.of((1.0, -0.3))
    x1, x2 = (-0.4, -0.1), (0.05, 0.35)
    both = intertwining_check(family, f, g, [x1, x2])
    first = intertwining_check(family, f, g, [x1])
    second = intertwining_check(family, f, g, [x2])
    assert abs(both.value - first.value - second.value) < 1e-12
    assert both.stone_residual <= first.stone_residual + second.stone_residual + 1e-10


def test_intertwining_subinterval_against_stone(family):
    f = HardyVector.of((1.0, 0.25), (0.5j, -0.2 + 0.1j))
    res = intertwining_check(family, f, f, [(-0.3, 0.2)])
    assert res.stone_residual < 1e-4


def test_intertwining_oracle_route(family, regular):
    sec = build_section(regular, 1024)
    f = HardyVector.of((1.0, 0.0))
    res = intertwining_check(family, f, f, [(-0.5, 0.5)], section=sec)
    assert res.oracle_residual is not None and res.oracle_residual < 5e-3


def test_surjectivity_witness_small(regular):
    # Phi Phi* = identity on smooth grid functions (moderate grid here;
    # the acceptance suite runs the full-size version)
    family = FrameFamily(regular, (-0.5, 0.5), n_grid=96)
    lam = family.lams
    g = np.zeros((len(family), 1), dtype=complex)
    g[:, 0] = np.exp(-4.0 * lam**2) * (0.25 - lam**2) ** 2 * 16.0
    fhat = phi_adjoint_taylor(family, g, nmax=96, radius=0.9)
    back = phi_on_taylor(family, fhat, radius=0.9)
    err = family.norm(back - g) / family.norm(g)
    assert err < 1e-3


def test_family_multiplicity_two(fig2):
    fam = FrameFamily(fig2, (-0.4, 0.4), n_grid=48)
    assert fam.m == 2
    f = HardyVector.of((1.0, 0.2 + 0.1j))
    F = phi_map_family(fam, f)
    assert F.shape == (48, 2)
    res = intertwining_check(fam, f, f, [(-0.4, 0.4)])
    assert res.stone_residual < 1e-4
    # isometry splits over the two branches: both carry mass
    per_branch = np.sum(fam.weights[:, None] * np.abs(F) ** 2, axis=0)
    assert per_branch[0] > 0.0 and per_branch[1] > 0.0


def test_surjectivity_witness_full_grid(regular):
    # the full-size witness: 2048 lambda nodes on the regular preset
    family = FrameFamily(regular, (-0.5, 0.5), n_grid=2048)
    lam = family.lams
    g = np.zeros((len(family), 1), dtype=complex)
    g[:, 0] = (np.sin(3.0 * lam) + 1.2) * (0.25 - lam**2) ** 2 * 16.0
    fhat = phi_adjoint_taylor(family, g, nmax=96, radius=0.9)
    back = phi_on_taylor(family, fhat, radius=0.9)
    assert family.norm(back - g) <= 1e-3


def test_stone_projection_hermitian(regular):
    f = HardyVector.of((1.0, 0.3))
    val = stone_projection(regular, f, f, [(-0.5, 0.5)])
    assert abs(val.imag) < 1e-8
    assert 0.0 < val.real < f.norm_squared() + 1e-9
