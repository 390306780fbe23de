import numpy as np
import pytest

from dmkp_lab import (
    GridError,
    SpectralField,
    build_grid,
    dealias,
    forward,
    inverse,
    l2_norm,
    project_zero_x_mode,
)
from dmkp_lab.grid import conjugate_flip, hermitian_part
from dmkp_lab.probes import random_band_field


def test_wavenumbers_integer_on_2pi_grid(grid8):
    assert sorted(grid8.xi) == [-4, -3, -2, -1, 0, 1, 2, 3]
    assert sorted(grid8.eta) == [-4, -3, -2, -1, 0, 1, 2, 3]
    # Nyquist j = -4 is outside the kept band
    jny = np.where(grid8.jx == -4)[0][0]
    assert not grid8.dealias_mask[0, jny]


def test_degenerate_1d_grid():
    g = build_grid(4, 1, 2 * np.pi, 2 * np.pi)
    assert g.eta.tolist() == [0.0]
    assert g.shape == (1, 4)
    assert g.dealias_mask[0, 0]


def test_dealias_two_thirds_rule():
    g = build_grid(6, 6, 2 * np.pi, 2 * np.pi)
    kept = {(j, k) for k in g.jy for j in g.jx if g.dealias_mask[np.where(g.jy == k)[0][0], np.where(g.jx == j)[0][0]]}
    assert kept == {(j, k) for j in range(-2, 3) for k in range(-2, 3)}


@pytest.mark.parametrize("nx,ny,lx,ly", [(3, 8, 1.0, 1.0), (8, 3, 1.0, 1.0), (0, 8, 1.0, 1.0), (8, 8, -1.0, 1.0), (8, 8, 1.0, float("nan"))])
def test_grid_rejects_bad_sizes(nx, ny, lx, ly):
    with pytest.raises(GridError):
        build_grid(nx, ny, lx, ly)


def test_forward_constant_field(grid8):
    F = forward(grid8, np.ones(grid8.shape))
    assert F.coef[0, 0] == pytest.approx((2 * np.pi) ** 2, rel=1e-14)
    rest = F.coef.copy()
    rest[0, 0] = 0
    assert np.max(np.abs(rest)) < 1e-12


def test_forward_cosine_single_mode(grid8):
    X, _ = grid8.meshgrid()
    F = forward(grid8, np.cos(X))
    assert F.coef[0, 1] == pytest.approx((2 * np.pi) ** 2 / 2, rel=1e-13)
    assert F.coef[0, -1] == pytest.approx((2 * np.pi) ** 2 / 2, rel=1e-13)


def test_forward_size_mismatch(grid8):
    with pytest.raises(GridError):
        forward(grid8, np.ones((4, 4)))


@pytest.mark.parametrize("nx,ny", [(8, 8), (16, 4), (32, 32), (64, 1)])
def test_roundtrip_identity(nx, ny):
    # spectral -> real -> spectral on Nyquist-free conjugate-symmetric data
    g = build_grid(nx, ny, 2 * np.pi, 1.5)
    rng = np.random.default_rng(nx + ny)
    coef = hermitian_part(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    coef[g.nyquist_mask] = 0
    f = SpectralField(g, coef)
    back = forward(g, inverse(f))
    assert np.max(np.abs(back.coef - coef)) < 1e-12 * max(1.0, np.max(np.abs(coef)))


def test_parseval(grid16):
    rng = np.random.default_rng(5)
    u = rng.standard_normal(grid16.shape)
    F = forward(grid16, u)
    # remove Nyquist content zeroed by forward before comparing
    u = inverse(F)
    l2_real = np.sqrt(np.sum(u**2) * grid16.cell_area)
    assert abs(l2_real - l2_norm(F)) < 1e-10 * l2_real


def test_dealias_kept_and_masked(grid8):
    f = random_band_field(grid8, 2, seed=1)
    assert np.array_equal(dealias(f).coef, f.coef)
    masked = SpectralField(grid8, np.where(grid8.dealias_mask, 0.0, 1.0 + 0j))
    assert np.all(dealias(masked).coef == 0)


def test_dealias_matches_padding_oracle():
    # 3/2 zero-padded product is alias-free; kept-band coefficients must agree
    g = build_grid(16, 16, 2 * np.pi, 2 * np.pi)
    gp = build_grid(24, 24, 2 * np.pi, 2 * np.pi)
    u = random_band_field(g, 5, seed=2)
    v = random_band_field(g, 5, seed=3)

    def embed(f, gg):
        coef = np.zeros(gg.shape, dtype=np.complex128)
        for k in range(g.ny):
            for j in range(g.nx):
                coef[g.jy[k] % gg.ny, g.jx[j] % gg.nx] = f.coef[k, j]
        return SpectralField(gg, coef)

    direct = dealias(forward(g, inverse(u) * inverse(v)))
    padded = forward(gp, inverse(embed(u, gp)) * inverse(embed(v, gp)))
    for k in range(g.ny):
        for j in range(g.nx):
            if g.dealias_mask[k, j]:
                a = direct.coef[k, j]
                b = padded.coef[g.jy[k] % gp.ny, g.jx[j] % gp.nx]
                assert abs(a - b) < 1e-12 * max(1.0, abs(b))


def test_project_zero_x_mode(grid8):
    coef = np.zeros(grid8.shape, dtype=np.complex128)
    coef[2, 0] = 5.0
    coef[1, 1] = 1.0 + 2j
    f = SpectralField(grid8, coef)
    g = project_zero_x_mode(f)
    assert g.coef[2, 0] == 0
    assert g.coef[1, 1] == 1.0 + 2j
    assert g.zero_x_mean
    # idempotent
    assert np.array_equal(project_zero_x_mode(g).coef, g.coef)


def test_projection_gives_zero_x_mean(grid16):
    rng = np.random.default_rng(7)
    coef = hermitian_part(grid16, rng.standard_normal(grid16.shape) + 1j * rng.standard_normal(grid16.shape))
    coef[grid16.nyquist_mask] = 0
    u = inverse(project_zero_x_mode(SpectralField(grid16, coef)))
    assert np.max(np.abs(u.sum(axis=1))) < 1e-12 * np.max(np.abs(u)) * grid16.nx


def test_project_commutes_with_dealias(grid16):
    f = SpectralField(grid16, np.random.default_rng(8).standard_normal(grid16.shape) + 0j)
    a = project_zero_x_mode(dealias(f)).coef
    b = dealias(project_zero_x_mode(f)).coef
    assert np.array_equal(a, b)


def test_operations_preserve_conjugate_symmetry(grid16):
    f = random_band_field(grid16, 4, seed=9)
    for g in (dealias(f), project_zero_x_mode(f)):
        assert np.max(np.abs(g.coef - conjugate_flip(g))) < 1e-14
