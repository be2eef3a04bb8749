import numpy as np
import pytest

from dklattice.lattice import LatticeDims, delta_mu, shift, site_iter

DIMS = LatticeDims(3, 3, 3, 3)


def test_dims_properties():
    dims = LatticeDims(2, 3, 4, 5)
    assert dims.shape == (2, 3, 4, 5)
    assert dims.volume == 120
    assert [dims.extent(mu) for mu in range(4)] == [2, 3, 4, 5]


def test_dims_parse():
    assert LatticeDims.parse("4,4,4,4") == LatticeDims(4, 4, 4, 4)
    assert LatticeDims.parse(" 2, 3 ,4,5 ") == LatticeDims(2, 3, 4, 5)


@pytest.mark.parametrize("text", ["", "3,3,3", "3,3,3,3,3", "a,3,3,3", "3.5,3,3,3"])
def test_dims_parse_rejects(text):
    with pytest.raises(ValueError):
        LatticeDims.parse(text)


@pytest.mark.parametrize("bad", [(0, 3, 3, 3), (3, -1, 3, 3)])
def test_dims_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        LatticeDims(*bad)


def test_dims_rejects_non_integer():
    with pytest.raises(TypeError):
        LatticeDims(3.0, 3, 3, 3)


def test_shift_examples():
    assert shift((0, 0, 0, 0), 0, DIMS) == (1, 0, 0, 0)
    assert shift((2, 0, 0, 0), 0, DIMS) == (0, 0, 0, 0)
    assert shift((1, 2, 0, 1), 1, DIMS) == (1, 0, 0, 1)


def test_shift_axis_range():
    with pytest.raises(ValueError):
        shift((0, 0, 0, 0), 4, DIMS)
    with pytest.raises(ValueError):
        shift((0, 0, 0, 0), -1, DIMS)


def test_shift_commutes():
    k = (2, 1, 0, 2)
    assert shift(shift(k, 0, DIMS), 3, DIMS) == shift(shift(k, 3, DIMS), 0, DIMS)


def test_site_iter_order_and_count():
    sites = list(site_iter(DIMS))
    assert len(sites) == DIMS.volume
    # last index fastest, matching C order of the coefficient arrays
    assert sites[:3] == [(0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 2)]
    assert sites[3] == (0, 0, 1, 0)
    assert sites[-1] == (2, 2, 2, 2)
    assert len(set(sites)) == DIMS.volume


def test_delta_matches_sitewise_oracle():
    rng = np.random.default_rng(11)
    f = rng.standard_normal(DIMS.shape) + 1j * rng.standard_normal(DIMS.shape)
    for mu in range(4):
        diff = delta_mu(f, mu)
        for k in site_iter(DIMS):
            assert diff[k] == f[shift(k, mu, DIMS)] - f[k]


def test_delta_plane_wave_eigenstructure():
    # exp(2 pi i k0 / 4) shifts to a multiplicative factor z0 = i - 1
    dims = LatticeDims(4, 4, 4, 4)
    k0 = np.arange(4).reshape(4, 1, 1, 1)
    wave = np.exp(2j * np.pi * k0 / 4) * np.ones(dims.shape)
    z0 = complex(-1.0, 1.0)
    assert np.max(np.abs(delta_mu(wave, 0) - z0 * wave)) < 1e-14


def test_delta_axes_commute():
    rng = np.random.default_rng(3)
    f = rng.standard_normal(DIMS.shape)
    a = delta_mu(delta_mu(f, 0), 1)
    b = delta_mu(delta_mu(f, 1), 0)
    assert np.max(np.abs(a - b)) < 1e-14


def test_delta_linearity():
    rng = np.random.default_rng(5)
    f = rng.standard_normal(DIMS.shape)
    g = rng.standard_normal(DIMS.shape)
    lhs = delta_mu(2.5 * f - g, 2)
    rhs = 2.5 * delta_mu(f, 2) - delta_mu(g, 2)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_delta_telescopes_to_zero():
    # periodic sum over the lattice of a forward difference vanishes
    rng = np.random.default_rng(7)
    f = rng.standard_normal(DIMS.shape)
    for mu in range(4):
        total = abs(np.sum(delta_mu(f, mu)))
        assert total <= 1e-13 * np.sum(np.abs(f))


def test_delta_keeps_trailing_axes():
    rng = np.random.default_rng(9)
    f = rng.standard_normal(DIMS.shape + (16,))
    diff = delta_mu(f, 1)
    assert diff.shape == f.shape
    assert np.array_equal(diff[:, 0], f[:, 1] - f[:, 0])


def test_delta_rejects_bad_axis():
    f = np.zeros(DIMS.shape)
    with pytest.raises(ValueError):
        delta_mu(f, 4)
