import math

import numpy as np
import pytest

from aestlab import (
    ConfigError,
    CouplingKind,
    CouplingProfile,
    DimensionMismatchError,
    chain_hopping,
    couplings,
    hopping_matrix,
    propagate_exact,
    pst,
    spectral,
    spectral_of,
    uniform,
    weak_ends,
)

SQRT6 = math.sqrt(6.0)


def unit_vector(n, i):
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


class TestCouplings:
    def test_pst_n5(self):
        np.testing.assert_allclose(couplings(pst(), 5), [2.0, SQRT6, SQRT6, 2.0], rtol=1e-15)

    def test_uniform_n4(self):
        np.testing.assert_array_equal(couplings(uniform(), 4), [1.0, 1.0, 1.0])

    def test_weak_ends_n5(self):
        np.testing.assert_array_equal(couplings(weak_ends(0.1), 5), [0.1, 1.0, 1.0, 0.1])

    def test_too_short_chain(self):
        with pytest.raises(ConfigError):
            couplings(uniform(), 1)

    def test_weak_ends_needs_three_sites(self):
        with pytest.raises(ConfigError):
            couplings(weak_ends(0.1), 2)

    @pytest.mark.parametrize(
        "bad",
        [
            dict(kind=CouplingKind.UNIFORM, j=0.0),
            dict(kind=CouplingKind.UNIFORM, j=-1.0),
            dict(kind=CouplingKind.WEAK_ENDS, j=1.0, j0=1.5),
            dict(kind=CouplingKind.WEAK_ENDS, j=1.0, j0=0.0),
            dict(kind=CouplingKind.WEAK_ENDS, j=1.0),
            dict(kind=CouplingKind.UNIFORM, j=1.0, j0=0.1),
        ],
    )
    def test_invalid_profiles(self, bad):
        with pytest.raises(ConfigError):
            CouplingProfile(**bad)


class TestHoppingMatrix:
    def test_single_bond(self):
        np.testing.assert_array_equal(hopping_matrix([1.0]).h, [[0.0, 1.0], [1.0, 0.0]])

    def test_pst_n3_spectrum(self):
        # 3x3 with bonds sqrt(2): rows (0,s,0),(s,0,s),(0,s,0) has eigenvalues -2, 0, 2
        h = chain_hopping(pst(), 3)
        np.testing.assert_allclose(np.linalg.eigvalsh(h.h), [-2.0, 0.0, 2.0], atol=1e-12)

    def test_pst_n10_equally_spaced_spectrum(self):
        h = chain_hopping(pst(), 10)
        np.testing.assert_allclose(
            np.linalg.eigvalsh(h.h), np.arange(-9, 10, 2, dtype=float), atol=1e-9
        )

    def test_empty_couplings_rejected(self):
        with pytest.raises(ConfigError):
            hopping_matrix([])

    def test_non_finite_rejected(self):
        with pytest.raises(ConfigError):
            hopping_matrix([1.0, np.inf])

    @pytest.mark.parametrize("n", [2, 5, 17, 64])
    @pytest.mark.parametrize("profile", [uniform(), pst(), weak_ends(0.05)])
    def test_structure_all_profiles(self, profile, n):
        if profile.kind is CouplingKind.WEAK_ENDS and n < 3:
            pytest.skip("weak ends needs n >= 3")
        h = chain_hopping(profile, n).h
        assert np.array_equal(h, h.T)
        assert np.all(np.diag(h) == 0.0)
        assert np.all(np.triu(h, 2) == 0.0)


class TestSpectral:
    def test_two_site(self):
        s = spectral(hopping_matrix([1.0]))
        np.testing.assert_allclose(s.eigenvalues, [-1.0, 1.0], atol=1e-15)
        expected = np.array([[1.0, 1.0], [-1.0, 1.0]]) / math.sqrt(2.0)
        for k in range(2):
            col = s.eigenvectors[:, k]
            ref = expected[:, k]
            sign = np.sign(col @ ref)
            np.testing.assert_allclose(sign * col, ref, atol=1e-15)

    def test_pst_n20_reconstruction(self):
        h = chain_hopping(pst(), 20)
        s = spectral(h)
        recon = (s.eigenvectors * s.eigenvalues) @ s.eigenvectors.T
        assert np.max(np.abs(recon - h.h)) <= 1e-10
        assert np.max(np.abs(s.eigenvectors.T @ s.eigenvectors - np.eye(20))) <= 1e-10

    def test_one_by_one_rejected(self):
        with pytest.raises(ConfigError):
            hopping_matrix(np.zeros((1, 1)))  # type: ignore[arg-type]


class TestPropagateExact:
    def test_t_zero_identity(self):
        s = spectral_of(uniform(), 6)
        rng = np.random.default_rng(7)
        v = rng.normal(size=6) + 1j * rng.normal(size=6)
        np.testing.assert_allclose(propagate_exact(s, 0.0, v), v, atol=1e-14)

    def test_two_site_half_flop(self):
        # exp(-i sx pi/2) e1 = -i e2
        s = spectral(hopping_matrix([1.0]))
        out = propagate_exact(s, math.pi / 2, unit_vector(2, 0))
        np.testing.assert_allclose(out, [0.0, -1.0j], atol=1e-14)

    def test_pst_n10_mirror(self):
        s = spectral_of(pst(), 10)
        out = propagate_exact(s, math.pi / 2, unit_vector(10, 0))
        assert abs(abs(out[-1]) - 1.0) <= 1e-8

    @pytest.mark.parametrize("n", list(range(2, 65, 6)) + [64])
    def test_mirror_property_all_lengths(self, n):
        s = spectral_of(pst(), n)
        out = propagate_exact(s, math.pi / 2, unit_vector(n, 0))
        assert abs(abs(out[-1]) - 1.0) <= 1e-8

    def test_unitarity_and_composition(self):
        s = spectral_of(weak_ends(0.2), 9)
        rng = np.random.default_rng(11)
        v = rng.normal(size=9) + 1j * rng.normal(size=9)
        v /= np.linalg.norm(v)
        for t in rng.uniform(0, 20, size=25):
            out = propagate_exact(s, t, v)
            assert abs(np.linalg.norm(out) - 1.0) <= 1e-12
        t1, t2 = 0.37, 4.21
        comp = propagate_exact(s, t1, propagate_exact(s, t2, v))
        direct = propagate_exact(s, t1 + t2, v)
        assert np.max(np.abs(comp - direct)) <= 1e-10

    def test_dimension_mismatch(self):
        s = spectral_of(uniform(), 4)
        with pytest.raises(DimensionMismatchError):
            propagate_exact(s, 1.0, np.zeros(5, dtype=complex))
