import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import jn_zeros

from speclab.errors import MemoryCapError, NoClosedFormError
from speclab.geometry import Ball, Box, RectUnion
from speclab.spectra import (
    KernelParams,
    Method,
    Spectrum,
    bessel_bound_profile,
    bessel_zeros,
    box_eigenvalues,
    cauchy_constant_discrepancy,
    discrete_box_spectrum,
    disk_eigenvalues,
    fd_eigenvalues,
    fourier_fractional_eigenvalues,
    fourier_refined,
    grid_mask,
    profile_integral,
    rayleigh_identity_check,
    spectrum_from_csv,
    spectrum_to_csv,
    stable_transition_density,
    total_mass,
)
from speclab.spectra.fourier import MAX_NODES

# mpmath, 30 digits
J01_SQ = 5.78318596294678452
J11 = 3.83170597020751232
J02 = 5.52007811028631065
DISK10 = (5.78318596294678452, 14.6819706421238933, 14.6819706421238933, 26.3746164271633908,
          26.3746164271633908, 30.4712623436620864, 40.7064658182003197, 40.7064658182003197,
          49.2184563216946037, 49.2184563216946037)
FD_SQUARE_H4 = 18.7451660040609584
PHI1_HAT0_SQ = 0.129006137732797957
CAUCHY = {1: (0.318309886183790672, 0.282094791773878143),
          2: (0.159154943091895336, 0.179587122125166562),
          3: (0.101321183642337771, 0.134690341593874921)}


# exact spectra -------------------------------------------------------------

def test_box_first_eigenvalues():
    s = box_eigenvalues((1, 1), 4)
    assert np.allclose(s.eigenvalues, np.array([2, 5, 5, 8]) * math.pi ** 2, rtol=1e-14)
    assert s.method is Method.EXACT_BOX


def test_box_matches_brute_force():
    sides = (1.0, 0.7, 1.3)
    m = np.arange(1, 40)
    brute = np.sort((math.pi ** 2 * ((m[:, None, None] / sides[0]) ** 2
                                     + (m[None, :, None] / sides[1]) ** 2
                                     + (m[None, None, :] / sides[2]) ** 2)).ravel())
    s = box_eigenvalues(sides, 500)
    assert np.allclose(s.eigenvalues, brute[:500], rtol=1e-14)


def test_bessel_zeros_against_scipy():
    for nu in range(0, 6):
        assert np.allclose(bessel_zeros(nu, 8), jn_zeros(nu, 8), rtol=1e-13)
    assert bessel_zeros(0, 2)[1] == pytest.approx(J02, rel=1e-14)
    assert bessel_zeros(1, 1)[0] == pytest.approx(J11, rel=1e-14)


def test_disk_first_ten():
    s = disk_eigenvalues(1.0, 10)
    assert s.eigenvalues[0] == pytest.approx(J01_SQ, rel=1e-13)
    assert np.allclose(s.eigenvalues, DISK10, rtol=1e-13)
    assert np.allclose(disk_eigenvalues(2.0, 10).eigenvalues, np.array(DISK10) / 4, rtol=1e-13)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum([2.0, 1.0], 2.0, Method.FD)
    with pytest.raises(ValueError):
        Spectrum([0.0], 2.0, Method.FD)


def test_csv_round_trip(tmp_path):
    s = disk_eigenvalues(1.0, 25)
    text = spectrum_to_csv(s, tmp_path / "s.csv")
    back = spectrum_from_csv(tmp_path / "s.csv")
    assert np.array_equal(back.eigenvalues, s.eigenvalues)
    assert spectrum_to_csv(back) == text
    f = spectrum_from_csv(spectrum_to_csv(fd_eigenvalues(grid_mask(Box((1, 1)), 0.125)[0], 0.125, 3)))
    assert f.method is Method.FD and f.residuals.size == 3


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.2, 3.0), min_size=1, max_size=3), st.integers(1, 300))
def test_box_spectrum_sorted_and_scales(sides, k):
    s = box_eigenvalues(sides, k).eigenvalues
    assert s.size == k and np.all(np.diff(s) >= 0)
    t = box_eigenvalues([2 * a for a in sides], k).eigenvalues
    assert np.allclose(t, s / 4, rtol=1e-13)


# finite differences --------------------------------------------------------

def test_fd_square_matches_discrete_formula():
    h = 0.25
    s = fd_eigenvalues(grid_mask(Box((1, 1)), h)[0], h, 9)
    assert s.eigenvalues[0] == pytest.approx(FD_SQUARE_H4, rel=1e-12)
    assert np.allclose(s.eigenvalues, discrete_box_spectrum((4, 4), h, 9), rtol=1e-10)


def test_fd_sparse_path_and_convergence():
    h = 1 / 64
    s = fd_eigenvalues(grid_mask(Box((1, 1)), h)[0], h, 3)
    assert s.diagnostics["solver"] == "shift-invert"
    assert np.allclose(s.eigenvalues, discrete_box_spectrum((64, 64), h, 3), rtol=1e-10)
    assert abs(s.eigenvalues[0] / (2 * math.pi ** 2) - 1) < 2e-3


def test_fd_disk_staircase_close():
    h = 1 / 32
    s = fd_eigenvalues(grid_mask(Ball(2, 1.0), h)[0], h, 1)
    assert abs(s.eigenvalues[0] / J01_SQ - 1) < 0.05


def test_fd_lshape_above_square_of_same_size():
    # domain monotonicity: the L-shape contains the unit square [0,1]^2
    d = RectUnion(((0, 0, 2, 1), (0, 1, 1, 2)))
    h = 1 / 16
    mask, _ = grid_mask(d, h)
    # 31 x 15 bottom strip plus the 15 x 16 upper arm including its shared edge row
    assert mask.sum() == 31 * 15 + 15 * 16
    lam_l = fd_eigenvalues(mask, h, 1).eigenvalues[0]
    lam_sq = discrete_box_spectrum((16, 16), h, 1)[0]
    assert lam_l < lam_sq


def test_grid_mask_counts():
    mask, lo = grid_mask(Box((1, 1)), 0.25)
    assert mask.sum() == 9 and np.allclose(lo, 0)
    # nodes on the shared edge belong to the union interior, re-entrant corner excluded
    mask, _ = grid_mask(RectUnion(((0, 0, 2, 1), (0, 1, 1, 2))), 0.5)
    assert mask.sum() == 5


# fractional solver ---------------------------------------------------------

def test_fourier_alpha2_interval_near_pi_sq():
    s = fourier_refined(Box((1.0,)), 2.0, 3)
    assert np.allclose(s.eigenvalues, math.pi ** 2 * np.array([1, 4, 9]), rtol=0.05)
    assert np.all(s.residuals <= 1e-8)


def test_fourier_alpha1_above_klein_gordon_floor():
    s = fourier_refined(Box((1.0,)), 1.0, 5)
    assert s.eigenvalues[0] >= math.pi / 2
    # known value of the first eigenvalue of sqrt(-Laplacian) on (-1, 1), rescaled to (0, 1)
    assert s.eigenvalues[0] == pytest.approx(2 * 1.1577738836977, rel=0.01)
    assert np.all(s.diagnostics["error_bar"] < 0.01 * s.eigenvalues)


def test_rayleigh_identity():
    s = fourier_fractional_eigenvalues(Box((1.0, 1.0)), 1.0, N=64, pad=2, k=3)
    r = rayleigh_identity_check(s, s.eigenvectors, 1.0)
    assert np.all(r <= 1e-8)
    with pytest.raises(ValueError):
        rayleigh_identity_check(box_eigenvalues((1,), 1), np.ones(1), 1.0)


def test_fourier_parameter_checks():
    with pytest.raises(ValueError):
        fourier_fractional_eigenvalues(Box((1.0,)), 1.0, N=100)
    with pytest.raises(ValueError):
        fourier_fractional_eigenvalues(Box((1.0,)), 2.5, N=64)
    with pytest.raises(MemoryCapError) as exc:
        fourier_fractional_eigenvalues(Box((1.0, 1.0)), 1.0, N=512, pad=4)
    assert exc.value.diagnostics["cap"] == MAX_NODES


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 2.0))
def test_fractional_eigenvalues_monotone_in_alpha_scaling(a):
    # Lambda(cD) = c^-alpha Lambda(D); grid nodes scale with the domain
    lam1 = fourier_fractional_eigenvalues(Box((1.0,)), a, N=128, pad=4, k=1).eigenvalues[0]
    lam2 = fourier_fractional_eigenvalues(Box((2.0,)), a, N=128, pad=4, k=1).eigenvalues[0]
    assert lam2 == pytest.approx(lam1 * 2 ** -a, rel=1e-9)


# kernels and profile ---------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("alpha", [1, 2])
def test_kernel_mass(n, alpha):
    for t in (0.3, 1.0, 4.0):
        assert total_mass(KernelParams(alpha, t, n)) == pytest.approx(1.0, abs=1e-8)


def test_cauchy_constants():
    for n, (gamma_form, omega_form) in CAUCHY.items():
        d = cauchy_constant_discrepancy(n)
        assert d["gamma_form"] == pytest.approx(gamma_form, rel=1e-14)
        assert d["omega_form"] == pytest.approx(omega_form, rel=1e-14)
        assert d["rel_diff"] > 0.1 and d["used"] == "gamma_form"


def test_transition_density_values():
    p = KernelParams(1, 1.0, 1)
    assert stable_transition_density(p, [0.0], [0.0]) == pytest.approx(1 / math.pi, rel=1e-14)
    g = KernelParams(2, 0.5, 2)
    assert stable_transition_density(g, [1.0, 0.0], [0.0, 0.0]) == pytest.approx(
        math.exp(-0.5) / (2 * math.pi), rel=1e-14)
    with pytest.raises(NoClosedFormError):
        total_mass(KernelParams(1.5, 1.0, 1))
    with pytest.raises(ValueError):
        stable_transition_density(p, [0.0, 1.0], [0.0])


def test_interval_profile():
    xi = np.linspace(-150, 150, 30001)
    for k in (1, 2, 4):
        rep = bessel_bound_profile(k, xi)
        assert rep.value_ok and rep.slope_ok
    rep = bessel_bound_profile(1, np.array([0.0]))
    assert rep.max_profile == pytest.approx(PHI1_HAT0_SQ, rel=1e-13)
    for k in (1, 2):
        assert profile_integral(k) == pytest.approx(k, rel=1e-9)
