"""Reference spectra: exact formulas, finite differences, and a Fourier-multiplier solver."""
from .bessel import bessel_zeros
from .exact import box_eigenvalues, disk_eigenvalues
from .fd import discrete_box_spectrum, fd_eigenvalues, grid_mask
from .fourier import fourier_fractional_eigenvalues, fourier_refined, rayleigh_identity_check
from .kernels import (
    KernelParams,
    cauchy_constant_discrepancy,
    stable_transition_density,
    total_mass,
)
from .profile_bounds import ProfileReport, bessel_bound_profile, profile_integral
from .spectrum import Method, Spectrum, spectrum_from_csv, spectrum_to_csv

__all__ = [
    "bessel_zeros", "box_eigenvalues", "disk_eigenvalues", "discrete_box_spectrum",
    "fd_eigenvalues", "grid_mask", "fourier_fractional_eigenvalues", "fourier_refined",
    "rayleigh_identity_check", "KernelParams", "cauchy_constant_discrepancy",
    "stable_transition_density", "total_mass", "ProfileReport", "bessel_bound_profile",
    "profile_integral", "Method", "Spectrum", "spectrum_from_csv", "spectrum_to_csv",
]
