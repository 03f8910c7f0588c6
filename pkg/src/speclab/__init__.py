"""Eigenvalue lower bounds for Dirichlet and fractional Laplacians, with reference spectra."""
__version__ = "0.1.0"
