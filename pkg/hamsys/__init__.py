"""Ground states of Hamiltonian elliptic systems by spectral Galerkin methods."""

__version__ = "0.1.0"
