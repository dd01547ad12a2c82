"""Numerical tolerances shared by every module."""

from types import MappingProxyType

TOL = MappingProxyType(
    {
        # input validation
        "hermitian": 1e-10,
        "trace": 1e-10,
        "psd": 1e-10,
        # eigensystem checks
        "orthonormal": 1e-10,
        "reconstruction": 1e-9,
        "unitary": 1e-10,
        # spectral clustering of degenerate eigenvalues
        "degenerate": 1e-9,
        # probabilities
        "clamp": 1e-12,
        "normalization": 1e-10,
        "log_zero": 1e-15,
        "eig_zero": 1e-12,
        # bound reports and witnesses
        "violation": 1e-9,
    }
)

#: largest 2s for which the Wigner factorial table is built
MAX_TWICE_S = 40
